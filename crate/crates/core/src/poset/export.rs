use std::fmt::Write;

use serde_json::{json, Value};

use super::Poset;

/// Hasse diagram in DOT, edges pointing upward.
pub fn hasse_dot(poset: &Poset) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for (i, e) in poset.elements().iter().enumerate() {
        writeln!(out, "  n{i} [label=\"{}\"];", e.render()).unwrap();
    }
    for (a, b) in poset.cover_relations() {
        writeln!(out, "  n{a} -> n{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Elements as a JSON array of per-component vectors.
pub fn elements_json(poset: &Poset) -> Value {
    Value::Array(
        poset.elements().iter().map(|e| json!(e.components().iter().map(|c| c.vector()).collect::<Vec<_>>())).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::PosetSpec;
    use crate::Limits;

    #[test]
    fn dot_is_stable() {
        let p = Poset::new(&PosetSpec::single(1, 1), &Limits::default()).unwrap();
        let dot = hasse_dot(&p);
        assert_eq!(dot, hasse_dot(&p));
        assert!(dot.contains("n0 [label=\"-\"]"));
        assert_eq!(dot.matches("->").count(), p.cover_relations().len());
        assert_eq!(elements_json(&p)[3], json!([[1, 1]]));
    }
}
