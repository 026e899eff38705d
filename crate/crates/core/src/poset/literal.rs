//! Text literals for elements and chains.
//!
//! ```text
//! chain     := "" | element (("<" | ",") element)*
//! element   := component ("|" component)*      one component per factor
//! component := "-" | item (" " item)*
//! item      := "0^" k | digits
//! ```
//!
//! When a component has `n <= 9`, a run of digits is read one digit per
//! entry, so `0012` means `0^2 1 2`; otherwise each run is one integer.

use super::chain::{Chain, Interval};
use super::element::{ComponentElement, Element, PosetSpec};
use crate::error::{Error, Result};

fn parse_err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

fn parse_component(text: &str, offset: usize, n: u32, r: u32) -> Result<ComponentElement> {
    let trimmed = text.trim();
    if trimmed == "-" || trimmed.is_empty() {
        return ComponentElement::from_multiset(0, &[], n, r);
    }
    let mut zeros = 0u32;
    let mut entries = Vec::new();
    let mut pos = offset;
    for token in text.split(' ') {
        let start = pos;
        pos += token.len() + 1;
        if token.is_empty() {
            continue;
        }
        if let Some(k) = token.strip_prefix("0^") {
            zeros += k.parse::<u32>().map_err(|_| parse_err(start, format!("bad exponent in '{token}'")))?;
            continue;
        }
        if !token.bytes().all(|b| b.is_ascii_digit()) {
            return Err(parse_err(start, format!("unexpected token '{token}'")));
        }
        let values: Vec<u32> = if n <= 9 {
            token.bytes().map(|b| (b - b'0') as u32).collect()
        } else {
            vec![token.parse().map_err(|_| parse_err(start, format!("number '{token}' too large")))?]
        };
        for v in values {
            if v == 0 {
                zeros += 1;
            } else {
                entries.push(v);
            }
        }
    }
    if zeros > r {
        return Err(parse_err(offset, format!("{zeros} zeros but r = {r}")));
    }
    ComponentElement::from_multiset(zeros, &entries, n, r).map_err(|e| parse_err(offset, e.to_string()))
}

fn parse_element_at(text: &str, offset: usize, spec: &PosetSpec) -> Result<Element> {
    let parts: Vec<&str> = text.split('|').collect();
    if parts.len() != spec.g() {
        return Err(parse_err(offset, format!("expected {} components, found {}", spec.g(), parts.len())));
    }
    let mut pos = offset;
    let mut comps = Vec::with_capacity(parts.len());
    for (i, part) in parts.iter().enumerate() {
        comps.push(parse_component(part, pos, spec.n()[i], spec.r()[i])?);
        pos += part.len() + 1;
    }
    Element::new(comps, spec)
}

pub fn parse_element(text: &str, spec: &PosetSpec) -> Result<Element> {
    parse_element_at(text, 0, spec)
}

/// Parses a strict chain; the interval tag is validated against the elements.
pub fn parse_chain(text: &str, spec: &PosetSpec, interval: Interval) -> Result<Chain> {
    if text.trim().is_empty() {
        return Chain::new(Vec::new(), interval, spec);
    }
    let mut elements = Vec::new();
    let mut pos = 0;
    for part in text.split(['<', ',']) {
        elements.push(parse_element_at(part, pos, spec)?);
        pos += part.len() + 1;
    }
    Chain::new(elements, interval, spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compact_and_spaced_forms_agree() {
        let spec = PosetSpec::single(7, 3);
        let a = parse_element("0001456", &spec).unwrap();
        let b = parse_element("0^3 1 4 5 6", &spec).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.render(), "0^3 1 4 5 6");
        assert_eq!(parse_element("-", &spec).unwrap(), Element::bottom(&spec));
    }

    #[test]
    fn multi_component_chain() {
        let spec = PosetSpec::new(vec![2, 1], vec![2, 1]).unwrap();
        let c = parse_chain("2|- < 0 2|1 < 0^2 1 2|0 1", &spec, Interval::HalfOpen).unwrap();
        assert_eq!(c.len(), 3);
        assert!(parse_chain("2|- < 0 2|1 < 0^2 1 2|0 1", &spec, Interval::Open).is_err());
        assert!(parse_chain("", &spec, Interval::Open).unwrap().is_empty());
    }

    #[test]
    fn errors_carry_positions() {
        let spec = PosetSpec::single(2, 1);
        assert!(matches!(parse_element("00", &spec), Err(Error::Parse { .. })));
        assert!(matches!(parse_element("3", &spec), Err(Error::Parse { .. })));
        assert!(matches!(parse_element("x", &spec), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_element("1|2", &spec), Err(Error::Parse { .. })));
        assert!(matches!(parse_chain("1 < 1 x", &spec, Interval::Open), Err(Error::Parse { pos: 6, .. })));
    }

    #[test]
    fn large_n_reads_whole_numbers() {
        let spec = PosetSpec::single(12, 0);
        let e = parse_element("3 12", &spec).unwrap();
        assert!(e.component(0).contains(12) && e.component(0).contains(3));
    }
}
