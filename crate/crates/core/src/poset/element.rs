use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Shape of the product poset `P_{n_1,r_1} x ... x P_{n_g,r_g}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PosetSpec {
    n: Vec<u32>,
    r: Vec<u32>,
}

impl PosetSpec {
    pub fn new(n: Vec<u32>, r: Vec<u32>) -> Result<Self> {
        if n.is_empty() {
            return Err(Error::invalid("a poset spec needs at least one component"));
        }
        if n.len() != r.len() {
            return Err(Error::invalid(format!("n has {} entries but r has {}", n.len(), r.len())));
        }
        Ok(PosetSpec { n, r })
    }

    /// The single-component spec `(n), (r)`.
    pub fn single(n: u32, r: u32) -> Self {
        PosetSpec { n: vec![n], r: vec![r] }
    }

    pub fn g(&self) -> usize {
        self.n.len()
    }

    pub fn n(&self) -> &[u32] {
        &self.n
    }

    pub fn r(&self) -> &[u32] {
        &self.r
    }

    /// Size of component `i`: `(r_i + 1) 2^{n_i}`.
    pub fn component_size(&self, i: usize) -> u128 {
        (self.r[i] as u128 + 1).saturating_mul(1u128.checked_shl(self.n[i]).unwrap_or(u128::MAX))
    }

    /// Number of elements, saturating at `u128::MAX`.
    pub fn size(&self) -> u128 {
        (0..self.g()).fold(1u128, |acc, i| acc.saturating_mul(self.component_size(i)))
    }

    /// True when the bottom and top element coincide (all `n_i = r_i = 0`).
    pub fn is_degenerate(&self) -> bool {
        self.n.iter().chain(&self.r).all(|&x| x == 0)
    }

    /// The `i`-th component as a single-component spec.
    pub fn component(&self, i: usize) -> PosetSpec {
        PosetSpec::single(self.n[i], self.r[i])
    }

    /// `N = sum_i (n_i + r_i)`.
    pub fn rank_sum(&self) -> i64 {
        self.n.iter().chain(&self.r).map(|&x| x as i64).sum()
    }
}

impl fmt::Display for PosetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(f, "n=({}) r=({})", join(&self.n), join(&self.r))
    }
}

/// An element of a single `P_{n,r}`: the characteristic vector
/// `(a_0, a_1, ..., a_n)` of a sub-multiset of `{0^r, 1, ..., n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ComponentElement(Vec<u32>);

impl ComponentElement {
    /// Validates `a_0 <= r` and `a_i <= 1`.
    pub fn new(a: Vec<u32>, n: u32, r: u32) -> Result<Self> {
        if a.len() != n as usize + 1 {
            return Err(Error::invalid(format!("component vector has length {} but n + 1 = {}", a.len(), n + 1)));
        }
        if a[0] > r || a[1..].iter().any(|&x| x > 1) {
            return Err(Error::invalid(format!("{a:?} is not in P_{{{n},{r}}}")));
        }
        Ok(ComponentElement(a))
    }

    /// From a zero count and a set of positive entries.
    pub fn from_multiset(zeros: u32, entries: &[u32], n: u32, r: u32) -> Result<Self> {
        let mut a = vec![0; n as usize + 1];
        a[0] = zeros;
        for &e in entries {
            if e == 0 || e > n {
                return Err(Error::invalid(format!("entry {e} outside [1, {n}]")));
            }
            if a[e as usize] == 1 {
                return Err(Error::invalid(format!("entry {e} repeated")));
            }
            a[e as usize] = 1;
        }
        ComponentElement::new(a, n, r)
    }

    pub(crate) fn from_vec_unchecked(a: Vec<u32>) -> Self {
        ComponentElement(a)
    }

    pub fn n(&self) -> u32 {
        self.0.len() as u32 - 1
    }

    pub fn vector(&self) -> &[u32] {
        &self.0
    }

    pub fn zeros(&self) -> u32 {
        self.0[0]
    }

    pub fn contains(&self, i: u32) -> bool {
        self.0.get(i as usize).is_some_and(|&x| x > 0)
    }

    /// Cardinality as a multiset.
    pub fn cardinality(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Entries in non-decreasing order, zeros first.
    pub fn sorted_entries(&self) -> Vec<u32> {
        let mut out = vec![0; self.0[0] as usize];
        out.extend((1..self.0.len() as u32).filter(|&i| self.0[i as usize] == 1));
        out
    }

    /// Multiset rendering, e.g. `0^2 1 3`; `-` for the empty multiset.
    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        match self.0[0] {
            0 => {}
            1 => parts.push("0".to_string()),
            k => parts.push(format!("0^{k}")),
        }
        parts.extend((1..self.0.len()).filter(|&i| self.0[i] == 1).map(|i| i.to_string()));
        if parts.is_empty() {
            "-".into()
        } else {
            parts.join(" ")
        }
    }

    /// `s_0 = binom(a_0, 2)` and `s_i = a_0 + ... + a_{i-1}` for `1 <= i <= n+1`.
    pub fn s_vector(&self) -> Vec<i64> {
        let mut s = Vec::with_capacity(self.0.len() + 1);
        let a0 = self.0[0] as i64;
        s.push(a0 * (a0 - 1) / 2);
        let mut prefix = 0i64;
        for &x in &self.0 {
            prefix += x as i64;
            s.push(prefix);
        }
        s
    }

    /// `s_i(self)` for a single index.
    pub fn s(&self, i: usize) -> i64 {
        if i == 0 {
            let a0 = self.0[0] as i64;
            a0 * (a0 - 1) / 2
        } else {
            self.0[..i].iter().map(|&x| x as i64).sum()
        }
    }
}

impl fmt::Display for ComponentElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `Delta_i(a, b) = s_i(b) - s_i(a)` for `0 <= i <= n + 1`.
pub fn delta(a: &ComponentElement, b: &ComponentElement, i: usize) -> Result<i64> {
    if a.n() != b.n() {
        return Err(Error::invalid("delta of elements from different components"));
    }
    if i > a.n() as usize + 1 {
        return Err(Error::invalid(format!("delta index {i} outside [0, {}]", a.n() + 1)));
    }
    Ok(b.s(i) - a.s(i))
}

/// Tableau order on one component: every prefix sum of `b` dominates `a`.
pub fn leq_component(a: &ComponentElement, b: &ComponentElement) -> bool {
    debug_assert_eq!(a.n(), b.n());
    let (mut sa, mut sb) = (0u32, 0u32);
    for (x, y) in a.0.iter().zip(&b.0) {
        sa += x;
        sb += y;
        if sa > sb {
            return false;
        }
    }
    true
}

/// A point of the product poset: one [`ComponentElement`] per component.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Element(Vec<ComponentElement>);

impl Element {
    pub fn new(components: Vec<ComponentElement>, spec: &PosetSpec) -> Result<Self> {
        let e = Element(components);
        if !e.conforms(spec) {
            return Err(Error::SpecMismatch { n: spec.n().to_vec(), r: spec.r().to_vec() });
        }
        Ok(e)
    }

    pub(crate) fn from_components_unchecked(components: Vec<ComponentElement>) -> Self {
        Element(components)
    }

    pub fn bottom(spec: &PosetSpec) -> Self {
        Element(spec.n().iter().map(|&n| ComponentElement(vec![0; n as usize + 1])).collect())
    }

    pub fn top(spec: &PosetSpec) -> Self {
        Element(
            spec.n()
                .iter()
                .zip(spec.r())
                .map(|(&n, &r)| {
                    let mut a = vec![1; n as usize + 1];
                    a[0] = r;
                    ComponentElement(a)
                })
                .collect(),
        )
    }

    pub fn components(&self) -> &[ComponentElement] {
        &self.0
    }

    pub fn component(&self, i: usize) -> &ComponentElement {
        &self.0[i]
    }

    pub fn conforms(&self, spec: &PosetSpec) -> bool {
        self.0.len() == spec.g()
            && self.0.iter().enumerate().all(|(i, c)| {
                c.0.len() == spec.n()[i] as usize + 1 && c.0[0] <= spec.r()[i] && c.0[1..].iter().all(|&x| x <= 1)
            })
    }

    /// Components joined by `|`, e.g. `0^2 1|-`.
    pub fn render(&self) -> String {
        self.0.iter().map(|c| c.render()).collect::<Vec<_>>().join("|")
    }

    /// Key whose lexicographic order is the enumeration order: components
    /// in turn, each compared from the largest index down (reverse lex).
    pub fn order_key(&self) -> Vec<u32> {
        self.0.iter().flat_map(|c| c.0.iter().rev().copied()).collect()
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Product tableau order; errors if the elements have different shapes.
pub fn leq_t(a: &Element, b: &Element) -> Result<bool> {
    if a.0.len() != b.0.len() || a.0.iter().zip(&b.0).any(|(x, y)| x.n() != y.n()) {
        return Err(Error::invalid("comparing elements of different posets"));
    }
    Ok(a.0.iter().zip(&b.0).all(|(x, y)| leq_component(x, y)))
}

/// Componentwise multiset complement inside `E_{n_i, r_i}`.
pub fn complement(a: &Element, spec: &PosetSpec) -> Result<Element> {
    if !a.conforms(spec) {
        return Err(Error::SpecMismatch { n: spec.n().to_vec(), r: spec.r().to_vec() });
    }
    Ok(Element(
        a.0.iter()
            .zip(spec.r())
            .map(|(c, &r)| {
                let mut v = vec![r - c.0[0]];
                v.extend(c.0[1..].iter().map(|&x| 1 - x));
                ComponentElement(v)
            })
            .collect(),
    ))
}

/// The isomorphism `P_{n,1} -> P_{n+1,0}` sending `0 -> 1` and `i -> i + 1`.
pub fn iso_n1_to_np1(a: &ComponentElement, r: u32) -> Result<ComponentElement> {
    if r != 1 {
        return Err(Error::invalid(format!("iso_n1_to_np1 needs r = 1, got r = {r}")));
    }
    if a.0[0] > 1 {
        return Err(Error::invalid("element has more than one zero"));
    }
    let mut v = Vec::with_capacity(a.0.len() + 1);
    v.push(0);
    v.extend_from_slice(&a.0);
    Ok(ComponentElement(v))
}
