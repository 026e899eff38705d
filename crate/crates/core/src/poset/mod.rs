//! The tableau-order posets `P_{n,r}` and their direct products.

mod chain;
mod element;
mod export;
mod literal;

pub use chain::{Chain, Interval, Multichain};
pub use element::{complement, delta, iso_n1_to_np1, leq_component, leq_t, ComponentElement, Element, PosetSpec};
pub use export::{elements_json, hasse_dot};
pub use literal::{parse_chain, parse_element};

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::Limits;

/// Above this size the comparability relation is evaluated on demand.
const MATRIX_LIMIT: usize = 4096;

/// A fully enumerated product poset.
#[derive(Debug, Clone)]
pub struct Poset {
    spec: PosetSpec,
    elements: Vec<Element>,
    index: HashMap<Element, usize>,
    // rank of each element in a fixed linear extension
    position: Vec<usize>,
    leq_bits: Option<Vec<u64>>,
    words: usize,
}

impl Poset {
    pub fn new(spec: &PosetSpec, limits: &Limits) -> Result<Self> {
        let size = spec.size();
        if size > limits.max_elements as u128 {
            return Err(Error::CapExceeded { what: "elements", count: size, limit: limits.max_elements as u128 });
        }
        let elements = enumerate_unchecked(spec);
        let index = elements.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();

        let keys: Vec<i64> = elements
            .iter()
            .map(|e| e.components().iter().map(|c| c.s_vector()[1..].iter().sum::<i64>()).sum())
            .collect();
        let mut order: Vec<usize> = (0..elements.len()).collect();
        order.sort_by_key(|&i| (keys[i], i));
        let mut position = vec![0; elements.len()];
        for (p, &i) in order.iter().enumerate() {
            position[i] = p;
        }

        let len = elements.len();
        let words = len.div_ceil(64);
        let leq_bits = (len <= MATRIX_LIMIT).then(|| {
            let mut bits = vec![0u64; len * words];
            for a in 0..len {
                for b in 0..len {
                    if position[a] <= position[b] && leq_t(&elements[a], &elements[b]).unwrap_or(false) {
                        bits[a * words + b / 64] |= 1 << (b % 64);
                    }
                }
            }
            bits
        });

        Ok(Poset { spec: spec.clone(), elements, index, position, leq_bits, words })
    }

    pub fn spec(&self) -> &PosetSpec {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Element {
        &self.elements[i]
    }

    pub fn index_of(&self, e: &Element) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.elements.len() - 1
    }

    /// Position of element `i` in the fixed linear extension used for chains.
    pub fn position(&self, i: usize) -> usize {
        self.position[i]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        match &self.leq_bits {
            Some(bits) => bits[a * self.words + b / 64] >> (b % 64) & 1 == 1,
            None => {
                self.position[a] <= self.position[b] && leq_t(&self.elements[a], &self.elements[b]).unwrap_or(false)
            }
        }
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    /// Elements of the interval between bottom and top, in enumeration order.
    pub fn interval(&self, kind: Interval) -> Vec<usize> {
        let (lo, hi) = (self.bottom(), self.top());
        if lo == hi {
            return Vec::new();
        }
        match kind {
            Interval::Open => (lo + 1..hi).collect(),
            Interval::HalfOpen => (lo + 1..=hi).collect(),
        }
    }

    /// Elements strictly between `a` and `b`, in enumeration order.
    pub fn open_between(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.len()).filter(|&c| self.lt(a, c) && self.lt(c, b)).collect()
    }

    /// Pairs `(a, b)` with `b` covering `a`, sorted by `(a, b)`.
    pub fn cover_relations(&self) -> Vec<(usize, usize)> {
        let len = self.len();
        let mut edges = Vec::new();
        for a in 0..len {
            let ups: Vec<usize> = (0..len).filter(|&b| self.lt(a, b)).collect();
            for &b in &ups {
                if !ups.iter().any(|&c| c != b && self.lt(c, b)) {
                    edges.push((a, b));
                }
            }
        }
        edges
    }

    /// All strict chains inside `set` (the empty chain first), as index
    /// vectors in increasing order. Chains are listed by length, then
    /// lexicographically by linear-extension position.
    pub fn chains_in(&self, set: &[usize], max_chains: u64) -> Result<Vec<Vec<usize>>> {
        let mut sorted = set.to_vec();
        sorted.sort_by_key(|&i| self.position[i]);
        sorted.dedup();

        let cap_err =
            |count: u64| Error::CapExceeded { what: "chains", count: count as u128, limit: max_chains as u128 };
        let mut out: Vec<Vec<usize>> = vec![Vec::new()];
        // each frontier entry remembers where its last element sits in `sorted`
        let mut frontier: Vec<(usize, usize)> = Vec::new();
        for (p, &e) in sorted.iter().enumerate() {
            out.push(vec![e]);
            frontier.push((out.len() - 1, p));
        }
        if out.len() as u64 > max_chains {
            return Err(cap_err(out.len() as u64));
        }
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &(chain_idx, p) in &frontier {
                let last = sorted[p];
                for (q, &e) in sorted.iter().enumerate().skip(p + 1) {
                    if self.lt(last, e) {
                        let mut c = out[chain_idx].clone();
                        c.push(e);
                        out.push(c);
                        next.push((out.len() - 1, q));
                        if out.len() as u64 > max_chains {
                            return Err(cap_err(out.len() as u64));
                        }
                    }
                }
            }
            frontier = next;
        }
        Ok(out)
    }

    /// Strict chains of an interval between bottom and top.
    pub fn chains(&self, kind: Interval, limits: &Limits) -> Result<Vec<Vec<usize>>> {
        self.chains_in(&self.interval(kind), limits.max_chains)
    }

    /// Multichains of total length at most `max_len`, as pairs of a strict
    /// support chain and a multiplicity vector.
    pub fn multichains(
        &self,
        kind: Interval,
        max_len: usize,
        limits: &Limits,
    ) -> Result<Vec<(Vec<usize>, Vec<usize>)>> {
        let mut out = Vec::new();
        for chain in self.chains(kind, limits)? {
            if chain.len() > max_len {
                continue;
            }
            let mut mult = vec![1; chain.len()];
            loop {
                out.push((chain.clone(), mult.clone()));
                if out.len() as u64 > limits.max_chains {
                    return Err(Error::CapExceeded {
                        what: "multichains",
                        count: out.len() as u128,
                        limit: limits.max_chains as u128,
                    });
                }
                if !next_composition(&mut mult, max_len) {
                    break;
                }
            }
        }
        Ok(out)
    }

    pub fn to_chain(&self, idx: &[usize], kind: Interval) -> Result<Chain> {
        Chain::new(idx.iter().map(|&i| self.elements[i].clone()).collect(), kind, &self.spec)
    }
}

/// Steps `mult` (all entries >= 1) to the next vector with sum <= `bound`
/// in lexicographic order; false when exhausted.
fn next_composition(mult: &mut [usize], bound: usize) -> bool {
    let mut total: usize = mult.iter().sum();
    for i in (0..mult.len()).rev() {
        if total < bound {
            mult[i] += 1;
            return true;
        }
        total -= mult[i] - 1;
        mult[i] = 1;
    }
    false
}

fn enumerate_unchecked(spec: &PosetSpec) -> Vec<Element> {
    let streams: Vec<Vec<ComponentElement>> =
        (0..spec.g()).map(|i| component_stream(spec.n()[i], spec.r()[i])).collect();
    let mut out = vec![Vec::new()];
    for stream in &streams {
        let mut next = Vec::with_capacity(out.len() * stream.len());
        for prefix in &out {
            for c in stream {
                let mut p: Vec<ComponentElement> = prefix.clone();
                p.push(c.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out.into_iter().map(Element::from_components_unchecked).collect()
}

/// Reverse-lexicographic stream of one component: `a_0` varies fastest.
fn component_stream(n: u32, r: u32) -> Vec<ComponentElement> {
    let mut out = Vec::with_capacity(((r as usize) + 1) << n);
    for bits in 0u64..(1u64 << n) {
        for a0 in 0..=r {
            let mut a = Vec::with_capacity(n as usize + 1);
            a.push(a0);
            a.extend((0..n).map(|k| (bits >> k & 1) as u32));
            out.push(ComponentElement::from_vec_unchecked(a));
        }
    }
    out
}

/// All elements of the spec in enumeration order, subject to the element cap.
pub fn enumerate_elements(spec: &PosetSpec, limits: &Limits) -> Result<Vec<Element>> {
    let size = spec.size();
    if size > limits.max_elements as u128 {
        return Err(Error::CapExceeded { what: "elements", count: size, limit: limits.max_elements as u128 });
    }
    Ok(enumerate_unchecked(spec))
}

/// Strict chains of the tagged interval as [`Chain`] values.
pub fn enumerate_chains(spec: &PosetSpec, kind: Interval, limits: &Limits) -> Result<Vec<Chain>> {
    let poset = Poset::new(spec, limits)?;
    poset.chains(kind, limits)?.iter().map(|c| poset.to_chain(c, kind)).collect()
}

/// Multichains of the tagged interval with total length at most `max_len`.
pub fn enumerate_multichains(
    spec: &PosetSpec,
    kind: Interval,
    max_len: usize,
    limits: &Limits,
) -> Result<Vec<Multichain>> {
    let poset = Poset::new(spec, limits)?;
    poset
        .multichains(kind, max_len, limits)?
        .into_iter()
        .map(|(chain, mult)| {
            let elements =
                chain.iter().zip(&mult).flat_map(|(&i, &m)| std::iter::repeat_n(poset.element(i).clone(), m)).collect();
            Multichain::new(elements, kind, spec)
        })
        .collect()
}
