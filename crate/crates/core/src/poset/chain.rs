use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::element::{leq_t, Element, PosetSpec};
use crate::error::{Error, Result};

/// Which interval between bottom and top a chain lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Interval {
    /// `(0, 1)`
    Open,
    /// `(0, 1]`
    HalfOpen,
}

fn check_membership(elements: &[Element], kind: Interval, spec: &PosetSpec) -> Result<()> {
    let (bottom, top) = (Element::bottom(spec), Element::top(spec));
    for e in elements {
        if !e.conforms(spec) {
            return Err(Error::SpecMismatch { n: spec.n().to_vec(), r: spec.r().to_vec() });
        }
        if *e == bottom || (kind == Interval::Open && *e == top) {
            return Err(Error::NotAChain(format!("{e} is outside the {kind:?} interval")));
        }
    }
    Ok(())
}

/// A strictly increasing sequence of elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Chain {
    elements: Vec<Element>,
    interval: Interval,
}

impl Chain {
    pub fn new(elements: Vec<Element>, interval: Interval, spec: &PosetSpec) -> Result<Self> {
        check_membership(&elements, interval, spec)?;
        for w in elements.windows(2) {
            if w[0] == w[1] || !leq_t(&w[0], &w[1])? {
                return Err(Error::NotAChain(format!("{} is not below {}", w[0], w[1])));
            }
        }
        Ok(Chain { elements, interval })
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn render(&self) -> String {
        self.elements.iter().map(Element::render).collect::<Vec<_>>().join(" < ")
    }
}

/// A weakly increasing sequence of elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Multichain {
    elements: Vec<Element>,
    interval: Interval,
}

impl Multichain {
    pub fn new(elements: Vec<Element>, interval: Interval, spec: &PosetSpec) -> Result<Self> {
        check_membership(&elements, interval, spec)?;
        for w in elements.windows(2) {
            if !leq_t(&w[0], &w[1])? {
                return Err(Error::NotAChain(format!("{} is not below {}", w[0], w[1])));
            }
        }
        Ok(Multichain { elements, interval })
    }

    pub fn from_chain(chain: &Chain) -> Self {
        Multichain { elements: chain.elements.clone(), interval: chain.interval }
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Multiplicity of each element.
    pub fn mult(&self) -> BTreeMap<Element, usize> {
        let mut m = BTreeMap::new();
        for e in &self.elements {
            *m.entry(e.clone()).or_insert(0) += 1;
        }
        m
    }

    /// Distinct elements in chain order.
    pub fn supp(&self) -> Vec<Element> {
        let mut out: Vec<Element> = Vec::new();
        for e in &self.elements {
            if out.last() != Some(e) {
                out.push(e.clone());
            }
        }
        out
    }

    /// The strict chain on the support.
    pub fn support_chain(&self) -> Chain {
        Chain { elements: self.supp(), interval: self.interval }
    }

    /// Same support, which makes the weights agree.
    pub fn same_set(&self, other: &Multichain) -> bool {
        self.supp() == other.supp()
    }
}
