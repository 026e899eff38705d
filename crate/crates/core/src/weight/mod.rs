//! Weights of pairs, chains and tableaux.

mod tableau;

pub use tableau::{phi_tableau, project, theta_tableau, SkewTableau};

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::exactalg::{y_binomial_or_zero, LaurentPoly, VarId, VarName, VarTable};
use crate::poset::{delta, leq_component, leq_t, ComponentElement, Element, PosetSpec};

/// The `Y` variables of one component: `Y[i,0]` and `Y[i,1..=n_i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentYVars {
    pub y0: VarId,
    /// `ys[j - 1]` is `Y[i,j]`.
    pub ys: Vec<VarId>,
}

/// All `Y` variables of a spec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YVars {
    comps: Vec<ComponentYVars>,
}

impl YVars {
    pub fn new(spec: &PosetSpec, table: &mut VarTable) -> Self {
        let comps = (0..spec.g())
            .map(|i| {
                let c = i as u32 + 1;
                ComponentYVars {
                    y0: table.intern(VarName::y(c, 0)),
                    ys: (1..=spec.n()[i]).map(|j| table.intern(VarName::y(c, j))).collect(),
                }
            })
            .collect();
        YVars { comps }
    }

    pub fn component(&self, i: usize) -> &ComponentYVars {
        &self.comps[i]
    }

    /// The variables of component `i` alone, as for a one-component spec.
    pub fn only(&self, i: usize) -> YVars {
        YVars { comps: vec![self.comps[i].clone()] }
    }

    pub fn components(&self) -> &[ComponentYVars] {
        &self.comps
    }

    pub fn all(&self) -> BTreeSet<VarId> {
        self.comps.iter().flat_map(|c| std::iter::once(c.y0).chain(c.ys.iter().copied())).collect()
    }

    /// Every `Y[i,j]` with `j >= 1`.
    pub fn positive(&self) -> BTreeSet<VarId> {
        self.comps.iter().flat_map(|c| c.ys.iter().copied()).collect()
    }
}

/// `theta_{a,b} = binom(b_0, a_0)` in `y0`; zero when `a_0 > b_0`.
pub fn theta(a: &ComponentElement, b: &ComponentElement, y0: VarId) -> LaurentPoly {
    y_binomial_or_zero(b.zeros() as i64, a.zeros() as i64, y0)
}

/// Refined leg polynomial of a pair: `prod (1 - Y_i^{Delta_i(a,b)})` over
/// `i` with `a_i = 1`, `b_i = 0`, or zero when `a` is not below `b`.
pub fn refined_leg_pair(a: &ComponentElement, b: &ComponentElement, ys: &[VarId]) -> LaurentPoly {
    if !leq_component(a, b) {
        return LaurentPoly::zero();
    }
    let mut out = LaurentPoly::one();
    for i in 1..=a.n() {
        if a.contains(i) && !b.contains(i) {
            let d = delta(a, b, i as usize).expect("index in range");
            out = &out * &LaurentPoly::one_minus(ys[i as usize - 1], d as i32);
        }
    }
    out
}

/// `w_{a,b} = prod_i theta * phi` over the components.
pub fn w(a: &Element, b: &Element, vars: &YVars) -> LaurentPoly {
    let mut out = LaurentPoly::one();
    for (i, (x, y)) in a.components().iter().zip(b.components()).enumerate() {
        let v = vars.component(i);
        let t = theta(x, y, v.y0);
        if t.is_zero() {
            return t;
        }
        let f = refined_leg_pair(x, y, &v.ys);
        if f.is_zero() {
            return f;
        }
        if !t.is_one() {
            out = &out * &t;
        }
        if !f.is_one() {
            out = &out * &f;
        }
    }
    out
}

/// `W_C = prod_j w(c_j, c_{j+1})` with the bottom and top added at the ends.
/// Accepts strict chains and multichains alike.
pub fn chain_weight(elements: &[Element], spec: &PosetSpec, vars: &YVars) -> Result<LaurentPoly> {
    let mut seq = Vec::with_capacity(elements.len() + 2);
    seq.push(Element::bottom(spec));
    for e in elements {
        if !e.conforms(spec) {
            return Err(Error::SpecMismatch { n: spec.n().to_vec(), r: spec.r().to_vec() });
        }
        seq.push(e.clone());
    }
    seq.push(Element::top(spec));
    for pair in seq.windows(2) {
        if !leq_t(&pair[0], &pair[1])? {
            return Err(Error::NotAChain(format!("{} is not below {}", pair[0], pair[1])));
        }
    }
    Ok(seq.windows(2).map(|p| w(&p[0], &p[1], vars)).product())
}
