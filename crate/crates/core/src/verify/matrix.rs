//! Element-indexed polynomial matrices: the refined zeta and Möbius
//! matrices of a poset and the plumbing to multiply and compare them.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactalg::{LaurentPoly, Monomial};
use crate::poset::{delta, Element, Poset, PosetSpec};
use crate::weight::{w, YVars};
use crate::Limits;

/// Largest dimension for which dense matrices are built.
pub const MAX_MATRIX_DIM: usize = 512;

/// Dense square matrix over `LaurentPoly`, rows and columns indexed by the
/// same ordered element list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    index: Vec<Element>,
    entries: Vec<LaurentPoly>,
}

impl PolyMatrix {
    pub fn from_fn(index: Vec<Element>, f: impl Fn(usize, usize) -> LaurentPoly + Sync) -> Self {
        let d = index.len();
        let entries = (0..d * d).into_par_iter().map(|k| f(k / d, k % d)).collect();
        PolyMatrix { index, entries }
    }

    pub fn identity(index: Vec<Element>) -> Self {
        Self::from_fn(index, |i, j| if i == j { LaurentPoly::one() } else { LaurentPoly::zero() })
    }

    pub fn dim(&self) -> usize {
        self.index.len()
    }

    pub fn index(&self) -> &[Element] {
        &self.index
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.dim() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: LaurentPoly) {
        let d = self.dim();
        self.entries[i * d + j] = p;
    }

    /// Exact product; both factors must carry the same index.
    pub fn matmul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.index != other.index {
            return Err(Error::IndexMismatch);
        }
        let d = self.dim();
        Ok(Self::from_fn(self.index.clone(), |i, j| {
            let mut acc = LaurentPoly::zero();
            for k in 0..d {
                let (a, b) = (self.get(i, k), other.get(k, j));
                if !a.is_zero() && !b.is_zero() {
                    acc += &(a * b);
                }
            }
            acc
        }))
    }

    pub fn is_identity(&self) -> bool {
        let d = self.dim();
        self.entries.par_iter().enumerate().all(|(k, p)| if k / d == k % d { p.is_one() } else { p.is_zero() })
    }

    /// Kronecker product. Row `(i, k)` maps to `i * dim(other) + k`, and the
    /// index element joins the components of both factors.
    pub fn kron(&self, other: &PolyMatrix) -> PolyMatrix {
        let q = other.dim();
        let index = self
            .index
            .iter()
            .flat_map(|a| {
                other.index.iter().map(move |b| {
                    let mut comps = a.components().to_vec();
                    comps.extend_from_slice(b.components());
                    Element::from_components_unchecked(comps)
                })
            })
            .collect();
        Self::from_fn(index, |r, c| {
            let (x, y) = (self.get(r / q, c / q), other.get(r % q, c % q));
            if x.is_zero() || y.is_zero() {
                LaurentPoly::zero()
            } else {
                x * y
            }
        })
    }

    /// Entry coordinates where the two matrices differ, row-major.
    pub fn differences(&self, other: &PolyMatrix) -> Vec<(usize, usize)> {
        let d = self.dim();
        self.entries
            .iter()
            .zip(&other.entries)
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .map(|(k, _)| (k / d, k % d))
            .collect()
    }
}

fn matrix_poset(spec: &PosetSpec, limits: &Limits) -> Result<Poset> {
    let d = spec.size();
    if d > MAX_MATRIX_DIM as u128 {
        return Err(Error::CapExceeded { what: "matrix dimension", count: d, limit: MAX_MATRIX_DIM as u128 });
    }
    Poset::new(spec, limits)
}

/// `Z = (w_{a,b}(Y))` in enumeration order.
pub fn zeta_matrix(spec: &PosetSpec, vars: &YVars, limits: &Limits) -> Result<PolyMatrix> {
    let poset = matrix_poset(spec, limits)?;
    Ok(PolyMatrix::from_fn(poset.elements().to_vec(), |i, j| {
        if poset.leq(i, j) {
            w(poset.element(i), poset.element(j), vars)
        } else {
            LaurentPoly::zero()
        }
    }))
}

/// Closed-form Möbius entry `prod_i (-1)^{Delta_{n_i+1}} prod_{j=0}^{n_i}
/// Y_{i,j}^{Delta_j} * w_{a,b}(Y^{-1})`.
pub fn mobius_entry(a: &Element, b: &Element, vars: &YVars) -> Result<LaurentPoly> {
    let wab = w(a, b, vars);
    if wab.is_zero() {
        return Ok(wab);
    }
    let mut negate = false;
    let mut pairs = Vec::new();
    for (i, (x, y)) in a.components().iter().zip(b.components()).enumerate() {
        let v = vars.component(i);
        let n = x.n() as usize;
        negate ^= delta(x, y, n + 1)? % 2 != 0;
        pairs.push((v.y0, delta(x, y, 0)? as i32));
        for j in 1..=n {
            pairs.push((v.ys[j - 1], delta(x, y, j)? as i32));
        }
    }
    let m = wab.invert_vars(&vars.all()).mul_monomial(&Monomial::from_pairs(pairs));
    if !m.is_polynomial() {
        return Err(Error::Internal(format!("Möbius entry for {a}, {b} has negative exponents")));
    }
    Ok(if negate { -m } else { m })
}

/// `M` from the closed form, in enumeration order.
pub fn mobius_matrix(spec: &PosetSpec, vars: &YVars, limits: &Limits) -> Result<PolyMatrix> {
    let poset = matrix_poset(spec, limits)?;
    let d = poset.len();
    let cells: Vec<Result<LaurentPoly>> =
        (0..d * d).into_par_iter().map(|k| mobius_entry(poset.element(k / d), poset.element(k % d), vars)).collect();
    let entries = cells.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(PolyMatrix { index: poset.elements().to_vec(), entries })
}

/// `m_{a,b}` as the alternating sum over strict chains of the open interval
/// `(a, b)`: a chain with `k` elements contributes `(-1)^{k+1}` times the
/// product of `w` along `a < c_1 < ... < c_k < b`.
pub fn mobius_via_chains(poset: &Poset, a: usize, b: usize, vars: &YVars, limits: &Limits) -> Result<LaurentPoly> {
    if !poset.leq(a, b) {
        return Err(Error::invalid(format!("{} is not below {}", poset.element(a), poset.element(b))));
    }
    if a == b {
        return Ok(LaurentPoly::one());
    }
    let inner = poset.open_between(a, b);
    let chains = poset.chains_in(&inner, limits.max_chains)?;
    let wt = |x: usize, y: usize| w(poset.element(x), poset.element(y), vars);
    Ok(chains
        .par_iter()
        .map(|c| {
            let mut seq = vec![a];
            seq.extend_from_slice(c);
            seq.push(b);
            let p: LaurentPoly = seq.windows(2).map(|s| wt(s[0], s[1])).product();
            if c.len() % 2 == 0 {
                -p
            } else {
                p
            }
        })
        .reduce(LaurentPoly::zero, |x, y| x + y))
}
