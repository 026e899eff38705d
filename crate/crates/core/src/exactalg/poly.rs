use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::var::VarId;
use crate::error::{Error, Result};

/// A Laurent monomial: sorted `(variable, exponent)` pairs, no zero exponents.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<(VarId, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: VarId, exp: i32) -> Self {
        if exp == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, exp)])
        }
    }

    /// Builds a monomial from arbitrary pairs; repeated variables are merged.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarId, i32)>) -> Self {
        let mut acc: BTreeMap<VarId, i32> = BTreeMap::new();
        for (v, e) in pairs {
            *acc.entry(v).or_insert(0) += e;
        }
        Monomial(acc.into_iter().filter(|&(_, e)| e != 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(VarId, i32)] {
        &self.0
    }

    pub fn exponent(&self, v: VarId) -> i32 {
        match self.0.binary_search_by_key(&v, |&(w, _)| w) {
            Ok(i) => self.0[i].1,
            Err(_) => 0,
        }
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|&(_, e)| e as i64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn pow(&self, k: i32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|&(v, e)| (v, e * k)).collect())
    }

    /// Negates the exponent of every variable in `vars`.
    pub fn invert(&self, vars: &BTreeSet<VarId>) -> Monomial {
        Monomial(self.0.iter().map(|&(v, e)| if vars.contains(&v) { (v, -e) } else { (v, e) }).collect())
    }

    /// Splits into the part over `vars` and the remaining part.
    pub fn split(&self, vars: &BTreeSet<VarId>) -> (Monomial, Monomial) {
        let (inside, outside): (Vec<_>, Vec<_>) = self.0.iter().partition(|(v, _)| vars.contains(v));
        (Monomial(inside), Monomial(outside))
    }

    /// True if every exponent is nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.0.iter().all(|&(_, e)| e >= 0)
    }

    /// `self` divides `other` as ordinary monomials (both polynomial).
    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().all(|&(v, e)| other.exponent(v) >= e)
    }

    fn quotient(&self, divisor: &Monomial) -> Monomial {
        self.mul(&divisor.pow(-1))
    }

    /// Graded-lexicographic comparison in variable-id order (higher is greater).
    fn grlex_cmp(&self, other: &Monomial) -> std::cmp::Ordering {
        self.total_degree().cmp(&other.total_degree()).then_with(|| lex_cmp(&self.0, &other.0, |v| v.index()))
    }
}

/// Lexicographic comparison of exponent vectors, where `rank` orders the
/// variables (smaller rank = more significant). Missing exponents are 0.
pub(crate) fn lex_cmp(a: &[(VarId, i32)], b: &[(VarId, i32)], rank: impl Fn(VarId) -> usize) -> std::cmp::Ordering {
    let mut a: Vec<(usize, i32)> = a.iter().map(|&(v, e)| (rank(v), e)).collect();
    let mut b: Vec<(usize, i32)> = b.iter().map(|&(v, e)| (rank(v), e)).collect();
    a.sort_unstable();
    b.sort_unstable();
    let (mut i, mut j) = (0, 0);
    loop {
        let next_a = a.get(i).copied();
        let next_b = b.get(j).copied();
        let (ea, eb) = match (next_a, next_b) {
            (None, None) => return std::cmp::Ordering::Equal,
            (Some((ra, ea)), Some((rb, eb))) if ra == rb => {
                i += 1;
                j += 1;
                (ea, eb)
            }
            (Some((ra, ea)), Some((rb, _))) if ra < rb => {
                i += 1;
                (ea, 0)
            }
            (Some(_), Some((_, eb))) => {
                j += 1;
                (0, eb)
            }
            (Some((_, ea)), None) => {
                i += 1;
                (ea, 0)
            }
            (None, Some((_, eb))) => {
                j += 1;
                (0, eb)
            }
        };
        if ea != eb {
            return ea.cmp(&eb);
        }
    }
}

/// Sparse multivariate Laurent polynomial with big-integer coefficients.
///
/// Zero coefficients are never stored, so structural equality is equality of
/// polynomials.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(v: VarId) -> Self {
        Self::term(1, Monomial::var(v, 1))
    }

    /// `v^exp`; negative exponents allowed.
    pub fn var_pow(v: VarId, exp: i32) -> Self {
        Self::term(1, Monomial::var(v, exp))
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// `1 - v^exp`.
    pub fn one_minus(v: VarId, exp: i32) -> Self {
        let mut p = LaurentPoly::one();
        p.add_term(Monomial::var(v, exp), BigInt::from(-1));
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The coefficient of the constant monomial.
    pub fn constant_term(&self) -> BigInt {
        self.coeff(&Monomial::one())
    }

    /// If the polynomial is a constant, returns it.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn variables(&self) -> BTreeSet<VarId> {
        self.terms.keys().flat_map(|m| m.pairs().iter().map(|&(v, _)| v)).collect()
    }

    /// True if no exponent is negative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(Monomial::is_polynomial)
    }

    pub fn mul_monomial(&self, m: &Monomial) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Replaces every selected variable by its inverse.
    pub fn invert_vars(&self, vars: &BTreeSet<VarId>) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(m, c)| (m.invert(vars), c.clone())).collect() }
    }

    /// Substitutes 1 for each selected variable.
    pub fn eval_at_one(&self, vars: &BTreeSet<VarId>) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|(m, c)| {
            let m = Monomial(m.pairs().iter().copied().filter(|(v, _)| !vars.contains(v)).collect());
            (m, c.clone())
        }))
    }

    /// Renames variables; variables missing from `map` are kept. Two
    /// variables mapped to the same target have their exponents merged.
    pub fn rename(&self, map: &HashMap<VarId, VarId>) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|(m, c)| {
            let m = Monomial::from_pairs(m.pairs().iter().map(|&(v, e)| (map.get(&v).copied().unwrap_or(v), e)));
            (m, c.clone())
        }))
    }

    /// Substitutes a polynomial for each mapped variable. A variable that
    /// occurs with a negative exponent must map to a monomial (a unit of the
    /// Laurent ring).
    pub fn substitute(&self, map: &HashMap<VarId, LaurentPoly>) -> Result<LaurentPoly> {
        let mut inverse_cache: HashMap<VarId, LaurentPoly> = HashMap::new();
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            let mut keep = Vec::new();
            let mut factor = LaurentPoly::constant(c.clone());
            for &(v, e) in m.pairs() {
                let Some(image) = map.get(&v) else {
                    keep.push((v, e));
                    continue;
                };
                let base = if e >= 0 {
                    image.clone()
                } else {
                    match inverse_cache.get(&v) {
                        Some(inv) => inv.clone(),
                        None => {
                            let inv = image.monomial_inverse().ok_or_else(|| {
                                Error::invalid("negative power of a variable mapped to a non-monomial")
                            })?;
                            inverse_cache.insert(v, inv.clone());
                            inv
                        }
                    }
                };
                factor = &factor * &base.pow(e.unsigned_abs());
            }
            out += &factor.mul_monomial(&Monomial(keep));
        }
        Ok(out)
    }

    /// Inverse of `c * m` when `c = ±1`.
    fn monomial_inverse(&self) -> Option<LaurentPoly> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        if c.abs().is_one() {
            Some(LaurentPoly::term(c.clone(), m.pow(-1)))
        } else {
            None
        }
    }

    /// Groups terms by their part over `vars`; the values carry the rest.
    pub fn split_by(&self, vars: &BTreeSet<VarId>) -> BTreeMap<Monomial, LaurentPoly> {
        let mut out: BTreeMap<Monomial, LaurentPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (inside, outside) = m.split(vars);
            out.entry(inside).or_default().add_term(outside, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Leading term in graded-lex order of variable ids.
    fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().max_by(|a, b| a.0.grlex_cmp(b.0))
    }

    /// Exact division by `divisor`. Both operands must be ordinary
    /// polynomials; any remainder is reported as [`Error::InexactDivision`].
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        if divisor.is_zero() {
            return Err(Error::invalid("division by zero polynomial"));
        }
        if !self.is_polynomial() || !divisor.is_polynomial() {
            return Err(Error::invalid("exact division requires polynomial operands"));
        }
        let (lead_m, lead_c) = divisor.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while let Some((m, c)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if !lead_m.divides(&m) || !(&c % &lead_c).is_zero() {
                return Err(Error::InexactDivision);
            }
            let q = LaurentPoly::term(&c / &lead_c, m.quotient(&lead_m));
            rem -= &(&q * divisor);
            quot += &q;
        }
        Ok(quot)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(c)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        LaurentPoly { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |mut a, b| {
            a += &b;
            a
        })
    }
}

impl std::iter::Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::one(), |a, b| &a * &b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y() -> VarId {
        VarId(0)
    }

    fn poly(coeffs: &[(i64, i32)]) -> LaurentPoly {
        LaurentPoly::from_terms(coeffs.iter().map(|&(c, e)| (Monomial::var(y(), e), BigInt::from(c))))
    }

    #[test]
    fn add_cancels() {
        let p = poly(&[(1, 0), (1, 1)]);
        assert_eq!(&p + &LaurentPoly::constant(-1), LaurentPoly::var(y()));
        assert_eq!(&p + &LaurentPoly::zero(), p);
        let s = &poly(&[(1, 0), (-1, 2)]) + &poly(&[(1, 2), (-1, 4)]);
        assert_eq!(s, poly(&[(1, 0), (-1, 4)]));
    }

    #[test]
    fn mul_examples() {
        let a = poly(&[(1, 0), (-1, 1)]);
        let b = poly(&[(1, 0), (1, 1), (1, 2)]);
        assert_eq!(&a * &b, poly(&[(1, 0), (-1, 3)]));
        assert_eq!(&b * &LaurentPoly::one(), b);
        let c = poly(&[(1, 0), (1, 1)]);
        assert_eq!(&c * &c, poly(&[(1, 0), (2, 1), (1, 2)]));
    }

    #[test]
    fn invert_vars_examples() {
        let set: BTreeSet<_> = [y()].into();
        assert_eq!(poly(&[(1, 0), (1, 1)]).invert_vars(&set), poly(&[(1, 0), (1, -1)]));

        let (y1, y2) = (VarId(1), VarId(2));
        let p = &LaurentPoly::one_minus(y1, 2) * &LaurentPoly::one_minus(y2, 1);
        let expect = &LaurentPoly::one_minus(y1, -2) * &LaurentPoly::one_minus(y2, 1);
        assert_eq!(p.invert_vars(&[y1].into()), expect);
    }

    #[test]
    fn eval_at_one_kills_one_minus_y() {
        let set: BTreeSet<_> = [y()].into();
        assert!(LaurentPoly::one_minus(y(), 1).eval_at_one(&set).is_zero());
    }

    #[test]
    fn exact_division() {
        let num = poly(&[(1, 0), (-1, 3)]);
        let den = poly(&[(1, 0), (-1, 1)]);
        assert_eq!(num.div_exact(&den).unwrap(), poly(&[(1, 0), (1, 1), (1, 2)]));
        assert_eq!(poly(&[(1, 0), (1, 3)]).div_exact(&den), Err(Error::InexactDivision));
    }

    #[test]
    fn substitute_monomials_and_inverses() {
        let (a, b) = (VarId(1), VarId(2));
        let p = &LaurentPoly::var_pow(a, -2) + &LaurentPoly::var(b);
        let mut map = HashMap::new();
        map.insert(a, LaurentPoly::var_pow(b, 3));
        let got = p.substitute(&map).unwrap();
        assert_eq!(got, &LaurentPoly::var_pow(b, -6) + &LaurentPoly::var(b));

        map.insert(a, poly(&[(1, 0), (1, 1)]));
        assert!(p.substitute(&map).is_err());
    }

    #[test]
    fn split_by_groups() {
        let (a, b) = (VarId(1), VarId(2));
        let p = &(&LaurentPoly::var(a) * &LaurentPoly::var(b)) + &LaurentPoly::var(b);
        let parts = p.split_by(&[b].into());
        assert_eq!(parts.len(), 1);
        let (k, v) = parts.iter().next().unwrap();
        assert_eq!(*k, Monomial::var(b, 1));
        assert_eq!(*v, &LaurentPoly::var(a) + &LaurentPoly::one());
    }
}
