//! Exact checks of the functional equations under `Y -> Y^{-1}`,
//! `X -> X^{-1}` and of the order-complex identity over subsets.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{LaurentPoly, Monomial, VarId, VarName, VarTable};
use crate::poset::{Element, Interval, Poset, PosetSpec};
use crate::series::{
    chain_weight_cached, classical_igusa, generalized_igusa, hls, hls_modified, pair_weights, x_name, HlsRational,
    UniversalRational,
};
use crate::weight::YVars;
use crate::Limits;

/// `K(Y) = prod_i Y_{i,0}^{binom(r_i, 2)} prod_{j=1}^{n_i} Y_{i,j}^{r_i + j - 1}`
/// and `N = sum_i (n_i + r_i)`.
pub fn k_and_n(spec: &PosetSpec, vars: &YVars) -> (LaurentPoly, i64) {
    let mut pairs = Vec::new();
    for (i, (&n, &r)) in spec.n().iter().zip(spec.r()).enumerate() {
        let v = vars.component(i);
        pairs.push((v.y0, (r * r.saturating_sub(1) / 2) as i32));
        for j in 1..=n {
            pairs.push((v.ys[j as usize - 1], (r + j - 1) as i32));
        }
    }
    let n: i64 = spec.n().iter().zip(spec.r()).map(|(&n, &r)| (n + r) as i64).sum();
    (LaurentPoly::term(1, Monomial::from_pairs(pairs)), n)
}

/// Outcome of a reciprocity check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Bottom equals top, so the statement has nothing to say.
    Vacuous,
}

/// Both cleared sides of a reciprocity identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReciprocityCertificate {
    pub spec: PosetSpec,
    pub kind: Interval,
    pub n: i64,
    pub k: LaurentPoly,
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
    pub equal: bool,
    pub vacuous: bool,
}

impl ReciprocityCertificate {
    pub fn verdict(&self) -> Verdict {
        match (self.vacuous, self.equal) {
            (true, _) => Verdict::Vacuous,
            (false, true) => Verdict::Pass,
            (false, false) => Verdict::Fail,
        }
    }
}

/// Clears `F = num / prod_c (1 - X_c)` on both sides of
/// `F(Y^{-1}; X^{-1}) = (-1)^e * x_mono * K^{-1} * F(Y; X)`.
///
/// `prod_c (1 - X_c^{-1}) = (-1)^m prod_c X_c^{-1} prod_c (1 - X_c)`, so
/// `F(Y^{-1}; X^{-1}) = (-1)^m prod_c X_c * num(Y^{-1}; X^{-1}) / prod_c (1 - X_c)`.
/// Multiplying through by `K * prod_c (1 - X_c)` leaves
/// `lhs = (-1)^m prod_c X_c * K * num(Y^{-1}; X^{-1})` and
/// `rhs = (-1)^e * x_mono * num(Y; X)`.
pub fn cleared_sides(
    rational: &UniversalRational,
    y_vars: &BTreeSet<VarId>,
    k: &LaurentPoly,
    e: i64,
    x_mono: &Monomial,
) -> (LaurentPoly, LaurentPoly) {
    let mut inverted = y_vars.clone();
    inverted.extend(rational.factors.iter().copied());
    inverted.extend(rational.numerator.variables());
    let m = rational.factors.len();
    let xs = Monomial::from_pairs(rational.factors.iter().map(|&v| (v, 1)));
    let mut lhs = &rational.numerator.invert_vars(&inverted).mul_monomial(&xs) * k;
    if m % 2 == 1 {
        lhs = -lhs;
    }
    let mut rhs = rational.numerator.mul_monomial(x_mono);
    if e.rem_euclid(2) == 1 {
        rhs = -rhs;
    }
    (lhs, rhs)
}

/// Checks the reciprocity of `HLS` (half-open interval) or `HLS'` (open
/// interval):
///
/// * `HLS(Y^{-1}; X^{-1}) = (-1)^N X_top K^{-1} HLS(Y; X)`
/// * `HLS'(Y^{-1}; X^{-1}) = (-1)^{N-1} K^{-1} HLS'(Y; X)`
///
/// For a degenerate spec the certificate is marked vacuous.
pub fn verify_reciprocity(
    spec: &PosetSpec,
    kind: Interval,
    table: &mut VarTable,
    limits: &Limits,
) -> Result<ReciprocityCertificate> {
    let h = match kind {
        Interval::HalfOpen => hls(spec, table, limits)?,
        Interval::Open => hls_modified(spec, table, limits)?,
    };
    Ok(certify(&h, table))
}

/// Reciprocity certificate of an already computed series.
pub fn certify(h: &HlsRational, table: &mut VarTable) -> ReciprocityCertificate {
    let spec = h.spec();
    let vars = YVars::new(spec, table);
    let (k, n) = k_and_n(spec, &vars);
    let vacuous = spec.is_degenerate();
    let (e, x_mono) = match h.kind() {
        Interval::HalfOpen if !vacuous => {
            let top = table.intern(x_name(&Element::top(spec)));
            (n, Monomial::var(top, 1))
        }
        Interval::HalfOpen => (n, Monomial::one()),
        Interval::Open => (n - 1, Monomial::one()),
    };
    let (lhs, rhs) = cleared_sides(&h.as_rational(), &vars.all(), &k, e, &x_mono);
    ReciprocityCertificate { spec: spec.clone(), kind: h.kind(), n, k, equal: lhs == rhs, lhs, rhs, vacuous }
}

/// Result of checking the order-complex identity on every subset of the
/// open interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderComplexReport {
    pub spec: PosetSpec,
    pub subsets: usize,
    /// Failing subsets in increasing mask order, bit `b` standing for the
    /// `b`-th element of the open interval in enumeration order.
    pub failures: Vec<Vec<Element>>,
}

impl OrderComplexReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Subset-sum transform: `f[S] <- sum_{T subset S} f[T]`.
fn subset_sums(f: &mut [LaurentPoly]) {
    let mut half = 1usize;
    while half < f.len() {
        f.par_chunks_mut(2 * half).for_each(|chunk| {
            let (lo, hi) = chunk.split_at_mut(half);
            for (h, l) in hi.iter_mut().zip(lo.iter()) {
                if !l.is_zero() {
                    *h += l;
                }
            }
        });
        half *= 2;
    }
}

/// Checks, for every `S` inside the open interval,
/// `sum_{C in OC(S)} (-1)^{|C|} W_C(Y) = (-1)^{N-1} K(Y) sum_{C in OC(S^c)} (-1)^{|C|} W_C(Y^{-1})`.
pub fn verify_order_complex(spec: &PosetSpec, table: &mut VarTable, limits: &Limits) -> Result<OrderComplexReport> {
    if spec.is_degenerate() {
        return Err(Error::Degenerate);
    }
    let poset = Poset::new(spec, limits)?;
    let open = poset.interval(Interval::Open);
    let m = open.len();
    let count = 1u128.checked_shl(m as u32).unwrap_or(u128::MAX);
    if m >= 63 || count > limits.max_subsets as u128 {
        return Err(Error::CapExceeded { what: "subsets", count, limit: limits.max_subsets as u128 });
    }
    let vars = YVars::new(spec, table);
    let y_all = vars.all();
    let (k, n) = k_and_n(spec, &vars);
    let chains = poset.chains_in(&open, limits.max_chains)?;
    let mut nodes = vec![poset.bottom()];
    nodes.extend(&open);
    nodes.push(poset.top());
    let weights = pair_weights(&poset, &nodes, &vars);
    let bit: HashMap<usize, usize> = open.iter().enumerate().map(|(b, &e)| (e, b)).collect();

    let terms: Vec<(usize, LaurentPoly, LaurentPoly)> = chains
        .par_iter()
        .map(|c| {
            let mask = c.iter().fold(0usize, |acc, e| acc | 1 << bit[e]);
            let wc = chain_weight_cached(&poset, c, &weights);
            let inv = wc.invert_vars(&y_all);
            if c.len() % 2 == 1 {
                (mask, -wc, -inv)
            } else {
                (mask, wc, inv)
            }
        })
        .collect();
    let size = 1usize << m;
    let mut direct = vec![LaurentPoly::zero(); size];
    let mut inverted = vec![LaurentPoly::zero(); size];
    for (mask, a, b) in terms {
        direct[mask] = a;
        inverted[mask] = b;
    }
    subset_sums(&mut direct);
    subset_sums(&mut inverted);

    let factor = if (n - 1).rem_euclid(2) == 1 { -k } else { k };
    let full = size - 1;
    let failing: Vec<usize> =
        (0..size).into_par_iter().filter(|&s| direct[s] != &factor * &inverted[full ^ s]).collect();
    let failures = failing
        .into_iter()
        .map(|s| (0..m).filter(|&b| s >> b & 1 == 1).map(|b| poset.element(open[b]).clone()).collect())
        .collect();
    Ok(OrderComplexReport { spec: spec.clone(), subsets: size, failures })
}

/// Reciprocity of the generalized Igusa function on `[0, r_1] x ... x
/// [0, r_g]`, read off the `HLS` certificate of `n = 0` by renaming.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IgusaReciprocity {
    /// The renamed `HLS` numerator equals the one built from the definition.
    pub numerators_agree: bool,
    /// The renamed certificate sides equal the sides cleared directly from
    /// `I(Y^{-1}; X^{-1}) = (-1)^N X_top prod_i Y_i^{-binom(r_i, 2)} I(Y; X)`.
    pub sides_agree: bool,
    pub certificate: ReciprocityCertificate,
}

impl IgusaReciprocity {
    pub fn passed(&self) -> bool {
        self.numerators_agree && self.sides_agree && self.certificate.verdict() == Verdict::Pass
    }
}

/// Name of the Igusa `X` variable of a lattice point.
pub fn igusa_x_name(point: &[u32]) -> VarName {
    VarName::indexed("X", point)
}

/// Name of the Igusa `Y` variable of coordinate `i` (1-based).
pub fn igusa_y_name(i: u32) -> VarName {
    VarName::indexed("Y", &[i])
}

/// The Igusa function of `r` from its definition, over the variables named
/// by [`igusa_y_name`] and [`igusa_x_name`]: the classical one for a single
/// entry and the generalized one otherwise.
pub fn igusa_function(r: &[u32], table: &mut VarTable) -> Result<UniversalRational> {
    if r.is_empty() {
        return Err(Error::invalid("at least one coordinate is required"));
    }
    let ys: Vec<VarId> = (1..=r.len() as u32).map(|i| table.intern(igusa_y_name(i))).collect();
    if let [r0] = r {
        let xs: Vec<VarId> = (1..=*r0).map(|k| table.intern(igusa_x_name(&[k]))).collect();
        return classical_igusa(*r0, ys[0], &xs);
    }
    let mut points: Vec<Vec<u32>> = vec![Vec::new()];
    for &ri in r {
        points = points
            .into_iter()
            .flat_map(|p| {
                (0..=ri).map(move |k| {
                    let mut q = p.clone();
                    q.push(k);
                    q
                })
            })
            .collect();
    }
    let xs: HashMap<Vec<u32>, VarId> = points
        .into_iter()
        .filter(|p| p.iter().any(|&k| k > 0))
        .map(|p| {
            let v = table.intern(igusa_x_name(&p));
            (p, v)
        })
        .collect();
    generalized_igusa(r, &ys, &|p| xs[p])
}

/// Classical (`g = 1`) or generalized Igusa reciprocity, derived from the
/// `HLS` certificate of `n = (0, ..., 0)`, `r` via `Y_{i,0} -> Y_i` and
/// `X_{0^{k_1}|...|0^{k_g}} -> X_{(k_1, ..., k_g)}`.
pub fn igusa_reciprocity(r: &[u32], table: &mut VarTable, limits: &Limits) -> Result<IgusaReciprocity> {
    let spec = PosetSpec::new(vec![0; r.len()], r.to_vec())?;
    let h = hls(&spec, table, limits)?;
    let certificate = certify(&h, table);
    let vars = YVars::new(&spec, table);
    let igusa = igusa_function(r, table)?;

    let ys: Vec<VarId> = (1..=r.len() as u32).map(|i| table.intern(igusa_y_name(i))).collect();
    let mut map: HashMap<VarId, VarId> = HashMap::new();
    for (i, &y) in ys.iter().enumerate() {
        map.insert(vars.component(i).y0, y);
    }
    let poset = Poset::new(&spec, limits)?;
    for e in &poset.elements()[1..] {
        let point: Vec<u32> = e.components().iter().map(|c| c.zeros()).collect();
        map.insert(table.intern(x_name(e)), table.intern(igusa_x_name(&point)));
    }
    let numerators_agree = igusa.same_as(&h.as_rational().rename(&map));

    let k = LaurentPoly::term(
        1,
        Monomial::from_pairs(ys.iter().zip(r).map(|(&y, &ri)| (y, (ri * ri.saturating_sub(1) / 2) as i32))),
    );
    let n: i64 = r.iter().map(|&x| x as i64).sum();
    let x_top = if spec.is_degenerate() { Monomial::one() } else { Monomial::var(table.intern(igusa_x_name(r)), 1) };
    let (lhs, rhs) = cleared_sides(&igusa, &ys.iter().copied().collect(), &k, n, &x_top);
    let sides_agree = certificate.lhs.rename(&map) == lhs && certificate.rhs.rename(&map) == rhs;
    Ok(IgusaReciprocity { numerators_agree, sides_agree, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::text::render;

    fn spec(n: &[u32], r: &[u32]) -> PosetSpec {
        PosetSpec::new(n.to_vec(), r.to_vec()).unwrap()
    }

    #[test]
    fn k_and_n_examples() {
        let mut t = VarTable::new();
        let s = spec(&[1], &[2]);
        let vars = YVars::new(&s, &mut t);
        let (k, n) = k_and_n(&s, &vars);
        assert_eq!(render(&k, &t), "Y[1,0]*Y[1,1]^2");
        assert_eq!(n, 3);
    }

    #[test]
    fn k_exponents_are_top_deltas() {
        let mut t = VarTable::new();
        let s = spec(&[2, 3], &[3, 1]);
        let vars = YVars::new(&s, &mut t);
        let (k, _) = k_and_n(&s, &vars);
        let (bottom, top) = (Element::bottom(&s), Element::top(&s));
        let (m, _) = k.terms().next().unwrap();
        for i in 0..2 {
            let (b, tp) = (bottom.component(i), top.component(i));
            let v = vars.component(i);
            assert_eq!(m.exponent(v.y0) as i64, crate::poset::delta(b, tp, 0).unwrap());
            for j in 1..=s.n()[i] as usize {
                assert_eq!(m.exponent(v.ys[j - 1]) as i64, crate::poset::delta(b, tp, j).unwrap());
            }
        }
    }

    #[test]
    fn reciprocity_small_grid() {
        let limits = Limits::default();
        for (n, r) in [(1, 2), (0, 2), (1, 1), (2, 1), (0, 3), (3, 0), (2, 0)] {
            for kind in [Interval::HalfOpen, Interval::Open] {
                let mut t = VarTable::new();
                let c = verify_reciprocity(&spec(&[n], &[r]), kind, &mut t, &limits).unwrap();
                assert_eq!(c.verdict(), Verdict::Pass, "({n}, {r}) {kind:?}");
                assert_eq!(render(&c.lhs, &t), render(&c.rhs, &t));
            }
        }
    }

    #[test]
    fn wrong_sign_is_detected() {
        let mut t = VarTable::new();
        let c = verify_reciprocity(&spec(&[1], &[2]), Interval::HalfOpen, &mut t, &Limits::default()).unwrap();
        assert!(c.equal);
        assert_ne!(c.lhs, -c.rhs.clone());
    }

    #[test]
    fn degenerate_is_vacuous() {
        for kind in [Interval::HalfOpen, Interval::Open] {
            let mut t = VarTable::new();
            let c = verify_reciprocity(&spec(&[0, 0], &[0, 0]), kind, &mut t, &Limits::default()).unwrap();
            assert_eq!(c.verdict(), Verdict::Vacuous);
        }
        let mut t = VarTable::new();
        assert_eq!(verify_order_complex(&spec(&[0], &[0]), &mut t, &Limits::default()), Err(Error::Degenerate));
    }

    #[test]
    fn order_complex_small() {
        let limits = Limits::default();
        for (n, r) in [(1, 1), (0, 3), (2, 1)] {
            let mut t = VarTable::new();
            let rep = verify_order_complex(&spec(&[n], &[r]), &mut t, &limits).unwrap();
            assert!(rep.passed(), "({n}, {r}): {:?}", rep.failures);
        }
        let mut t = VarTable::new();
        let rep = verify_order_complex(&spec(&[1], &[1]), &mut t, &limits).unwrap();
        assert_eq!(rep.subsets, 4);
    }

    #[test]
    fn order_complex_subset_cap() {
        let limits = Limits { max_subsets: 16, ..Limits::default() };
        let mut t = VarTable::new();
        assert!(verify_order_complex(&spec(&[2], &[1]), &mut t, &limits).unwrap_err().is_cap());
    }

    #[test]
    fn subset_sums_small() {
        let mut f: Vec<LaurentPoly> = (1..=4).map(LaurentPoly::from).collect();
        subset_sums(&mut f);
        let got: Vec<LaurentPoly> = f;
        let want: Vec<LaurentPoly> = [1, 3, 4, 10].into_iter().map(LaurentPoly::from).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn igusa_specializations() {
        let limits = Limits::default();
        for r in [vec![1], vec![2], vec![3], vec![1, 1], vec![2, 1]] {
            let mut t = VarTable::new();
            let rep = igusa_reciprocity(&r, &mut t, &limits).unwrap();
            assert!(rep.passed(), "{r:?}: {rep:?}");
        }
    }
}
