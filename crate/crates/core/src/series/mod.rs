//! Skew Hall-Littlewood-Schubert series as exact rational functions over
//! the universal denominator, their truncated expansions and the classical
//! functions they specialize to.

mod expand;
mod special;

pub use expand::{expand_multichain, expand_rational, substitute, SubstitutedSeries, TruncatedSeries};
pub use special::{classical_igusa, generalized_igusa, mv_hls, weak_order_igusa};

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactalg::text::render;
use crate::exactalg::{LaurentPoly, Monomial, VarId, VarName, VarTable};
use crate::poset::{Element, Interval, Poset, PosetSpec};
use crate::weight::{w, YVars};
use crate::Limits;

/// Name of the `X` variable attached to an element.
pub fn x_name(e: &Element) -> VarName {
    VarName::X { key: e.order_key(), label: e.render() }
}

/// The `Y` variables of a spec and one `X` variable per non-bottom element.
#[derive(Debug, Clone)]
pub struct HlsVars {
    pub y: YVars,
    x: Vec<Option<VarId>>,
}

impl HlsVars {
    pub fn new(poset: &Poset, table: &mut VarTable) -> Self {
        let y = YVars::new(poset.spec(), table);
        let x =
            (0..poset.len()).map(|i| (i != poset.bottom()).then(|| table.intern(x_name(poset.element(i))))).collect();
        HlsVars { y, x }
    }

    /// The `X` variable of element `i`; panics for the bottom element.
    pub fn x(&self, i: usize) -> VarId {
        self.x[i].expect("the bottom element has no X variable")
    }

    pub fn x_vars(&self) -> BTreeSet<VarId> {
        self.x.iter().flatten().copied().collect()
    }

    pub fn y_vars(&self) -> BTreeSet<VarId> {
        self.y.all()
    }
}

/// `numerator / prod_v (1 - v)` with the product left unexpanded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalRational {
    pub numerator: LaurentPoly,
    pub factors: Vec<VarId>,
}

impl UniversalRational {
    /// Same value, assuming both use the same variables: equal numerators
    /// and the same set of denominator factors.
    pub fn same_as(&self, other: &UniversalRational) -> bool {
        let a: BTreeSet<_> = self.factors.iter().collect();
        let b: BTreeSet<_> = other.factors.iter().collect();
        a.len() == self.factors.len() && a == b && self.numerator == other.numerator
    }

    pub fn rename(&self, map: &HashMap<VarId, VarId>) -> UniversalRational {
        UniversalRational {
            numerator: self.numerator.rename(map),
            factors: self.factors.iter().map(|v| map.get(v).copied().unwrap_or(*v)).collect(),
        }
    }

    pub fn denominator_poly(&self) -> LaurentPoly {
        self.factors.iter().map(|&v| LaurentPoly::one_minus(v, 1)).product()
    }
}

/// `HLS` or `HLS'` over the universal denominator.
#[derive(Debug, Clone)]
pub struct HlsRational {
    spec: PosetSpec,
    kind: Interval,
    numerator: LaurentPoly,
    denominator: Vec<Element>,
    denominator_vars: Vec<VarId>,
    chains: usize,
}

impl HlsRational {
    pub fn spec(&self) -> &PosetSpec {
        &self.spec
    }

    /// `HalfOpen` for `HLS`, `Open` for `HLS'`.
    pub fn kind(&self) -> Interval {
        self.kind
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.numerator
    }

    /// Elements `c` of the factors `1 - X_c`, in enumeration order.
    pub fn denominator(&self) -> &[Element] {
        &self.denominator
    }

    pub fn denominator_vars(&self) -> &[VarId] {
        &self.denominator_vars
    }

    /// Number of strict chains summed.
    pub fn chains(&self) -> usize {
        self.chains
    }

    pub fn as_rational(&self) -> UniversalRational {
        UniversalRational { numerator: self.numerator.clone(), factors: self.denominator_vars.clone() }
    }

    /// `(1 - X{a})*(1 - X{b})*...`, or `1` for the empty product.
    pub fn render_denominator(&self, table: &VarTable) -> String {
        if self.denominator_vars.is_empty() {
            return "1".into();
        }
        self.denominator_vars.iter().map(|&v| format!("(1 - {})", table.name(v))).collect::<Vec<_>>().join("*")
    }

    pub fn render_numerator(&self, table: &VarTable) -> String {
        render(&self.numerator, table)
    }
}

/// `HLS`: the chain sum over the half-open interval.
pub fn hls(spec: &PosetSpec, table: &mut VarTable, limits: &Limits) -> Result<HlsRational> {
    let poset = Poset::new(spec, limits)?;
    let vars = HlsVars::new(&poset, table);
    series_numerator(&poset, &vars, Interval::HalfOpen, limits)
}

/// `HLS'`: the chain sum over the open interval.
pub fn hls_modified(spec: &PosetSpec, table: &mut VarTable, limits: &Limits) -> Result<HlsRational> {
    let poset = Poset::new(spec, limits)?;
    let vars = HlsVars::new(&poset, table);
    series_numerator(&poset, &vars, Interval::Open, limits)
}

/// Weights `w(a, b)` for all comparable pairs among `nodes`.
pub(crate) fn pair_weights(poset: &Poset, nodes: &[usize], vars: &YVars) -> HashMap<(usize, usize), LaurentPoly> {
    let pairs: Vec<(usize, usize)> =
        nodes.iter().flat_map(|&a| nodes.iter().map(move |&b| (a, b))).filter(|&(a, b)| poset.lt(a, b)).collect();
    pairs.into_par_iter().map(|(a, b)| ((a, b), w(poset.element(a), poset.element(b), vars))).collect()
}

/// `W_C` of an index chain, using precomputed pair weights.
pub(crate) fn chain_weight_cached(
    poset: &Poset,
    chain: &[usize],
    weights: &HashMap<(usize, usize), LaurentPoly>,
) -> LaurentPoly {
    let mut seq = Vec::with_capacity(chain.len() + 2);
    seq.push(poset.bottom());
    seq.extend_from_slice(chain);
    if chain.last() != Some(&poset.top()) {
        seq.push(poset.top());
    }
    let mut out = LaurentPoly::one();
    for p in seq.windows(2) {
        if p[0] == p[1] {
            continue;
        }
        let f = &weights[&(p[0], p[1])];
        if f.is_zero() {
            return LaurentPoly::zero();
        }
        if !f.is_one() {
            out = &out * f;
        }
    }
    out
}

/// Numerator `sum_C W_C prod_{c in C} X_c prod_{c notin C} (1 - X_c)`.
///
/// The coefficient of a squarefree `X^S` is `(-1)^{|S|} sum_{C subset S}
/// (-1)^{|C|} W_C`, so the numerator is a subset-sum transform over the
/// masks of the interval.
pub(crate) fn series_numerator(poset: &Poset, vars: &HlsVars, kind: Interval, limits: &Limits) -> Result<HlsRational> {
    let set = poset.interval(kind);
    let m = set.len();
    let table_size = 1u128.checked_shl(m as u32).unwrap_or(u128::MAX);
    if m >= 63 || table_size > limits.max_chains as u128 {
        return Err(Error::CapExceeded {
            what: "numerator subsets",
            count: table_size,
            limit: limits.max_chains as u128,
        });
    }
    let chains = poset.chains_in(&set, limits.max_chains)?;

    let mut nodes = vec![poset.bottom()];
    nodes.extend(&set);
    if !set.contains(&poset.top()) {
        nodes.push(poset.top());
    }
    let weights = pair_weights(poset, &nodes, &vars.y);
    let bit: HashMap<usize, usize> = set.iter().enumerate().map(|(b, &e)| (e, b)).collect();

    let terms: Vec<(usize, LaurentPoly)> = chains
        .par_iter()
        .map(|c| {
            let mask = c.iter().fold(0usize, |acc, e| acc | 1 << bit[e]);
            let wc = chain_weight_cached(poset, c, &weights);
            (mask, if c.len() % 2 == 1 { -wc } else { wc })
        })
        .collect();

    let mut f = vec![LaurentPoly::zero(); 1 << m];
    for (mask, p) in terms {
        f[mask] = p;
    }
    for b in 0..m {
        let half = 1usize << b;
        f.par_chunks_mut(2 * half).for_each(|chunk| {
            let (lo, hi) = chunk.split_at_mut(half);
            for (h, l) in hi.iter_mut().zip(lo.iter()) {
                if !l.is_zero() {
                    *h += l;
                }
            }
        });
    }

    let xs: Vec<VarId> = set.iter().map(|&e| vars.x(e)).collect();
    let parts: Vec<Vec<(Monomial, BigInt)>> = f
        .into_par_iter()
        .enumerate()
        .filter(|(_, g)| !g.is_zero())
        .map(|(s, g)| {
            let xm = Monomial::from_pairs((0..m).filter(|&b| s >> b & 1 == 1).map(|b| (xs[b], 1)));
            let negate = s.count_ones() % 2 == 1;
            g.terms().map(|(ym, c)| (ym.mul(&xm), if negate { -c } else { c.clone() })).collect()
        })
        .collect();
    let numerator = LaurentPoly::from_terms(parts.into_iter().flatten());

    Ok(HlsRational {
        spec: poset.spec().clone(),
        kind,
        numerator,
        denominator: set.iter().map(|&e| poset.element(e).clone()).collect(),
        denominator_vars: xs,
        chains: chains.len(),
    })
}

/// Literal clearing of a chain sum: `sum_C W_C prod_{c in C} X_c
/// prod_{c notin C} (1 - X_c)` over the factor list `all`.
pub fn clear_chain_sum(terms: &[(Vec<VarId>, LaurentPoly)], all: &[VarId]) -> LaurentPoly {
    terms
        .iter()
        .map(|(chain, wc)| {
            let inside: BTreeSet<VarId> = chain.iter().copied().collect();
            let mut p = wc.mul_monomial(&Monomial::from_pairs(chain.iter().map(|&v| (v, 1))));
            for &v in all.iter().filter(|v| !inside.contains(v)) {
                p = &p * &LaurentPoly::one_minus(v, 1);
            }
            p
        })
        .sum()
}

/// Checks `HLS = HLS' / (1 - X_top)`. The denominators differ by exactly
/// that factor, so the identity reduces to equal numerators once the
/// denominator lists are confirmed to be related that way.
pub fn relation_check(spec: &PosetSpec, table: &mut VarTable, limits: &Limits) -> Result<bool> {
    if spec.is_degenerate() {
        return Err(Error::Degenerate);
    }
    let h = hls(spec, table, limits)?;
    let hm = hls_modified(spec, table, limits)?;
    let top = table.get(&x_name(&Element::top(spec))).ok_or_else(|| Error::Internal("missing top variable".into()))?;
    let mut rebased = hm.denominator_vars().to_vec();
    rebased.push(top);
    let same_denominator = {
        let mut a = h.denominator_vars().to_vec();
        a.sort();
        rebased.sort();
        a == rebased
    };
    Ok(same_denominator && h.numerator() == hm.numerator())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::text::parse;
    use crate::weight::chain_weight;

    fn spec(n: &[u32], r: &[u32]) -> PosetSpec {
        PosetSpec::new(n.to_vec(), r.to_vec()).unwrap()
    }

    /// Literal expansion of every chain term, independent of the transform.
    fn literal(spec: &PosetSpec, kind: Interval, table: &mut VarTable) -> LaurentPoly {
        let limits = Limits::default();
        let poset = Poset::new(spec, &limits).unwrap();
        let vars = HlsVars::new(&poset, table);
        let set = poset.interval(kind);
        let all: Vec<VarId> = set.iter().map(|&e| vars.x(e)).collect();
        let terms: Vec<(Vec<VarId>, LaurentPoly)> = poset
            .chains_in(&set, limits.max_chains)
            .unwrap()
            .into_iter()
            .map(|c| {
                let els: Vec<Element> = c.iter().map(|&i| poset.element(i).clone()).collect();
                let wc = chain_weight(&els, spec, &vars.y).unwrap();
                (c.iter().map(|&i| vars.x(i)).collect(), wc)
            })
            .collect();
        clear_chain_sum(&terms, &all)
    }

    #[test]
    fn transform_matches_literal_expansion() {
        let limits = Limits::default();
        for (n, r) in [(vec![1], vec![2]), (vec![2], vec![1]), (vec![1, 1], vec![1, 0]), (vec![0, 0], vec![1, 2])] {
            let s = spec(&n, &r);
            for kind in [Interval::HalfOpen, Interval::Open] {
                let mut table = VarTable::new();
                let lit = literal(&s, kind, &mut table);
                let poset = Poset::new(&s, &limits).unwrap();
                let vars = HlsVars::new(&poset, &mut table);
                let h = series_numerator(&poset, &vars, kind, &limits).unwrap();
                assert_eq!(h.numerator(), &lit, "{s} {kind:?}");
            }
        }
    }

    #[test]
    fn numerator_of_n1_r2() {
        let mut table = VarTable::new();
        let h = hls(&spec(&[1], &[2]), &mut table, &Limits::default()).unwrap();
        let expected = "Y[1,0]*Y[1,1]^2*X{0^2}*X{0 1}*X{0}*X{1} + Y[1,1]^2*X{0^2}*X{0 1}*X{1} \
            + Y[1,1]^2*X{0^2}*X{0}*X{1} - Y[1,0]*Y[1,1]*X{0^2}*X{0 1} - Y[1,0]*Y[1,1]*X{0}*X{1} \
            - Y[1,1]^2*X{0^2}*X{1} - Y[1,0]*X{0 1}*X{0} - Y[1,1]*X{0^2}*X{0 1} - Y[1,1]*X{0}*X{1} \
            + Y[1,0]*X{0 1} + Y[1,0]*X{0} + 1";
        let parsed = parse(expected, &mut table).unwrap();
        assert_eq!(h.numerator(), &parsed);
        assert_eq!(h.numerator().len(), 12);
        assert_eq!(h.denominator().len(), 5);
        assert_eq!(h.render_denominator(&table), "(1 - X{0})*(1 - X{0^2})*(1 - X{1})*(1 - X{0 1})*(1 - X{0^2 1})");
    }

    #[test]
    fn degenerate_spec_is_one() {
        let mut table = VarTable::new();
        let s = spec(&[0, 0], &[0, 0]);
        for h in [
            hls(&s, &mut table, &Limits::default()).unwrap(),
            hls_modified(&s, &mut table, &Limits::default()).unwrap(),
        ] {
            assert!(h.numerator().is_one());
            assert!(h.denominator().is_empty());
            assert_eq!(h.render_denominator(&table), "1");
        }
        assert_eq!(relation_check(&s, &mut table, &Limits::default()), Err(Error::Degenerate));
    }

    #[test]
    fn relation_holds() {
        for (n, r) in [(vec![1], vec![2]), (vec![2], vec![1]), (vec![0, 0], vec![1, 1])] {
            let mut table = VarTable::new();
            assert!(relation_check(&spec(&n, &r), &mut table, &Limits::default()).unwrap());
        }
    }

    #[test]
    fn constant_term_is_one() {
        for (n, r) in [(vec![2], vec![2]), (vec![1, 0], vec![0, 2])] {
            let mut table = VarTable::new();
            let h = hls(&spec(&n, &r), &mut table, &Limits::default()).unwrap();
            let xs: BTreeSet<VarId> = h.denominator_vars().iter().copied().collect();
            let parts = h.numerator().split_by(&xs);
            assert!(parts[&Monomial::one()].is_one());
        }
    }

    #[test]
    fn subset_cap() {
        let mut table = VarTable::new();
        let limits = Limits { max_chains: 100, ..Limits::default() };
        assert!(hls(&spec(&[2], &[2]), &mut table, &limits).unwrap_err().is_cap());
    }
}
