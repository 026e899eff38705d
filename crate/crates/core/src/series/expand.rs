use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde_json::{json, Value};

use super::{HlsRational, HlsVars};
use crate::error::{Error, Result};
use crate::exactalg::text::{render, render_monomial};
use crate::exactalg::{LaurentPoly, Monomial, VarId, VarTable};
use crate::poset::{Element, Interval, Poset, PosetSpec};
use crate::weight::chain_weight;
use crate::Limits;

type Graded = BTreeMap<Monomial, LaurentPoly>;

/// Power series in the `X` variables, truncated at total degree `bound`.
/// Coefficients are Laurent polynomials in the remaining variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    bound: u32,
    coeffs: Graded,
}

impl TruncatedSeries {
    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn coeffs(&self) -> &BTreeMap<Monomial, LaurentPoly> {
        &self.coeffs
    }

    pub fn coeff(&self, m: &Monomial) -> LaurentPoly {
        self.coeffs.get(m).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// First multidegree where the two series differ.
    pub fn first_difference(&self, other: &TruncatedSeries) -> Option<Monomial> {
        let keys: BTreeSet<&Monomial> = self.coeffs.keys().chain(other.coeffs.keys()).collect();
        keys.into_iter().find(|m| self.coeff(m) != other.coeff(m)).cloned()
    }

    /// `{multidegree: coefficient}` lines sorted by degree, then text.
    pub fn render_table(&self, table: &VarTable) -> String {
        let mut rows: Vec<(i64, String, String)> =
            self.coeffs.iter().map(|(m, p)| (m.total_degree(), render_monomial(m, table), render(p, table))).collect();
        rows.sort();
        rows.into_iter().map(|(_, m, p)| format!("{m}: {p}\n")).collect()
    }

    pub fn to_json(&self, table: &VarTable) -> Value {
        let mut rows: Vec<(i64, String, String)> =
            self.coeffs.iter().map(|(m, p)| (m.total_degree(), render_monomial(m, table), render(p, table))).collect();
        rows.sort();
        json!({
            "max_degree": self.bound,
            "coefficients": rows
                .into_iter()
                .map(|(_, m, p)| json!({"monomial": m, "coeff": p}))
                .collect::<Vec<_>>(),
        })
    }
}

/// Product of two graded maps, dropping degrees above `bound`.
fn truncated_mul(a: &Graded, b: &Graded, bound: i64) -> Graded {
    let mut out = Graded::new();
    for (ma, pa) in a {
        let da = ma.total_degree();
        for (mb, pb) in b {
            if da + mb.total_degree() > bound {
                continue;
            }
            let prod = pa * pb;
            if prod.is_zero() {
                continue;
            }
            let slot = out.entry(ma.mul(mb)).or_default();
            *slot += &prod;
        }
    }
    out.retain(|_, p| !p.is_zero());
    out
}

/// `1 / (1 - g)` as a graded map truncated at `bound`; `g` must have no
/// part of degree zero.
fn geometric(g: &Graded, bound: i64) -> Graded {
    let mut out = Graded::from([(Monomial::one(), LaurentPoly::one())]);
    let mut power = out.clone();
    for _ in 0..bound {
        power = truncated_mul(&power, g, bound);
        if power.is_empty() {
            break;
        }
        for (m, p) in &power {
            *out.entry(m.clone()).or_default() += p;
        }
    }
    out.retain(|_, p| !p.is_zero());
    out
}

/// Coefficient table of `sum_C W_C X^{Mult(C)}` over multichains of total
/// length at most `bound`, by direct enumeration.
pub fn expand_multichain(
    spec: &PosetSpec,
    kind: Interval,
    bound: u32,
    table: &mut VarTable,
    limits: &Limits,
) -> Result<TruncatedSeries> {
    let poset = Poset::new(spec, limits)?;
    let vars = HlsVars::new(&poset, table);
    let mut cache: HashMap<Vec<usize>, LaurentPoly> = HashMap::new();
    let mut coeffs = Graded::new();
    for (chain, mult) in poset.multichains(kind, bound as usize, limits)? {
        let wc = match cache.get(&chain) {
            Some(p) => p.clone(),
            None => {
                let els: Vec<Element> = chain.iter().map(|&i| poset.element(i).clone()).collect();
                let p = chain_weight(&els, spec, &vars.y)?;
                cache.insert(chain.clone(), p.clone());
                p
            }
        };
        if wc.is_zero() {
            continue;
        }
        let key = Monomial::from_pairs(chain.iter().zip(&mult).map(|(&c, &k)| (vars.x(c), k as i32)));
        *coeffs.entry(key).or_default() += &wc;
    }
    coeffs.retain(|_, p| !p.is_zero());
    Ok(TruncatedSeries { bound, coeffs })
}

/// Expands `numerator * prod_c sum_k X_c^k` up to total `X`-degree `bound`.
pub fn expand_rational(h: &HlsRational, bound: u32) -> TruncatedSeries {
    let xs: BTreeSet<VarId> = h.denominator_vars().iter().copied().collect();
    let b = bound as i64;
    let mut acc: Graded = h.numerator().split_by(&xs).into_iter().filter(|(m, _)| m.total_degree() <= b).collect();
    for &v in h.denominator_vars() {
        let g = Graded::from([(Monomial::var(v, 1), LaurentPoly::one())]);
        acc = truncated_mul(&acc, &geometric(&g, b), b);
    }
    TruncatedSeries { bound, coeffs: acc }
}

/// A series after substitution: `numerator / prod denominators`, with no
/// cancellation performed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubstitutedSeries {
    pub numerator: LaurentPoly,
    pub denominators: Vec<LaurentPoly>,
}

impl SubstitutedSeries {
    /// Power-series expansion in `vars` up to degree `bound`. Every
    /// denominator must be `1 - g` with `g` of positive degree in `vars`.
    pub fn expand(&self, vars: &BTreeSet<VarId>, bound: u32) -> Result<TruncatedSeries> {
        let b = bound as i64;
        let split = |p: &LaurentPoly| -> Result<Graded> {
            let parts = p.split_by(vars);
            if parts.keys().any(|m| m.pairs().iter().any(|&(_, e)| e < 0)) {
                return Err(Error::invalid("expansion needs nonnegative exponents in the series variables"));
            }
            Ok(parts)
        };
        let mut acc: Graded = split(&self.numerator)?.into_iter().filter(|(m, _)| m.total_degree() <= b).collect();
        for d in &self.denominators {
            let mut g = split(d)?;
            match g.remove(&Monomial::one()) {
                Some(c) if c.is_one() => {}
                _ => return Err(Error::invalid("denominator does not have constant part 1")),
            }
            for p in g.values_mut() {
                *p = -&*p;
            }
            acc = truncated_mul(&acc, &geometric(&g, b), b);
        }
        Ok(TruncatedSeries { bound, coeffs: acc })
    }
}

/// Applies `x_map` to the `X` variables and `y_map` to the `Y` variables of
/// `h`, numerator and each denominator factor separately.
pub fn substitute(
    h: &HlsRational,
    x_map: &HashMap<VarId, LaurentPoly>,
    y_map: &HashMap<VarId, LaurentPoly>,
) -> Result<SubstitutedSeries> {
    let mut map = y_map.clone();
    map.extend(x_map.iter().map(|(k, v)| (*k, v.clone())));
    let numerator = h.numerator().substitute(&map)?;
    let denominators = h
        .denominator_vars()
        .iter()
        .map(|&v| {
            let d = LaurentPoly::one_minus(v, 1).substitute(&map)?;
            if d.is_zero() {
                Err(Error::ZeroDenominator)
            } else {
                Ok(d)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SubstitutedSeries { numerator, denominators })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::VarName;
    use crate::series::hls;

    fn spec(n: &[u32], r: &[u32]) -> PosetSpec {
        PosetSpec::new(n.to_vec(), r.to_vec()).unwrap()
    }

    #[test]
    fn dual_paths_agree_on_small_specs() {
        let limits = Limits::default();
        for (n, r, d) in [(vec![1], vec![1], 3), (vec![1], vec![2], 4), (vec![0, 1], vec![1, 0], 4)] {
            let s = spec(&n, &r);
            let mut table = VarTable::new();
            let direct = expand_multichain(&s, Interval::HalfOpen, d, &mut table, &limits).unwrap();
            let h = hls(&s, &mut table, &limits).unwrap();
            let rational = expand_rational(&h, d);
            assert_eq!(direct.first_difference(&rational), None, "{s}");
            assert_eq!(direct, rational);
        }
    }

    #[test]
    fn trivial_coefficients() {
        let limits = Limits::default();
        let s = spec(&[1], &[1]);
        let mut table = VarTable::new();
        let zero = expand_multichain(&s, Interval::HalfOpen, 0, &mut table, &limits).unwrap();
        assert_eq!(zero.len(), 1);
        assert!(zero.coeff(&Monomial::one()).is_one());
        let series = expand_multichain(&s, Interval::HalfOpen, 3, &mut table, &limits).unwrap();
        let top = table.lookup("X{0 1}").unwrap();
        for k in 1..=3 {
            assert!(series.coeff(&Monomial::var(top, k)).is_one());
        }
    }

    #[test]
    fn p11_table_by_hand() {
        // P_{1,1} is the total order - < 1 < 0 < 0 1 and only w(1, 0) = 1 - Y[1,1]
        // differs from 1.
        let limits = Limits::default();
        let s = spec(&[1], &[1]);
        let mut table = VarTable::new();
        let series = expand_multichain(&s, Interval::HalfOpen, 2, &mut table, &limits).unwrap();
        let y1 = table.lookup("Y[1,1]").unwrap();
        let (x0, x1) = (table.lookup("X{0}").unwrap(), table.lookup("X{1}").unwrap());
        let leg = LaurentPoly::one_minus(y1, 1);
        assert!(series.coeff(&Monomial::var(x1, 2)).is_one());
        assert_eq!(series.coeff(&Monomial::from_pairs([(x0, 1), (x1, 1)])), leg);
        assert!(series.coeff(&Monomial::var(x0, 2)).is_one());
        assert_eq!(series.len(), 1 + 3 + 6);
    }

    #[test]
    fn identity_substitution_is_a_no_op() {
        let mut table = VarTable::new();
        let h = hls(&spec(&[1], &[1]), &mut table, &Limits::default()).unwrap();
        let s = substitute(&h, &HashMap::new(), &HashMap::new()).unwrap();
        assert_eq!(&s.numerator, h.numerator());
        assert_eq!(
            s.denominators,
            h.as_rational().factors.iter().map(|&v| LaurentPoly::one_minus(v, 1)).collect::<Vec<_>>()
        );
    }

    #[test]
    fn zero_denominator_is_rejected() {
        let mut table = VarTable::new();
        let h = hls(&spec(&[0], &[1]), &mut table, &Limits::default()).unwrap();
        let x = table.lookup("X{0}").unwrap();
        let map = HashMap::from([(x, LaurentPoly::one())]);
        assert_eq!(substitute(&h, &map, &HashMap::new()), Err(Error::ZeroDenominator));
    }

    #[test]
    fn y_one_gives_containment_weighted_sum() {
        let limits = Limits::default();
        let s = spec(&[2], &[0]);
        let mut table = VarTable::new();
        let h = hls(&s, &mut table, &limits).unwrap();
        let poset = Poset::new(&s, &limits).unwrap();
        let vars = HlsVars::new(&poset, &mut table);
        let y_map: HashMap<VarId, LaurentPoly> =
            vars.y.positive().into_iter().map(|v| (v, LaurentPoly::one())).collect();
        let sub = substitute(&h, &HashMap::new(), &y_map).unwrap();

        // chains of nonempty subsets of {1, 2} under containment
        let set = poset.interval(Interval::HalfOpen);
        let all: Vec<VarId> = set.iter().map(|&e| vars.x(e)).collect();
        let contained = |a: usize, b: usize| {
            let (x, y) = (poset.element(a).component(0), poset.element(b).component(0));
            (1..=2).all(|i| !x.contains(i) || y.contains(i))
        };
        let terms: Vec<(Vec<VarId>, LaurentPoly)> = poset
            .chains_in(&set, limits.max_chains)
            .unwrap()
            .into_iter()
            .filter(|c| c.windows(2).all(|p| contained(p[0], p[1])))
            .map(|c| (c.iter().map(|&i| vars.x(i)).collect(), LaurentPoly::one()))
            .collect();
        assert_eq!(sub.numerator, super::super::clear_chain_sum(&terms, &all));
    }

    #[test]
    fn schur_like_substitution_counts_tableaux() {
        // X_c -> prod_{i in c} x_i on P_{2,0}: the coefficient of a monomial in
        // x is the sum of Phi_T over tableaux with that weight.
        let limits = Limits::default();
        let s = spec(&[2], &[0]);
        let mut table = VarTable::new();
        let h = hls(&s, &mut table, &limits).unwrap();
        let poset = Poset::new(&s, &limits).unwrap();
        let vars = HlsVars::new(&poset, &mut table);
        let x1 = table.intern(VarName::indexed("x", &[1]));
        let x2 = table.intern(VarName::indexed("x", &[2]));
        let xi = [x1, x2];
        let x_map: HashMap<VarId, LaurentPoly> = poset
            .interval(Interval::HalfOpen)
            .into_iter()
            .map(|e| {
                let c = poset.element(e).component(0);
                let m = Monomial::from_pairs((1..=2).filter(|&i| c.contains(i)).map(|i| (xi[i as usize - 1], 1)));
                (vars.x(e), LaurentPoly::term(1, m))
            })
            .collect();
        let sub = substitute(&h, &x_map, &HashMap::new()).unwrap();
        let xset: BTreeSet<VarId> = xi.into_iter().collect();
        let got = sub.expand(&xset, 3).unwrap();

        // direct: multichains, each weighted by W, keyed by the x-weight
        let direct = expand_multichain(&s, Interval::HalfOpen, 3, &mut table, &limits).unwrap();
        let mut expect = Graded::new();
        for (m, p) in direct.coeffs() {
            let img = LaurentPoly::term(1, m.clone()).substitute(&x_map).unwrap();
            for (xm, c) in img.terms() {
                if xm.total_degree() <= 3 {
                    *expect.entry(xm.clone()).or_default() += &p.scale(c);
                }
            }
        }
        expect.retain(|_, p| !p.is_zero());
        assert_eq!(got.coeffs(), &expect);
    }
}
