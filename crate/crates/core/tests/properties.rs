use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

use hlskit::exactalg::{y_binomial, LaurentPoly, Monomial, VarId};
use hlskit::poset::Multichain;
use hlskit::weight::{chain_weight, phi_tableau, project, theta_tableau, YVars};
use hlskit::{Element, Interval, Limits, Poset, PosetSpec, VarTable};

fn config(seed: u64) -> Config {
    Config { cases: 2000, rng_seed: RngSeed::Fixed(seed), failure_persistence: None, ..Config::default() }
}

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i64..=4, prop::array::uniform3(-3i32..=3)), 0..6).prop_map(|terms| {
        LaurentPoly::from_terms(terms.into_iter().map(|(c, e)| {
            let m = Monomial::from_pairs((0..3).map(|v| (VarId(v), e[v as usize])));
            (m, BigInt::from(c))
        }))
    })
}

struct Fixture {
    spec: PosetSpec,
    poset: Poset,
    vars: YVars,
    chains: Vec<Vec<usize>>,
}

fn fixtures() -> &'static [Fixture] {
    static CELL: OnceLock<Vec<Fixture>> = OnceLock::new();
    CELL.get_or_init(|| {
        let limits = Limits::default();
        [
            (vec![1], vec![2]),
            (vec![2], vec![1]),
            (vec![2], vec![2]),
            (vec![3], vec![1]),
            (vec![1, 1], vec![1, 0]),
            (vec![1, 0], vec![0, 2]),
        ]
        .into_iter()
        .map(|(n, r)| {
            let spec = PosetSpec::new(n, r).unwrap();
            let poset = Poset::new(&spec, &limits).unwrap();
            let vars = YVars::new(&spec, &mut VarTable::new());
            let chains = poset.chains(Interval::HalfOpen, &limits).unwrap();
            Fixture { spec, poset, vars, chains }
        })
        .collect()
    })
}

/// A fixture index, a chain index and a multiplicity per chain element.
fn multichain() -> impl Strategy<Value = (usize, usize, Vec<usize>)> {
    (0..fixtures().len()).prop_flat_map(|f| {
        let count = fixtures()[f].chains.len();
        (Just(f), 0..count, prop::collection::vec(1usize..=3, 12))
    })
}

fn expand(f: &Fixture, chain: &[usize], mult: &[usize]) -> Vec<Element> {
    chain.iter().zip(mult).flat_map(|(&c, &m)| std::iter::repeat_n(f.poset.element(c).clone(), m)).collect()
}

proptest! {
    #![proptest_config(config(0x5eed_0001))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
    }
}

proptest! {
    #![proptest_config(config(0x5eed_0002))]

    #[test]
    fn q_pascal_recurrence_and_symmetry((n, k) in (1i64..=18).prop_flat_map(|n| (Just(n), 0..=n))) {
        let q = VarId(0);
        let lhs = y_binomial(n, k, q).unwrap();
        prop_assert_eq!(&lhs, &y_binomial(n, n - k, q).unwrap());
        let left = if k == 0 { LaurentPoly::zero() } else { y_binomial(n - 1, k - 1, q).unwrap() };
        let right = if k == n {
            LaurentPoly::zero()
        } else {
            y_binomial(n - 1, k, q).unwrap().mul_monomial(&Monomial::var(q, k as i32))
        };
        prop_assert_eq!(lhs, &left + &right);
    }
}

proptest! {
    #![proptest_config(config(0x5eed_0003))]

    #[test]
    fn inversion_is_a_ring_involution(a in poly(), b in poly(), mask in 0u32..8) {
        let vars: BTreeSet<VarId> = (0..3).filter(|v| mask >> v & 1 == 1).map(VarId).collect();
        let inv = |p: &LaurentPoly| p.invert_vars(&vars);
        prop_assert_eq!(inv(&(&a * &b)), &inv(&a) * &inv(&b));
        prop_assert_eq!(inv(&(&a + &b)), &inv(&a) + &inv(&b));
        prop_assert_eq!(inv(&inv(&a)), a);
    }
}

proptest! {
    #![proptest_config(config(0x5eed_0004))]

    #[test]
    fn weight_ignores_repetition((f, c, mult) in multichain()) {
        let fx = &fixtures()[f];
        let chain = &fx.chains[c];
        let plain = expand(fx, chain, &vec![1; chain.len()]);
        let repeated = expand(fx, chain, &mult);
        let mc = Multichain::new(repeated.clone(), Interval::HalfOpen, &fx.spec).unwrap();
        prop_assert_eq!(mc.supp(), plain.clone());
        prop_assert_eq!(
            chain_weight(&plain, &fx.spec, &fx.vars).unwrap(),
            chain_weight(&repeated, &fx.spec, &fx.vars).unwrap()
        );
    }
}

proptest! {
    #![proptest_config(config(0x5eed_0005))]

    #[test]
    fn chain_and_tableau_weights_agree((f, c, mult) in multichain()) {
        let fx = &fixtures()[f];
        let elements = expand(fx, &fx.chains[c], &mult);
        let mc = Multichain::new(elements, Interval::HalfOpen, &fx.spec).unwrap();
        let by_tableaux: LaurentPoly = (0..fx.spec.g())
            .map(|i| {
                let t = project(&mc, i, &fx.spec).unwrap();
                let v = fx.vars.component(i);
                &theta_tableau(&t, v.y0) * &phi_tableau(&t, &v.ys)
            })
            .product();
        prop_assert_eq!(chain_weight(mc.elements(), &fx.spec, &fx.vars).unwrap(), by_tableaux);
    }
}
