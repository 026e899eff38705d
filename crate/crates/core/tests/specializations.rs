use std::collections::{BTreeSet, HashMap};

use hlskit::poset::iso_n1_to_np1;
use hlskit::series::{classical_igusa, generalized_igusa, hls, mv_hls, weak_order_igusa, x_name};
use hlskit::verify::{igusa_reciprocity, igusa_x_name, igusa_y_name};
use hlskit::{Element, Limits, Poset, PosetSpec, VarId, VarName, VarTable};

/// Renaming from the `HLS` variables of `n = 0` to Igusa variables.
fn igusa_renaming(spec: &PosetSpec, t: &mut VarTable) -> HashMap<VarId, VarId> {
    let p = Poset::new(spec, &Limits::default()).unwrap();
    let mut map = HashMap::new();
    for i in 0..spec.g() {
        let from = t.intern(VarName::y(i as u32 + 1, 0));
        map.insert(from, t.intern(igusa_y_name(i as u32 + 1)));
    }
    for e in &p.elements()[1..] {
        let point: Vec<u32> = e.components().iter().map(|c| c.zeros()).collect();
        let from = t.intern(x_name(e));
        map.insert(from, t.intern(igusa_x_name(&point)));
    }
    map
}

#[test]
fn generalized_igusa_is_hls_with_n_zero() {
    for r in [vec![2], vec![1, 2], vec![2, 2], vec![3], vec![1, 1, 1]] {
        let mut t = VarTable::new();
        let spec = PosetSpec::new(vec![0; r.len()], r.clone()).unwrap();
        let h = hls(&spec, &mut t, &Limits::default()).unwrap();
        let map = igusa_renaming(&spec, &mut t);
        let ys: Vec<VarId> = (1..=r.len() as u32).map(|i| t.intern(igusa_y_name(i))).collect();
        let x_of = |p: &[u32]| t.get(&igusa_x_name(p)).unwrap();
        let gi = generalized_igusa(&r, &ys, &x_of).unwrap();
        assert!(gi.same_as(&h.as_rational().rename(&map)), "{r:?}");
    }
}

#[test]
fn classical_igusa_matches_generalized() {
    for r in 0..=4u32 {
        let mut t = VarTable::new();
        let y = t.intern(igusa_y_name(1));
        let xs: Vec<VarId> = (1..=r).map(|k| t.intern(igusa_x_name(&[k]))).collect();
        let c = classical_igusa(r, y, &xs).unwrap();
        let g = generalized_igusa(&[r], &[y], &|p| xs[p[0] as usize - 1]).unwrap();
        assert!(c.same_as(&g), "r = {r}");
    }
}

#[test]
fn igusa_reciprocity_by_renaming() {
    for r in [vec![1], vec![2], vec![3], vec![4], vec![1, 2], vec![2, 2]] {
        let mut t = VarTable::new();
        let rep = igusa_reciprocity(&r, &mut t, &Limits::default()).unwrap();
        assert!(rep.passed(), "{r:?}");
    }
}

fn mask_of(e: &Element) -> u32 {
    let c = e.component(0);
    (1..=c.n()).filter(|&i| c.contains(i)).fold(0, |acc, i| acc | 1 << (i - 1))
}

#[test]
fn mv_hls_is_hls_with_r_zero() {
    for n in 1..=3u32 {
        let mut t = VarTable::new();
        let spec = PosetSpec::single(n, 0);
        let h = hls(&spec, &mut t, &Limits::default()).unwrap();
        let p = Poset::new(&spec, &Limits::default()).unwrap();
        let y = t.intern(VarName::plain("Y"));
        let mut map: HashMap<VarId, VarId> = HashMap::new();
        for j in 1..=n {
            map.insert(t.intern(VarName::y(1, j)), y);
        }
        let mut by_mask = HashMap::new();
        for e in &p.elements()[1..] {
            by_mask.insert(mask_of(e), t.intern(x_name(e)));
        }
        let mv = mv_hls(n, y, &|m| by_mask[&m]).unwrap();
        assert!(mv.same_as(&h.as_rational().rename(&map)), "n = {n}");
    }
}

#[test]
fn mv_hls_at_one_is_weak_order_igusa() {
    for g in 1..=3u32 {
        let mut t = VarTable::new();
        let y = t.intern(VarName::plain("Y"));
        let xs: Vec<VarId> = (1..1u32 << g).map(|m| t.intern(VarName::indexed("X", &[m]))).collect();
        let x_of = |m: u32| xs[m as usize - 1];
        let mut mv = mv_hls(g, y, &x_of).unwrap();
        mv.numerator = mv.numerator.eval_at_one(&BTreeSet::from([y]));
        let wo = weak_order_igusa(g, &x_of);
        assert!(mv.same_as(&wo), "g = {g}");
    }
}

/// `HLS_{(g),(0)}` at `Y = 1` against `HLS_{(0,..,0),(1,..,1)}`, matching
/// `J subset [g]` with the element whose `i`-th component is the image of
/// `i in J` under `P_{0,1} -> P_{1,0}`.
#[test]
fn weak_order_through_the_isomorphism() {
    for g in 1..=3u32 {
        let mut t = VarTable::new();
        let boolean = PosetSpec::new(vec![0; g as usize], vec![1; g as usize]).unwrap();
        let chain_side = PosetSpec::single(g, 0);
        let a = hls(&boolean, &mut t, &Limits::default()).unwrap();
        let b = hls(&chain_side, &mut t, &Limits::default()).unwrap();
        let pa = Poset::new(&boolean, &Limits::default()).unwrap();
        let pb = Poset::new(&chain_side, &Limits::default()).unwrap();
        let mut by_mask = HashMap::new();
        for e in &pb.elements()[1..] {
            by_mask.insert(mask_of(e), t.intern(x_name(e)));
        }
        let mut map = HashMap::new();
        for e in &pa.elements()[1..] {
            let mask = e.components().iter().enumerate().fold(0u32, |acc, (i, c)| {
                let image = iso_n1_to_np1(c, 1).unwrap();
                acc | (image.vector()[1] << i)
            });
            map.insert(t.intern(x_name(e)), by_mask[&mask]);
        }
        let y_ones: BTreeSet<VarId> = (1..=g).map(|j| t.intern(VarName::y(1, j))).collect();
        let mut at_one = b.as_rational();
        at_one.numerator = at_one.numerator.eval_at_one(&y_ones);
        assert!(at_one.same_as(&a.as_rational().rename(&map)), "g = {g}");
    }
}
