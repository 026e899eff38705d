//! The classical functions obtained from special parameters, each built
//! from its own definition rather than from the general chain sum.

use super::{clear_chain_sum, UniversalRational};
use crate::error::{Error, Result};
use crate::exactalg::{y_multinomial, LaurentPoly, VarId};
use crate::weight::{phi_tableau, SkewTableau};

/// All strictly increasing sequences of `items` under `lt`, empty one included.
fn chains_of<T>(items: &[T], lt: impl Fn(&T, &T) -> bool) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut stack: Vec<Vec<usize>> = (0..items.len()).map(|i| vec![i]).collect();
    while let Some(c) = stack.pop() {
        let last = *c.last().unwrap();
        for j in 0..items.len() {
            if lt(&items[last], &items[j]) {
                let mut next = c.clone();
                next.push(j);
                stack.push(next);
            }
        }
        out.push(c);
    }
    out
}

/// `I_r(Y; X) = sum_{J subset [r]} binom(r, J)_Y prod_{j in J} X_j / (1 - X_j)`,
/// with `xs[j - 1] = X_j`.
pub fn classical_igusa(r: u32, y: VarId, xs: &[VarId]) -> Result<UniversalRational> {
    if xs.len() != r as usize {
        return Err(Error::invalid(format!("expected {r} X variables, got {}", xs.len())));
    }
    let mut terms = Vec::new();
    for mask in 0u64..1 << r {
        let j: Vec<u32> = (1..=r).filter(|&j| mask >> (j - 1) & 1 == 1).collect();
        let vars = j.iter().map(|&j| xs[j as usize - 1]).collect();
        terms.push((vars, y_multinomial(r, &j, y)?));
    }
    Ok(UniversalRational { numerator: clear_chain_sum(&terms, xs), factors: xs.to_vec() })
}

/// Weak order Igusa function: chains `J_1 < ... < J_l` of nonempty subsets
/// of `[g]` under strict containment. `x_of` receives `J` as a bit mask.
pub fn weak_order_igusa(g: u32, x_of: &dyn Fn(u32) -> VarId) -> UniversalRational {
    let masks: Vec<u32> = (1..1u32 << g).collect();
    let factors: Vec<VarId> = masks.iter().map(|&m| x_of(m)).collect();
    let terms: Vec<(Vec<VarId>, LaurentPoly)> = chains_of(&masks, |&a, &b| a != b && a & b == a)
        .into_iter()
        .map(|c| (c.iter().map(|&i| factors[i]).collect(), LaurentPoly::one()))
        .collect();
    UniversalRational { numerator: clear_chain_sum(&terms, &factors), factors }
}

/// Generalized Igusa function on the product of chains `[0, r_1] x ... x
/// [0, r_g]`; a chain weighs `prod_i binom(r_i; k_i)_{Y_i}` where `k_i` runs
/// over the `i`-th coordinates of its elements.
pub fn generalized_igusa(r: &[u32], ys: &[VarId], x_of: &dyn Fn(&[u32]) -> VarId) -> Result<UniversalRational> {
    if ys.len() != r.len() {
        return Err(Error::invalid("one Y variable per coordinate is required"));
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
    points.retain(|p| p.iter().any(|&k| k > 0));
    let factors: Vec<VarId> = points.iter().map(|p| x_of(p)).collect();
    let lt = |a: &Vec<u32>, b: &Vec<u32>| a != b && a.iter().zip(b).all(|(x, y)| x <= y);
    let mut terms = Vec::new();
    for c in chains_of(&points, lt) {
        let mut weight = LaurentPoly::one();
        for (i, (&ri, &y)) in r.iter().zip(ys).enumerate() {
            let ks: Vec<u32> = c.iter().map(|&j| points[j][i]).filter(|&k| k > 0).collect();
            weight = &weight * &y_multinomial(ri, &ks, y)?;
        }
        terms.push((c.iter().map(|&j| factors[j]).collect(), weight));
    }
    Ok(UniversalRational { numerator: clear_chain_sum(&terms, &factors), factors })
}

/// The univariate Hall-Littlewood-Schubert series: reduced tableaux with
/// nonempty set columns, weighted by `Phi_T(Y)`. `x_of` receives each column
/// as a bit mask over `[n]`.
pub fn mv_hls(n: u32, y: VarId, x_of: &dyn Fn(u32) -> VarId) -> Result<UniversalRational> {
    let sets: Vec<Vec<u32>> = (1..1u32 << n).map(|m| (1..=n).filter(|&i| m >> (i - 1) & 1 == 1).collect()).collect();
    let mask = |s: &[u32]| s.iter().fold(0u32, |acc, &i| acc | 1 << (i - 1));
    let factors: Vec<VarId> = sets.iter().map(|s| x_of(mask(s))).collect();
    // right column a, left column b: rows weakly increase iff b[k] <= a[k]
    let lt = |a: &Vec<u32>, b: &Vec<u32>| a != b && a.len() <= b.len() && a.iter().zip(b).all(|(x, y)| y <= x);
    let ys = vec![y; n as usize];
    let mut terms = Vec::new();
    for c in chains_of(&sets, lt) {
        let columns = c.iter().rev().map(|&j| sets[j].clone()).collect();
        let t = SkewTableau::from_columns(columns, n, 0)?;
        let phi = phi_tableau(&t, &ys);
        if !phi.is_zero() {
            terms.push((c.iter().map(|&j| factors[j]).collect(), phi));
        }
    }
    Ok(UniversalRational { numerator: clear_chain_sum(&terms, &factors), factors })
}
