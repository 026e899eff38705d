use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactalg::{y_binomial, LaurentPoly, VarId};
use crate::poset::{Multichain, PosetSpec};

/// A semistandard skew tableau whose inner shape is filled with zeros.
///
/// Stored by columns, left to right; each column lists its entries top to
/// bottom, so zeros come first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SkewTableau {
    n: u32,
    r: u32,
    columns: Vec<Vec<u32>>,
}

impl SkewTableau {
    pub fn from_columns(columns: Vec<Vec<u32>>, n: u32, r: u32) -> Result<Self> {
        for (j, col) in columns.iter().enumerate() {
            let zeros = col.iter().take_while(|&&x| x == 0).count();
            if zeros as u32 > r {
                return Err(Error::invalid(format!("column {} has {zeros} zeros, r = {r}", j + 1)));
            }
            let pos = &col[zeros..];
            if pos.iter().any(|&x| x == 0 || x > n) || pos.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::invalid(format!("column {} is not a sorted sub-multiset of [0, {n}]", j + 1)));
            }
        }
        for (j, w) in columns.windows(2).enumerate() {
            let (left, right) = (&w[0], &w[1]);
            if right.len() > left.len() {
                return Err(Error::invalid(format!("column {} is longer than column {}", j + 2, j + 1)));
            }
            if right.iter().zip(left).any(|(x, y)| y > x) {
                return Err(Error::invalid(format!("rows decrease between columns {} and {}", j + 1, j + 2)));
            }
        }
        Ok(SkewTableau { n, r, columns })
    }

    /// Rows top to bottom; row lengths must weakly decrease.
    pub fn from_rows(rows: &[Vec<u32>], n: u32, r: u32) -> Result<Self> {
        if rows.windows(2).any(|w| w[1].len() > w[0].len()) {
            return Err(Error::invalid("row lengths do not form a partition"));
        }
        let width = rows.first().map_or(0, Vec::len);
        let columns =
            (0..width).map(|j| rows.iter().take_while(|row| row.len() > j).map(|row| row[j]).collect()).collect();
        SkewTableau::from_columns(columns, n, r)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn columns(&self) -> &[Vec<u32>] {
        &self.columns
    }

    /// Entry in row `i`, column `j` (both 1-based).
    pub fn entry(&self, i: usize, j: usize) -> Option<u32> {
        self.columns.get(j.checked_sub(1)?)?.get(i.checked_sub(1)?).copied()
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        let height = self.columns.first().map_or(0, Vec::len);
        (0..height).map(|i| self.columns.iter().take_while(|c| c.len() > i).map(|c| c[i]).collect()).collect()
    }

    pub fn lambda(&self) -> Vec<usize> {
        self.rows().iter().map(Vec::len).collect()
    }

    pub fn mu(&self) -> Vec<usize> {
        self.rows().iter().map(|row| row.iter().take_while(|&&x| x == 0).count()).filter(|&k| k > 0).collect()
    }

    /// Zero counts of the columns, right to left.
    fn zero_counts(&self) -> Vec<u32> {
        self.columns.iter().rev().map(|c| c.iter().take_while(|&&x| x == 0).count() as u32).collect()
    }

    /// `Leg_T(i, j)`: entries of column `j` from row `i` down.
    pub fn leg(&self, i: usize, j: usize) -> Vec<u32> {
        match self.columns.get(j.wrapping_sub(1)) {
            Some(col) if i >= 1 => col.iter().skip(i - 1).copied().collect(),
            _ => Vec::new(),
        }
    }

    /// `Leg+_T(i, j)`.
    pub fn leg_plus(&self, i: usize, j: usize) -> Vec<u32> {
        let leg = self.leg(i, j);
        match self.entry(i, j + 1) {
            Some(x) if !leg.is_empty() && !leg.contains(&x) => leg.into_iter().filter(|&y| y < x).collect(),
            _ => Vec::new(),
        }
    }

    /// Cells with a nonempty `Leg+`, ordered by column then row.
    pub fn l_plus(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (j0, col) in self.columns.iter().enumerate() {
            for i in 1..=col.len() {
                if !self.leg_plus(i, j0 + 1).is_empty() {
                    out.push((i, j0 + 1));
                }
            }
        }
        out
    }

    /// One row per line, cells separated by spaces.
    pub fn pretty(&self) -> String {
        self.rows()
            .iter()
            .map(|row| row.iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn to_json(&self) -> Value {
        json!({ "lambda": self.lambda(), "mu": self.mu(), "rows": self.rows() })
    }
}

/// `pi_i(C)`: the `i`-th components of a multichain, read right to left.
pub fn project(chain: &Multichain, i: usize, spec: &PosetSpec) -> Result<SkewTableau> {
    if i >= spec.g() {
        return Err(Error::invalid(format!("component {i} out of range")));
    }
    let columns = chain.elements().iter().rev().map(|e| e.component(i).sorted_entries()).collect();
    SkewTableau::from_columns(columns, spec.n()[i], spec.r()[i])
        .map_err(|e| Error::Internal(format!("projection is not semistandard: {e}")))
}

/// `Theta_T(Y_0) = prod binom(e_{i+1}, e_i)` with `e_{l+1} = r`.
pub fn theta_tableau(t: &SkewTableau, y0: VarId) -> LaurentPoly {
    let mut e = t.zero_counts();
    e.push(t.r);
    e.windows(2).map(|w| y_binomial(w[1] as i64, w[0] as i64, y0).expect("zero counts increase leftward")).product()
}

/// `Phi_T = prod over L+ of (1 - Y_x^{#Leg+})` with `x` the right neighbour.
pub fn phi_tableau(t: &SkewTableau, ys: &[VarId]) -> LaurentPoly {
    t.l_plus()
        .into_iter()
        .map(|(i, j)| {
            let x = t.entry(i, j + 1).expect("right neighbour exists");
            LaurentPoly::one_minus(ys[x as usize - 1], t.leg_plus(i, j).len() as i32)
        })
        .product()
}
