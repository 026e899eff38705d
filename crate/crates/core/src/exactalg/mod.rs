//! Exact sparse Laurent-polynomial arithmetic over arbitrary-precision
//! integers, and the Y-analogs built on top of it.

mod poly;
mod qanalog;
pub mod text;
mod var;

pub use poly::{LaurentPoly, Monomial};
pub use qanalog::{y_binomial, y_binomial_or_zero, y_factorial, y_integer, y_multinomial};
pub use var::{VarId, VarName, VarTable};

use std::collections::BTreeSet;

/// `p + q`.
pub fn add(p: &LaurentPoly, q: &LaurentPoly) -> LaurentPoly {
    p + q
}

/// `p * q`.
pub fn mul(p: &LaurentPoly, q: &LaurentPoly) -> LaurentPoly {
    p * q
}

pub fn invert_vars(p: &LaurentPoly, vars: &BTreeSet<VarId>) -> LaurentPoly {
    p.invert_vars(vars)
}

pub fn eval_at_one(p: &LaurentPoly, vars: &BTreeSet<VarId>) -> LaurentPoly {
    p.eval_at_one(vars)
}
