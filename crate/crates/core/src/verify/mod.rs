//! Exact checks of the structural identities: zeta and Möbius matrices,
//! reciprocity of the series and the order-complex identity.

mod matrix;
mod reciprocity;

pub use matrix::{mobius_entry, mobius_matrix, mobius_via_chains, zeta_matrix, PolyMatrix, MAX_MATRIX_DIM};
pub use reciprocity::{
    certify, cleared_sides, igusa_function, igusa_reciprocity, igusa_x_name, igusa_y_name, k_and_n,
    verify_order_complex, verify_reciprocity, IgusaReciprocity, OrderComplexReport, ReciprocityCertificate, Verdict,
};
