//! Exact computation of skew Hall-Littlewood-Schubert series over the
//! tableau-order posets `P_{n,r}`, with the machinery needed to check
//! their reciprocity laws as polynomial identities.

pub mod error;
pub mod exactalg;
pub mod poset;
pub mod series;
pub mod verify;
pub mod weight;

pub use error::{Error, Result};
pub use exactalg::{LaurentPoly, Monomial, VarId, VarName, VarTable};
pub use poset::{Chain, ComponentElement, Element, Interval, Multichain, Poset, PosetSpec};

/// Enumeration caps. Exceeding one is an error, never a silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_elements: u64,
    pub max_chains: u64,
    pub max_subsets: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_elements: 1 << 18, max_chains: 10_000_000, max_subsets: 1 << 12 }
    }
}
