//! Factor width of real positive semidefinite matrices.
//!
//! A PSD matrix has factor width at most `k` when it is a sum of rank-one
//! terms `v vᵀ` whose vectors each have at most `k` nonzero entries. The
//! fewest such terms is its factor-width-`k` rank. This crate decides factor
//! width, builds decompositions with provably minimal or bounded term counts,
//! and bounds the rank through matrix structure and covering numbers.

pub mod bounds;
mod combin;
pub mod covering;
pub mod decomp;
pub mod error;
pub mod format;
pub mod hadamard;
pub mod matcore;
pub mod select;
pub mod specgraph;
pub mod widthdec;

pub use error::{Error, Result};
pub use matcore::{SymMatrix, ToleranceConfig};

#[cfg(test)]
pub(crate) mod testutil {
    use crate::matcore::SymMatrix;

    pub fn m(rows: &[&[f64]]) -> SymMatrix {
        SymMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }
}
