//! Exact integer lattice algebra: Smith normal form, saturated kernels and the
//! `A(k, r, s)` normal form of integral involutions.

mod involution;
mod lattice;
mod matrix;
mod snf;

pub use involution::{
    canonicalize_involution, conjugates, involution_invariants, lift_mod2_basis,
    CanonicalInvolution,
};
pub use lattice::{kernel_lattice, LatticeBasis};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, verify as verify_smith_form, SmithForm};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("not an involution")]
    NotInvolution,
    #[error("not unimodular (determinant {det})")]
    NotUnimodular { det: String },
    #[error("matrix parse error: {0}")]
    Parse(String),
    #[error("internal canonicalization failure: {0}")]
    CanonicalizationFailed(String),
}
