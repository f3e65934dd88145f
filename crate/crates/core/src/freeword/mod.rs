//! Reduced words in finite-rank free groups and their endomorphisms.
//!
//! Generators are 1-indexed (`x1, x2, ...`); the empty word is the identity.
//! Every binary operation checks that both operands live in the same rank.

mod automorphism;
mod word;

pub use automorphism::FreeAutomorphism;
pub use word::{Letter, Word};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("cannot parse word token {token:?}; expected x<k> or x<k>^-1")]
    Parse { token: String },
}
