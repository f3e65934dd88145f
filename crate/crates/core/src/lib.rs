//! Exact decision procedures for Z/2-twisted free groups acting on
//! even-dimensional homotopy spheres.
//!
//! - [`freeword`]: reduced words and automorphisms of finite-rank free groups.
//! - [`intlat`]: integer matrices, Smith form, kernels and the canonical form of involutions.
//! - [`twistgrp`]: the semidirect product `F ⋊_θ Z/2` and orientation characters.
//! - [`realize`]: realizability verdicts with certificates.
//! - [`classify`]: virtually cyclic groups and their covering actions.

pub mod classify;
pub mod freeword;
pub mod intlat;
pub mod json;
pub mod par;
pub mod realize;
pub mod selfcheck;
pub mod twistgrp;

pub use par::Parallelism;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Word(#[from] freeword::WordError),
    #[error(transparent)]
    Lattice(#[from] intlat::LatticeError),
    #[error(transparent)]
    Group(#[from] twistgrp::GroupError),
    #[error(transparent)]
    Realize(#[from] realize::RealizeError),
    #[error(transparent)]
    Classify(#[from] classify::ClassifyError),
}
