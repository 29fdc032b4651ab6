//! Finite-dimensional Hopf algebra engine: axioms, cocycles, twisting,
//! the quantum double, crossed modules and their twisting functors,
//! bicovariant bimodules, first-order calculi, and the algebraic Fourier
//! transform — every identity verified by exact linear algebra.

pub mod linalg;
pub mod hopf;
pub mod cocycle;
pub mod twist;
pub mod crossed;
pub mod double;
pub mod bicov;
pub mod diffcalc;
pub mod fourier;
pub mod corpus;
pub mod json;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FindimError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),
    #[error("not a crossed module ({context}){}", basis_pair.map(|(h, v)| format!(" at basis pair ({h}, {v})")).unwrap_or_default())]
    NotCrossed { context: String, basis_pair: Option<(usize, usize)> },
    #[error("generator {0} is not in ker ε")]
    NotInKernel(usize),
    #[error("not an integral: {0}")]
    NotIntegral(String),
    #[error("isomorphism verification failed: {0}")]
    NotIso(String),
    #[error("singular system: {0}")]
    Singular(String),
    #[error("json: {0}")]
    Json(String),
}

pub use cocycle::{check_cocycle, Cocycle, CocycleSide};
pub use hopf::{check_hopf, dual, opposite, tensor_product, AxiomCheck, AxiomReport, FinHopf};
pub use twist::twist;
