//! Cocycle twisting of Hopf algebras and the noncommutative geometry of a
//! two-parameter deformed phase space.
//!
//! The crate has two halves that share the exact scalar ring in
//! [`scalar`]:
//!
//! * a finite-dimensional engine ([`findim`]) in which Hopf algebras,
//!   cocycles, crossed modules, bicovariant bimodules and first-order
//!   calculi are dense/sparse structure tensors over the Gaussian
//!   rationals, every identity being verified by exact linear algebra;
//! * an infinite-dimensional symbolic engine for the deformed phase-space
//!   algebra with `[p, g] = iA(1-g)g`: normal-ordered symbols
//!   ([`planck`]), the 2D exterior calculus ([`calculus`]), quantum
//!   Poisson dynamics ([`dynamics`]) and numeric Fourier theory
//!   ([`fourier`]).
//!
//! Run `cargo run --example <name>` for guided tours of each capability
//! (see the crate's `examples/` directory), or use the thin `hopf-twist`
//! binary for machine-readable verification reports.

pub mod scalar;
pub mod planck;
pub mod calculus;
pub mod dynamics;
pub mod findim;
pub mod fourier;
pub mod cli;

pub use scalar::{GaussQ, ParamScalar, ScalarError};
pub use planck::{PlanckElem, PlanckError, TensorElem};
