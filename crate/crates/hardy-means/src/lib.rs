//! Generalized means and their averaging operators on ℓ₁ sequences.
//!
//! The crate evaluates power means `P_α`, Gini means `G_{p,q}`, and
//! quasi-arithmetic means `QA_f` over generator functions; streams the
//! averaging operator `(a₁, a₂, …) ↦ (a₁, M(a₁,a₂), M(a₁,a₂,a₃), …)` with
//! compensated summation; classifies means by their Hardy and weak-Hardy
//! properties with closed-form constants where known; gathers numerical
//! evidence for the necessary conditions that rule out the weak-Hardy
//! property; and estimates Hardy constants from below by maximizing
//! finite-window quotients over sequence families.
//!
//! Grid-style computations (family searches, batch window quotients,
//! d-sequence scans) run on rayon when the default `parallel` feature is
//! enabled and fall back to sequential iteration without it; results are
//! identical either way.

#![forbid(unsafe_code)]

pub mod axioms;
pub mod classify;
pub mod error;
pub mod estimate;
pub mod generator;
pub mod grammar;
pub mod means;
pub mod probes;
pub mod stream;
pub mod sum;

pub use error::{Error, Result};
pub use generator::{Generator, Monotonicity};
pub use means::MeanSpec;
pub use stream::SequenceSpec;
