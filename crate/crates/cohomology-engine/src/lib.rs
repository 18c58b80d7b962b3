//! Group cohomology and homology of finite groups with lattice coefficients.
//!
//! Additive notation throughout. Where the multiplicative formulas carry an
//! inverse, the additive version carries an explicit negation.

pub mod chain;
pub mod cochain;
pub mod cup;
pub mod hyper;
pub mod tate;

pub use chain::{coinflation, homology_differential, AmbientGroup, FiniteAmbient, FiniteSupportChain};
pub use cochain::{Cochain, CochainError};
pub use cup::{carry_cocycle, cup, cup_tate_minus1, Pairing, ScalarPairing, TensorPairing};
pub use hyper::{ExactnessReport, HyperCocycle, HyperH1};
pub use tate::TateGroup;
