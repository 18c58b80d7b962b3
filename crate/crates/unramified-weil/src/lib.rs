//! A computable model of an unramified extension `K/F` of local fields.
//!
//! `Q = Gal(K/F) = Z/n` is generated by Frobenius `s`, the relative Weil group
//! is `W = Z` with `w -> s^(w mod n)`, and the fundamental class is the carry
//! cocycle `c(s^i, s^j) = floor((i + j) / n)`. Tori are given by their
//! cocharacter lattice `X`; `T(K)` is modelled by `X` through valuations and
//! `T^` by the torsion points `Hom(X, Q/Z)`.

pub mod chains;
pub mod model;
pub mod pairing;
pub mod tn;

pub use chains::{chain_map_phi, inflated_value, psi};
pub use model::{LocalModel, Torus, WeilAmbient, WeilError};
pub use pairing::{
    default_window, elementary_pairing, enumerate_dual_cocycles, hyper_pairing, hyper_pairing_in_window,
    hyper_representatives, lift, ChainCycle, DualCocycle, TwoTermComplex, SIGN_CONVENTION,
};
pub use tn::{
    coinvariants, kottwitz_character, kottwitz_perfectness, langlands_character, point_character, tn_hom, tn_inverse,
    tn_iso, torsion_characters, torsion_point, Parameter, PerfectnessReport,
};
