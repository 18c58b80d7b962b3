//! Pure inner forms of a disconnected torus `T x| A`, their L-packets, and
//! the endoscopic character identity checked at finite level.
//!
//! Everything is additive: characters take values in `Q/Z`, and `e(x)`
//! denotes the corresponding root of unity.

pub mod case;
pub mod character;
pub mod fixtures;
pub mod h;
pub mod packet;

pub use case::{build_case, ToriCase, ToriError, TorusModel};
pub use character::{
    character_identity, conjugators, endoscopic_value, invariant_of, norm_image, theta_value, transfer_factor,
    CharIdentityReport, ElementPair, InvariantClass, TORUS_CONSTANT_TERMS,
};
pub use h::{compute_h, pairing_term, verify_iso, verify_iso_flipped, HTable, IsoReport, PairCheck};
pub use packet::{extensions, extensions_with, packet, twisted_value, Extensions, Packet, PacketElement};
