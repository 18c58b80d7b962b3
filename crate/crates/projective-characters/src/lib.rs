//! Character theory of finite groups with exact cyclotomic values.
//!
//! Everything is stated for finite groups; the locally profinite setting of
//! the underlying lemmas is replaced by its finite-group specialization.

pub mod cache;
pub mod clifford;
pub mod cycmatrix;
pub mod fixtures;
pub mod induction;
pub mod projective;
pub mod table;
pub mod tensor_induction;
pub mod twist;

pub use cycmatrix::CycMatrix;
pub use table::{character_table, character_table_with_bound, CharacterTable, RootSum, TableData, TableError};
pub use projective::{
    central_character_filter, cocycle_from_extension, irr_with_central_char, irr_with_central_char_in, psi_central,
    twisted_orthogonality, OrthBranch, OrthReport, ProjectiveError, ProjectiveIrrSet, PsiCentral, FINITE_MODEL_NOTE,
};
pub use induction::{element_inner_product, frobenius_induced_value, induce};
pub use clifford::{
    canonical_tensor_extension, fibered_pairs, mackey_multiplicity_transfer, CliffordError, Correspondence, GroupExtension,
    MackeyReport, MatchedOrbit, ProjectiveExtension, RestrictionCheck, TensorExtension,
};
pub use cache::{group_key, TableCache};
pub use tensor_induction::{induced_cocycle_check, projective_cocycle, InducedCocycleReport, InductionError, TensorInduced};
pub use twist::{block_twisted_trace, ShiftedPower, TwistError, TwistTrace, TwistedClassReport};
