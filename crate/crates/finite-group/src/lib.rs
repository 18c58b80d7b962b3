//! Finite groups given by full multiplication tables, and the structures built on them.

pub mod action;
pub mod cocycle;
pub mod extension;
pub mod group;
pub mod induced;

pub use action::{stabilizer_of_class, ActionError, GroupAction};
pub use cocycle::{corestriction_cocycle, Cocycle2, CocycleError};
pub use extension::{CentralExtension, ExtensionError};
pub use group::{FiniteGroup, GroupError};
pub use induced::{InducedDecomposition, InducedError, InducedModule};
