//! Exact computation of branching multiplicities for symmetric subalgebras.

pub mod branching;
pub mod checks;
pub mod chevalley;
pub mod error;
pub mod hwmodule;
pub mod ideal;
pub mod linalg;
pub mod mstruct;
pub mod psembed;
pub mod realform;
pub mod rootsys;
pub mod scalar;

pub use error::{Error, Result};
