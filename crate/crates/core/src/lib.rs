//! Exact computations with the Hopf algebras that act on the radical
//! extensions `Q(a^{1/p^n})/Q`, their smash products, the profinite limit
//! and the variants over cyclotomic base fields.

pub mod catalog;
pub mod cyclotomic;
pub mod error;
pub mod gp_enum;
pub mod groupring;
pub mod hopf;
pub mod linalg;
pub mod perm;
pub mod profinite;
pub mod rat;
pub mod report;
pub mod smash;
pub mod suite;
pub mod variants;

pub use cyclotomic::{CycloElt, FieldDescriptor};
pub use error::{Error, Result};
pub use groupring::{GroupRingElt, TensorElt};
pub use hopf::{HElt, RadicalElt};
pub use rat::Rat;
