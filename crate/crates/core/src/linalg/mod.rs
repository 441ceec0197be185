//! Exact linear algebra over `Z`, `Q` and `F_p`.
//!
//! Everything a page turn needs reduces to four primitives: echelon forms
//! (Hermite over `Z`, reduced row echelon over a field), kernels, preimages
//! of lattices, and Smith invariants of subquotients.

mod echelon;
mod lattice;
mod matrix;
mod smith;

pub use echelon::{echelon, Echelon};
pub use lattice::{kernel, lattice_preimage, subquotient, subquotient_with_generators, Lattice, Subquotient};
pub use matrix::ExactMatrix;
pub use smith::{hermite_normal_form, smith_invariants, SubquotientInvariants};

use thiserror::Error;

use crate::ring::Ring;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("operation requires ring Z, got {0}")]
    RingMismatch(Ring),
    #[error("operands live over different rings ({0} vs {1})")]
    MixedRings(Ring, Ring),
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("boundaries not inside cycles")]
    NotContained,
}
