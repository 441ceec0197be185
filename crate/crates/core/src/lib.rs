//! Exact Serre spectral sequence computations.
//!
//! [`ring`] and [`linalg`] provide exact arithmetic over `Z`, `Q` and `F_p`;
//! [`algebra`] models graded-commutative algebras; [`sseq`] builds and turns
//! pages; [`naturality`] transports differentials along maps of fibrations.

pub mod algebra;
pub mod cli;
pub mod linalg;
pub mod naturality;
pub mod ring;
pub mod scenarios;
pub mod sseq;
