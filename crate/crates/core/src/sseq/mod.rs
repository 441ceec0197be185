//! Cohomological Serre spectral sequences over a finite window.
//!
//! `E_2^{p,q}` is modelled as the tensor product of the fiber algebra (in
//! degree `q`) and the base algebra (in degree `p`), with fiber generators
//! ordered first. A cell on page `r` is the subquotient `Z_r / B_r` of the
//! free module on its E2 monomials; `d_r` has bidegree `(r, 1 - r)` and is
//! lifted to E2 coordinates by the Leibniz rule from generator assignments.

mod audit;
mod layout;
mod leibniz;
mod page;
mod run;
mod scenario;

pub use audit::{
    annihilator_candidates, audit_convergence, settling_page, audit_report, collapse_report, AuditReport, Candidate, CollapseResult,
    Direction, Discrepancy, SurvivorCell,
};
pub use layout::E2Layout;
pub use leibniz::{extend_leibniz, Derivation, PageDifferential, PageDifferentials};
pub use page::{build_e2, turn_page, Cell, Page};
pub use run::{run_to_limit, InstalledAssignment, Run};
pub use scenario::{DifferentialAssignment, Flags, Scenario, TargetCohomology, Window};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::linalg::LinalgError;

/// Position `(p, q)`: base degree `p`, fiber degree `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bidegree {
    pub p: u32,
    pub q: u32,
}

impl Bidegree {
    pub const fn new(p: u32, q: u32) -> Self {
        Bidegree { p, q }
    }

    pub fn total(self) -> u32 {
        self.p + self.q
    }

    /// Target of `d_r` from this cell, if it has nonnegative fiber degree.
    pub fn shifted_out(self, r: u32) -> Option<Bidegree> {
        (self.q + 1 >= r).then(|| Bidegree::new(self.p + r, self.q + 1 - r))
    }

    /// Source of the `d_r` landing in this cell.
    pub fn shifted_in(self, r: u32) -> Option<Bidegree> {
        (self.p >= r).then(|| Bidegree::new(self.p - r, self.q + r - 1))
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("invalid scenario at {path}: {message}")]
    InvalidScenario { path: String, message: String },
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("page {page}: source `{source_text}` at {cell} is not a surviving nonzero class")]
    SourceNotSurviving { page: u32, cell: Bidegree, source_text: String },
    #[error("page {page}: ill-defined differential at {cell} ({reason})")]
    IllDefinedDifferential { page: u32, cell: Bidegree, reason: String },
    #[error("page {page}: boundaries not inside cycles at {cell}")]
    Containment { page: u32, cell: Bidegree },
    #[error("class does not survive to page {page}; it dies on page {died_on}")]
    ClassNotSurviving { page: u32, died_on: u32 },
    #[error("page {0} is not part of this run")]
    UnknownPage(u32),
    #[error("element is not bihomogeneous inside the window")]
    NotInWindow,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

impl EngineError {
    /// True for failures of internal consistency, as opposed to malformed
    /// input.
    pub fn is_consistency_failure(&self) -> bool {
        matches!(
            self,
            EngineError::IllDefinedDifferential { .. } | EngineError::Containment { .. } | EngineError::Linalg(_)
        )
    }
}
