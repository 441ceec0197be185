use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{Bidegree, E2Layout, EngineError, PageDifferentials, Scenario};
use crate::linalg::{lattice_preimage, subquotient_with_generators, Lattice, LinalgError, Subquotient, SubquotientInvariants};

/// `E_r^{p,q} = cycles / boundaries`, both inside the free module on the
/// cell's E2 monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub cycles: Lattice,
    pub boundaries: Lattice,
    pub reliable: bool,
}

impl Cell {
    pub fn subquotient(&self) -> Result<Subquotient, LinalgError> {
        subquotient_with_generators(&self.cycles, &self.boundaries)
    }

    pub fn invariants(&self) -> Result<SubquotientInvariants, LinalgError> {
        self.subquotient().map(|s| s.invariants)
    }

    /// Whether `v` represents a class on this page that is not zero.
    pub fn survives(&self, v: &[crate::ring::Scalar]) -> bool {
        self.cycles.contains(v) && !self.boundaries.contains(v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Page {
    pub index: u32,
    pub cells: BTreeMap<Bidegree, Cell>,
}

impl Page {
    pub fn cell(&self, at: Bidegree) -> Option<&Cell> {
        self.cells.get(&at)
    }

    pub fn invariants(&self, at: Bidegree) -> Result<SubquotientInvariants, EngineError> {
        match self.cells.get(&at) {
            Some(c) => c.invariants().map_err(|_| EngineError::Containment { page: self.index, cell: at }),
            None => Ok(SubquotientInvariants::default()),
        }
    }

    pub fn is_zero_at(&self, at: Bidegree) -> Result<bool, EngineError> {
        self.invariants(at).map(|i| i.is_zero())
    }
}

/// E2: every cell is the full lattice on its monomial basis, no boundaries.
pub fn build_e2(s: &Scenario) -> Result<(E2Layout, Page), EngineError> {
    s.validate()?;
    let layout = E2Layout::new(s)?;
    let ring = layout.ring();
    let cells = layout
        .cells()
        .map(|(&cell, basis)| {
            let c = Cell {
                cycles: Lattice::full(ring, basis.len()),
                boundaries: Lattice::zero(ring, basis.len()),
                reliable: layout.reliable(cell, 2),
            };
            (cell, c)
        })
        .collect();
    Ok((layout, Page { index: 2, cells }))
}

/// Homology of `(E_r, d_r)`: new cycles are the old cycles mapping into the
/// target boundaries, new boundaries add the images of incoming cycles.
pub fn turn_page(page: &Page, d: &PageDifferentials, layout: &E2Layout) -> Result<Page, EngineError> {
    let r = page.index;
    debug_assert_eq!(d.page, r);
    let entries: Vec<(&Bidegree, &Cell)> = page.cells.iter().collect();
    let turned: Result<Vec<(Bidegree, Cell)>, EngineError> = entries
        .par_iter()
        .map(|&(&at, cell)| {
            let cycles = match d.from_source(at) {
                Some(out) if !out.lift.is_zero() => {
                    let on_cycles = out.on_cycles(&cell.cycles);
                    let target = &page.cells[&out.target];
                    let keep = lattice_preimage(&on_cycles, &target.boundaries)?;
                    Lattice::from_generators(
                        layout.ring(),
                        cell.cycles.ambient_rank(),
                        keep.basis_vectors().iter().map(|c| cell.cycles.combine(c)).collect(),
                    )
                }
                _ => cell.cycles.clone(),
            };
            let boundaries = match d.into_target(at) {
                Some(inc) if !inc.lift.is_zero() => {
                    let source = &page.cells[&inc.source];
                    cell.boundaries.add_vectors(source.cycles.basis_vectors().iter().map(|z| inc.lift.apply(z)))
                }
                _ => cell.boundaries.clone(),
            };
            if !cycles.contains_lattice(&boundaries) {
                return Err(EngineError::Containment { page: r + 1, cell: at });
            }
            Ok((at, Cell { cycles, boundaries, reliable: layout.reliable(at, r + 1) }))
        })
        .collect();
    Ok(Page { index: r + 1, cells: turned?.into_iter().collect() })
}
