use std::collections::{BTreeMap, HashMap};

use super::{Bidegree, EngineError, Scenario, Window};
use crate::algebra::{Element, Monomial, Presentation};
use crate::ring::{Ring, Scalar};

/// Monomial bases of all nonzero E2 cells in a window.
#[derive(Debug, Clone)]
pub struct E2Layout {
    algebra: Presentation,
    fiber: Presentation,
    base: Presentation,
    window: Window,
    cells: BTreeMap<Bidegree, Vec<Monomial>>,
    index: HashMap<Monomial, (Bidegree, usize)>,
}

impl E2Layout {
    pub fn new(s: &Scenario) -> Result<Self, EngineError> {
        let algebra = s.e2_algebra()?;
        let fiber_bases: Vec<Vec<Monomial>> = (0..=s.window.q_max).map(|q| s.fiber.basis_in_degree(q)).collect();
        let base_bases: Vec<Vec<Monomial>> = (0..=s.window.p_max).map(|p| s.base.basis_in_degree(p)).collect();
        let mut cells = BTreeMap::new();
        let mut index = HashMap::new();
        for (p, bb) in base_bases.iter().enumerate() {
            for (q, fb) in fiber_bases.iter().enumerate() {
                if bb.is_empty() || fb.is_empty() {
                    continue;
                }
                let cell = Bidegree::new(p as u32, q as u32);
                let mut basis = Vec::with_capacity(fb.len() * bb.len());
                for f in fb {
                    for b in bb {
                        let mut exps = f.exponents().to_vec();
                        exps.extend_from_slice(b.exponents());
                        let m = Monomial::new(exps);
                        index.insert(m.clone(), (cell, basis.len()));
                        basis.push(m);
                    }
                }
                cells.insert(cell, basis);
            }
        }
        Ok(E2Layout { algebra, fiber: s.fiber.clone(), base: s.base.clone(), window: s.window, cells, index })
    }

    pub fn algebra(&self) -> &Presentation {
        &self.algebra
    }

    pub fn ring(&self) -> Ring {
        self.algebra.ring()
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn cells(&self) -> impl Iterator<Item = (&Bidegree, &Vec<Monomial>)> {
        self.cells.iter()
    }

    pub fn basis(&self, cell: Bidegree) -> &[Monomial] {
        self.cells.get(&cell).map_or(&[], Vec::as_slice)
    }

    pub fn dim(&self, cell: Bidegree) -> usize {
        self.basis(cell).len()
    }

    pub fn contains(&self, cell: Bidegree) -> bool {
        self.cells.contains_key(&cell)
    }

    pub fn locate(&self, m: &Monomial) -> Option<(Bidegree, usize)> {
        self.index.get(m).copied()
    }

    /// Coordinates of a bihomogeneous element in its cell.
    pub fn vector_of(&self, e: &Element) -> Result<(Bidegree, Vec<Scalar>), EngineError> {
        let (first, _) = e.terms().next().ok_or(EngineError::NotInWindow)?;
        let (cell, _) = self.locate(first).ok_or(EngineError::NotInWindow)?;
        let v = self.coordinates_in(e, cell).ok_or(EngineError::NotInWindow)?;
        Ok((cell, v))
    }

    /// Coordinates of `e` in `cell`, `None` if some term lies elsewhere.
    pub fn coordinates_in(&self, e: &Element, cell: Bidegree) -> Option<Vec<Scalar>> {
        e.coordinates(|m| self.locate(m).filter(|(c, _)| *c == cell).map(|(_, i)| i), self.dim(cell))
    }

    pub fn element_of(&self, cell: Bidegree, v: &[Scalar]) -> Element {
        Element::from_terms(&self.algebra, self.basis(cell).iter().cloned().zip(v.iter().cloned()))
    }

    fn fiber_nonzero(&self, q: u32) -> bool {
        !self.fiber.basis_in_degree(q).is_empty()
    }

    fn base_nonzero(&self, p: u32) -> bool {
        !self.base.basis_in_degree(p).is_empty()
    }

    /// Whether a cell's value on page `page` is unaffected by the window
    /// cut-off: every `d_r`, `r < page`, entering or leaving it must have
    /// its partner inside the window or in a cell that is zero on E2.
    pub fn reliable(&self, cell: Bidegree, page: u32) -> bool {
        let w = self.window;
        if cell.p > w.p_max || cell.q > w.q_max {
            return false;
        }
        for r in 2..page {
            if let Some(src) = cell.shifted_in(r) {
                if src.q > w.q_max && self.fiber_nonzero(src.q) && self.base_nonzero(src.p) {
                    return false;
                }
            }
            if let Some(tgt) = cell.shifted_out(r) {
                if tgt.p > w.p_max && self.base_nonzero(tgt.p) && self.fiber_nonzero(tgt.q) {
                    return false;
                }
            }
        }
        true
    }

    /// Total degrees `n` whose every potentially nonzero cell lies in the
    /// window and is reliable on `page`.
    pub fn reliable_total_degree(&self, n: u32, page: u32) -> bool {
        (0..=n).all(|p| {
            let cell = Bidegree::new(p, n - p);
            if !(self.base_nonzero(p) && self.fiber_nonzero(n - p)) {
                return true;
            }
            self.reliable(cell, page)
        })
    }
}
