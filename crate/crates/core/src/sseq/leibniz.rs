use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::{Bidegree, E2Layout, EngineError, Page, Scenario};
use crate::algebra::{AlgebraError, Element, GeneratorKind, Monomial, Presentation};
use crate::linalg::{ExactMatrix, Lattice};

/// A derivation of bidegree `(r, 1 - r)` on the E2 algebra, determined by
/// its values on generator classes. Unassigned classes map to zero.
#[derive(Debug, Clone)]
pub struct Derivation {
    page: u32,
    algebra: Presentation,
    /// `(generator, k) -> d(γ_k)`; `k = 1` for ordinary generators.
    values: HashMap<(usize, u32), Element>,
    divided_power_leibniz: bool,
}

impl Derivation {
    pub fn new(page: u32, algebra: &Presentation, divided_power_leibniz: bool) -> Self {
        Derivation { page, algebra: algebra.clone(), values: HashMap::new(), divided_power_leibniz }
    }

    pub fn page(&self) -> u32 {
        self.page
    }

    pub fn set(&mut self, generator: usize, k: u32, image: Element) {
        self.values.insert((generator, k), image);
    }

    fn value(&self, generator: usize, k: u32) -> Element {
        self.values.get(&(generator, k)).cloned().unwrap_or_else(|| Element::zero(&self.algebra))
    }

    /// Derivative of the single-generator factor `g^e` (or `γ_e(g)`).
    fn atom_derivative(&self, generator: usize, e: u32) -> Result<Element, AlgebraError> {
        let p = &self.algebra;
        let ring = p.ring();
        match p.generators()[generator].kind {
            GeneratorKind::DividedPower => {
                if e == 1 || !self.divided_power_leibniz {
                    Ok(self.value(generator, e))
                } else {
                    p.multiply(&p.generator_power(generator, e - 1), &self.value(generator, 1))
                }
            }
            GeneratorKind::Exterior => Ok(self.value(generator, 1)),
            GeneratorKind::Polynomial | GeneratorKind::Truncated { .. } => {
                let lower = p.generator_power(generator, e - 1).scale(&ring.from_int(e as i64), p);
                p.multiply(&lower, &self.value(generator, 1))
            }
        }
    }

    /// `d(a_1 ⋯ a_k) = Σ (-1)^{|a_1 ⋯ a_{i-1}|} a_1 ⋯ a_{i-1} d(a_i) a_{i+1} ⋯ a_k`
    /// over the single-generator factors of a normal-form monomial.
    pub fn apply_monomial(&self, m: &Monomial) -> Result<Element, AlgebraError> {
        let p = &self.algebra;
        let atoms: Vec<(usize, u32)> =
            m.exponents().iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| (i, e)).collect();
        let factor = |(i, e): (usize, u32)| p.generator_power(i, e);
        let mut suffix = vec![p.unit(); atoms.len() + 1];
        for j in (0..atoms.len()).rev() {
            suffix[j] = p.multiply(&factor(atoms[j]), &suffix[j + 1])?;
        }
        let mut out = Element::zero(p);
        let mut prefix = p.unit();
        let mut prefix_degree = 0u32;
        for (j, &(i, e)) in atoms.iter().enumerate() {
            let d = self.atom_derivative(i, e)?;
            if !d.is_zero() {
                let mut term = p.multiply(&p.multiply(&prefix, &d)?, &suffix[j + 1])?;
                if prefix_degree % 2 == 1 {
                    term = term.scale(&p.ring().from_int(-1), p);
                }
                out = out.add(&term, p)?;
            }
            prefix = p.multiply(&prefix, &factor((i, e)))?;
            prefix_degree += e * p.generators()[i].degree;
        }
        Ok(out)
    }

    pub fn apply(&self, x: &Element) -> Result<Element, AlgebraError> {
        let p = &self.algebra;
        let mut out = Element::zero(p);
        for (m, c) in x.terms() {
            out = out.add(&self.apply_monomial(m)?.scale(c, p), p)?;
        }
        Ok(out)
    }
}

/// `d_r` lifted to E2 coordinates from one cell into its target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PageDifferential {
    pub source: Bidegree,
    pub target: Bidegree,
    /// `dim(target) × dim(source)` in E2 monomial coordinates.
    pub lift: ExactMatrix,
}

impl PageDifferential {
    /// The differential on cycle representatives: columns are the images of
    /// the canonical cycle basis of the source.
    pub fn on_cycles(&self, cycles: &Lattice) -> ExactMatrix {
        let cols: Vec<_> = cycles.basis_vectors().iter().map(|z| self.lift.apply(z)).collect();
        ExactMatrix::from_columns(self.lift.ring(), self.lift.rows(), &cols)
    }

    /// Whether the induced map `E_r(source) → E_r(target)` is nonzero.
    pub fn is_nonzero_on(&self, page: &Page) -> bool {
        let (Some(src), Some(tgt)) = (page.cells.get(&self.source), page.cells.get(&self.target)) else {
            return false;
        };
        src.cycles.basis_vectors().iter().any(|z| !tgt.boundaries.contains(&self.lift.apply(z)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PageDifferentials {
    pub page: u32,
    pub maps: BTreeMap<Bidegree, PageDifferential>,
}

impl PageDifferentials {
    pub fn from_source(&self, cell: Bidegree) -> Option<&PageDifferential> {
        self.maps.get(&cell)
    }

    pub fn into_target(&self, cell: Bidegree) -> Option<&PageDifferential> {
        cell.shifted_in(self.page).and_then(|s| self.maps.get(&s)).filter(|d| d.target == cell)
    }
}

/// Builds the page-`r` derivation from the scenario's assignments (already
/// validated against `page`), computes its lift on every cell, and checks
/// that it induces a well-defined map of subquotients on reliable cells.
pub fn extend_leibniz(page: &Page, layout: &E2Layout, s: &Scenario) -> Result<PageDifferentials, EngineError> {
    let r = page.index;
    let derivation = derivation_for(r, layout, s)?;
    let ring = layout.ring();
    let jobs: Vec<(Bidegree, Bidegree)> = layout
        .cells()
        .filter_map(|(&cell, _)| cell.shifted_out(r).filter(|t| layout.contains(*t)).map(|t| (cell, t)))
        .collect();
    let computed: Result<Vec<_>, EngineError> = jobs
        .par_iter()
        .map(|&(cell, target)| {
            let basis = layout.basis(cell);
            let mut lift = ExactMatrix::zeros(ring, layout.dim(target), basis.len());
            for (j, m) in basis.iter().enumerate() {
                let image = derivation.apply_monomial(m)?;
                let v = layout.coordinates_in(&image, target).ok_or_else(|| EngineError::IllDefinedDifferential {
                    page: r,
                    cell,
                    reason: "image leaves the target cell".into(),
                })?;
                for (i, x) in v.into_iter().enumerate() {
                    lift.set(i, j, x);
                }
            }
            let d = PageDifferential { source: cell, target, lift };
            check_well_defined(page, layout, &d)?;
            Ok((cell, d))
        })
        .collect();
    Ok(PageDifferentials { page: r, maps: computed?.into_iter().collect() })
}

fn check_well_defined(page: &Page, layout: &E2Layout, d: &PageDifferential) -> Result<(), EngineError> {
    let r = page.index;
    if !layout.reliable(d.source, r) || !layout.reliable(d.target, r) {
        return Ok(());
    }
    let src = &page.cells[&d.source];
    let tgt = &page.cells[&d.target];
    for z in src.cycles.basis_vectors() {
        if !tgt.cycles.contains(&d.lift.apply(z)) {
            return Err(EngineError::IllDefinedDifferential {
                page: r,
                cell: d.source,
                reason: "a cycle maps outside the target cycles".into(),
            });
        }
    }
    for b in src.boundaries.basis_vectors() {
        if !tgt.boundaries.contains(&d.lift.apply(b)) {
            return Err(EngineError::IllDefinedDifferential {
                page: r,
                cell: d.source,
                reason: "boundaries do not map into boundaries".into(),
            });
        }
    }
    Ok(())
}

/// Derivation for page `r` from the scenario assignments of that page.
pub(crate) fn derivation_for(r: u32, layout: &E2Layout, s: &Scenario) -> Result<Derivation, EngineError> {
    let mut derivation = Derivation::new(r, layout.algebra(), s.flags.divided_power_leibniz);
    for a in s.assignments.iter().filter(|a| a.page == r) {
        let (index, k, c) = s.generator_class(&a.source).ok_or_else(|| EngineError::InvalidScenario {
            path: "assignments".into(),
            message: "source must be a single generator class".into(),
        })?;
        let inv = layout.ring().inverse(&c).expect("unit coefficient");
        derivation.set(index, k, a.image.scale(&inv, layout.algebra()));
    }
    Ok(derivation)
}
