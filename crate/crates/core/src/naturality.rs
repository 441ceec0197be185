//! Maps of fibrations and the induced maps of spectral sequences.
//!
//! A [`FibrationMorphism`] is the pair of algebra maps a map of fibrations
//! induces on fiber and base cohomology. "Source" is the spectral sequence
//! whose differentials are known, "target" the one they are transported into.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::{AlgebraError, AlgebraMap, Element, Monomial, Presentation};
use crate::linalg::ExactMatrix;
use crate::sseq::{run_to_limit, Bidegree, DifferentialAssignment, EngineError, Page, Run, Scenario};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NaturalityError {
    #[error("morphism not compatible with pages: page {page}, cell {cell} ({reason})")]
    Incompatible { page: u32, cell: Bidegree, reason: String },
    #[error("declared pair {index}: {message}")]
    Pair { index: usize, message: String },
    #[error("declared pair {index}: source class dies on page {died_on}, before page {page}")]
    SourceDied { index: usize, page: u32, died_on: u32 },
    #[error("{0}")]
    Conflict(String),
    #[error("runs over different rings")]
    RingMismatch,
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl NaturalityError {
    pub fn is_consistency_failure(&self) -> bool {
        match self {
            NaturalityError::Incompatible { .. } => true,
            NaturalityError::Engine(e) => e.is_consistency_failure(),
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibrationMorphism {
    pub fiber_map: AlgebraMap,
    pub base_map: AlgebraMap,
}

impl FibrationMorphism {
    pub fn new(fiber_map: AlgebraMap, base_map: AlgebraMap) -> Self {
        FibrationMorphism { fiber_map, base_map }
    }

    pub fn identity(s: &Scenario) -> Self {
        FibrationMorphism { fiber_map: AlgebraMap::identity(&s.fiber), base_map: AlgebraMap::identity(&s.base) }
    }

    /// Sends every generator to zero.
    pub fn zero(source: &Scenario, target: &Scenario) -> Result<Self, AlgebraError> {
        let zeros = |s: &Presentation, t: &Presentation| {
            AlgebraMap::new(s, t, (0..s.len()).map(|_| Element::zero(t)).collect())
        };
        Ok(FibrationMorphism {
            fiber_map: zeros(&source.fiber, &target.fiber)?,
            base_map: zeros(&source.base, &target.base)?,
        })
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FibrationMorphism) -> Result<FibrationMorphism, AlgebraError> {
        Ok(FibrationMorphism {
            fiber_map: self.fiber_map.then(&other.fiber_map)?,
            base_map: self.base_map.then(&other.base_map)?,
        })
    }

    /// `φ_2 = fiber map ⊗ base map` between the E2 algebras.
    pub fn e2_map(&self, source: &Scenario, target: &Scenario) -> Result<AlgebraMap, AlgebraError> {
        let src = source.e2_algebra()?;
        let dst = target.e2_algebra()?;
        let fiber_len = target.fiber.len();
        let mut images: Vec<Element> =
            self.fiber_map.images().iter().map(|e| embed(&dst, e, 0)).collect();
        images.extend(self.base_map.images().iter().map(|e| embed(&dst, e, fiber_len)));
        AlgebraMap::new(&src, &dst, images)
    }
}

/// Places an element of a factor algebra into the E2 algebra, with its
/// generators starting at `offset`.
fn embed(e2: &Presentation, e: &Element, offset: usize) -> Element {
    Element::from_terms(
        e2,
        e.terms().map(|(m, c)| {
            let mut exps = vec![0; e2.len()];
            exps[offset..offset + m.exponents().len()].copy_from_slice(m.exponents());
            (Monomial::new(exps), c.clone())
        }),
    )
}

/// Known differentials of `source` transported into the scenario holding
/// this link. Each pair names a source class and the target class it maps
/// to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransportLink {
    pub source: Scenario,
    pub morphism: FibrationMorphism,
    pub pairs: Vec<(Element, Element)>,
}

/// `φ_r` cell by cell in E2 monomial coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedMap {
    pub page: u32,
    pub maps: BTreeMap<Bidegree, ExactMatrix>,
}

fn phi_matrix(phi: &AlgebraMap, src: &Run, dst: &Run, cell: Bidegree) -> Result<ExactMatrix, NaturalityError> {
    let basis = src.layout.basis(cell);
    let mut m = ExactMatrix::zeros(dst.layout.ring(), dst.layout.dim(cell), basis.len());
    for (j, mono) in basis.iter().enumerate() {
        let image = phi.apply_monomial(mono)?;
        let v = dst.layout.coordinates_in(&image, cell).ok_or_else(|| NaturalityError::Incompatible {
            page: 2,
            cell,
            reason: "image leaves its bidegree".into(),
        })?;
        for (i, x) in v.into_iter().enumerate() {
            m.set(i, j, x);
        }
    }
    Ok(m)
}

fn check_runs(src: &Run, dst: &Run) -> Result<(), NaturalityError> {
    if src.layout.ring() != dst.layout.ring() {
        return Err(NaturalityError::RingMismatch);
    }
    Ok(())
}

/// Induced map on page `r`, checked to send cycles to cycles and boundaries
/// to boundaries on cells reliable in both runs.
pub fn induce_on_page(m: &FibrationMorphism, src: &Run, dst: &Run, r: u32) -> Result<InducedMap, NaturalityError> {
    check_runs(src, dst)?;
    let phi = m.e2_map(&src.scenario, &dst.scenario)?;
    let (sp, dp) = (src.page(r)?, dst.page(r)?);
    let mut maps = BTreeMap::new();
    for (&cell, sc) in &sp.cells {
        let Some(dc) = dp.cell(cell) else { continue };
        let matrix = phi_matrix(&phi, src, dst, cell)?;
        if sc.reliable && dc.reliable {
            check_subquotient_map(sp, dp, cell, &matrix)?;
        }
        maps.insert(cell, matrix);
    }
    Ok(InducedMap { page: r, maps })
}

fn check_subquotient_map(sp: &Page, dp: &Page, cell: Bidegree, matrix: &ExactMatrix) -> Result<(), NaturalityError> {
    let (sc, dc) = (&sp.cells[&cell], &dp.cells[&cell]);
    let fail = |reason: &str| NaturalityError::Incompatible { page: sp.index, cell, reason: reason.into() };
    if sc.cycles.basis_vectors().iter().any(|z| !dc.cycles.contains(&matrix.apply(z))) {
        return Err(fail("a cycle maps outside the target cycles"));
    }
    if sc.boundaries.basis_vectors().iter().any(|b| !dc.boundaries.contains(&matrix.apply(b))) {
        return Err(fail("a boundary maps outside the target boundaries"));
    }
    Ok(())
}

/// `d̄_r(b) = φ(d_r(a))` for each declared pair `(a, b)` and each page on
/// which `a` has an explicit assignment in the source scenario.
pub fn transport_differentials(
    src: &Run,
    m: &FibrationMorphism,
    pairs: &[(Element, Element)],
    dst: &Scenario,
) -> Result<Vec<DifferentialAssignment>, NaturalityError> {
    let phi = m.e2_map(&src.scenario, dst)?;
    let mut out = Vec::new();
    for (index, (a, b)) in pairs.iter().enumerate() {
        if phi.apply(a)? != *b {
            return Err(NaturalityError::Pair {
                index,
                message: format!("φ({}) is not {}", src.scenario.render(a), dst.render(b)),
            });
        }
        let (cell, v) = src.locate(a)?;
        for assignment in src.scenario.assignments.iter().filter(|x| x.source == *a) {
            let r = assignment.page;
            let alive = src.page(r)?.cell(cell).is_some_and(|c| c.survives(&v));
            if !alive {
                let died_on = (2..=r)
                    .find(|&k| !src.page(k).ok().and_then(|p| p.cell(cell)).is_some_and(|c| c.survives(&v)))
                    .unwrap_or(r);
                return Err(NaturalityError::SourceDied { index, page: r, died_on });
            }
            out.push(DifferentialAssignment { page: r, source: b.clone(), image: phi.apply(&assignment.image)? });
        }
    }
    out.sort_by_key(|a| a.page);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Violation {
    pub page: u32,
    pub cell: Bidegree,
    pub target: Bidegree,
    pub detail: String,
}

/// Checks `φ_r ∘ d_r = d̄_r ∘ φ_r` modulo target boundaries on every common
/// page, over cells reliable in both runs.
pub fn check_naturality(src: &Run, dst: &Run, m: &FibrationMorphism) -> Result<Vec<Violation>, NaturalityError> {
    check_runs(src, dst)?;
    let phi = m.e2_map(&src.scenario, &dst.scenario)?;
    let last = src.last_page_index().min(dst.last_page_index());
    let mut out = Vec::new();
    for r in 2..last {
        let (sp, dp) = (src.page(r)?, dst.page(r)?);
        let (Some(sd), Some(dd)) = (src.differentials_on(r), dst.differentials_on(r)) else { continue };
        for (&cell, sc) in &sp.cells {
            let Some(target) = cell.shifted_out(r) else { continue };
            let (Some(dc), Some(dt)) = (dp.cell(cell), dp.cell(target)) else { continue };
            let src_target_reliable = sp.cell(target).is_none_or(|c| c.reliable);
            if !(sc.reliable && dc.reliable && dt.reliable && src_target_reliable) {
                continue;
            }
            let phi_source = phi_matrix(&phi, src, dst, cell)?;
            let phi_target = sp.cell(target).map(|_| phi_matrix(&phi, src, dst, target)).transpose()?;
            for z in sc.cycles.basis_vectors() {
                let lhs = match (sd.from_source(cell), &phi_target) {
                    (Some(d), Some(pt)) => pt.apply(&d.lift.apply(z)),
                    _ => vec![dst.layout.ring().zero(); dst.layout.dim(target)],
                };
                let rhs = match dd.from_source(cell) {
                    Some(d) => d.lift.apply(&phi_source.apply(z)),
                    None => vec![dst.layout.ring().zero(); dst.layout.dim(target)],
                };
                let diff: Vec<_> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
                if !dt.boundaries.contains(&diff) {
                    let e2 = dst.layout.algebra();
                    out.push(Violation {
                        page: r,
                        cell,
                        target,
                        detail: format!(
                            "φ(d({})) = {} but d̄(φ({})) = {}",
                            src.scenario.render(&src.layout.element_of(cell, z)),
                            dst.layout.element_of(target, &lhs).render(e2),
                            src.scenario.render(&src.layout.element_of(cell, z)),
                            dst.layout.element_of(target, &rhs).render(e2),
                        ),
                    });
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// A run together with the source run whose differentials it received.
#[derive(Debug, Clone)]
pub struct LinkedRun {
    pub run: Run,
    pub source: Option<Box<LinkedRun>>,
    pub transported: Vec<DifferentialAssignment>,
}

/// Runs a scenario; if it carries a transport link, the source is run first
/// and its transported differentials are installed before the target runs.
pub fn run_scenario(s: &Scenario) -> Result<LinkedRun, NaturalityError> {
    let Some(link) = &s.link else {
        return Ok(LinkedRun { run: run_to_limit(s)?, source: None, transported: Vec::new() });
    };
    let source = run_scenario(&link.source)?;
    let transported = transport_differentials(&source.run, &link.morphism, &link.pairs, s)?;
    let mut installed = s.clone();
    for t in &transported {
        let clash = installed.assignments.iter().any(|a| a.page == t.page && a.source == t.source);
        if clash {
            return Err(NaturalityError::Conflict(format!(
                "page {} assignment for {} is both explicit and transported",
                t.page,
                s.render(&t.source)
            )));
        }
        installed.assignments.push(t.clone());
    }
    installed.assignments.sort_by_key(|a| a.page);
    Ok(LinkedRun { run: run_to_limit(&installed)?, source: Some(Box::new(source)), transported })
}
