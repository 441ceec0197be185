use serde::{Deserialize, Serialize};

use super::{Bidegree, EngineError, Run, TargetCohomology};
use crate::algebra::Element;
use crate::linalg::SubquotientInvariants;
use crate::ring::Scalar;

/// A cell contributing to a total degree on `E_∞`, with its generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurvivorCell {
    pub cell: Bidegree,
    pub invariants: SubquotientInvariants,
    pub representatives: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub degree: u32,
    pub expected: SubquotientInvariants,
    pub found: SubquotientInvariants,
    pub survivors: Vec<SurvivorCell>,
}

/// Per-degree convergence verdicts. `extension_only` lists degrees where the
/// associated graded differs from the target but ranks and torsion orders
/// agree, so an extension could account for the difference.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub audited: Vec<u32>,
    pub skipped: Vec<u32>,
    pub extension_only: Vec<u32>,
    pub discrepancies: Vec<Discrepancy>,
}

impl AuditReport {
    pub fn is_consistent(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

/// Compares `⊕_{p+q=n} E_∞^{p,q}` with the target in each reliable total
/// degree. Degrees where the target is torsion-free need exact agreement;
/// elsewhere ranks and torsion orders must match.
pub fn audit_report(run: &Run, target: &TargetCohomology) -> Result<AuditReport, EngineError> {
    let inf = run.infinity();
    let w = run.layout.window();
    let mut report = AuditReport::default();
    for n in 0..=w.p_max + w.q_max {
        if !run.layout.reliable_total_degree(n, inf.index) {
            report.skipped.push(n);
            continue;
        }
        report.audited.push(n);
        let mut found = SubquotientInvariants::default();
        for (&cell, _) in inf.cells.iter().filter(|(c, _)| c.total() == n) {
            found = found.direct_sum(&inf.invariants(cell)?);
        }
        let expected = target.in_degree(n);
        if found == expected {
            continue;
        }
        let weak = found.free_rank == expected.free_rank && found.torsion_order() == expected.torsion_order();
        if weak && !expected.torsion.is_empty() {
            report.extension_only.push(n);
            continue;
        }
        report.discrepancies.push(Discrepancy { degree: n, expected, found, survivors: survivors(run, n)? });
    }
    Ok(report)
}

pub fn audit_convergence(run: &Run, target: &TargetCohomology) -> Result<Vec<Discrepancy>, EngineError> {
    audit_report(run, target).map(|r| r.discrepancies)
}

fn survivors(run: &Run, n: u32) -> Result<Vec<SurvivorCell>, EngineError> {
    let inf = run.infinity();
    let mut out = Vec::new();
    for (&cell, _) in inf.cells.iter().filter(|(c, _)| c.total() == n) {
        let invariants = inf.invariants(cell)?;
        if invariants.is_zero() {
            continue;
        }
        let representatives = run.representatives(inf.index, cell)?.into_iter().map(|(_, e)| run.scenario.render(&e)).collect();
        out.push(SurvivorCell { cell, invariants, representatives });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    In,
    Out,
}

/// A differential that could still hit or leave a class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    pub page: u32,
    pub direction: Direction,
    pub partner: Bidegree,
    pub partner_basis: Vec<String>,
}

/// Lists every later page whose differential into or out of the class's cell
/// has a nonzero partner in the window. An empty list means the class is
/// permanent in the window.
pub fn annihilator_candidates(run: &Run, page: u32, element: &Element) -> Result<Vec<Candidate>, EngineError> {
    let (cell, v) = run.locate(element)?;
    let here = run.page(page)?;
    if !here.cell(cell).is_some_and(|c| c.survives(&v)) {
        let died_on = (2..=page)
            .find(|&r| !run.page(r).ok().and_then(|pg| pg.cell(cell)).is_some_and(|c| c.survives(&v)))
            .unwrap_or(page);
        return Err(EngineError::ClassNotSurviving { page, died_on });
    }
    let mut out = Vec::new();
    for r in page..=run.last_page_index() {
        let partners = [(Direction::In, cell.shifted_in(r)), (Direction::Out, cell.shifted_out(r))];
        for (direction, partner) in partners {
            let Some(partner) = partner else { continue };
            let pg = run.page(r)?;
            if pg.cell(partner).is_none() || pg.is_zero_at(partner)? {
                continue;
            }
            let partner_basis =
                run.representatives(r, partner)?.into_iter().map(|(_, e)| run.scenario.render(&e)).collect();
            out.push(Candidate { page: r, direction, partner, partner_basis });
        }
    }
    Ok(out)
}

/// First page from which the class survives and its cell no longer changes;
/// `None` if the class is zero on `E_∞`. Annihilator candidates listed from
/// this page are exactly the differentials that could still matter.
pub fn settling_page(run: &Run, element: &Element) -> Result<Option<u32>, EngineError> {
    let (cell, v) = run.locate(element)?;
    let last = run.infinity().cell(cell);
    if !last.is_some_and(|c| c.survives(&v)) {
        return Ok(None);
    }
    let mut settled = run.last_page_index();
    for pg in run.pages.iter().rev() {
        let same = pg.cell(cell).map(|c| (&c.cycles, &c.boundaries)) == last.map(|c| (&c.cycles, &c.boundaries));
        if !same {
            break;
        }
        settled = pg.index;
    }
    Ok(Some(settled))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum CollapseResult {
    Collapses,
    NonCollapse {
        page: u32,
        source: Bidegree,
        target: Bidegree,
        /// Rows index the target's E2 monomials, columns the source
        /// generators on that page.
        #[serde(with = "crate::ring::scalar_matrix")]
        matrix: Vec<Vec<Scalar>>,
        source_generators: Vec<String>,
        target_basis: Vec<String>,
        images: Vec<String>,
    },
}

/// Scans pages upwards and cells in `(p, q)` order for the first differential
/// that is nonzero between reliable cells.
pub fn collapse_report(run: &Run) -> Result<CollapseResult, EngineError> {
    for (i, ds) in run.differentials.iter().enumerate() {
        let page = &run.pages[i];
        for (src, d) in &ds.maps {
            if !(page.cells[src].reliable && page.cells[&d.target].reliable) || !d.is_nonzero_on(page) {
                continue;
            }
            let gens = run.representatives(page.index, *src)?;
            let e2 = run.layout.algebra();
            let mut matrix = vec![Vec::with_capacity(gens.len()); d.lift.rows()];
            let mut images = Vec::with_capacity(gens.len());
            for (_, g) in &gens {
                let v = run.layout.coordinates_in(g, *src).expect("generator lies in its cell");
                let image = d.lift.apply(&v);
                for (row, x) in matrix.iter_mut().zip(&image) {
                    row.push(x.clone());
                }
                images.push(run.layout.element_of(d.target, &image).render_report(e2));
            }
            return Ok(CollapseResult::NonCollapse {
                page: page.index,
                source: *src,
                target: d.target,
                matrix,
                source_generators: gens.iter().map(|(_, g)| run.scenario.render(g)).collect(),
                target_basis: run.layout.basis(d.target).iter().map(|m| m.render(e2)).collect(),
                images,
            });
        }
    }
    Ok(CollapseResult::Collapses)
}
