use super::leibniz::derivation_for;
use super::{build_e2, extend_leibniz, turn_page, Bidegree, E2Layout, EngineError, Page, PageDifferentials, Scenario};
use crate::algebra::Element;

/// One assignment as installed, for the audit trail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstalledAssignment {
    pub page: u32,
    pub source_cell: Bidegree,
    pub source: String,
    pub image: String,
    pub explicit_zero: bool,
}

/// All pages `E_2, …, E_{P_max + 1}`; the last one is `E_∞` in the window.
#[derive(Debug, Clone)]
pub struct Run {
    pub scenario: Scenario,
    pub layout: E2Layout,
    pub pages: Vec<Page>,
    /// `differentials[i]` is `d_{i+2}`.
    pub differentials: Vec<PageDifferentials>,
    pub installed: Vec<InstalledAssignment>,
}

impl Run {
    pub fn page(&self, r: u32) -> Result<&Page, EngineError> {
        r.checked_sub(2).and_then(|i| self.pages.get(i as usize)).ok_or(EngineError::UnknownPage(r))
    }

    pub fn differentials_on(&self, r: u32) -> Option<&PageDifferentials> {
        r.checked_sub(2).and_then(|i| self.differentials.get(i as usize))
    }

    pub fn infinity(&self) -> &Page {
        self.pages.last().expect("run has E2")
    }

    pub fn last_page_index(&self) -> u32 {
        self.infinity().index
    }

    /// Coordinates of a bihomogeneous E2 element.
    pub fn locate(&self, e: &Element) -> Result<(Bidegree, Vec<crate::ring::Scalar>), EngineError> {
        self.layout.vector_of(e)
    }
}

pub fn run_to_limit(s: &Scenario) -> Result<Run, EngineError> {
    let (layout, e2) = build_e2(s)?;
    let last = s.window.p_max.max(1);
    let mut pages = vec![e2];
    let mut differentials = Vec::new();
    let mut installed = Vec::new();
    for _ in 2..=last {
        let page = pages.last().expect("nonempty");
        installed.extend(install(page, &layout, s)?);
        let d = extend_leibniz(page, &layout, s)?;
        let next = turn_page(page, &d, &layout)?;
        differentials.push(d);
        pages.push(next);
    }
    Ok(Run { scenario: s.clone(), layout, pages, differentials, installed })
}

/// Validates that each page-`r` assignment starts at a surviving nonzero
/// class.
fn install(page: &Page, layout: &E2Layout, s: &Scenario) -> Result<Vec<InstalledAssignment>, EngineError> {
    derivation_for(page.index, layout, s)?;
    let mut out = Vec::new();
    for a in s.assignments.iter().filter(|a| a.page == page.index) {
        let (cell, v) = layout.vector_of(&a.source)?;
        let alive = page.cell(cell).is_some_and(|c| c.survives(&v));
        if !alive {
            return Err(EngineError::SourceNotSurviving { page: page.index, cell, source_text: s.render(&a.source) });
        }
        out.push(InstalledAssignment {
            page: page.index,
            source_cell: cell,
            source: s.render(&a.source),
            image: s.render(&a.image),
            explicit_zero: a.image.is_zero(),
        });
    }
    Ok(out)
}

impl Run {
    /// Generators of `E_r` at a cell as E2 elements, with their orders.
    pub fn representatives(&self, r: u32, cell: Bidegree) -> Result<Vec<(Option<num_bigint::BigInt>, Element)>, EngineError> {
        let Some(c) = self.page(r)?.cell(cell) else { return Ok(Vec::new()) };
        let sq = c.subquotient().map_err(|_| EngineError::Containment { page: r, cell })?;
        Ok(sq.generators.into_iter().map(|(o, v)| (o, self.layout.element_of(cell, &v))).collect())
    }
}
