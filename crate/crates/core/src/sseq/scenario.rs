use std::collections::BTreeMap;

use super::{Bidegree, EngineError};
use crate::algebra::{AlgebraError, Element, GeneratorKind, Presentation};
use crate::linalg::SubquotientInvariants;
use crate::naturality::TransportLink;
use crate::ring::{Ring, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub p_max: u32,
    pub q_max: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Flags {
    /// Use `d(γ_k) = γ_{k-1}·d(γ_1)` for divided-power generators.
    pub divided_power_leibniz: bool,
}

impl Default for Flags {
    fn default() -> Self {
        Flags { divided_power_leibniz: true }
    }
}

/// `d_page(source) = image`, both in E2 coordinates. A zero image is an
/// explicit zero, distinct from leaving the class unassigned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferentialAssignment {
    pub page: u32,
    pub source: Element,
    pub image: Element,
}

/// Expected cohomology of the total space by total degree; missing degrees
/// are zero.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TargetCohomology {
    pub degrees: BTreeMap<u32, SubquotientInvariants>,
}

impl TargetCohomology {
    pub fn in_degree(&self, n: u32) -> SubquotientInvariants {
        self.degrees.get(&n).cloned().unwrap_or_default()
    }

    /// `H*(CP^n)`: rank one in even degrees `0..=2n`.
    pub fn complex_projective(n: u32) -> Self {
        TargetCohomology { degrees: (0..=n).map(|i| (2 * i, SubquotientInvariants::free(1))).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    pub description: String,
    pub ring: Ring,
    pub fiber: Presentation,
    pub base: Presentation,
    /// Extra names usable in element text, e.g. `v = c1 - c2`.
    pub aliases: Vec<(String, String)>,
    pub window: Window,
    pub assignments: Vec<DifferentialAssignment>,
    pub target: Option<TargetCohomology>,
    pub flags: Flags,
    /// Source fibration whose differentials are transported into this one.
    pub link: Option<Box<TransportLink>>,
}

impl Scenario {
    /// The E2 algebra: fiber generators followed by base generators.
    pub fn e2_algebra(&self) -> Result<Presentation, AlgebraError> {
        self.fiber.tensor(&self.base, &self.description)
    }

    pub fn fiber_len(&self) -> usize {
        self.fiber.len()
    }

    /// Alias table resolved against the E2 algebra.
    pub fn alias_elements(&self, e2: &Presentation) -> Result<BTreeMap<String, Element>, AlgebraError> {
        let mut out = BTreeMap::new();
        for (name, text) in &self.aliases {
            let e = crate::algebra::parse_element(e2, text, &out)?;
            out.insert(name.clone(), e);
        }
        Ok(out)
    }

    /// Parses element text in the E2 algebra, aliases included.
    pub fn parse(&self, text: &str) -> Result<Element, AlgebraError> {
        let e2 = self.e2_algebra()?;
        let aliases = self.alias_elements(&e2)?;
        crate::algebra::parse_element(&e2, text, &aliases)
    }

    pub fn render(&self, e: &Element) -> String {
        self.e2_algebra().map(|p| e.render(&p)).unwrap_or_default()
    }

    pub fn bidegree_of_monomial(&self, m: &crate::algebra::Monomial) -> Bidegree {
        let gens = self.fiber.generators().iter().chain(self.base.generators());
        let mut bd = Bidegree::new(0, 0);
        for (i, (e, g)) in m.exponents().iter().zip(gens).enumerate() {
            if i < self.fiber_len() {
                bd.q += e * g.degree;
            } else {
                bd.p += e * g.degree;
            }
        }
        bd
    }

    /// Common bidegree of all terms, `None` for zero or mixed elements.
    pub fn bidegree_of(&self, e: &Element) -> Option<Bidegree> {
        let mut it = e.terms().map(|(m, _)| self.bidegree_of_monomial(m));
        let first = it.next()?;
        it.all(|b| b == first).then_some(first)
    }

    /// Splits an assignment source into (generator index, divided-power
    /// index, unit coefficient).
    pub fn generator_class(&self, e: &Element) -> Option<(usize, u32, Scalar)> {
        let (m, c) = e.as_monomial()?;
        let mut nonzero = m.exponents().iter().enumerate().filter(|(_, &x)| x > 0);
        let (index, &k) = nonzero.next()?;
        if nonzero.next().is_some() || !self.ring.is_unit(c) {
            return None;
        }
        let e2 = self.e2_algebra().ok()?;
        let kind = e2.generators()[index].kind;
        if k == 1 || kind == GeneratorKind::DividedPower {
            Some((index, k, c.clone()))
        } else {
            None
        }
    }

    pub fn validate(&self) -> Result<(), EngineError> {
        let invalid = |path: &str, message: String| EngineError::InvalidScenario { path: path.to_string(), message };
        if self.fiber.ring() != self.ring || self.base.ring() != self.ring {
            return Err(invalid("ring", "fiber and base must use the scenario ring".into()));
        }
        let e2 = self.e2_algebra().map_err(|e| invalid("base", e.to_string()))?;
        self.alias_elements(&e2).map_err(|e| invalid("base.aliases", e.to_string()))?;
        if let Some(top) = self.base.top_degree() {
            if self.window.p_max < top {
                return Err(invalid(
                    "window.p_max",
                    format!("p_max {} is below the top base degree {top}", self.window.p_max),
                ));
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        for (i, a) in self.assignments.iter().enumerate() {
            let path = |field: &str| format!("assignments[{i}].{field}");
            if a.page < 2 {
                return Err(invalid(&path("page"), "pages start at 2".into()));
            }
            if a.source.arity() != e2.len() || a.image.arity() != e2.len() {
                return Err(invalid(&path("source"), "element from another presentation".into()));
            }
            let (index, k, _) = self
                .generator_class(&a.source)
                .ok_or_else(|| invalid(&path("source"), "source must be a single generator class".into()))?;
            if k > 1 && self.flags.divided_power_leibniz {
                return Err(invalid(
                    &path("source"),
                    "higher divided powers are derived by the Leibniz flag; disable it to assign them".into(),
                ));
            }
            if !seen.insert((a.page, index, k)) {
                return Err(invalid(&path("source"), "class assigned twice on the same page".into()));
            }
            let src = self.bidegree_of(&a.source).expect("monomial source");
            let expected = src
                .shifted_out(a.page)
                .ok_or_else(|| invalid(&path("image"), format!("d_{} from {src} leaves the first quadrant", a.page)))?;
            if !a.image.is_zero() {
                let found = self
                    .bidegree_of(&a.image)
                    .ok_or_else(|| invalid(&path("image"), "image is not bihomogeneous".into()))?;
                if found != expected {
                    return Err(invalid(
                        &path("image"),
                        format!("bidegree mismatch: image at {found}, d_{} from {src} needs {expected}", a.page),
                    ));
                }
            }
            let inside = |b: Bidegree| b.p <= self.window.p_max && b.q <= self.window.q_max;
            if !inside(src) || !inside(expected) {
                return Err(EngineError::WindowTooSmall(format!(
                    "assignment {i} (d_{} from {src} to {expected}) leaves window p<={}, q<={}",
                    a.page, self.window.p_max, self.window.q_max
                )));
            }
        }
        if let Some(link) = &self.link {
            link.source.validate().map_err(|e| match e {
                EngineError::InvalidScenario { path, message } => {
                    EngineError::InvalidScenario { path: format!("source.{path}"), message }
                }
                other => other,
            })?;
        }
        Ok(())
    }
}
