//! Ready-made scenarios and the JSON scenario-file format.

mod file;

pub use file::{parse_scenario, parse_scenario_with_warnings, serialize_scenario, ScenarioError, Warning};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::algebra::{AlgebraMap, Generator, Presentation};
use crate::naturality::{FibrationMorphism, TransportLink};
use crate::ring::Ring;
use crate::sseq::{DifferentialAssignment, Flags, Scenario, TargetCohomology, Window};

pub const FIBER: &str = "fiber";
pub const BASE: &str = "base";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresetError {
    #[error("invalid preset parameters: {0}")]
    Parameters(String),
    #[error("unknown preset `{0}`")]
    Unknown(String),
    #[error("{0}")]
    Build(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PresetId {
    /// `ΩCP^n → Map(I, CP^n) → CP^n × CP^n`.
    PathCpnDiag { n: u32 },
    /// The same fibration with the base written in `v = c1 - c2`, `w = c1`.
    PathCpnDiagVw { n: u32 },
    /// `ΩCP^n → ΛCP^n → CP^n` with no differentials of its own.
    FreeLoopCpn { n: u32 },
    /// Free loop fibration of a space with rational cohomology
    /// `Q[x]/(x^k)`, `|x| = 2m`.
    FreeLoopRankOne { m: u32, k: u32 },
    /// Free loop fibration receiving its differentials from the path
    /// fibration along constant loops.
    PairWithMorphism { n: u32 },
}

impl fmt::Display for PresetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PresetId::PathCpnDiag { n } => write!(f, "path_cpn_diag({n})"),
            PresetId::PathCpnDiagVw { n } => write!(f, "path_cpn_diag_vw({n})"),
            PresetId::FreeLoopCpn { n } => write!(f, "free_loop_cpn({n})"),
            PresetId::FreeLoopRankOne { m, k } => write!(f, "free_loop_rank_one({m},{k})"),
            PresetId::PairWithMorphism { n } => write!(f, "pair_with_morphism({n})"),
        }
    }
}

impl FromStr for PresetId {
    type Err = PresetError;

    /// Parses `name(a)` or `name(a,b)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || PresetError::Unknown(s.to_string());
        let (name, rest) = s.split_once('(').ok_or_else(unknown)?;
        let args: Vec<u32> = rest
            .strip_suffix(')')
            .ok_or_else(unknown)?
            .split(',')
            .map(|a| a.trim().parse().map_err(|_| unknown()))
            .collect::<Result<_, _>>()?;
        match (name.trim(), args.as_slice()) {
            ("path_cpn_diag", &[n]) => Ok(PresetId::PathCpnDiag { n }),
            ("path_cpn_diag_vw", &[n]) => Ok(PresetId::PathCpnDiagVw { n }),
            ("free_loop_cpn", &[n]) => Ok(PresetId::FreeLoopCpn { n }),
            ("free_loop_rank_one", &[m, k]) => Ok(PresetId::FreeLoopRankOne { m, k }),
            ("pair_with_morphism", &[n]) => Ok(PresetId::PairWithMorphism { n }),
            _ => Err(unknown()),
        }
    }
}

/// Orientation of the fiber class `y`: flips the sign of the transgression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Orientation {
    #[default]
    Positive,
    Negative,
}

impl Orientation {
    fn sign(self) -> i64 {
        match self {
            Orientation::Positive => 1,
            Orientation::Negative => -1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Preset {
    pub id: PresetId,
    pub ring: Ring,
    pub orientation: Orientation,
}

impl Preset {
    /// Integral coefficients (rational for the rank-one family), positive
    /// orientation.
    pub fn new(id: PresetId) -> Self {
        let ring = match id {
            PresetId::FreeLoopRankOne { .. } => Ring::Rationals,
            _ => Ring::Integers,
        };
        Preset { id, ring, orientation: Orientation::Positive }
    }

    pub fn over(mut self, ring: Ring) -> Self {
        self.ring = ring;
        self
    }

    pub fn oriented(mut self, orientation: Orientation) -> Self {
        self.orientation = orientation;
        self
    }
}

fn build<T>(r: Result<T, impl fmt::Display>) -> Result<T, PresetError> {
    r.map_err(|e| PresetError::Build(e.to_string()))
}

fn check_params(id: PresetId) -> Result<(), PresetError> {
    let bad = |m: &str| Err(PresetError::Parameters(format!("{id}: {m}")));
    match id {
        PresetId::PathCpnDiag { n }
        | PresetId::PathCpnDiagVw { n }
        | PresetId::FreeLoopCpn { n }
        | PresetId::PairWithMorphism { n } => {
            if n == 0 {
                return bad("n must be at least 1");
            }
        }
        PresetId::FreeLoopRankOne { m, k } => {
            if m == 0 || k < 2 {
                return bad("need m >= 1 and k >= 2");
            }
        }
    }
    Ok(())
}

fn loop_fiber(ring: Ring, y_degree: u32) -> Result<Presentation, PresetError> {
    build(Presentation::new(ring, vec![Generator::exterior("u", 1), Generator::divided_power("y", y_degree)], FIBER))
}

fn default_window(y_degree: u32, base: &Presentation) -> Window {
    Window { p_max: base.top_degree().unwrap_or(0), q_max: 2 * y_degree + 1 }
}

/// `Σ_{i=0..n} c1^i c2^{n-i}` as text.
fn diagonal_sum(n: u32) -> String {
    (0..=n)
        .map(|i| match (i, n - i) {
            (0, j) => format!("c2^{j}"),
            (i, 0) => format!("c1^{i}"),
            (i, j) => format!("c1^{i}*c2^{j}"),
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn assignment(s: &Scenario, page: u32, source: &str, image: &str) -> Result<DifferentialAssignment, PresetError> {
    Ok(DifferentialAssignment { page, source: build(s.parse(source))?, image: build(s.parse(image))? })
}

fn path_cpn_diag(n: u32, ring: Ring, orientation: Orientation, vw: bool) -> Result<Scenario, PresetError> {
    let fiber = loop_fiber(ring, 2 * n)?;
    let base =
        build(Presentation::new(ring, vec![Generator::truncated("c1", 2, n + 1), Generator::truncated("c2", 2, n + 1)], BASE))?;
    let aliases =
        if vw { vec![("v".to_string(), "c1 - c2".to_string()), ("w".to_string(), "c1".to_string())] } else { Vec::new() };
    let mut s = Scenario {
        description: format!("path fibration over CP^{n} x CP^{n} pulled back along the diagonal"),
        ring,
        window: default_window(2 * n, &base),
        fiber,
        base,
        aliases,
        assignments: Vec::new(),
        target: Some(TargetCohomology::complex_projective(n)),
        flags: Flags::default(),
        link: None,
    };
    let sign = if orientation.sign() < 0 { "-" } else { "" };
    let (d2, sum) = if vw {
        let terms: Vec<String> = (0..=n).map(|i| format!("w^{i}*(w - v)^{}", n - i)).collect();
        ("v".to_string(), terms.join(" + "))
    } else {
        ("c1 - c2".to_string(), diagonal_sum(n))
    };
    s.assignments = vec![assignment(&s, 2, "u", &d2)?, assignment(&s, 2 * n, "y", &format!("{sign}u*({sum})"))?];
    s.assignments.sort_by_key(|a| a.page);
    Ok(s)
}

fn free_loop_cpn(n: u32, ring: Ring) -> Result<Scenario, PresetError> {
    let fiber = loop_fiber(ring, 2 * n)?;
    let base = build(Presentation::new(ring, vec![Generator::truncated("x", 2, n + 1)], BASE))?;
    Ok(Scenario {
        description: format!("free loop fibration over CP^{n}"),
        ring,
        window: default_window(2 * n, &base),
        fiber,
        base,
        aliases: Vec::new(),
        assignments: Vec::new(),
        target: None,
        flags: Flags::default(),
        link: None,
    })
}

fn free_loop_rank_one(m: u32, k: u32, ring: Ring, orientation: Orientation) -> Result<Scenario, PresetError> {
    let y_degree = 2 * m * k - 2;
    let fiber = build(Presentation::new(
        ring,
        vec![Generator::exterior("u", 2 * m - 1), Generator::polynomial("y", y_degree)],
        FIBER,
    ))?;
    let base = build(Presentation::new(ring, vec![Generator::truncated("x", 2 * m, k)], BASE))?;
    let mut s = Scenario {
        description: format!(
            "free loop fibration over a space with rational cohomology Q[x]/(x^{k}), |x| = {}; |y| = 2mk-2 = {y_degree} is forced by the transgression bidegree",
            2 * m
        ),
        ring,
        window: default_window(y_degree, &base),
        fiber,
        base,
        aliases: Vec::new(),
        assignments: Vec::new(),
        target: None,
        flags: Flags::default(),
        link: None,
    };
    let coefficient = orientation.sign() * k as i64;
    s.assignments = vec![assignment(&s, 2 * m * (k - 1), "y", &format!("{coefficient}*u*x^{}", k - 1))?];
    Ok(s)
}

/// The constant-loop map: identity on the fiber, `c1, c2 ↦ x` on the base.
pub fn constant_loop_morphism(source: &Scenario, target: &Scenario) -> Result<FibrationMorphism, PresetError> {
    let fiber = build(AlgebraMap::new(
        &source.fiber,
        &target.fiber,
        (0..source.fiber.len()).map(|i| target.fiber.generator(i)).collect(),
    ))?;
    let x = target.base.generator(0);
    let base = build(AlgebraMap::new(&source.base, &target.base, vec![x.clone(), x]))?;
    Ok(FibrationMorphism::new(fiber, base))
}

fn pair_with_morphism(n: u32, ring: Ring, orientation: Orientation) -> Result<Scenario, PresetError> {
    let source = path_cpn_diag(n, ring, orientation, false)?;
    let mut target = free_loop_cpn(n, ring)?;
    target.description = format!("free loop fibration over CP^{n}, differentials transported from the path fibration");
    let morphism = constant_loop_morphism(&source, &target)?;
    let pairs = ["u", "y"]
        .iter()
        .map(|g| Ok((build(source.parse(g))?, build(target.parse(g))?)))
        .collect::<Result<Vec<_>, PresetError>>()?;
    target.link = Some(Box::new(TransportLink { source, morphism, pairs }));
    Ok(target)
}

/// Builds the scenario for a preset. The pair preset yields the free loop
/// scenario with its transport link to the path scenario.
pub fn materialize(preset: &Preset) -> Result<Scenario, PresetError> {
    check_params(preset.id)?;
    let (ring, o) = (preset.ring, preset.orientation);
    let s = match preset.id {
        PresetId::PathCpnDiag { n } => path_cpn_diag(n, ring, o, false)?,
        PresetId::PathCpnDiagVw { n } => path_cpn_diag(n, ring, o, true)?,
        PresetId::FreeLoopCpn { n } => free_loop_cpn(n, ring)?,
        PresetId::FreeLoopRankOne { m, k } => free_loop_rank_one(m, k, ring, o)?,
        PresetId::PairWithMorphism { n } => pair_with_morphism(n, ring, o)?,
    };
    build(s.validate())?;
    Ok(s)
}
