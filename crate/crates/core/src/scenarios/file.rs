use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{BASE, FIBER};
use crate::algebra::{AlgebraError, AlgebraMap, Generator, GeneratorKind, Presentation};
use crate::linalg::SubquotientInvariants;
use crate::naturality::{FibrationMorphism, TransportLink};
use crate::ring::Ring;
use crate::sseq::{DifferentialAssignment, EngineError, Flags, Scenario, TargetCohomology, Window};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    #[serde(default, skip_serializing_if = "String::is_empty")]
    description: String,
    ring: String,
    fiber: BlockFile,
    base: BlockFile,
    window: WindowFile,
    #[serde(default)]
    assignments: Vec<AssignmentFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    target: Option<BTreeMap<u32, String>>,
    #[serde(default)]
    flags: FlagsFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    source: Option<Box<ScenarioFile>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    morphism: Option<MorphismFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BlockFile {
    generators: Vec<GeneratorFile>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    aliases: Vec<AliasFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorFile {
    name: String,
    degree: u32,
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    height: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AliasFile {
    name: String,
    value: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WindowFile {
    p_max: u32,
    q_max: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AssignmentFile {
    page: u32,
    source: String,
    image: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FlagsFile {
    #[serde(default = "yes")]
    divided_power_leibniz: bool,
}

impl Default for FlagsFile {
    fn default() -> Self {
        FlagsFile { divided_power_leibniz: true }
    }
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismFile {
    fiber: BTreeMap<String, String>,
    base: BTreeMap<String, String>,
    pairs: Vec<PairFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairFile {
    source: String,
    target: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScenarioError {
    /// Malformed JSON or a document that does not fit the schema.
    Format { line: usize, column: usize, message: String },
    Semantic { path: String, location: Option<(usize, usize)>, message: String },
}

impl fmt::Display for ScenarioError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScenarioError::Format { line, column, message } => write!(f, "line {line}, column {column}: {message}"),
            ScenarioError::Semantic { path, location: Some((l, c)), message } => {
                write!(f, "{path} (line {l}, column {c}): {message}")
            }
            ScenarioError::Semantic { path, location: None, message } => write!(f, "{path}: {message}"),
        }
    }
}

impl std::error::Error for ScenarioError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Warning {
    pub path: String,
    pub message: String,
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "warning: {}: {}", self.path, self.message)
    }
}

/// Maps JSON paths of element strings to their positions in the raw text.
struct Locator<'a> {
    text: &'a str,
    strings: HashMap<String, String>,
}

impl Locator<'_> {
    fn note(&mut self, path: &str, value: &str) {
        self.strings.insert(path.to_string(), value.to_string());
    }

    /// Line and column (1-based) of character `offset` inside the string
    /// recorded at `path`.
    fn locate(&self, path: &str, offset: usize) -> Option<(usize, usize)> {
        let value = self.strings.get(path)?;
        let quoted = serde_json::to_string(value).ok()?;
        let start = self.text.find(&quoted)?;
        let before = &self.text[..start];
        let line = before.matches('\n').count() + 1;
        let line_start = before.rfind('\n').map_or(0, |i| i + 1);
        let column = self.text[line_start..start].chars().count() + 2 + offset;
        Some((line, column))
    }

    fn error(&self, path: &str, e: impl fmt::Display, offset: usize) -> ScenarioError {
        ScenarioError::Semantic { path: path.to_string(), location: self.locate(path, offset), message: e.to_string() }
    }

    fn algebra_error(&self, path: &str, e: AlgebraError) -> ScenarioError {
        let offset = match &e {
            AlgebraError::Parse(p) => p.offset,
            _ => 0,
        };
        self.error(path, e, offset)
    }
}

fn kind_of(g: &GeneratorFile) -> Result<GeneratorKind, String> {
    let kind = match g.kind.as_str() {
        "exterior" => GeneratorKind::Exterior,
        "polynomial" => GeneratorKind::Polynomial,
        "divided_power" => GeneratorKind::DividedPower,
        "truncated" => {
            let height = g.height.ok_or("truncated generators need a height")?;
            return Ok(GeneratorKind::Truncated { height });
        }
        other => return Err(format!("unknown generator kind `{other}`")),
    };
    if g.height.is_some() {
        return Err(format!("height only applies to truncated generators, not {}", g.kind));
    }
    Ok(kind)
}

fn presentation(ring: Ring, block: &BlockFile, path: &str, desc: &str) -> Result<Presentation, ScenarioError> {
    let semantic = |p: String, m: String| ScenarioError::Semantic { path: p, location: None, message: m };
    let mut gens = Vec::new();
    for (i, g) in block.generators.iter().enumerate() {
        let kind = kind_of(g).map_err(|m| semantic(format!("{path}.generators[{i}]"), m))?;
        gens.push(Generator { name: g.name.clone(), degree: g.degree, kind });
    }
    Presentation::new(ring, gens, desc).map_err(|e| semantic(format!("{path}.generators"), e.to_string()))
}

fn build(file: &ScenarioFile, loc: &mut Locator, prefix: &str, warnings: &mut Vec<Warning>) -> Result<Scenario, ScenarioError> {
    let at = |p: &str| format!("{prefix}{p}");
    let semantic = |p: String, m: String| ScenarioError::Semantic { path: p, location: None, message: m };
    let ring: Ring = file.ring.parse().map_err(|e: crate::ring::RingError| semantic(at("ring"), e.to_string()))?;
    let fiber = presentation(ring, &file.fiber, &at("fiber"), FIBER)?;
    let base = presentation(ring, &file.base, &at("base"), BASE)?;
    if !file.fiber.aliases.is_empty() {
        return Err(semantic(at("fiber.aliases"), "aliases belong in the base block".into()));
    }
    let mut s = Scenario {
        description: file.description.clone(),
        ring,
        fiber,
        base,
        aliases: file.base.aliases.iter().map(|a| (a.name.clone(), a.value.clone())).collect(),
        window: Window { p_max: file.window.p_max, q_max: file.window.q_max },
        assignments: Vec::new(),
        target: None,
        flags: Flags { divided_power_leibniz: file.flags.divided_power_leibniz },
        link: None,
    };
    let e2 = s.e2_algebra().map_err(|e| semantic(at("base.generators"), e.to_string()))?;
    for (i, a) in file.base.aliases.iter().enumerate() {
        loc.note(&at(&format!("base.aliases[{i}].value")), &a.value);
    }
    let aliases = s.alias_elements(&e2).map_err(|e| {
        let i = s.aliases.iter().position(|(_, v)| crate::algebra::parse_element(&e2, v, &BTreeMap::new()).is_err());
        loc.algebra_error(&at(&format!("base.aliases[{}].value", i.unwrap_or(0))), e)
    })?;
    for (i, a) in file.assignments.iter().enumerate() {
        let (sp, ip) = (at(&format!("assignments[{i}].source")), at(&format!("assignments[{i}].image")));
        loc.note(&sp, &a.source);
        loc.note(&ip, &a.image);
        let source = crate::algebra::parse_element(&e2, &a.source, &aliases).map_err(|e| loc.algebra_error(&sp, e))?;
        let image = crate::algebra::parse_element(&e2, &a.image, &aliases).map_err(|e| loc.algebra_error(&ip, e))?;
        if image.is_zero() && a.image.trim() != "0" {
            warnings.push(Warning { path: ip, message: "image is zero; use explicit zero".into() });
        }
        s.assignments.push(DifferentialAssignment { page: a.page, source, image });
    }
    if let Some(target) = &file.target {
        let mut degrees = BTreeMap::new();
        for (&n, text) in target {
            let g: SubquotientInvariants = text.parse().map_err(|m| semantic(at(&format!("target.{n}")), m))?;
            degrees.insert(n, g);
        }
        s.target = Some(TargetCohomology { degrees });
    }
    match (&file.source, &file.morphism) {
        (None, None) => {}
        (Some(src), Some(m)) => {
            let source = build(src, loc, &at("source."), warnings)?;
            if source.ring != ring {
                return Err(semantic(at("source.ring"), "source must use the same ring".into()));
            }
            let morphism = FibrationMorphism::new(
                factor_map(&source.fiber, &s.fiber, &m.fiber, &at("morphism.fiber"), loc)?,
                factor_map(&source.base, &s.base, &m.base, &at("morphism.base"), loc)?,
            );
            let (src_e2, src_aliases) = (
                source.e2_algebra().map_err(|e| semantic(at("source"), e.to_string()))?,
                source.alias_elements(&source.e2_algebra().expect("checked")).map_err(|e| semantic(at("source"), e.to_string()))?,
            );
            let mut pairs = Vec::new();
            for (i, p) in m.pairs.iter().enumerate() {
                let (sp, tp) = (at(&format!("morphism.pairs[{i}].source")), at(&format!("morphism.pairs[{i}].target")));
                loc.note(&sp, &p.source);
                loc.note(&tp, &p.target);
                let a = crate::algebra::parse_element(&src_e2, &p.source, &src_aliases).map_err(|e| loc.algebra_error(&sp, e))?;
                let b = crate::algebra::parse_element(&e2, &p.target, &aliases).map_err(|e| loc.algebra_error(&tp, e))?;
                pairs.push((a, b));
            }
            s.link = Some(Box::new(TransportLink { source, morphism, pairs }));
        }
        _ => return Err(semantic(at("morphism"), "`source` and `morphism` must appear together".into())),
    }
    Ok(s)
}

fn factor_map(
    source: &Presentation,
    target: &Presentation,
    images: &BTreeMap<String, String>,
    path: &str,
    loc: &mut Locator,
) -> Result<AlgebraMap, ScenarioError> {
    let semantic = |p: String, m: String| ScenarioError::Semantic { path: p, location: None, message: m };
    if let Some(extra) = images.keys().find(|k| source.index_of(k).is_none()) {
        return Err(semantic(format!("{path}.{extra}"), format!("`{extra}` is not a source generator")));
    }
    let mut out = Vec::new();
    for g in source.generators() {
        let p = format!("{path}.{}", g.name);
        let text = images.get(&g.name).ok_or_else(|| semantic(p.clone(), "missing image".into()))?;
        loc.note(&p, text);
        out.push(crate::algebra::parse_element(target, text, &BTreeMap::new()).map_err(|e| loc.algebra_error(&p, e))?);
    }
    AlgebraMap::new(source, target, out).map_err(|e| semantic(path.to_string(), e.to_string()))
}

/// Parses and validates a scenario document.
pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    parse_scenario_with_warnings(text).map(|(s, _)| s)
}

pub fn parse_scenario_with_warnings(text: &str) -> Result<(Scenario, Vec<Warning>), ScenarioError> {
    let file: ScenarioFile = serde_json::from_str(text).map_err(|e| ScenarioError::Format {
        line: e.line(),
        column: e.column(),
        message: e.to_string().split(" at line ").next().unwrap_or_default().to_string(),
    })?;
    let mut loc = Locator { text, strings: HashMap::new() };
    let mut warnings = Vec::new();
    let s = build(&file, &mut loc, "", &mut warnings)?;
    s.validate().map_err(|e| match e {
        EngineError::InvalidScenario { path, message } => {
            let location = loc.locate(&path, 0);
            ScenarioError::Semantic { path, location, message }
        }
        other => ScenarioError::Semantic { path: "window".into(), location: None, message: other.to_string() },
    })?;
    Ok((s, warnings))
}

fn to_file(s: &Scenario) -> ScenarioFile {
    let block = |p: &Presentation, aliases: &[(String, String)]| BlockFile {
        generators: p
            .generators()
            .iter()
            .map(|g| GeneratorFile {
                name: g.name.clone(),
                degree: g.degree,
                kind: g.kind.label().to_string(),
                height: match g.kind {
                    GeneratorKind::Truncated { height } => Some(height),
                    _ => None,
                },
            })
            .collect(),
        aliases: aliases.iter().map(|(n, v)| AliasFile { name: n.clone(), value: v.clone() }).collect(),
    };
    let (source, morphism) = match &s.link {
        None => (None, None),
        Some(link) => {
            let images = |m: &AlgebraMap| {
                m.source()
                    .generators()
                    .iter()
                    .zip(m.images())
                    .map(|(g, e)| (g.name.clone(), e.render(m.target())))
                    .collect()
            };
            let pairs = link
                .pairs
                .iter()
                .map(|(a, b)| PairFile { source: link.source.render(a), target: s.render(b) })
                .collect();
            (
                Some(Box::new(to_file(&link.source))),
                Some(MorphismFile {
                    fiber: images(&link.morphism.fiber_map),
                    base: images(&link.morphism.base_map),
                    pairs,
                }),
            )
        }
    };
    ScenarioFile {
        description: s.description.clone(),
        ring: s.ring.to_string(),
        fiber: block(&s.fiber, &[]),
        base: block(&s.base, &s.aliases),
        window: WindowFile { p_max: s.window.p_max, q_max: s.window.q_max },
        assignments: s
            .assignments
            .iter()
            .map(|a| AssignmentFile { page: a.page, source: s.render(&a.source), image: s.render(&a.image) })
            .collect(),
        target: s.target.as_ref().map(|t| t.degrees.iter().map(|(&n, g)| (n, g.to_string())).collect()),
        flags: FlagsFile { divided_power_leibniz: s.flags.divided_power_leibniz },
        source,
        morphism,
    }
}

/// Canonical JSON text of a scenario, ending in a newline.
pub fn serialize_scenario(s: &Scenario) -> String {
    let mut out = serde_json::to_string_pretty(&to_file(s)).expect("scenario serializes");
    out.push('\n');
    out
}
