//! `loopss run | render | audit`.
//!
//! Exit codes: `run` returns 0 on success, 2 for scenario errors and 3 for
//! internal consistency failures; `audit` returns 1 when discrepancies are
//! found; `render` returns 2 for unreadable reports or unknown pages.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::linalg::SubquotientInvariants;
use crate::naturality::{check_naturality, run_scenario, LinkedRun, NaturalityError, Violation};
use crate::scenarios::{parse_scenario_with_warnings, ScenarioError};
use crate::sseq::{
    annihilator_candidates, audit_report, settling_page, collapse_report, AuditReport, Bidegree, Candidate, CollapseResult,
    Run,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "loopss", about = "Exact Serre spectral sequences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute all pages of a scenario and write a JSON report.
    Run {
        scenario: PathBuf,
        /// Pages to keep in the report, e.g. `2,4-5`; default all.
        #[arg(long)]
        pages: Option<String>,
        /// Report destination; standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw one page of a report.
    Render {
        report: PathBuf,
        /// Page index; default the last page (`E_∞`).
        #[arg(long)]
        page: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
    },
    /// Compare `E_∞` with the scenario's target cohomology.
    Audit { scenario: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Ascii,
    Latex,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Representative {
    pub element: String,
    /// Order of a torsion generator; absent for free generators.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellRow {
    pub r: u32,
    pub p: u32,
    pub q: u32,
    pub free_rank: usize,
    pub torsion: Vec<String>,
    pub representatives: Vec<Representative>,
    pub reliable: bool,
}

impl CellRow {
    pub fn group(&self) -> SubquotientInvariants {
        SubquotientInvariants {
            free_rank: self.free_rank,
            torsion: self.torsion.iter().map(|t| t.parse().expect("report torsion is numeric")).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferentialRow {
    pub r: u32,
    pub source: Bidegree,
    pub target: Bidegree,
    pub reliable: bool,
    /// Columns are images of the source generators in the target's E2
    /// monomial basis.
    pub matrix: Vec<Vec<String>>,
    pub source_generators: Vec<String>,
    pub target_basis: Vec<String>,
    pub images: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssignmentRow {
    pub page: u32,
    pub source: String,
    pub image: String,
    pub explicit_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    /// SHA-256 of the scenario file bytes.
    pub fingerprint: String,
    pub description: String,
    pub ring: String,
    pub p_max: u32,
    pub q_max: u32,
    pub last_page: u32,
    pub assignments: Vec<AssignmentRow>,
    pub transported: Vec<AssignmentRow>,
    pub cells: Vec<CellRow>,
    pub differentials: Vec<DifferentialRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub audit: Option<AuditReport>,
    pub collapse: CollapseResult,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub naturality: Option<Vec<Violation>>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn pages(&self) -> Vec<u32> {
        let mut p: Vec<u32> = self.cells.iter().map(|c| c.r).collect();
        p.dedup();
        p
    }
}

pub fn fingerprint(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Parses `2,4-6` into a page set.
pub fn parse_page_list(text: &str) -> Result<Vec<u32>, String> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let bad = || format!("invalid page list `{text}`");
        match part.split_once('-') {
            Some((a, b)) => {
                let (a, b): (u32, u32) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
                out.extend(a..=b);
            }
            None => out.push(part.parse().map_err(|_| bad())?),
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn cell_rows(run: &Run, r: u32) -> Result<Vec<CellRow>, NaturalityError> {
    let page = run.page(r)?;
    let mut rows = Vec::new();
    for (&at, cell) in &page.cells {
        let group = page.invariants(at)?;
        let representatives = run
            .representatives(r, at)?
            .into_iter()
            .map(|(order, e)| Representative { element: run.scenario.render(&e), order: order.map(|o| o.to_string()) })
            .collect();
        rows.push(CellRow {
            r,
            p: at.p,
            q: at.q,
            free_rank: group.free_rank,
            torsion: group.torsion.iter().map(ToString::to_string).collect(),
            representatives,
            reliable: cell.reliable,
        });
    }
    Ok(rows)
}

fn differential_rows(run: &Run, r: u32) -> Result<Vec<DifferentialRow>, NaturalityError> {
    let (Some(ds), Ok(page)) = (run.differentials_on(r), run.page(r)) else { return Ok(Vec::new()) };
    let e2 = run.layout.algebra();
    let mut rows = Vec::new();
    for (src, d) in &ds.maps {
        if !d.is_nonzero_on(page) {
            continue;
        }
        let gens = run.representatives(r, *src)?;
        let mut matrix = vec![Vec::new(); d.lift.rows()];
        let mut images = Vec::new();
        for (_, g) in &gens {
            let v = run.layout.coordinates_in(g, *src).expect("generator lies in its cell");
            let image = d.lift.apply(&v);
            for (row, x) in matrix.iter_mut().zip(&image) {
                row.push(crate::ring::format_scalar(x));
            }
            images.push(run.layout.element_of(d.target, &image).render_report(e2));
        }
        rows.push(DifferentialRow {
            r,
            source: *src,
            target: d.target,
            reliable: page.cells[src].reliable && page.cells[&d.target].reliable,
            matrix,
            source_generators: gens.iter().map(|(_, g)| run.scenario.render(g)).collect(),
            target_basis: run.layout.basis(d.target).iter().map(|m| m.render(e2)).collect(),
            images,
        });
    }
    Ok(rows)
}

/// Builds the report for a completed run. `pages` restricts the cell and
/// differential tables; `None` keeps every page.
pub fn build_report(linked: &LinkedRun, fingerprint: &str, pages: Option<&[u32]>) -> Result<RunReport, NaturalityError> {
    let run = &linked.run;
    let s = &run.scenario;
    let keep = |r: u32| pages.is_none_or(|ps| ps.contains(&r));
    let mut cells = Vec::new();
    let mut differentials = Vec::new();
    for page in run.pages.iter().filter(|p| keep(p.index)) {
        cells.extend(cell_rows(run, page.index)?);
        differentials.extend(differential_rows(run, page.index)?);
    }
    let row = |page: u32, source: &crate::algebra::Element, image: &crate::algebra::Element| AssignmentRow {
        page,
        source: s.render(source),
        image: s.render(image),
        explicit_zero: image.is_zero(),
    };
    let transported: Vec<AssignmentRow> = linked.transported.iter().map(|a| row(a.page, &a.source, &a.image)).collect();
    let assignments = s
        .assignments
        .iter()
        .filter(|a| !linked.transported.contains(a))
        .map(|a| row(a.page, &a.source, &a.image))
        .collect();
    let audit = s.target.as_ref().map(|t| audit_report(run, t)).transpose()?;
    let naturality = match (&linked.source, &s.link) {
        (Some(src), Some(link)) => Some(check_naturality(&src.run, run, &link.morphism)?),
        _ => None,
    };
    Ok(RunReport {
        schema_version: SCHEMA_VERSION,
        fingerprint: fingerprint.to_string(),
        description: s.description.clone(),
        ring: s.ring.to_string(),
        p_max: s.window.p_max,
        q_max: s.window.q_max,
        last_page: run.last_page_index(),
        assignments,
        transported,
        cells,
        differentials,
        audit,
        collapse: collapse_report(run)?,
        naturality,
    })
}

enum Failure {
    Scenario(String),
    Consistency(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Scenario(_) => 2,
            Failure::Consistency(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Scenario(m) | Failure::Consistency(m) => m,
        }
    }
}

impl From<NaturalityError> for Failure {
    fn from(e: NaturalityError) -> Self {
        if e.is_consistency_failure() {
            Failure::Consistency(e.to_string())
        } else {
            Failure::Scenario(e.to_string())
        }
    }
}

fn load(path: &Path, err: &mut dyn Write) -> Result<(crate::sseq::Scenario, String), Failure> {
    let bytes = std::fs::read(path).map_err(|e| Failure::Scenario(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| Failure::Scenario(format!("{}: not UTF-8", path.display())))?;
    let (s, warnings) =
        parse_scenario_with_warnings(&text).map_err(|e: ScenarioError| Failure::Scenario(format!("{}: {e}", path.display())))?;
    for w in warnings {
        let _ = writeln!(err, "{w}");
    }
    Ok((s, fingerprint(&bytes)))
}

/// Writes through a temporary sibling file and a rename.
fn write_atomically(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, path).inspect_err(|_| {
        let _ = std::fs::remove_file(&tmp);
    })
}

pub fn cmd_run(scenario: &Path, pages: Option<&str>, out_path: Option<&Path>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = (|| -> Result<String, Failure> {
        let pages = pages.map(parse_page_list).transpose().map_err(Failure::Scenario)?;
        let (s, fp) = load(scenario, err)?;
        let linked = run_scenario(&s)?;
        Ok(build_report(&linked, &fp, pages.as_deref())?.to_json())
    })();
    match result {
        Ok(json) => match out_path {
            Some(p) => match write_atomically(p, &json) {
                Ok(()) => 0,
                Err(e) => {
                    let _ = writeln!(err, "error: {}: {e}", p.display());
                    2
                }
            },
            None => {
                let _ = out.write_all(json.as_bytes());
                0
            }
        },
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}

fn entry(c: Option<&CellRow>) -> String {
    let Some(c) = c else { return ".".into() };
    let g = c.group();
    let core = if g.is_zero() { ".".to_string() } else { g.to_string() };
    if c.reliable {
        core
    } else {
        format!("[{core}]")
    }
}

/// Grid with `p` across and `q` up; unreliable cells in brackets.
pub fn render_ascii(report: &RunReport, r: u32) -> String {
    let cells: BTreeMap<(u32, u32), &CellRow> =
        report.cells.iter().filter(|c| c.r == r).map(|c| ((c.p, c.q), c)).collect();
    let mut out = format!("E_{r}\n");
    if cells.is_empty() {
        return out;
    }
    let (pm, qm) = (report.p_max, report.q_max);
    let widths: Vec<usize> =
        (0..=pm).map(|p| (0..=qm).map(|q| entry(cells.get(&(p, q)).copied()).chars().count()).max().unwrap_or(1)).collect();
    let label = qm.to_string().len();
    for q in (0..=qm).rev() {
        let row: Vec<String> = (0..=pm)
            .map(|p| format!("{:<w$}", entry(cells.get(&(p, q)).copied()), w = widths[p as usize]))
            .collect();
        let _ = writeln!(out, "{q:>label$} | {}", row.join(" ").trim_end());
    }
    let axis: Vec<String> = (0..=pm).map(|p| format!("{:<w$}", p, w = widths[p as usize])).collect();
    let _ = writeln!(out, "{:>label$}   {}", "", axis.join(" ").trim_end());
    for d in report.differentials.iter().filter(|d| d.r == r) {
        for (g, img) in d.source_generators.iter().zip(&d.images) {
            let mark = if d.reliable { "" } else { " [unreliable]" };
            let _ = writeln!(out, "d{r}: {} -> {}: {g} ↦ {img}{mark}", d.source, d.target);
        }
    }
    out
}

/// A `tikzpicture` with one node per nonzero cell and one arrow per nonzero
/// differential.
pub fn render_latex(report: &RunReport, r: u32) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "% E_{r}: {}", report.description);
    let _ = writeln!(out, "\\begin{{tikzpicture}}[scale=0.8]");
    let _ = writeln!(out, "  \\draw[->] (0,0) -- ({},0) node[right] {{$p$}};", report.p_max + 1);
    let _ = writeln!(out, "  \\draw[->] (0,0) -- (0,{}) node[above] {{$q$}};", report.q_max + 1);
    for c in report.cells.iter().filter(|c| c.r == r) {
        let g = c.group();
        if g.is_zero() && c.reliable {
            continue;
        }
        let text = entry(Some(c)).replace('[', "\\lbrack ").replace(']', "\\rbrack ");
        let _ = writeln!(out, "  \\node at ({}.5,{}.5) {{${text}$}};", c.p, c.q);
    }
    for d in report.differentials.iter().filter(|d| d.r == r) {
        let _ = writeln!(
            out,
            "  \\draw[->] ({}.5,{}.5) -- ({}.5,{}.5);",
            d.source.p, d.source.q, d.target.p, d.target.q
        );
    }
    let _ = writeln!(out, "\\end{{tikzpicture}}");
    out
}

pub fn render_json(report: &RunReport, r: u32) -> String {
    let rows: Vec<&CellRow> = report.cells.iter().filter(|c| c.r == r).collect();
    let mut s = serde_json::to_string_pretty(&rows).expect("rows serialize");
    s.push('\n');
    s
}

pub fn cmd_render(report_path: &Path, page: Option<u32>, format: Format, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let report: RunReport = match std::fs::read_to_string(report_path)
        .map_err(|e| e.to_string())
        .and_then(|t| serde_json::from_str(&t).map_err(|e| e.to_string()))
    {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {}: {e}", report_path.display());
            return 2;
        }
    };
    let r = page.unwrap_or(report.last_page);
    let known = report.pages();
    if !known.contains(&r) && !(known.is_empty() && r == report.last_page) {
        let _ = writeln!(err, "error: page {r} is not in this report (pages {known:?})");
        return 2;
    }
    let text = match format {
        Format::Ascii => render_ascii(&report, r),
        Format::Latex => render_latex(&report, r),
        Format::Json => render_json(&report, r),
    };
    let _ = out.write_all(text.as_bytes());
    0
}

fn print_candidates(out: &mut String, candidates: &[Candidate]) {
    if candidates.is_empty() {
        let _ = writeln!(out, "    no differential can remove it in the window");
    }
    for c in candidates {
        let dir = match c.direction {
            crate::sseq::Direction::In => "from",
            crate::sseq::Direction::Out => "to",
        };
        let _ = writeln!(out, "    d{} {dir} {} (basis {})", c.page, c.partner, c.partner_basis.join(", "));
    }
}

pub fn cmd_audit(scenario: &Path, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = (|| -> Result<(bool, String), Failure> {
        let (s, _) = load(scenario, err)?;
        let Some(target) = s.target.clone() else {
            return Err(Failure::Scenario(format!("{}: scenario has no target cohomology", scenario.display())));
        };
        let linked = run_scenario(&s)?;
        let run = &linked.run;
        let report = audit_report(run, &target).map_err(NaturalityError::from)?;
        let mut text = String::new();
        let _ = writeln!(text, "audited total degrees: {:?}", report.audited);
        if !report.skipped.is_empty() {
            let _ = writeln!(text, "skipped (window cut-off): {:?}", report.skipped);
        }
        for n in &report.extension_only {
            let _ = writeln!(text, "degree {n}: compatible up to extension");
        }
        for d in &report.discrepancies {
            let _ = writeln!(text, "degree {}: expected {}, found {}", d.degree, d.expected, d.found);
            for sc in &d.survivors {
                for rep in &sc.representatives {
                    let _ = writeln!(text, "  survivor {rep} at {} ({})", sc.cell, sc.invariants);
                    let e = run.scenario.parse(rep).map_err(|e| Failure::Consistency(e.to_string()))?;
                    let from = settling_page(run, &e).map_err(NaturalityError::from)?.unwrap_or(run.last_page_index());
                    let candidates = annihilator_candidates(run, from, &e).map_err(NaturalityError::from)?;
                    let _ = writeln!(text, "    candidates from page {from}:");
                    print_candidates(&mut text, &candidates);
                }
            }
        }
        if report.is_consistent() {
            let _ = writeln!(text, "consistent");
        }
        Ok((report.is_consistent(), text))
    })();
    match result {
        Ok((consistent, text)) => {
            let _ = out.write_all(text.as_bytes());
            if consistent {
                0
            } else {
                1
            }
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}

/// Caps the worker pool at `LOOPSS_THREADS` when set.
pub fn configure_threads() {
    if let Some(n) = std::env::var("LOOPSS_THREADS").ok().and_then(|v| v.parse::<usize>().ok()).filter(|&n| n > 0) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

pub fn run_cli(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match cli.command {
        Command::Run { scenario, pages, out: path } => cmd_run(&scenario, pages.as_deref(), path.as_deref(), out, err),
        Command::Render { report, page, format } => cmd_render(&report, page, format, out, err),
        Command::Audit { scenario } => cmd_audit(&scenario, out, err),
    }
}
