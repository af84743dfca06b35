//! Command-line front end: parses source documents, dispatches to the
//! solvers, and renders results as aligned tables, CSV, or JSON-like
//! structured text. Machine-readable numbers are always exact `p/q`
//! strings; decimal columns are advisory renderings to twelve significant
//! digits. Identical inputs and flags produce byte-identical output.
//!
//! Exit codes: 0 success, 1 internal failure or failed verification sweep,
//! 2 parse or validation error, 3 enumeration size limit, 4 infeasible rate
//! request.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::bounds::{best_helper_set_bound, standard_family, BoundKind, BoundOutcome, BoundReport};
use crate::capacity::{
    capacity_curve, cs_at_rate_with_slope, cs_unconstrained, gk_zero_rate, rco, rco_with_dual,
    rs_at_key_rate, CapacityCurve, CapacityOptions, CapacityPoint, SolveStrategy,
};
use crate::linear_source::{counterexample_report, rco_linear, Gf2, Gf2Matrix, LinearSource};
use crate::model::{Edge, HypergraphSource, SubsetMask};
use crate::rat::{decimal, format_rational, parse_rational, rint, Rational};
use crate::verify::{run_all, RandomEnsembleSpec};
use crate::{Error, Result};

/// Exit code for a library error, per the contract in the module docs.
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::SizeLimit { .. } => 3,
        Error::InfeasibleKeyRate { .. } => 4,
        Error::SeparationLimit { .. } | Error::SeparationStalled => 1,
        _ => 2,
    }
}

// ---------------------------------------------------------------------------
// Source documents

/// A rational in a document: either a plain integer or a `"p/q"` string.
/// Floats are rejected by construction.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RatDoc {
    Int(i64),
    Str(String),
}

impl RatDoc {
    fn to_rational(&self) -> Result<Rational> {
        match self {
            RatDoc::Int(i) => Ok(rint(*i)),
            RatDoc::Str(s) => parse_rational(s),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct EdgeDoc {
    incident: Vec<String>,
    entropy: RatDoc,
}

#[derive(Serialize, Deserialize)]
struct HypergraphDocument {
    vertices: Vec<String>,
    edges: Vec<EdgeDoc>,
    active: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    untrusted: Vec<String>,
    /// 0-based indices into `edges`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    wiretap_edges: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct LinearDocument {
    bits: usize,
    /// One GF(2) matrix per user: rows of 0/1 entries, `bits` columns each.
    observers: IndexMap<String, Vec<Vec<u8>>>,
    active: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    wiretap: Option<Vec<Vec<u8>>>,
}

/// A parsed input document of either kind.
pub enum ParsedSource {
    Hypergraph(HypergraphSource),
    Linear(LinearSource),
}

fn mask_of(labels: &[String], ids: &[String]) -> Result<SubsetMask> {
    let mut mask = SubsetMask::EMPTY;
    for id in ids {
        let Some(i) = labels.iter().position(|l| l == id) else {
            return Err(Error::Parse(format!("unknown vertex id {id:?}")));
        };
        mask = mask.union(SubsetMask::singleton(i));
    }
    Ok(mask)
}

fn to_hypergraph(doc: HypergraphDocument) -> Result<HypergraphSource> {
    let edges = doc
        .edges
        .iter()
        .map(|e| {
            Ok(Edge::new(
                mask_of(&doc.vertices, &e.incident)?,
                e.entropy.to_rational()?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let active = mask_of(&doc.vertices, &doc.active)?;
    let untrusted = mask_of(&doc.vertices, &doc.untrusted)?;
    HypergraphSource::new(doc.vertices, edges, active, untrusted, doc.wiretap_edges)
}

fn to_matrix(bits: usize, rows: &[Vec<u8>]) -> Result<Gf2Matrix> {
    let slices: Vec<&[u8]> = rows.iter().map(|r| r.as_slice()).collect();
    Gf2Matrix::from_bits(bits, &slices)
}

fn to_linear(doc: LinearDocument) -> Result<LinearSource> {
    let labels: Vec<String> = doc.observers.keys().cloned().collect();
    let observers = doc
        .observers
        .values()
        .map(|rows| to_matrix(doc.bits, rows))
        .collect::<Result<Vec<_>>>()?;
    let active = mask_of(&labels, &doc.active)?;
    let wiretap = match &doc.wiretap {
        Some(rows) => Some(to_matrix(doc.bits, rows)?),
        None => None,
    };
    LinearSource::new(labels, doc.bits, observers, active, wiretap)
}

/// Parses a source document; the kind is detected by its fields
/// (`observers` marks a linear source, `edges` a hypergraphical one).
pub fn parse_source_document(text: &str) -> Result<ParsedSource> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let is_linear = value.get("observers").is_some();
    if is_linear {
        let doc: LinearDocument =
            serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(ParsedSource::Linear(to_linear(doc)?))
    } else {
        let doc: HypergraphDocument =
            serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(ParsedSource::Hypergraph(to_hypergraph(doc)?))
    }
}

/// Renders a hypergraphical source in the input document format; the
/// output re-parses to an equivalent source.
pub fn render_hypergraph_document(src: &HypergraphSource) -> String {
    let ids = |mask: SubsetMask| -> Vec<String> {
        mask.iter().map(|i| src.label(i).to_string()).collect()
    };
    let doc = HypergraphDocument {
        vertices: src.labels().to_vec(),
        edges: src
            .edges()
            .iter()
            .map(|e| EdgeDoc {
                incident: ids(e.incidence),
                entropy: RatDoc::Str(format_rational(&e.weight)),
            })
            .collect(),
        active: ids(src.active()),
        untrusted: ids(src.untrusted()),
        wiretap_edges: src.wiretap().iter().copied().collect(),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("document serialization");
    text.push('\n');
    text
}

/// Renders a linear source in the input document format.
pub fn render_linear_document(src: &LinearSource) -> String {
    let bits_of = |m: &Gf2Matrix| -> Vec<Vec<u8>> {
        m.rows()
            .iter()
            .map(|row| row.iter().map(|&Gf2(b)| b as u8).collect())
            .collect()
    };
    let doc = LinearDocument {
        bits: src.base_bits(),
        observers: (0..src.user_count())
            .map(|i| (src.label(i).to_string(), bits_of(src.observer(i))))
            .collect(),
        active: src.active().iter().map(|i| src.label(i).to_string()).collect(),
        wiretap: src.wiretap().map(bits_of),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("document serialization");
    text.push('\n');
    text
}

fn read_source(path: &Path) -> Result<ParsedSource> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_source_document(&text)
}

// ---------------------------------------------------------------------------
// Output rendering

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, ValueEnum)]
pub enum OutputFormat {
    /// Aligned human-readable columns.
    #[default]
    Table,
    /// Comma-separated values with a header row.
    Csv,
    /// A JSON array with one object per row.
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, ValueEnum)]
pub enum StrategyArg {
    /// Cutting-plane loop; constraints generated on demand.
    #[default]
    Lazy,
    /// Materialize every subset constraint up front.
    Eager,
}

struct Table {
    headers: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl Table {
    fn new(headers: Vec<&'static str>) -> Self {
        Table {
            headers,
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Table => self.render_table(),
            OutputFormat::Csv => self.render_csv(),
            OutputFormat::Json => self.render_json(),
        }
    }

    fn render_table(&self) -> String {
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let mut s = String::new();
        let mut emit = |cells: Vec<String>| {
            let line = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect::<Vec<_>>()
                .join("  ");
            s.push_str(line.trim_end());
            s.push('\n');
        };
        emit(self.headers.iter().map(|h| h.to_string()).collect());
        emit(widths.iter().map(|&w| "-".repeat(w)).collect());
        for row in &self.rows {
            emit(row.clone());
        }
        s
    }

    fn render_csv(&self) -> String {
        let mut s = String::new();
        s.push_str(
            &self
                .headers
                .iter()
                .map(|h| csv_field(h))
                .collect::<Vec<_>>()
                .join(","),
        );
        s.push('\n');
        for row in &self.rows {
            s.push_str(&row.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(","));
            s.push('\n');
        }
        s
    }

    fn render_json(&self) -> String {
        let mut s = String::from("[\n");
        for (i, row) in self.rows.iter().enumerate() {
            let fields = self
                .headers
                .iter()
                .zip(row)
                .map(|(h, v)| {
                    format!(
                        "{}: {}",
                        serde_json::to_string(h).unwrap(),
                        serde_json::to_string(v).unwrap()
                    )
                })
                .collect::<Vec<_>>()
                .join(", ");
            s.push_str("  {");
            s.push_str(&fields);
            s.push('}');
            if i + 1 < self.rows.len() {
                s.push(',');
            }
            s.push('\n');
        }
        s.push_str("]\n");
        s
    }
}

/// Three-column report: quantity, exact value, advisory decimal.
fn kv_table() -> Table {
    Table::new(vec!["quantity", "exact", "decimal"])
}

fn push_value(t: &mut Table, label: impl Into<String>, v: &Rational) {
    t.push(vec![label.into(), format_rational(v), decimal(v)]);
}

fn push_note(t: &mut Table, label: impl Into<String>, note: &str) {
    t.push(vec![label.into(), note.to_string(), String::new()]);
}

// ---------------------------------------------------------------------------
// Command definitions

const AFTER_HELP: &str = "Input documents are JSON; see SCHEMA.md for the full format. \
Hypergraphical sources list vertices, weighted edges, the active set, and optionally \
untrusted vertices and wiretapped edges (wiretap_edges holds 0-based indices into the \
edges list). Linear sources list GF(2) observation matrices per user. Rationals are \
written as \"p/q\" strings or plain integers, never floats.";

#[derive(Parser)]
#[command(
    name = "skalc",
    version,
    about = "Exact secret key agreement calculator for hypergraphical sources",
    after_help = AFTER_HELP
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct SourceArgs {
    /// Path to the source document (JSON; see SCHEMA.md).
    #[arg(long, value_name = "PATH")]
    input: PathBuf,
    /// Output format.
    #[arg(long, value_enum, default_value_t)]
    format: OutputFormat,
    /// Constraint generation strategy for the exact solver.
    #[arg(long, value_enum, default_value_t)]
    strategy: StrategyArg,
    /// Clamp discussion rates at zero instead of leaving them sign-free
    /// (provably equivalent with two or more active users).
    #[arg(long)]
    nonneg_rates: bool,
}

impl SourceArgs {
    fn opts(&self) -> CapacityOptions {
        CapacityOptions {
            strategy: match self.strategy {
                StrategyArg::Lazy => SolveStrategy::Lazy,
                StrategyArg::Eager => SolveStrategy::Eager,
            },
            nonneg_rates: self.nonneg_rates,
        }
    }

    fn load(&self) -> Result<ParsedSource> {
        read_source(&self.input)
    }

    fn load_hypergraph(&self) -> Result<HypergraphSource> {
        match self.load()? {
            ParsedSource::Hypergraph(s) => Ok(s),
            ParsedSource::Linear(_) => Err(Error::InvalidArgument(
                "this subcommand needs a hypergraphical source document".into(),
            )),
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Minimum total communication rate for omniscience, with an optimal
    /// rate vector and the dual fractional partition.
    Rco(SourceArgs),
    /// Unconstrained secrecy capacity.
    Cs(SourceArgs),
    /// Secrecy capacity under a total discussion budget.
    CsAt {
        #[command(flatten)]
        source: SourceArgs,
        /// Total discussion budget, as "p/q" or an integer.
        #[arg(long, value_name = "R", allow_hyphen_values = true)]
        rate: String,
    },
    /// Minimum total discussion for a target secret key rate.
    RsAt {
        #[command(flatten)]
        source: SourceArgs,
        /// Target key rate, as "p/q" or an integer.
        #[arg(long, value_name = "R_K", allow_hyphen_values = true)]
        key_rate: String,
    },
    /// The full rate-capacity curve as breakpoints and slopes.
    Curve {
        #[command(flatten)]
        source: SourceArgs,
        /// Also write the breakpoints as CSV to this path.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Secrecy capacity without any discussion.
    Gk(SourceArgs),
    /// Certified capacity bounds at a discussion budget, with gaps against
    /// the exact value.
    Bounds {
        #[command(flatten)]
        source: SourceArgs,
        /// Discussion budget the upper bounds are evaluated at.
        #[arg(long, value_name = "R", allow_hyphen_values = true)]
        rate: String,
        /// Helper users (comma-separated ids) for the helper-set lower
        /// bound; requires --key-rate.
        #[arg(long, requires = "key_rate")]
        helpers: Option<String>,
        /// Key rate for the helper-set lower bound; requires --helpers.
        #[arg(long, value_name = "R_K", requires = "helpers", allow_hyphen_values = true)]
        key_rate: Option<String>,
    },
    /// Remove untrusted users and wiretapped edges, writing the reduced
    /// source as a new document.
    Reduce {
        #[command(flatten)]
        source: SourceArgs,
        /// Write the reduced document here instead of stdout.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// A five-user linear source on which the communication-complexity
    /// lower bound is provably loose.
    Counterexample {
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Randomized self-checks: duality, nonnegativity, achievability, and
    /// lazy/eager equivalence sweeps.
    Verify {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        instances: usize,
        /// Directory for failure-reproduction documents.
        #[arg(long, value_name = "DIR", default_value = ".")]
        artifacts_dir: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
}

// ---------------------------------------------------------------------------
// Command handlers

fn lambda_rows(t: &mut Table, src: &HypergraphSource, lambda: &crate::partitions::FractionalAssignment) {
    for (b, w) in lambda.iter() {
        push_value(t, format!("lambda[{}]", src.set_to_string(b)), w);
    }
}

fn witness_rows(t: &mut Table, src: &HypergraphSource, point: &CapacityPoint) {
    for (e, edge) in src.edges().iter().enumerate() {
        push_value(
            t,
            format!("x[{e}: {}]", src.set_to_string(edge.incidence)),
            &point.x[e],
        );
    }
    for (i, r) in point.r.iter().enumerate() {
        push_value(t, format!("r[{}]", src.label(i)), r);
    }
    lambda_rows(t, src, &point.lambda);
}

fn cmd_rco(args: &SourceArgs) -> Result<String> {
    let mut t = kv_table();
    match args.load()? {
        ParsedSource::Hypergraph(src) => {
            let reduced = src.reduce_for_adversaries()?;
            let (value, rates, lambda) = if reduced.active().len() >= 2 {
                let (v, r, l) = rco_with_dual(&src, &args.opts())?;
                (v, r, Some(l))
            } else {
                let (v, r) = rco(&src, &args.opts())?;
                (v, r, None)
            };
            push_value(&mut t, "R_CO", &value);
            for (i, r) in rates.iter().enumerate() {
                push_value(&mut t, format!("r[{}]", reduced.label(i)), r);
            }
            if let Some(lambda) = lambda {
                lambda_rows(&mut t, &reduced, &lambda);
            }
        }
        ParsedSource::Linear(src) => {
            push_value(&mut t, "R_CO", &rco_linear(&src)?);
        }
    }
    Ok(t.render(args.format))
}

fn cmd_cs(args: &SourceArgs) -> Result<String> {
    let mut t = kv_table();
    match args.load()? {
        ParsedSource::Hypergraph(src) => {
            let value = cs_unconstrained(&src, &args.opts())?;
            push_value(&mut t, "C_S", &value);
            let reduced = src.reduce_for_adversaries()?;
            let (_, _, lambda) = rco_with_dual(&src, &args.opts())?;
            lambda_rows(&mut t, &reduced, &lambda);
        }
        ParsedSource::Linear(src) => {
            let value = src.total_entropy() - rco_linear(&src)?;
            push_value(&mut t, "C_S", &value);
        }
    }
    Ok(t.render(args.format))
}

fn cmd_cs_at(args: &SourceArgs, rate: &str) -> Result<String> {
    let src = args.load_hypergraph()?;
    let r = parse_rational(rate)?;
    let (point, slope) = cs_at_rate_with_slope(&src, &r, &args.opts())?;
    let reduced = src.reduce_for_adversaries()?;
    let mut t = kv_table();
    push_value(&mut t, "R", &r);
    push_value(&mut t, "C_S(R)", &point.value);
    push_value(&mut t, "attained rate", &point.attained_rate());
    push_value(&mut t, "slope", &slope);
    witness_rows(&mut t, &reduced, &point);
    Ok(t.render(args.format))
}

fn cmd_rs_at(args: &SourceArgs, key_rate: &str) -> Result<String> {
    let src = args.load_hypergraph()?;
    let r_k = parse_rational(key_rate)?;
    let (value, point) = rs_at_key_rate(&src, &r_k, &args.opts())?;
    let reduced = src.reduce_for_adversaries()?;
    let mut t = kv_table();
    push_value(&mut t, "r_K", &r_k);
    push_value(&mut t, "R_S(r_K)", &value);
    push_value(&mut t, "achieved key rate", &point.value);
    witness_rows(&mut t, &reduced, &point);
    Ok(t.render(args.format))
}

fn curve_table(curve: &CapacityCurve) -> Table {
    let mut t = Table::new(vec!["R", "C_S(R)", "R_decimal", "C_S_decimal"]);
    for (r, v) in curve.breakpoints() {
        t.push(vec![
            format_rational(r),
            format_rational(v),
            decimal(r),
            decimal(v),
        ]);
    }
    t
}

fn cmd_curve(args: &SourceArgs, out: Option<&Path>) -> Result<String> {
    let src = args.load_hypergraph()?;
    let curve = capacity_curve(&src, &args.opts())?;
    let t = curve_table(&curve);
    if let Some(path) = out {
        std::fs::write(path, t.render_csv())
            .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))?;
    }
    let mut s = t.render(args.format);
    if args.format == OutputFormat::Table {
        let mut slopes = Table::new(vec!["segment", "slope"]);
        for (i, m) in curve.slopes().iter().enumerate() {
            slopes.push(vec![format!("{i}"), format_rational(m)]);
        }
        s.push('\n');
        s.push_str(&slopes.render_table());
    }
    Ok(s)
}

fn cmd_gk(args: &SourceArgs) -> Result<String> {
    let src = args.load_hypergraph()?;
    let mut t = kv_table();
    push_value(&mut t, "C_S(0)", &gk_zero_rate(&src)?);
    Ok(t.render(args.format))
}

fn kind_name(kind: BoundKind) -> &'static str {
    match kind {
        BoundKind::CapacityUpper => "capacity upper",
        BoundKind::SlopeUpper => "slope upper",
        BoundKind::HelperRateLower => "helper rate lower",
    }
}

fn bound_row(t: &mut Table, report: &BoundReport) {
    let (value, dec, certificate) = match &report.outcome {
        BoundOutcome::Bound(v) => {
            let cert = report
                .params
                .iter()
                .map(|(k, v)| format!("{k} = {v}"))
                .collect::<Vec<_>>()
                .join("; ");
            (format_rational(v), decimal(v), cert)
        }
        BoundOutcome::NotApplicable(reason) => {
            ("n/a".to_string(), String::new(), format!("not applicable: {reason}"))
        }
    };
    t.push(vec![
        report.name.to_string(),
        kind_name(report.kind).to_string(),
        value,
        dec,
        report.exact.as_ref().map(format_rational).unwrap_or_default(),
        report.gap.as_ref().map(format_rational).unwrap_or_default(),
        report
            .tight
            .map(|b| if b { "yes" } else { "no" }.to_string())
            .unwrap_or_default(),
        certificate,
    ]);
}

fn cmd_bounds(
    args: &SourceArgs,
    rate: &str,
    helpers: Option<&str>,
    key_rate: Option<&str>,
) -> Result<String> {
    let src = args.load_hypergraph()?.reduce_for_adversaries()?;
    let r = parse_rational(rate)?;
    let mut t = Table::new(vec![
        "bound",
        "kind",
        "value",
        "decimal",
        "exact",
        "gap",
        "tight",
        "certificate",
    ]);
    for report in standard_family(&src, &r)? {
        bound_row(&mut t, &report);
    }
    if let (Some(helpers), Some(key_rate)) = (helpers, key_rate) {
        let ids: Vec<String> = helpers
            .split(',')
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty())
            .collect();
        let s = mask_of(src.labels(), &ids)?;
        let r_k = parse_rational(key_rate)?;
        bound_row(&mut t, &best_helper_set_bound(&src, s, &r_k)?);
    }
    Ok(t.render(args.format))
}

fn cmd_reduce(args: &SourceArgs, out: Option<&Path>) -> Result<String> {
    let src = args.load_hypergraph()?;
    let doc = render_hypergraph_document(&src.reduce_for_adversaries()?);
    if let Some(path) = out {
        std::fs::write(path, &doc)
            .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))?;
        Ok(format!("reduced source written to {}\n", path.display()))
    } else {
        Ok(doc)
    }
}

fn cmd_counterexample(format: OutputFormat) -> Result<String> {
    let report = counterexample_report()?;
    let mut t = kv_table();
    push_value(&mut t, "H(Z_V)", &report.total_entropy);
    push_value(&mut t, "R_CO", &report.rco);
    push_value(&mut t, "C_S", &report.capacity);
    push_value(&mut t, "R_S at r_K = C_S (known)", &report.rs_stated);
    for probe in &report.probes {
        let label = format!("lower bound via W = {}", probe.label);
        if probe.feasible {
            push_value(&mut t, label, &probe.value);
        } else {
            push_note(&mut t, label, "infeasible: W cannot deliver the key rate");
        }
    }
    push_value(&mut t, "gap to the stated complexity", &report.gap());
    Ok(t.render(format))
}

fn cmd_verify(
    seed: u64,
    instances: usize,
    artifacts_dir: &Path,
    format: OutputFormat,
    out: &mut dyn std::io::Write,
    err: &mut dyn std::io::Write,
) -> Result<i32> {
    let spec = RandomEnsembleSpec::with_seed(seed);
    let reports = run_all(&spec, instances)?;
    let mut t = Table::new(vec!["sweep", "instances", "checks", "min", "status"]);
    let mut failed = false;
    for report in &reports {
        t.push(vec![
            report.what.to_string(),
            report.instances.to_string(),
            report.checks.to_string(),
            report
                .min_observed
                .as_ref()
                .map(format_rational)
                .unwrap_or_default(),
            if report.passed() { "pass" } else { "FAIL" }.to_string(),
        ]);
        for f in &report.failures {
            failed = true;
            std::fs::create_dir_all(artifacts_dir).map_err(|e| {
                Error::InvalidArgument(format!("cannot create {}: {e}", artifacts_dir.display()))
            })?;
            let path = artifacts_dir.join(format!(
                "skalc-failure-{}-{}-{}.json",
                report.what, f.seed, f.instance
            ));
            std::fs::write(&path, &f.document).map_err(|e| {
                Error::InvalidArgument(format!("cannot write {}: {e}", path.display()))
            })?;
            let _ = writeln!(
                err,
                "FAIL {} instance {} (seed {}): {}; reproduction written to {}",
                report.what,
                f.instance,
                f.seed,
                f.what,
                path.display()
            );
        }
    }
    print_to(out, &t.render(format))?;
    Ok(if failed { 1 } else { 0 })
}

fn print_to(w: &mut dyn std::io::Write, s: &str) -> Result<()> {
    w.write_all(s.as_bytes())
        .map_err(|e| Error::InvalidArgument(format!("cannot write output: {e}")))
}

/// Runs the CLI with explicit argument and output streams; returns the
/// process exit code. `main` is a thin wrapper over this, and tests drive
/// it in-process.
pub fn run_from<I, T>(args: I, out: &mut dyn std::io::Write, err: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = out.write_all(rendered.as_bytes());
                0
            } else {
                let _ = err.write_all(rendered.as_bytes());
                2
            };
        }
    };
    let outcome: Result<i32> = (|| {
        let text = match &cli.cmd {
            Cmd::Rco(a) => cmd_rco(a)?,
            Cmd::Cs(a) => cmd_cs(a)?,
            Cmd::CsAt { source, rate } => cmd_cs_at(source, rate)?,
            Cmd::RsAt { source, key_rate } => cmd_rs_at(source, key_rate)?,
            Cmd::Curve { source, out } => cmd_curve(source, out.as_deref())?,
            Cmd::Gk(a) => cmd_gk(a)?,
            Cmd::Bounds {
                source,
                rate,
                helpers,
                key_rate,
            } => cmd_bounds(source, rate, helpers.as_deref(), key_rate.as_deref())?,
            Cmd::Reduce { source, out } => cmd_reduce(source, out.as_deref())?,
            Cmd::Counterexample { format } => cmd_counterexample(*format)?,
            Cmd::Verify {
                seed,
                instances,
                artifacts_dir,
                format,
            } => {
                return cmd_verify(*seed, *instances, artifacts_dir, *format, out, err);
            }
        };
        print_to(out, &text)?;
        Ok(0)
    })();
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            error_exit_code(&e)
        }
    }
}
