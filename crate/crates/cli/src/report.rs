//! Report rows and their CSV/JSON encodings.

use std::io::Write;
use std::path::Path;

use entshare::bounds::BoundReport;
use serde::{Deserialize, Serialize};

use crate::config::Format;
use crate::CliError;

/// Significant digits of every real in CSV output.
pub const CSV_DIGITS: usize = 12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PurifyRow {
    pub code: String,
    pub n: usize,
    pub m: usize,
    pub t: usize,
    pub p: f64,
    pub trials: u64,
    pub passes: u64,
    pub successes: u64,
    pub pass_rate: f64,
    pub conditional_fidelity: Option<f64>,
    pub ci_low: Option<f64>,
    pub ci_high: Option<f64>,
    pub disagreements: u64,
    pub exact_pass_probability: Option<f64>,
    pub exact_conditional_fidelity: Option<f64>,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TeleportRow {
    pub d: usize,
    pub fidelity: f64,
    pub inputs: u64,
    pub predicted: f64,
    pub min_overlap: f64,
    pub max_overlap: f64,
    pub max_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwirlRow {
    pub d: usize,
    pub samples: u64,
    pub isotropic_fidelity: f64,
    pub trace_distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShareRow {
    pub code: String,
    pub p: f64,
    pub trials: u64,
    pub pass_rate: f64,
    pub block_fidelity: f64,
    pub blocks: usize,
    pub resource_fidelity: f64,
    pub eps: f64,
    pub m: usize,
    pub n: usize,
    pub overlap: f64,
    pub fidelity: f64,
    pub ghz_example_fidelity: Option<f64>,
    pub ghz_gap: Option<f64>,
    pub theorem1_bound: f64,
    pub theorem1_slack: f64,
    pub satisfied: bool,
}

/// Rows of one run, tagged with the command that produced them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", content = "rows", rename_all = "lowercase")]
pub enum Rows {
    Purify(Vec<PurifyRow>),
    Teleport(Vec<TeleportRow>),
    Twirl(Vec<TwirlRow>),
    Bounds(Vec<BoundReport>),
    Share(Vec<ShareRow>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub seed: u64,
    pub version: String,
    /// Seconds since the Unix epoch; not part of the reproducible output.
    pub timestamp: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub meta: Meta,
    #[serde(flatten)]
    pub rows: Rows,
}

impl Document {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("invalid report JSON: {e}")))
    }

    pub fn to_csv(&self) -> String {
        match &self.rows {
            Rows::Purify(r) => csv(r),
            Rows::Teleport(r) => csv(r),
            Rows::Twirl(r) => csv(r),
            Rows::Bounds(r) => csv(r),
            Rows::Share(r) => csv(r),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

/// A type with a fixed CSV layout.
pub trait Record {
    fn header() -> &'static [&'static str];
    fn cells(&self) -> Vec<String>;
}

/// Header row followed by one line per record, `\n`-terminated.
pub fn csv<R: Record>(rows: &[R]) -> String {
    let mut out = R::header().join(",");
    out.push('\n');
    for r in rows {
        out.push_str(&r.cells().join(","));
        out.push('\n');
    }
    out
}

/// Fixed-point decimal with [`CSV_DIGITS`] significant digits.
pub fn real(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let x = if x == 0.0 { 0.0 } else { x };
    let exponent = if x == 0.0 { 0 } else { x.abs().log10().floor() as i64 };
    let decimals = (CSV_DIGITS as i64 - 1 - exponent).max(0) as usize;
    let s = format!("{x:.decimals$}");
    // rounding up to the next power of ten adds a digit
    let digits: String = s.chars().filter(char::is_ascii_digit).collect();
    if decimals > 0 && digits.trim_start_matches('0').len() > CSV_DIGITS {
        let decimals = decimals - 1;
        return format!("{x:.decimals$}");
    }
    s
}

fn opt_real(x: Option<f64>) -> String {
    x.map(real).unwrap_or_default()
}

fn text(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl Record for PurifyRow {
    fn header() -> &'static [&'static str] {
        &[
            "code",
            "n",
            "m",
            "t",
            "p",
            "trials",
            "passes",
            "successes",
            "pass_rate",
            "conditional_fidelity",
            "ci_low",
            "ci_high",
            "disagreements",
            "exact_pass_probability",
            "exact_conditional_fidelity",
            "seed",
        ]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            text(&self.code),
            self.n.to_string(),
            self.m.to_string(),
            self.t.to_string(),
            real(self.p),
            self.trials.to_string(),
            self.passes.to_string(),
            self.successes.to_string(),
            real(self.pass_rate),
            opt_real(self.conditional_fidelity),
            opt_real(self.ci_low),
            opt_real(self.ci_high),
            self.disagreements.to_string(),
            opt_real(self.exact_pass_probability),
            opt_real(self.exact_conditional_fidelity),
            self.seed.to_string(),
        ]
    }
}

impl Record for TeleportRow {
    fn header() -> &'static [&'static str] {
        &["d", "F", "inputs", "predicted", "min_overlap", "max_overlap", "max_error"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.d.to_string(),
            real(self.fidelity),
            self.inputs.to_string(),
            real(self.predicted),
            real(self.min_overlap),
            real(self.max_overlap),
            real(self.max_error),
        ]
    }
}

impl Record for TwirlRow {
    fn header() -> &'static [&'static str] {
        &["d", "samples", "isotropic_fidelity", "trace_distance"]
    }

    fn cells(&self) -> Vec<String> {
        vec![self.d.to_string(), self.samples.to_string(), real(self.isotropic_fidelity), real(self.trace_distance)]
    }
}

impl Record for BoundReport {
    fn header() -> &'static [&'static str] {
        &["name", "simulated", "bound", "slack", "satisfied", "parameters"]
    }

    fn cells(&self) -> Vec<String> {
        let params: Vec<String> = self.parameters.iter().map(|(k, v)| format!("{k}={}", real(*v))).collect();
        vec![
            text(&self.name),
            real(self.simulated),
            real(self.bound),
            real(self.slack),
            self.satisfied.to_string(),
            text(&params.join(";")),
        ]
    }
}

impl Record for ShareRow {
    fn header() -> &'static [&'static str] {
        &[
            "code",
            "p",
            "trials",
            "pass_rate",
            "block_fidelity",
            "blocks",
            "resource_fidelity",
            "eps",
            "m",
            "N",
            "overlap",
            "fidelity",
            "ghz_example_fidelity",
            "ghz_gap",
            "theorem1_bound",
            "theorem1_slack",
            "satisfied",
        ]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            text(&self.code),
            real(self.p),
            self.trials.to_string(),
            real(self.pass_rate),
            real(self.block_fidelity),
            self.blocks.to_string(),
            real(self.resource_fidelity),
            real(self.eps),
            self.m.to_string(),
            self.n.to_string(),
            real(self.overlap),
            real(self.fidelity),
            opt_real(self.ghz_example_fidelity),
            opt_real(self.ghz_gap),
            real(self.theorem1_bound),
            real(self.theorem1_slack),
            self.satisfied.to_string(),
        ]
    }
}

/// Writes the rendered document to `path`, or to stdout when `path` is `None`.
pub fn emit(doc: &Document, format: Format, path: Option<&Path>) -> Result<(), CliError> {
    let body = doc.render(format);
    match path {
        Some(p) => std::fs::write(p, body).map_err(|e| CliError::Config(format!("cannot write {}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| CliError::Config(format!("cannot write to stdout: {e}"))),
    }
}
