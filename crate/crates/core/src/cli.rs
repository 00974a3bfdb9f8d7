//! File ingestion, command dispatch and report rendering for the `frel`
//! binary.
//!
//! Matrix files hold one comma-separated row per line; right-hand-side files
//! hold one value per line. Blank lines and lines starting with `#` are
//! skipped in both.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::algebra::{TNormKind, UnitValue};
use crate::chebyshev::{self, ChebyshevReport, DeltaMethod};
use crate::error::Error;
use crate::oracle::{self, OracleConfig, GRID_MAX_ROWS};
use crate::system::{SystemInstance, UnitMatrix, UnitVector, DEFAULT_TOLERANCE};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INCONSISTENT: i32 = 2;

/// Validation tolerance for reports before they are emitted.
const REPORT_TOLERANCE: f64 = 1e-9;
/// Number of random shifts probed by the `oracle` command.
const MONOTONE_PROBES: usize = 32;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: value {value} lies outside [0, 1]")]
    Domain { line: usize, value: f64 },

    #[error(transparent)]
    Library(#[from] Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Check,
    Solve,
    Distance,
    Approx,
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunRequest {
    pub command: Command,
    pub matrix_path: PathBuf,
    pub rhs_path: PathBuf,
    pub kind: TNormKind,
    pub tolerance: f64,
    pub output_format: OutputFormat,
    pub seed: u64,
}

impl RunRequest {
    pub fn new(command: Command, matrix_path: impl Into<PathBuf>, rhs_path: impl Into<PathBuf>, kind: TNormKind) -> Self {
        RunRequest {
            command,
            matrix_path: matrix_path.into(),
            rhs_path: rhs_path.into(),
            kind,
            tolerance: DEFAULT_TOLERANCE,
            output_format: OutputFormat::Text,
            seed: 0,
        }
    }
}

/// Outcome of one invocation: what goes to stdout, stderr, and the exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExitReport {
    pub exit_code: i32,
    pub payload: String,
    pub diagnostics: Vec<String>,
}

impl ExitReport {
    fn failure(err: impl std::fmt::Display) -> Self {
        ExitReport {
            exit_code: EXIT_ERROR,
            payload: String::new(),
            diagnostics: vec![format!("error: {err}")],
        }
    }
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_value(line: usize, field: &str) -> Result<UnitValue, CliError> {
    let field = field.trim();
    let value: f64 = field.parse().map_err(|_| CliError::Parse {
        line,
        message: format!("malformed number `{field}`"),
    })?;
    if !value.is_finite() {
        return Err(CliError::Parse {
            line,
            message: format!("non-finite number `{field}`"),
        });
    }
    UnitValue::new(value).map_err(|_| CliError::Domain { line, value })
}

pub fn parse_matrix_str(text: &str) -> Result<UnitMatrix, CliError> {
    let mut data = Vec::new();
    let mut cols = None;
    let mut rows = 0;
    for (line, content) in data_lines(text) {
        let row = content.split(',').map(|f| parse_value(line, f)).collect::<Result<Vec<_>, _>>()?;
        match cols {
            None => cols = Some(row.len()),
            Some(c) if c != row.len() => {
                return Err(CliError::Parse {
                    line,
                    message: format!("ragged row: expected {c} values, found {}", row.len()),
                })
            }
            _ => {}
        }
        data.extend(row);
        rows += 1;
    }
    let cols = cols.ok_or(CliError::Parse { line: 0, message: "no matrix rows".into() })?;
    Ok(UnitMatrix::new(rows, cols, data)?)
}

pub fn parse_rhs_str(text: &str) -> Result<UnitVector, CliError> {
    let values = data_lines(text)
        .map(|(line, content)| {
            if content.contains(',') {
                return Err(CliError::Parse {
                    line,
                    message: "second member files take one value per line".into(),
                });
            }
            parse_value(line, content)
        })
        .collect::<Result<Vec<_>, _>>()?;
    if values.is_empty() {
        return Err(CliError::Parse { line: 0, message: "no second-member values".into() });
    }
    Ok(UnitVector::new(values)?)
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

pub fn parse_matrix_file(path: impl AsRef<Path>) -> Result<UnitMatrix, CliError> {
    parse_matrix_str(&read(path.as_ref())?)
}

pub fn parse_rhs_file(path: impl AsRef<Path>) -> Result<UnitVector, CliError> {
    parse_rhs_str(&read(path.as_ref())?)
}

/// Renders a matrix in the input format. Values use the shortest decimal
/// that parses back to the same `f64`.
pub fn write_matrix(m: &UnitMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|v| v.get().to_string()).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn write_rhs(v: &UnitVector) -> String {
    v.iter().map(|x| format!("{x}\n")).collect()
}

/// JSON number with 17 significant digits.
#[derive(Clone, Copy, Debug)]
struct Num(f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let raw = serde_json::value::RawValue::from_string(format!("{:.16e}", self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(serializer)
    }
}

fn nums(v: &UnitVector) -> Vec<Num> {
    v.iter().map(Num).collect()
}

#[derive(Debug, Default, Serialize)]
struct Payload {
    command: &'static str,
    tnorm: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    method: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    consistent: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    residual: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    delta: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    row_deltas: Option<Vec<Num>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    greatest_approx: Option<Vec<Num>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    greatest_solution: Option<Vec<Num>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_form_delta: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    grid_delta: Option<Num>,
    #[serde(skip_serializing_if = "Option::is_none")]
    monotone_probes_ok: Option<bool>,
}

impl Payload {
    fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string(self).expect("payload serializes");
                s.push('\n');
                s
            }
            OutputFormat::Text => self.render_text(),
        }
    }

    fn render_text(&self) -> String {
        fn vec4(v: &[Num]) -> String {
            v.iter().map(|x| format!("{:.4}", x.0)).collect::<Vec<_>>().join(" ")
        }
        let mut out = String::new();
        let _ = writeln!(out, "tnorm: {}", self.tnorm);
        if let Some(m) = self.method {
            let _ = writeln!(out, "method: {m}");
        }
        if let Some(c) = self.consistent {
            let _ = writeln!(out, "consistent: {c}");
        }
        let scalars = [
            ("residual", self.residual),
            ("delta", self.delta),
            ("closed_form_delta", self.closed_form_delta),
            ("grid_delta", self.grid_delta),
        ];
        for (name, value) in scalars {
            if let Some(v) = value {
                let _ = writeln!(out, "{name}: {:.4}", v.0);
            }
        }
        let vectors = [
            ("row_deltas", &self.row_deltas),
            ("greatest_approx", &self.greatest_approx),
            ("greatest_solution", &self.greatest_solution),
        ];
        for (name, value) in vectors {
            if let Some(v) = value {
                let _ = writeln!(out, "{name}: {}", vec4(v));
            }
        }
        if let Some(ok) = self.monotone_probes_ok {
            let _ = writeln!(out, "monotone_probes_ok: {ok}");
        }
        out
    }
}

fn command_name(c: Command) -> &'static str {
    match c {
        Command::Check => "check",
        Command::Solve => "solve",
        Command::Distance => "distance",
        Command::Approx => "approx",
        Command::Oracle => "oracle",
    }
}

/// Loads the files named by `req` into a system instance.
pub fn load_instance(req: &RunRequest) -> Result<SystemInstance, CliError> {
    let a = parse_matrix_file(&req.matrix_path)?;
    let b = parse_rhs_file(&req.rhs_path)?;
    Ok(SystemInstance::new(a, b, req.kind)?)
}

/// Row distances: closed form where available, bisection otherwise.
fn row_deltas(inst: &SystemInstance) -> Result<(UnitVector, DeltaMethod), Error> {
    match inst.kind() {
        TNormKind::Minimum => Ok((
            oracle::row_deltas_by_bisection(inst, &OracleConfig::default())?,
            DeltaMethod::Bisection,
        )),
        _ => Ok((chebyshev::row_deltas(inst)?, DeltaMethod::ClosedForm)),
    }
}

fn approx_report(inst: &SystemInstance) -> Result<ChebyshevReport, Error> {
    let (rows, method) = row_deltas(inst)?;
    let report = chebyshev::approximation_from_row_deltas(inst, rows, method)?;
    report.validate(inst, REPORT_TOLERANCE)?;
    Ok(report)
}

/// Random shifts `d1 <= d2` must never have `P(d1)` true and `P(d2)` false.
fn monotone_probes(inst: &SystemInstance, seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..MONOTONE_PROBES).all(|_| {
        let (p, q): (f64, f64) = (rng.gen(), rng.gen());
        let (lo, hi) = if p <= q { (p, q) } else { (q, p) };
        !oracle::feasible(inst, lo) || oracle::feasible(inst, hi)
    })
}

pub fn run(req: &RunRequest) -> ExitReport {
    if !(req.tolerance >= 0.0) {
        return ExitReport::failure(format!("tolerance must be >= 0, got {}", req.tolerance));
    }
    let inst = match load_instance(req) {
        Ok(inst) => inst,
        Err(e) => return ExitReport::failure(e),
    };
    match execute(req, &inst) {
        Ok((payload, exit_code, diagnostics)) => ExitReport {
            exit_code,
            payload: payload.render(req.output_format),
            diagnostics,
        },
        Err(e) => ExitReport::failure(e),
    }
}

fn execute(req: &RunRequest, inst: &SystemInstance) -> Result<(Payload, i32, Vec<String>), Error> {
    let mut payload = Payload {
        command: command_name(req.command),
        tnorm: inst.kind().name(),
        ..Payload::default()
    };
    let mut diagnostics = Vec::new();
    let mut exit_code = EXIT_OK;
    match req.command {
        Command::Check | Command::Solve => {
            let verdict = inst.check_consistency(req.tolerance)?;
            payload.consistent = Some(verdict.consistent);
            payload.residual = Some(Num(verdict.residual));
            if verdict.consistent || req.command == Command::Check {
                payload.greatest_solution = Some(nums(&verdict.e));
            }
            if !verdict.consistent {
                exit_code = EXIT_INCONSISTENT;
                if req.command == Command::Solve {
                    diagnostics.push(format!(
                        "error: system is inconsistent (residual {:e} > tolerance {:e})",
                        verdict.residual, req.tolerance
                    ));
                }
            }
        }
        Command::Distance => {
            let (rows, method) = row_deltas(inst)?;
            payload.method = Some(method.label());
            payload.delta = Some(Num(rows.max().get()));
            payload.row_deltas = Some(nums(&rows));
        }
        Command::Approx => {
            let report = approx_report(inst)?;
            payload.method = Some(report.method.label());
            payload.delta = Some(Num(report.delta.get()));
            payload.row_deltas = Some(nums(&report.row_deltas));
            payload.greatest_approx = Some(nums(&report.greatest_approx));
            payload.greatest_solution = Some(nums(&report.greatest_solution));
        }
        Command::Oracle => {
            let cfg = OracleConfig::default();
            payload.method = Some(DeltaMethod::Bisection.label());
            payload.delta = Some(Num(oracle::delta_by_bisection(inst, &cfg)?.get()));
            if inst.kind() != TNormKind::Minimum {
                payload.closed_form_delta = Some(Num(chebyshev::chebyshev_distance(inst)?.get()));
            }
            if inst.rows() <= GRID_MAX_ROWS {
                payload.grid_delta = Some(Num(oracle::delta_by_grid(inst, &cfg)?.get()));
            }
            payload.monotone_probes_ok = Some(monotone_probes(inst, req.seed));
        }
    }
    Ok((payload, exit_code, diagnostics))
}
