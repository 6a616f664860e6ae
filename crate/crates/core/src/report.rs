//! Run configuration, comparison and table reports, and their CSV/JSON
//! renderings.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::asymptotic::{asymptotic_phase, asymptotic_spectrum, expansion_near, far_coefficients, family_grid, NearOptions};
use crate::error::{Error, Result};
use crate::oracle::{bisect_spectrum, oracle_spectrum};
use crate::solver::{full_spectrum, iterate_history, Method, SolverOptions, SpectrumResult};
use crate::symbol::{eval_g, Parity};

/// Largest dimension for which the bisection oracle is run in reports.
pub const ORACLE_CAP: usize = 4096;

/// Errors below this are printed as `< 1e-15`.
pub const DISPLAY_FLOOR: f64 = 1e-15;

pub const SKIPPED: &str = "skipped (n > oracle cap)";

/// Dimensions used by the maximum-error tables.
pub const TABLE_DIMENSIONS: [usize; 5] = [32, 64, 128, 256, 512];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodChoice {
    FixedPoint,
    Asymptotic,
    Oracle,
    All,
}

impl MethodChoice {
    pub fn methods(self) -> Vec<Method> {
        match self {
            MethodChoice::FixedPoint => vec![Method::FixedPoint],
            MethodChoice::Asymptotic => vec![Method::Asymptotic],
            MethodChoice::Oracle => vec![Method::Oracle],
            MethodChoice::All => vec![Method::FixedPoint, Method::Asymptotic, Method::Oracle],
        }
    }
}

impl FromStr for MethodChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fixed_point" => Ok(Self::FixedPoint),
            "asymptotic" => Ok(Self::Asymptotic),
            "oracle" => Ok(Self::Oracle),
            "all" => Ok(Self::All),
            _ => Err(Error::InvalidOption(format!("unknown method `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            _ => Err(Error::InvalidOption(format!("unknown format `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub n: Vec<usize>,
    pub method: MethodChoice,
    pub iters: usize,
    pub tol: f64,
    pub output_path: Option<PathBuf>,
    pub format: Option<Format>,
    pub table: Option<u8>,
    /// Emit a timestamp line and wall-clock timings.
    pub timestamp: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        let s = SolverOptions::default();
        Self {
            n: Vec::new(),
            method: MethodChoice::FixedPoint,
            iters: s.max_iters,
            tol: s.tol,
            output_path: None,
            format: None,
            table: None,
            timestamp: true,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if let Some(&bad) = self.n.iter().find(|&&n| n < 1) {
            return Err(Error::InvalidDimension(bad));
        }
        self.solver_options().validate()?;
        if let Some(t) = self.table {
            if !(1..=3).contains(&t) {
                return Err(Error::InvalidOption(format!("table must be 1, 2 or 3 (got {t})")));
            }
        }
        Ok(())
    }

    pub fn solver_options(&self) -> SolverOptions {
        SolverOptions { max_iters: self.iters, tol: self.tol, record_history: false }
    }

    fn timed(&self, start: Instant) -> Option<f64> {
        self.timestamp.then(|| start.elapsed().as_secs_f64())
    }
}

/// `{:.16e}`: 17 significant digits.
pub fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

/// Scientific notation, or `< 1e-15` below the binary64 display floor.
pub fn format_error(e: f64) -> String {
    if e < DISPLAY_FLOOR {
        "< 1e-15".to_string()
    } else {
        sci(e)
    }
}

pub fn relative_error(value: f64, reference: f64) -> f64 {
    ((value - reference) / reference).abs()
}

/// Spectrum of `T_n` by one method.
pub fn compute_spectrum(n: usize, method: Method, opts: &SolverOptions) -> Result<SpectrumResult> {
    match method {
        Method::FixedPoint => full_spectrum(n, opts),
        Method::Asymptotic => asymptotic_spectrum(n, &NearOptions::default()),
        Method::Oracle => oracle_spectrum(n),
    }
}

fn header(timestamp: Option<&str>) -> String {
    timestamp.map(|t| format!("# generated {t}\n")).unwrap_or_default()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub m: usize,
    pub phi: f64,
    pub lambda: f64,
    pub iters: usize,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub config: RunConfig,
    pub n: usize,
    pub method: Method,
    /// Ascending in `lambda`.
    pub rows: Vec<SpectrumRow>,
    pub runtime_s: Option<f64>,
}

pub fn run_spectrum(config: &RunConfig, n: usize, method: Method) -> Result<SpectrumReport> {
    let start = Instant::now();
    let s = compute_spectrum(n, method, &config.solver_options())?;
    let runtime_s = config.timed(start);
    let rows = s
        .ascending_lambda()
        .into_iter()
        .map(|r| SpectrumRow { m: r.m, phi: r.phi, lambda: r.lambda, iters: r.iters, residual: r.residual })
        .collect();
    Ok(SpectrumReport { config: config.clone(), n, method, rows, runtime_s })
}

impl SpectrumReport {
    pub fn to_csv(&self, timestamp: Option<&str>) -> String {
        let mut out = header(timestamp);
        out.push_str("m,phi,lambda,iters,residual\n");
        for r in &self.rows {
            let _ = writeln!(out, "{},{},{},{},{}", r.m, sci(r.phi), sci(r.lambda), r.iters, sci(r.residual));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "config": self.config,
            "rows": self.rows,
            "summary": {
                "n": self.n,
                "method": self.method,
                "max_rel_error": Value::Null,
                "runtime_s": self.runtime_s,
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorRow {
    pub m: usize,
    pub phi: f64,
    pub lambda_method: f64,
    pub lambda_reference: Option<f64>,
    pub rel_error: Option<f64>,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorSummary {
    pub n: usize,
    pub method: Method,
    /// `oracle`, `fixed_point`, or the skip marker.
    pub reference: String,
    pub max_rel_error: Option<f64>,
    pub worst_m: Option<usize>,
    pub indices: (usize, usize),
    pub runtime_s: Option<f64>,
    pub reference_runtime_s: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub config: RunConfig,
    pub rows: Vec<ErrorRow>,
    pub summary: ErrorSummary,
}

/// Compares `method` against the oracle (or, above [`ORACLE_CAP`], the
/// asymptotic path against the fixed-point solver).
pub fn compare_report(config: &RunConfig, n: usize, method: Method) -> Result<ErrorReport> {
    if method == Method::Oracle {
        return Err(Error::InvalidOption("compare needs a method other than oracle".into()));
    }
    let opts = config.solver_options();
    let start = Instant::now();
    let s = compute_spectrum(n, method, &opts)?;
    let runtime_s = config.timed(start);

    let start = Instant::now();
    let (reference, label): (Option<Vec<f64>>, String) = if n <= ORACLE_CAP {
        let mut asc = bisect_spectrum(n, 0.0)?;
        asc.reverse();
        (Some(asc), Method::Oracle.as_str().into())
    } else if method == Method::Asymptotic {
        (Some(full_spectrum(n, &opts)?.lambdas()), Method::FixedPoint.as_str().into())
    } else {
        (None, SKIPPED.into())
    };
    let reference_runtime_s = reference.as_ref().and_then(|_| config.timed(start));

    let rows: Vec<ErrorRow> = s
        .roots
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let lr = reference.as_ref().map(|v| v[i]);
            ErrorRow {
                m: r.m,
                phi: r.phi,
                lambda_method: r.lambda,
                lambda_reference: lr,
                rel_error: lr.map(|l| relative_error(r.lambda, l)),
                iterations: r.iters,
            }
        })
        .collect();
    let worst = rows
        .iter()
        .filter_map(|r| r.rel_error.map(|e| (r.m, e)))
        .max_by(|a, b| a.1.total_cmp(&b.1));
    Ok(ErrorReport {
        config: config.clone(),
        rows,
        summary: ErrorSummary {
            n,
            method,
            reference: label,
            max_rel_error: worst.map(|w| w.1),
            worst_m: worst.map(|w| w.0),
            indices: (1, n),
            runtime_s,
            reference_runtime_s,
        },
    })
}

impl ErrorReport {
    /// Largest relative error over indices `from..=n`.
    pub fn max_rel_error_from(&self, from: usize) -> Option<f64> {
        self.rows.iter().filter(|r| r.m >= from).filter_map(|r| r.rel_error).reduce(f64::max)
    }

    pub fn to_csv(&self, timestamp: Option<&str>) -> String {
        let mut out = header(timestamp);
        out.push_str("m,phi,lambda_method,lambda_reference,rel_error,iters\n");
        for r in &self.rows {
            let reference = r.lambda_reference.map(sci).unwrap_or_else(|| SKIPPED.into());
            let err = r.rel_error.map(format_error).unwrap_or_default();
            let _ = writeln!(out, "{},{},{},{},{},{}", r.m, sci(r.phi), sci(r.lambda_method), reference, err, r.iterations);
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({ "config": self.config, "rows": self.rows, "summary": self.summary })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationRow {
    pub m: usize,
    pub k: usize,
    pub rel_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaxErrorRow {
    pub n: usize,
    pub max_rel_error: f64,
    pub worst_m: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TableRows {
    Iterations(Vec<IterationRow>),
    MaxError(Vec<MaxErrorRow>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableReport {
    pub config: RunConfig,
    pub table: u8,
    pub rows: TableRows,
    pub runtime_s: Option<f64>,
}

/// Relative eigenvalue error of iterate `k = 1..=10` against the root after
/// 60 iterations, for `n = 200` and `m` in `{1, 100, 200}`.
pub fn iteration_table() -> Result<Vec<IterationRow>> {
    let n = 200;
    let mut rows = Vec::new();
    for m in [1, 100, 200] {
        let h = iterate_history(m, n, 60)?;
        let reference = eval_g(h[60]);
        for (k, phi) in h.iter().enumerate().take(11).skip(1) {
            rows.push(IterationRow { m, k, rel_error: relative_error(eval_g(*phi), reference) });
        }
    }
    Ok(rows)
}

/// Eigenvalue from the far-regime closed form, applied regardless of regime.
pub fn far_path_lambda(m: usize, n: usize) -> f64 {
    let (parity, j) = (Parity::of(m), m.div_ceil(2));
    let c = far_coefficients(family_grid(j, n, parity));
    eval_g(asymptotic_phase(j, n, parity, &c))
}

/// Eigenvalue from the near-regime construction with `steps` inner
/// iterations from zero.
pub fn near_path_lambda(m: usize, n: usize, steps: usize) -> Result<f64> {
    let (parity, j) = (Parity::of(m), m.div_ceil(2));
    let c = expansion_near(j, n, parity, &NearOptions::steps(steps))?;
    Ok(eval_g(asymptotic_phase(j, n, parity, &c)))
}

/// Maximum relative error of the far-regime path over `7..=n` (table 2) or
/// of the near-regime path with four inner steps over `1..=6` (table 3).
pub fn max_error_table(table: u8, dims: &[usize]) -> Result<Vec<MaxErrorRow>> {
    dims.iter()
        .map(|&n| {
            let mut asc = bisect_spectrum(n, 0.0)?;
            asc.reverse();
            let range = if table == 2 { 7..=n } else { 1..=6.min(n) };
            let mut worst = (0, 0.0f64);
            for m in range {
                let l = if table == 2 { far_path_lambda(m, n) } else { near_path_lambda(m, n, 4)? };
                let e = relative_error(l, asc[m - 1]);
                if e > worst.1 {
                    worst = (m, e);
                }
            }
            Ok(MaxErrorRow { n, max_rel_error: worst.1, worst_m: worst.0 })
        })
        .collect()
}

pub fn reproduce_table(table: u8, config: &RunConfig) -> Result<TableReport> {
    let start = Instant::now();
    let rows = match table {
        1 => TableRows::Iterations(iteration_table()?),
        2 | 3 => TableRows::MaxError(max_error_table(table, &TABLE_DIMENSIONS)?),
        _ => return Err(Error::InvalidOption(format!("table must be 1, 2 or 3 (got {table})"))),
    };
    Ok(TableReport { config: config.clone(), table, rows, runtime_s: config.timed(start) })
}

impl TableReport {
    pub fn max_rel_error(&self) -> f64 {
        match &self.rows {
            TableRows::Iterations(r) => r.iter().map(|r| r.rel_error).fold(0.0, f64::max),
            TableRows::MaxError(r) => r.iter().map(|r| r.max_rel_error).fold(0.0, f64::max),
        }
    }

    pub fn to_csv(&self, timestamp: Option<&str>) -> String {
        let mut out = header(timestamp);
        match &self.rows {
            TableRows::Iterations(rows) => {
                out.push_str("m,k,rel_error\n");
                for r in rows {
                    let _ = writeln!(out, "{},{},{}", r.m, r.k, format_error(r.rel_error));
                }
            }
            TableRows::MaxError(rows) => {
                out.push_str("n,max_rel_error,worst_m\n");
                for r in rows {
                    let _ = writeln!(out, "{},{},{}", r.n, format_error(r.max_rel_error), r.worst_m);
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "config": self.config,
            "rows": self.rows,
            "summary": {
                "table": self.table,
                "max_rel_error": self.max_rel_error(),
                "runtime_s": self.runtime_s,
            }
        })
    }
}

/// Renders any report in the requested format.
pub fn render(csv: String, json: Value, format: Format) -> String {
    match format {
        Format::Csv => csv,
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&json).unwrap_or_default();
            s.push('\n');
            s
        }
    }
}
