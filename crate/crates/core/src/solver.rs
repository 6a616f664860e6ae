//! Fixed-point solution of the secular equations.
//!
//! The odd root `j` is the fixed point of
//! `phi -> (pi j + atan f(phi)) / q` and the even root `j` the fixed point of
//! `phi -> (pi j + pi/2 - atan h(phi)) / q`, with `q = (n + 3) / 2`. Both maps
//! send the whole domain into the root's bracket and contract with factor
//! below `0.8`, so iteration starts on the grid point `d_m`.

use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::auxiliary::aux_unchecked;
use crate::error::{Error, Result};
use crate::secular::secular_with;
use crate::symbol::{eval_g, grid_point, Parity};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    pub max_iters: usize,
    /// Stop once successive iterates differ by less than this.
    pub tol: f64,
    pub record_history: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { max_iters: 60, tol: 1e-14, record_history: false }
    }
}

impl SolverOptions {
    pub fn validate(&self) -> Result<()> {
        if self.max_iters < 1 {
            return Err(Error::InvalidOption("max_iters must be >= 1".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidOption("tol must be > 0".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    FixedPoint,
    Asymptotic,
    Oracle,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::FixedPoint => "fixed_point",
            Method::Asymptotic => "asymptotic",
            Method::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootResult {
    pub m: usize,
    pub phi: f64,
    pub lambda: f64,
    pub iters: usize,
    /// `|phi - T(phi)|` for the iteration map `T` at the returned root.
    pub residual: f64,
    pub history: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumResult {
    pub n: usize,
    /// Sorted by `m`, i.e. by increasing phase and decreasing eigenvalue.
    pub roots: Vec<RootResult>,
    pub method: Method,
}

impl SpectrumResult {
    pub fn lambdas(&self) -> Vec<f64> {
        self.roots.iter().map(|r| r.lambda).collect()
    }

    /// Roots re-sorted by ascending eigenvalue.
    pub fn ascending_lambda(&self) -> Vec<&RootResult> {
        let mut v: Vec<&RootResult> = self.roots.iter().collect();
        v.sort_by(|a, b| a.lambda.total_cmp(&b.lambda));
        v
    }
}

/// Open phase interval that contains root `m` of `T_n`.
pub fn bracket(m: usize, n: usize) -> (f64, f64) {
    let s = n as f64 + 3.0;
    let j = m.div_ceil(2) as f64;
    match Parity::of(m) {
        Parity::Odd => (PI * (2.0 * j - 1.0) / s, PI * (2.0 * j + 1.0) / s),
        Parity::Even => (2.0 * PI * j / s, 2.0 * PI * (j + 1.0) / s),
    }
}

/// One application of the iteration map for root `m`.
pub fn iteration_map(m: usize, n: usize, phi: f64) -> f64 {
    let q = 0.5 * (n as f64 + 3.0);
    let j = m.div_ceil(2) as f64;
    let aux = aux_unchecked(phi);
    match Parity::of(m) {
        Parity::Odd => (PI * j + secular_with(phi, n, &aux, 1.0).value.atan()) / q,
        Parity::Even => (PI * j + FRAC_PI_2 - secular_with(phi, n, &aux, -1.0).value.atan()) / q,
    }
}

fn guarded(m: usize, n: usize, next: f64) -> f64 {
    if next.is_finite() && next > 0.0 && next < PI {
        next
    } else {
        let (lo, hi) = bracket(m, n);
        0.5 * (lo + hi)
    }
}

/// Iterates exactly `iters` times from the grid point and returns all
/// iterates, starting with `d_m`.
pub fn iterate_history(m: usize, n: usize, iters: usize) -> Result<Vec<f64>> {
    let mut phi = grid_point(m, n)?.d;
    let mut out = Vec::with_capacity(iters + 1);
    out.push(phi);
    for _ in 0..iters {
        phi = guarded(m, n, iteration_map(m, n, phi));
        out.push(phi);
    }
    Ok(out)
}

/// Solves for the root with global index `m` (odd or even).
pub fn solve_root(m: usize, n: usize, opts: &SolverOptions) -> Result<RootResult> {
    opts.validate()?;
    let mut phi = grid_point(m, n)?.d;
    let mut history = opts.record_history.then(|| vec![phi]);
    let mut iters = 0;
    let mut step = f64::INFINITY;
    while iters < opts.max_iters {
        let next = guarded(m, n, iteration_map(m, n, phi));
        step = (next - phi).abs();
        phi = next;
        iters += 1;
        if let Some(h) = history.as_mut() {
            h.push(phi);
        }
        if step < opts.tol {
            break;
        }
    }
    if step >= opts.tol {
        return Err(Error::NonConvergence { m, iters, last_step: step });
    }
    let (lo, hi) = bracket(m, n);
    if !(phi > lo && phi < hi) {
        return Err(Error::BracketViolation { m, phi, lo, hi });
    }
    let residual = (phi - iteration_map(m, n, phi)).abs();
    Ok(RootResult { m, phi, lambda: eval_g(phi), iters, residual, history })
}

fn check_family(j: usize, n: usize, parity: Parity) -> Result<usize> {
    let max = parity.count(n);
    if n == 0 {
        return Err(Error::InvalidDimension(n));
    }
    if j == 0 || j > max {
        return Err(Error::IndexOutOfRange { index: j, max, n });
    }
    Ok(parity.index(j))
}

/// Root `phi_{2j-1}`, `1 <= j <= (n+1)/2`.
pub fn solve_odd_root(j: usize, n: usize, opts: &SolverOptions) -> Result<RootResult> {
    solve_root(check_family(j, n, Parity::Odd)?, n, opts)
}

/// Root `phi_{2j}`, `1 <= j <= n/2`.
pub fn solve_even_root(j: usize, n: usize, opts: &SolverOptions) -> Result<RootResult> {
    solve_root(check_family(j, n, Parity::Even)?, n, opts)
}

/// Fails unless the phases strictly increase in `m`.
pub fn check_interlacing(roots: &[RootResult]) -> Result<()> {
    for w in roots.windows(2) {
        if !(w[0].phi < w[1].phi) {
            return Err(Error::Interlacing { m: w[0].m, left: w[0].phi, right: w[1].phi });
        }
    }
    Ok(())
}

/// All `n` roots, solved independently in parallel.
pub fn full_spectrum(n: usize, opts: &SolverOptions) -> Result<SpectrumResult> {
    if n == 0 {
        return Err(Error::InvalidDimension(n));
    }
    opts.validate()?;
    let roots = (1..=n)
        .into_par_iter()
        .map(|m| solve_root(m, n, opts))
        .collect::<Result<Vec<_>>>()?;
    check_interlacing(&roots)?;
    Ok(SpectrumResult { n, roots, method: Method::FixedPoint })
}
