use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use twofloat::TwoFloat;

use crate::error::{Error, Result};
use crate::solver::{Method, RootResult, SpectrumResult};
use crate::symbol::{fourier_coefficients, phase_of, BANDWIDTH, G_MIN};

/// Lower end of the bisection interval, strictly below the spectrum.
pub const LOWER_BOUND: f64 = G_MIN - 1e-6;

const ZERO_PIVOT: f64 = 1e-30;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenCount {
    pub lambda: f64,
    /// Eigenvalues of `T_n` strictly below `lambda`.
    pub count: usize,
}

/// Reciprocal to double-double accuracy. `TwoFloat::recip` forms its
/// residual in plain `f64` and is only good to about 1e-16.
fn recip(d: TwoFloat) -> TwoFloat {
    let r0 = 1.0 / d.hi();
    let e = 1.0 - d * r0;
    r0 + e * r0
}

/// Number of negative pivots of `T_n - lambda I = L D L^T`.
///
/// The factorization keeps a three-row window of `L` and runs entirely in
/// double-double, so the diagonal shift is exact and eigenvalues down to
/// roughly `1e-30 * cond(T_n)` in magnitude are resolved. Exactly zero
/// pivots are replaced by `1e-30` times the diagonal entry.
pub fn ldlt_negcount(n: usize, lambda: f64) -> EigenCount {
    let a = fourier_coefficients();
    let off = [a.get(1), a.get(2), a.get(3)];
    let diag = TwoFloat::new_sub(a.get(0), lambda);
    let zero = TwoFloat::from(0.0);

    // window[r] holds row i-1-r: its pivot reciprocal and the multipliers
    // L[i-1-r][i-1-r-1..=i-1-r-3]
    let mut inv_d = [zero; BANDWIDTH];
    let mut lrow = [[zero; BANDWIDTH]; BANDWIDTH];
    let mut count = 0;
    for i in 0..n {
        // w[k] = L[i][i-1-k] * d[i-1-k]
        let mut w = [zero; BANDWIDTH];
        for k in (0..BANDWIDTH.min(i)).rev() {
            let mut acc = TwoFloat::from(off[k]);
            // subtract sum over l further left than column i-1-k
            for l in (k + 1)..BANDWIDTH.min(i) {
                acc -= w[l] * lrow[k][l - k - 1];
            }
            w[k] = acc;
        }
        let mut l_new = [zero; BANDWIDTH];
        let mut d = diag;
        for k in 0..BANDWIDTH.min(i) {
            l_new[k] = w[k] * inv_d[k];
            d -= w[k] * l_new[k];
        }
        if d.hi() == 0.0 {
            d = TwoFloat::from(ZERO_PIVOT * diag.hi().abs().max(1.0));
        }
        if d.hi() < 0.0 {
            count += 1;
        }
        for r in (1..BANDWIDTH).rev() {
            inv_d[r] = inv_d[r - 1];
            lrow[r] = lrow[r - 1];
        }
        inv_d[0] = recip(d);
        lrow[0] = l_new;
    }
    EigenCount { lambda, count }
}

/// Order-preserving map from `f64` to `i64`.
fn key(x: f64) -> i64 {
    let b = x.to_bits() as i64;
    b ^ (((b >> 63) as u64) >> 1) as i64
}

fn unkey(k: i64) -> f64 {
    let b = k ^ (((k >> 63) as u64) >> 1) as i64;
    f64::from_bits(b as u64)
}

/// The `k`-th smallest eigenvalue (0-based) of `T_n`, bisected over the bit
/// patterns of `f64` until the bracket width is at most `rel_tol * |lambda|`
/// or the two ends are adjacent doubles.
pub fn bisect_index(n: usize, k: usize, rel_tol: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidDimension(n));
    }
    if k >= n {
        return Err(Error::IndexOutOfRange { index: k, max: n - 1, n });
    }
    let (mut lo, mut hi) = (key(LOWER_BOUND), key(0.0));
    while hi - lo > 1 {
        let (a, b) = (unkey(lo), unkey(hi));
        if (b - a) <= rel_tol * a.abs().min(b.abs()) {
            break;
        }
        let mid = lo + (hi - lo) / 2;
        if ldlt_negcount(n, unkey(mid)).count <= k {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (unkey(lo) + unkey(hi)))
}

/// All eigenvalues in ascending order.
pub fn bisect_spectrum(n: usize, rel_tol: f64) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::InvalidDimension(n));
    }
    if !(rel_tol >= 0.0) {
        return Err(Error::InvalidOption("tolerance must be >= 0".into()));
    }
    (0..n).into_par_iter().map(|k| bisect_index(n, k, rel_tol)).collect()
}

/// Oracle eigenvalues packaged like a solver result, indexed by phase.
pub fn oracle_spectrum(n: usize) -> Result<SpectrumResult> {
    let asc = bisect_spectrum(n, 0.0)?;
    let roots = asc
        .iter()
        .rev()
        .enumerate()
        .map(|(i, &lambda)| RootResult {
            m: i + 1,
            phi: phase_of(lambda),
            lambda,
            iters: 0,
            residual: 0.0,
            history: None,
        })
        .collect();
    Ok(SpectrumResult { n, roots, method: Method::Oracle })
}
