//! Closed-form approximations of individual roots and eigenvalues.
//!
//! With `q = (n + 3) / 2` and `d` the grid point of root `j` of a parity
//! family, every root is written `phi = d + u1 / q + u2 / q^2`. Indices with
//! `e^{pi (j - 1)} / 2 > q^2` are *far* from the spectral edge and have
//! explicit `u1`, `u2`; the remaining *near* indices get `u1` from the fixed
//! point of `u -> +-atan Z(u)` and `u2` from its linearisation.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::auxiliary::{aux_derivatives_unchecked, aux_unchecked};
use crate::error::{Error, Result};
use crate::solver::{Method, RootResult, SpectrumResult};
use crate::symbol::{eval_g, eval_g_derivatives, Parity};

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Largest grid point at which [`extreme_eigenvalue`] is applied.
pub const EXTREME_WINDOW: f64 = 0.2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegimeKind {
    Far,
    Near,
}

impl RegimeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RegimeKind::Far => "far",
            RegimeKind::Near => "near",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Regime {
    pub kind: RegimeKind,
    pub j: usize,
    pub n: usize,
}

/// First- and second-order phase corrections.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpansionCoeffs {
    pub u1: f64,
    pub u2: f64,
}

fn check_index(j: usize, n: usize, parity: Parity) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidDimension(n));
    }
    let max = parity.count(n);
    if j == 0 || j > max {
        return Err(Error::IndexOutOfRange { index: j, max, n });
    }
    Ok(())
}

fn half_scale(n: usize) -> f64 {
    0.5 * (n as f64 + 3.0)
}

/// Grid point `d` of root `j` in the given family.
pub fn family_grid(j: usize, n: usize, parity: Parity) -> f64 {
    let s = n as f64 + 3.0;
    match parity {
        Parity::Odd => 2.0 * PI * j as f64 / s,
        Parity::Even => PI * (2 * j + 1) as f64 / s,
    }
}

/// Far iff `pi (j - 1) > ln(2 q^2)`.
pub fn regime(j: usize, n: usize, parity: Parity) -> Result<Regime> {
    check_index(j, n, parity)?;
    let q = half_scale(n);
    let far = PI * (j as f64 - 1.0) > (2.0 * q * q).ln();
    let kind = if far { RegimeKind::Far } else { RegimeKind::Near };
    Ok(Regime { kind, j, n })
}

/// Far-regime coefficients as functions of the grid point alone:
/// `u1 = atan(2C/sin d)` and `u2 = u1 * d/dd atan(2C/sin d)`.
pub fn far_coefficients(d: f64) -> ExpansionCoeffs {
    let aux = aux_unchecked(d);
    let dc = aux_derivatives_unchecked(d).d_rot_im;
    let c = aux.rot_im;
    let (s, co) = d.sin_cos();
    let u1 = (2.0 * c / s).atan();
    let u2 = 2.0 * (dc * s - c * co) / (s * s + 4.0 * c * c) * u1;
    ExpansionCoeffs { u1, u2 }
}

pub fn expansion_far(j: usize, n: usize, parity: Parity) -> Result<ExpansionCoeffs> {
    if regime(j, n, parity)?.kind != RegimeKind::Far {
        return Err(Error::RegimeMismatch { j, n, actual: "near" });
    }
    Ok(far_coefficients(family_grid(j, n, parity)))
}

/// Small-`d` model quantities of the near regime at a trial correction `u`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZContext {
    /// `q d + u`, the oscillating phase.
    pub osc_phase: f64,
    /// `sqrt(3) (q d + u)`, the growth exponent.
    pub growth: f64,
    /// `1 + 3 d^2 / 16`.
    pub osc_amp: f64,
    /// `sqrt(3) d^2 / 16`.
    pub growth_amp: f64,
    /// Second-order shift of the oscillating phase.
    pub osc_phase_corr: f64,
    /// Second-order shift of the growth exponent.
    pub growth_corr: f64,
    /// `3 d u / 8`.
    pub osc_amp_corr: f64,
    /// `sqrt(3) d u / 8`.
    pub growth_amp_corr: f64,
}

impl ZContext {
    pub fn new(j: usize, n: usize, parity: Parity, u: f64) -> Self {
        let d = family_grid(j, n, parity);
        let q = half_scale(n);
        let osc_phase = q * d + u;
        let osc_phase_corr = -(d * d * d * q * q + 3.0 * d * d * u * q + 3.0 * d * u * u) / 8.0;
        Self {
            osc_phase,
            growth: SQRT3 * osc_phase,
            osc_amp: 1.0 + 3.0 * d * d / 16.0,
            growth_amp: SQRT3 * d * d / 16.0,
            osc_phase_corr,
            growth_corr: osc_phase_corr / SQRT3,
            osc_amp_corr: 3.0 * d * u / 8.0,
            growth_amp_corr: SQRT3 * d * u / 8.0,
        }
    }

    fn hyperbolic(&self) -> (f64, f64) {
        let e = (-self.growth.abs()).exp();
        (2.0 * e / (1.0 + e * e), self.growth.tanh())
    }
}

fn sign(parity: Parity) -> f64 {
    match parity {
        Parity::Odd => 1.0,
        Parity::Even => -1.0,
    }
}

/// The model secular quotient at trial correction `u`, divided through by
/// `cosh` of the growth exponent.
pub fn eval_z1(u: f64, j: usize, n: usize, parity: Parity) -> Result<f64> {
    check_index(j, n, parity)?;
    let z = ZContext::new(j, n, parity, u);
    let (sech, th) = z.hyperbolic();
    let sg = sign(parity);
    let (sa, ca) = z.osc_phase.sin_cos();
    Ok(2.0 * (z.osc_amp * sa * sech + sg * z.growth_amp * th) / (sg * ca * sech + 1.0))
}

/// How the near-regime equation for `u1` is solved.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum InnerSolve {
    /// Iterate until successive values differ by less than `tol`.
    Converged { max_iters: usize, tol: f64 },
    /// Apply the map exactly this many times.
    Steps(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NearOptions {
    pub solve: InnerSolve,
    pub start: f64,
}

impl Default for NearOptions {
    fn default() -> Self {
        Self { solve: InnerSolve::Converged { max_iters: 60, tol: 1e-14 }, start: 0.0 }
    }
}

impl NearOptions {
    pub fn steps(k: usize) -> Self {
        Self { solve: InnerSolve::Steps(k), start: 0.0 }
    }
}

/// `u2` from the linearisation of the model quotient around `u1`.
fn near_second_order(j: usize, n: usize, parity: Parity, u1: f64) -> f64 {
    let z = ZContext::new(j, n, parity, u1);
    let (sech, th) = z.hyperbolic();
    let (sa, ca) = z.osc_phase.sin_cos();
    let (b1, c1, b2, c2) = (z.osc_amp, z.growth_amp, z.osc_amp_corr, z.growth_amp_corr);
    let (qa, qb) = (z.osc_phase_corr, z.growth_corr);
    let sg = sign(parity);
    // numerator and denominator of Z, their first-order variation under the
    // phase corrections, and their derivatives along the phase
    let x1 = 2.0 * (sg * sa * sech * b1 + th * c1);
    let x2 = 2.0 * (sg * sa * sech * b2 + sg * b1 * qa * ca * sech + th * c2 + c1 * qb);
    let x3 = 2.0 * (sg * b1 * ca * sech + c1 * SQRT3);
    let y1 = 1.0 + sg * ca * sech;
    let y2 = -sg * qa * sa * sech + qb * th;
    let y3 = -sg * sa * sech + SQRT3 * th;
    let z1 = x1 / y1;
    let z2 = (x2 * y1 - x1 * y2) / (y1 * y1);
    let z3 = (x3 * y1 - x1 * y3) / (y1 * y1);
    z2 / (1.0 + z1 * z1 - z3)
}

pub fn expansion_near(j: usize, n: usize, parity: Parity, opts: &NearOptions) -> Result<ExpansionCoeffs> {
    if regime(j, n, parity)?.kind != RegimeKind::Near {
        return Err(Error::RegimeMismatch { j, n, actual: "far" });
    }
    near_coefficients(j, n, parity, opts)
}

/// The near-regime construction applied at any index.
fn near_coefficients(j: usize, n: usize, parity: Parity, opts: &NearOptions) -> Result<ExpansionCoeffs> {
    let sg = sign(parity);
    let map = |u: f64| -> Result<f64> { Ok(sg * eval_z1(u, j, n, parity)?.atan()) };
    let mut u = opts.start;
    match opts.solve {
        InnerSolve::Steps(k) => {
            for _ in 0..k {
                u = map(u)?;
            }
        }
        InnerSolve::Converged { max_iters, tol } => {
            let mut step = f64::INFINITY;
            let mut iters = 0;
            while iters < max_iters && step >= tol {
                let next = map(u)?;
                step = (next - u).abs();
                u = next;
                iters += 1;
            }
            if step >= tol {
                return Err(Error::NonConvergence { m: parity.index(j), iters, last_step: step });
            }
        }
    }
    Ok(ExpansionCoeffs { u1: u, u2: near_second_order(j, n, parity, u) })
}

/// Coefficients from whichever regime applies.
pub fn expansion(j: usize, n: usize, parity: Parity, near: &NearOptions) -> Result<ExpansionCoeffs> {
    match regime(j, n, parity)?.kind {
        RegimeKind::Far => expansion_far(j, n, parity),
        RegimeKind::Near => expansion_near(j, n, parity, near),
    }
}

/// `d + u1 / q + u2 / q^2`.
pub fn asymptotic_phase(j: usize, n: usize, parity: Parity, c: &ExpansionCoeffs) -> f64 {
    let q = half_scale(n);
    family_grid(j, n, parity) + c.u1 / q + c.u2 / (q * q)
}

/// Every root from the closed forms, with `lambda = g(phi)`.
pub fn asymptotic_spectrum(n: usize, near: &NearOptions) -> Result<SpectrumResult> {
    if n == 0 {
        return Err(Error::InvalidDimension(n));
    }
    let roots = (1..=n)
        .map(|m| {
            let parity = Parity::of(m);
            let j = m.div_ceil(2);
            let c = expansion(j, n, parity, near)?;
            let phi = asymptotic_phase(j, n, parity, &c);
            Ok(RootResult { m, phi, lambda: eval_g(phi), iters: 0, residual: 0.0, history: None })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectrumResult { n, roots, method: Method::Asymptotic })
}

/// Which first-order quantity multiplies `g''` in the even-index eigenvalue
/// expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum EvenSquareTerm {
    /// `u1^2`, as produced by expanding `g(d + 2 u1/(n+3) + ...)`.
    #[default]
    FirstOrder,
    /// `u2^2`, as literally printed for the even family.
    Printed,
}

/// Second-order Taylor expansion of `g` around the grid point:
/// `g(d) + g'(d) 2u1/(n+3) + (4 u2 g'(d) + 2 u1^2 g''(d)) / (n+3)^2`.
pub fn eigenvalue_expansion(j: usize, n: usize, parity: Parity, even_square: EvenSquareTerm) -> Result<f64> {
    let c = expansion(j, n, parity, &NearOptions::default())?;
    let d = family_grid(j, n, parity);
    let s = n as f64 + 3.0;
    let (g1, g2) = eval_g_derivatives(d);
    let sq = match (parity, even_square) {
        (Parity::Even, EvenSquareTerm::Printed) => c.u2 * c.u2,
        _ => c.u1 * c.u1,
    };
    Ok(eval_g(d) + g1 * 2.0 * c.u1 / s + (4.0 * c.u2 * g1 + 2.0 * sq * g2) / (s * s))
}

/// Sixth-power formula for eigenvalues next to the zero of the symbol:
/// `-(w + 2u1)^6/(n+3)^6 - 24 u2 (w + 2u1)^5/(n+3)^7` with `w = (n+3) d`.
pub fn extreme_eigenvalue(j: usize, n: usize, parity: Parity) -> Result<f64> {
    check_index(j, n, parity)?;
    let d = family_grid(j, n, parity);
    if d > EXTREME_WINDOW {
        return Err(Error::OutsideWindow { phi: d, window: EXTREME_WINDOW });
    }
    let c = expansion(j, n, parity, &NearOptions::default())?;
    let s = n as f64 + 3.0;
    let base = match parity {
        Parity::Odd => 2.0 * PI * j as f64,
        Parity::Even => PI * (2 * j + 1) as f64,
    };
    let w = base + 2.0 * c.u1;
    Ok(-w.powi(6) / s.powi(6) - 24.0 * c.u2 * w.powi(5) / s.powi(7))
}
