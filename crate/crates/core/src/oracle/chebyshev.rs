//! `det T_n(a - g(phi))` from Chebyshev polynomials.
//!
//! With `alpha_1 = cos phi`, `alpha_2 = cos beta`, `alpha_3 = cos(conj beta)`
//! the middle roots of `a - g(phi)` written in `cos`, and
//! `Pi = (alpha_2 - alpha_1)(alpha_3 - alpha_1)(alpha_3 - alpha_2)`:
//!
//! ```text
//! n = 2p:     det = (1/64) det[V_{p+i}(alpha_k)] det[W_{p+i}(alpha_k)] / Pi^2
//! n = 2p + 1: det = -(1/8) det[U_{p+i}(alpha_k)] det[Q_{p+1+i}(alpha_k)] / Pi^2
//! ```
//!
//! for `i = 0, 1, 2`. Each polynomial is evaluated from its closed
//! trigonometric form at `theta in {phi, beta, conj beta}`; the two complex
//! columns grow like `e^{k Im beta}` and are carried with that factor
//! removed.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::auxiliary::aux_unchecked;
use crate::error::{Error, Result};
use crate::symbol::eval_g;

const SQRT3: f64 = 1.732_050_807_568_877_2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChebDetValue {
    pub log_magnitude: f64,
    /// Unit complex number; the determinant is real, so this is `+-1` up to
    /// rounding.
    pub phase: Complex64,
    /// Whether `exp(log_magnitude)` is representable.
    pub raw_ok: bool,
}

impl ChebDetValue {
    fn new(log_magnitude: f64, phase: Complex64) -> Self {
        let raw_ok = log_magnitude.is_finite() && log_magnitude.abs() < 700.0
            || log_magnitude == f64::NEG_INFINITY;
        Self { log_magnitude, phase, raw_ok }
    }

    pub fn value(&self) -> Option<Complex64> {
        self.raw_ok.then(|| self.phase * self.log_magnitude.exp())
    }

    /// Sign of the real determinant.
    pub fn sign(&self) -> f64 {
        self.phase.re.signum()
    }
}

#[derive(Clone, Copy)]
enum Kind {
    V,
    W,
    U,
    Q,
}

impl Kind {
    /// Frequency multiplying `theta` in the numerator of row `k`.
    fn freq(self, k: usize) -> f64 {
        match self {
            Kind::V | Kind::W => k as f64 + 0.5,
            Kind::U => k as f64 + 1.0,
            Kind::Q => k as f64,
        }
    }

    fn real(self, k: usize, t: f64) -> f64 {
        let w = self.freq(k);
        match self {
            Kind::V => (w * t).cos() / (0.5 * t).cos(),
            Kind::W => (w * t).sin() / (0.5 * t).sin(),
            Kind::U => (w * t).sin() / t.sin(),
            Kind::Q => (w * t).cos(),
        }
    }

    /// Value at complex `theta` with `Im theta > 0`, times `e^{-shift}`.
    fn scaled(self, k: usize, t: Complex64, shift: f64) -> Complex64 {
        let w = self.freq(k);
        // e^{i w theta} e^{-shift} and e^{-i w theta} e^{-shift}
        let up = Complex64::from_polar((-w * t.im - shift).exp(), w * t.re);
        let down = Complex64::from_polar((w * t.im - shift).exp(), -w * t.re);
        let cos = (up + down) * 0.5;
        let sin = (up - down) * Complex64::new(0.0, -0.5);
        match self {
            Kind::V => cos / (t * 0.5).cos(),
            Kind::W => sin / (t * 0.5).sin(),
            Kind::U => sin / t.sin(),
            Kind::Q => cos,
        }
    }
}

fn det3(m: [[Complex64; 3]; 3]) -> Complex64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// `log|det|`, its phase, for rows `first..first+3` of one polynomial kind.
fn block(kind: Kind, first: usize, phi: f64, beta: Complex64) -> (f64, Complex64) {
    let shift = kind.freq(first + 2) * beta.im;
    let mut m = [[Complex64::new(0.0, 0.0); 3]; 3];
    for (i, row) in m.iter_mut().enumerate() {
        let k = first + i;
        let b = kind.scaled(k, beta, shift);
        *row = [Complex64::new(kind.real(k, phi), 0.0), b, b.conj()];
    }
    let d = det3(m);
    (d.norm().ln() + 2.0 * shift, d / d.norm())
}

/// `det(T_n - g(phi) I)` in log-magnitude/phase form.
pub fn chebyshev_det(n: usize, phi: f64) -> Result<ChebDetValue> {
    if n == 0 {
        return Err(Error::InvalidDimension(n));
    }
    if !(phi > 0.0 && phi < PI) {
        return Err(Error::Domain { phi, domain: "(0, pi)" });
    }
    if n == 1 {
        let v = -20.0 - eval_g(phi);
        return Ok(ChebDetValue::new(v.abs().ln(), Complex64::new(v.signum(), 0.0)));
    }
    let beta = aux_unchecked(phi).beta();
    let x = {
        let s = (0.5 * phi).sin();
        -2.0 * s * s
    };
    // Pi = -3 sqrt(3) i x^3
    let pi_log = (3.0 * SQRT3).ln() + 3.0 * x.abs().ln();
    let pi_phase = Complex64::new(0.0, -x.signum());
    let p = n / 2;
    let (c, (l1, p1), (l2, p2)): (f64, _, _) = if n.is_multiple_of(2) {
        (1.0 / 64.0, block(Kind::V, p, phi, beta), block(Kind::W, p, phi, beta))
    } else {
        (-1.0 / 8.0, block(Kind::U, p, phi, beta), block(Kind::Q, p + 1, phi, beta))
    };
    let log_magnitude = f64::ln(c.abs()) + l1 + l2 - 2.0 * pi_log;
    let phase = p1 * p2 / (pi_phase * pi_phase) * c.signum();
    Ok(ChebDetValue::new(log_magnitude, phase))
}

/// `|det|` at `phi` divided by its maximum over `samples` equispaced points
/// of `(lo, hi)`.
pub fn det_residual(n: usize, phi: f64, lo: f64, hi: f64, samples: usize) -> Result<f64> {
    let at = chebyshev_det(n, phi)?.log_magnitude;
    let mut best = f64::NEG_INFINITY;
    for i in 1..=samples {
        let t = lo + (hi - lo) * i as f64 / (samples + 1) as f64;
        best = best.max(chebyshev_det(n, t)?.log_magnitude);
    }
    Ok((at - best).exp())
}
