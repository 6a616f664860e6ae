//! The secular functions `f`, `h` and the phase functions `F`, `G` whose
//! level sets `pi j` locate the odd and even roots.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::auxiliary::{aux_unchecked, AuxValues};
use crate::error::{Error, Result};

/// Above this growth exponent the quotients are divided through by `cosh`.
pub const DIRECT_LIMIT: f64 = 40.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScaleNote {
    Direct,
    TanhScaled,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SecularValue {
    pub value: f64,
    pub scale_note: ScaleNote,
}

fn check(phi: f64, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidDimension(n));
    }
    if !(phi > 0.0 && phi < PI) {
        return Err(Error::Domain { phi, domain: "(0, pi)" });
    }
    Ok(())
}

/// `sech p` for `p >= 0` without overflow.
fn sech(p: f64) -> f64 {
    let e = (-p).exp();
    2.0 * e / (1.0 + e * e)
}

/// Shared evaluation; `sign = +1` gives `f`, `sign = -1` gives `h`.
pub(crate) fn secular_with(phi: f64, n: usize, aux: &AuxValues, sign: f64) -> SecularValue {
    let scale = n as f64 + 3.0;
    let a = scale * aux.beta_re;
    let p = scale * aux.beta_im;
    let (sin_a, cos_a) = a.sin_cos();
    let sin_phi = phi.sin();
    if p <= DIRECT_LIMIT {
        // cos A + cosh P = 2 cos^2(A/2) + 2 sinh^2(P/2); cosh P - cos A likewise
        let half_trig = if sign > 0.0 { (0.5 * a).cos() } else { (0.5 * a).sin() };
        let half_sinh = (0.5 * p).sinh();
        let den = 2.0 * (half_trig * half_trig + half_sinh * half_sinh);
        let num = aux.rot_re * sin_a + sign * aux.rot_im * p.sinh();
        SecularValue { value: 2.0 * num / (sin_phi * den), scale_note: ScaleNote::Direct }
    } else {
        let s = sech(p);
        let num = aux.rot_re * sin_a * s + sign * aux.rot_im * p.tanh();
        let den = sign * cos_a * s + 1.0;
        SecularValue { value: 2.0 * num / (sin_phi * den), scale_note: ScaleNote::TanhScaled }
    }
}

/// The odd-index secular function `f(phi)`.
pub fn eval_f(phi: f64, n: usize) -> Result<SecularValue> {
    check(phi, n)?;
    Ok(secular_with(phi, n, &aux_unchecked(phi), 1.0))
}

/// The even-index secular function `h(phi)`.
pub fn eval_h(phi: f64, n: usize) -> Result<SecularValue> {
    check(phi, n)?;
    Ok(secular_with(phi, n, &aux_unchecked(phi), -1.0))
}

/// `F(phi) = q phi - atan f(phi)`; the odd root `j` solves `F = pi j`.
pub fn phase_f(phi: f64, n: usize) -> Result<f64> {
    let f = eval_f(phi, n)?.value;
    Ok(0.5 * (n as f64 + 3.0) * phi - f.atan())
}

/// `G(phi) = q phi - pi/2 + atan h(phi)`; the even root `j` solves `G = pi j`.
pub fn phase_g(phi: f64, n: usize) -> Result<f64> {
    let h = eval_h(phi, n)?.value;
    Ok(0.5 * (n as f64 + 3.0) * phi - FRAC_PI_2 + h.atan())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::auxiliary::eval_aux;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn raw_f(phi: f64, n: usize) -> f64 {
        let a = eval_aux(phi).unwrap();
        let s = n as f64 + 3.0;
        let (ca, pb) = (s * a.beta_re, s * a.beta_im);
        2.0 * (a.rot_re * ca.sin() + a.rot_im * pb.sinh()) / (phi.sin() * (ca.cos() + pb.cosh()))
    }

    fn raw_h(phi: f64, n: usize) -> f64 {
        let a = eval_aux(phi).unwrap();
        let s = n as f64 + 3.0;
        let (ca, pb) = (s * a.beta_re, s * a.beta_im);
        2.0 * (a.rot_re * ca.sin() - a.rot_im * pb.sinh()) / (phi.sin() * (-ca.cos() + pb.cosh()))
    }

    #[test]
    fn matches_unscaled_formula() {
        let f = eval_f(0.5, 64).unwrap();
        assert_relative_eq!(f.value, raw_f(0.5, 64), max_relative = 1e-12);
        let h = eval_h(0.5, 64).unwrap();
        assert_relative_eq!(h.value, raw_h(0.5, 64), max_relative = 1e-12);
    }

    #[test]
    fn scaled_path_matches_unscaled() {
        let mut hits = 0;
        for n in [8, 40, 64, 128, 300, 700] {
            for i in 1..200 {
                let phi = PI * i as f64 / 200.0;
                let a = eval_aux(phi).unwrap();
                if ((n as f64 + 3.0) * a.beta_im).cosh() >= 1e300 {
                    continue;
                }
                let f = eval_f(phi, n).unwrap();
                let h = eval_h(phi, n).unwrap();
                if f.scale_note == ScaleNote::TanhScaled {
                    hits += 1;
                }
                assert_relative_eq!(f.value, raw_f(phi, n), max_relative = 1e-12, epsilon = 1e-300);
                assert_relative_eq!(h.value, raw_h(phi, n), max_relative = 1e-12, epsilon = 1e-300);
            }
        }
        assert!(hits > 100);
    }

    #[test]
    fn large_growth_limit() {
        let phi: f64 = 1.0;
        let a = eval_aux(phi).unwrap();
        let limit = 2.0 * a.rot_im / phi.sin();
        for n in [200usize, 2000] {
            let q = 0.5 * (n as f64 + 3.0);
            let f = eval_f(phi, n).unwrap().value;
            assert!((f - limit).abs() <= 1.0 / (q * q));
        }
    }

    #[test]
    fn blows_up_near_pi() {
        let small = eval_f(PI - 1e-3, 16).unwrap().value.abs();
        let big = eval_f(PI - 1e-9, 16).unwrap().value.abs();
        assert!(big > 1e4 * small.min(1.0));
        assert!(big > 1e5);
    }

    #[test]
    fn h_tracks_minus_f() {
        let (phi, n) = (0.5f64, 128);
        let a = eval_aux(phi).unwrap();
        let p = (n as f64 + 3.0) * a.beta_im;
        let f = eval_f(phi, n).unwrap().value;
        let h = eval_h(phi, n).unwrap().value;
        assert!((h + f).abs() <= 10.0 * (-p).exp() / phi.sin());
    }

    #[test]
    fn h_negative_at_integer_multiple() {
        let n = 20;
        let target = PI / (n as f64 + 3.0);
        let (mut lo, mut hi) = (1e-9, PI - 1e-9);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if eval_aux(mid).unwrap().beta_re < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!(eval_h(lo, n).unwrap().value < 0.0);
    }

    #[test]
    fn phase_function_bounds() {
        for n in [4, 8, 64, 200] {
            let s = n as f64 + 3.0;
            assert!(phase_f(PI / s, n).unwrap() < PI);
            let mut prev = phase_g(2.0 * PI / s, n).unwrap();
            let steps = 400;
            for i in 1..steps {
                let phi = 2.0 * PI / s + (PI - 2.0 * PI / s) * i as f64 / steps as f64;
                let cur = phase_g(phi, n).unwrap();
                assert!(cur > prev, "G not increasing at {phi}, n = {n}");
                prev = cur;
            }
        }
        assert_eq!(phase_f(1.0, 10).unwrap() - phase_f(1.0, 10).unwrap(), 0.0);
    }

    #[test]
    fn overflow_safety() {
        assert!(eval_f(3.0, 1_000_000).unwrap().value.is_finite());
        assert!(eval_h(3.0, 1_000_000).unwrap().value.is_finite());
        assert!(eval_f(1e-7, 1).unwrap().value.is_finite());
        assert!(eval_h(1e-7, 1).unwrap().value.is_finite());
    }

    #[test]
    fn derivative_bound() {
        for n in [1usize, 2, 3, 4, 8, 16, 64, 200, 1000] {
            let s = n as f64 + 3.0;
            let mut worst = 0.0f64;
            for (which, start) in [(1.0, PI / s), (-1.0, 2.0 * PI / s)] {
                let steps = 4000;
                for i in 1..steps {
                    let phi = start + (PI - start) * i as f64 / steps as f64;
                    let h = 1e-6 * phi.min(PI - phi);
                    let val = |x: f64| {
                        let v = if which > 0.0 { eval_f(x, n) } else { eval_h(x, n) };
                        v.unwrap().value.atan()
                    };
                    let slope = (val(phi + h) - val(phi - h)) / (2.0 * h);
                    worst = worst.max((2.0 / s * slope).abs());
                }
            }
            assert!(worst < 0.8 + 1e-3, "n = {n}: {worst}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(eval_f(0.0, 5).is_err());
        assert!(eval_h(PI, 5).is_err());
        assert!(eval_f(1.0, 0).is_err());
    }

    proptest! {
        #[test]
        fn always_finite(phi in 1e-8f64..(PI - 1e-8), n in 1usize..2_000_000) {
            prop_assert!(eval_f(phi, n).unwrap().value.is_finite());
            prop_assert!(eval_h(phi, n).unwrap().value.is_finite());
        }
    }
}
