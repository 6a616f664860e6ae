//! The regular branch `beta(phi)` of `arccos(1 + (cos phi - 1) e^{2 pi i / 3})`
//! and the real functions derived from it.
//!
//! Writing `x = cos phi - 1` and `omega = e^{2 pi i / 3}`, the second middle
//! root of `a(t) - g(phi)` in the variable `cos` is `alpha = 1 + x omega`.
//! The branch is fixed by `sin beta = D e^{i pi / 3}` with
//! `D = sqrt(-x) sqrt(2 + x omega)`, both principal roots. Since
//! `Re(2 + x omega) >= 2` on the domain, `Re D > 0` and no branch cut is
//! ever crossed; `D` is also exactly `sin(beta) e^{-i pi / 3}`, which keeps
//! the cubic-order imaginary part accurate as `phi -> 0`.

use std::f64::consts::{FRAC_PI_3, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Largest phase for which the cubic Taylor surrogates are offered.
pub const TAYLOR_WINDOW: f64 = 0.2;

/// `e^{2 pi i / 3}`.
pub fn omega() -> Complex64 {
    Complex64::new(-0.5, 0.5 * SQRT3)
}

/// `x = cos phi - 1`, computed without cancellation.
fn cos_minus_one(phi: f64) -> f64 {
    let s = (0.5 * phi).sin();
    -2.0 * s * s
}

#[derive(Debug, Clone, Copy)]
struct Branch {
    alpha: Complex64,
    /// `sin(beta) e^{-i pi / 3}`.
    rotated_sin: Complex64,
    beta: Complex64,
}

fn branch(phi: f64) -> Branch {
    let x = cos_minus_one(phi);
    let w = omega();
    let alpha = Complex64::new(1.0, 0.0) + w * x;
    let rotated_sin = (Complex64::new(2.0, 0.0) + w * x).sqrt() * (-x).sqrt();
    let sin_beta = rotated_sin * Complex64::from_polar(1.0, FRAC_PI_3);
    // beta = -i log(alpha + i sin beta) = -i log(1 + z)
    let z = w * x + Complex64::i() * sin_beta;
    let re = (z.im).atan2(1.0 + z.re);
    let im = -0.5 * (2.0 * z.re + z.norm_sqr()).ln_1p();
    Branch { alpha, rotated_sin, beta: Complex64::new(re, im) }
}

/// The regular branch with `beta(0) = 0` and `Im beta > 0` on `(0, pi)`.
pub fn eval_beta(phi: f64) -> Result<Complex64> {
    if !(0.0..PI).contains(&phi) {
        return Err(Error::Domain { phi, domain: "[0, pi)" });
    }
    if phi == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(branch(phi).beta)
}

/// Real functions of the branch at one phase.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AuxValues {
    /// `Re beta`.
    pub beta_re: f64,
    /// `Im beta`, the exponential growth rate per unit of `n + 3`.
    pub beta_im: f64,
    /// `Re(sin(beta) e^{-i pi / 3})`.
    pub rot_re: f64,
    /// `-Im(sin(beta) e^{-i pi / 3})`.
    pub rot_im: f64,
    /// `|sin beta|`.
    pub sin_abs: f64,
    /// `arg sin beta`, in `(pi/4, pi/3)`.
    pub sin_arg: f64,
    /// `|cos beta|`.
    pub cos_abs: f64,
    /// `arg cos beta`, in `(-atan(sqrt(3)/2), 0)`.
    pub cos_arg: f64,
}

impl AuxValues {
    pub fn beta(&self) -> Complex64 {
        Complex64::new(self.beta_re, self.beta_im)
    }
}

/// Derivatives of `Re beta`, `Im beta`, `rot_re` and `rot_im`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AuxDerivatives {
    pub d_beta_re: f64,
    pub d_beta_im: f64,
    pub d_rot_re: f64,
    pub d_rot_im: f64,
}

fn check_open(phi: f64) -> Result<()> {
    if phi > 0.0 && phi < PI {
        Ok(())
    } else {
        Err(Error::Domain { phi, domain: "(0, pi)" })
    }
}

pub(crate) fn aux_unchecked(phi: f64) -> AuxValues {
    let br = branch(phi);
    let sin_beta = br.rotated_sin * Complex64::from_polar(1.0, FRAC_PI_3);
    AuxValues {
        beta_re: br.beta.re,
        beta_im: br.beta.im,
        rot_re: br.rotated_sin.re,
        rot_im: -br.rotated_sin.im,
        sin_abs: sin_beta.norm(),
        sin_arg: sin_beta.arg(),
        cos_abs: br.alpha.norm(),
        cos_arg: br.alpha.arg(),
    }
}

pub fn eval_aux(phi: f64) -> Result<AuxValues> {
    check_open(phi)?;
    Ok(aux_unchecked(phi))
}

pub(crate) fn aux_derivatives_unchecked(phi: f64) -> AuxDerivatives {
    let br = branch(phi);
    let sin_phi = phi.sin();
    let sin_beta = br.rotated_sin * Complex64::from_polar(1.0, FRAC_PI_3);
    let d_beta = omega() * sin_phi / sin_beta;
    // cot(beta) e^{i pi / 3} = alpha / D
    let k = br.alpha / br.rotated_sin * sin_phi;
    AuxDerivatives {
        d_beta_re: d_beta.re,
        d_beta_im: d_beta.im,
        d_rot_re: k.re,
        d_rot_im: -k.im,
    }
}

pub fn eval_aux_derivatives(phi: f64) -> Result<AuxDerivatives> {
    check_open(phi)?;
    Ok(aux_derivatives_unchecked(phi))
}

/// Cubic Taylor surrogates of the four leading functions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TaylorAux {
    pub beta_re: f64,
    pub beta_im: f64,
    pub rot_re: f64,
    pub rot_im: f64,
}

pub fn taylor_small_phi(phi: f64) -> Result<TaylorAux> {
    if phi < 0.0 {
        return Err(Error::Domain { phi, domain: "[0, 0.2]" });
    }
    if phi > TAYLOR_WINDOW {
        return Err(Error::OutsideWindow { phi, window: TAYLOR_WINDOW });
    }
    let p3 = phi * phi * phi;
    Ok(TaylorAux {
        beta_re: 0.5 * phi - p3 / 16.0,
        beta_im: 0.5 * SQRT3 * phi - SQRT3 / 48.0 * p3,
        rot_re: phi + p3 / 48.0,
        rot_im: SQRT3 / 16.0 * p3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    const GRID: usize = 10_000;
    const SLACK: f64 = 1e-14;

    fn grid() -> Vec<(f64, AuxValues, AuxDerivatives)> {
        (1..GRID)
            .map(|i| {
                let phi = PI * i as f64 / GRID as f64;
                (phi, eval_aux(phi).unwrap(), eval_aux_derivatives(phi).unwrap())
            })
            .collect()
    }

    fn increasing(name: &str, v: &[f64]) {
        for w in v.windows(2) {
            assert!(w[1] > w[0] - SLACK, "{name} not increasing: {} -> {}", w[0], w[1]);
            assert!(w[1] != w[0], "{name} flat at {}", w[0]);
        }
    }

    fn decreasing(name: &str, v: &[f64]) {
        let neg: Vec<f64> = v.iter().map(|x| -x).collect();
        increasing(name, &neg);
    }

    #[test]
    fn beta_at_zero_and_near_pi() {
        assert_eq!(eval_beta(0.0).unwrap(), Complex64::new(0.0, 0.0));
        assert!(eval_beta(PI).is_err());
        assert!(eval_beta(-0.1).is_err());
        let b = eval_beta(PI - 1e-12).unwrap();
        let target = Complex64::new(2.0, -SQRT3);
        assert!((b.cos() - target).norm() < 1e-10);
    }

    #[test]
    fn beta_defining_identity() {
        let phi: f64 = 0.5;
        let b = eval_beta(phi).unwrap();
        let alpha = Complex64::new(1.0, 0.0) + omega() * (phi.cos() - 1.0);
        assert!((b.cos() - alpha).norm() <= 1e-12);
        assert!(b.im > 0.0);
    }

    #[test]
    fn beta_continuous_from_zero() {
        let b = eval_beta(1e-9).unwrap();
        assert!(b.norm() < 2e-9);
        let mut prev = eval_beta(1e-6).unwrap();
        for i in 1..2000 {
            let cur = eval_beta(PI * i as f64 / 2000.0).unwrap();
            assert!((cur - prev).norm() < 0.01);
            prev = cur;
        }
    }

    #[test]
    fn limits() {
        let a = eval_aux(PI - 1e-9).unwrap();
        assert_relative_eq!(a.cos_abs, 7f64.sqrt(), epsilon = 1e-8);
        let a = eval_aux(1e-8).unwrap();
        assert_relative_eq!(a.sin_arg, FRAC_PI_3, epsilon = 1e-8);
        let d = eval_aux_derivatives(1e-8).unwrap();
        assert_relative_eq!(d.d_beta_re, 0.5, epsilon = 1e-10);
        assert_relative_eq!(d.d_beta_im, 0.5 * SQRT3, epsilon = 1e-10);
        let d = eval_aux_derivatives(PI - 1e-9).unwrap();
        assert!(d.d_beta_re.abs() < 1e-6);
        assert!(d.d_beta_im.abs() < 1e-6);
    }

    #[test]
    fn cubic_part_at_point_three() {
        let a = eval_aux(0.3).unwrap();
        assert!(a.rot_im > 0.0);
        assert!((a.rot_im - SQRT3 * 0.027 / 16.0).abs() <= 0.3f64.powi(5));
    }

    #[test]
    fn ranges_and_signs() {
        let upper_s = 2.0 * 3f64.powf(0.25);
        for (phi, a, d) in grid() {
            assert!(a.beta_re > 0.0 && a.beta_im > 0.0, "phi = {phi}");
            assert!(a.sin_abs > 0.0 && a.sin_abs < upper_s);
            assert!(a.sin_arg > PI / 4.0 && a.sin_arg < FRAC_PI_3);
            assert!(a.cos_abs > 1.0 && a.cos_abs < 7f64.sqrt());
            assert!(a.cos_arg < 0.0 && a.cos_arg > -(0.5 * SQRT3).atan());
            assert!(a.rot_re > 0.0 && a.rot_im > 0.0);
            assert_relative_eq!(
                a.rot_re,
                a.sin_abs * (FRAC_PI_3 - a.sin_arg).cos(),
                max_relative = 1e-12
            );
            assert_relative_eq!(
                a.rot_im,
                a.sin_abs * (FRAC_PI_3 - a.sin_arg).sin(),
                max_relative = 1e-9
            );
            assert!(d.d_beta_re > 0.0 && d.d_beta_im > 0.0);
            assert!(d.d_beta_re <= 0.5 + SLACK && d.d_beta_im <= 0.5 * SQRT3 + SLACK);
            assert!(a.beta_im / phi > 0.5);
        }
    }

    #[test]
    fn monotonicity_suite() {
        let g = grid();
        let col = |f: &dyn Fn(&(f64, AuxValues, AuxDerivatives)) -> f64| -> Vec<f64> {
            g.iter().map(f).collect()
        };
        increasing("|sin beta|", &col(&|t| t.1.sin_abs));
        decreasing("arg sin beta", &col(&|t| t.1.sin_arg));
        increasing("|cos beta|", &col(&|t| t.1.cos_abs));
        decreasing("arg cos beta", &col(&|t| t.1.cos_arg));
        increasing("Re beta", &col(&|t| t.1.beta_re));
        increasing("Im beta", &col(&|t| t.1.beta_im));
        decreasing("Re beta'", &col(&|t| t.2.d_beta_re));
        decreasing("Im beta'", &col(&|t| t.2.d_beta_im));
        decreasing("Re beta / phi", &col(&|t| t.1.beta_re / t.0));
        decreasing("Im beta / phi", &col(&|t| t.1.beta_im / t.0));
        decreasing("|cos| / |sin|", &col(&|t| t.1.cos_abs / t.1.sin_abs));
        increasing("|sin| / sin phi", &col(&|t| t.1.sin_abs / t.0.sin()));
    }

    #[test]
    fn positivity_pair() {
        for (_, a, _) in grid() {
            let re = a.cos_abs * a.cos_arg.cos();
            let im = a.sin_abs * a.sin_arg.sin();
            assert!(re - im > 0.0);
            assert!(re + im > 0.0);
        }
    }

    #[test]
    fn branch_consistency() {
        for (phi, a, _) in grid() {
            let b = a.beta();
            let alpha = Complex64::new(1.0, 0.0) + omega() * (phi.cos() - 1.0);
            assert!((b.cos() - alpha).norm() <= 1e-12, "cos at {phi}");
            let s = Complex64::from_polar(a.sin_abs, a.sin_arg);
            assert!((b.sin() - s).norm() <= 1e-11, "sin at {phi}");
        }
    }

    #[test]
    fn taylor_remainders() {
        let mut k = [0.0f64; 4];
        for i in 1..=200 {
            let phi = 0.1 * i as f64 / 200.0;
            let a = eval_aux(phi).unwrap();
            let t = taylor_small_phi(phi).unwrap();
            let p5 = phi.powi(5);
            k[0] = k[0].max((a.beta_re - t.beta_re).abs() / p5);
            k[1] = k[1].max((a.beta_im - t.beta_im).abs() / p5);
            k[2] = k[2].max((a.rot_re - t.rot_re).abs() / p5);
            k[3] = k[3].max((a.rot_im - t.rot_im).abs() / p5);
        }
        for v in k {
            assert!(v <= 10.0, "fitted constant {v}");
        }
    }

    #[test]
    fn taylor_examples() {
        let t = taylor_small_phi(0.0).unwrap();
        assert_eq!((t.beta_re, t.beta_im, t.rot_re, t.rot_im), (0.0, 0.0, 0.0, 0.0));
        let t = taylor_small_phi(0.1).unwrap();
        assert_relative_eq!(t.beta_re, 0.05 - 1e-3 / 16.0, max_relative = 1e-15);
        assert_relative_eq!(t.rot_im, SQRT3 * 1e-3 / 16.0, max_relative = 1e-15);
        assert!(taylor_small_phi(0.21).is_err());
        let a = eval_aux(0.2).unwrap();
        let t = taylor_small_phi(0.2).unwrap();
        assert!((a.rot_im - t.rot_im).abs() < 1e-5);
        assert!((a.rot_re - t.rot_re).abs() < 1e-5);
    }

    #[test]
    fn derivatives_match_differences() {
        let h = 1e-6;
        let mut phi = 1e-2 + 1e-3;
        while phi < PI - 1e-2 {
            let d = eval_aux_derivatives(phi).unwrap();
            let (lo, hi) = (eval_aux(phi - h).unwrap(), eval_aux(phi + h).unwrap());
            let fd = |a: f64, b: f64| (b - a) / (2.0 * h);
            assert_relative_eq!(d.d_beta_re, fd(lo.beta_re, hi.beta_re), max_relative = 1e-5);
            assert_relative_eq!(d.d_beta_im, fd(lo.beta_im, hi.beta_im), max_relative = 1e-5);
            assert_relative_eq!(d.d_rot_re, fd(lo.rot_re, hi.rot_re), max_relative = 1e-5);
            assert_relative_eq!(d.d_rot_im, fd(lo.rot_im, hi.rot_im), max_relative = 1e-5);
            phi += 0.00731;
        }
    }

    #[test]
    fn domain_errors() {
        assert!(eval_aux(0.0).is_err());
        assert!(eval_aux(PI).is_err());
        assert!(eval_aux_derivatives(f64::NAN).is_err());
    }

    proptest! {
        #[test]
        fn identity_holds_anywhere(phi in 1e-6f64..(PI - 1e-6)) {
            let a = eval_aux(phi).unwrap();
            let alpha = Complex64::new(1.0, 0.0) + omega() * (phi.cos() - 1.0);
            prop_assert!((a.beta().cos() - alpha).norm() <= 1e-12);
            prop_assert!(a.beta_im > 0.0);
        }
    }
}
