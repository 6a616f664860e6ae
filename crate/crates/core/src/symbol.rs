//! The symbol `a(t) = (t - 2 + 1/t)^3`, its restriction `g` to the unit
//! circle, the phase grid `d_m` and the explicit banded matrix.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Half bandwidth of `T_n(a)`.
pub const BANDWIDTH: usize = 3;

/// Minimum of `g` on the circle, attained at `phi = pi`.
pub const G_MIN: f64 = -64.0;

/// Fourier coefficients `a_{-3}, ..., a_3` of the symbol.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymbolCoefficients {
    coeffs: [f64; 2 * BANDWIDTH + 1],
}

impl SymbolCoefficients {
    /// Coefficient of `t^k`, `k` in `-3..=3`; zero outside the band.
    pub fn get(&self, k: i64) -> f64 {
        if k.unsigned_abs() as usize > BANDWIDTH {
            return 0.0;
        }
        self.coeffs[(k + BANDWIDTH as i64) as usize]
    }

    pub fn as_array(&self) -> &[f64; 7] {
        &self.coeffs
    }

    /// Evaluates the Laurent polynomial at `t`.
    pub fn eval(&self, t: num_complex::Complex64) -> num_complex::Complex64 {
        (-3..=3)
            .map(|k| self.get(k) * t.powi(k as i32))
            .sum()
    }
}

/// Expands `(t - 2 + 1/t)^3` by repeated multiplication of coefficient
/// vectors indexed from `t^{-3}`.
pub fn fourier_coefficients() -> SymbolCoefficients {
    let base = [1.0, -2.0, 1.0];
    let mut acc = vec![1.0];
    for _ in 0..3 {
        let mut next = vec![0.0; acc.len() + 2];
        for (i, a) in acc.iter().enumerate() {
            for (k, b) in base.iter().enumerate() {
                next[i + k] += a * b;
            }
        }
        acc = next;
    }
    let mut coeffs = [0.0; 7];
    coeffs.copy_from_slice(&acc);
    SymbolCoefficients { coeffs }
}

/// A phase strictly inside `(0, pi)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct PhasePoint(f64);

impl PhasePoint {
    pub fn new(phi: f64) -> Result<Self> {
        if phi > 0.0 && phi < PI {
            Ok(Self(phi))
        } else {
            Err(Error::Domain { phi, domain: "(0, pi)" })
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// Root family: odd indices `m = 2j - 1` solve the `f` equation, even
/// indices `m = 2j` the `h` equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(m: usize) -> Self {
        if m % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    /// Global index `m` of the `j`-th root of this family.
    pub fn index(self, j: usize) -> usize {
        match self {
            Parity::Odd => 2 * j - 1,
            Parity::Even => 2 * j,
        }
    }

    /// Number of roots of this family for dimension `n`.
    pub fn count(self, n: usize) -> usize {
        match self {
            Parity::Odd => n.div_ceil(2),
            Parity::Even => n / 2,
        }
    }
}

/// `g(phi) = a(e^{i phi}) = -(2 sin(phi/2))^6`.
pub fn eval_g(phi: f64) -> f64 {
    -(2.0 * (0.5 * phi).sin()).powi(6)
}

/// First and second derivatives of `g`.
pub fn eval_g_derivatives(phi: f64) -> (f64, f64) {
    let (s, c) = (0.5 * phi).sin_cos();
    let g1 = -192.0 * s.powi(5) * c;
    let g2 = -96.0 * s.powi(4) * (5.0 * c * c - s * s);
    (g1, g2)
}

/// Inverse of `g` on `[0, pi]`: the phase whose eigenvalue is `lambda`.
pub fn phase_of(lambda: f64) -> f64 {
    let x = (-lambda).max(0.0).powf(1.0 / 6.0) * 0.5;
    2.0 * x.min(1.0).asin()
}

/// Position of the `m`-th eigenvalue on the phase grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridIndex {
    pub m: usize,
    pub n: usize,
    pub d: f64,
}

impl GridIndex {
    pub fn parity(&self) -> Parity {
        Parity::of(self.m)
    }

    /// Index within the parity family.
    pub fn j(&self) -> usize {
        self.m.div_ceil(2)
    }

    /// `q = (n + 3) / 2`.
    pub fn q(&self) -> f64 {
        0.5 * (self.n as f64 + 3.0)
    }
}

/// `d_m = pi (m + 1) / (n + 3)`.
pub fn grid_point(m: usize, n: usize) -> Result<GridIndex> {
    if n == 0 {
        return Err(Error::InvalidDimension(n));
    }
    if m == 0 || m > n {
        return Err(Error::IndexOutOfRange { index: m, max: n, n });
    }
    let d = PI * (m as f64 + 1.0) / (n as f64 + 3.0);
    Ok(GridIndex { m, n, d })
}

/// Symmetric banded storage: `band[i][k]` holds `T[i][i + k]`, `k = 0..=3`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandedMatrix {
    n: usize,
    band: Vec<[f64; BANDWIDTH + 1]>,
}

impl BandedMatrix {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, k: usize) -> f64 {
        let (lo, hi) = if i <= k { (i, k) } else { (k, i) };
        let off = hi - lo;
        if off > BANDWIDTH {
            0.0
        } else {
            self.band[lo][off]
        }
    }

    /// Upper band rows: `row(i)[k] = T[i][i + k]`.
    pub fn row(&self, i: usize) -> &[f64; BANDWIDTH + 1] {
        &self.band[i]
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|k| self.get(i, k)).collect())
            .collect()
    }
}

/// Materialises `T_n(a)` as an `n x n` banded matrix.
pub fn build_matrix(n: usize) -> Result<BandedMatrix> {
    if n == 0 {
        return Err(Error::InvalidDimension(n));
    }
    let a = fourier_coefficients();
    let band = (0..n)
        .map(|i| {
            let mut row = [0.0; BANDWIDTH + 1];
            for (k, slot) in row.iter_mut().enumerate() {
                if i + k < n {
                    *slot = a.get(k as i64);
                }
            }
            row
        })
        .collect();
    Ok(BandedMatrix { n, band })
}
