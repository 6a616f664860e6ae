//! Eigenvalues of the symmetric heptadiagonal Toeplitz matrices `T_n(a)`
//! generated by the symbol `a(t) = (t - 2 + 1/t)^3`.
//!
//! The spectrum is parametrised by a phase `phi` in `(0, pi)` through
//! `lambda = g(phi) = -(2 sin(phi/2))^6`. Every eigenvalue is the root of one
//! of two scalar secular equations
//!
//! ```text
//! tan((n+3)/2 * phi) = f(phi)        (odd indices m = 2j-1)
//! tan((n+3)/2 * phi) = 1 / h(phi)    (even indices m = 2j)
//! ```
//!
//! which this crate solves by a contracting fixed-point iteration
//! ([`solver`]), approximates in closed form ([`asymptotic`]), and checks
//! against two independent references ([`oracle`]): inertia counting of
//! `T_n - lambda I` in double-double arithmetic, and the Chebyshev
//! polynomial determinant identity.
//!
//! ```
//! use hepta_core::solver::{full_spectrum, SolverOptions};
//!
//! let spectrum = full_spectrum(2, &SolverOptions::default()).unwrap();
//! let lambdas: Vec<f64> = spectrum.roots.iter().map(|r| r.lambda).collect();
//! assert!((lambdas[0] + 5.0).abs() < 1e-12);
//! assert!((lambdas[1] + 35.0).abs() < 1e-12);
//! ```

pub mod asymptotic;
pub mod auxiliary;
pub mod error;
pub mod oracle;
pub mod report;
pub mod secular;
pub mod solver;
pub mod symbol;

pub use error::{Error, Result};
pub use symbol::{BandedMatrix, GridIndex, Parity, PhasePoint, SymbolCoefficients};
