//! Independent references for the spectrum.
//!
//! [`inertia`] counts eigenvalues below a shift from a symmetric banded
//! factorization carried out in double-double arithmetic and bisects on
//! that count. [`chebyshev`] evaluates `det T_n(a - g(phi))` through
//! Chebyshev polynomials of the three middle roots.

pub mod chebyshev;
pub mod inertia;

pub use chebyshev::{chebyshev_det, det_residual, ChebDetValue};
pub use inertia::{bisect_index, bisect_spectrum, ldlt_negcount, oracle_spectrum, EigenCount};
