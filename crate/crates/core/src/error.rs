use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("n must be >= 1 (got {0})")]
    InvalidDimension(usize),

    #[error("index {index} out of range 1..={max} for n = {n}")]
    IndexOutOfRange { index: usize, max: usize, n: usize },

    #[error("phase {phi} outside the admissible domain {domain}")]
    Domain { phi: f64, domain: &'static str },

    #[error("phase {phi} is above the small-phase window {window}")]
    OutsideWindow { phi: f64, window: f64 },

    #[error("root m = {m} did not converge in {iters} iterations (last step {last_step:e})")]
    NonConvergence { m: usize, iters: usize, last_step: f64 },

    #[error("root m = {m} left its bracket ({lo}, {hi}): phi = {phi}")]
    BracketViolation { m: usize, phi: f64, lo: f64, hi: f64 },

    #[error("roots are not interlaced at m = {m}: {left} >= {right}")]
    Interlacing { m: usize, left: f64, right: f64 },

    #[error("index j = {j} is in the {actual} regime for n = {n}")]
    RegimeMismatch { j: usize, n: usize, actual: &'static str },

    #[error("invalid option: {0}")]
    InvalidOption(String),
}

impl Error {
    /// True for failures of the numerics, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonConvergence { .. }
                | Error::BracketViolation { .. }
                | Error::Interlacing { .. }
        )
    }
}
