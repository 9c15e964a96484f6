use thiserror::Error;

use crate::solver::PicardSolution;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("band [{lo}, {hi}) is not resolved by the frequency grid: {reason}")]
    UnresolvableBand { lo: f64, hi: f64, reason: String },

    #[error("relative error undefined: {0}")]
    ZeroDenominator(String),

    #[error(
        "imaginary residue {max_imag:e} exceeds tolerance relative to max real part {max_real:e}"
    )]
    ImaginaryResidue { max_imag: f64, max_real: f64 },

    /// The best iterate is returned alongside the report.
    #[error("Picard iteration did not reach tol after {} iterations (last increment {:e})",
        .0.report.iterations, .0.report.last_increment())]
    MaxIterExceeded(Box<PicardSolution>),

    #[error("Picard iteration diverged: increments grew for 3 consecutive iterations (last {:e})",
        .0.report.last_increment())]
    Diverged(Box<PicardSolution>),

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Non-convergence errors carry a usable iterate.
    pub fn into_partial_solution(self) -> Option<PicardSolution> {
        match self {
            Error::MaxIterExceeded(s) | Error::Diverged(s) => Some(*s),
            _ => None,
        }
    }

    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::MaxIterExceeded(_)
                | Error::Diverged(_)
                | Error::ImaginaryResidue { .. }
                | Error::DegenerateFit(_)
                | Error::ZeroDenominator(_)
        )
    }
}
