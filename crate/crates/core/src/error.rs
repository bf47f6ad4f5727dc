use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("closed walks require an even number of steps, got N = {0}")]
    OddLength(u32),

    #[error("walk of {0} steps does not return to the origin")]
    NotClosed(usize),

    #[error("N = {n} exceeds the {engine} budget of N <= {max}")]
    Budget {
        engine: &'static str,
        n: u32,
        max: u32,
    },

    #[error("invalid flux {p}/{q}: {reason}")]
    InvalidFlux {
        p: i64,
        q: i64,
        reason: &'static str,
    },

    #[error("eigendecomposition failed at k = ({k1}, {k2}) for flux {p}/{q}")]
    Eigen { p: u64, q: u64, k1: f64, k2: f64 },

    #[error("trace has imaginary residue {im:e} (value {re:e})")]
    ImaginaryResidue { re: f64, im: f64 },

    #[error("count for area {area} is {value}, {residue:.3} away from an integer")]
    RoundingResidue { area: i64, value: f64, residue: f64 },

    #[error("engine inconsistency: {0}")]
    Inconsistent(String),

    #[error("phase calibration failed: residuals {residuals:?}")]
    Calibration { residuals: Vec<(u32, f64)> },

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
