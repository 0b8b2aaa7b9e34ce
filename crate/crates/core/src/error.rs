use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("log-gamma pole at z = {0}")]
    GammaPole(f64),

    #[error("pole of chi at s = {0}")]
    ChiPole(Complex64),

    #[error("zeta has a pole at s = 1")]
    ZetaPole,

    #[error("{what} out of regime at s = {s}: {reason}")]
    OutOfRegime {
        what: &'static str,
        s: Complex64,
        reason: String,
    },

    #[error("asymptotic form has a pole near s = {0} (cos 2πη ≈ 0)")]
    NearAsymptoticPole(Complex64),

    #[error("accuracy unreachable: best estimate {best} with error {error:e} > target {target:e}")]
    AccuracyUnreachable {
        best: Complex64,
        error: f64,
        target: f64,
    },

    #[error("zero on or near the boundary segment {from} -> {to}")]
    BoundaryZero { from: Complex64, to: Complex64 },

    #[error("zero refinement from seed {seed} failed: {reason}")]
    RefinementFailed {
        seed: Complex64,
        reason: String,
        trace: Vec<Complex64>,
    },

    #[error("odd Bernoulli bound supports orders 1..=3, got {0}")]
    UnsupportedOrder(u32),

    #[error("T = {t} beyond catalog frontier {frontier}")]
    BeyondFrontier { t: f64, frontier: f64 },

    #[error("scan failed in {} cell(s): {}", cells.len(), cells.join("; "))]
    ScanFailed { cells: Vec<String> },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("config: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn regime(what: &'static str, s: Complex64, reason: impl Into<String>) -> Self {
        Error::OutOfRegime {
            what,
            s,
            reason: reason.into(),
        }
    }
}
