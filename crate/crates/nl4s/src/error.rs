use crate::evolution::TrajectoryRecord;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("alpha = {alpha} is mass-critical in dimension {d}")]
    MassCritical { d: usize, alpha: f64 },
    #[error("alpha = {alpha} lies outside the intercritical window for d = {d}")]
    OutOfWindow { d: usize, alpha: f64 },
    #[error("dimension {d} is not supported here (need d >= 5)")]
    UnsupportedDimension { d: usize },

    #[error("bad grid shape: {0}")]
    BadShape(String),
    #[error("symbol is not finite at |xi| = {xi}")]
    SingularSymbol { xi: f64 },
    #[error("field is underresolved after rescaling (lost fraction {tail:.3e})")]
    Underresolved { tail: f64 },
    #[error("field is identically zero")]
    ZeroField,

    #[error("no convergence after {iterations} iterations (residual {residual:.3e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("iterate diverged at iteration {iteration}")]
    DivergedIterate { iteration: usize },
    #[error("non-finite values at t = {t}")]
    NonFinite { t: f64, partial: Vec<TrajectoryRecord> },

    #[error("insufficient growth for a rate fit: {decades:.2} decades of h_2")]
    InsufficientGrowth { decades: f64 },
    #[error("cutoff radius {r} too large: need 2R < {limit}")]
    CutoffTooLarge { r: f64, limit: f64 },
    #[error("constraint violated: {0}")]
    ConstraintViolated(String),
    #[error("window radius {a} too large: need a < {limit}")]
    WindowTooLarge { a: f64, limit: f64 },

    #[error("shift for index {n} leaves the box")]
    ShiftOutOfBox { n: usize },
    #[error("profile {profile} collides with an earlier profile on most tail indices")]
    NoSeparation { profile: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed file {path}: {msg}")]
    Format { path: String, msg: String },
}

impl Error {
    /// Process exit code used by the command-line runner.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NoConvergence { .. }
            | Error::DivergedIterate { .. }
            | Error::NonFinite { .. }
            | Error::InsufficientGrowth { .. }
            | Error::ConstraintViolated(_)
            | Error::NoSeparation { .. } => 3,
            Error::Io { .. } | Error::Format { .. } => 4,
            _ => 2,
        }
    }

    pub(crate) fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }
}
