use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Weight evaluation left f64 range (e.g. an exponential tower at large t).
    #[error("weight evaluation overflowed at t = {t} (family {family})")]
    EvalOverflow { t: f64, family: String },

    /// Generalized inverse target above the supremum of a bounded weight.
    #[error("value {y} is not reached by the weight (sup probed up to {x_max})")]
    UnreachableValue { y: f64, x_max: f64 },

    /// Operation needs a power-series representation the family does not have.
    #[error("family {family} has no power-series support: {reason}")]
    UnsupportedFamily { family: String, reason: String },

    /// Series summation shows no sign of convergence.
    #[error("series did not converge: n-th roots not below {ratio} within {n_max} terms")]
    Divergence { ratio: f64, n_max: usize },

    /// Saturated generation cannot start because the first gap is infinite.
    #[error("degenerate seed: weight vanishes at the seed (first gap infinite)")]
    DegenerateSeed,

    /// Closed-form node formula not real/increasing at the requested start index.
    #[error("formula invalid at j = {j}; smallest valid start index is {min_valid_j}")]
    InvalidRange { j: i64, min_valid_j: i64 },

    /// A scan asked for more window than the sequence provides.
    #[error("sequence window [{have_lo}, {have_hi}] too small; need coverage up to {need}")]
    TruncatedWindow { have_lo: f64, have_hi: f64, need: f64 },

    /// A check's stated hypothesis does not hold for the given input.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Line-oriented data file failed to parse.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Ordinate table not strictly ascending / too short.
    #[error("ordering error: {0}")]
    Order(String),

    /// Numeric integral diverges on the sampled range.
    #[error("integrand tail not negligible: {0}")]
    Integrability(String),

    /// Search bracket or grid cannot resolve the requested feature.
    #[error("resolution error: {0}")]
    Resolution(String),

    /// Maximizer pinned to the search boundary; caller should widen it.
    #[error("maximizer at search boundary T = {at}; widen the interval")]
    WidenInterval { at: f64 },

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
