use thiserror::Error;

/// Errors surfaced by the numeric kernels.
#[derive(Debug, Error)]
pub enum QError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A truncated series or product failed to reach the tail tolerance
    /// within `max_terms`.
    #[error("series did not converge within {max_terms} terms (last relative term {last_term:e})")]
    NonConvergent { max_terms: usize, last_term: f64 },

    /// The series diverges for the given parameters and argument.
    #[error("divergent series: {0}")]
    DivergentSeries(String),

    /// A lower parameter of the form q^(-m) produces a zero denominator
    /// before the series terminates.
    #[error("pole in lower parameters at term {term}")]
    PoleInParameters { term: usize },

    /// A boundary term of a doubly infinite lattice sum is still significant
    /// at the window edge.
    #[error("lattice window ({k_min}, {k_max}) too small: boundary term {boundary:e} exceeds tolerance relative to the partial sum")]
    WindowTooSmall { k_min: i64, k_max: i64, boundary: f64 },

    /// Principal power of a negative real argument with non-integer exponent.
    #[error("branch cut: negative real argument with non-integer order")]
    BranchCut,

    #[error("domain error: {0}")]
    DomainError(String),

    /// Lattice function evaluated outside its window.
    #[error("lattice point {sign}q^{k} outside window ({k_min}, {k_max})")]
    OutsideWindow { sign: i8, k: i64, k_min: i64, k_max: i64 },

    #[error("zero argument not admitted")]
    ZeroArgument,

    /// Both closed-form branches of the q-Weber-Schafheitlin identity are
    /// excluded by the exceptional-case predicates.
    #[error("no valid closed-form branch for the given parameters")]
    NoValidBranch,

    /// The convergence condition lambda < mu + nu + 1 fails.
    #[error("convergence condition violated: lambda >= mu + nu + 1")]
    ConvergenceViolation,

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, QError>;
