use thiserror::Error;

/// Errors raised by polynomial construction, solvers and region builders.
///
/// Numeric payloads are widened to `f64` so the error type does not depend on
/// the scalar parameter.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("leading coefficient is zero")]
    ZeroLeadingCoefficient,
    #[error("polynomial has no coefficients")]
    EmptyPolynomial,
    #[error("index {index} outside [{lo}, {hi}]")]
    IndexOutOfRange { index: usize, lo: usize, hi: usize },
    #[error("argument must be positive, got {0}")]
    NonpositiveArgument(f64),
    #[error("constant term is zero")]
    ZeroConstantTerm,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("root iteration did not converge (max residual {max_residual:e})")]
    NoConvergence {
        residuals: Vec<f64>,
        max_residual: f64,
    },
    #[error("bracket expansion exceeded 2^±80 while {0}")]
    BracketFailure(String),
    #[error("Pellet condition fails for k = {k}: min g_k = {min_value:e} at x = {minimizer}")]
    PelletInapplicable {
        k: usize,
        min_value: f64,
        minimizer: f64,
    },
    #[error("Pellet outcome for k = {k} is not a double root")]
    NotTangentCase { k: usize },
    #[error("membership of z = 0 in a reciprocal region is undefined")]
    ZeroArgumentForReciprocal,
    #[error("foci {0} and {1} coincide; disjointness certificate unavailable")]
    RepeatedFoci(usize, usize),
    #[error("deleted column sums do not collapse to two values (spread {0:e})")]
    InconsistentColumnSums(f64),
    #[error("region component touches the window boundary")]
    ComponentClipped,
    #[error("focus {0} falls outside every rasterized component")]
    ResolutionTooCoarse(usize),
    #[error("window is degenerate or resolution outside [{min}, {max}]", min = crate::render::MIN_RESOLUTION, max = crate::render::MAX_RESOLUTION)]
    WindowDegenerate,
    #[error("i/o failure: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
