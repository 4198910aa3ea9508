use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain violation at x = {x}: {reason}")]
    DomainViolation { x: f64, reason: String },

    #[error("invalid domain [{lo}, {hi}]")]
    InvalidDomain { lo: f64, hi: f64 },

    #[error("quadrature did not reach tolerance {tol:e} on [{a}, {b}]")]
    QuadratureFailure { a: f64, b: f64, tol: f64 },

    #[error("x = 0 lies in the domain but the momentum numerator does not vanish there ({numerator:e})")]
    SingularAxis { numerator: f64 },

    #[error("negative radicand on [{lo}, {hi}]")]
    NegativeRadicand { lo: f64, hi: f64 },

    #[error("curvature is singular on the axis at x = {x}")]
    AxisSingularity { x: f64 },

    #[error("exponent n = -2 is not allowed")]
    ExponentForbidden,

    #[error("mu must be positive, got {mu}")]
    NonPositiveMu { mu: f64 },

    #[error("1 - K^2 has a zero of order >= 2 at x = {x}; the integral diverges")]
    NonIntegrableSingularity { x: f64 },

    #[error("cannot continue across the turning point at s = {s}: {reason}")]
    EventLocatorFailure { s: f64, reason: String },

    #[error("step size underflow at s = {s}")]
    StepUnderflow { s: f64 },

    #[error("degenerate polyline: {0}")]
    DegeneratePolyline(String),

    #[error("degenerate profile: {0}")]
    DegenerateProfile(String),

    #[error("mesh is not manifold: {0}")]
    NonManifold(String),

    #[error("parameter {name} out of range: {reason}")]
    ParamOutOfRange { name: String, reason: String },

    #[error("no sign change on [{a}, {b}]")]
    RootBracketFailure { a: f64, b: f64 },

    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),

    #[error("expression evaluation failed at x = {x}: {reason}")]
    Evaluation { x: f64, reason: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// True for failures of the numerical machinery, as opposed to inputs
    /// that were rejected by validation.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::QuadratureFailure { .. }
                | Error::EventLocatorFailure { .. }
                | Error::StepUnderflow { .. }
                | Error::RootBracketFailure { .. }
                | Error::NonIntegrableSingularity { .. }
                | Error::Evaluation { .. }
        )
    }

    pub(crate) fn param(name: &str, reason: impl Into<String>) -> Self {
        Error::ParamOutOfRange {
            name: name.to_string(),
            reason: reason.into(),
        }
    }
}
