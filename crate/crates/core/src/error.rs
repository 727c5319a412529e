use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable {name:?} at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("non-rational coefficient at position {pos}")]
    NonRationalCoefficient { pos: usize },
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("expected a nonzero homogeneous quartic in 4 variables, got {0}")]
    NotAQuartic(String),
    #[error("ideal generators must be nonzero")]
    ZeroGenerator,
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("resolution exceeded {0} steps; the syzygy computation did not terminate")]
    ResolutionTooLong(usize),
    #[error("ideal is not saturated; saturate first")]
    NotSaturated,
    #[error("resolution has length {0}; saturate first")]
    ResolutionLengthUnsupported(usize),
    #[error("vanishing scheme has dimension {0}; the restriction method needs a finite scheme")]
    PositiveDimensional(i64),
    #[error("complex is not exact at homological position {position} in degree {degree}: {detail}")]
    NotExact { position: usize, degree: i64, detail: String },
    #[error("invalid twist range: {0}")]
    InvalidTwistRange(String),
    #[error("invalid moduli invariants: {0}")]
    InvalidInvariants(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// Whether the error is caused by the input rather than by the engine.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::ResolutionTooLong(_) | Error::NotExact { .. } | Error::Internal(_))
    }
}
