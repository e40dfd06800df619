use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("field {0} is not a quadratic extension")]
    NotQuadraticExtension(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("element index {value} out of range for field of order {order}")]
    ElementOutOfRange { value: u32, order: usize },

    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("enumeration of {required} words exceeds budget {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("code is not self-orthogonal: generators {0} and {1} are not orthogonal")]
    NotSelfOrthogonal(usize, usize),
    #[error("radical codimension {0} is odd")]
    ParityViolation(usize),
    #[error("{ebits} ebits exceed the {logical} logical qudits of the receiver code")]
    InsufficientProtection { ebits: usize, logical: usize },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("parameter out of range: {0}")]
    Range(String),

    #[error("Hilbert space dimension {dim} exceeds cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("matrix product is not a Pauli multiple: {0}")]
    NonPauliResult(String),
    #[error("generators {0} and {1} do not commute")]
    NotAbelian(usize, usize),
    #[error("group contains a nontrivial phase multiple of the identity (omega^{0} I)")]
    PhaseObstruction(u32),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
