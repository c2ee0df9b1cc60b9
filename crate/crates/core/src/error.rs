use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unsupported algebra dimension {0} (must be 1..={max})", max = crate::ga::MAX_DIM)]
    UnsupportedDimension(usize),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("degenerate simplex (tau = {tau:e}, threshold = {threshold:e})")]
    DegenerateSimplex { tau: f64, threshold: f64 },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("index {index} out of range {lo}..={hi}")]
    IndexOutOfRange { index: usize, lo: usize, hi: usize },

    #[error("incomplete sample: {0}")]
    IncompleteSample(String),

    #[error("grade residual {residual:e} exceeds tolerance {tolerance:e}")]
    GradeResidual { residual: f64, tolerance: f64 },

    #[error("domain error at {point:?}: {detail}")]
    Domain { point: Vec<f64>, detail: String },

    #[error("no tabulated sample at {0:?}")]
    MissingSample(Vec<f64>),

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown identifier `{name}` at offset {offset}")]
    UnknownIdentifier { name: String, offset: usize },

    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
        if expected == found {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected, found })
        }
    }

    /// True for failures caused by the geometry (flat simplex, zero vector).
    pub fn is_degenerate(&self) -> bool {
        matches!(self, Error::DegenerateInput(_) | Error::DegenerateSimplex { .. })
    }

    /// True for failures caused by evaluating a field outside its domain.
    pub fn is_domain(&self) -> bool {
        matches!(self, Error::Domain { .. } | Error::MissingSample(_))
    }
}
