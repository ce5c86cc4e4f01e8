use std::fmt;

/// Violated axiom of a generalised Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GcmError {
    Empty,
    NotSquare { row: usize, len: usize, expected: usize },
    Diagonal { i: usize, value: i64 },
    PositiveOffDiagonal { i: usize, j: usize, value: i64 },
    ZeroAsymmetry { i: usize, j: usize },
    RankTooLarge(usize),
}

impl fmt::Display for GcmError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GcmError::Empty => write!(f, "matrix is empty"),
            GcmError::NotSquare { row, len, expected } => {
                write!(f, "row {} has {} entries, expected {}", row + 1, len, expected)
            }
            GcmError::Diagonal { i, value } => {
                write!(f, "diagonal entry a[{0}][{0}] = {1}, must be 2", i + 1, value)
            }
            GcmError::PositiveOffDiagonal { i, j, value } => {
                write!(f, "off-diagonal entry a[{}][{}] = {} is positive", i + 1, j + 1, value)
            }
            GcmError::ZeroAsymmetry { i, j } => {
                write!(f, "a[{0}][{1}] and a[{1}][{0}] must vanish together", i + 1, j + 1)
            }
            GcmError::RankTooLarge(n) => write!(f, "rank {} exceeds the supported maximum of 32", n),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("field order {p}^{h} exceeds the bound {bound}")]
    FieldTooLarge { p: u64, h: u32, bound: u64 },
    #[error("group order exceeds the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("invalid Cartan matrix: {0}")]
    Gcm(GcmError),
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("search budget of {0} nodes exhausted")]
    BudgetExhausted(u64),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("integer overflow in exact linear algebra")]
    Overflow,
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl From<GcmError> for Error {
    fn from(e: GcmError) -> Self {
        Error::Gcm(e)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
