use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    Shape(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("polynomial is zero")]
    ZeroPolynomial,

    #[error("polynomial is not squarefree")]
    NotSquarefree,

    #[error("operation requires a prime field")]
    NotPrimeField,

    #[error("field too small: {0}")]
    FieldTooSmall(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what}: gave up after {attempts} attempts")]
    RetriesExhausted { what: String, attempts: usize },

    /// Input violates a general-position hypothesis.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("pencil has generic rank {rank} < {rows} rows (trisecant or degenerate configuration)")]
    RankDeficientPencil { rank: usize, rows: usize },

    /// Leading coefficient in the eliminated variable vanishes identically.
    #[error("leading coefficient vanishes in the eliminated variable; change coordinates")]
    NeedsCoordinateChange,

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Errors caused by the input configuration rather than by usage.
    pub fn is_degenerate_input(&self) -> bool {
        matches!(
            self,
            Error::Degenerate(_)
                | Error::RankDeficientPencil { .. }
                | Error::RetriesExhausted { .. }
                | Error::FieldTooSmall(_)
                | Error::NeedsCoordinateChange
                | Error::NotSquarefree
        )
    }
}
