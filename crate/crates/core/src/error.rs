use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Cartan specification: {0}")]
    InvalidSpec(String),

    #[error("simple reflection index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("Weyl group exceeds the element limit of {limit}")]
    GroupTooLarge { limit: usize },

    #[error("length polynomial does not factor into q-integers: {0}")]
    FactorizationFailed(String),

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: String, right: String },

    #[error("rank {rank} and signature {sgn} have different parity")]
    ParityViolation { rank: i64, sgn: i64 },

    #[error("matrix is not an involution")]
    NotInvolution,

    #[error("{count} involution classes attain the maximal compact rank")]
    NonUniqueMaximizer { count: usize },

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid outer twist: {0}")]
    InvalidTwist(String),
}

impl Error {
    /// Errors that mean a computed invariant disagrees with the theory, as
    /// opposed to bad input or exhausted limits.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(
            self,
            Error::FactorizationFailed(_)
                | Error::InexactDivision(_)
                | Error::NonUniqueMaximizer { .. }
        )
    }
}
