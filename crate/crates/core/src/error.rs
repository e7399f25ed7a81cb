use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("labels not disjoint: {0:?}")]
    LabelsNotDisjoint(Vec<u8>),

    #[error("invalid cell: {0}")]
    InvalidCell(String),

    #[error("differential does not square to zero at degree {degree}: offending cell {cell}")]
    DifferentialNotNilpotent { degree: usize, cell: String },

    #[error("not a chain map: commutation fails in degree {degree}")]
    NotAChainMap { degree: usize },

    #[error("size guardrail exceeded: estimated {estimate} simplices (limit {limit}); {hint}")]
    Guardrail { estimate: u128, limit: u128, hint: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Internal self-check failures (as opposed to bad user input).
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::DifferentialNotNilpotent { .. } | Error::NotAChainMap { .. } | Error::Internal(_)
        )
    }
}
