use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error at token {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("label `{label}` at position {position} is already used in this word")]
    DuplicateLabel { position: usize, label: String },

    #[error("edge ({creation},{annihilation}) does not join a creator to an annihilator")]
    InvalidEdge {
        creation: usize,
        annihilation: usize,
    },

    #[error("position {position} is out of range or does not hold two adjacent annihilators")]
    InvalidReorder { position: usize },

    #[error("malformed sum: {0}")]
    Structural(String),

    #[error("no numeric value assigned to `{0}`")]
    Unassigned(String),

    #[error("numeric evaluation of a limit object `{0}`")]
    LimitObject(String),

    #[error("quadrature did not converge at lambda={lambda}: estimated error {estimate:e}")]
    QuadratureNotConverged { lambda: f64, estimate: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
