use thiserror::Error;

/// Coarse classification used by the CLI to pick an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Parse,
    Validation,
    Numeric,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph has no edges")]
    EmptyGraph,

    #[error("graph is disconnected")]
    Disconnected,

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown edge `{0}`")]
    UnknownEdge(String),

    #[error("duplicate name `{0}`")]
    DuplicateName(String),

    #[error("edge `{edge}` has invalid length {length}")]
    InvalidLength { edge: String, length: f64 },

    #[error("offset {offset} outside edge `{edge}` of length {length}")]
    OffsetOutOfRange {
        edge: String,
        offset: f64,
        length: f64,
    },

    #[error("cannot parse point `{0}`: expected `edge:offset` or a vertex name")]
    PointSyntax(String),

    #[error("measure has total mass {0}, expected 1")]
    NotUnitMass(f64),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("linear solve failed: residual {residual:e} exceeds tolerance")]
    SingularSystem { residual: f64 },

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::PointSyntax(_) | Error::Json(_) => ErrorKind::Parse,
            Error::NonFinite(_) | Error::SingularSystem { .. } | Error::Numeric(_) => {
                ErrorKind::Numeric
            }
            _ => ErrorKind::Validation,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
