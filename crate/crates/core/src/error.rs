use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported Coxeter family {family} with rank {rank}")]
    UnsupportedFamily { family: String, rank: usize },

    #[error("unknown Coxeter matrix name `{0}`")]
    UnknownMatrix(String),

    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),

    #[error("non-crystallographic entry m[{i}][{j}] = {value}; only 2, 3, 4, 6 and infinity are supported")]
    NonCrystallographic { i: usize, j: usize, value: u32 },

    #[error("generator s{index} is out of range for rank {rank}")]
    InvalidGenerator { index: usize, rank: usize },

    #[error("elements belong to different Coxeter groups")]
    GroupMismatch,

    #[error("word {0} is not reduced")]
    NotReduced(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("partition law violated: {0}")]
    PartitionLaw(String),

    #[error("relation cycle between `{0}` and `{1}`")]
    Cycle(String, String),

    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),

    #[error("element index {0} out of range")]
    UnknownElement(usize),

    #[error("invalid rank function: {0}")]
    InvalidRank(String),

    #[error("partner derivation failed for `{label}`: {reason}")]
    Partner { label: String, reason: String },

    #[error("hypothesis ({clause}) fails at {element}")]
    Hypothesis { clause: String, element: String },

    #[error("extension check failed: {0}")]
    Extension(String),

    #[error("invalid spectrum model: {0}")]
    Model(String),

    #[error("pipeline `{pipeline}` step {step}: {source}")]
    Step {
        pipeline: String,
        step: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("unknown builtin pipeline `{0}`")]
    UnknownBuiltin(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
