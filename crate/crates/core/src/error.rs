use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {v} out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("operation undefined on the empty graph")]
    EmptyGraph,
    #[error("graph has {n} vertices, above the limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
}

impl GraphError {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        GraphError::Parse {
            offset,
            message: message.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("parameter out of domain: {0}")]
    Domain(String),
    #[error("malformed query: {0}")]
    Query(String),
    #[error("unknown registry key `{0}`")]
    UnknownKey(String),
    #[error("size limit exceeded: {what} on {n} vertices (limit {limit})")]
    SizeLimit {
        what: &'static str,
        n: usize,
        limit: usize,
    },
    #[error("rule registry contradiction: {0}")]
    Contradiction(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("plan: {0}")]
    Plan(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
