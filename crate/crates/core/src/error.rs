use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    MalformedRecord { line: usize, message: String },

    #[error("duplicate synset id `{0}`")]
    DuplicateSynset(String),

    #[error("synset `{from}` references unknown hypernym `{missing}`")]
    DanglingHypernym { from: String, missing: String },

    #[error("hypernym cycle detected through `{0}`")]
    HypernymCycle(String),

    #[error("unknown synset id `{0}`")]
    UnknownSynset(String),

    #[error("{}: byte offset {offset}: {message}", file.display())]
    MalformedWndb {
        file: PathBuf,
        offset: usize,
        message: String,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("token position {position} out of range (document has {len} tokens)")]
    PositionOutOfRange { position: usize, len: usize },

    #[error("document {0} appears more than once")]
    DuplicateDocument(usize),

    #[error("document {doc_id} is outside 0..{n_docs}")]
    DocumentOutOfRange { doc_id: usize, n_docs: usize },

    #[error("documents missing from merge: expected {expected}, got {got}")]
    MissingDocuments { expected: usize, got: usize },

    #[error("column `{0}` is not a node of the corpus graph")]
    UnknownColumn(String),

    #[error("the mutual_info heuristic requires class labels")]
    LabelsRequired,

    #[error("{labels} labels given for {rows} documents")]
    LabelCountMismatch { labels: usize, rows: usize },

    #[error("mutual information needs at least two distinct classes, found {0}")]
    SingleClass(usize),

    #[error("personalized pagerank needs a nonempty seed set")]
    EmptySeedSet,

    #[error("corpus contains no documents")]
    EmptyCorpus,

    #[error("model has no terms")]
    EmptyModel,

    #[error("taxonomy fingerprint {actual} does not match the model's {expected}")]
    FingerprintMismatch { expected: String, actual: String },

    #[error("unsupported model version `{found}` (expected `{expected}`)")]
    ModelVersion { found: String, expected: String },

    #[error("invalid model: {0}")]
    ModelInvariant(String),

    #[error("malformed model: {0}")]
    MalformedModel(#[from] serde_json::Error),

    #[error("row count mismatch: {left} vs {right}")]
    RowCountMismatch { left: usize, right: usize },

    #[error("duplicate column `{0}` after concatenation")]
    ColumnCollision(String),

    #[error("matrix market line {line}: {message}")]
    MalformedMatrix { line: usize, message: String },

    #[error("malformed matrix sidecar: {0}")]
    MalformedSidecar(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
