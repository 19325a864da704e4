//! Crate-wide error type.

use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: invalid record: {message}")]
    ParseLine {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("duplicate document id {0}")]
    DuplicateDocument(String),

    #[error("duplicate chunk id {0}")]
    DuplicateChunk(String),

    #[error("duplicate chunk position {position} in document {doc_id}")]
    DuplicateChunkPosition { doc_id: String, position: u32 },

    #[error("chunk {chunk_id} references unknown document {doc_id}")]
    UnknownDocument { chunk_id: String, doc_id: String },

    #[error("annotation references unknown chunk {0}")]
    UnknownChunk(String),

    #[error("document {doc_id}: year {year} outside [1500, 2100]")]
    YearOutOfRange { doc_id: String, year: i64 },

    #[error("chunk {chunk_id}: entity {entity_id} span [{start}, {end}) invalid for text of {len} chars")]
    BadEntitySpan {
        chunk_id: String,
        entity_id: String,
        start: u32,
        end: u32,
        len: usize,
    },

    #[error("chunk {chunk_id}: invalid relations: {offenders}")]
    BadRelations { chunk_id: String, offenders: String },

    #[error("{path}: bad magic at byte 0 (expected {expected:?})")]
    BadMagic { path: PathBuf, expected: String },

    #[error("{path}: unsupported format version {version} at byte {offset}")]
    BadVersion {
        path: PathBuf,
        version: u32,
        offset: u64,
    },

    #[error("{path}: truncated or malformed payload at byte {offset}: {message}")]
    Truncated {
        path: PathBuf,
        offset: u64,
        message: String,
    },

    #[error("embedding count {rows} does not match id file line count {ids}")]
    EmbeddingCountMismatch { rows: usize, ids: usize },

    #[error("duplicate embedding id {0}")]
    DuplicateEmbeddingId(String),

    #[error("embedding id {0} does not resolve to an ingested chunk")]
    UnknownEmbeddingId(String),

    #[error("embedding row {row} is the all-zero vector; cosine is undefined")]
    ZeroRow { row: usize },

    #[error("zero vector passed where cosine similarity is required")]
    ZeroVector,

    #[error("vector dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("unknown entities: {0}")]
    UnknownEntities(String),

    #[error("no query entities")]
    NoQueryEntities,

    #[error("question embedding required for method {0}")]
    MissingQuestionEmbedding(String),

    #[error("chunk {0} has no embedding row")]
    MissingEmbeddingRow(String),

    #[error("gold question {0}: relevant_doc_ids is empty")]
    EmptyGold(String),

    #[error("empty gold document set")]
    EmptyGoldSet,

    #[error("chunk {0} is not assigned in the cluster model")]
    UnassignedChunk(String),

    #[error("k-means: k = {k} exceeds the {distinct} distinct embedding rows")]
    TooManyClusters { k: usize, distinct: usize },

    #[error("synthetic corpus constraints are infeasible: {0}")]
    InfeasibleParams(String),

    #[error("embedding provider error: {0}")]
    EmbeddingProvider(String),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn parse_line(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Error::ParseLine {
            path: path.into(),
            line,
            message: message.into(),
        }
    }
}
