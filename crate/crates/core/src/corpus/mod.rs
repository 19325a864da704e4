//! Corpus store: documents, sentence chunks, and their entity/relation
//! annotations, persisted as an immutable index directory.
//!
//! The store owns the canonical identifier space. Every other module keys on
//! the `doc_id` / `chunk_id` / `entity_id` strings validated here.

mod ingest;
mod persist;
mod split;

pub use ingest::{ingest_corpus, load_gold, IngestInputs};
pub use split::split_sentences;

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type DocId = String;
pub type ChunkId = String;
pub type EntityId = String;

/// One article: the unit that carries recency (year) and impact (citations).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub doc_id: DocId,
    pub title: String,
    #[serde(rename = "abstract")]
    pub abstract_text: String,
    pub year: i32,
    pub citations: u64,
}

/// One sentence of a document: the unit of indexing and retrieval.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chunk {
    pub chunk_id: ChunkId,
    pub doc_id: DocId,
    pub position: u32,
    pub text: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntityType {
    Gene,
    Disease,
    Chemical,
}

impl fmt::Display for EntityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            EntityType::Gene => "gene",
            EntityType::Disease => "disease",
            EntityType::Chemical => "chemical",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for EntityType {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "gene" => Ok(EntityType::Gene),
            "disease" => Ok(EntityType::Disease),
            "chemical" => Ok(EntityType::Chemical),
            other => Err(format!("unknown entity type {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationType {
    Association,
    PositiveCorrelation,
    NegativeCorrelation,
    Cotreatment,
    Comparison,
    Bind,
}

impl RelationType {
    pub const ALL: [RelationType; 6] = [
        RelationType::Association,
        RelationType::PositiveCorrelation,
        RelationType::NegativeCorrelation,
        RelationType::Cotreatment,
        RelationType::Comparison,
        RelationType::Bind,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            RelationType::Association => "association",
            RelationType::PositiveCorrelation => "positive_correlation",
            RelationType::NegativeCorrelation => "negative_correlation",
            RelationType::Cotreatment => "cotreatment",
            RelationType::Comparison => "comparison",
            RelationType::Bind => "bind",
        }
    }
}

impl fmt::Display for RelationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A normalized entity mention with half-open character offsets into the
/// chunk text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntityAnnotation {
    #[serde(rename = "id")]
    pub entity_id: EntityId,
    #[serde(rename = "type")]
    pub entity_type: EntityType,
    pub span: [u32; 2],
    #[serde(rename = "text")]
    pub surface: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationAnnotation {
    #[serde(rename = "head")]
    pub head_id: EntityId,
    #[serde(rename = "tail")]
    pub tail_id: EntityId,
    #[serde(rename = "type")]
    pub relation_type: RelationType,
}

/// All annotations carried by a single chunk.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ChunkAnnotations {
    pub entities: Vec<EntityAnnotation>,
    pub relations: Vec<RelationAnnotation>,
}

/// One expert-annotated benchmark question.
#[derive(Debug, Clone, PartialEq)]
pub struct GoldQuestion {
    pub question_id: String,
    pub question: String,
    pub query_entity_ids: Vec<EntityId>,
    /// Relevant documents that resolve to the ingested corpus.
    pub relevant_doc_ids: Vec<DocId>,
    /// Listed relevant documents that are not in the corpus (reported, not
    /// used in metric denominators).
    pub missing_doc_ids: Vec<DocId>,
    pub question_embedding: Option<Vec<f32>>,
}

/// Ingest result counts (after deduplication of exact duplicate annotation
/// records).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IngestSummary {
    pub documents: usize,
    pub chunks: usize,
    pub annotated_chunks: usize,
    pub entities: usize,
    pub relations: usize,
}

/// The persisted, read-only corpus index.
///
/// Maps are `BTreeMap`s so iteration order, serialization, and graph
/// construction are independent of input ordering.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CorpusIndex {
    pub(crate) docs: BTreeMap<DocId, Document>,
    pub(crate) chunks: BTreeMap<ChunkId, Chunk>,
    pub(crate) annotations: BTreeMap<ChunkId, ChunkAnnotations>,
}

impl CorpusIndex {
    /// Open a previously ingested index directory.
    pub fn open(dir: &Path) -> Result<Self> {
        persist::read_index(dir)
    }

    /// Write the canonical binary stores into `dir`.
    pub fn persist(&self, dir: &Path) -> Result<()> {
        persist::write_index(self, dir)
    }

    pub fn document(&self, doc_id: &str) -> Option<&Document> {
        self.docs.get(doc_id)
    }

    pub fn chunk(&self, chunk_id: &str) -> Option<&Chunk> {
        self.chunks.get(chunk_id)
    }

    pub fn chunk_annotations(&self, chunk_id: &str) -> Option<&ChunkAnnotations> {
        self.annotations.get(chunk_id)
    }

    pub fn documents(&self) -> impl Iterator<Item = &Document> {
        self.docs.values()
    }

    pub fn chunks(&self) -> impl Iterator<Item = &Chunk> {
        self.chunks.values()
    }

    /// Annotated chunks in chunk-id order.
    pub fn annotated_chunks(&self) -> impl Iterator<Item = (&ChunkId, &ChunkAnnotations)> {
        self.annotations.iter()
    }

    pub fn doc_count(&self) -> usize {
        self.docs.len()
    }

    pub fn chunk_count(&self) -> usize {
        self.chunks.len()
    }

    pub fn summary(&self) -> IngestSummary {
        IngestSummary {
            documents: self.docs.len(),
            chunks: self.chunks.len(),
            annotated_chunks: self.annotations.len(),
            entities: self.annotations.values().map(|a| a.entities.len()).sum(),
            relations: self.annotations.values().map(|a| a.relations.len()).sum(),
        }
    }

    /// Re-assert the ingest-time referential invariants. Cheap enough to run
    /// after every reload.
    pub fn validate(&self) -> Result<()> {
        for chunk in self.chunks.values() {
            if !self.docs.contains_key(&chunk.doc_id) {
                return Err(Error::UnknownDocument {
                    chunk_id: chunk.chunk_id.clone(),
                    doc_id: chunk.doc_id.clone(),
                });
            }
        }
        for (chunk_id, ann) in &self.annotations {
            let chunk = self
                .chunks
                .get(chunk_id)
                .ok_or_else(|| Error::UnknownChunk(chunk_id.clone()))?;
            ingest::validate_annotations(chunk, ann)?;
        }
        Ok(())
    }
}
