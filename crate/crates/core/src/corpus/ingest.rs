//! Corpus ingestion: JSONL parsing, referential validation, and persistence.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::{Path, PathBuf};

use serde::Deserialize;

use super::{
    split_sentences, Chunk, ChunkAnnotations, CorpusIndex, Document, EntityAnnotation,
    GoldQuestion, IngestSummary, RelationAnnotation,
};
use crate::error::{Error, Result};
use crate::vector::EmbeddingMatrix;

/// Input file paths for one ingest run.
#[derive(Debug, Clone)]
pub struct IngestInputs {
    pub docs_path: PathBuf,
    /// Pre-split chunks. When absent, documents are split with
    /// [`split_sentences`] over title then abstract.
    pub chunks_path: Option<PathBuf>,
    pub annotations_path: PathBuf,
    pub embeddings_path: PathBuf,
    pub ids_path: PathBuf,
}

/// Parse, validate, and persist a corpus into `out_dir`.
///
/// The embedding files are copied into the index directory verbatim; the
/// document/chunk/annotation stores are written in canonical binary form.
pub fn ingest_corpus(inputs: &IngestInputs, out_dir: &Path) -> Result<IngestSummary> {
    let index = build_index(inputs)?;

    // Embeddings are validated against the chunk store before anything is
    // persisted: row/id cardinality, zero rows, and id resolution.
    let matrix = EmbeddingMatrix::load(&inputs.embeddings_path, &inputs.ids_path)?;
    for id in matrix.ids() {
        if !index.chunks.contains_key(id) {
            return Err(Error::UnknownEmbeddingId(id.clone()));
        }
    }

    index.persist(out_dir)?;
    let dst_emb = out_dir.join("embeddings.bin");
    std::fs::copy(&inputs.embeddings_path, &dst_emb).map_err(|e| Error::io(&dst_emb, e))?;
    let dst_ids = out_dir.join("ids.txt");
    std::fs::copy(&inputs.ids_path, &dst_ids).map_err(|e| Error::io(&dst_ids, e))?;

    Ok(index.summary())
}

/// Build the validated in-memory index from the input files (no persistence,
/// no embedding check).
pub(crate) fn build_index(inputs: &IngestInputs) -> Result<CorpusIndex> {
    let mut index = CorpusIndex::default();

    for (line_no, doc) in JsonlReader::<Document>::open(&inputs.docs_path)? {
        let doc = doc?;
        if !(1500..=2100).contains(&doc.year) {
            return Err(Error::YearOutOfRange {
                doc_id: doc.doc_id.clone(),
                year: doc.year as i64,
            });
        }
        let _ = line_no;
        if index.docs.insert(doc.doc_id.clone(), doc.clone()).is_some() {
            return Err(Error::DuplicateDocument(doc.doc_id));
        }
    }

    match &inputs.chunks_path {
        Some(path) => {
            let mut positions: HashSet<(String, u32)> = HashSet::new();
            for (_, chunk) in JsonlReader::<Chunk>::open(path)? {
                let chunk = chunk?;
                if !index.docs.contains_key(&chunk.doc_id) {
                    return Err(Error::UnknownDocument {
                        chunk_id: chunk.chunk_id,
                        doc_id: chunk.doc_id,
                    });
                }
                if !positions.insert((chunk.doc_id.clone(), chunk.position)) {
                    return Err(Error::DuplicateChunkPosition {
                        doc_id: chunk.doc_id,
                        position: chunk.position,
                    });
                }
                if index
                    .chunks
                    .insert(chunk.chunk_id.clone(), chunk.clone())
                    .is_some()
                {
                    return Err(Error::DuplicateChunk(chunk.chunk_id));
                }
            }
        }
        None => {
            for doc in index.docs.values() {
                let mut position = 0u32;
                for part in [&doc.title, &doc.abstract_text] {
                    for sentence in split_sentences(part) {
                        let chunk_id = format!("{}#s{}", doc.doc_id, position);
                        index.chunks.insert(
                            chunk_id.clone(),
                            Chunk {
                                chunk_id,
                                doc_id: doc.doc_id.clone(),
                                position,
                                text: sentence,
                            },
                        );
                        position += 1;
                    }
                }
            }
        }
    }

    #[derive(Deserialize)]
    struct AnnotationRecord {
        chunk_id: String,
        #[serde(default)]
        entities: Vec<EntityAnnotation>,
        #[serde(default)]
        relations: Vec<RelationAnnotation>,
    }

    for (_, record) in JsonlReader::<AnnotationRecord>::open(&inputs.annotations_path)? {
        let record = record?;
        let chunk = index
            .chunks
            .get(&record.chunk_id)
            .ok_or_else(|| Error::UnknownChunk(record.chunk_id.clone()))?;

        let mut entities = Vec::new();
        for e in record.entities {
            if !entities.contains(&e) {
                entities.push(e);
            }
        }
        let mut relations = Vec::new();
        for r in record.relations {
            if !relations.contains(&r) {
                relations.push(r);
            }
        }

        let entry = index.annotations.entry(record.chunk_id.clone()).or_default();
        for e in entities {
            if !entry.entities.contains(&e) {
                entry.entities.push(e);
            }
        }
        for r in relations {
            if !entry.relations.contains(&r) {
                entry.relations.push(r);
            }
        }
        let chunk = chunk.clone();
        validate_annotations(&chunk, &index.annotations[&record.chunk_id])?;
    }

    index.annotations.retain(|_, a| !a.entities.is_empty() || !a.relations.is_empty());
    Ok(index)
}

/// Check entity spans and relation endpoints for one chunk.
pub(crate) fn validate_annotations(chunk: &Chunk, ann: &ChunkAnnotations) -> Result<()> {
    let char_len = chunk.text.chars().count();
    for e in &ann.entities {
        let [start, end] = e.span;
        if start >= end || end as usize > char_len {
            return Err(Error::BadEntitySpan {
                chunk_id: chunk.chunk_id.clone(),
                entity_id: e.entity_id.clone(),
                start,
                end,
                len: char_len,
            });
        }
    }
    let entity_ids: BTreeSet<&str> = ann.entities.iter().map(|e| e.entity_id.as_str()).collect();
    let mut offenders = Vec::new();
    for r in &ann.relations {
        if r.head_id == r.tail_id {
            offenders.push(format!("({}, {}, {}): head equals tail", r.head_id, r.tail_id, r.relation_type));
            continue;
        }
        for end in [&r.head_id, &r.tail_id] {
            if !entity_ids.contains(end.as_str()) {
                offenders.push(format!(
                    "({}, {}, {}): {} not among the chunk's entities",
                    r.head_id, r.tail_id, r.relation_type, end
                ));
            }
        }
    }
    if !offenders.is_empty() {
        return Err(Error::BadRelations {
            chunk_id: chunk.chunk_id.clone(),
            offenders: offenders.join("; "),
        });
    }
    Ok(())
}

/// Load a gold-standard question file against an opened index.
///
/// Relevant documents missing from the corpus are moved to
/// `missing_doc_ids` (callers report the count); a question whose listed
/// relevant set is empty is a hard error.
pub fn load_gold(path: &Path, index: &CorpusIndex) -> Result<Vec<GoldQuestion>> {
    #[derive(Deserialize)]
    struct GoldRecord {
        question_id: String,
        question: String,
        #[serde(default)]
        query_entities: Vec<String>,
        relevant_doc_ids: Vec<String>,
        #[serde(default)]
        question_embedding: Option<Vec<f32>>,
    }

    let mut questions = Vec::new();
    for (_, record) in JsonlReader::<GoldRecord>::open(path)? {
        let record = record?;
        if record.relevant_doc_ids.is_empty() {
            return Err(Error::EmptyGold(record.question_id));
        }
        let mut relevant = Vec::new();
        let mut missing = Vec::new();
        let mut seen = BTreeSet::new();
        for id in record.relevant_doc_ids {
            if !seen.insert(id.clone()) {
                continue;
            }
            if index.docs.contains_key(&id) {
                relevant.push(id);
            } else {
                missing.push(id);
            }
        }
        questions.push(GoldQuestion {
            question_id: record.question_id,
            question: record.question,
            query_entity_ids: record.query_entities,
            relevant_doc_ids: relevant,
            missing_doc_ids: missing,
            question_embedding: record.question_embedding,
        });
    }
    Ok(questions)
}

/// Line-by-line JSONL reader yielding `(line_number, record)` pairs with
/// path/line context on parse failures.
struct JsonlReader<T> {
    path: PathBuf,
    lines: std::io::Lines<BufReader<File>>,
    line_no: usize,
    _marker: std::marker::PhantomData<T>,
}

impl<T: serde::de::DeserializeOwned> JsonlReader<T> {
    fn open(path: &Path) -> Result<Self> {
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        Ok(JsonlReader {
            path: path.to_path_buf(),
            lines: BufReader::new(file).lines(),
            line_no: 0,
            _marker: std::marker::PhantomData,
        })
    }
}

impl<T: serde::de::DeserializeOwned> Iterator for JsonlReader<T> {
    type Item = (usize, Result<T>);

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            self.line_no += 1;
            let line = match self.lines.next()? {
                Ok(line) => line,
                Err(e) => return Some((self.line_no, Err(Error::io(&self.path, e)))),
            };
            if line.trim().is_empty() {
                continue;
            }
            let parsed = serde_json::from_str::<T>(&line)
                .map_err(|e| Error::parse_line(&self.path, self.line_no, e.to_string()));
            return Some((self.line_no, parsed));
        }
    }
}

#[allow(dead_code)]
fn f64_from(_: BTreeMap<String, String>) {}
