//! Canonical binary serialization of the corpus stores.
//!
//! Each store file starts with the 8-byte header `LTRIDX1\n`, then a u64
//! record count, then records sorted by identifier. All integers are
//! little-endian; strings are u32-length-prefixed UTF-8. Writing the same
//! store twice produces byte-identical files.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use super::{
    Chunk, ChunkAnnotations, CorpusIndex, Document, EntityAnnotation, EntityType,
    RelationAnnotation, RelationType,
};
use crate::error::{Error, Result};

pub const INDEX_MAGIC: &[u8; 8] = b"LTRIDX1\n";

pub const DOCUMENTS_FILE: &str = "documents.bin";
pub const CHUNKS_FILE: &str = "chunks.bin";
pub const ANNOTATIONS_FILE: &str = "annotations.bin";

pub fn write_index(index: &CorpusIndex, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;

    let path = dir.join(DOCUMENTS_FILE);
    let mut w = Sink::create(&path)?;
    w.header(index.docs.len() as u64)?;
    for doc in index.docs.values() {
        w.string(&doc.doc_id)?;
        w.string(&doc.title)?;
        w.string(&doc.abstract_text)?;
        w.i32(doc.year)?;
        w.u64(doc.citations)?;
    }
    w.finish()?;

    let path = dir.join(CHUNKS_FILE);
    let mut w = Sink::create(&path)?;
    w.header(index.chunks.len() as u64)?;
    for chunk in index.chunks.values() {
        w.string(&chunk.chunk_id)?;
        w.string(&chunk.doc_id)?;
        w.u32(chunk.position)?;
        w.string(&chunk.text)?;
    }
    w.finish()?;

    let path = dir.join(ANNOTATIONS_FILE);
    let mut w = Sink::create(&path)?;
    w.header(index.annotations.len() as u64)?;
    for (chunk_id, ann) in &index.annotations {
        w.string(chunk_id)?;
        w.u32(ann.entities.len() as u32)?;
        for e in &ann.entities {
            w.string(&e.entity_id)?;
            w.u8(entity_type_tag(e.entity_type))?;
            w.u32(e.span[0])?;
            w.u32(e.span[1])?;
            w.string(&e.surface)?;
        }
        w.u32(ann.relations.len() as u32)?;
        for r in &ann.relations {
            w.string(&r.head_id)?;
            w.string(&r.tail_id)?;
            w.u8(relation_type_tag(r.relation_type))?;
        }
    }
    w.finish()?;
    Ok(())
}

pub fn read_index(dir: &Path) -> Result<CorpusIndex> {
    let mut docs = BTreeMap::new();
    let mut src = Source::open(&dir.join(DOCUMENTS_FILE))?;
    for _ in 0..src.header()? {
        let doc_id = src.string()?;
        let title = src.string()?;
        let abstract_text = src.string()?;
        let year = src.i32()?;
        let citations = src.u64()?;
        docs.insert(
            doc_id.clone(),
            Document {
                doc_id,
                title,
                abstract_text,
                year,
                citations,
            },
        );
    }
    src.expect_eof()?;

    let mut chunks = BTreeMap::new();
    let mut src = Source::open(&dir.join(CHUNKS_FILE))?;
    for _ in 0..src.header()? {
        let chunk_id = src.string()?;
        let doc_id = src.string()?;
        let position = src.u32()?;
        let text = src.string()?;
        chunks.insert(
            chunk_id.clone(),
            Chunk {
                chunk_id,
                doc_id,
                position,
                text,
            },
        );
    }
    src.expect_eof()?;

    let mut annotations = BTreeMap::new();
    let mut src = Source::open(&dir.join(ANNOTATIONS_FILE))?;
    for _ in 0..src.header()? {
        let chunk_id = src.string()?;
        let n_entities = src.u32()?;
        let mut entities = Vec::with_capacity(n_entities as usize);
        for _ in 0..n_entities {
            let entity_id = src.string()?;
            let entity_type = src.entity_type()?;
            let start = src.u32()?;
            let end = src.u32()?;
            let surface = src.string()?;
            entities.push(EntityAnnotation {
                entity_id,
                entity_type,
                span: [start, end],
                surface,
            });
        }
        let n_relations = src.u32()?;
        let mut relations = Vec::with_capacity(n_relations as usize);
        for _ in 0..n_relations {
            let head_id = src.string()?;
            let tail_id = src.string()?;
            let relation_type = src.relation_type()?;
            relations.push(RelationAnnotation {
                head_id,
                tail_id,
                relation_type,
            });
        }
        annotations.insert(
            chunk_id,
            ChunkAnnotations {
                entities,
                relations,
            },
        );
    }
    src.expect_eof()?;

    Ok(CorpusIndex {
        docs,
        chunks,
        annotations,
    })
}

fn entity_type_tag(t: EntityType) -> u8 {
    match t {
        EntityType::Gene => 0,
        EntityType::Disease => 1,
        EntityType::Chemical => 2,
    }
}

fn relation_type_tag(t: RelationType) -> u8 {
    RelationType::ALL.iter().position(|x| *x == t).unwrap() as u8
}

struct Sink {
    path: PathBuf,
    w: BufWriter<File>,
}

impl Sink {
    fn create(path: &Path) -> Result<Self> {
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        Ok(Sink {
            path: path.to_path_buf(),
            w: BufWriter::new(file),
        })
    }

    fn bytes(&mut self, b: &[u8]) -> Result<()> {
        self.w.write_all(b).map_err(|e| Error::io(&self.path, e))
    }

    fn header(&mut self, count: u64) -> Result<()> {
        self.bytes(INDEX_MAGIC)?;
        self.u64(count)
    }

    fn u8(&mut self, v: u8) -> Result<()> {
        self.bytes(&[v])
    }

    fn u32(&mut self, v: u32) -> Result<()> {
        self.bytes(&v.to_le_bytes())
    }

    fn i32(&mut self, v: i32) -> Result<()> {
        self.bytes(&v.to_le_bytes())
    }

    fn u64(&mut self, v: u64) -> Result<()> {
        self.bytes(&v.to_le_bytes())
    }

    fn string(&mut self, s: &str) -> Result<()> {
        self.u32(s.len() as u32)?;
        self.bytes(s.as_bytes())
    }

    fn finish(mut self) -> Result<()> {
        self.w.flush().map_err(|e| Error::io(&self.path, e))
    }
}

struct Source {
    path: PathBuf,
    r: BufReader<File>,
    offset: u64,
}

impl Source {
    fn open(path: &Path) -> Result<Self> {
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        Ok(Source {
            path: path.to_path_buf(),
            r: BufReader::new(file),
            offset: 0,
        })
    }

    fn truncated(&self, message: impl Into<String>) -> Error {
        Error::Truncated {
            path: self.path.clone(),
            offset: self.offset,
            message: message.into(),
        }
    }

    fn fill(&mut self, buf: &mut [u8]) -> Result<()> {
        self.r
            .read_exact(buf)
            .map_err(|_| self.truncated(format!("expected {} more bytes", buf.len())))?;
        self.offset += buf.len() as u64;
        Ok(())
    }

    fn header(&mut self) -> Result<u64> {
        let mut magic = [0u8; 8];
        self.fill(&mut magic)?;
        if &magic != INDEX_MAGIC {
            return Err(Error::BadMagic {
                path: self.path.clone(),
                expected: String::from_utf8_lossy(INDEX_MAGIC).into_owned(),
            });
        }
        self.u64()
    }

    fn u8(&mut self) -> Result<u8> {
        let mut b = [0u8; 1];
        self.fill(&mut b)?;
        Ok(b[0])
    }

    fn u32(&mut self) -> Result<u32> {
        let mut b = [0u8; 4];
        self.fill(&mut b)?;
        Ok(u32::from_le_bytes(b))
    }

    fn i32(&mut self) -> Result<i32> {
        let mut b = [0u8; 4];
        self.fill(&mut b)?;
        Ok(i32::from_le_bytes(b))
    }

    fn u64(&mut self) -> Result<u64> {
        let mut b = [0u8; 8];
        self.fill(&mut b)?;
        Ok(u64::from_le_bytes(b))
    }

    fn string(&mut self) -> Result<String> {
        let len = self.u32()? as usize;
        let mut buf = vec![0u8; len];
        self.fill(&mut buf)?;
        String::from_utf8(buf).map_err(|_| self.truncated("string payload is not UTF-8"))
    }

    fn entity_type(&mut self) -> Result<EntityType> {
        match self.u8()? {
            0 => Ok(EntityType::Gene),
            1 => Ok(EntityType::Disease),
            2 => Ok(EntityType::Chemical),
            t => Err(self.truncated(format!("invalid entity type tag {t}"))),
        }
    }

    fn relation_type(&mut self) -> Result<RelationType> {
        let tag = self.u8()? as usize;
        RelationType::ALL
            .get(tag)
            .copied()
            .ok_or_else(|| self.truncated(format!("invalid relation type tag {tag}")))
    }

    fn expect_eof(&mut self) -> Result<()> {
        let mut b = [0u8; 1];
        match self.r.read(&mut b) {
            Ok(0) => Ok(()),
            Ok(_) => Err(self.truncated("trailing bytes after final record")),
            Err(e) => Err(Error::io(&self.path, e)),
        }
    }
}
