//! Retrieval engine and benchmark harness for annotated scientific corpora.
//!
//! Three retrieval strategies over the same indexed corpus:
//!
//! - **ES**: dense embedding similarity — rank all embedded chunks by cosine
//!   similarity to the question embedding ([`vector`]).
//! - **KG**: knowledge-graph retrieval — map chunks onto an entity graph,
//!   scope retrieval to the shortest path between question entities, and
//!   rank the scoped chunks by iterative Pareto peeling over document
//!   recency and citation impact ([`graph`], [`prioritize`]).
//! - **Hybrid**: average of min-max-rescaled ES and KG scores over the
//!   KG-ranked candidate pool ([`retrieve`]).
//!
//! [`corpus`] owns ingestion and the persisted index, [`eval`] reproduces the
//! precision/recall/cluster-coverage measurement protocol, and [`synth`]
//! generates deterministic imbalanced corpora for benchmarking.

pub mod corpus;
pub mod embed;
pub mod error;
pub mod eval;
pub mod graph;
pub mod prioritize;
pub mod retrieve;
pub mod synth;
pub mod vector;

pub use error::{Error, Result};
