//! Exact classification of lattice polytopes with one or two interior
//! lattice points, together with the Ehrhart-theoretic invariants built on
//! top of the classification.
//!
//! The crate is organised bottom-up:
//!
//! - [`exact`]: lattice points, integer matrices, Hermite normal forms.
//! - [`polytope`]: exact convex hulls, facets, lattice points, volumes.
//! - [`normal_form`]: canonical keys under affine unimodular equivalence.
//! - [`ehrhart`]: Ehrhart counts, δ-vectors and inequality checkers.
//! - [`weights`]: weight systems, simplex classifications and seed polytopes.
//! - [`growth`]: the vertex-by-vertex growth closure with a disk-backed
//!   deduplication store.
//! - [`cli`]: drivers behind the `polyclass` binary.
//!
//! Everything is exact integer or rational arithmetic; there is no floating
//! point anywhere in the geometry.

// matrix code reads better with explicit indices
#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod ehrhart;
pub mod exact;
pub mod growth;
pub mod normal_form;
pub mod polytope;
pub mod weights;

use std::path::PathBuf;

pub use exact::{IntMatrix, LatticePoint, Point2, Point3, Rational};
pub use normal_form::CanonicalKey;
pub use polytope::{Polytope, Polytope2, Polytope3};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("zero vector has no primitive direction")]
    ZeroVector,
    #[error("empty point set")]
    Empty,
    #[error("degenerate polytope: {0}")]
    Degenerate(String),
    #[error("polytope is hollow: {0}")]
    Hollow(String),
    #[error("point is not in the relative interior of the simplex")]
    NotInterior,
    #[error("not a simplex: {0}")]
    NotSimplex(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("Ehrhart identity violated: {0}")]
    Consistency(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("seed bank rejected: {0}")]
    Seed(String),
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error("dataset: {0}")]
    Dataset(String),
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
