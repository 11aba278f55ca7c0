//! Networks derived from bibliographic data.
//!
//! Bibliographic records — who wrote what, what cites what, which keywords a
//! work carries — unfold into a family of two-mode networks over shared node
//! sets. This crate stores such networks sparsely, multiplies and normalizes
//! them to obtain collaboration, co-citation, and coupling networks with
//! interpretable weights, predicts and guards against products that would
//! not be sparse, and extracts dense cores from the results. A small CLI
//! drives the same operations over Pajek-format files.

pub mod algebra;
#[cfg(doctest)]
mod book;
pub mod cli;
pub mod cores;
pub mod derived;
pub mod error;
pub mod ingest;
pub mod net;
pub mod pajek;
pub mod report;
pub mod sparsity;

pub use error::{Error, Result};
pub use net::{Direction, Mode, NodeSet, NodeVector, Partition, SparseNetwork};
pub use sparsity::{SparsityReport, WorkRefusal};
