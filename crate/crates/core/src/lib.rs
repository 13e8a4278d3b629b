//! Exact graph radius, diameter and all eccentricities via small
//! lower/upper certificates, with independent certificate verification and
//! the structural measurements that explain when the algorithms are fast.
//!
//! Everything is built on one-to-all distance sweeps (BFS or Dijkstra);
//! sweep counts are the cost model and every solver reports them.

pub mod analysis;
pub mod certificates;
pub mod chordal;
pub mod error;
pub mod generators;
pub mod graph;
pub mod oracle;
pub mod select;
pub mod solvers;
pub mod traversal;

pub use error::{Error, Result};
pub use graph::{Graph, Ranking};
