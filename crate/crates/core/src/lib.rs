//! Balanced equivalence relations, quotient graphs and symmetric lifts of
//! directed multigraphs, together with the gradient and Hamiltonian coupled
//! cell systems that live on them.
//!
//! Everything here is a pure function of its inputs and only needs `alloc`.
//! File formats, random sampling and the command line live in the `symlift`
//! crate.
//!
//! Vertices are 0-based throughout this crate. Adjacency follows the
//! coupled-cell convention: entry `(i, j)` counts the directed edges from
//! vertex `j` into vertex `i`, so row sums are in-degrees.

#![no_std]
#![warn(missing_docs)]

extern crate alloc;

pub mod balanced;
pub mod dynamics;
mod error;
pub mod expr;
pub mod graph;
pub mod lift;
pub mod partition;
pub mod poly;
pub mod quotient;

pub use error::{Error, Result};
pub use graph::DiGraph;
pub use partition::{Partition, Polydiagonal};
