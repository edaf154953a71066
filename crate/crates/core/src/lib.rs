//! Compact indexes over lexicographic depth-first search trees.

pub mod apps;
pub mod bench;
pub mod bitvec;
pub mod codec;
pub mod dfsindex;
pub mod encindex;
pub mod error;
pub mod format;
pub mod gen;
pub mod graph;
pub mod lexdfs;
pub mod tree;
pub mod treecover;

pub use error::{Error, Result};
