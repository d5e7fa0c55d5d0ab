//! Digraphs, path complexes, and their weighted variants, plus the `.wdg` /
//! `.wpc` text formats.

mod digraph;
mod io;
mod path_complex;

pub use digraph::{Digraph, WeightedDigraph};
pub use io::{parse_wdg, parse_wpc, write_wdg, write_wpc};
pub use path_complex::{
    truncation_closure, validate_closure, PathComplex, WeightedPathComplex,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("self-loop at {0:?}")]
    SelfLoop(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("not truncation-closed; missing {}", .0.join(", "))]
    NotClosed(Vec<String>),
    #[error("weight domain error: {0}")]
    WeightDomain(String),
    #[error("weight for {0} must be positive")]
    NonPositiveWeight(String),
    #[error("simplex family not closed under subsets: missing {{{0}}}")]
    NotSubsetClosed(String),
    #[error("vertex order error: {0}")]
    BadOrder(String),
}
