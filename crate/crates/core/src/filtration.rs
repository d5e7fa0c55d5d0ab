//! Scale-indexed families of digraphs and path complexes: the edge-level
//! filtration (keep edges of weight ≤ δ) and the path sublevel filtration
//! (keep paths of length ≤ δ), together with their critical values.
//!
//! The scale domain is δ ≥ 0 and vertices are present from δ = 0 on, so
//! degree-0 classes are born at 0.  Everything is exact: between two
//! consecutive critical values nothing changes, and that is checkable by
//! equality.

use std::collections::BTreeSet;

use num::rational::BigRational;
use num::Zero;

use thiserror::Error;

use crate::complex::{Digraph, PathComplex, WeightedDigraph, WeightedPathComplex};
use crate::path::ElementaryPath;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FiltrationError {
    #[error("critical values must start at 0 and strictly increase: {0}")]
    BadIndex(String),
    #[error("snapshot {0} is not included in snapshot {1}")]
    NotNested(usize, usize),
    #[error("index has {values} values but {snapshots} snapshots were given")]
    LengthMismatch { values: usize, snapshots: usize },
    #[error("path {0} has an unweighted step")]
    MissingWeight(String),
}

/// The finitely many scales at which a filtration can change, strictly
/// increasing and starting at 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationIndex {
    values: Vec<BigRational>,
}

impl FiltrationIndex {
    pub fn new(values: Vec<BigRational>) -> Result<FiltrationIndex, FiltrationError> {
        if values.first() != Some(&BigRational::zero()) {
            return Err(FiltrationError::BadIndex("first value must be 0".into()));
        }
        if !values.windows(2).all(|w| w[0] < w[1]) {
            return Err(FiltrationError::BadIndex("values must strictly increase".into()));
        }
        Ok(FiltrationIndex { values })
    }

    /// {0} ∪ the given values, sorted and deduplicated.
    fn from_unsorted(values: impl IntoIterator<Item = BigRational>) -> FiltrationIndex {
        let mut set: BTreeSet<BigRational> = values.into_iter().collect();
        set.insert(BigRational::zero());
        FiltrationIndex { values: set.into_iter().collect() }
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false // always contains 0
    }

    pub fn value(&self, i: usize) -> &BigRational {
        &self.values[i]
    }
}

/// G^δ: the same vertices, edges of weight ≤ δ.
pub fn edge_sublevel(g: &WeightedDigraph, delta: &BigRational) -> Digraph {
    let edges = g
        .weights()
        .filter(|(_, w)| *w <= delta)
        .map(|(e, _)| e)
        .collect();
    Digraph::new(g.vertices().clone(), edges).expect("sublevel of a simple digraph is simple")
}

/// Sum of the edge weights along `p` (0 for 0-paths).
pub fn path_length(
    w: &WeightedPathComplex,
    p: &ElementaryPath,
) -> Result<BigRational, FiltrationError> {
    w.path_length(p)
        .ok_or_else(|| FiltrationError::MissingWeight(p.display(w.vertices())))
}

/// P^δ: vertices always, higher paths of length ≤ δ.  Truncation closure
/// is inherited — weights are positive, so truncating never lengthens.
pub fn path_sublevel(w: &WeightedPathComplex, delta: &BigRational) -> PathComplex {
    let kept = w.complex().paths().filter(|p| {
        p.degree() == 0
            || w.path_length(p).expect("allowed paths have weighted steps") <= *delta
    });
    PathComplex::strict_from_paths(w.vertices().clone(), kept.cloned())
        .expect("sublevel of a closed complex is closed")
}

/// Critical values of the edge-level filtration: {0} ∪ the edge weights.
pub fn critical_values_edge(g: &WeightedDigraph) -> FiltrationIndex {
    FiltrationIndex::from_unsorted(g.weights().map(|(_, w)| w.clone()))
}

/// Critical values of the path sublevel filtration: {0} ∪ the lengths of
/// all allowed paths up to the stored top degree.
pub fn critical_values_path(w: &WeightedPathComplex) -> FiltrationIndex {
    FiltrationIndex::from_unsorted(
        w.complex()
            .paths()
            .map(|p| w.path_length(p).expect("allowed paths have weighted steps")),
    )
}

/// One path-complex snapshot per critical value, nested along the index.
#[derive(Clone, Debug)]
pub struct FilteredComplex {
    index: FiltrationIndex,
    snapshots: Vec<PathComplex>,
}

impl FilteredComplex {
    /// Checks the nesting witness: every snapshot is a subcomplex of the
    /// next (hence of all later ones).
    pub fn new(
        index: FiltrationIndex,
        snapshots: Vec<PathComplex>,
    ) -> Result<FilteredComplex, FiltrationError> {
        if index.len() != snapshots.len() {
            return Err(FiltrationError::LengthMismatch {
                values: index.len(),
                snapshots: snapshots.len(),
            });
        }
        for i in 1..snapshots.len() {
            if !snapshots[i - 1].is_subcomplex_of(&snapshots[i]) {
                return Err(FiltrationError::NotNested(i - 1, i));
            }
        }
        Ok(FilteredComplex { index, snapshots })
    }

    #[cfg(test)]
    pub(crate) fn from_parts_unchecked(
        index: FiltrationIndex,
        snapshots: Vec<PathComplex>,
    ) -> FilteredComplex {
        FilteredComplex { index, snapshots }
    }

    /// F_e followed by taking allowed paths, truncated at `max_dim`.  For a
    /// homology computation in degree p, pass `max_dim = p + 1`.
    pub fn edge_filtration(g: &WeightedDigraph, max_dim: usize) -> FilteredComplex {
        let index = critical_values_edge(g);
        let snapshots = index
            .values()
            .iter()
            .map(|delta| PathComplex::from_digraph(&edge_sublevel(g, delta), max_dim))
            .collect();
        FilteredComplex::new(index, snapshots).expect("edge sublevels are nested")
    }

    /// F_p: path sublevels of an edge-weighted path complex.
    pub fn path_filtration(w: &WeightedPathComplex) -> FilteredComplex {
        let index = critical_values_path(w);
        let snapshots =
            index.values().iter().map(|delta| path_sublevel(w, delta)).collect();
        FilteredComplex::new(index, snapshots).expect("path sublevels are nested")
    }

    pub fn index(&self) -> &FiltrationIndex {
        &self.index
    }

    pub fn len(&self) -> usize {
        self.snapshots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.snapshots.is_empty()
    }

    pub fn snapshot(&self, i: usize) -> &PathComplex {
        &self.snapshots[i]
    }

    pub fn snapshots(&self) -> &[PathComplex] {
        &self.snapshots
    }

    pub fn verify_nested(&self) -> Result<(), FiltrationError> {
        for i in 1..self.snapshots.len() {
            if !self.snapshots[i - 1].is_subcomplex_of(&self.snapshots[i]) {
                return Err(FiltrationError::NotNested(i - 1, i));
            }
        }
        Ok(())
    }
}
