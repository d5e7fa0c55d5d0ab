//! Persistent path homology of weighted digraphs and edge-weighted path
//! complexes, with exact arithmetic throughout.
//!
//! The pipeline: a weighted digraph or path complex is filtered by sublevel
//! sets ([`filtration`]), each snapshot yields a chain complex of
//! ∂-invariant allowed chains ([`homology`]), the resulting persistence
//! module is decomposed into a barcode ([`persistence`]), and barcodes are
//! compared under the bottleneck distance ([`bottleneck`]).  Homotopy-theoretic
//! stability bounds on the bottleneck distance live in [`homotopy`].
//!
//! All linear algebra runs over exact scalars — arbitrary-precision rationals
//! or a prime field — so every reported dimension, bar, and distance is exact.

pub mod bottleneck;
pub mod complex;
pub mod filtration;
pub mod homology;
pub mod homotopy;
pub mod linalg;
pub mod path;
pub mod persistence;
pub mod vertex;

pub use bottleneck::{bottleneck_distance, matching_cost, Cost, Matching};
pub use complex::{Digraph, PathComplex, WeightedDigraph, WeightedPathComplex};
pub use filtration::{FilteredComplex, FiltrationIndex};
pub use homology::{BoundaryMode, ChainComplexSnapshot, OmegaBasis};
pub use linalg::{Matrix, Scalar, ScalarMode, SubspaceBasis};
pub use path::{ElementaryPath, FormalChain};
pub use persistence::{persistence_diagram, Bar, Death, PersistenceDiagram};
pub use vertex::{VertexId, VertexMap, VertexSet};
