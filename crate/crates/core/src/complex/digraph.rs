use std::collections::{BTreeMap, BTreeSet};

use num::rational::BigRational;
use num::Zero;

use super::ComplexError;
use crate::vertex::{VertexId, VertexSet};

/// Finite simple digraph: no self-loops, at most one edge per ordered pair.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Digraph {
    vertices: VertexSet,
    edges: BTreeSet<(VertexId, VertexId)>,
}

impl Digraph {
    pub fn new(
        vertices: VertexSet,
        edges: BTreeSet<(VertexId, VertexId)>,
    ) -> Result<Digraph, ComplexError> {
        for &(u, v) in &edges {
            if u == v {
                return Err(ComplexError::SelfLoop(vertices.name(u).to_string()));
            }
            if u as usize >= vertices.len() || v as usize >= vertices.len() {
                return Err(ComplexError::UnknownVertex(format!("id {}", u.max(v))));
            }
        }
        Ok(Digraph { vertices, edges })
    }

    /// Vertex set = declared names ∪ edge endpoints.
    pub fn from_names(
        vertices: &[&str],
        edges: &[(&str, &str)],
    ) -> Result<Digraph, ComplexError> {
        let names = vertices
            .iter()
            .map(|s| s.to_string())
            .chain(edges.iter().flat_map(|(u, v)| [u.to_string(), v.to_string()]));
        let vs = VertexSet::new(names);
        let edge_ids = edges
            .iter()
            .map(|(u, v)| (vs.id(u).unwrap(), vs.id(v).unwrap()))
            .collect();
        Digraph::new(vs, edge_ids)
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edges.contains(&(u, v))
    }

    /// u ⇒̄ v: equal, or joined by an edge.
    pub fn reaches_in_one(&self, u: VertexId, v: VertexId) -> bool {
        u == v || self.has_edge(u, v)
    }

    pub fn out_neighbors(&self, u: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.edges
            .range((u, VertexId::MIN)..=(u, VertexId::MAX))
            .map(|&(_, v)| v)
    }
}

/// Digraph with a positive rational weight on every edge.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightedDigraph {
    graph: Digraph,
    weights: BTreeMap<(VertexId, VertexId), BigRational>,
}

impl WeightedDigraph {
    /// The weight domain must be exactly the edge set, all weights positive.
    pub fn new(
        graph: Digraph,
        weights: BTreeMap<(VertexId, VertexId), BigRational>,
    ) -> Result<WeightedDigraph, ComplexError> {
        for (&(u, v), w) in &weights {
            if !graph.has_edge(u, v) {
                return Err(ComplexError::WeightDomain(format!(
                    "weight on non-edge {} -> {}",
                    graph.vertices().name(u),
                    graph.vertices().name(v)
                )));
            }
            if w <= &BigRational::zero() {
                return Err(ComplexError::NonPositiveWeight(format!(
                    "{} -> {}",
                    graph.vertices().name(u),
                    graph.vertices().name(v)
                )));
            }
        }
        if weights.len() != graph.edge_count() {
            return Err(ComplexError::WeightDomain(format!(
                "{} weights for {} edges",
                weights.len(),
                graph.edge_count()
            )));
        }
        Ok(WeightedDigraph { graph, weights })
    }

    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn vertices(&self) -> &VertexSet {
        self.graph.vertices()
    }

    pub fn weight(&self, u: VertexId, v: VertexId) -> Option<&BigRational> {
        self.weights.get(&(u, v))
    }

    pub fn weights(&self) -> impl Iterator<Item = ((VertexId, VertexId), &BigRational)> {
        self.weights.iter().map(|(&e, w)| (e, w))
    }

    /// Same graph, new weights (same domain).
    pub fn reweighted(
        &self,
        weights: BTreeMap<(VertexId, VertexId), BigRational>,
    ) -> Result<WeightedDigraph, ComplexError> {
        WeightedDigraph::new(self.graph.clone(), weights)
    }
}
