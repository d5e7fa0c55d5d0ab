//! Vertex universes and vertex-level maps.
//!
//! Vertex names are interned in sorted order, so id order coincides with
//! lexicographic name order and every downstream ordering (chain terms,
//! serialized output) is reproducible without further sorting.

use std::collections::BTreeMap;

use thiserror::Error;

pub type VertexId = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VertexError {
    #[error("vertex {0:?} is not in the expected vertex set")]
    UnknownVertex(String),
    #[error("vertex {0:?} mapped twice")]
    DuplicateMapping(String),
    #[error("map is not total: vertex {0:?} has no image")]
    NotTotal(String),
    #[error("composition mismatch: inner codomain differs from outer domain")]
    ComposeMismatch,
}

/// Immutable, sorted vertex universe.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VertexSet {
    names: Vec<String>,
    index: BTreeMap<String, VertexId>,
}

impl VertexSet {
    pub fn new(names: impl IntoIterator<Item = String>) -> VertexSet {
        let mut names: Vec<String> = names.into_iter().collect();
        names.sort();
        names.dedup();
        let index = names.iter().enumerate().map(|(i, n)| (n.clone(), i as VertexId)).collect();
        VertexSet { names, index }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn id(&self, name: &str) -> Option<VertexId> {
        self.index.get(name).copied()
    }

    pub fn name(&self, id: VertexId) -> &str {
        &self.names[id as usize]
    }

    pub fn ids(&self) -> impl Iterator<Item = VertexId> {
        0..self.names.len() as VertexId
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(String::as_str)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }
}

/// Total map between two vertex universes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VertexMap {
    domain: VertexSet,
    codomain: VertexSet,
    table: Vec<VertexId>, // indexed by domain id
}

impl VertexMap {
    /// Build from `(source, target)` name pairs.  Every domain vertex needs
    /// exactly one image; pairs whose source is outside the domain are
    /// ignored, so one map file can serve several subgraphs.
    pub fn from_pairs<'a>(
        domain: &VertexSet,
        codomain: &VertexSet,
        pairs: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<VertexMap, VertexError> {
        let mut table: Vec<Option<VertexId>> = vec![None; domain.len()];
        for (src, dst) in pairs {
            let Some(s) = domain.id(src) else { continue };
            let d = codomain.id(dst).ok_or_else(|| VertexError::UnknownVertex(dst.into()))?;
            if table[s as usize].is_some() {
                return Err(VertexError::DuplicateMapping(src.into()));
            }
            table[s as usize] = Some(d);
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(i, t)| t.ok_or_else(|| VertexError::NotTotal(domain.name(i as VertexId).into())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(VertexMap { domain: domain.clone(), codomain: codomain.clone(), table })
    }

    pub fn identity(v: &VertexSet) -> VertexMap {
        VertexMap { domain: v.clone(), codomain: v.clone(), table: v.ids().collect() }
    }

    /// Constant map onto a single codomain vertex.
    pub fn constant(domain: &VertexSet, codomain: &VertexSet, target: VertexId) -> VertexMap {
        assert!((target as usize) < codomain.len());
        VertexMap {
            domain: domain.clone(),
            codomain: codomain.clone(),
            table: vec![target; domain.len()],
        }
    }

    pub fn from_table(domain: &VertexSet, codomain: &VertexSet, table: Vec<VertexId>) -> VertexMap {
        assert_eq!(table.len(), domain.len());
        assert!(table.iter().all(|&t| (t as usize) < codomain.len()));
        VertexMap { domain: domain.clone(), codomain: codomain.clone(), table }
    }

    pub fn domain(&self) -> &VertexSet {
        &self.domain
    }

    pub fn codomain(&self) -> &VertexSet {
        &self.codomain
    }

    pub fn apply(&self, id: VertexId) -> Option<VertexId> {
        self.table.get(id as usize).copied()
    }

    /// g ∘ f where `self` is g.
    pub fn compose_after(&self, f: &VertexMap) -> Result<VertexMap, VertexError> {
        if f.codomain != self.domain {
            return Err(VertexError::ComposeMismatch);
        }
        let table = f.table.iter().map(|&m| self.table[m as usize]).collect();
        Ok(VertexMap { domain: f.domain.clone(), codomain: self.codomain.clone(), table })
    }

    /// Same domain, codomain, and values.
    pub fn pointwise_eq(&self, other: &VertexMap) -> bool {
        self.domain == other.domain && self.codomain == other.codomain && self.table == other.table
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(names: &[&str]) -> VertexSet {
        VertexSet::new(names.iter().map(|s| s.to_string()))
    }

    #[test]
    fn ids_follow_name_order() {
        let v = vs(&["b", "a", "c", "a"]);
        assert_eq!(v.len(), 3);
        assert_eq!(v.id("a"), Some(0));
        assert_eq!(v.id("c"), Some(2));
        assert_eq!(v.name(1), "b");
        assert_eq!(v.id("z"), None);
    }

    #[test]
    fn map_construction_errors() {
        let d = vs(&["a", "b"]);
        let c = vs(&["x"]);
        assert!(matches!(
            VertexMap::from_pairs(&d, &c, [("a", "x")]),
            Err(VertexError::NotTotal(v)) if v == "b"
        ));
        assert!(matches!(
            VertexMap::from_pairs(&d, &c, [("a", "x"), ("a", "x"), ("b", "x")]),
            Err(VertexError::DuplicateMapping(_))
        ));
        assert!(matches!(
            VertexMap::from_pairs(&d, &c, [("a", "q"), ("b", "x")]),
            Err(VertexError::UnknownVertex(_))
        ));
        // extra sources outside the domain are ignored
        let ok = VertexMap::from_pairs(&d, &c, [("a", "x"), ("b", "x"), ("zz", "x")]).unwrap();
        assert_eq!(ok.apply(0), Some(0));
    }

    #[test]
    fn composition() {
        let a = vs(&["p", "q"]);
        let b = vs(&["u", "v"]);
        let c = vs(&["z"]);
        let f = VertexMap::from_pairs(&a, &b, [("p", "v"), ("q", "u")]).unwrap();
        let g = VertexMap::from_pairs(&b, &c, [("u", "z"), ("v", "z")]).unwrap();
        let gf = g.compose_after(&f).unwrap();
        assert!(gf.pointwise_eq(&VertexMap::constant(&a, &c, 0)));
        assert!(matches!(f.compose_after(&g), Err(VertexError::ComposeMismatch)));
        let f_id = f.compose_after(&VertexMap::identity(&a)).unwrap();
        assert!(f_id.pointwise_eq(&f));
    }
}
