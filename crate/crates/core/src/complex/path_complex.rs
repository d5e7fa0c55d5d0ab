use std::collections::{BTreeMap, BTreeSet};

use num::rational::BigRational;
use num::Zero;

use super::{ComplexError, Digraph, WeightedDigraph};
use crate::path::ElementaryPath;
use crate::vertex::{VertexId, VertexSet};

/// A truncation-closed family of allowed paths over a vertex set.
///
/// `strata[n]` holds the allowed n-paths; `strata[0]` is always the full
/// vertex set, and removing the first or last vertex of any allowed path
/// yields an allowed path.  Only finitely many degrees are stored — the
/// complex *is* the stored object, so operations that quantify over "all
/// allowed paths" run up to [`PathComplex::top_degree`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PathComplex {
    vertices: VertexSet,
    strata: Vec<BTreeSet<ElementaryPath>>,
    regular: bool,
}

impl PathComplex {
    fn from_parts(vertices: VertexSet, mut strata: Vec<BTreeSet<ElementaryPath>>) -> PathComplex {
        if strata.is_empty() {
            strata.push(BTreeSet::new());
        }
        strata[0] = vertices.ids().map(|v| ElementaryPath::new(vec![v])).collect();
        while strata.len() > 1 && strata.last().is_some_and(BTreeSet::is_empty) {
            strata.pop();
        }
        let regular = strata.iter().flatten().all(ElementaryPath::is_regular);
        PathComplex { vertices, strata, regular }
    }

    /// The vertex-only complex.
    pub fn discrete(vertices: VertexSet) -> PathComplex {
        PathComplex::from_parts(vertices, Vec::new())
    }

    /// Validates that `paths` is already truncation-closed (the `.wpc`
    /// `closure strict` mode); the error lists every missing truncation.
    pub fn strict_from_paths(
        vertices: VertexSet,
        paths: impl IntoIterator<Item = ElementaryPath>,
    ) -> Result<PathComplex, ComplexError> {
        let paths: BTreeSet<ElementaryPath> = paths.into_iter().collect();
        let missing = validate_closure(&paths);
        if !missing.is_empty() {
            return Err(ComplexError::NotClosed(
                missing.iter().map(|p| p.display(&vertices)).collect(),
            ));
        }
        let mut strata: Vec<BTreeSet<ElementaryPath>> = Vec::new();
        for p in paths {
            let d = p.degree();
            debug_assert!(d >= 0);
            let d = d as usize;
            while strata.len() <= d {
                strata.push(BTreeSet::new());
            }
            strata[d].insert(p);
        }
        Ok(PathComplex::from_parts(vertices, strata))
    }

    /// Allowed paths of a digraph: edge walks with up to `max_dim + 1`
    /// vertices.  Regular by construction (no self-loops).
    pub fn from_digraph(g: &Digraph, max_dim: usize) -> PathComplex {
        let mut strata: Vec<BTreeSet<ElementaryPath>> = Vec::with_capacity(max_dim + 1);
        strata.push(g.vertices().ids().map(|v| ElementaryPath::new(vec![v])).collect());
        for n in 1..=max_dim {
            let mut next = BTreeSet::new();
            for w in &strata[n - 1] {
                let last = *w.vertices().last().unwrap();
                for v in g.out_neighbors(last) {
                    let mut ext = w.vertices().to_vec();
                    ext.push(v);
                    next.insert(ElementaryPath::new(ext));
                }
            }
            if next.is_empty() {
                break;
            }
            strata.push(next);
        }
        PathComplex::from_parts(g.vertices().clone(), strata)
    }

    /// Path complex of a simplicial complex: each simplex becomes the path
    /// listing its vertices in increasing `order`.  `simplices` must be
    /// closed under nonempty subsets and `order` must rank every vertex
    /// exactly once.
    pub fn from_simplicial(
        simplices: &[BTreeSet<String>],
        order: &[String],
    ) -> Result<PathComplex, ComplexError> {
        let family: BTreeSet<&BTreeSet<String>> = simplices.iter().collect();
        let mut names: BTreeSet<String> = BTreeSet::new();
        for s in simplices {
            if s.is_empty() {
                return Err(ComplexError::NotSubsetClosed(String::new()));
            }
            names.extend(s.iter().cloned());
            if s.len() >= 2 {
                for drop in s {
                    let facet: BTreeSet<String> =
                        s.iter().filter(|v| *v != drop).cloned().collect();
                    if !family.contains(&facet) {
                        return Err(ComplexError::NotSubsetClosed(
                            facet.into_iter().collect::<Vec<_>>().join(", "),
                        ));
                    }
                }
            }
        }
        let mut rank: BTreeMap<&str, usize> = BTreeMap::new();
        for (i, name) in order.iter().enumerate() {
            if rank.insert(name, i).is_some() {
                return Err(ComplexError::BadOrder(format!("{name:?} ranked twice")));
            }
        }
        for n in &names {
            if !rank.contains_key(n.as_str()) {
                return Err(ComplexError::BadOrder(format!("{n:?} has no rank")));
            }
        }
        let vertices = VertexSet::new(names);
        let mut strata: Vec<BTreeSet<ElementaryPath>> = Vec::new();
        for s in simplices {
            let mut members: Vec<&String> = s.iter().collect();
            members.sort_by_key(|m| rank[m.as_str()]);
            let path =
                ElementaryPath::new(members.iter().map(|m| vertices.id(m).unwrap()).collect());
            let d = path.degree() as usize;
            while strata.len() <= d {
                strata.push(BTreeSet::new());
            }
            strata[d].insert(path);
        }
        let complex = PathComplex::from_parts(vertices, strata);
        debug_assert!(validate_closure(&complex.all_paths()).is_empty());
        Ok(complex)
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    /// Largest degree with a stored stratum (0 even when there are no paths).
    pub fn top_degree(&self) -> usize {
        self.strata.len() - 1
    }

    /// No allowed path repeats a vertex consecutively.
    pub fn is_regular(&self) -> bool {
        self.regular
    }

    pub fn stratum(&self, n: usize) -> impl Iterator<Item = &ElementaryPath> {
        self.strata.get(n).into_iter().flatten()
    }

    pub fn stratum_size(&self, n: usize) -> usize {
        self.strata.get(n).map_or(0, BTreeSet::len)
    }

    /// All allowed paths of degree ≥ 0.
    pub fn paths(&self) -> impl Iterator<Item = &ElementaryPath> {
        self.strata.iter().flatten()
    }

    fn all_paths(&self) -> BTreeSet<ElementaryPath> {
        self.paths().cloned().collect()
    }

    /// Membership; the empty path is always allowed, degrees above
    /// [`Self::top_degree`] never are.
    pub fn allowed(&self, p: &ElementaryPath) -> bool {
        if p.degree() < 0 {
            return true;
        }
        self.strata.get(p.degree() as usize).is_some_and(|s| s.contains(p))
    }

    /// Same vertex set and stratum-wise containment.
    pub fn is_subcomplex_of(&self, other: &PathComplex) -> bool {
        self.vertices == other.vertices
            && self
                .strata
                .iter()
                .enumerate()
                .all(|(n, s)| s.iter().all(|p| other.strata.get(n).is_some_and(|o| o.contains(p))))
    }

    /// The grounded truncation Δ(P_deg ∪ P_{deg+1}): closure of the two
    /// strata that determine H_deg, over the vertices they mention.
    pub fn grounded_truncation(&self, deg: usize) -> PathComplex {
        let generators: Vec<&ElementaryPath> =
            self.stratum(deg).chain(self.stratum(deg + 1)).collect();
        let names: BTreeSet<String> = generators
            .iter()
            .flat_map(|p| p.vertices().iter().map(|&v| self.vertices.name(v).to_string()))
            .collect();
        let vs = VertexSet::new(names);
        let remapped = generators
            .iter()
            .map(|p| remap_path(p, &self.vertices, &vs))
            .collect::<Vec<_>>();
        truncation_closure(vs, remapped)
    }

    /// Every subsequence of every allowed path is allowed.  Exponential in
    /// path length; intended for small complexes and tests.
    pub fn is_perfect(&self) -> bool {
        for p in self.paths() {
            let vs = p.vertices();
            if vs.len() > 16 {
                panic!("is_perfect is only supported for paths of ≤ 16 vertices");
            }
            for mask in 1u32..(1 << vs.len()) {
                let sub: Vec<VertexId> = (0..vs.len())
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| vs[i])
                    .collect();
                if !self.allowed(&ElementaryPath::new(sub)) {
                    return false;
                }
            }
        }
        true
    }
}

pub(crate) fn remap_path(
    p: &ElementaryPath,
    from: &VertexSet,
    to: &VertexSet,
) -> ElementaryPath {
    ElementaryPath::new(
        p.vertices().iter().map(|&v| to.id(from.name(v)).expect("vertex present")).collect(),
    )
}

/// Smallest truncation-closed complex over `vertices` containing `paths`.
pub fn truncation_closure(
    vertices: VertexSet,
    paths: impl IntoIterator<Item = ElementaryPath>,
) -> PathComplex {
    let mut strata: Vec<BTreeSet<ElementaryPath>> = vec![BTreeSet::new()];
    for p in paths {
        debug_assert!(p.degree() >= 0, "only paths of degree ≥ 0 can generate");
        let d = p.degree() as usize;
        while strata.len() <= d {
            strata.push(BTreeSet::new());
        }
        strata[d].insert(p);
    }
    // one descending sweep adds every contiguous subword
    for n in (1..strata.len()).rev() {
        let (lower, upper) = strata.split_at_mut(n);
        for p in &upper[0] {
            lower[n - 1].insert(p.truncate_back());
            lower[n - 1].insert(p.truncate_front());
        }
    }
    PathComplex::from_parts(vertices, strata)
}

/// Truncations missing from `paths` (empty iff truncation-closed).
pub fn validate_closure(paths: &BTreeSet<ElementaryPath>) -> Vec<ElementaryPath> {
    let mut missing = BTreeSet::new();
    for p in paths {
        if p.degree() >= 1 {
            for t in [p.truncate_back(), p.truncate_front()] {
                if !paths.contains(&t) {
                    missing.insert(t);
                }
            }
        }
    }
    missing.into_iter().collect()
}

/// Path complex with a positive weight on every allowed 1-path.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightedPathComplex {
    complex: PathComplex,
    weights: BTreeMap<(VertexId, VertexId), BigRational>,
}

impl WeightedPathComplex {
    /// The weight domain must be exactly the allowed 1-paths, all positive.
    pub fn new(
        complex: PathComplex,
        weights: BTreeMap<(VertexId, VertexId), BigRational>,
    ) -> Result<WeightedPathComplex, ComplexError> {
        let name = |&(u, v): &(VertexId, VertexId)| {
            format!("{} {}", complex.vertices().name(u), complex.vertices().name(v))
        };
        for (e, w) in &weights {
            let p = ElementaryPath::new(vec![e.0, e.1]);
            if !complex.allowed(&p) {
                return Err(ComplexError::WeightDomain(format!(
                    "weight on non-allowed 1-path {}",
                    name(e)
                )));
            }
            if w <= &BigRational::zero() {
                return Err(ComplexError::NonPositiveWeight(name(e)));
            }
        }
        for p in complex.stratum(1) {
            let key = (p.vertices()[0], p.vertices()[1]);
            if !weights.contains_key(&key) {
                return Err(ComplexError::WeightDomain(format!(
                    "1-path {} has no weight",
                    name(&key)
                )));
            }
        }
        Ok(WeightedPathComplex { complex, weights })
    }

    pub fn from_weighted_digraph(g: &WeightedDigraph, max_dim: usize) -> WeightedPathComplex {
        let complex = PathComplex::from_digraph(g.graph(), max_dim);
        let weights = g.weights().map(|(e, w)| (e, w.clone())).collect();
        WeightedPathComplex::new(complex, weights).expect("edge weights cover P_1 exactly")
    }

    pub fn complex(&self) -> &PathComplex {
        &self.complex
    }

    pub fn vertices(&self) -> &VertexSet {
        self.complex.vertices()
    }

    pub fn weight(&self, u: VertexId, v: VertexId) -> Option<&BigRational> {
        self.weights.get(&(u, v))
    }

    pub fn weights(&self) -> impl Iterator<Item = ((VertexId, VertexId), &BigRational)> {
        self.weights.iter().map(|(&e, w)| (e, w))
    }

    /// Sum of the edge weights along `p` (0 for paths of degree ≤ 0); `None`
    /// if some step is not a weighted 1-path.
    pub fn path_length(&self, p: &ElementaryPath) -> Option<BigRational> {
        let mut total = BigRational::zero();
        for pair in p.vertices().windows(2) {
            total += self.weights.get(&(pair[0], pair[1]))?;
        }
        Some(total)
    }

    /// Same complex, new weights (same domain rules).
    pub fn reweighted(
        &self,
        weights: BTreeMap<(VertexId, VertexId), BigRational>,
    ) -> Result<WeightedPathComplex, ComplexError> {
        WeightedPathComplex::new(self.complex.clone(), weights)
    }

    /// Weighted grounded truncation: weights restrict to the surviving
    /// 1-paths (with ids remapped onto the smaller vertex set).
    pub fn grounded_truncation(&self, deg: usize) -> WeightedPathComplex {
        let complex = self.complex.grounded_truncation(deg);
        let weights = complex
            .stratum(1)
            .map(|p| {
                let (u, v) = (p.vertices()[0], p.vertices()[1]);
                let old = (
                    self.complex.vertices().id(complex.vertices().name(u)).unwrap(),
                    self.complex.vertices().id(complex.vertices().name(v)).unwrap(),
                );
                ((u, v), self.weights[&old].clone())
            })
            .collect();
        WeightedPathComplex { complex, weights }
    }
}
