//! Digraph maps, weak morphisms, products with the interval, one-step
//! homotopy certification, and the stability functionals dis / cod / dis_n
//! together with the two bound formulas they feed.
//!
//! Homotopy chains are always supplied by the caller and verified here,
//! never searched for.  The weak one-step check builds the canonical
//! candidate map on P × I in both orders; `true` certifies homotopy, while
//! `false` only means "not certified".

use num::rational::BigRational;
use num::{Signed, Zero};

use thiserror::Error;

use crate::complex::{truncation_closure, Digraph, PathComplex, WeightedDigraph, WeightedPathComplex};
use crate::path::ElementaryPath;
use crate::vertex::{VertexId, VertexMap, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomotopyError {
    #[error("{0} is not a digraph map")]
    NotDigraphMap(String),
    #[error("{0} is not a weak morphism")]
    NotWeakMorphism(String),
    #[error("chain endpoint mismatch: {0}")]
    ChainEndpoint(String),
    #[error("chain link {0} is not certified one-step homotopic to link {1}")]
    NotHomotopic(usize, usize),
    #[error("homotopy chain is empty")]
    EmptyChain,
    #[error("vertex map endpoints do not match: {0}")]
    Mismatch(String),
}

/// An ordered list f_0, …, f_m of maps with shared endpoints, intended to be
/// one-step homotopic link by link.  The links are verified by the consumers
/// (the stability bounds), since the relevant notion differs between
/// digraphs and path complexes.
#[derive(Clone, Debug)]
pub struct HomotopyChain {
    maps: Vec<VertexMap>,
}

impl HomotopyChain {
    pub fn new(maps: Vec<VertexMap>) -> Result<HomotopyChain, HomotopyError> {
        let Some(first) = maps.first() else {
            return Err(HomotopyError::EmptyChain);
        };
        for m in &maps {
            if m.domain() != first.domain() || m.codomain() != first.codomain() {
                return Err(HomotopyError::Mismatch(
                    "chain members have different endpoints".into(),
                ));
            }
        }
        Ok(HomotopyChain { maps })
    }

    pub fn maps(&self) -> &[VertexMap] {
        &self.maps
    }

    /// The index m of the last map.
    pub fn last_index(&self) -> usize {
        self.maps.len() - 1
    }
}

/// Every edge i→j maps to an edge or collapses: f(i) ⇒̄ f(j).
pub fn is_digraph_map(f: &VertexMap, g: &Digraph, h: &Digraph) -> bool {
    f.domain() == g.vertices()
        && f.codomain() == h.vertices()
        && g.edges().all(|(u, v)| h.reaches_in_one(f.apply(u).unwrap(), f.apply(v).unwrap()))
}

/// Cartesian product digraph: (x,y) → (x′,y′) iff x = x′, y→y′ or
/// y = y′, x→x′.
pub fn digraph_product(gx: &Digraph, gy: &Digraph) -> Digraph {
    let names = gx
        .vertices()
        .names()
        .flat_map(|x| gy.vertices().names().map(move |y| format!("({x},{y})")));
    let vs = VertexSet::new(names);
    let id = |x: &str, y: &str| vs.id(&format!("({x},{y})")).unwrap();
    let mut edges = std::collections::BTreeSet::new();
    for x in gx.vertices().names() {
        for (u, v) in gy.edges() {
            edges.insert((id(x, gy.vertices().name(u)), id(x, gy.vertices().name(v))));
        }
    }
    for y in gy.vertices().names() {
        for (u, v) in gx.edges() {
            edges.insert((id(gx.vertices().name(u), y), id(gx.vertices().name(v), y)));
        }
    }
    Digraph::new(vs, edges).expect("product of simple digraphs is simple")
}

/// f ≃₁ g iff f(x) ⇒̄ g(x) for all x, or g(x) ⇒̄ f(x) for all x.
pub fn one_step_homotopic_digraph(
    f: &VertexMap,
    g: &VertexMap,
    src: &Digraph,
    dst: &Digraph,
) -> Result<bool, HomotopyError> {
    if !is_digraph_map(f, src, dst) {
        return Err(HomotopyError::NotDigraphMap("first map".into()));
    }
    if !is_digraph_map(g, src, dst) {
        return Err(HomotopyError::NotDigraphMap("second map".into()));
    }
    let xs: Vec<VertexId> = src.vertices().ids().collect();
    let forward = xs.iter().all(|&x| dst.reaches_in_one(f.apply(x).unwrap(), g.apply(x).unwrap()));
    let backward = xs.iter().all(|&x| dst.reaches_in_one(g.apply(x).unwrap(), f.apply(x).unwrap()));
    Ok(forward || backward)
}

/// Every allowed path's image is allowed or non-regular (checked up to the
/// stored top degree of `p`).
pub fn is_weak_morphism(f: &VertexMap, p: &PathComplex, s: &PathComplex) -> bool {
    if f.domain() != p.vertices() || f.codomain() != s.vertices() {
        return false;
    }
    p.paths().all(|path| {
        let image = ElementaryPath::new(
            path.vertices().iter().map(|&v| f.apply(v).unwrap()).collect(),
        );
        !image.is_regular() || s.allowed(&image)
    })
}

/// P × I: the complex on V ∪ V′ generated by P, its primed copy, and the
/// hat-paths ŵ = i_0 … i_k i_k′ … i_n′, closed under truncation.
pub struct ProductWithI {
    complex: PathComplex,
    base: VertexMap,
    top: VertexMap,
}

impl ProductWithI {
    pub fn complex(&self) -> &PathComplex {
        &self.complex
    }

    /// Embedding of V as the unprimed copy.
    pub fn base(&self) -> &VertexMap {
        &self.base
    }

    /// Embedding of V as the primed copy.
    pub fn top(&self) -> &VertexMap {
        &self.top
    }
}

pub fn product_with_i(p: &PathComplex) -> ProductWithI {
    let orig = p.vertices();
    let primed = |n: &str| format!("{n}'");
    for n in orig.names() {
        assert!(
            orig.id(&primed(n)).is_none(),
            "vertex {n:?} collides with the primed copy of the product"
        );
    }
    let vs = VertexSet::new(
        orig.names().map(String::from).chain(orig.names().map(|n| primed(n))),
    );
    let base_table: Vec<VertexId> =
        orig.names().map(|n| vs.id(n).unwrap()).collect();
    let top_table: Vec<VertexId> =
        orig.names().map(|n| vs.id(&primed(n)).unwrap()).collect();
    let base = VertexMap::from_table(orig, &vs, base_table);
    let top = VertexMap::from_table(orig, &vs, top_table);
    let mut gens: Vec<ElementaryPath> = Vec::new();
    for w in p.paths() {
        let bot: Vec<VertexId> = w.vertices().iter().map(|&v| base.apply(v).unwrap()).collect();
        let up: Vec<VertexId> = w.vertices().iter().map(|&v| top.apply(v).unwrap()).collect();
        for k in 0..bot.len() {
            let mut hat = bot[..=k].to_vec();
            hat.extend_from_slice(&up[k..]);
            gens.push(ElementaryPath::new(hat));
        }
        gens.push(ElementaryPath::new(bot));
        gens.push(ElementaryPath::new(up));
    }
    ProductWithI { complex: truncation_closure(vs, gens), base, top }
}

/// Sufficient certificate for weak one-step homotopy: the canonical
/// candidate F on P × I (unprimed ↦ f, primed ↦ g, and the flipped order)
/// is checked for being a weak morphism into `s`.  `false` means "not
/// certified", not "not homotopic".
pub fn one_step_weak_homotopic(
    f: &VertexMap,
    g: &VertexMap,
    p: &PathComplex,
    s: &PathComplex,
) -> bool {
    for m in [f, g] {
        if m.domain() != p.vertices() || m.codomain() != s.vertices() {
            return false;
        }
    }
    let prod = product_with_i(p);
    let pv = prod.complex.vertices().clone();
    let canonical = |bottom: &VertexMap, upper: &VertexMap| -> VertexMap {
        let table: Vec<VertexId> = pv
            .names()
            .map(|name| match p.vertices().id(name) {
                Some(v) => bottom.apply(v).unwrap(),
                None => {
                    let unprimed = name.strip_suffix('\'').expect("primed product vertex");
                    upper.apply(p.vertices().id(unprimed).unwrap()).unwrap()
                }
            })
            .collect();
        VertexMap::from_table(&pv, s.vertices(), table)
    };
    is_weak_morphism(&canonical(f, g), &prod.complex, s)
        || is_weak_morphism(&canonical(g, f), &prod.complex, s)
}

/// dis(φ) = max |w_H(φ(x),φ(x′)) − w_G(x,x′)| over edges of `g` whose image
/// is an edge of `h`; 0 on the empty set.
pub fn dis_digraph(f: &VertexMap, g: &WeightedDigraph, h: &WeightedDigraph) -> BigRational {
    let mut best = BigRational::zero();
    for ((x, y), w) in g.weights() {
        let (fx, fy) = (f.apply(x).unwrap(), f.apply(y).unwrap());
        if let Some(im) = h.weight(fx, fy) {
            let d = (im - w).abs();
            best = best.max(d);
        }
    }
    best
}

/// cod(φ,ψ) = max of w_H(φ(x),ψ(x)) and w_H(ψ(x),φ(x)) over vertices where
/// those are edges; 0 on the empty set.
pub fn cod_digraph(f: &VertexMap, g: &VertexMap, h: &WeightedDigraph) -> BigRational {
    let mut best = BigRational::zero();
    for x in f.domain().ids() {
        let (fx, gx) = (f.apply(x).unwrap(), g.apply(x).unwrap());
        if let Some(w) = h.weight(fx, gx) {
            best = best.max(w.clone());
        }
        if let Some(w) = h.weight(gx, fx) {
            best = best.max(w.clone());
        }
    }
    best
}

/// dis_n(φ) = max |len(φ(e)) − len(e)| over allowed n-paths with regular
/// image; dis_0 = 0 and max_∅ = 0.
pub fn dis_pc(
    f: &VertexMap,
    n: usize,
    p: &WeightedPathComplex,
    s: &WeightedPathComplex,
) -> BigRational {
    if n == 0 {
        return BigRational::zero();
    }
    let mut best = BigRational::zero();
    for e in p.complex().stratum(n) {
        let image =
            ElementaryPath::new(e.vertices().iter().map(|&v| f.apply(v).unwrap()).collect());
        if !image.is_regular() {
            continue;
        }
        let im_len = s.path_length(&image).expect("image of a weak morphism is allowed");
        let len = p.path_length(e).expect("allowed paths have weighted steps");
        best = best.max((im_len - len).abs());
    }
    best
}

/// cod over an edge-weighted path complex: as [`cod_digraph`] with "edge"
/// meaning "weighted allowed 1-path".
pub fn cod_pc(f: &VertexMap, g: &VertexMap, s: &WeightedPathComplex) -> BigRational {
    let mut best = BigRational::zero();
    for x in f.domain().ids() {
        let (fx, gx) = (f.apply(x).unwrap(), g.apply(x).unwrap());
        if let Some(w) = s.weight(fx, gx) {
            best = best.max(w.clone());
        }
        if let Some(w) = s.weight(gx, fx) {
            best = best.max(w.clone());
        }
    }
    best
}

fn verify_digraph_chain(
    chain: &HomotopyChain,
    first: &VertexMap,
    graph: &Digraph,
    label: &str,
) -> Result<(), HomotopyError> {
    let maps = chain.maps();
    for (i, m) in maps.iter().enumerate() {
        if m.domain() != graph.vertices() || m.codomain() != graph.vertices() {
            return Err(HomotopyError::Mismatch(format!(
                "{label}_{i} must be an endomap of the underlying digraph"
            )));
        }
        if !is_digraph_map(m, graph, graph) {
            return Err(HomotopyError::NotDigraphMap(format!("{label}_{i}")));
        }
    }
    if !maps[0].pointwise_eq(first) {
        return Err(HomotopyError::ChainEndpoint(format!(
            "{label}_0 differs from the composite"
        )));
    }
    let id = VertexMap::identity(graph.vertices());
    if !maps[maps.len() - 1].pointwise_eq(&id) {
        return Err(HomotopyError::ChainEndpoint(format!(
            "{label}_{} is not the identity",
            maps.len() - 1
        )));
    }
    for k in 1..maps.len() {
        if !one_step_homotopic_digraph(&maps[k - 1], &maps[k], graph, graph)? {
            return Err(HomotopyError::NotHomotopic(k - 1, k));
        }
    }
    Ok(())
}

/// The digraph stability bound η: φ, ψ, and both chains are verified, then
/// the theorem's max expression is evaluated exactly.  The interior dis
/// terms range over k = 1,…,m−1 and the cod terms over k = 1,…,m.
pub fn stability_bound_digraph(
    phi: &VertexMap,
    psi: &VertexMap,
    fchain: &HomotopyChain,
    gchain: &HomotopyChain,
    g: &WeightedDigraph,
    h: &WeightedDigraph,
) -> Result<BigRational, HomotopyError> {
    if !is_digraph_map(phi, g.graph(), h.graph()) {
        return Err(HomotopyError::NotDigraphMap("φ".into()));
    }
    if !is_digraph_map(psi, h.graph(), g.graph()) {
        return Err(HomotopyError::NotDigraphMap("ψ".into()));
    }
    let psi_phi = psi.compose_after(phi).map_err(|e| HomotopyError::Mismatch(e.to_string()))?;
    let phi_psi = phi.compose_after(psi).map_err(|e| HomotopyError::Mismatch(e.to_string()))?;
    verify_digraph_chain(fchain, &psi_phi, g.graph(), "f")?;
    verify_digraph_chain(gchain, &phi_psi, h.graph(), "g")?;

    let half = BigRational::new(1.into(), 2.into());
    let mut best = dis_digraph(phi, g, h).max(dis_digraph(psi, h, g));
    for (chain, wg) in [(fchain, g), (gchain, h)] {
        let m = chain.last_index();
        let maps = chain.maps();
        for k in 1..m {
            best = best.max(half.clone() * dis_digraph(&maps[k], wg, wg));
        }
        for k in 1..=m {
            best = best.max(half.clone() * cod_digraph(&maps[k - 1], &maps[k], wg));
        }
    }
    Ok(best)
}

fn verify_weak_chain(
    chain: &HomotopyChain,
    first: &VertexMap,
    complex: &WeightedPathComplex,
    label: &str,
) -> Result<(), HomotopyError> {
    let maps = chain.maps();
    for (i, m) in maps.iter().enumerate() {
        if m.domain() != complex.vertices() || m.codomain() != complex.vertices() {
            return Err(HomotopyError::Mismatch(format!(
                "{label}_{i} must be an endomap of the truncated complex"
            )));
        }
        if !is_weak_morphism(m, complex.complex(), complex.complex()) {
            return Err(HomotopyError::NotWeakMorphism(format!("{label}_{i}")));
        }
    }
    if !maps[0].pointwise_eq(first) {
        return Err(HomotopyError::ChainEndpoint(format!(
            "{label}_0 differs from the composite"
        )));
    }
    let id = VertexMap::identity(complex.vertices());
    if !maps[maps.len() - 1].pointwise_eq(&id) {
        return Err(HomotopyError::ChainEndpoint(format!(
            "{label}_{} is not the identity",
            maps.len() - 1
        )));
    }
    for k in 1..maps.len() {
        if !one_step_weak_homotopic(&maps[k - 1], &maps[k], complex.complex(), complex.complex())
        {
            return Err(HomotopyError::NotHomotopic(k - 1, k));
        }
    }
    Ok(())
}

/// The path-complex stability bound for degree `deg`: everything lives on
/// the grounded truncations Δ(P_deg ∪ P_{deg+1}) and Δ(S_deg ∪ S_{deg+1});
/// the supplied maps must be given on those truncated vertex sets.
pub fn stability_bound_pc(
    phi: &VertexMap,
    psi: &VertexMap,
    fchain: &HomotopyChain,
    gchain: &HomotopyChain,
    p: &WeightedPathComplex,
    s: &WeightedPathComplex,
    deg: usize,
) -> Result<BigRational, HomotopyError> {
    let pbar = p.grounded_truncation(deg);
    let sbar = s.grounded_truncation(deg);
    if !is_weak_morphism(phi, pbar.complex(), sbar.complex()) {
        return Err(HomotopyError::NotWeakMorphism("φ".into()));
    }
    if !is_weak_morphism(psi, sbar.complex(), pbar.complex()) {
        return Err(HomotopyError::NotWeakMorphism("ψ".into()));
    }
    let psi_phi = psi.compose_after(phi).map_err(|e| HomotopyError::Mismatch(e.to_string()))?;
    let phi_psi = phi.compose_after(psi).map_err(|e| HomotopyError::Mismatch(e.to_string()))?;
    verify_weak_chain(fchain, &psi_phi, &pbar, "f")?;
    verify_weak_chain(gchain, &phi_psi, &sbar, "g")?;

    let half = BigRational::new(1.into(), 2.into());
    let mut best = BigRational::zero();
    for i in 1..=deg + 1 {
        best = best.max(dis_pc(phi, i, &pbar, &sbar));
        best = best.max(dis_pc(psi, i, &sbar, &pbar));
    }
    for (chain, complex) in [(fchain, &pbar), (gchain, &sbar)] {
        let maps = chain.maps();
        for k in 1..=chain.last_index() {
            let mut inner = BigRational::zero();
            for l in 0..=deg {
                let sum = dis_pc(&maps[k - 1], l, complex, complex)
                    + dis_pc(&maps[k], deg - l, complex, complex);
                inner = inner.max(sum);
            }
            best = best.max(half.clone() * (inner + cod_pc(&maps[k - 1], &maps[k], complex)));
        }
    }
    Ok(best)
}
