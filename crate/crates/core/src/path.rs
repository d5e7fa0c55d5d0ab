//! Elementary paths, formal chains, and the two boundary operators.
//!
//! An elementary p-path is a sequence of p+1 vertices; the empty sequence is
//! the unique (−1)-path.  A path is regular when no two consecutive vertices
//! coincide.  The non-regular boundary ∂ⁿʳ is the alternating sum of vertex
//! omissions; the regular boundary additionally deletes the (at most one per
//! face) non-regular faces, i.e. works modulo the subspace spanned by
//! non-regular paths.  Both square to zero.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::linalg::{Scalar, ScalarMode};
use crate::vertex::{VertexId, VertexMap, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("chain terms must all have degree {expected}, found degree {found}")]
    MixedDegree { expected: isize, found: isize },
    #[error("chain coefficients must share one scalar mode")]
    ModeMismatch,
    #[error("operation requires regular paths, found a non-regular term")]
    NonRegularPath,
    #[error("vertex id {0} is outside the map's domain")]
    VertexOutsideDomain(VertexId),
    #[error("expected a degree-{expected} chain, found degree {found}")]
    WrongDegree { expected: isize, found: isize },
}

/// A sequence of vertex ids; `degree() = length − 1`, so the empty path has
/// degree −1.  `Ord` is lexicographic, which matches name order because ids
/// are interned in sorted order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ElementaryPath(Vec<VertexId>);

impl ElementaryPath {
    pub fn new(ids: Vec<VertexId>) -> ElementaryPath {
        ElementaryPath(ids)
    }

    pub fn empty() -> ElementaryPath {
        ElementaryPath(Vec::new())
    }

    pub fn from_names(vs: &VertexSet, names: &[&str]) -> Option<ElementaryPath> {
        names.iter().map(|n| vs.id(n)).collect::<Option<Vec<_>>>().map(ElementaryPath)
    }

    pub fn degree(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    /// No two consecutive vertices equal (vacuously true below degree 1).
    pub fn is_regular(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1])
    }

    /// The path with the q-th vertex omitted.
    pub fn face(&self, q: usize) -> ElementaryPath {
        let mut v = self.0.clone();
        v.remove(q);
        ElementaryPath(v)
    }

    /// Drop the last vertex.
    pub fn truncate_back(&self) -> ElementaryPath {
        ElementaryPath(self.0[..self.0.len() - 1].to_vec())
    }

    /// Drop the first vertex.
    pub fn truncate_front(&self) -> ElementaryPath {
        ElementaryPath(self.0[1..].to_vec())
    }

    /// Space-separated vertex names; the empty path renders as `e`.
    pub fn display(&self, vs: &VertexSet) -> String {
        if self.0.is_empty() {
            return "e".to_string();
        }
        self.0.iter().map(|&i| vs.name(i)).collect::<Vec<_>>().join(" ")
    }
}

/// Finite formal K-linear combination of elementary paths of one degree.
/// Terms are kept sorted and zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormalChain {
    degree: isize,
    mode: ScalarMode,
    terms: BTreeMap<ElementaryPath, Scalar>,
}

impl FormalChain {
    pub fn zero(mode: ScalarMode, degree: isize) -> FormalChain {
        FormalChain { degree, mode, terms: BTreeMap::new() }
    }

    pub fn monomial(path: ElementaryPath, coeff: Scalar) -> FormalChain {
        let mut c = FormalChain::zero(coeff.mode(), path.degree());
        c.accumulate(path, coeff);
        c
    }

    pub fn from_terms(
        mode: ScalarMode,
        degree: isize,
        terms: impl IntoIterator<Item = (ElementaryPath, Scalar)>,
    ) -> Result<FormalChain, PathError> {
        let mut c = FormalChain::zero(mode, degree);
        for (p, s) in terms {
            if p.degree() != degree {
                return Err(PathError::MixedDegree { expected: degree, found: p.degree() });
            }
            if s.mode() != mode {
                return Err(PathError::ModeMismatch);
            }
            c.accumulate(p, s);
        }
        Ok(c)
    }

    fn accumulate(&mut self, path: ElementaryPath, coeff: Scalar) {
        debug_assert_eq!(path.degree(), self.degree);
        match self.terms.entry(path) {
            std::collections::btree_map::Entry::Vacant(e) => {
                if !coeff.is_zero() {
                    e.insert(coeff);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn degree(&self) -> isize {
        self.degree
    }

    pub fn mode(&self) -> ScalarMode {
        self.mode
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ElementaryPath, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, path: &ElementaryPath) -> Scalar {
        self.terms.get(path).cloned().unwrap_or_else(|| self.mode.zero())
    }

    pub fn add(&self, other: &FormalChain) -> Result<FormalChain, PathError> {
        if self.degree != other.degree {
            return Err(PathError::MixedDegree { expected: self.degree, found: other.degree });
        }
        if self.mode != other.mode {
            return Err(PathError::ModeMismatch);
        }
        let mut out = self.clone();
        for (p, s) in &other.terms {
            out.accumulate(p.clone(), s.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> FormalChain {
        assert_eq!(s.mode(), self.mode);
        let mut out = FormalChain::zero(self.mode, self.degree);
        if s.is_zero() {
            return out;
        }
        for (p, c) in &self.terms {
            out.terms.insert(p.clone(), c * s);
        }
        out
    }

    pub fn neg(&self) -> FormalChain {
        let mut out = FormalChain::zero(self.mode, self.degree);
        for (p, c) in &self.terms {
            out.terms.insert(p.clone(), -c);
        }
        out
    }

    pub fn sub(&self, other: &FormalChain) -> Result<FormalChain, PathError> {
        self.add(&other.neg())
    }

    /// Canonical rendering: `±coeff·v0 v1 …` terms joined by ` + ` / ` - `,
    /// in lexicographic term order; the zero chain renders as `0`.
    pub fn display(&self, vs: &VertexSet) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (p, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&format!("{mag}·{}", p.display(vs)));
        }
        out
    }
}

/// Non-regular boundary: alternating sum of vertex omissions.  Sends
/// (−1)-chains to the zero (−2)-chain.
pub fn boundary_nr(c: &FormalChain) -> FormalChain {
    let mut out = FormalChain::zero(c.mode(), c.degree() - 1);
    if c.degree() <= -1 {
        return out;
    }
    for (p, coeff) in c.terms() {
        for q in 0..p.vertices().len() {
            let face_coeff = if q % 2 == 0 { coeff.clone() } else { -coeff };
            out.accumulate(p.face(q), face_coeff);
        }
    }
    out
}

/// Regular boundary: as [`boundary_nr`] but with non-regular faces deleted
/// (the quotient by the span of non-regular paths).  Every input term must be
/// regular.
pub fn boundary_reg(c: &FormalChain) -> Result<FormalChain, PathError> {
    let mut out = FormalChain::zero(c.mode(), c.degree() - 1);
    if c.degree() <= -1 {
        return Ok(out);
    }
    for (p, coeff) in c.terms() {
        if !p.is_regular() {
            return Err(PathError::NonRegularPath);
        }
        for q in 0..p.vertices().len() {
            let face = p.face(q);
            if !face.is_regular() {
                continue;
            }
            let face_coeff = if q % 2 == 0 { coeff.clone() } else { -coeff };
            out.accumulate(face, face_coeff);
        }
    }
    Ok(out)
}

/// Projection Λ → R: drop the non-regular terms.
pub fn project_regular(c: &FormalChain) -> FormalChain {
    let mut out = FormalChain::zero(c.mode(), c.degree());
    for (p, coeff) in c.terms() {
        if p.is_regular() {
            out.terms.insert(p.clone(), coeff.clone());
        }
    }
    out
}

/// Chain map induced by a vertex map: relabel every term vertexwise.  In
/// regular mode, terms whose image is non-regular are sent to zero.
pub fn induced_map(
    f: &VertexMap,
    c: &FormalChain,
    regular: bool,
) -> Result<FormalChain, PathError> {
    let mut out = FormalChain::zero(c.mode(), c.degree());
    for (p, coeff) in c.terms() {
        let image: Vec<VertexId> = p
            .vertices()
            .iter()
            .map(|&v| f.apply(v).ok_or(PathError::VertexOutsideDomain(v)))
            .collect::<Result<_, _>>()?;
        let image = ElementaryPath::new(image);
        if regular && !image.is_regular() {
            continue;
        }
        out.accumulate(image, coeff.clone());
    }
    Ok(out)
}

/// Augmentation Λ_0 → K: sum of coefficients.  Present for completeness; the
/// homology pipeline works with the non-reduced complex and never applies it.
pub fn augmentation(c: &FormalChain) -> Result<Scalar, PathError> {
    if c.degree() != 0 {
        return Err(PathError::WrongDegree { expected: 0, found: c.degree() });
    }
    let mut acc = c.mode().zero();
    for (_, coeff) in c.terms() {
        acc = &acc + coeff;
    }
    Ok(acc)
}
