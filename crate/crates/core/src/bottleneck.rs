//! Exact bottleneck distance between persistence diagrams.
//!
//! The candidate set (pairwise coordinate differences and half-persistences)
//! contains the answer, so a binary search over sorted candidates with an
//! exact bipartite-matching feasibility test needs no tolerance anywhere.
//! Infinite bars are decoupled: they can only match each other, and the
//! optimal assignment on a line pairs them in sorted birth order.

use num::rational::BigRational;
use num::{Signed, Zero};

use std::collections::BTreeSet;

use thiserror::Error;

use crate::persistence::{Death, PersistenceDiagram};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BottleneckError {
    #[error("diagrams live in different degrees: {0} vs {1}")]
    DegreeMismatch(usize, usize),
}

/// A diagram point: birth and (possibly infinite) death.
pub type DiagramPoint = (BigRational, Death);

/// Extended nonnegative rational; `Finite` sorts before `Infinite`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Cost {
    Finite(BigRational),
    Infinite,
}

impl Cost {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Cost::Infinite)
    }
}

/// A partial matching: real pairs plus the points of both diagrams left to
/// the diagonal.
#[derive(Clone, Debug)]
pub struct Matching {
    pairs: Vec<(DiagramPoint, DiagramPoint)>,
    unmatched_left: Vec<DiagramPoint>,
    unmatched_right: Vec<DiagramPoint>,
}

impl Matching {
    pub fn new(
        pairs: Vec<(DiagramPoint, DiagramPoint)>,
        unmatched_left: Vec<DiagramPoint>,
        unmatched_right: Vec<DiagramPoint>,
    ) -> Matching {
        Matching { pairs, unmatched_left, unmatched_right }
    }

    pub fn pairs(&self) -> &[(DiagramPoint, DiagramPoint)] {
        &self.pairs
    }

    pub fn unmatched_left(&self) -> &[DiagramPoint] {
        &self.unmatched_left
    }

    pub fn unmatched_right(&self) -> &[DiagramPoint] {
        &self.unmatched_right
    }
}

/// c(I, J) = max(|c − a|, |d − b|), with |∞ − ∞| = 0 and |∞ − finite| = ∞.
pub fn pair_cost(a: &DiagramPoint, b: &DiagramPoint) -> Cost {
    let births = (&a.0 - &b.0).abs();
    match (&a.1, &b.1) {
        (Death::Infinite, Death::Infinite) => Cost::Finite(births),
        (Death::Finite(x), Death::Finite(y)) => {
            Cost::Finite(births.max((x - y).abs()))
        }
        _ => Cost::Infinite,
    }
}

/// c(I) = (b − a)/2, the cost of leaving a point unmatched; infinite for an
/// infinite bar.
pub fn diagonal_cost(p: &DiagramPoint) -> Cost {
    match &p.1 {
        Death::Infinite => Cost::Infinite,
        Death::Finite(d) => Cost::Finite((d - &p.0) / BigRational::from_integer(2.into())),
    }
}

/// Max over pair costs and unmatched costs; 0 for the empty matching.
pub fn matching_cost(m: &Matching) -> Cost {
    let mut cost = Cost::Finite(BigRational::zero());
    for (a, b) in &m.pairs {
        cost = cost.max(pair_cost(a, b));
    }
    for p in m.unmatched_left.iter().chain(&m.unmatched_right) {
        cost = cost.max(diagonal_cost(p));
    }
    cost
}

type FiniteBar = (BigRational, BigRational);

fn fits_pair(p: &FiniteBar, q: &FiniteBar, eps: &BigRational) -> bool {
    (&p.0 - &q.0).abs() <= *eps && (&p.1 - &q.1).abs() <= *eps
}

fn fits_diagonal(p: &FiniteBar, eps: &BigRational) -> bool {
    &p.1 - &p.0 <= eps * BigRational::from_integer(2.into())
}

/// Perfect matching on the diagonal-augmented bipartite graph at scale
/// `eps`, if one exists.  Left nodes are the points of `f1` followed by one
/// diagonal slot per point of `f2`; right nodes symmetrically.
fn feasible_matching(
    f1: &[FiniteBar],
    f2: &[FiniteBar],
    eps: &BigRational,
) -> Option<Vec<Option<usize>>> {
    let (n1, n2) = (f1.len(), f2.len());
    let total = n1 + n2;
    let mut adj: Vec<Vec<usize>> = Vec::with_capacity(total);
    for (i, p) in f1.iter().enumerate() {
        let mut row: Vec<usize> =
            (0..n2).filter(|&j| fits_pair(p, &f2[j], eps)).collect();
        if fits_diagonal(p, eps) {
            row.push(n2 + i);
        }
        adj.push(row);
    }
    for (j, q) in f2.iter().enumerate() {
        let mut row: Vec<usize> = Vec::with_capacity(n1 + 1);
        if fits_diagonal(q, eps) {
            row.push(j);
        }
        row.extend(n2..total); // diagonal slots pair freely with each other
        adj.push(row);
    }

    let mut right_owner: Vec<Option<usize>> = vec![None; total];
    fn augment(
        u: usize,
        adj: &[Vec<usize>],
        right_owner: &mut [Option<usize>],
        seen: &mut [bool],
    ) -> bool {
        for &v in &adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if right_owner[v].is_none()
                || augment(right_owner[v].unwrap(), adj, right_owner, seen)
            {
                right_owner[v] = Some(u);
                return true;
            }
        }
        false
    }
    for u in 0..total {
        let mut seen = vec![false; total];
        if !augment(u, &adj, &mut right_owner, &mut seen) {
            return None;
        }
    }
    let mut left_match = vec![None; total];
    for (v, owner) in right_owner.iter().enumerate() {
        if let Some(u) = *owner {
            left_match[u] = Some(v);
        }
    }
    Some(left_match)
}

fn expand(d: &PersistenceDiagram) -> (Vec<FiniteBar>, Vec<BigRational>) {
    let mut finite = Vec::new();
    let mut infinite = Vec::new();
    for bar in d.bars() {
        match bar.death {
            Death::Finite(x) => finite.push((bar.birth, x)),
            Death::Infinite => infinite.push(bar.birth),
        }
    }
    infinite.sort();
    (finite, infinite)
}

/// d_B as the minimum matching cost; also returns a matching achieving it.
pub fn bottleneck_distance_with_witness(
    d1: &PersistenceDiagram,
    d2: &PersistenceDiagram,
) -> Result<(Cost, Matching), BottleneckError> {
    if d1.degree() != d2.degree() {
        return Err(BottleneckError::DegreeMismatch(d1.degree(), d2.degree()));
    }
    let (f1, i1) = expand(d1);
    let (f2, i2) = expand(d2);

    // infinite bars: sorted birth coupling is optimal on a line
    let mut cost = Cost::Finite(BigRational::zero());
    let mut pairs: Vec<(DiagramPoint, DiagramPoint)> = Vec::new();
    let mut unmatched_left: Vec<DiagramPoint> = Vec::new();
    let mut unmatched_right: Vec<DiagramPoint> = Vec::new();
    if i1.len() != i2.len() {
        cost = Cost::Infinite;
    }
    for k in 0..i1.len().min(i2.len()) {
        cost = cost.max(Cost::Finite((&i1[k] - &i2[k]).abs()));
        pairs.push(((i1[k].clone(), Death::Infinite), (i2[k].clone(), Death::Infinite)));
    }
    for b in i1.iter().skip(i2.len()) {
        unmatched_left.push((b.clone(), Death::Infinite));
    }
    for b in i2.iter().skip(i1.len()) {
        unmatched_right.push((b.clone(), Death::Infinite));
    }

    // finite bars: binary search the exact candidate set
    let mut candidates: BTreeSet<BigRational> = BTreeSet::new();
    candidates.insert(BigRational::zero());
    for p in &f1 {
        for q in &f2 {
            candidates.insert((&p.0 - &q.0).abs());
            candidates.insert((&p.1 - &q.1).abs());
        }
    }
    let half = BigRational::new(1.into(), 2.into());
    for p in f1.iter().chain(&f2) {
        candidates.insert((&p.1 - &p.0) * &half);
    }
    let candidates: Vec<BigRational> = candidates.into_iter().collect();
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible_matching(&f1, &f2, &candidates[mid]).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let eps = &candidates[lo];
    let matched = feasible_matching(&f1, &f2, eps)
        .expect("the largest candidate dominates every half-persistence");
    cost = cost.max(Cost::Finite(eps.clone()));

    for (i, p) in f1.iter().enumerate() {
        match matched[i] {
            Some(j) if j < f2.len() => pairs.push((
                (p.0.clone(), Death::Finite(p.1.clone())),
                (f2[j].0.clone(), Death::Finite(f2[j].1.clone())),
            )),
            _ => unmatched_left.push((p.0.clone(), Death::Finite(p.1.clone()))),
        }
    }
    let paired_right: BTreeSet<usize> =
        matched.iter().take(f1.len()).filter_map(|j| *j).filter(|&j| j < f2.len()).collect();
    for (j, q) in f2.iter().enumerate() {
        if !paired_right.contains(&j) {
            unmatched_right.push((q.0.clone(), Death::Finite(q.1.clone())));
        }
    }
    Ok((cost, Matching::new(pairs, unmatched_left, unmatched_right)))
}

/// Minimum matching cost between two diagrams of the same degree.
pub fn bottleneck_distance(
    d1: &PersistenceDiagram,
    d2: &PersistenceDiagram,
) -> Result<Cost, BottleneckError> {
    bottleneck_distance_with_witness(d1, d2).map(|(c, _)| c)
}
