//! Persistence diagrams of filtered path complexes via exact column
//! reduction over flag-adapted bases.
//!
//! All snapshot chain complexes embed in the final one, and the inclusions
//! are genuine subspace inclusions, so the persistent degree-p homology is
//! read off one matrix: rows are a flag-adapted basis of the nested cycle
//! spaces Z_p(δ_1) ⊆ … ⊆ Z_p(δ_m), columns the boundaries of a flag-adapted
//! basis of Ω_{p+1}(δ_1) ⊆ … ⊆ Ω_{p+1}(δ_m), both ordered by entry index.
//! Left-to-right reduction pairs pivots into finite bars; cycle rows that
//! never become pivots are classes that survive the whole filtration.

use std::collections::BTreeMap;

use num::rational::BigRational;

use thiserror::Error;

use crate::filtration::{FilteredComplex, FiltrationError};
use crate::homology::{
    allowed_space, chain_from_coords, coords_from_chain, cycle_space, homology_map,
    induced_chain_map, omega_basis_with_mode, BoundaryMode, ChainComplexSnapshot,
};
use crate::linalg::{
    flag_adapted_basis, format_rational, parse_rational, Matrix, Scalar, ScalarMode,
    SubspaceBasis,
};
use crate::path::ElementaryPath;
use crate::vertex::VertexMap;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PersistenceError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("snapshot {0} is not included in snapshot {1}")]
    NotNested(usize, usize),
}

/// Right endpoint of a bar; `Finite` sorts before `Infinite`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Death {
    Finite(BigRational),
    Infinite,
}

impl Death {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Death::Infinite)
    }
}

/// One interval summand of a persistent vector space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bar {
    pub degree: usize,
    pub birth: BigRational,
    pub death: Death,
}

/// Multiset of (birth, death) points of one homology degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PersistenceDiagram {
    degree: usize,
    points: BTreeMap<(BigRational, Death), usize>,
}

impl PersistenceDiagram {
    pub fn empty(degree: usize) -> PersistenceDiagram {
        PersistenceDiagram { degree, points: BTreeMap::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Adds a bar; zero-length bars are discarded (they are invisible to
    /// the bottleneck distance and keep diagrams canonical).
    pub fn insert(&mut self, birth: BigRational, death: Death) {
        if let Death::Finite(d) = &death {
            assert!(birth <= *d, "bar must not die before it is born");
            if birth == *d {
                return;
            }
        }
        *self.points.entry((birth, death)).or_insert(0) += 1;
    }

    /// Distinct points with multiplicities, sorted.
    pub fn points(&self) -> impl Iterator<Item = (&(BigRational, Death), usize)> {
        self.points.iter().map(|(p, &m)| (p, m))
    }

    /// Every bar, multiplicity expanded.
    pub fn bars(&self) -> impl Iterator<Item = Bar> + '_ {
        self.points.iter().flat_map(move |((b, d), &m)| {
            std::iter::repeat_with(move || Bar {
                degree: self.degree,
                birth: b.clone(),
                death: d.clone(),
            })
            .take(m)
        })
    }

    /// Total number of bars counted with multiplicity.
    pub fn len(&self) -> usize {
        self.points.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn infinite_count(&self) -> usize {
        self.points.iter().filter(|((_, d), _)| d.is_infinite()).map(|(_, &m)| m).sum()
    }

    /// #{bars born at or before `b`, still alive strictly after `d`} — the
    /// count the rank of an inclusion-induced map must reproduce.
    pub fn alive_count(&self, b: &BigRational, d: &BigRational) -> usize {
        self.points
            .iter()
            .filter(|((birth, death), _)| {
                birth <= b
                    && match death {
                        Death::Infinite => true,
                        Death::Finite(x) => x > d,
                    }
            })
            .map(|(_, &m)| m)
            .sum()
    }
}

fn inject(
    snap_ambient: &[ElementaryPath],
    vectors: &SubspaceBasis,
    final_index: &BTreeMap<ElementaryPath, usize>,
    final_dim: usize,
    field: ScalarMode,
) -> SubspaceBasis {
    let injected: Vec<Vec<Scalar>> = vectors
        .vectors()
        .iter()
        .map(|v| {
            let mut w = vec![field.zero(); final_dim];
            for (k, s) in v.iter().enumerate() {
                if !s.is_zero() {
                    w[final_index[&snap_ambient[k]]] = s.clone();
                }
            }
            w
        })
        .collect();
    SubspaceBasis::new(field, final_dim, injected).expect("injection preserves independence")
}

fn low_of(col: &[Scalar]) -> Option<usize> {
    col.iter().rposition(|s| !s.is_zero())
}

/// Interval decomposition of δ ↦ H_p(snapshot(δ)).  The snapshots must
/// carry their strata at least through degree p+1.
pub fn persistence_diagram(
    filtered: &FilteredComplex,
    p: usize,
    field: ScalarMode,
) -> Result<PersistenceDiagram, PersistenceError> {
    match filtered.verify_nested() {
        Err(FiltrationError::NotNested(i, j)) => return Err(PersistenceError::NotNested(i, j)),
        _ => {}
    }
    let m = filtered.len();
    let last = filtered.snapshot(m - 1);
    let mode = BoundaryMode::for_complex(last);

    let amb_p = allowed_space(last, p as isize, mode);
    let idx_p: BTreeMap<ElementaryPath, usize> = amb_p.iter().cloned().zip(0..).collect();
    let amb_q = allowed_space(last, p as isize + 1, mode);
    let idx_q: BTreeMap<ElementaryPath, usize> = amb_q.iter().cloned().zip(0..).collect();

    let z_members: Vec<SubspaceBasis> = (0..m)
        .map(|i| {
            let (amb, z) = cycle_space(filtered.snapshot(i), p, mode, field);
            inject(&amb, &z, &idx_p, amb_p.len(), field)
        })
        .collect();
    let rows = flag_adapted_basis(&z_members).expect("cycle spaces are nested");

    let o_members: Vec<SubspaceBasis> = (0..m)
        .map(|i| {
            let o = omega_basis_with_mode(filtered.snapshot(i), p + 1, mode, field);
            inject(o.ambient(), o.basis(), &idx_q, amb_q.len(), field)
        })
        .collect();
    let cols_basis = flag_adapted_basis(&o_members).expect("Ω spaces are nested");

    // boundaries of the column vectors, in row-basis coordinates
    let bcols: Vec<Vec<Scalar>> = cols_basis
        .basis
        .vectors()
        .iter()
        .map(|c| {
            let chain = chain_from_coords(&amb_q, c, p as isize + 1);
            let b = mode.boundary(&chain);
            coords_from_chain(&idx_p, amb_p.len(), &b, field)
                .expect("∂ of an allowed chain lands in allowed paths")
        })
        .collect();
    let n_rows = rows.entry_index.len();
    let mut cols: Vec<Vec<Scalar>> = if bcols.is_empty() {
        Vec::new()
    } else {
        Matrix::from_cols(field, amb_p.len(), rows.basis.vectors())
            .expect("uniform basis columns")
            .solve_many(&bcols)
            .expect("boundaries are cycles of their own snapshot")
    };

    // standard left-to-right reduction; columns arrive in entry order
    let mut owner: Vec<Option<usize>> = vec![None; n_rows];
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..cols.len() {
        while let Some(low) = low_of(&cols[j]) {
            let Some(j2) = owner[low] else {
                owner[low] = Some(j);
                pairs.push((low, j));
                break;
            };
            let pivot = cols[j2].clone();
            let factor = &cols[j][low] * &pivot[low].inv().expect("pivot is nonzero");
            for (dst, src) in cols[j].iter_mut().zip(&pivot) {
                *dst = &*dst - &(&factor * src);
            }
        }
    }

    let values = filtered.index().values();
    let mut diagram = PersistenceDiagram::empty(p);
    let mut paired = vec![false; n_rows];
    for (r, j) in pairs {
        paired[r] = true;
        let birth = values[rows.entry_index[r]].clone();
        let death = values[cols_basis.entry_index[j]].clone();
        diagram.insert(birth, Death::Finite(death));
    }
    for (r, done) in paired.iter().enumerate() {
        if !done {
            diagram.insert(values[rows.entry_index[r]].clone(), Death::Infinite);
        }
    }
    Ok(diagram)
}

/// Rank of the inclusion-induced map H_p(snapshot i) → H_p(snapshot j),
/// computed through the chain-map machinery — independent of the reduction.
/// Cross-checks diagrams via #{bars born ≤ δ_i, alive past δ_j} = rank.
pub fn betti_persistence_oracle(
    filtered: &FilteredComplex,
    p: usize,
    i: usize,
    j: usize,
    field: ScalarMode,
) -> usize {
    assert!(i <= j, "oracle needs i ≤ j");
    let mode = BoundaryMode::for_complex(filtered.snapshot(filtered.len() - 1));
    let src = ChainComplexSnapshot::with_mode(filtered.snapshot(i).clone(), p + 1, mode, field);
    let dst = ChainComplexSnapshot::with_mode(filtered.snapshot(j).clone(), p + 1, mode, field);
    let id = VertexMap::identity(filtered.snapshot(i).vertices());
    let chain_maps = induced_chain_map(&id, &src, &dst).expect("inclusions are morphisms");
    let h = homology_map(&chain_maps, &src, &dst).expect("inclusions induce homology maps");
    h[p].rank()
}

fn field_label(field: ScalarMode) -> String {
    match field {
        ScalarMode::Rational => "rat".into(),
        ScalarMode::Prime(q) => format!("F{q}"),
    }
}

/// Canonical `.dgm` serialization: a header line, then one sorted line per
/// bar (`inf` marks an infinite death), multiplicity as repetition.
pub fn write_dgm(d: &PersistenceDiagram, field: ScalarMode) -> String {
    let mut out = format!("# dim={} field={}\n", d.degree(), field_label(field));
    for bar in d.bars() {
        let death = match &bar.death {
            Death::Finite(x) => format_rational(x),
            Death::Infinite => "inf".into(),
        };
        out.push_str(&format!("{} {}\n", format_rational(&bar.birth), death));
    }
    out
}

/// Inverse of [`write_dgm`]; accepts comments and blank lines after the
/// mandatory header.
pub fn parse_dgm(text: &str) -> Result<(PersistenceDiagram, ScalarMode), PersistenceError> {
    let parse_err = |line: usize, msg: String| PersistenceError::Parse { line, msg };
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing header".into()))?;
    let rest = header
        .strip_prefix("# dim=")
        .ok_or_else(|| parse_err(1, "header must be `# dim=<p> field=<rat|Fq>`".into()))?;
    let (dim_part, field_part) = rest
        .split_once(" field=")
        .ok_or_else(|| parse_err(1, "header must be `# dim=<p> field=<rat|Fq>`".into()))?;
    let degree: usize =
        dim_part.trim().parse().map_err(|_| parse_err(1, format!("bad degree {dim_part:?}")))?;
    let field = match field_part.trim() {
        "rat" => ScalarMode::Rational,
        f => {
            let q = f
                .strip_prefix('F')
                .and_then(|n| n.parse::<u64>().ok())
                .ok_or_else(|| parse_err(1, format!("bad field {f:?}")))?;
            ScalarMode::prime(q).map_err(|e| parse_err(1, e.to_string()))?
        }
    };

    let mut diagram = PersistenceDiagram::empty(degree);
    for (i, raw) in lines {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut parts = content.split_whitespace();
        let (Some(b), Some(d), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(parse_err(line, format!("expected `<birth> <death>`, got {content:?}")));
        };
        let birth = parse_rational(b).map_err(|e| parse_err(line, e.to_string()))?;
        let death = if d == "inf" {
            Death::Infinite
        } else {
            Death::Finite(parse_rational(d).map_err(|e| parse_err(line, e.to_string()))?)
        };
        if let Death::Finite(x) = &death {
            if *x < birth {
                return Err(parse_err(line, "bar dies before it is born".into()));
            }
        }
        diagram.insert(birth, death);
    }
    Ok((diagram, field))
}
