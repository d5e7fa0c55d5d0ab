//! Allowed spaces A_n, ∂-invariant spaces Ω_n, boundary matrices, homology
//! dimensions with deterministic representatives, and induced chain maps.
//!
//! The chain complex is the non-reduced one 0 ← Ω_0 ← Ω_1 ← … (∂_0 = 0), so
//! dim H_0 counts connected pieces.  Dimensions are always computed twice —
//! once from the Ω-complex and once as dim Ker ∂|_{A_n} − dim(A_n ∩ ∂A_{n+1})
//! — and the two answers are asserted equal.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::complex::PathComplex;
use crate::linalg::{Matrix, Scalar, ScalarMode, Sifter, SubspaceBasis};
use crate::path::{boundary_nr, boundary_reg, induced_map, ElementaryPath, FormalChain};
use crate::vertex::VertexMap;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("snapshots use different scalar modes")]
    FieldMismatch,
    #[error("snapshots use different boundary modes")]
    ModeMismatch,
    #[error("not a morphism: {0}")]
    NotMorphism(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
}

/// Which boundary operator a complex runs under: `Regular` quotients away
/// paths with equal consecutive vertices, `NonRegular` keeps them.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BoundaryMode {
    Regular,
    NonRegular,
}

impl BoundaryMode {
    /// Regular complexes run the regular theory; others the non-regular one.
    pub fn for_complex(p: &PathComplex) -> BoundaryMode {
        if p.is_regular() {
            BoundaryMode::Regular
        } else {
            BoundaryMode::NonRegular
        }
    }

    pub(crate) fn boundary(self, c: &FormalChain) -> FormalChain {
        match self {
            BoundaryMode::Regular => {
                boundary_reg(c).expect("regular boundary of regular terms")
            }
            BoundaryMode::NonRegular => boundary_nr(c),
        }
    }

    fn regular_flag(self) -> bool {
        matches!(self, BoundaryMode::Regular)
    }
}

/// Ordered elementary-path basis of A_n (`Regular` mode drops non-regular
/// paths; for regular complexes the modes agree).  Degree −1 is the empty
/// path; below that the space is zero.
pub fn allowed_space(p: &PathComplex, n: isize, mode: BoundaryMode) -> Vec<ElementaryPath> {
    match n {
        n if n < -1 => Vec::new(),
        -1 => vec![ElementaryPath::empty()],
        n => p
            .stratum(n as usize)
            .filter(|q| mode == BoundaryMode::NonRegular || q.is_regular())
            .cloned()
            .collect(),
    }
}

/// ∂ of each path as a face ↦ coefficient table.
fn boundary_tables(
    paths: &[ElementaryPath],
    mode: BoundaryMode,
    field: ScalarMode,
) -> Vec<BTreeMap<ElementaryPath, Scalar>> {
    paths
        .iter()
        .map(|p| {
            let b = mode.boundary(&FormalChain::monomial(p.clone(), field.one()));
            b.terms().map(|(q, s)| (q.clone(), s.clone())).collect()
        })
        .collect()
}

/// Assemble table columns over the indexed rows; faces absent from the index
/// are projected away.
fn matrix_from_tables(
    row_index: &BTreeMap<ElementaryPath, usize>,
    tables: &[BTreeMap<ElementaryPath, Scalar>],
    field: ScalarMode,
) -> Matrix {
    let mut m = Matrix::zero(field, row_index.len(), tables.len());
    for (j, t) in tables.iter().enumerate() {
        for (path, coeff) in t {
            if let Some(&i) = row_index.get(path) {
                m.set(i, j, coeff.clone());
            }
        }
    }
    m
}

/// Basis of Ω_n inside the ambient basis of A_n.
#[derive(Clone, Debug)]
pub struct OmegaBasis {
    degree: usize,
    mode: BoundaryMode,
    ambient: Vec<ElementaryPath>,
    vectors: SubspaceBasis,
}

impl OmegaBasis {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn mode(&self) -> BoundaryMode {
        self.mode
    }

    pub fn field(&self) -> ScalarMode {
        self.vectors.mode()
    }

    /// Ordered elementary-path basis of the ambient A_n.
    pub fn ambient(&self) -> &[ElementaryPath] {
        &self.ambient
    }

    /// Ω_n as a subspace in ambient coordinates.
    pub fn basis(&self) -> &SubspaceBasis {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.vectors.dim()
    }

    /// The i-th basis vector as a formal chain.
    pub fn chain(&self, i: usize) -> FormalChain {
        chain_from_coords(&self.ambient, &self.vectors.vectors()[i], self.degree as isize)
    }
}

pub(crate) fn chain_from_coords(
    ambient: &[ElementaryPath],
    coords: &[Scalar],
    degree: isize,
) -> FormalChain {
    let field = coords.first().map_or(ScalarMode::Rational, Scalar::mode);
    FormalChain::from_terms(
        field,
        degree,
        ambient.iter().cloned().zip(coords.iter().cloned()),
    )
    .expect("uniform degree and mode")
}

pub(crate) fn coords_from_chain(
    index: &BTreeMap<ElementaryPath, usize>,
    dim: usize,
    chain: &FormalChain,
    field: ScalarMode,
) -> Option<Vec<Scalar>> {
    let mut v = vec![field.zero(); dim];
    for (p, c) in chain.terms() {
        v[*index.get(p)?] = c.clone();
    }
    Some(v)
}

/// Ω_n = {v ∈ A_n : ∂v ∈ A_{n−1}}: kernel of the components of ∂ that land
/// outside A_{n−1}.  The mode is chosen by the complex.
pub fn omega_basis(p: &PathComplex, n: usize, field: ScalarMode) -> OmegaBasis {
    omega_basis_with_mode(p, n, BoundaryMode::for_complex(p), field)
}

/// As [`omega_basis`] with the boundary mode imposed by the caller — needed
/// when a family of snapshots must run one theory even though some members
/// happen to be regular.
pub fn omega_basis_with_mode(
    p: &PathComplex,
    n: usize,
    mode: BoundaryMode,
    field: ScalarMode,
) -> OmegaBasis {
    let ambient = allowed_space(p, n as isize, mode);
    if n == 0 {
        // Ω_0 = A_0: the kernel of the empty constraint system
        let vectors = Matrix::zero(field, 0, ambient.len()).kernel_basis();
        return OmegaBasis { degree: 0, mode, ambient, vectors };
    }
    let lower: BTreeSet<&ElementaryPath> =
        p.stratum(n - 1).filter(|q| mode == BoundaryMode::NonRegular || q.is_regular()).collect();
    let tables = boundary_tables(&ambient, mode, field);
    let mut bad_rows: BTreeMap<ElementaryPath, usize> = BTreeMap::new();
    for t in &tables {
        for face in t.keys() {
            if !lower.contains(face) {
                let next = bad_rows.len();
                bad_rows.entry(face.clone()).or_insert(next);
            }
        }
    }
    let constraints = matrix_from_tables(&bad_rows, &tables, field);
    let vectors = constraints.kernel_basis();
    OmegaBasis { degree: n, mode, ambient, vectors }
}

/// Cycle space Z_n = Ker ∂|_{A_n} in A_n coordinates (for n = 0 the whole
/// space — ∂_0 = 0 in the non-reduced complex), with its ambient basis.
pub(crate) fn cycle_space(
    p: &PathComplex,
    n: usize,
    mode: BoundaryMode,
    field: ScalarMode,
) -> (Vec<ElementaryPath>, SubspaceBasis) {
    let ambient = allowed_space(p, n as isize, mode);
    if n == 0 {
        let vectors = Matrix::zero(field, 0, ambient.len()).kernel_basis();
        return (ambient, vectors);
    }
    let tables = boundary_tables(&ambient, mode, field);
    let mut faces: BTreeMap<ElementaryPath, usize> = BTreeMap::new();
    for t in &tables {
        for face in t.keys() {
            let next = faces.len();
            faces.entry(face.clone()).or_insert(next);
        }
    }
    let full = matrix_from_tables(&faces, &tables, field);
    let vectors = full.kernel_basis();
    (ambient, vectors)
}

/// Cycle space, boundary space, and chosen representatives of H_n, all in
/// Ω_n coordinates.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    cycles: SubspaceBasis,
    boundary_rows: Vec<Vec<Scalar>>,
    representatives: Vec<Vec<Scalar>>,
}

impl HomologyBasis {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn cycles(&self) -> &SubspaceBasis {
        &self.cycles
    }

    /// Reduced-echelon basis of Im ∂_{n+1}.
    pub fn boundaries(&self) -> &[Vec<Scalar>] {
        &self.boundary_rows
    }

    /// Deterministic class representatives (the first reduced-echelon
    /// completion of the boundary basis inside the cycle space).
    pub fn representatives(&self) -> &[Vec<Scalar>] {
        &self.representatives
    }
}

/// Ω-bases, boundary matrices, and homology data of one complex, up to a
/// caller-chosen top degree.  H_n is available for n < top (its boundary
/// space needs ∂_{n+1}).
pub struct ChainComplexSnapshot {
    complex: PathComplex,
    field: ScalarMode,
    mode: BoundaryMode,
    omegas: Vec<OmegaBasis>,
    boundaries: Vec<Matrix>,
    homology: Vec<HomologyBasis>,
}

impl ChainComplexSnapshot {
    pub fn new(complex: PathComplex, top: usize, field: ScalarMode) -> ChainComplexSnapshot {
        let mode = BoundaryMode::for_complex(&complex);
        ChainComplexSnapshot::with_mode(complex, top, mode, field)
    }

    /// As [`ChainComplexSnapshot::new`] with the boundary mode imposed.
    pub fn with_mode(
        complex: PathComplex,
        top: usize,
        mode: BoundaryMode,
        field: ScalarMode,
    ) -> ChainComplexSnapshot {
        let omegas: Vec<OmegaBasis> =
            (0..=top).map(|n| omega_basis_with_mode(&complex, n, mode, field)).collect();
        let ambient_index: Vec<BTreeMap<ElementaryPath, usize>> = omegas
            .iter()
            .map(|o| o.ambient.iter().cloned().zip(0..).collect())
            .collect();
        let mut boundaries = vec![Matrix::zero(field, 0, omegas[0].dim())];
        for n in 1..=top {
            let cols: Vec<Vec<Scalar>> = (0..omegas[n].dim())
                .map(|i| {
                    let b = mode.boundary(&omegas[n].chain(i));
                    let amb = coords_from_chain(
                        &ambient_index[n - 1],
                        omegas[n - 1].ambient.len(),
                        &b,
                        field,
                    )
                    .expect("∂Ω_n lies in A_{n−1}");
                    omegas[n - 1].vectors.coords_of(&amb).expect("∂Ω_n lies in Ω_{n−1}")
                })
                .collect();
            boundaries.push(
                Matrix::from_cols(field, omegas[n - 1].dim(), &cols).expect("uniform columns"),
            );
        }
        for n in 2..=top {
            let square = boundaries[n - 1].mul(&boundaries[n]).expect("composable");
            assert_eq!(
                square,
                Matrix::zero(field, square.rows(), square.cols()),
                "∂∘∂ ≠ 0 at degree {n}"
            );
        }
        let homology = (0..top)
            .map(|n| {
                let cycles = boundaries[n].kernel_basis();
                let mut sifter = Sifter::new(omegas[n].dim());
                let mut boundary_rows = Vec::new();
                for j in 0..boundaries[n + 1].cols() {
                    if sifter.insert(&boundaries[n + 1].column(j)) {
                        boundary_rows.push(sifter.rows().last().unwrap().clone());
                    }
                }
                let mut representatives = Vec::new();
                for z in cycles.vectors() {
                    if sifter.insert(z) {
                        representatives.push(sifter.rows().last().unwrap().clone());
                    }
                }
                HomologyBasis { cycles, boundary_rows, representatives }
            })
            .collect();
        ChainComplexSnapshot { complex, field, mode, omegas, boundaries, homology }
    }

    pub fn complex(&self) -> &PathComplex {
        &self.complex
    }

    pub fn field(&self) -> ScalarMode {
        self.field
    }

    pub fn mode(&self) -> BoundaryMode {
        self.mode
    }

    pub fn top(&self) -> usize {
        self.omegas.len() - 1
    }

    pub fn omega(&self, n: usize) -> &OmegaBasis {
        &self.omegas[n]
    }

    /// ∂_n: Ω_n → Ω_{n−1} in the stored bases (n = 0 is the zero map).
    pub fn boundary(&self, n: usize) -> &Matrix {
        &self.boundaries[n]
    }

    /// Homology data at degree n; requires n < top.
    pub fn homology(&self, n: usize) -> &HomologyBasis {
        &self.homology[n]
    }

    pub fn homology_dim(&self, n: usize) -> usize {
        self.homology[n].dim()
    }
}

/// dim H_n for n = 0..=up_to, via the Ω-complex, cross-checked against
/// dim Ker ∂|_{A_n} − dim(A_n ∩ ∂A_{n+1}) on the allowed spaces.
pub fn homology_dims(p: &PathComplex, up_to: usize, field: ScalarMode) -> Vec<usize> {
    let snapshot = ChainComplexSnapshot::new(p.clone(), up_to + 1, field);
    let omega_route: Vec<usize> = (0..=up_to).map(|n| snapshot.homology_dim(n)).collect();
    let determine_route = determine_dims(p, up_to, field, snapshot.mode);
    assert_eq!(
        omega_route, determine_route,
        "Ω-route and allowed-space-route homology disagree"
    );
    omega_route
}

fn determine_dims(
    p: &PathComplex,
    up_to: usize,
    field: ScalarMode,
    mode: BoundaryMode,
) -> Vec<usize> {
    (0..=up_to)
        .map(|n| {
            let ambient = allowed_space(p, n as isize, mode);
            let cycles = if n == 0 {
                ambient.len()
            } else {
                let tables = boundary_tables(&ambient, mode, field);
                let rows: BTreeMap<ElementaryPath, usize> = tables
                    .iter()
                    .flat_map(|t| t.keys().cloned())
                    .collect::<BTreeSet<_>>()
                    .into_iter()
                    .zip(0..)
                    .collect();
                ambient.len() - matrix_from_tables(&rows, &tables, field).rank()
            };
            let upper = allowed_space(p, n as isize + 1, mode);
            let w_tables = boundary_tables(&upper, mode, field);
            let coords: BTreeMap<ElementaryPath, usize> = ambient
                .iter()
                .cloned()
                .chain(w_tables.iter().flat_map(|t| t.keys().cloned()))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .zip(0..)
                .collect();
            let w = matrix_from_tables(&coords, &w_tables, field);
            let mut u = Matrix::zero(field, coords.len(), ambient.len());
            for (j, path) in ambient.iter().enumerate() {
                u.set(coords[path], j, field.one());
            }
            let boundaries =
                ambient.len() + w.rank() - u.hstack(&w).expect("same row space").rank();
            cycles - boundaries
        })
        .collect()
}

/// Matrices of f_*: Ω_n(src) → Ω_n(dst) for n = 0..=min(top, top′), after
/// verifying that f maps allowed paths to allowed-or-collapsing paths.  Both
/// snapshots must use the same field and mode, and the destination complex
/// must be truncated at least as high as the source for the verification to
/// be meaningful.
pub fn induced_chain_map(
    f: &VertexMap,
    src: &ChainComplexSnapshot,
    dst: &ChainComplexSnapshot,
) -> Result<Vec<Matrix>, HomologyError> {
    if src.field != dst.field {
        return Err(HomologyError::FieldMismatch);
    }
    if src.mode != dst.mode {
        return Err(HomologyError::ModeMismatch);
    }
    if f.domain() != src.complex.vertices() || f.codomain() != dst.complex.vertices() {
        return Err(HomologyError::NotMorphism(
            "vertex map endpoints do not match the complexes".into(),
        ));
    }
    let regular = src.mode.regular_flag();
    for path in src.complex.paths().filter(|p| p.degree() >= 1) {
        if regular && !path.is_regular() {
            continue;
        }
        let image = ElementaryPath::new(
            path.vertices().iter().map(|&v| f.apply(v).unwrap()).collect(),
        );
        if regular && !image.is_regular() {
            continue;
        }
        if !dst.complex.allowed(&image) {
            return Err(HomologyError::NotMorphism(format!(
                "image of {} is not allowed",
                path.display(src.complex.vertices())
            )));
        }
    }

    let top = src.top().min(dst.top());
    let mut maps = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let dst_index: BTreeMap<ElementaryPath, usize> =
            dst.omegas[n].ambient.iter().cloned().zip(0..).collect();
        let cols: Vec<Vec<Scalar>> = (0..src.omegas[n].dim())
            .map(|i| {
                let image = induced_map(f, &src.omegas[n].chain(i), regular)
                    .expect("total vertex map");
                let amb = coords_from_chain(
                    &dst_index,
                    dst.omegas[n].ambient.len(),
                    &image,
                    src.field,
                )
                .ok_or_else(|| {
                    HomologyError::NotMorphism(format!(
                        "chain image leaves the allowed space at degree {n}"
                    ))
                })?;
                dst.omegas[n].vectors.coords_of(&amb).ok_or_else(|| {
                    HomologyError::Internal(format!("image of Ω_{n} escapes Ω_{n}′"))
                })
            })
            .collect::<Result<_, _>>()?;
        maps.push(
            Matrix::from_cols(src.field, dst.omegas[n].dim(), &cols).expect("uniform columns"),
        );
    }
    for n in 1..=top {
        let lhs = dst.boundaries[n].mul(&maps[n]).expect("composable");
        let rhs = maps[n - 1].mul(&src.boundaries[n]).expect("composable");
        assert_eq!(lhs, rhs, "chain-map identity fails at degree {n}");
    }
    Ok(maps)
}

/// Matrices induced on H_n by a verified chain map, in the snapshots'
/// representative bases; defined for n < min(top, top′).
pub fn homology_map(
    maps: &[Matrix],
    src: &ChainComplexSnapshot,
    dst: &ChainComplexSnapshot,
) -> Result<Vec<Matrix>, HomologyError> {
    if src.field != dst.field {
        return Err(HomologyError::FieldMismatch);
    }
    let top = maps.len().min(src.homology.len()).min(dst.homology.len());
    let mut out = Vec::with_capacity(top);
    for n in 0..top {
        let h_src = &src.homology[n];
        let h_dst = &dst.homology[n];
        let images: Vec<Vec<Scalar>> =
            h_src.representatives.iter().map(|r| maps[n].mul_vec(r)).collect();
        for img in &images {
            if !dst.boundaries[n].mul_vec(img).iter().all(Scalar::is_zero) {
                return Err(HomologyError::Internal(format!(
                    "image of a degree-{n} representative is not a cycle"
                )));
            }
        }
        let decomp_cols: Vec<Vec<Scalar>> = h_dst
            .boundary_rows
            .iter()
            .chain(h_dst.representatives.iter())
            .cloned()
            .collect();
        let decomp = Matrix::from_cols(src.field, dst.omegas[n].dim(), &decomp_cols)
            .expect("uniform columns");
        let solved = decomp.solve_many(&images).ok_or_else(|| {
            HomologyError::Internal(format!(
                "degree-{n} image not expressible over boundaries and representatives"
            ))
        })?;
        let b = h_dst.boundary_rows.len();
        let cols: Vec<Vec<Scalar>> = solved.into_iter().map(|x| x[b..].to_vec()).collect();
        out.push(Matrix::from_cols(src.field, h_dst.dim(), &cols).expect("uniform columns"));
    }
    Ok(out)
}
