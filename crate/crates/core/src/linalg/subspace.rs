use super::{LinalgError, Matrix, Scalar, ScalarMode};

/// A subspace of K^d given by an ordered, linearly independent list of
/// spanning vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubspaceBasis {
    mode: ScalarMode,
    ambient_dim: usize,
    vectors: Vec<Vec<Scalar>>,
}

impl SubspaceBasis {
    pub fn new(
        mode: ScalarMode,
        ambient_dim: usize,
        vectors: Vec<Vec<Scalar>>,
    ) -> Result<SubspaceBasis, LinalgError> {
        for v in &vectors {
            if v.len() != ambient_dim {
                return Err(LinalgError::DimensionMismatch(format!(
                    "vector length {} vs ambient {ambient_dim}",
                    v.len()
                )));
            }
            for x in v {
                if x.mode() != mode {
                    return Err(LinalgError::ModeMismatch(mode, x.mode()));
                }
            }
        }
        let count = vectors.len();
        let candidate = SubspaceBasis { mode, ambient_dim, vectors };
        if candidate.basis_matrix().rank() != count {
            return Err(LinalgError::DependentVectors);
        }
        Ok(candidate)
    }

    /// For callers that guarantee independence structurally (kernel bases,
    /// sifted flags).  Debug builds still verify.
    pub(crate) fn new_unchecked(
        mode: ScalarMode,
        ambient_dim: usize,
        vectors: Vec<Vec<Scalar>>,
    ) -> SubspaceBasis {
        let s = SubspaceBasis { mode, ambient_dim, vectors };
        debug_assert_eq!(s.basis_matrix().rank(), s.vectors.len());
        s
    }

    pub fn empty(mode: ScalarMode, ambient_dim: usize) -> SubspaceBasis {
        SubspaceBasis { mode, ambient_dim, vectors: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn mode(&self) -> ScalarMode {
        self.mode
    }

    pub fn vectors(&self) -> &[Vec<Scalar>] {
        &self.vectors
    }

    /// Basis vectors as the columns of an `ambient_dim x dim` matrix.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_cols(self.mode, self.ambient_dim, &self.vectors)
            .expect("basis vectors are ambient-sized")
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coords_of(v).is_some()
    }

    /// Coordinates of `v` in this basis, if `v` lies in the span.
    pub fn coords_of(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient_dim, "ambient dimension mismatch");
        self.basis_matrix().solve_many(&[v.to_vec()]).map(|mut s| s.pop().unwrap())
    }

    pub fn is_subspace_of(&self, other: &SubspaceBasis) -> bool {
        if self.mode != other.mode || self.ambient_dim != other.ambient_dim {
            return false;
        }
        let stacked = other.basis_matrix().hstack(&self.basis_matrix()).unwrap();
        stacked.rank() == other.dim()
    }
}

/// Intersection of two subspaces of the same ambient space.
pub fn intersect(a: &SubspaceBasis, b: &SubspaceBasis) -> Result<SubspaceBasis, LinalgError> {
    if a.mode != b.mode {
        return Err(LinalgError::ModeMismatch(a.mode, b.mode));
    }
    if a.ambient_dim != b.ambient_dim {
        return Err(LinalgError::DimensionMismatch(format!(
            "ambient {} vs {}",
            a.ambient_dim, b.ambient_dim
        )));
    }
    if a.dim() == 0 || b.dim() == 0 {
        return Ok(SubspaceBasis::empty(a.mode, a.ambient_dim));
    }
    // Solve A·x = B·y as the kernel of [A | −B]; the intersection is spanned
    // by the A·x parts, which inherit independence from the kernel basis.
    let am = a.basis_matrix();
    let neg_b_cols: Vec<Vec<Scalar>> =
        b.vectors.iter().map(|v| v.iter().map(|x| -x).collect()).collect();
    let nb = Matrix::from_cols(b.mode, b.ambient_dim, &neg_b_cols)?;
    let stacked = am.hstack(&nb)?;
    let kernel = stacked.kernel_basis();
    let mut vectors = Vec::with_capacity(kernel.dim());
    for k in kernel.vectors() {
        vectors.push(am.mul_vec(&k[..a.dim()]));
    }
    SubspaceBasis::new(a.mode, a.ambient_dim, vectors)
}

/// Basis of the largest member of a nested flag V_0 ⊆ V_1 ⊆ … ⊆ V_{m−1} whose
/// prefixes span each member, with each vector tagged by the first member
/// containing it (0-based).
#[derive(Clone, Debug)]
pub struct FlagBasis {
    pub basis: SubspaceBasis,
    pub entry_index: Vec<usize>,
}

pub fn flag_adapted_basis(flag: &[SubspaceBasis]) -> Result<FlagBasis, LinalgError> {
    let first = flag.first().ok_or(LinalgError::EmptyFlag)?;
    let (mode, ambient) = (first.mode, first.ambient_dim);
    for member in flag {
        if member.mode != mode {
            return Err(LinalgError::ModeMismatch(mode, member.mode));
        }
        if member.ambient_dim != ambient {
            return Err(LinalgError::DimensionMismatch(format!(
                "flag ambient {} vs {ambient}",
                member.ambient_dim
            )));
        }
    }

    let mut sifter = Sifter::new(ambient);
    let mut chosen: Vec<Vec<Scalar>> = Vec::new();
    let mut entry_index = Vec::new();
    for (i, member) in flag.iter().enumerate() {
        for v in member.vectors() {
            if sifter.insert(v) {
                chosen.push(v.clone());
                entry_index.push(i);
            }
        }
        if chosen.len() != member.dim() {
            return Err(LinalgError::NotNested(i));
        }
    }
    Ok(FlagBasis { basis: SubspaceBasis::new_unchecked(mode, ambient, chosen), entry_index })
}

/// Incremental reduced echelon state: rows are normalized at their pivot and
/// zero at every other pivot, so one reduction pass per candidate suffices.
pub(crate) struct Sifter {
    ambient: usize,
    pivots: Vec<usize>,
    rows: Vec<Vec<Scalar>>,
}

impl Sifter {
    pub(crate) fn new(ambient: usize) -> Sifter {
        Sifter { ambient, pivots: Vec::new(), rows: Vec::new() }
    }

    /// Reduce `v` against the state; on a nonzero residue, absorb it and
    /// report `true` (i.e. `v` enlarged the span).
    pub(crate) fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut residue = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if residue[p].is_zero() {
                continue;
            }
            let factor = residue[p].clone();
            for (x, r) in residue.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x - &(r * &factor);
                }
            }
        }
        let Some(pivot) = residue.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = residue[pivot].inv().expect("nonzero pivot");
        for x in residue.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        // back-eliminate the new pivot from the stored rows
        for row in self.rows.iter_mut() {
            if !row[pivot].is_zero() {
                let factor = row[pivot].clone();
                for (x, r) in row.iter_mut().zip(&residue) {
                    if !r.is_zero() {
                        *x = &*x - &(r * &factor);
                    }
                }
            }
        }
        self.pivots.push(pivot);
        self.rows.push(residue);
        true
    }

    /// Current reduced rows, in insertion order.
    pub(crate) fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }
}
