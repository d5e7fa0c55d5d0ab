use super::subspace::SubspaceBasis;
use super::{LinalgError, Scalar, ScalarMode};

/// Dense matrix over one [`ScalarMode`]; the workhorse behind every rank,
/// kernel, and coordinate computation in the crate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    mode: ScalarMode,
    data: Vec<Scalar>, // row-major
}

impl Matrix {
    pub fn zero(mode: ScalarMode, rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, mode, data: vec![mode.zero(); rows * cols] }
    }

    pub fn identity(mode: ScalarMode, n: usize) -> Matrix {
        let mut m = Matrix::zero(mode, n, n);
        for i in 0..n {
            m.set(i, i, mode.one());
        }
        m
    }

    /// Build from row vectors, enforcing rectangularity and a single scalar
    /// mode across all entries.
    pub fn from_rows(mode: ScalarMode, rows: Vec<Vec<Scalar>>) -> Result<Matrix, LinalgError> {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * ncols);
        let nrows = rows.len();
        for row in &rows {
            if row.len() != ncols {
                return Err(LinalgError::DimensionMismatch(format!(
                    "ragged rows: {} vs {ncols}",
                    row.len()
                )));
            }
            for x in row {
                if x.mode() != mode {
                    return Err(LinalgError::ModeMismatch(mode, x.mode()));
                }
            }
            data.extend(row.iter().cloned());
        }
        Ok(Matrix { rows: nrows, cols: ncols, mode, data })
    }

    /// Build from column vectors (each of length `ambient`).
    pub fn from_cols(
        mode: ScalarMode,
        ambient: usize,
        cols: &[Vec<Scalar>],
    ) -> Result<Matrix, LinalgError> {
        let mut m = Matrix::zero(mode, ambient, cols.len());
        for (j, col) in cols.iter().enumerate() {
            if col.len() != ambient {
                return Err(LinalgError::DimensionMismatch(format!(
                    "column length {} vs ambient {ambient}",
                    col.len()
                )));
            }
            for (i, x) in col.iter().enumerate() {
                if x.mode() != mode {
                    return Err(LinalgError::ModeMismatch(mode, x.mode()));
                }
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mode(&self) -> ScalarMode {
        self.mode
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert_eq!(v.mode(), self.mode, "entry mode must match the matrix");
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    /// `[self | other]` side by side.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.mode != other.mode {
            return Err(LinalgError::ModeMismatch(self.mode, other.mode));
        }
        if self.rows != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "hstack rows {} vs {}",
                self.rows, other.rows
            )));
        }
        let mut m = Matrix::zero(self.mode, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                m.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        Ok(m)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.mode != other.mode {
            return Err(LinalgError::ModeMismatch(self.mode, other.mode));
        }
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "product of {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut m = Matrix::zero(self.mode, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let lhs = self.get(i, k);
                if lhs.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let rhs = other.get(k, j);
                    if rhs.is_zero() {
                        continue;
                    }
                    let v = &(lhs * rhs) + m.get(i, j);
                    m.set(i, j, v);
                }
            }
        }
        Ok(m)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.mode.zero();
                for (j, x) in v.iter().enumerate() {
                    if !x.is_zero() && !self.get(i, j).is_zero() {
                        acc = &acc + &(self.get(i, j) * x);
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form with deterministic first-nonzero pivoting.
    /// Returns the reduced matrix and the pivot columns in order.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for c in 0..m.cols {
            if next_row >= m.rows {
                break;
            }
            let Some(p) = (next_row..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            if p != next_row {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, next_row * m.cols + j);
                }
            }
            let inv = m.get(next_row, c).inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.get(next_row, j) * &inv;
                m.set(next_row, j, v);
            }
            for r in 0..m.rows {
                if r != next_row && !m.get(r, c).is_zero() {
                    let factor = m.get(r, c).clone();
                    for j in c..m.cols {
                        let v = m.get(r, j) - &(m.get(next_row, j) * &factor);
                        m.set(r, j, v);
                    }
                }
            }
            pivots.push(c);
            next_row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, read off the reduced echelon form with free
    /// variables set to 1 in column order — fully deterministic.
    pub fn kernel_basis(&self) -> SubspaceBasis {
        let (r, pivots) = self.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = Some(row);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec = vec![self.mode.zero(); self.cols];
            vec[free] = self.mode.one();
            for (row, &col) in pivots.iter().enumerate() {
                vec[col] = -(r.get(row, free));
            }
            basis.push(vec);
        }
        SubspaceBasis::new_unchecked(self.mode, self.cols, basis)
    }

    /// Solve `self * x = t` for each target column; `None` if any system is
    /// inconsistent.  Free variables are set to zero, so when the columns of
    /// `self` are independent the solution is the unique coordinate vector.
    pub fn solve_many(&self, targets: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
        let t = Matrix::from_cols(self.mode, self.rows, targets).expect("target shape");
        let aug = self.hstack(&t).expect("same row count");
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut out = Vec::with_capacity(targets.len());
        for j in 0..targets.len() {
            let mut x = vec![self.mode.zero(); self.cols];
            for (row, &col) in pivots.iter().enumerate() {
                x[col] = r.get(row, self.cols + j).clone();
            }
            out.push(x);
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qm(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            ScalarMode::Rational,
            rows.iter()
                .map(|r| r.iter().map(|&x| ScalarMode::Rational.from_integer(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rank_basics() {
        assert_eq!(Matrix::identity(ScalarMode::Rational, 3).rank(), 3);
        assert_eq!(Matrix::zero(ScalarMode::Rational, 2, 5).rank(), 0);
        assert_eq!(qm(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(Matrix::zero(ScalarMode::Rational, 0, 4).rank(), 0);
        assert_eq!(Matrix::zero(ScalarMode::Rational, 4, 0).rank(), 0);
    }

    #[test]
    fn rank_over_f2() {
        let m2 = ScalarMode::prime(2).unwrap();
        let m = Matrix::from_rows(
            m2,
            vec![
                vec![m2.from_integer(1), m2.from_integer(1)],
                vec![m2.from_integer(1), m2.from_integer(1)],
            ],
        )
        .unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_of_zero_and_full_rank() {
        let z = Matrix::zero(ScalarMode::Rational, 3, 4);
        assert_eq!(z.kernel_basis().dim(), 4);
        assert_eq!(Matrix::identity(ScalarMode::Rational, 3).kernel_basis().dim(), 0);
    }

    #[test]
    fn mixed_modes_rejected() {
        let bad = Matrix::from_rows(
            ScalarMode::Rational,
            vec![vec![ScalarMode::prime(3).unwrap().from_integer(1)]],
        );
        assert!(matches!(bad, Err(LinalgError::ModeMismatch(_, _))));
    }

    #[test]
    fn solve_reads_coordinates() {
        let basis = qm(&[&[1, 0], &[1, 1], &[0, 2]]);
        // target = 2*b0 - 1*b1
        let target = vec![
            ScalarMode::Rational.from_integer(2),
            ScalarMode::Rational.from_integer(1),
            ScalarMode::Rational.from_integer(-2),
        ];
        let sol = basis.solve_many(&[target]).unwrap();
        assert_eq!(sol[0][0], ScalarMode::Rational.from_integer(2));
        assert_eq!(sol[0][1], ScalarMode::Rational.from_integer(-1));
        // inconsistent system
        let bad = vec![
            ScalarMode::Rational.from_integer(0),
            ScalarMode::Rational.from_integer(0),
            ScalarMode::Rational.from_integer(1),
        ];
        assert!(qm(&[&[1, 0], &[0, 1], &[0, 0]]).solve_many(&[bad]).is_none());
    }
}
