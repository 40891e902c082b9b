//! Small dense exact matrices and the kernels the cross-section identities
//! need: Schur product, row/column deletion, determinant, rank, product.
//!
//! Rank and determinant use fraction-free (Bareiss-style) elimination with a
//! deterministic pivot rule — first nonzero entry in column order — so
//! canonical outputs are reproducible. Shapes are validated eagerly; there is
//! no implicit broadcasting.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatError {
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    NotSquare {
        rows: usize,
        cols: usize,
    },
    IndexOutOfRange {
        index: usize,
        bound: usize,
    },
    BadDimensions,
    EmptyDiagonal,
}

impl fmt::Display for MatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatError::ShapeMismatch { left, right } => write!(
                f,
                "shape mismatch: {}x{} vs {}x{}",
                left.0, left.1, right.0, right.1
            ),
            MatError::NotSquare { rows, cols } => {
                write!(f, "matrix is not square: {rows}x{cols}")
            }
            MatError::IndexOutOfRange { index, bound } => {
                write!(f, "index {index} out of range 1..={bound}")
            }
            MatError::BadDimensions => write!(f, "matrix dimensions must be at least 1x1"),
            MatError::EmptyDiagonal => write!(f, "diagonal values must be nonempty"),
        }
    }
}

impl core::error::Error for MatError {}

/// A dense `rows x cols` matrix of exact scalars, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Mat {
    /// Builds a matrix from row slices; all rows must have equal nonzero length.
    pub fn from_rows(rows: &[Vec<Scalar>]) -> Result<Self, MatError> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(MatError::BadDimensions);
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(MatError::BadDimensions);
        }
        Ok(Mat {
            rows: rows.len(),
            cols,
            entries: rows.iter().flat_map(|r| r.iter().cloned()).collect(),
        })
    }

    /// Builds a matrix entry by entry from a 0-based closure.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        assert!(rows >= 1 && cols >= 1, "dimensions must be at least 1x1");
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Mat {
            rows,
            cols,
            entries,
        }
    }

    /// Integer literal helper, mostly for tests: `Mat::from_ints(&[&[1,2],&[3,4]])`.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        assert!(!rows.is_empty() && !rows[0].is_empty());
        Mat::from_fn(rows.len(), rows[0].len(), |i, j| {
            Scalar::from_int(rows[i][j])
        })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat::from_fn(rows, cols, |_, _| Scalar::zero())
    }

    pub fn identity(n: usize) -> Self {
        Mat::from_fn(n, n, |i, j| {
            if i == j {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        })
    }

    pub fn diag(values: &[Scalar]) -> Result<Self, MatError> {
        if values.is_empty() {
            return Err(MatError::EmptyDiagonal);
        }
        Ok(Mat::from_fn(values.len(), values.len(), |i, j| {
            if i == j {
                values[i].clone()
            } else {
                Scalar::zero()
            }
        }))
    }

    /// The 3x3 Jordan cell with ones at (2,1) and (3,2).
    pub fn jordan3() -> Self {
        Mat::from_ints(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// 0-based entry access.
    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    fn at_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    fn same_shape(&self, other: &Mat) -> Result<(), MatError> {
        if self.shape() != other.shape() {
            return Err(MatError::ShapeMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Mat) -> Result<Mat, MatError> {
        self.same_shape(other)?;
        Ok(Mat::from_fn(self.rows, self.cols, |i, j| {
            self.at(i, j) + other.at(i, j)
        }))
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat, MatError> {
        self.same_shape(other)?;
        Ok(Mat::from_fn(self.rows, self.cols, |i, j| {
            self.at(i, j) - other.at(i, j)
        }))
    }

    pub fn scale(&self, factor: &Scalar) -> Mat {
        Mat::from_fn(self.rows, self.cols, |i, j| self.at(i, j) * factor)
    }

    pub fn neg(&self) -> Mat {
        Mat::from_fn(self.rows, self.cols, |i, j| -self.at(i, j))
    }

    /// Entrywise (Schur/Hadamard) product of equal-shaped matrices.
    pub fn schur(&self, other: &Mat) -> Result<Mat, MatError> {
        self.same_shape(other)?;
        Ok(Mat::from_fn(self.rows, self.cols, |i, j| {
            self.at(i, j) * other.at(i, j)
        }))
    }

    /// Exact matrix product.
    pub fn product(&self, other: &Mat) -> Result<Mat, MatError> {
        if self.cols != other.rows {
            return Err(MatError::ShapeMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(Mat::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Scalar::zero();
            for k in 0..self.cols {
                acc = &acc + &(self.at(i, k) * other.at(k, j));
            }
            acc
        }))
    }

    /// Deletes the k-th row and l-th column of a 3x3 matrix (1-based k, l),
    /// yielding the 2x2 partial matrix.
    pub fn delete_rc(&self, k: usize, l: usize) -> Result<Mat, MatError> {
        if self.shape() != (3, 3) {
            return Err(MatError::ShapeMismatch {
                left: self.shape(),
                right: (3, 3),
            });
        }
        if !(1..=3).contains(&k) {
            return Err(MatError::IndexOutOfRange { index: k, bound: 3 });
        }
        if !(1..=3).contains(&l) {
            return Err(MatError::IndexOutOfRange { index: l, bound: 3 });
        }
        let keep_rows: Vec<usize> = (0..3).filter(|&i| i != k - 1).collect();
        let keep_cols: Vec<usize> = (0..3).filter(|&j| j != l - 1).collect();
        Ok(Mat::from_fn(2, 2, |i, j| {
            self.at(keep_rows[i], keep_cols[j]).clone()
        }))
    }

    /// Fraction-free elimination. Returns (rank, det-or-zero-if-deficient,
    /// sign-corrected). The determinant slot is only meaningful for square
    /// input. Pivoting is the first nonzero entry scanning columns left to
    /// right, rows top to bottom.
    fn bareiss(&self) -> (usize, Scalar) {
        let mut m = self.clone();
        let mut rank = 0usize;
        let mut prev = Scalar::one();
        let mut sign_flip = false;
        let mut pivot_row = 0usize;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(found) = (pivot_row..m.rows).find(|&i| !m.at(i, col).is_zero()) else {
                continue;
            };
            if found != pivot_row {
                for j in 0..m.cols {
                    let a = m.at(found, j).clone();
                    let b = m.at(pivot_row, j).clone();
                    *m.at_mut(found, j) = b;
                    *m.at_mut(pivot_row, j) = a;
                }
                sign_flip = !sign_flip;
            }
            let pivot = m.at(pivot_row, col).clone();
            for i in (pivot_row + 1)..m.rows {
                for j in (col + 1)..m.cols {
                    let num = &(&pivot * m.at(i, j)) - &(m.at(i, col) * m.at(pivot_row, j));
                    // Exact by the Bareiss identity: prev divides num.
                    *m.at_mut(i, j) = num.div(&prev).expect("previous pivot is nonzero");
                }
                *m.at_mut(i, col) = Scalar::zero();
            }
            prev = pivot;
            rank += 1;
            pivot_row += 1;
        }
        let det = if self.is_square() && rank == self.rows {
            if sign_flip {
                -&prev
            } else {
                prev
            }
        } else {
            Scalar::zero()
        };
        (rank, det)
    }

    /// Exact rank.
    pub fn rank(&self) -> usize {
        self.bareiss().0
    }

    /// Exact determinant of a square matrix.
    pub fn det(&self) -> Result<Scalar, MatError> {
        if !self.is_square() {
            return Err(MatError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.bareiss().1)
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>, MatError> {
        if v.len() != self.cols {
            return Err(MatError::ShapeMismatch {
                left: self.shape(),
                right: (v.len(), 1),
            });
        }
        let mut out = vec![Scalar::zero(); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[i] = &out[i] + &(self.at(i, j) * &v[j]);
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schur_examples() {
        let a = Mat::from_ints(&[&[1, 2], &[3, 4]]);
        let b = Mat::from_ints(&[&[5, 6], &[7, 8]]);
        assert_eq!(
            a.schur(&b).unwrap(),
            Mat::from_ints(&[&[5, 12], &[21, 32]])
        );
        let ones = Mat::from_ints(&[&[1, 1], &[1, 1]]);
        assert_eq!(a.schur(&ones).unwrap(), a);
        let c = Mat::zero(3, 3);
        assert!(matches!(a.schur(&c), Err(MatError::ShapeMismatch { .. })));
    }

    #[test]
    fn delete_rc_definition() {
        let x = Mat::from_ints(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(x.delete_rc(1, 1).unwrap(), Mat::from_ints(&[&[5, 6], &[8, 9]]));
        assert_eq!(x.delete_rc(3, 3).unwrap(), Mat::from_ints(&[&[1, 2], &[4, 5]]));
        assert_eq!(x.delete_rc(2, 1).unwrap(), Mat::from_ints(&[&[2, 3], &[8, 9]]));
        assert!(x.delete_rc(0, 1).is_err());
        assert!(x.delete_rc(1, 4).is_err());
    }

    #[test]
    fn det_examples() {
        assert_eq!(Mat::jordan3().det().unwrap(), Scalar::zero());
        let m = Mat::from_ints(&[&[2, 3], &[5, 7]]);
        assert_eq!(m.det().unwrap(), Scalar::from_int(-1));
        assert_eq!(Mat::identity(3).det().unwrap(), Scalar::one());
        assert!(Mat::zero(2, 3).det().is_err());
    }

    #[test]
    fn det_needs_row_swap() {
        let m = Mat::from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(m.det().unwrap(), Scalar::from_int(-1));
        let m4 = Mat::from_ints(&[
            &[0, 0, 1, 2],
            &[1, 2, 3, 4],
            &[0, 1, 1, 1],
            &[2, 3, 1, 0],
        ]);
        // value checked against an independent symbolic computation
        assert_eq!(m4.det().unwrap(), Scalar::from_int(1));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Mat::jordan3().rank(), 2);
        let arith = Mat::from_ints(&[&[2, 3, 4], &[3, 4, 5], &[4, 5, 6]]);
        assert_eq!(arith.rank(), 2);
        assert_eq!(Mat::zero(3, 3).rank(), 0);
        assert_eq!(Mat::identity(4).rank(), 4);
    }

    #[test]
    fn product_examples() {
        let j = Mat::jordan3();
        let jj = j.product(&j).unwrap();
        let mut expect = Mat::zero(3, 3);
        assert_eq!(jj.at(2, 0), &Scalar::one());
        *expect.at_mut(2, 0) = Scalar::one();
        assert_eq!(jj, expect);

        let d = Mat::diag(&[
            Scalar::from_int(1),
            Scalar::from_int(2),
            Scalar::from_int(3),
        ])
        .unwrap();
        assert_eq!(d.product(&Mat::identity(3)).unwrap(), d);

        let col = Mat::from_ints(&[&[1], &[1], &[1]]);
        assert!(col.product(&d).is_err());
    }

    #[test]
    fn special_matrices() {
        assert_eq!(
            Mat::jordan3(),
            Mat::from_ints(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]])
        );
        assert_eq!(Mat::identity(2), Mat::from_ints(&[&[1, 0], &[0, 1]]));
        assert!(Mat::diag(&[]).is_err());
    }

    #[test]
    fn det_with_rationals() {
        use crate::scalar::Rational;
        let half = Scalar::from_rational(Rational::from_ints(1, 2).unwrap());
        let third = Scalar::from_rational(Rational::from_ints(1, 3).unwrap());
        let d = Mat::diag(&[Scalar::one(), half.clone(), third.clone()]).unwrap();
        assert_eq!(d.det().unwrap(), &half * &third);
        assert_eq!(d.rank(), 3);
    }
}
