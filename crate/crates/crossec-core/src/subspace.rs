//! Linear subspaces of m×n matrices represented by canonical reduced bases.
//!
//! Matrices are vectorized and brought to reduced row-echelon form over a
//! fixed coordinate order, so two equal subspaces always store identical
//! bases and equality is a plain structural comparison.
//!
//! For 3×3 ambient spaces the coordinate order is permuted to put
//! `(1,1),(1,2),(1,3),(2,3),(3,3)` first, then the remaining positions
//! row-major. Under this order the canonical section bases of the theory are
//! themselves reduced, so recognition can pattern-match on the stored basis
//! directly.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand_core::{RngCore, SeedableRng};

use crate::mat::{Mat, MatError};
use crate::scalar::{Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubspaceError {
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    EmptySpan,
    NonSquareAmbient {
        rows: usize,
        cols: usize,
    },
    Mat(MatError),
}

impl fmt::Display for SubspaceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubspaceError::ShapeMismatch { left, right } => write!(
                f,
                "ambient shape mismatch: {}x{} vs {}x{}",
                left.0, left.1, right.0, right.1
            ),
            SubspaceError::EmptySpan => write!(
                f,
                "empty generating set; request a zero subspace with an explicit shape"
            ),
            SubspaceError::NonSquareAmbient { rows, cols } => {
                write!(f, "transitivity needs a square ambient space, got {rows}x{cols}")
            }
            SubspaceError::Mat(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for SubspaceError {}

impl From<MatError> for SubspaceError {
    fn from(e: MatError) -> Self {
        SubspaceError::Mat(e)
    }
}

/// Pivot-priority coordinate order for an `rows x cols` ambient space,
/// as 0-based (row, col) pairs.
fn coord_order(rows: usize, cols: usize) -> Vec<(usize, usize)> {
    if (rows, cols) == (3, 3) {
        let head = [(0, 0), (0, 1), (0, 2), (1, 2), (2, 2)];
        let mut order: Vec<(usize, usize)> = head.to_vec();
        for i in 0..3 {
            for j in 0..3 {
                if !head.contains(&(i, j)) {
                    order.push((i, j));
                }
            }
        }
        order
    } else {
        let mut order = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                order.push((i, j));
            }
        }
        order
    }
}

fn vectorize(m: &Mat, order: &[(usize, usize)]) -> Vec<Scalar> {
    order.iter().map(|&(i, j)| m.at(i, j).clone()).collect()
}

fn devectorize(v: &[Scalar], order: &[(usize, usize)], rows: usize, cols: usize) -> Mat {
    let mut grid = vec![vec![Scalar::zero(); cols]; rows];
    for (k, &(i, j)) in order.iter().enumerate() {
        grid[i][j] = v[k].clone();
    }
    Mat::from_rows(&grid).expect("dimensions are at least 1x1")
}

/// Reduced row-echelon form in place; returns pivot column indices.
fn rref(rows: &mut Vec<Vec<Scalar>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let inv = rows[r][c].invert().expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in 0..ncols {
                    let delta = &factor * &rows[r][j];
                    rows[i][j] = &rows[i][j] - &delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.retain(|row| row.iter().any(|x| !x.is_zero()));
    pivots
}

/// Outcome of the transitivity search.
///
/// `NotTransitive` carries a verified witness: a nonzero vector whose orbit
/// under the subspace has rank below the ambient dimension. The positive
/// verdict is only "probably": an exact decision would require solving the
/// common zeros of the maximal minors of the orbit matrix, which is out of
/// scope here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransitivityVerdict {
    NotTransitive { witness: Vec<Scalar> },
    ProbablyTransitive { trials: usize },
}

/// A linear subspace of `rows x cols` matrices with a canonical reduced basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    rows: usize,
    cols: usize,
    basis: Vec<Mat>,
    pivots: Vec<usize>,
}

impl Subspace {
    /// The zero subspace of a declared ambient shape.
    pub fn zero(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "dimensions must be at least 1x1");
        Subspace {
            rows,
            cols,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// Canonicalizes the span of the given matrices.
    ///
    /// The empty list is rejected because it does not declare an ambient
    /// shape; use [`Subspace::zero`] for that.
    pub fn span(mats: &[Mat]) -> Result<Self, SubspaceError> {
        let first = mats.first().ok_or(SubspaceError::EmptySpan)?;
        let (rows, cols) = first.shape();
        for m in mats {
            if m.shape() != (rows, cols) {
                return Err(SubspaceError::ShapeMismatch {
                    left: (rows, cols),
                    right: m.shape(),
                });
            }
        }
        let order = coord_order(rows, cols);
        let mut vecs: Vec<Vec<Scalar>> = mats.iter().map(|m| vectorize(m, &order)).collect();
        let pivots = rref(&mut vecs);
        let basis = vecs
            .iter()
            .map(|v| devectorize(v, &order, rows, cols))
            .collect();
        Ok(Subspace {
            rows,
            cols,
            basis,
            pivots,
        })
    }

    pub fn ambient_shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The canonical reduced basis.
    pub fn basis(&self) -> &[Mat] {
        &self.basis
    }

    /// Pivot positions as indices into the fixed coordinate order.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Membership, decided by the residual after eliminating pivots.
    pub fn contains(&self, m: &Mat) -> Result<bool, SubspaceError> {
        if m.shape() != (self.rows, self.cols) {
            return Err(SubspaceError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: m.shape(),
            });
        }
        let order = coord_order(self.rows, self.cols);
        let mut v = vectorize(m, &order);
        for (b, &p) in self.basis.iter().zip(self.pivots.iter()) {
            let coeff = v[p].clone();
            if coeff.is_zero() {
                continue;
            }
            let bv = vectorize(b, &order);
            for (x, bx) in v.iter_mut().zip(bv.iter()) {
                let delta = &coeff * bx;
                *x = &*x - &delta;
            }
        }
        Ok(v.iter().all(Scalar::is_zero))
    }

    /// Subspace equality; canonical bases make this a structural comparison.
    pub fn equals(&self, other: &Subspace) -> Result<bool, SubspaceError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(SubspaceError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(self.basis == other.basis)
    }

    /// The image under deletion of row `k` and column `l` (1-based), applied
    /// elementwise to the basis and re-canonicalized.
    pub fn image_delete_rc(&self, k: usize, l: usize) -> Result<Subspace, SubspaceError> {
        if (self.rows, self.cols) != (3, 3) {
            return Err(SubspaceError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (3, 3),
            });
        }
        // validate indices even for the zero subspace
        Mat::zero(3, 3).delete_rc(k, l)?;
        if self.basis.is_empty() {
            return Ok(Subspace::zero(2, 2));
        }
        let images: Vec<Mat> = self
            .basis
            .iter()
            .map(|b| b.delete_rc(k, l))
            .collect::<Result<_, _>>()?;
        Subspace::span(&images)
    }

    /// Rank of the orbit `[B_1 x ... B_d x]` of a vector under the basis.
    pub fn orbit_rank(&self, x: &[Scalar]) -> Result<usize, SubspaceError> {
        if x.len() != self.cols {
            return Err(SubspaceError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (x.len(), 1),
            });
        }
        if self.basis.is_empty() {
            return Ok(0);
        }
        let mut columns: Vec<Vec<Scalar>> = Vec::with_capacity(self.basis.len());
        for b in &self.basis {
            columns.push(b.apply(x)?);
        }
        let orbit = Mat::from_fn(self.rows, columns.len(), |i, j| columns[j][i].clone());
        Ok(orbit.rank())
    }

    /// Semi-decides transitivity of a subspace of n×n matrices.
    ///
    /// A vector x with orbit rank below n certifies non-transitivity and is
    /// returned as a witness. The search tries the deterministic candidates
    /// e_i and e_i ± e_j first, then `trials` pseudo-random vectors with
    /// rational coordinates of height at most 16 drawn from a stream seeded
    /// by `seed`, so runs are reproducible.
    pub fn transitivity(
        &self,
        trials: usize,
        seed: u64,
    ) -> Result<TransitivityVerdict, SubspaceError> {
        if self.rows != self.cols {
            return Err(SubspaceError::NonSquareAmbient {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut candidates: Vec<Vec<Scalar>> = Vec::new();
        for i in 0..n {
            let mut e = vec![Scalar::zero(); n];
            e[i] = Scalar::one();
            candidates.push(e);
        }
        for i in 0..n {
            for j in (i + 1)..n {
                for sign in [1i64, -1] {
                    let mut v = vec![Scalar::zero(); n];
                    v[i] = Scalar::one();
                    v[j] = Scalar::from_int(sign);
                    candidates.push(v);
                }
            }
        }
        for x in &candidates {
            if self.orbit_rank(x)? < n {
                return Ok(TransitivityVerdict::NotTransitive { witness: x.clone() });
            }
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..trials {
            let x = random_vector(&mut rng, n);
            if self.orbit_rank(&x)? < n {
                return Ok(TransitivityVerdict::NotTransitive { witness: x });
            }
        }
        Ok(TransitivityVerdict::ProbablyTransitive { trials })
    }
}

/// Height bound for the random rational coordinates of witness candidates.
const HEIGHT: u64 = 16;

fn random_rational(rng: &mut impl RngCore) -> Rational {
    let numer = (rng.next_u64() % (2 * HEIGHT + 1)) as i64 - HEIGHT as i64;
    let denom = (rng.next_u64() % HEIGHT) as i64 + 1;
    Rational::from_ints(numer, denom).expect("denominator is positive")
}

fn random_vector(rng: &mut impl RngCore, n: usize) -> Vec<Scalar> {
    loop {
        let v: Vec<Scalar> = (0..n)
            .map(|_| Scalar::new(random_rational(rng), random_rational(rng)))
            .collect();
        if v.iter().any(|s| !s.is_zero()) {
            return v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize, j: usize) -> Mat {
        Mat::from_fn(3, 3, |a, b| {
            if (a, b) == (i - 1, j - 1) {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        })
    }

    #[test]
    fn span_drops_dependent_generators() {
        let s = Subspace::span(&[e(1, 1), e(1, 1).scale(&Scalar::from_int(2))]).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis()[0], e(1, 1));
    }

    #[test]
    fn empty_span_needs_explicit_shape() {
        assert_eq!(Subspace::span(&[]), Err(SubspaceError::EmptySpan));
        let z = Subspace::zero(3, 3);
        assert_eq!(z.dim(), 0);
        assert!(z.contains(&Mat::zero(3, 3)).unwrap());
    }

    #[test]
    fn contains_examples() {
        let s = Subspace::span(&[e(1, 1), e(1, 2)]).unwrap();
        let mut m = Mat::zero(3, 3);
        m = m.add(&e(1, 1).scale(&Scalar::from_int(3))).unwrap();
        m = m.add(&e(1, 2).scale(&Scalar::from_int(-4))).unwrap();
        assert!(s.contains(&m).unwrap());
        assert!(!s.contains(&e(2, 1)).unwrap());
        assert!(s.contains(&Mat::zero(3, 3)).unwrap());
        assert!(s.contains(&Mat::zero(2, 2)).is_err());
    }

    #[test]
    fn equals_is_basis_independent() {
        let a = Subspace::span(&[e(1, 1), e(1, 2)]).unwrap();
        let sum = e(1, 1).add(&e(1, 2)).unwrap();
        let diff = e(1, 1).sub(&e(1, 2)).unwrap();
        let b = Subspace::span(&[sum, diff]).unwrap();
        assert!(a.equals(&b).unwrap());
        let c = Subspace::span(&[e(1, 1)]).unwrap();
        assert!(!a.equals(&c).unwrap());
        assert!(a.equals(&a).unwrap());
    }

    #[test]
    fn image_of_zero_corner_is_zero_subspace() {
        // a matrix supported on column 3 only has zero upper-left 2x2 corner
        let q1 = Mat::from_ints(&[&[0, 0, 1], &[0, 0, 2], &[0, 0, 3]]);
        let s = Subspace::span(&[q1]).unwrap();
        let img = s.image_delete_rc(3, 3).unwrap();
        assert_eq!(img.dim(), 0);
        assert!(img.equals(&Subspace::zero(2, 2)).unwrap());
    }

    #[test]
    fn row_subspace_is_not_transitive() {
        let s = Subspace::span(&[e(1, 1), e(1, 2), e(1, 3)]).unwrap();
        match s.transitivity(100, 1).unwrap() {
            TransitivityVerdict::NotTransitive { witness } => {
                // first deterministic candidate e_1 already works
                assert_eq!(witness, vec![Scalar::one(), Scalar::zero(), Scalar::zero()]);
                assert!(s.orbit_rank(&witness).unwrap() < 3);
            }
            v => panic!("expected a witness, got {v:?}"),
        }
    }

    #[test]
    fn full_algebra_is_transitive() {
        let gens: Vec<Mat> = (1..=3)
            .flat_map(|i| (1..=3).map(move |j| e(i, j)))
            .collect();
        let s = Subspace::span(&gens).unwrap();
        assert_eq!(s.dim(), 9);
        assert_eq!(
            s.transitivity(50, 7).unwrap(),
            TransitivityVerdict::ProbablyTransitive { trials: 50 }
        );
    }

    #[test]
    fn transitivity_requires_square_ambient() {
        let s = Subspace::zero(2, 3);
        assert!(matches!(
            s.transitivity(1, 0),
            Err(SubspaceError::NonSquareAmbient { .. })
        ));
    }

    #[test]
    fn pivot_order_puts_top_row_first() {
        // for 3x3 the first five coordinates are (1,1),(1,2),(1,3),(2,3),(3,3)
        let order = coord_order(3, 3);
        assert_eq!(
            &order[..5],
            &[(0, 0), (0, 1), (0, 2), (1, 2), (2, 2)]
        );
        assert_eq!(order.len(), 9);
    }
}
