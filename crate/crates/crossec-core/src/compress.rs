//! Index-set compressions of finite truncations and the matricial windows.
//!
//! A compression onto a set of basis indices is principal-submatrix
//! extraction, so both compression lemmas become exact, executable identities
//! on N×N truncations. Index sets are 1-based to match the basis numbering
//! e_1, e_2, ...

use alloc::vec::Vec;
use core::fmt;

use crate::mat::{Mat, MatError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompressError {
    NotSquare { rows: usize, cols: usize },
    BadIndexSet,
    IndexOutOfRange { index: usize, bound: usize },
    NotNested,
    WindowExceedsTruncation { start: usize, width: usize, size: usize },
    Mat(MatError),
}

impl fmt::Display for CompressError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompressError::NotSquare { rows, cols } => {
                write!(f, "compression needs a square truncation, got {rows}x{cols}")
            }
            CompressError::BadIndexSet => {
                write!(f, "index set must be nonempty and strictly increasing")
            }
            CompressError::IndexOutOfRange { index, bound } => {
                write!(f, "index {index} out of range 1..={bound}")
            }
            CompressError::NotNested => write!(f, "inner index set is not a subset of the outer"),
            CompressError::WindowExceedsTruncation { start, width, size } => write!(
                f,
                "window of width {width} at r={start} exceeds the {size}x{size} truncation"
            ),
            CompressError::Mat(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for CompressError {}

impl From<MatError> for CompressError {
    fn from(e: MatError) -> Self {
        CompressError::Mat(e)
    }
}

/// A width-2 or width-3 window of consecutive basis indices starting at `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub start: usize,
    pub width: usize,
}

impl Window {
    pub fn new(start: usize, width: usize) -> Result<Self, CompressError> {
        if start < 1 || !(width == 2 || width == 3) {
            return Err(CompressError::BadIndexSet);
        }
        Ok(Window { start, width })
    }

    pub fn indices(&self) -> Vec<usize> {
        (self.start..self.start + self.width).collect()
    }

    pub fn apply(&self, x: &Mat) -> Result<Mat, CompressError> {
        if self.start + self.width - 1 > x.rows() {
            return Err(CompressError::WindowExceedsTruncation {
                start: self.start,
                width: self.width,
                size: x.rows(),
            });
        }
        compress(x, &self.indices())
    }
}

fn check_index_set(idx: &[usize], bound: usize) -> Result<(), CompressError> {
    if idx.is_empty() {
        return Err(CompressError::BadIndexSet);
    }
    for w in idx.windows(2) {
        if w[0] >= w[1] {
            return Err(CompressError::BadIndexSet);
        }
    }
    for &i in idx {
        if i < 1 || i > bound {
            return Err(CompressError::IndexOutOfRange {
                index: i,
                bound,
            });
        }
    }
    Ok(())
}

/// The principal submatrix of `x` on a strictly increasing 1-based index set.
pub fn compress(x: &Mat, idx: &[usize]) -> Result<Mat, CompressError> {
    if !x.is_square() {
        return Err(CompressError::NotSquare {
            rows: x.rows(),
            cols: x.cols(),
        });
    }
    check_index_set(idx, x.rows())?;
    Ok(Mat::from_fn(idx.len(), idx.len(), |i, j| {
        x.at(idx[i] - 1, idx[j] - 1).clone()
    }))
}

/// The 3x3 window on indices {r, r+1, r+2}.
pub fn window3(x: &Mat, r: usize) -> Result<Mat, CompressError> {
    Window::new(r, 3)?.apply(x)
}

/// The 2x2 window on indices {r, r+1}.
pub fn window2(x: &Mat, r: usize) -> Result<Mat, CompressError> {
    Window::new(r, 2)?.apply(x)
}

/// The three-way identity linking adjacent windows: deleting the first
/// row/column of the window at r, the 2x2 window at r+1, and deleting the
/// last row/column of the window at r+1 all agree.
pub fn check_partial_identity(x: &Mat, r: usize) -> Result<bool, CompressError> {
    if !x.is_square() {
        return Err(CompressError::NotSquare {
            rows: x.rows(),
            cols: x.cols(),
        });
    }
    if r < 1 || r + 3 > x.rows() {
        return Err(CompressError::WindowExceedsTruncation {
            start: r,
            width: 3,
            size: x.rows(),
        });
    }
    let a = window3(x, r)?.delete_rc(1, 1)?;
    let b = window2(x, r + 1)?;
    let c = window3(x, r + 1)?.delete_rc(3, 3)?;
    Ok(a == b && b == c)
}

/// Compressing to E and then to F ⊆ E equals compressing directly to F.
pub fn check_composition_identity(
    x: &Mat,
    outer: &[usize],
    inner: &[usize],
) -> Result<bool, CompressError> {
    if !x.is_square() {
        return Err(CompressError::NotSquare {
            rows: x.rows(),
            cols: x.cols(),
        });
    }
    check_index_set(outer, x.rows())?;
    check_index_set(inner, x.rows())?;
    // positions of the inner set within the outer one (1-based again)
    let mut positions = Vec::with_capacity(inner.len());
    for &i in inner {
        match outer.iter().position(|&o| o == i) {
            Some(p) => positions.push(p + 1),
            None => return Err(CompressError::NotNested),
        }
    }
    let via = compress(&compress(x, outer)?, &positions)?;
    let direct = compress(x, inner)?;
    Ok(via == direct)
}
