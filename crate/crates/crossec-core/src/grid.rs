//! Grid certificates for polynomial identities.
//!
//! The determinant checks in [`crate::general`] and [`crate::shift`] are
//! polynomials of per-variable degree at most 2 in the five coordinates, so
//! vanishing on the full {0,1,2}^5 grid proves identical vanishing.

use alloc::vec::Vec;

use crate::scalar::Scalar;

/// Coordinates of a section element: z1, z2 pick the two column generators,
/// w1, w2, w3 are the coefficients of the three Q-generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordVector {
    pub z1: Scalar,
    pub z2: Scalar,
    pub w1: Scalar,
    pub w2: Scalar,
    pub w3: Scalar,
}

impl CoordVector {
    pub fn new(z1: Scalar, z2: Scalar, w1: Scalar, w2: Scalar, w3: Scalar) -> Self {
        CoordVector { z1, z2, w1, w2, w3 }
    }

    pub fn zero() -> Self {
        CoordVector::new(
            Scalar::zero(),
            Scalar::zero(),
            Scalar::zero(),
            Scalar::zero(),
            Scalar::zero(),
        )
    }

    pub fn from_ints(z1: i64, z2: i64, w1: i64, w2: i64, w3: i64) -> Self {
        CoordVector::new(
            Scalar::from_int(z1),
            Scalar::from_int(z2),
            Scalar::from_int(w1),
            Scalar::from_int(w2),
            Scalar::from_int(w3),
        )
    }
}

/// Enumerates the full {0,1,2}^5 certificate grid in lexicographic order.
pub fn certificate_grid() -> Vec<CoordVector> {
    let mut points = Vec::with_capacity(243);
    for z1 in 0..3 {
        for z2 in 0..3 {
            for w1 in 0..3 {
                for w2 in 0..3 {
                    for w3 in 0..3 {
                        points.push(CoordVector::from_ints(z1, z2, w1, w2, w3));
                    }
                }
            }
        }
    }
    points
}

/// A grid point where the checked determinant came out nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridWitness {
    pub coords: CoordVector,
    pub det: Scalar,
}

/// Result of a grid certificate: either the polynomial vanished on the whole
/// grid (hence identically), or a concrete witness is reported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GridOutcome {
    Holds,
    Fails(GridWitness),
}

impl GridOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, GridOutcome::Holds)
    }
}

/// Runs `det_at` over the grid; the first nonzero value becomes the witness.
pub fn grid_certificate(mut det_at: impl FnMut(&CoordVector) -> Scalar) -> GridOutcome {
    for coords in certificate_grid() {
        let det = det_at(&coords);
        if !det.is_zero() {
            return GridOutcome::Fails(GridWitness { coords, det });
        }
    }
    GridOutcome::Holds
}
