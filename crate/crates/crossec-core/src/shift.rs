//! Cross-sections for the diagonal-versus-Jordan-cell setting: the three
//! canonical five-dimensional variants (T1, T2, Strong), the rank-rule grid
//! certificate, adjacency matching of neighboring sections, the matching
//! constraints, and strongification of a gated T2 form.
//!
//! One systematic fix is applied to the T1/T2 second generator: its (1,1)
//! entry is 0, not 1. Every proof-level general element treats the (1,1) and
//! (1,2) coordinates as independent, and the strong form prints the same
//! generator with a zero there, so the printed 1 in the T1/T2 display is a
//! typo and the zero is used for all three variants.

use core::fmt;

use alloc::vec::Vec;

use crate::grid::{grid_certificate, CoordVector, GridOutcome};
use crate::mat::{Mat, MatError};
use crate::scalar::Scalar;
use crate::subspace::{Subspace, SubspaceError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShiftError {
    InadmissibleSequence(&'static str),
    OutOfRange { r: usize, len: usize },
    ZeroParameter(&'static str),
    NotDistinct,
    BadShape,
    /// The operation needs a T2 (or Strong) form; T1 is excluded.
    VariantExcluded,
    /// A strongification gate failed; the name says which one.
    GateViolated(&'static str),
    Mat(MatError),
    Subspace(SubspaceError),
}

impl fmt::Display for ShiftError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShiftError::InadmissibleSequence(msg) => write!(f, "inadmissible sequence: {msg}"),
            ShiftError::OutOfRange { r, len } => write!(f, "index r={r} out of range for length {len}"),
            ShiftError::ZeroParameter(name) => write!(f, "{name} must be nonzero"),
            ShiftError::NotDistinct => write!(f, "diagonal values must be pairwise distinct"),
            ShiftError::BadShape => write!(f, "unexpected ambient shape"),
            ShiftError::VariantExcluded => write!(f, "type T1 sections are excluded here"),
            ShiftError::GateViolated(name) => write!(f, "constraint {name} does not hold"),
            ShiftError::Mat(e) => write!(f, "{e}"),
            ShiftError::Subspace(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ShiftError {}

impl From<MatError> for ShiftError {
    fn from(e: MatError) -> Self {
        ShiftError::Mat(e)
    }
}

impl From<SubspaceError> for ShiftError {
    fn from(e: SubspaceError) -> Self {
        ShiftError::Subspace(e)
    }
}

/// Diagonal data (b0, {b_k}): the b_k are nonzero and pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftSequence {
    b0: Scalar,
    b: Vec<Scalar>,
}

impl ShiftSequence {
    pub fn new(b0: Scalar, b: Vec<Scalar>) -> Result<Self, ShiftError> {
        if b.is_empty() {
            return Err(ShiftError::InadmissibleSequence("empty sequence"));
        }
        for v in &b {
            if v.is_zero() {
                return Err(ShiftError::InadmissibleSequence("b_k must be nonzero"));
            }
        }
        for (i, a) in b.iter().enumerate() {
            for c in b.iter().skip(i + 1) {
                if a == c {
                    return Err(ShiftError::InadmissibleSequence(
                        "b_k must be pairwise distinct",
                    ));
                }
            }
        }
        Ok(ShiftSequence { b0, b })
    }

    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }

    pub fn b0(&self) -> &Scalar {
        &self.b0
    }

    pub fn b_list(&self) -> &[Scalar] {
        &self.b
    }

    /// b_k, 1-based.
    pub fn b(&self, k: usize) -> &Scalar {
        &self.b[k - 1]
    }

    /// The diagonal (b_r, b_{r+1}, b_{r+2}).
    pub fn delta(&self, r: usize) -> Result<Delta, ShiftError> {
        if r < 1 || r + 2 > self.len() {
            return Err(ShiftError::OutOfRange { r, len: self.len() });
        }
        Delta::new(
            self.b(r).clone(),
            self.b(r + 1).clone(),
            self.b(r + 2).clone(),
        )
    }
}

/// A 3x3 diagonal diag(b1, b2, b3) with distinct nonzero entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Delta {
    pub b1: Scalar,
    pub b2: Scalar,
    pub b3: Scalar,
}

impl Delta {
    pub fn new(b1: Scalar, b2: Scalar, b3: Scalar) -> Result<Self, ShiftError> {
        for (v, name) in [(&b1, "b1"), (&b2, "b2"), (&b3, "b3")] {
            if v.is_zero() {
                return Err(ShiftError::ZeroParameter(name));
            }
        }
        if b1 == b2 || b1 == b3 || b2 == b3 {
            return Err(ShiftError::NotDistinct);
        }
        Ok(Delta { b1, b2, b3 })
    }

    pub fn from_ints(b1: i64, b2: i64, b3: i64) -> Result<Self, ShiftError> {
        Delta::new(
            Scalar::from_int(b1),
            Scalar::from_int(b2),
            Scalar::from_int(b3),
        )
    }

    pub fn to_mat(&self) -> Mat {
        Mat::diag(&[self.b1.clone(), self.b2.clone(), self.b3.clone()])
            .expect("three diagonal values")
    }

    /// The reciprocal differences (1/b3 - 1/b2, 1/b3 - 1/b1, 1/b2 - 1/b1);
    /// all three are nonzero because the b's are distinct.
    pub fn b_delta(&self) -> (Scalar, Scalar, Scalar) {
        let i1 = self.b1.invert().expect("b1 is nonzero");
        let i2 = self.b2.invert().expect("b2 is nonzero");
        let i3 = self.b3.invert().expect("b3 is nonzero");
        (&i3 - &i2, &i3 - &i1, &i2 - &i1)
    }
}

/// Canonical-form parameters for the three section variants.
///
/// The strong form structurally pins what would be q' to q/b2, so it carries
/// no q' field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShiftParams {
    T1 { x: Scalar, y: Scalar },
    T2 { x: Scalar, y: Scalar, q: Scalar, q_prime: Scalar },
    Strong { x: Scalar, y: Scalar, q: Scalar },
}

impl ShiftParams {
    pub fn t1(x: Scalar, y: Scalar) -> Result<Self, ShiftError> {
        check_nonzero(&x, "x")?;
        check_nonzero(&y, "y")?;
        Ok(ShiftParams::T1 { x, y })
    }

    /// q' may be zero; x, y, q may not.
    pub fn t2(x: Scalar, y: Scalar, q: Scalar, q_prime: Scalar) -> Result<Self, ShiftError> {
        check_nonzero(&x, "x")?;
        check_nonzero(&y, "y")?;
        check_nonzero(&q, "q")?;
        Ok(ShiftParams::T2 { x, y, q, q_prime })
    }

    pub fn strong(x: Scalar, y: Scalar, q: Scalar) -> Result<Self, ShiftError> {
        check_nonzero(&x, "x")?;
        check_nonzero(&y, "y")?;
        check_nonzero(&q, "q")?;
        Ok(ShiftParams::Strong { x, y, q })
    }

    pub fn x(&self) -> &Scalar {
        match self {
            ShiftParams::T1 { x, .. } | ShiftParams::T2 { x, .. } | ShiftParams::Strong { x, .. } => x,
        }
    }

    pub fn y(&self) -> &Scalar {
        match self {
            ShiftParams::T1 { y, .. } | ShiftParams::T2 { y, .. } | ShiftParams::Strong { y, .. } => y,
        }
    }

    pub fn q(&self) -> Option<&Scalar> {
        match self {
            ShiftParams::T1 { .. } => None,
            ShiftParams::T2 { q, .. } | ShiftParams::Strong { q, .. } => Some(q),
        }
    }

    pub fn variant_name(&self) -> &'static str {
        match self {
            ShiftParams::T1 { .. } => "t1",
            ShiftParams::T2 { .. } => "t2",
            ShiftParams::Strong { .. } => "strong",
        }
    }
}

fn check_nonzero(s: &Scalar, name: &'static str) -> Result<(), ShiftError> {
    if s.is_zero() {
        Err(ShiftError::ZeroParameter(name))
    } else {
        Ok(())
    }
}

/// The five canonical generators (L1, L2, Q1, Q2, Q3) of a section.
pub fn shift_generators(d: &Delta, p: &ShiftParams) -> Result<[Mat; 5], ShiftError> {
    let (bd1, bd2, bd3) = d.b_delta();
    let z = Scalar::zero;
    let one = Scalar::one;
    let x = p.x();
    let y = p.y();
    let l1 = Mat::from_rows(&[
        [one(), z(), z()].to_vec(),
        [x.clone(), z(), z()].to_vec(),
        [y.clone(), z(), z()].to_vec(),
    ])?;
    let l2 = Mat::from_rows(&[
        [z(), one(), z()].to_vec(),
        [&bd3 * x, x.clone(), z()].to_vec(),
        [&bd2 * y, y.clone(), z()].to_vec(),
    ])?;
    let inv_b2 = d.b2.invert().expect("b2 is nonzero");
    let inv_b3 = d.b3.invert().expect("b3 is nonzero");
    let (q1, q2, q3) = match p {
        ShiftParams::T1 { .. } => {
            let q1 = Mat::from_rows(&[
                [z(), z(), one()].to_vec(),
                [z(), z(), z()].to_vec(),
                [z(), z(), z()].to_vec(),
            ])?;
            let q2 = Mat::from_rows(&[
                [z(), z(), z()].to_vec(),
                [&bd3 * &inv_b2, bd3.clone(), one()].to_vec(),
                [z(), z(), z()].to_vec(),
            ])?;
            let q3 = Mat::from_rows(&[
                [z(), z(), z()].to_vec(),
                [z(), z(), z()].to_vec(),
                [&bd2 * &inv_b3, bd2.clone(), one()].to_vec(),
            ])?;
            (q1, q2, q3)
        }
        ShiftParams::T2 { x, y, q, q_prime } => {
            let y_over_x = y.div(x).expect("x is nonzero");
            let q_over_x = q.div(x).expect("x is nonzero");
            let qp_over_x = q_prime.div(x).expect("x is nonzero");
            let q1 = Mat::from_rows(&[
                [z(), z(), one()].to_vec(),
                [q_prime.clone(), q.clone(), z()].to_vec(),
                [
                    &(q_prime * &y_over_x) + &(&(&bd1 * q) * &y_over_x),
                    q * &y_over_x,
                    z(),
                ]
                .to_vec(),
            ])?;
            let q2 = Mat::from_rows(&[
                [z(), z(), z()].to_vec(),
                [&(&bd3 * &inv_b2) - &qp_over_x, &bd3 - &q_over_x, one()].to_vec(),
                [z(), z(), z()].to_vec(),
            ])?;
            let q3 = Mat::from_rows(&[
                [z(), z(), z()].to_vec(),
                [z(), z(), z()].to_vec(),
                [
                    &(&(&bd2 * &inv_b3) - &(&bd1 * &q_over_x)) - &qp_over_x,
                    &bd2 - &q_over_x,
                    one(),
                ]
                .to_vec(),
            ])?;
            (q1, q2, q3)
        }
        ShiftParams::Strong { y, q, .. } => {
            let neg_y_over_b1 = -&y.div(&d.b1).expect("b1 is nonzero");
            let neg_y_over_b1b3 = neg_y_over_b1.div(&d.b3).expect("b3 is nonzero");
            let q1 = Mat::from_rows(&[
                [z(), z(), one()].to_vec(),
                [q * &inv_b2, q.clone(), z()].to_vec(),
                [neg_y_over_b1b3, neg_y_over_b1, z()].to_vec(),
            ])?;
            let q2 = Mat::from_rows(&[
                [z(), z(), z()].to_vec(),
                [&inv_b2 * &inv_b2, inv_b2.clone(), one()].to_vec(),
                [z(), z(), z()].to_vec(),
            ])?;
            let q3 = Mat::from_rows(&[
                [z(), z(), z()].to_vec(),
                [z(), z(), z()].to_vec(),
                [&inv_b3 * &inv_b3, inv_b3.clone(), one()].to_vec(),
            ])?;
            (q1, q2, q3)
        }
    };
    Ok([l1, l2, q1, q2, q3])
}

/// The canonical section as a subspace; dimension is always 5.
pub fn build_shift(d: &Delta, p: &ShiftParams) -> Result<Subspace, ShiftError> {
    let gens = shift_generators(d, p)?;
    Ok(Subspace::span(&gens)?)
}

/// z1 L1 + z2 L2 + w1 Q1 + w2 Q2 + w3 Q3.
pub fn shift_general_element(
    d: &Delta,
    p: &ShiftParams,
    coords: &CoordVector,
) -> Result<Mat, ShiftError> {
    let [l1, l2, q1, q2, q3] = shift_generators(d, p)?;
    let mut acc = l1.scale(&coords.z1);
    acc = acc.add(&l2.scale(&coords.z2))?;
    acc = acc.add(&q1.scale(&coords.w1))?;
    acc = acc.add(&q2.scale(&coords.w2))?;
    acc = acc.add(&q3.scale(&coords.w3))?;
    Ok(acc)
}

/// Recovers the variant and parameters of a canonical section.
///
/// Classification priority is Strong, then T2, then T1: the strong form is a
/// T2 specialization, and reporting the most specific class keeps chain
/// audits monotone. All redundant entries are cross-checked by rebuilding the
/// candidate and comparing canonical bases.
pub fn recognize_shift(s: &Subspace, d: &Delta) -> Result<Option<ShiftParams>, ShiftError> {
    if s.ambient_shape() != (3, 3) {
        return Err(ShiftError::BadShape);
    }
    if s.dim() != 5 || s.pivots() != [0, 1, 2, 3, 4] {
        return Ok(None);
    }
    let base = s.basis();
    let x = base[0].at(1, 0).clone();
    let y = base[0].at(2, 0).clone();
    let q = base[2].at(1, 1).clone();
    let q_prime = base[2].at(1, 0).clone();
    let candidates = [
        ShiftParams::strong(x.clone(), y.clone(), q.clone()),
        ShiftParams::t2(x.clone(), y.clone(), q.clone(), q_prime),
        ShiftParams::t1(x, y),
    ];
    for cand in candidates.into_iter().flatten() {
        let rebuilt = shift_generators(d, &cand)?;
        if Subspace::span(&rebuilt)?.basis() == base {
            return Ok(Some(cand));
        }
    }
    Ok(None)
}

/// Grid certificate for the rank rule: det(Delta X - X J3) vanishes on the
/// whole {0,1,2}^5 grid iff it vanishes identically (per-variable degree is
/// at most 2), iff every section element satisfies rank(Delta X - X J3) <= 2.
pub fn rank_rule_identically(d: &Delta, p: &ShiftParams) -> Result<GridOutcome, ShiftError> {
    let gens = shift_generators(d, p)?;
    let delta = d.to_mat();
    let j3 = Mat::jordan3();
    Ok(grid_certificate(|coords| {
        let weights = [
            &coords.z1,
            &coords.z2,
            &coords.w1,
            &coords.w2,
            &coords.w3,
        ];
        let mut x = Mat::zero(3, 3);
        for (g, w) in gens.iter().zip(weights) {
            x = x.add(&g.scale(w)).expect("shapes agree");
        }
        let m = delta
            .product(&x)
            .expect("shapes agree")
            .sub(&x.product(&j3).expect("shapes agree"))
            .expect("shapes agree");
        m.det().expect("3x3 is square")
    }))
}

/// Adjacency matching: the row-1/column-1 deletion image of the left section
/// equals the row-3/column-3 deletion image of the right one.
pub fn adjacency_equal(s_r: &Subspace, s_r1: &Subspace) -> Result<bool, ShiftError> {
    let left = s_r.image_delete_rc(1, 1)?;
    let right = s_r1.image_delete_rc(3, 3)?;
    Ok(left.equals(&right)?)
}

/// The matching constraints at junction r: x_{r+1} = y_r / x_r and
/// q_r = -x_r / b_r, plus the structural gate q' = q / (local b2) for any
/// argument still in T2 form. T1 arguments are excluded.
pub fn main_constraints(
    seq: &ShiftSequence,
    r: usize,
    p_r: &ShiftParams,
    p_r1: &ShiftParams,
) -> Result<bool, ShiftError> {
    if r < 1 || r + 3 > seq.len() {
        return Err(ShiftError::OutOfRange { r, len: seq.len() });
    }
    if matches!(p_r, ShiftParams::T1 { .. }) || matches!(p_r1, ShiftParams::T1 { .. }) {
        return Err(ShiftError::VariantExcluded);
    }
    let x_r = p_r.x();
    let y_r = p_r.y();
    let x_r1 = p_r1.x();
    let q_r = p_r.q().expect("T1 excluded above");
    let recurrence = x_r1 == &y_r.div(x_r).expect("x_r is nonzero");
    let q_forced = q_r == &-&x_r.div(seq.b(r)).expect("b_r is nonzero");
    let mut gates = true;
    if let ShiftParams::T2 { q, q_prime, .. } = p_r {
        gates &= q_prime == &q.div(seq.b(r + 1)).expect("b is nonzero");
    }
    if let ShiftParams::T2 { q, q_prime, .. } = p_r1 {
        gates &= q_prime == &q.div(seq.b(r + 2)).expect("b is nonzero");
    }
    Ok(recurrence && q_forced && gates)
}

/// Converts a T2 form satisfying both gates q = -x/b1 and q' = q/b2 into the
/// strong form with the same (x, y, q); the two generator lists coincide
/// entrywise, so the built subspaces are equal.
pub fn strongify(d: &Delta, p: &ShiftParams) -> Result<ShiftParams, ShiftError> {
    let ShiftParams::T2 { x, y, q, q_prime } = p else {
        return Err(ShiftError::VariantExcluded);
    };
    let forced_q = -&x.div(&d.b1).expect("b1 is nonzero");
    if q != &forced_q {
        return Err(ShiftError::GateViolated("q = -x/b1"));
    }
    let forced_qp = q.div(&d.b2).expect("b2 is nonzero");
    if q_prime != &forced_qp {
        return Err(ShiftError::GateViolated("q' = q/b2"));
    }
    ShiftParams::strong(x.clone(), y.clone(), q.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio(n: i64, d: i64) -> Scalar {
        Scalar::from_ratios(n, d, 0, 1).unwrap()
    }

    /// diag(1, 1/2, 1/3), the running example.
    fn harmonic_delta() -> Delta {
        Delta::new(ratio(1, 1), ratio(1, 2), ratio(1, 3)).unwrap()
    }

    #[test]
    fn b_delta_examples() {
        let (d1, d2, d3) = harmonic_delta().b_delta();
        assert_eq!((d1, d2, d3), (ratio(1, 1), ratio(2, 1), ratio(1, 1)));
        let (d1, d2, d3) = Delta::new(ratio(1, 2), ratio(1, 3), ratio(1, 4))
            .unwrap()
            .b_delta();
        assert_eq!((d1, d2, d3), (ratio(1, 1), ratio(2, 1), ratio(1, 1)));
        let (d1, d2, d3) = Delta::from_ints(1, 2, 3).unwrap().b_delta();
        assert_eq!((d1, d2, d3), (ratio(-1, 6), ratio(-2, 3), ratio(-1, 2)));
    }

    #[test]
    fn delta_validation() {
        assert!(Delta::from_ints(1, 1, 2).is_err());
        assert!(Delta::from_ints(0, 1, 2).is_err());
    }

    #[test]
    fn strong_generator_entries() {
        let d = harmonic_delta();
        let p = ShiftParams::strong(ratio(1, 1), ratio(1, 1), ratio(1, 1)).unwrap();
        let [_, _, q1, q2, _] = shift_generators(&d, &p).unwrap();
        assert_eq!(
            q2,
            Mat::from_ints(&[&[0, 0, 0], &[4, 2, 1], &[0, 0, 0]])
        );
        assert_eq!(
            q1,
            Mat::from_ints(&[&[0, 0, 1], &[2, 1, 0], &[-3, -1, 0]])
        );
    }

    #[test]
    fn t1_q1_is_single_entry() {
        let d = harmonic_delta();
        let p = ShiftParams::t1(ratio(2, 1), ratio(-3, 1)).unwrap();
        let [_, l2, q1, _, _] = shift_generators(&d, &p).unwrap();
        assert_eq!(q1, Mat::from_ints(&[&[0, 0, 1], &[0, 0, 0], &[0, 0, 0]]));
        // erratum fix: the second generator has (1,1) = 0
        assert_eq!(l2.at(0, 0), &Scalar::zero());
        assert_eq!(l2.at(0, 1), &Scalar::one());
    }

    #[test]
    fn t2_general_element_entries() {
        let d = harmonic_delta();
        let (bd1, bd2, bd3) = d.b_delta();
        let x = ratio(2, 1);
        let y = ratio(3, 1);
        let q = ratio(5, 1);
        let qp = ratio(7, 1);
        let p = ShiftParams::t2(x.clone(), y.clone(), q.clone(), qp.clone()).unwrap();
        let q1 = shift_general_element(&d, &p, &CoordVector::from_ints(0, 0, 1, 0, 0)).unwrap();
        let y_over_x = y.div(&x).unwrap();
        assert_eq!(
            q1.at(2, 0),
            &(&(&qp * &y_over_x) + &(&(&bd1 * &q) * &y_over_x))
        );
        let l2 = shift_general_element(&d, &p, &CoordVector::from_ints(0, 1, 0, 0, 0)).unwrap();
        assert_eq!(l2.at(0, 0), &Scalar::zero());
        assert_eq!(l2.at(1, 0), &(&bd3 * &x));
        assert_eq!(l2.at(2, 0), &(&bd2 * &y));
        let zero = shift_general_element(&d, &p, &CoordVector::zero()).unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn recognize_round_trips_and_priority() {
        let d = harmonic_delta();
        for p in [
            ShiftParams::strong(ratio(2, 1), ratio(-3, 4), ratio(5, 1)).unwrap(),
            ShiftParams::t2(ratio(1, 2), ratio(3, 1), ratio(-1, 3), ratio(2, 7)).unwrap(),
            ShiftParams::t2(ratio(1, 2), ratio(3, 1), ratio(-1, 3), Scalar::zero()).unwrap(),
            ShiftParams::t1(ratio(4, 1), ratio(5, 6)).unwrap(),
        ] {
            let s = build_shift(&d, &p).unwrap();
            assert_eq!(s.dim(), 5);
            assert_eq!(recognize_shift(&s, &d).unwrap(), Some(p));
        }
        // a gated T2 is recognized as Strong
        let x = ratio(3, 1);
        let q = -&x.div(&d.b1).unwrap();
        let qp = q.div(&d.b2).unwrap();
        let t2 = ShiftParams::t2(x.clone(), ratio(7, 1), q.clone(), qp).unwrap();
        let s = build_shift(&d, &t2).unwrap();
        assert_eq!(
            recognize_shift(&s, &d).unwrap(),
            Some(ShiftParams::strong(x, ratio(7, 1), q).unwrap())
        );
        // a plain five-dimensional span of elementary matrices is none
        let gens = [
            Mat::from_ints(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]),
            Mat::from_ints(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]),
            Mat::from_ints(&[&[0, 0, 1], &[0, 0, 0], &[0, 0, 0]]),
            Mat::from_ints(&[&[0, 0, 0], &[0, 0, 1], &[0, 0, 0]]),
            Mat::from_ints(&[&[0, 0, 0], &[0, 0, 0], &[0, 0, 1]]),
        ];
        let s = Subspace::span(&gens).unwrap();
        assert_eq!(recognize_shift(&s, &d).unwrap(), None);
    }

    #[test]
    fn rank_rule_boundary() {
        let d = harmonic_delta();
        let x = ratio(1, 1);
        // q = -x/b1 = -1
        let good = ShiftParams::strong(x.clone(), ratio(1, 1), ratio(-1, 1)).unwrap();
        assert!(rank_rule_identically(&d, &good).unwrap().holds());
        let bad = ShiftParams::strong(x, ratio(1, 1), ratio(1, 1)).unwrap();
        match rank_rule_identically(&d, &bad).unwrap() {
            GridOutcome::Fails(w) => {
                let x = shift_general_element(&d, &bad, &w.coords).unwrap();
                let m = d
                    .to_mat()
                    .product(&x)
                    .unwrap()
                    .sub(&x.product(&Mat::jordan3()).unwrap())
                    .unwrap();
                assert_eq!(m.det().unwrap(), w.det);
                assert_eq!(m.rank(), 3);
            }
            GridOutcome::Holds => panic!("rank rule must fail for q != -x/b1"),
        }
    }

    #[test]
    fn rank_rule_holds_for_t1_and_t2() {
        // both canonical families satisfy the rule for every parameter choice
        let d = harmonic_delta();
        let t1 = ShiftParams::t1(ratio(2, 3), ratio(-5, 1)).unwrap();
        assert!(rank_rule_identically(&d, &t1).unwrap().holds());
        let t2 = ShiftParams::t2(ratio(2, 3), ratio(-5, 1), ratio(7, 2), ratio(1, 9)).unwrap();
        assert!(rank_rule_identically(&d, &t2).unwrap().holds());
    }

    #[test]
    fn single_generators_have_low_rank() {
        let d = harmonic_delta();
        let j3 = Mat::jordan3();
        let dm = d.to_mat();
        for p in [
            ShiftParams::t1(ratio(2, 1), ratio(3, 1)).unwrap(),
            ShiftParams::t2(ratio(2, 1), ratio(3, 1), ratio(5, 1), ratio(7, 1)).unwrap(),
            ShiftParams::strong(ratio(2, 1), ratio(3, 1), ratio(5, 1)).unwrap(),
        ] {
            for g in shift_generators(&d, &p).unwrap() {
                let m = dm
                    .product(&g)
                    .unwrap()
                    .sub(&g.product(&j3).unwrap())
                    .unwrap();
                assert!(m.rank() <= 2);
            }
        }
    }

    #[test]
    fn main_constraints_examples() {
        // b_k = 1/k
        let b: Vec<Scalar> = (1..=6).map(|k| ratio(1, k)).collect();
        let seq = ShiftSequence::new(Scalar::zero(), b).unwrap();
        // x1 = 1, y1 = 3 forces x2 = 3 and q1 = -1
        let p1 = ShiftParams::strong(ratio(1, 1), ratio(3, 1), ratio(-1, 1)).unwrap();
        let p2 = ShiftParams::strong(ratio(3, 1), ratio(1, 1), ratio(-6, 1)).unwrap();
        assert!(main_constraints(&seq, 1, &p1, &p2).unwrap());
        let p2_bad = ShiftParams::strong(ratio(4, 1), ratio(1, 1), ratio(-8, 1)).unwrap();
        assert!(!main_constraints(&seq, 1, &p1, &p2_bad).unwrap());
        let t1 = ShiftParams::t1(ratio(1, 1), ratio(1, 1)).unwrap();
        assert_eq!(
            main_constraints(&seq, 1, &t1, &p2),
            Err(ShiftError::VariantExcluded)
        );
    }

    #[test]
    fn strongify_examples() {
        let d = harmonic_delta();
        let t2 = ShiftParams::t2(ratio(1, 1), ratio(1, 1), ratio(-1, 1), ratio(-2, 1)).unwrap();
        let strong = strongify(&d, &t2).unwrap();
        assert_eq!(
            strong,
            ShiftParams::strong(ratio(1, 1), ratio(1, 1), ratio(-1, 1)).unwrap()
        );
        let s_t2 = build_shift(&d, &t2).unwrap();
        let s_strong = build_shift(&d, &strong).unwrap();
        assert!(s_t2.equals(&s_strong).unwrap());

        let bad_qp = ShiftParams::t2(ratio(1, 1), ratio(1, 1), ratio(-1, 1), ratio(1, 1)).unwrap();
        assert_eq!(
            strongify(&d, &bad_qp),
            Err(ShiftError::GateViolated("q' = q/b2"))
        );
        let bad_q = ShiftParams::t2(ratio(1, 1), ratio(1, 1), ratio(2, 1), ratio(4, 1)).unwrap();
        assert_eq!(
            strongify(&d, &bad_q),
            Err(ShiftError::GateViolated("q = -x/b1"))
        );
    }

    #[test]
    fn adjacency_exclusion_for_t1_left() {
        let b: Vec<Scalar> = (1..=4).map(|k| ratio(1, k)).collect();
        let seq = ShiftSequence::new(Scalar::zero(), b).unwrap();
        let d1 = seq.delta(1).unwrap();
        let d2 = seq.delta(2).unwrap();
        let left = build_shift(&d1, &ShiftParams::t1(ratio(2, 1), ratio(3, 1)).unwrap()).unwrap();
        let right_t1 =
            build_shift(&d2, &ShiftParams::t1(ratio(3, 2), ratio(5, 1)).unwrap()).unwrap();
        let right_t2 = build_shift(
            &d2,
            &ShiftParams::t2(ratio(3, 2), ratio(5, 1), ratio(7, 1), ratio(2, 1)).unwrap(),
        )
        .unwrap();
        assert!(!adjacency_equal(&left, &right_t1).unwrap());
        assert!(!adjacency_equal(&left, &right_t2).unwrap());
    }

    #[test]
    fn adjacency_matches_constraints_for_strong_pairs() {
        let b: Vec<Scalar> = (1..=5).map(|k| ratio(1, k)).collect();
        let seq = ShiftSequence::new(Scalar::zero(), b).unwrap();
        let d1 = seq.delta(1).unwrap();
        let d2 = seq.delta(2).unwrap();
        let x1 = ratio(2, 1);
        let y1 = ratio(6, 1);
        let q1 = -&x1.div(seq.b(1)).unwrap();
        let x2 = y1.div(&x1).unwrap();
        let q2 = -&x2.div(seq.b(2)).unwrap();
        let p1 = ShiftParams::strong(x1, y1, q1).unwrap();
        let p2 = ShiftParams::strong(x2, ratio(9, 1), q2).unwrap();
        let s1 = build_shift(&d1, &p1).unwrap();
        let s2 = build_shift(&d2, &p2).unwrap();
        assert!(adjacency_equal(&s1, &s2).unwrap());
        assert!(main_constraints(&seq, 1, &p1, &p2).unwrap());
    }

    #[test]
    fn t2_image_dimension_rule() {
        let d = harmonic_delta();
        let x = ratio(2, 1);
        let q = ratio(5, 1);
        let gated = q.div(&d.b2).unwrap();
        let p_gated = ShiftParams::t2(x.clone(), ratio(3, 1), q.clone(), gated).unwrap();
        let p_free = ShiftParams::t2(x, ratio(3, 1), q, ratio(1, 1)).unwrap();
        let s_gated = build_shift(&d, &p_gated).unwrap();
        let s_free = build_shift(&d, &p_free).unwrap();
        assert_eq!(s_gated.image_delete_rc(3, 3).unwrap().dim(), 3);
        assert_eq!(s_free.image_delete_rc(3, 3).unwrap().dim(), 4);
    }
}
