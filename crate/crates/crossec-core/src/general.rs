//! Cross-sections over general diagonal data: blocks built from the
//! difference table of two point sequences, the cross-ratio invariant rho,
//! canonical five-dimensional sections with parameters (p1, p2, q2, q3),
//! the Schur-singularity certificate and the recurrences connecting the
//! parameters of adjacent sections.
//!
//! Two basis variants are kept. `Printed` is the authoritative one: its third
//! generator carries q2, q3 in the last column and it satisfies the
//! Schur-singularity rule for every admissible input. `Elementary` replaces
//! that generator by the single-entry matrix with a 1 at (1,3); the two spans
//! genuinely differ and the elementary one fails the singularity rule with a
//! concrete nonzero coefficient, so the discrepancy is itself reproducible.

use alloc::vec::Vec;
use core::fmt;

use crate::grid::{grid_certificate, CoordVector, GridOutcome};
use crate::mat::{Mat, MatError};
use crate::scalar::Scalar;
use crate::subspace::{Subspace, SubspaceError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SectionError {
    /// A sequence point violates the admissibility invariants.
    InadmissibleSequence(&'static str),
    /// Mismatched lambda/mu lengths.
    LengthMismatch { lambda: usize, mu: usize },
    /// Block index r is out of range for the sequence prefix.
    OutOfRange { r: usize, len: usize },
    /// rho needs a 2x2 matrix with all entries nonzero.
    RhoUndefined,
    /// A block entry or a canonical-form parameter is zero.
    ZeroParameter(&'static str),
    /// Ambient shape is not the expected one.
    BadShape,
    Mat(MatError),
    Subspace(SubspaceError),
}

impl fmt::Display for SectionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SectionError::InadmissibleSequence(msg) => write!(f, "inadmissible sequence: {msg}"),
            SectionError::LengthMismatch { lambda, mu } => write!(
                f,
                "lambda and mu must have equal length, got {lambda} and {mu}"
            ),
            SectionError::OutOfRange { r, len } => {
                write!(f, "block index r={r} needs r+2 <= {len}")
            }
            SectionError::RhoUndefined => {
                write!(f, "rho is defined only on 2x2 matrices with nonzero entries")
            }
            SectionError::ZeroParameter(name) => write!(f, "{name} must be nonzero"),
            SectionError::BadShape => write!(f, "unexpected ambient shape"),
            SectionError::Mat(e) => write!(f, "{e}"),
            SectionError::Subspace(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for SectionError {}

impl From<MatError> for SectionError {
    fn from(e: MatError) -> Self {
        SectionError::Mat(e)
    }
}

impl From<SubspaceError> for SectionError {
    fn from(e: SubspaceError) -> Self {
        SectionError::Subspace(e)
    }
}

/// Admissible point data (mu0, {lambda_k}, {mu_k}) defining the blocks.
///
/// Invariants: every b_i = mu_i - mu0 and a_j = lambda_j - mu0 is nonzero and
/// the combined list {lambda_k} ∪ {mu_k} is pairwise distinct, so every
/// difference entry b_i - a_j is nonzero too.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralSequence {
    mu0: Scalar,
    lambda: Vec<Scalar>,
    mu: Vec<Scalar>,
}

impl GeneralSequence {
    pub fn new(mu0: Scalar, lambda: Vec<Scalar>, mu: Vec<Scalar>) -> Result<Self, SectionError> {
        if lambda.len() != mu.len() {
            return Err(SectionError::LengthMismatch {
                lambda: lambda.len(),
                mu: mu.len(),
            });
        }
        if lambda.is_empty() {
            return Err(SectionError::InadmissibleSequence("empty sequence"));
        }
        for l in &lambda {
            if l == &mu0 {
                return Err(SectionError::InadmissibleSequence("lambda_j equals mu0"));
            }
        }
        for m in &mu {
            if m == &mu0 {
                return Err(SectionError::InadmissibleSequence("mu_i equals mu0"));
            }
        }
        let combined: Vec<&Scalar> = lambda.iter().chain(mu.iter()).collect();
        for (i, a) in combined.iter().enumerate() {
            for b in combined.iter().skip(i + 1) {
                if a == b {
                    return Err(SectionError::InadmissibleSequence(
                        "points are not pairwise distinct",
                    ));
                }
            }
        }
        Ok(GeneralSequence { mu0, lambda, mu })
    }

    pub fn len(&self) -> usize {
        self.lambda.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambda.is_empty()
    }

    pub fn mu0(&self) -> &Scalar {
        &self.mu0
    }

    pub fn lambda(&self) -> &[Scalar] {
        &self.lambda
    }

    pub fn mu(&self) -> &[Scalar] {
        &self.mu
    }

    /// b_i = mu_i - mu0 (1-based).
    pub fn b(&self, i: usize) -> Scalar {
        &self.mu[i - 1] - &self.mu0
    }

    /// a_j = lambda_j - mu0 (1-based).
    pub fn a(&self, j: usize) -> Scalar {
        &self.lambda[j - 1] - &self.mu0
    }

    /// The difference entry b_i - a_j (1-based).
    pub fn c_hat(&self, i: usize, j: usize) -> Scalar {
        &self.b(i) - &self.a(j)
    }

    /// The 3x3 block with entries c_hat_{r+i-1, r+j-1}; all entries are
    /// nonzero by the admissibility invariants.
    pub fn c_block(&self, r: usize) -> Result<Mat, SectionError> {
        if r < 1 || r + 2 > self.len() {
            return Err(SectionError::OutOfRange { r, len: self.len() });
        }
        Ok(Mat::from_fn(3, 3, |i, j| self.c_hat(r + i, r + j)))
    }
}

/// The cross-ratio of a 2x2 matrix with nonzero entries:
/// top-left * bottom-right / (top-right * bottom-left).
pub fn rho(y: &Mat) -> Result<Scalar, SectionError> {
    if y.shape() != (2, 2) {
        return Err(SectionError::RhoUndefined);
    }
    if y.entries().iter().any(Scalar::is_zero) {
        return Err(SectionError::RhoUndefined);
    }
    let num = y.at(0, 0) * y.at(1, 1);
    let den = y.at(0, 1) * y.at(1, 0);
    Ok(num.div(&den).expect("denominator entries are nonzero"))
}

/// rho of the partial matrix obtained by deleting row k and column l.
fn rho_del(c: &Mat, k: usize, l: usize) -> Result<Scalar, SectionError> {
    rho(&c.delete_rc(k, l)?)
}

/// Canonical-form parameters of a general section; all four nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralParams {
    pub p1: Scalar,
    pub p2: Scalar,
    pub q2: Scalar,
    pub q3: Scalar,
}

impl GeneralParams {
    pub fn new(p1: Scalar, p2: Scalar, q2: Scalar, q3: Scalar) -> Result<Self, SectionError> {
        for (s, name) in [(&p1, "p1"), (&p2, "p2"), (&q2, "q2"), (&q3, "q3")] {
            if s.is_zero() {
                return Err(SectionError::ZeroParameter(name));
            }
        }
        Ok(GeneralParams { p1, p2, q2, q3 })
    }
}

/// Which third generator to use; `Printed` is the default and satisfies the
/// singularity rule, `Elementary` is kept so the difference stays observable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Variant {
    #[default]
    Printed,
    Elementary,
}

fn check_block(c: &Mat) -> Result<(), SectionError> {
    if c.shape() != (3, 3) {
        return Err(SectionError::BadShape);
    }
    if c.entries().iter().any(Scalar::is_zero) {
        return Err(SectionError::ZeroParameter("block entry"));
    }
    Ok(())
}

/// The five canonical generators (L1, L2, Q1, Q2, Q3) of a general section.
pub fn c_normal_generators(
    c: &Mat,
    p: &GeneralParams,
    variant: Variant,
) -> Result<[Mat; 5], SectionError> {
    check_block(c)?;
    let z = Scalar::zero;
    let one = Scalar::one;
    let r32 = rho_del(c, 3, 2)?;
    let r31 = rho_del(c, 3, 1)?;
    let r22 = rho_del(c, 2, 2)?;
    let r21 = rho_del(c, 2, 1)?;
    let r12 = rho_del(c, 1, 2)?;
    let r11 = rho_del(c, 1, 1)?;
    let l1 = Mat::from_rows(&[
        [one(), z(), z()].to_vec(),
        [&r32 * &p.q2, z(), z()].to_vec(),
        [&r22 * &p.q3, z(), z()].to_vec(),
    ])?;
    let l2 = Mat::from_rows(&[
        [z(), one(), z()].to_vec(),
        [z(), &r31 * &p.q2, z()].to_vec(),
        [z(), &r21 * &p.q3, z()].to_vec(),
    ])?;
    let q1 = match variant {
        Variant::Printed => Mat::from_rows(&[
            [z(), z(), one()].to_vec(),
            [z(), z(), p.q2.clone()].to_vec(),
            [z(), z(), p.q3.clone()].to_vec(),
        ])?,
        Variant::Elementary => Mat::from_rows(&[
            [z(), z(), one()].to_vec(),
            [z(), z(), z()].to_vec(),
            [z(), z(), z()].to_vec(),
        ])?,
    };
    let q2 = Mat::from_rows(&[
        [z(), z(), z()].to_vec(),
        [p.p1.clone(), p.p2.clone(), one()].to_vec(),
        [z(), z(), z()].to_vec(),
    ])?;
    let q3 = Mat::from_rows(&[
        [z(), z(), z()].to_vec(),
        [z(), z(), z()].to_vec(),
        [&r12 * &p.p1, &r11 * &p.p2, one()].to_vec(),
    ])?;
    Ok([l1, l2, q1, q2, q3])
}

/// The canonical five-dimensional section as a subspace.
pub fn build_c_normal(
    c: &Mat,
    p: &GeneralParams,
    variant: Variant,
) -> Result<Subspace, SectionError> {
    let gens = c_normal_generators(c, p, variant)?;
    Ok(Subspace::span(&gens)?)
}

/// z1 L1 + z2 L2 + w1 Q1 + w2 Q2 + w3 Q3 for the chosen variant.
pub fn general_element(
    c: &Mat,
    p: &GeneralParams,
    coords: &CoordVector,
    variant: Variant,
) -> Result<Mat, SectionError> {
    let [l1, l2, q1, q2, q3] = c_normal_generators(c, p, variant)?;
    let mut acc = l1.scale(&coords.z1);
    acc = acc.add(&l2.scale(&coords.z2))?;
    acc = acc.add(&q1.scale(&coords.w1))?;
    acc = acc.add(&q2.scale(&coords.w2))?;
    acc = acc.add(&q3.scale(&coords.w3))?;
    Ok(acc)
}

/// Recovers the parameters of a canonical section, or `None` when the
/// subspace does not match the pattern.
///
/// The gate is strict: dimension 5, reduced-basis pivots exactly at
/// (1,1),(1,2),(1,3),(2,3),(3,3), all parameters nonzero, and every one of
/// the twenty free entries must match the pattern, which cross-checks each
/// parameter against all of its redundant occurrences.
pub fn recognize_c_normal(
    s: &Subspace,
    c: &Mat,
) -> Result<Option<GeneralParams>, SectionError> {
    check_block(c)?;
    if s.ambient_shape() != (3, 3) {
        return Err(SectionError::BadShape);
    }
    if s.dim() != 5 || s.pivots() != [0, 1, 2, 3, 4] {
        return Ok(None);
    }
    let r32 = rho_del(c, 3, 2)?;
    let r22 = rho_del(c, 2, 2)?;
    let base = s.basis();
    // R4 is the pivot-(2,3) representative: its free row is (p1, p2).
    let p1 = base[3].at(1, 0).clone();
    let p2 = base[3].at(1, 1).clone();
    // R1 is the pivot-(1,1) representative with column 1 carrying the q's.
    let q2 = match base[0].at(1, 0).div(&r32) {
        Ok(v) => v,
        Err(_) => return Ok(None),
    };
    let q3 = match base[0].at(2, 0).div(&r22) {
        Ok(v) => v,
        Err(_) => return Ok(None),
    };
    let params = match GeneralParams::new(p1, p2, q2, q3) {
        Ok(p) => p,
        Err(_) => return Ok(None),
    };
    let expected = c_normal_generators(c, &params, Variant::Printed)?;
    let canonical = Subspace::span(&expected)?;
    if canonical.basis() == base {
        Ok(Some(params))
    } else {
        Ok(None)
    }
}

/// Grid certificate for the singularity rule: the determinant of the Schur
/// product of the block with every section element vanishes identically.
///
/// The determinant is multilinear in the coordinates (each one is confined to
/// a single row or column), so vanishing on the {0,1,2}^5 grid is conclusive.
pub fn schur_singular_identically(
    c: &Mat,
    p: &GeneralParams,
    variant: Variant,
) -> Result<GridOutcome, SectionError> {
    let [l1, l2, q1, q2, q3] = c_normal_generators(c, p, variant)?;
    let gens = [l1, l2, q1, q2, q3];
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
        c.schur(&x)
            .expect("shapes agree")
            .det()
            .expect("3x3 is square")
    }))
}

/// Both cross-ratio identities used to reduce the matching recurrences:
/// rho(C^r_{3,1}) rho(C^{r+1}_{3,2}) / rho(C^r_{2,1}) = rho(C^{r+1}_{3,1})
/// and rho(C^{r+1}_{3,2}) / rho(C^{r+1}_{3,1}) = rho(C^r_{1,1}).
pub fn rho_identities(seq: &GeneralSequence, r: usize) -> Result<bool, SectionError> {
    if r < 1 || r + 3 > seq.len() {
        return Err(SectionError::OutOfRange { r, len: seq.len() });
    }
    let cr = seq.c_block(r)?;
    let cr1 = seq.c_block(r + 1)?;
    let lhs1 = (&rho_del(&cr, 3, 1)? * &rho_del(&cr1, 3, 2)?)
        .div(&rho_del(&cr, 2, 1)?)
        .expect("rho values are nonzero");
    let first = lhs1 == rho_del(&cr1, 3, 1)?;
    let lhs2 = rho_del(&cr1, 3, 2)?
        .div(&rho_del(&cr1, 3, 1)?)
        .expect("rho values are nonzero");
    let second = lhs2 == rho_del(&cr, 1, 1)?;
    Ok(first && second)
}

/// The two matching recurrences between adjacent sections:
/// (i)  q3 of section r equals q2_r q2_{r+1} rho(C^{r+1}_{3,1}),
/// (ii) p1 of section r+1 equals p2_r p2_{r+1} rho(C^r_{1,1}).
pub fn connection_holds(
    seq: &GeneralSequence,
    r: usize,
    pr: &GeneralParams,
    pr1: &GeneralParams,
) -> Result<bool, SectionError> {
    if r < 1 || r + 3 > seq.len() {
        return Err(SectionError::OutOfRange { r, len: seq.len() });
    }
    let cr = seq.c_block(r)?;
    let cr1 = seq.c_block(r + 1)?;
    let i_holds = pr.q3 == &(&pr.q2 * &pr1.q2) * &rho_del(&cr1, 3, 1)?;
    let ii_holds = pr1.p1 == &(&pr.p2 * &pr1.p2) * &rho_del(&cr, 1, 1)?;
    Ok(i_holds && ii_holds)
}
