//! The Gaussian-rational field: complex numbers whose real and imaginary
//! parts are arbitrary-precision rationals.
//!
//! This is the substrate every rank and determinant decision runs over, so
//! the representation is kept canonical at all times: rationals are stored
//! reduced with a positive denominator and zero is uniquely `0/1`, which makes
//! structural equality coincide with field equality.

use alloc::string::String;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arithmetic failures: the only one possible in a field is inverting zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArithError {
    DivisionByZero,
    ZeroDenominator,
}

impl fmt::Display for ArithError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithError::DivisionByZero => write!(f, "division by zero"),
            ArithError::ZeroDenominator => write!(f, "zero denominator"),
        }
    }
}

impl core::error::Error for ArithError {}

/// Parse failure, pointing at the byte offset of the offending input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseScalarError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "scalar parse error at byte {}: {}", self.pos, self.msg)
    }
}

impl core::error::Error for ParseScalarError {}

fn parse_err(pos: usize, msg: &str) -> ParseScalarError {
    ParseScalarError {
        pos,
        msg: String::from(msg),
    }
}

/// An exact rational number, always stored reduced with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// Builds `numer/denom`, reducing and normalizing the sign.
    pub fn new(numer: BigInt, denom: BigInt) -> Result<Self, ArithError> {
        if denom.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }

    pub fn from_ints(numer: i64, denom: i64) -> Result<Self, ArithError> {
        Self::new(BigInt::from(numer), BigInt::from(denom))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn recip(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! forward_binop {
    ($op:ident, $method:ident, $t:ty) => {
        impl $op<&$t> for &$t {
            type Output = $t;
            fn $method(self, rhs: &$t) -> $t {
                <$t>::$method(self, rhs)
            }
        }
        impl $op<$t> for $t {
            type Output = $t;
            fn $method(self, rhs: $t) -> $t {
                <$t>::$method(&self, &rhs)
            }
        }
        impl $op<&$t> for $t {
            type Output = $t;
            fn $method(self, rhs: &$t) -> $t {
                <$t>::$method(&self, rhs)
            }
        }
        impl $op<$t> for &$t {
            type Output = $t;
            fn $method(self, rhs: $t) -> $t {
                <$t>::$method(self, &rhs)
            }
        }
    };
}

impl Rational {
    fn add(&self, rhs: &Rational) -> Rational {
        Rational(&self.0 + &rhs.0)
    }

    fn sub(&self, rhs: &Rational) -> Rational {
        Rational(&self.0 - &rhs.0)
    }

    fn mul(&self, rhs: &Rational) -> Rational {
        Rational(&self.0 * &rhs.0)
    }
}

forward_binop!(Add, add, Rational);
forward_binop!(Sub, sub, Rational);
forward_binop!(Mul, mul, Rational);

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

/// An exact complex number with rational coordinates.
///
/// Equality is structural, which coincides with field equality because the
/// coordinates are stored canonically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    pub re: Rational,
    pub im: Rational,
}

impl Scalar {
    pub fn new(re: Rational, im: Rational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::new(Rational::one(), Rational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar::new(Rational::zero(), Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::new(Rational::from_int(n), Rational::zero())
    }

    pub fn from_rational(re: Rational) -> Self {
        Scalar::new(re, Rational::zero())
    }

    /// Exact `re_n/re_d + (im_n/im_d)i`; handy in tests.
    pub fn from_ratios(re_n: i64, re_d: i64, im_n: i64, im_d: i64) -> Result<Self, ArithError> {
        Ok(Scalar::new(
            Rational::from_ints(re_n, re_d)?,
            Rational::from_ints(im_n, im_d)?,
        ))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar::new(self.re.clone(), -&self.im)
    }

    /// |z|^2 as an exact rational.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; zero has none.
    pub fn invert(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let n = self.norm_sqr();
        let n_inv = n.recip().expect("norm of a nonzero scalar is nonzero");
        Ok(Scalar::new(&self.re * &n_inv, -&(&self.im * &n_inv)))
    }

    /// Exact division; dividing by zero is an error, never a sentinel.
    pub fn div(&self, rhs: &Scalar) -> Result<Self, ArithError> {
        Ok(self * &rhs.invert()?)
    }

    fn add(&self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }

    fn sub(&self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }

    fn mul(&self, rhs: &Scalar) -> Scalar {
        Scalar::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

forward_binop!(Add, add, Scalar);
forward_binop!(Sub, sub, Scalar);
forward_binop!(Mul, mul, Scalar);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-&self.re, -&self.im)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re, -self.im)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.re, self.im)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses a rational literal `-?digits(/digits)?` out of `text[pos..]`.
/// Returns the value and the position one past its end.
fn parse_rational_at(text: &str, pos: usize) -> Result<(Rational, usize), ParseScalarError> {
    let bytes = text.as_bytes();
    let mut k = pos;
    if k < bytes.len() && bytes[k] == b'-' {
        k += 1;
    }
    let num_start = k;
    while k < bytes.len() && bytes[k].is_ascii_digit() {
        k += 1;
    }
    if k == num_start {
        return Err(parse_err(k, "expected digits"));
    }
    let numer = BigInt::from_str(&text[pos..k]).expect("digit run is a valid integer");
    if k < bytes.len() && bytes[k] == b'/' {
        k += 1;
        let den_start = k;
        while k < bytes.len() && bytes[k].is_ascii_digit() {
            k += 1;
        }
        if k == den_start {
            return Err(parse_err(k, "expected digits after '/'"));
        }
        let denom = BigInt::from_str(&text[den_start..k]).expect("digit run is a valid integer");
        let value = Rational::new(numer, denom).map_err(|_| parse_err(den_start, "zero denominator"))?;
        Ok((value, k))
    } else {
        Ok((Rational(BigRational::from_integer(numer)), k))
    }
}

/// Parses the scalar grammar `(<rational>,<rational>)`.
///
/// Round-trips with [`Scalar`]'s `Display` on every valid value.
pub fn parse_scalar(text: &str) -> Result<Scalar, ParseScalarError> {
    let bytes = text.as_bytes();
    if bytes.first() != Some(&b'(') {
        return Err(parse_err(0, "expected '('"));
    }
    let (re, k) = parse_rational_at(text, 1)?;
    if bytes.get(k) != Some(&b',') {
        return Err(parse_err(k, "expected ','"));
    }
    let (im, k) = parse_rational_at(text, k + 1)?;
    if bytes.get(k) != Some(&b')') {
        return Err(parse_err(k, "expected ')'"));
    }
    if k + 1 != bytes.len() {
        return Err(parse_err(k + 1, "trailing input after ')'"));
    }
    Ok(Scalar::new(re, im))
}

impl FromStr for Scalar {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_scalar(s)
    }
}
