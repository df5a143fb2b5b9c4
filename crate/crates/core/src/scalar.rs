//! Scalar arithmetic for polynomial coefficients and evaluation points.
//!
//! A [`Scalar`] is either an exact Gaussian rational (a pair of
//! arbitrary-precision rationals for the real and imaginary parts) or an
//! approximate complex double. Arithmetic stays exact as long as both
//! operands are exact; any operation touching an approximate value
//! produces an approximate value. Nothing ever promotes the other way.

use crate::error::{Error, Result};
use num::complex::Complex64;
use num::rational::BigRational;
use num::{BigInt, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exact Gaussian rational: `re + im * I`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        GaussRat::new(
            BigRational::new(num.into(), den.into()),
            BigRational::zero(),
        )
    }

    pub fn i() -> Self {
        GaussRat::new(BigRational::zero(), BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    fn mul(&self, other: &GaussRat) -> GaussRat {
        GaussRat::new(
            &self.re * &other.re - &self.im * &other.im,
            &self.re * &other.im + &self.im * &other.re,
        )
    }

    fn inv(&self) -> Result<GaussRat> {
        let norm = &self.re * &self.re + &self.im * &self.im;
        if norm.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(GaussRat::new(&self.re / &norm, -&self.im / &norm))
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
}

fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Extremely large numerator/denominator; fall back to a quotient of
        // lossy conversions rather than poisoning the value with NaN.
        let n = r.numer().to_f64().unwrap_or(f64::MAX);
        let d = r.denom().to_f64().unwrap_or(f64::MAX);
        n / d
    })
}

fn rat_is_perfect_square(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let ns = r.numer().sqrt();
    let ds = r.denom().sqrt();
    if &(&ns * &ns) == r.numer() && &(&ds * &ds) == r.denom() {
        Some(BigRational::new(ns, ds))
    } else {
        None
    }
}

/// A coefficient or evaluation value: exact Gaussian rational, or
/// approximate complex double once exactness has been lost.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(GaussRat),
    Approx(Complex64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(GaussRat::from_int(0))
    }

    pub fn one() -> Self {
        Scalar::Exact(GaussRat::from_int(1))
    }

    pub fn int(n: i64) -> Self {
        Scalar::Exact(GaussRat::from_int(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::Exact(GaussRat::ratio(num, den))
    }

    pub fn i() -> Self {
        Scalar::Exact(GaussRat::i())
    }

    pub fn approx(re: f64, im: f64) -> Self {
        Scalar::Approx(Complex64::new(re, im))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::Exact(GaussRat::new(r, BigRational::zero()))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(g) => g.is_zero(),
            Scalar::Approx(c) => c.re == 0.0 && c.im == 0.0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Exact(g) => g.re.is_one() && g.im.is_zero(),
            Scalar::Approx(c) => c.re == 1.0 && c.im == 0.0,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Exact(g) => g.to_complex(),
            Scalar::Approx(c) => *c,
        }
    }

    /// Equality up to `eps` in the complex plane; exact pairs compare exactly.
    pub fn approx_eq(&self, other: &Scalar, eps: f64) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            _ => (self.to_complex() - other.to_complex()).norm() <= eps,
        }
    }

    /// Zero test with tolerance: exact values decide structurally,
    /// approximate values compare |x| against `eps`.
    pub fn is_zero_within(&self, eps: f64) -> bool {
        match self {
            Scalar::Exact(g) => g.is_zero(),
            Scalar::Approx(c) => c.norm() <= eps,
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Exact(g) => Ok(Scalar::Exact(g.inv()?)),
            Scalar::Approx(c) => {
                if c.re == 0.0 && c.im == 0.0 {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Approx(c.inv()))
                }
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, n: i64) -> Result<Scalar> {
        if n == 0 {
            return Ok(Scalar::one());
        }
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..n.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Principal square root. Exact values stay exact when the root is a
    /// Gaussian rational; exact negative reals are rejected so the caller
    /// must opt into approximate arithmetic deliberately; everything else
    /// degrades to an approximate principal root.
    pub fn sqrt_principal(&self) -> Result<Scalar> {
        match self {
            Scalar::Exact(g) if g.is_real() => {
                if g.re.is_negative() {
                    return Err(Error::BranchUndefined(format_rational(&g.re)));
                }
                match rat_is_perfect_square(&g.re) {
                    Some(root) => Ok(Scalar::from_rational(root)),
                    None => Ok(Scalar::Approx(Complex64::new(rat_to_f64(&g.re), 0.0).sqrt())),
                }
            }
            Scalar::Exact(g) => {
                // (x + yi)^2 = g  =>  x^2 = (re + |g|) / 2, y = im / (2x).
                let norm2 = &g.re * &g.re + &g.im * &g.im;
                if let Some(n) = rat_is_perfect_square(&norm2) {
                    let half = BigRational::new(BigInt::one(), BigInt::from(2));
                    let x2 = (&g.re + &n) * &half;
                    if let Some(x) = rat_is_perfect_square(&x2) {
                        if !x.is_zero() {
                            let y = &g.im / (&x * BigRational::from_integer(2.into()));
                            return Ok(Scalar::Exact(GaussRat::new(x, y)));
                        }
                    }
                }
                Ok(Scalar::Approx(g.to_complex().sqrt()))
            }
            Scalar::Approx(c) => Ok(Scalar::Approx(c.sqrt())),
        }
    }

    /// Scalar times integer, staying exact for exact input.
    pub fn mul_int(&self, n: i64) -> Scalar {
        self * &Scalar::int(n)
    }

    /// Exact rational value when the scalar is an exact real; `None` otherwise.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(g) if g.is_real() => Some(&g.re),
            _ => None,
        }
    }

    pub fn as_exact(&self) -> Option<&GaussRat> {
        match self {
            Scalar::Exact(g) => Some(g),
            _ => None,
        }
    }

    /// True when the value is an exact rational integer.
    pub fn is_integer(&self) -> bool {
        match self {
            Scalar::Exact(g) => g.is_real() && g.re.is_integer(),
            Scalar::Approx(_) => false,
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => {
                Scalar::Exact(GaussRat::new(&a.re + &b.re, &a.im + &b.im))
            }
            _ => Scalar::Approx(self.to_complex() + rhs.to_complex()),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => {
                Scalar::Exact(GaussRat::new(&a.re - &b.re, &a.im - &b.im))
            }
            _ => Scalar::Approx(self.to_complex() - rhs.to_complex()),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a.mul(b)),
            _ => Scalar::Approx(self.to_complex() * rhs.to_complex()),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(g) => Scalar::Exact(GaussRat::new(-&g.re, -&g.im)),
            Scalar::Approx(c) => Scalar::Approx(-c),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn format_float(x: f64) -> String {
    // `{}` on f64 is the shortest representation that round-trips.
    format!("{x}")
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(g) => {
                if g.im.is_zero() {
                    return write!(f, "{}", format_rational(&g.re));
                }
                let im_mag = g.im.abs();
                let im_part = if im_mag.is_one() {
                    "I".to_string()
                } else {
                    format!("{}*I", format_rational(&im_mag))
                };
                if g.re.is_zero() {
                    if g.im.is_negative() {
                        write!(f, "-{im_part}")
                    } else {
                        write!(f, "{im_part}")
                    }
                } else {
                    let sign = if g.im.is_negative() { '-' } else { '+' };
                    write!(f, "{}{}{}", format_rational(&g.re), sign, im_part)
                }
            }
            Scalar::Approx(c) => {
                if c.im == 0.0 {
                    write!(f, "{}", format_float(c.re))
                } else if c.re == 0.0 {
                    write!(f, "{}i", format_float(c.im))
                } else if c.im < 0.0 {
                    write!(f, "{}-{}i", format_float(c.re), format_float(-c.im))
                } else {
                    write!(f, "{}+{}i", format_float(c.re), format_float(c.im))
                }
            }
        }
    }
}

/// Serialized form keeps the exact/approximate distinction so JSON output
/// can be re-read without losing exactness.
impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(1))?;
        match self {
            Scalar::Exact(_) => map.serialize_entry("exact", &self.to_string())?,
            Scalar::Approx(c) => map.serialize_entry("approx", &[c.re, c.im])?,
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        enum Repr {
            #[serde(rename = "exact")]
            Exact(String),
            #[serde(rename = "approx")]
            Approx([f64; 2]),
        }
        match Repr::deserialize(d)? {
            Repr::Exact(text) => {
                parse_exact_scalar(&text).map_err(|e| serde::de::Error::custom(e.to_string()))
            }
            Repr::Approx([re, im]) => Ok(Scalar::approx(re, im)),
        }
    }
}

/// Parse the exact display form: `p/q`, `I`, `p/q*I`, `a+b*I`, `a-b*I`.
pub fn parse_exact_scalar(text: &str) -> Result<Scalar> {
    let s = text.trim();
    let err = |msg: &str| Error::Syntax {
        pos: 0,
        msg: format!("{msg} in scalar '{s}'"),
    };
    // Split a trailing imaginary part off at the last top-level +/- that is
    // not the leading sign.
    let bytes = s.as_bytes();
    let mut split = None;
    for (i, &b) in bytes.iter().enumerate().skip(1) {
        if b == b'+' || b == b'-' {
            split = Some(i);
        }
    }
    let parse_rat = |part: &str| -> Result<BigRational> {
        let part = part.trim();
        let (num, den) = match part.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (part, "1"),
        };
        let n: BigInt = num.parse().map_err(|_| err("bad numerator"))?;
        let d: BigInt = den.parse().map_err(|_| err("bad denominator"))?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(BigRational::new(n, d))
    };
    let parse_imag = |part: &str| -> Result<BigRational> {
        let part = part.trim();
        if part == "I" {
            return Ok(BigRational::one());
        }
        if part == "-I" {
            return Ok(-BigRational::one());
        }
        let coeff = part
            .strip_suffix("*I")
            .ok_or_else(|| err("expected imaginary part"))?;
        parse_rat(coeff)
    };
    if s.ends_with('I') {
        if let Some(at) = split {
            let (re_part, im_part) = s.split_at(at);
            let sign = if im_part.starts_with('-') { -1 } else { 1 };
            let im = parse_imag(&im_part[1..])?;
            let re = parse_rat(re_part)?;
            let im = if sign < 0 { -im } else { im };
            return Ok(Scalar::Exact(GaussRat::new(re, im)));
        }
        return Ok(Scalar::Exact(GaussRat::new(
            BigRational::zero(),
            parse_imag(s)?,
        )));
    }
    Ok(Scalar::from_rational(parse_rat(s)?))
}
