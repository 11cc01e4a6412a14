//! Exact scalar arithmetic: arbitrary-precision rationals, complex numbers
//! with rational parts, rising factorials, and membership tests for the
//! arithmetic progressions that index pole planes.
//!
//! All classification decisions in this crate (pole type, zero-set
//! membership, vanishing of a Pochhammer factor) are made here, exactly;
//! floating point only ever enters when a value is evaluated numerically.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

/// Exact rational scalar, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Convenience constructor for small rationals.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Complex number with exact rational real and imaginary parts.
///
/// Supports exact field arithmetic and exact comparison. The canonical text
/// form round-trips through [`fmt::Display`] and [`FromStr`]: `"3"`,
/// `"-1/2"`, `"i"`, `"-2/3i"`, `"1/2-2i"`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QComplex {
    pub re: Rational,
    pub im: Rational,
}

/// Failure to parse the canonical rational / complex-rational text form.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("empty numeric literal")]
    Empty,
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("malformed numeric literal `{0}`")]
    Malformed(String),
}

impl QComplex {
    pub fn new(re: Rational, im: Rational) -> Self {
        QComplex { re, im }
    }

    pub fn from_rational(re: Rational) -> Self {
        QComplex { re, im: Rational::zero() }
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_rational(Rational::from(BigInt::from(k)))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// True when the value is a rational integer (real with denominator 1).
    pub fn is_integer(&self) -> bool {
        self.is_real() && self.re.is_integer()
    }

    /// Exact reciprocal. Panics on zero, like integer division.
    pub fn recip(&self) -> Self {
        let n2 = &self.re * &self.re + &self.im * &self.im;
        assert!(!n2.is_zero(), "division by exact zero");
        QComplex { re: &self.re / &n2, im: -(&self.im / &n2) }
    }

    /// Nearest-double image of both parts.
    pub fn to_f64_parts(&self) -> (f64, f64) {
        (rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
}

/// Nearest double to an exact rational.
pub fn rational_to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

impl From<Rational> for QComplex {
    fn from(re: Rational) -> Self {
        Self::from_rational(re)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl<'a> $trait<&'a QComplex> for &'a QComplex {
            type Output = QComplex;
            fn $method(self, rhs: &'a QComplex) -> QComplex {
                $trait::$method(self.clone(), rhs.clone())
            }
        }
    };
}

impl Add for QComplex {
    type Output = QComplex;
    fn add(self, rhs: QComplex) -> QComplex {
        QComplex { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl Sub for QComplex {
    type Output = QComplex;
    fn sub(self, rhs: QComplex) -> QComplex {
        QComplex { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl Mul for QComplex {
    type Output = QComplex;
    fn mul(self, rhs: QComplex) -> QComplex {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        QComplex { re, im }
    }
}

impl Div for QComplex {
    type Output = QComplex;
    fn div(self, rhs: QComplex) -> QComplex {
        self * rhs.recip()
    }
}

impl Neg for QComplex {
    type Output = QComplex;
    fn neg(self) -> QComplex {
        QComplex { re: -self.re, im: -self.im }
    }
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

fn fmt_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl fmt::Display for QComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rational(&self.re));
        }
        let coeff = {
            let a = self.im.abs();
            if a.is_one() { String::new() } else { fmt_rational(&a) }
        };
        if self.re.is_zero() {
            let sign = if self.im.is_negative() { "-" } else { "" };
            write!(f, "{sign}{coeff}i")
        } else {
            let sign = if self.im.is_negative() { "-" } else { "+" };
            write!(f, "{}{sign}{coeff}i", fmt_rational(&self.re))
        }
    }
}

impl fmt::Debug for QComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QComplex({self})")
    }
}

/// Parses `"p"` or `"p/q"` (optionally signed) into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, ParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseError::Empty);
    }
    let (numer, denom) = match s.split_once('/') {
        None => (s, "1"),
        Some((n, d)) => (n, d),
    };
    let numer = BigInt::from_str(numer).map_err(|_| ParseError::Malformed(s.to_string()))?;
    let denom = BigInt::from_str(denom).map_err(|_| ParseError::Malformed(s.to_string()))?;
    if denom.is_zero() {
        return Err(ParseError::ZeroDenominator(s.to_string()));
    }
    Ok(Rational::new(numer, denom))
}

impl FromStr for QComplex {
    type Err = ParseError;

    /// Accepts the canonical form `re`, `imi`, or `re±imi`, where each part
    /// is `p` or `p/q`; a bare `i` means coefficient 1. The U+2212 minus
    /// sign is accepted as `-`.
    fn from_str(input: &str) -> Result<Self, ParseError> {
        let s = input.trim().replace('\u{2212}', "-");
        if s.is_empty() {
            return Err(ParseError::Empty);
        }
        // Split before the sign that separates real and imaginary parts, if any.
        let bytes = s.as_bytes();
        let mut split = None;
        for (i, &b) in bytes.iter().enumerate().skip(1) {
            if (b == b'+' || b == b'-') && bytes[i - 1] != b'/' && bytes[i - 1] != b'+' && bytes[i - 1] != b'-' {
                if split.is_some() {
                    return Err(ParseError::Malformed(input.to_string()));
                }
                split = Some(i);
            }
        }
        let parse_imag = |part: &str| -> Result<Rational, ParseError> {
            let body = part.strip_suffix('i').expect("imaginary part ends in i");
            match body {
                "" | "+" => Ok(Rational::one()),
                "-" => Ok(-Rational::one()),
                _ => parse_rational(body),
            }
        };
        match split {
            None => {
                if s.ends_with('i') {
                    Ok(QComplex { re: Rational::zero(), im: parse_imag(&s)? })
                } else {
                    Ok(QComplex::from_rational(parse_rational(&s)?))
                }
            }
            Some(i) => {
                let (re_part, im_part) = (&s[..i], &s[i..]);
                if re_part.ends_with('i') || !im_part.ends_with('i') {
                    return Err(ParseError::Malformed(input.to_string()));
                }
                Ok(QComplex { re: parse_rational(re_part)?, im: parse_imag(im_part)? })
            }
        }
    }
}

/// Exact rising factorial `(x)_m = x (x+1) ⋯ (x+m−1)`, with `(x)_0 = 1`.
///
/// `(x)_m` vanishes exactly when `x` is a nonpositive integer and `m > −x`.
pub fn pochhammer_exact(x: &QComplex, m: u32) -> QComplex {
    let mut acc = QComplex::one();
    let mut term = x.clone();
    for _ in 0..m {
        acc = acc * term.clone();
        if acc.is_zero() {
            return acc;
        }
        term.re += Rational::one();
    }
    acc
}

/// Membership test for the arithmetic progression `base, base+step, …`:
/// returns `k` such that `x = base + k·step` for `k ∈ ℕ`, or `None`.
///
/// `x` must be real for a hit; `step` must be nonzero.
pub fn progression_index(x: &QComplex, base: &Rational, step: &Rational) -> Option<u64> {
    assert!(!step.is_zero(), "progression step must be nonzero");
    if !x.is_real() {
        return None;
    }
    let q = (&x.re - base) / step;
    if !q.is_integer() || q.is_negative() {
        return None;
    }
    q.to_integer().to_u64()
}

/// Smallest-denominator rational within `tol` of `x`.
///
/// Returns `None` for non-finite `x` or a nonsensical tolerance. This is the
/// only sanctioned route from floating input into the exact layer; callers
/// must pass the tolerance explicitly.
pub fn snap_f64(x: f64, tol: f64) -> Option<Rational> {
    if !x.is_finite() || !(tol > 0.0 && tol < 0.5) {
        return None;
    }
    let negative = x < 0.0;
    let x = x.abs();
    let floor = x.floor();
    let frac = x - floor;
    let whole = Rational::from_float(floor)?;
    let restore = |r: Rational| if negative { -r } else { r };
    if frac <= tol {
        return Some(restore(whole));
    }
    if frac >= 1.0 - tol {
        return Some(restore(whole + Rational::one()));
    }
    let (n, d) = simplest_in_interval(frac - tol, frac + tol, 64)?;
    Some(restore(whole + Rational::new(BigInt::from(n), BigInt::from(d))))
}

/// Smallest-denominator fraction inside `[lo, hi] ⊂ (0, 1)`, by descending
/// the continued-fraction tree of the interval.
fn simplest_in_interval(lo: f64, hi: f64, depth: u32) -> Option<(u64, u64)> {
    if depth == 0 || !(0.0 < lo && lo <= hi) {
        return None;
    }
    let ceil_lo = lo.ceil();
    if ceil_lo <= hi {
        return Some((ceil_lo as u64, 1));
    }
    let fl = lo.floor();
    // No integer inside: recurse on the reciprocal of the fractional interval;
    // x = fl + 1/y maps y-intervals back monotonically.
    let (n, d) = simplest_in_interval(1.0 / (hi - fl), 1.0 / (lo - fl), depth - 1)?;
    Some(((fl as u64).checked_mul(n)?.checked_add(d)?, n))
}

/// Snaps both components of a complex double; see [`snap_f64`].
pub fn snap_complex_f64(re: f64, im: f64, tol: f64) -> Option<QComplex> {
    Some(QComplex { re: snap_f64(re, tol)?, im: snap_f64(im, tol)? })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QComplex {
        s.parse().unwrap()
    }

    #[test]
    fn pochhammer_small_cases() {
        assert_eq!(pochhammer_exact(&q("3/2"), 3), q("105/8")); // 1.5 · 2.5 · 3.5
        assert_eq!(pochhammer_exact(&q("-2"), 3), QComplex::zero());
        assert_eq!(pochhammer_exact(&q("-2"), 2), q("2"));
        assert_eq!(pochhammer_exact(&q("7"), 0), QComplex::one());
        assert_eq!(pochhammer_exact(&q("i"), 2), q("-1+i")); // i(i+1)
    }

    #[test]
    fn pochhammer_vanishes_iff_nonpositive_integer_reached() {
        for x in -5i64..=3 {
            for m in 0u32..=8 {
                let v = pochhammer_exact(&QComplex::from_int(x), m);
                let should_vanish = x <= 0 && i64::from(m) > -x;
                assert_eq!(v.is_zero(), should_vanish, "x={x} m={m}");
            }
        }
    }

    #[test]
    fn progression_membership() {
        // -7 = -3 + 2·(-2)
        assert_eq!(progression_index(&q("-7"), &rat(-3, 1), &rat(-2, 1)), Some(2));
        assert_eq!(progression_index(&q("-4"), &rat(-3, 1), &rat(-2, 1)), None);
        assert_eq!(progression_index(&q("-3"), &rat(-3, 1), &rat(-2, 1)), Some(0));
        // Going the wrong way along the progression is not membership.
        assert_eq!(progression_index(&q("-1"), &rat(-3, 1), &rat(-2, 1)), None);
        // Non-real never belongs.
        assert_eq!(progression_index(&q("-7+i"), &rat(-3, 1), &rat(-2, 1)), None);
        // Fractional steps.
        assert_eq!(progression_index(&q("5/2"), &rat(1, 2), &rat(1, 1)), Some(2));
        assert_eq!(progression_index(&q("1/3"), &rat(1, 2), &rat(1, 1)), None);
    }

    #[test]
    fn display_canonical_forms() {
        for (input, canon) in [
            ("3", "3"),
            ("-3", "-3"),
            ("1/2", "1/2"),
            ("-1/2", "-1/2"),
            ("i", "i"),
            ("-i", "-i"),
            ("2i", "2i"),
            ("-2/3i", "-2/3i"),
            ("1/2-2i", "1/2-2i"),
            ("3+i", "3+i"),
            ("3-i", "3-i"),
            ("0", "0"),
            ("2/4", "1/2"),
            ("\u{2212}3", "-3"),
        ] {
            assert_eq!(q(input).to_string(), canon, "input {input}");
        }
    }

    #[test]
    fn parse_rejects_malformed_input() {
        for bad in ["", "1/0", "2x", "1+2", "i3", "++2", "1+2i+3i", "1i+2"] {
            assert!(bad.parse::<QComplex>().is_err(), "{bad} should not parse");
        }
    }

    #[test]
    fn arithmetic_is_exact() {
        let a = q("1/3+1/7i");
        let b = q("2/3-1/7i");
        assert_eq!((&a + &b).to_string(), "1");
        assert_eq!((&a * &b).recip() * (&a * &b), QComplex::one());
        let third = QComplex::from_int(1) / QComplex::from_int(3);
        assert_eq!(third + q("2/3"), QComplex::one());
    }

    #[test]
    fn snapping_prefers_small_denominators() {
        assert_eq!(snap_f64(0.5, 1e-9), Some(rat(1, 2)));
        assert_eq!(snap_f64(-1.5, 1e-9), Some(rat(-3, 2)));
        assert_eq!(snap_f64(1.0 / 3.0, 1e-9), Some(rat(1, 3)));
        assert_eq!(snap_f64(0.2499999999, 1e-6), Some(rat(1, 4)));
        // Not within tol of any small-denominator rational: stays fine-grained.
        assert_eq!(snap_f64(0.3333, 1e-9), Some(rat(3333, 10000)));
        assert_eq!(snap_f64(4.0, 1e-9), Some(rat(4, 1)));
        assert_eq!(snap_f64(f64::NAN, 1e-9), None);
    }
}
