//! Exact arithmetic in a real quadratic field `Q(sqrt(d))`.
//!
//! Every coordinate and eigenvalue in this crate is a [`QF`] value
//! `a + b*sqrt(d)` with rational `a`, `b` and a square-free `d >= 2`.
//! Values only interoperate when they share the same `d`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Reduced arbitrary-precision rational. `BigRational` keeps itself reduced
/// with a positive denominator after every operation.
pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QfError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: sqrt({0}) vs sqrt({1})")]
    FieldMismatch(u64, u64),
    #[error("{0} is not a square-free integer >= 2")]
    NotSquareFree(u64),
    #[error("cannot parse quadratic number `{0}`")]
    Parse(String),
}

/// Returns true when `d >= 2` has no square factor.
pub fn is_square_free(d: u64) -> bool {
    if d < 2 {
        return false;
    }
    let mut n = d;
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Gate check for the field constant shared by a scenario.
pub fn check_field(d: u64) -> Result<u64, QfError> {
    if is_square_free(d) {
        Ok(d)
    } else {
        Err(QfError::NotSquareFree(d))
    }
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Sign of a rational as -1, 0 or +1.
pub fn rat_sign(r: &Rat) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// An element `a + b*sqrt(d)` of `Q(sqrt(d))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QF {
    a: Rat,
    b: Rat,
    d: u64,
}

impl QF {
    /// Caller guarantees `d` is square-free; see [`check_field`].
    pub fn new(a: Rat, b: Rat, d: u64) -> Self {
        debug_assert!(is_square_free(d), "d = {d} must be square-free");
        QF { a, b, d }
    }

    pub fn rational(a: Rat, d: u64) -> Self {
        QF::new(a, Rat::zero(), d)
    }

    pub fn from_int(n: i64, d: u64) -> Self {
        QF::rational(rat_int(n), d)
    }

    pub fn from_bigint(n: &BigInt, d: u64) -> Self {
        QF::rational(Rat::from_integer(n.clone()), d)
    }

    /// `p + q*sqrt(d)` with integer parts.
    pub fn from_ints(p: i64, q: i64, d: u64) -> Self {
        QF::new(rat_int(p), rat_int(q), d)
    }

    pub fn zero(d: u64) -> Self {
        QF::rational(Rat::zero(), d)
    }

    pub fn one(d: u64) -> Self {
        QF::from_int(1, d)
    }

    pub fn sqrt_d(d: u64) -> Self {
        QF::new(Rat::zero(), Rat::one(), d)
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// `Some(n)` when the value is an ordinary integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        if self.b.is_zero() && self.a.is_integer() {
            Some(self.a.to_integer())
        } else {
            None
        }
    }

    fn same_field(&self, other: &QF) -> Result<(), QfError> {
        if self.d == other.d {
            Ok(())
        } else {
            Err(QfError::FieldMismatch(self.d, other.d))
        }
    }

    fn d_rat(&self) -> Rat {
        Rat::from_integer(BigInt::from(self.d))
    }

    pub fn checked_add(&self, other: &QF) -> Result<QF, QfError> {
        self.same_field(other)?;
        Ok(QF::new(&self.a + &other.a, &self.b + &other.b, self.d))
    }

    pub fn checked_sub(&self, other: &QF) -> Result<QF, QfError> {
        self.same_field(other)?;
        Ok(QF::new(&self.a - &other.a, &self.b - &other.b, self.d))
    }

    pub fn checked_mul(&self, other: &QF) -> Result<QF, QfError> {
        self.same_field(other)?;
        let a = &self.a * &other.a + &self.b * &other.b * self.d_rat();
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(QF::new(a, b, self.d))
    }

    pub fn checked_div(&self, other: &QF) -> Result<QF, QfError> {
        self.same_field(other)?;
        let inv = other.inv()?;
        self.checked_mul(&inv)
    }

    pub fn conj(&self) -> QF {
        QF::new(self.a.clone(), -self.b.clone(), self.d)
    }

    /// `a^2 - d*b^2`.
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - &self.b * &self.b * self.d_rat()
    }

    /// `2a`, the sum of the value and its conjugate.
    pub fn trace(&self) -> Rat {
        &self.a + &self.a
    }

    /// `conj(x) / norm(x)`.
    pub fn inv(&self) -> Result<QF, QfError> {
        let n = self.norm();
        // norm vanishes only at zero since d is not a square
        if n.is_zero() {
            return Err(QfError::DivisionByZero);
        }
        Ok(QF::new(&self.a / &n, -(&self.b / &n), self.d))
    }

    pub fn mul_rat(&self, r: &Rat) -> QF {
        QF::new(&self.a * r, &self.b * r, self.d)
    }

    pub fn mul_int(&self, n: &BigInt) -> QF {
        self.mul_rat(&Rat::from_integer(n.clone()))
    }

    /// Degree of the minimal polynomial over `Q`: 1 for rationals, else 2.
    pub fn minimal_poly_degree(&self) -> u8 {
        if self.b.is_zero() {
            1
        } else {
            2
        }
    }

    /// Exact sign of the real number `a + b*sqrt(d)`.
    pub fn sign(&self) -> i8 {
        let sa = rat_sign(&self.a);
        let sb = rat_sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * self.d_rat();
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            // equality would make d a rational square
            Ordering::Equal => unreachable!("a^2 = d*b^2 with square-free d"),
        }
    }

    pub fn abs(&self) -> QF {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<QF, QfError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = QF::one(self.d);
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Exact comparison as real numbers.
    pub fn cmp_exact(&self, other: &QF) -> Result<Ordering, QfError> {
        let diff = self.checked_sub(other)?;
        Ok(diff.sign().cmp(&0))
    }

    /// Floating-point approximation; only used for rendering and test cross-checks.
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.d as f64).sqrt()
    }

    /// Parses the canonical text form `p/q+r/s*sqrt(d)`.
    ///
    /// Also accepted: plain rationals, `sqrt(d)` without a coefficient, a
    /// leading sign, and whitespace anywhere. The radicand must equal `d`.
    pub fn parse(text: &str, d: u64) -> Result<QF, QfError> {
        let (a, b, radicand) = parse_parts(text)?;
        match radicand {
            Some(r) if r != d => Err(QfError::FieldMismatch(r, d)),
            _ => Ok(QF::new(a, b, d)),
        }
    }
}

fn parse_rat(s: &str, whole: &str) -> Result<Rat, QfError> {
    let err = || QfError::Parse(whole.to_string());
    let s = s.strip_prefix('+').unwrap_or(s);
    if s.is_empty() {
        return Err(err());
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|c| c.is_ascii_digit());
    let (num, den) = match body.split_once('/') {
        Some((n, q)) if digits(n) && digits(q) => (n, q),
        None if digits(body) => (body, "1"),
        _ => return Err(err()),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    let r = Rat::new(num, den);
    Ok(if neg { -r } else { r })
}

/// Splits a textual quadratic number into `(a, b, radicand)`.
pub(crate) fn parse_parts(text: &str) -> Result<(Rat, Rat, Option<u64>), QfError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let err = || QfError::Parse(text.to_string());
    let Some(idx) = s.find("sqrt(") else {
        return Ok((parse_rat(&s, text)?, Rat::zero(), None));
    };
    let tail = &s[idx + 5..];
    let radicand =
        tail.strip_suffix(')').filter(|r| !r.is_empty() && r.bytes().all(|c| c.is_ascii_digit())).ok_or_else(err)?;
    let radicand: u64 = radicand.parse().map_err(|_| err())?;
    let prefix = &s[..idx];
    // split prefix into the rational term and the surd coefficient
    let (rational_part, coeff) = if let Some(head) = prefix.strip_suffix('*') {
        let cut = head.char_indices().skip(1).filter(|&(_, c)| c == '+' || c == '-').map(|(i, _)| i).last();
        match cut {
            Some(i) => (&head[..i], parse_rat(&head[i..], text)?),
            None => ("", parse_rat(head, text)?),
        }
    } else {
        match prefix.chars().last() {
            None => ("", Rat::one()),
            Some('+') => (&prefix[..prefix.len() - 1], Rat::one()),
            Some('-') => (&prefix[..prefix.len() - 1], -Rat::one()),
            Some(_) => return Err(err()),
        }
    };
    let a = if rational_part.is_empty() { Rat::zero() } else { parse_rat(rational_part, text)? };
    if !is_square_free(radicand) {
        return Err(QfError::NotSquareFree(radicand));
    }
    Ok((a, coeff, Some(radicand)))
}

impl fmt::Display for QF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let mag = self.b.abs();
        let coeff = if mag.is_one() { String::new() } else { format!("{mag}*") };
        let neg = self.b.is_negative();
        if self.a.is_zero() {
            write!(f, "{}{coeff}sqrt({})", if neg { "-" } else { "" }, self.d)
        } else {
            let op = if neg { '-' } else { '+' };
            write!(f, "{}{op}{coeff}sqrt({})", self.a, self.d)
        }
    }
}

impl PartialOrd for QF {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.cmp_exact(other).ok()
    }
}

// Operator impls panic on mismatched fields; use the `checked_*` methods for
// values of unknown provenance.
macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a QF> for &'a QF {
            type Output = QF;
            fn $method(self, rhs: &'a QF) -> QF {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<QF> for QF {
            type Output = QF;
            fn $method(self, rhs: QF) -> QF {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a QF> for QF {
            type Output = QF;
            fn $method(self, rhs: &'a QF) -> QF {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl Neg for &QF {
    type Output = QF;
    fn neg(self) -> QF {
        QF::new(-self.a.clone(), -self.b.clone(), self.d)
    }
}

impl Neg for QF {
    type Output = QF;
    fn neg(self) -> QF {
        -&self
    }
}

/// Integer square root when `n` is a perfect square.
pub(crate) fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// `Some(s)` when `n = d * s^2` with `s >= 0`.
pub(crate) fn sqrt_over_field(n: &BigInt, d: u64) -> Option<BigInt> {
    let d = BigInt::from(d);
    let (q, r) = n.div_rem(&d);
    if !r.is_zero() {
        return None;
    }
    exact_sqrt(&q)
}
