//! Rays, salient cones and `GL(2, Z)` actions on the rank-two Neron-Severi plane.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::qfield::{self, QfError, Rat, QF};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeoError {
    #[error("zero vector does not span a ray")]
    ZeroRay,
    #[error("degenerate cone: boundary rays {0} and {1} are equal or opposite")]
    DegenerateCone(Box<Ray>, Box<Ray>),
    #[error("matrix determinant {0} is not +1 or -1")]
    BadDeterminant(BigInt),
    #[error("irrational eigenvalues live in Q(sqrt({discriminant_part})), not Q(sqrt({field}))")]
    FieldMismatch { discriminant_part: String, field: u64 },
    #[error("cannot parse `{0}`")]
    Parse(String),
    #[error(transparent)]
    Arith(#[from] QfError),
}

/// An exact vector in the plane, not normalized.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vec2 {
    pub u: QF,
    pub v: QF,
}

impl Vec2 {
    pub fn new(u: QF, v: QF) -> Result<Vec2, GeoError> {
        if u.d() != v.d() {
            return Err(QfError::FieldMismatch(u.d(), v.d()).into());
        }
        Ok(Vec2 { u, v })
    }

    pub fn from_ints(u: i64, v: i64, d: u64) -> Vec2 {
        Vec2 { u: QF::from_int(u, d), v: QF::from_int(v, d) }
    }

    pub fn d(&self) -> u64 {
        self.u.d()
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn add(&self, other: &Vec2) -> Vec2 {
        Vec2 { u: &self.u + &other.u, v: &self.v + &other.v }
    }

    pub fn scale(&self, s: &QF) -> Vec2 {
        Vec2 { u: &self.u * s, v: &self.v * s }
    }

    pub fn cross(&self, other: &Vec2) -> QF {
        &self.u * &other.v - &self.v * &other.u
    }

    /// Integer coordinates, when both coordinates are integers.
    pub fn integral(&self) -> Option<(BigInt, BigInt)> {
        Some((self.u.to_integer()?, self.v.to_integer()?))
    }

    pub fn ray(&self) -> Result<Ray, GeoError> {
        Ray::new(self.u.clone(), self.v.clone())
    }

    /// Parses `"(qf, qf)"`.
    pub fn parse(text: &str, d: u64) -> Result<Vec2, GeoError> {
        let inner = text
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| GeoError::Parse(text.to_string()))?;
        let (u, v) = inner.split_once(',').ok_or_else(|| GeoError::Parse(text.to_string()))?;
        Vec2::new(QF::parse(u, d)?, QF::parse(v, d)?)
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

/// A ray `R_+ (u, v)`, stored in canonical scale: the first nonzero
/// coordinate has absolute value one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ray {
    u: QF,
    v: QF,
}

impl Ray {
    pub fn new(u: QF, v: QF) -> Result<Ray, GeoError> {
        if u.d() != v.d() {
            return Err(QfError::FieldMismatch(u.d(), v.d()).into());
        }
        let lead = if !u.is_zero() {
            u.abs()
        } else if !v.is_zero() {
            v.abs()
        } else {
            return Err(GeoError::ZeroRay);
        };
        if lead.is_one() {
            return Ok(Ray { u, v });
        }
        let inv = lead.inv()?;
        Ok(Ray { u: &u * &inv, v: &v * &inv })
    }

    pub fn from_ints(u: i64, v: i64, d: u64) -> Result<Ray, GeoError> {
        Ray::new(QF::from_int(u, d), QF::from_int(v, d))
    }

    pub fn parse(text: &str, d: u64) -> Result<Ray, GeoError> {
        Vec2::parse(text, d)?.ray()
    }

    pub fn u(&self) -> &QF {
        &self.u
    }

    pub fn v(&self) -> &QF {
        &self.v
    }

    pub fn d(&self) -> u64 {
        self.u.d()
    }

    /// Canonical representative as a vector.
    pub fn vector(&self) -> Vec2 {
        Vec2 { u: self.u.clone(), v: self.v.clone() }
    }

    pub fn opposite(&self) -> Ray {
        Ray { u: -&self.u, v: -&self.v }
    }

    pub fn is_rational(&self) -> bool {
        self.u.is_rational() && self.v.is_rational()
    }

    /// Primitive integral generator, for rational rays only.
    pub fn primitive_integral(&self) -> Option<(BigInt, BigInt)> {
        if !self.is_rational() {
            return None;
        }
        let (pu, pv) = (self.u.a(), self.v.a());
        let l = pu.denom().lcm(pv.denom());
        let iu = (pu * Rat::from_integer(l.clone())).to_integer();
        let iv = (pv * Rat::from_integer(l)).to_integer();
        let g = iu.gcd(&iv);
        Some((iu / &g, iv / &g))
    }

    /// Primitive integral vector for rational rays, canonical vector otherwise.
    pub fn preferred_vector(&self) -> Vec2 {
        match self.primitive_integral() {
            Some((u, v)) => Vec2 { u: QF::from_bigint(&u, self.d()), v: QF::from_bigint(&v, self.d()) },
            None => self.vector(),
        }
    }
}

/// Rational rays print as primitive integral vectors, irrational ones in canonical scale.
impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.primitive_integral() {
            Some((u, v)) => write!(f, "({u}, {v})"),
            None => write!(f, "({}, {})", self.u, self.v),
        }
    }
}

/// `u_p v_q - v_p u_q` on canonical representatives.
pub fn cross(p: &Ray, q: &Ray) -> QF {
    &p.u * &q.v - &p.v * &q.u
}

pub fn is_rational_ray(p: &Ray) -> bool {
    p.is_rational()
}

/// A closed, salient, two-dimensional cone oriented so that `cross(r1, r2) > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cone2 {
    r1: Ray,
    r2: Ray,
}

impl Cone2 {
    /// Builds the cone spanned by two rays in either order.
    pub fn new(a: Ray, b: Ray) -> Result<Cone2, GeoError> {
        if a.d() != b.d() {
            return Err(QfError::FieldMismatch(a.d(), b.d()).into());
        }
        match cross(&a, &b).sign() {
            1 => Ok(Cone2 { r1: a, r2: b }),
            -1 => Ok(Cone2 { r1: b, r2: a }),
            _ => Err(GeoError::DegenerateCone(Box::new(a), Box::new(b))),
        }
    }

    pub fn from_vectors(a: &Vec2, b: &Vec2) -> Result<Cone2, GeoError> {
        Cone2::new(a.ray()?, b.ray()?)
    }

    pub fn r1(&self) -> &Ray {
        &self.r1
    }

    pub fn r2(&self) -> &Ray {
        &self.r2
    }

    pub fn d(&self) -> u64 {
        self.r1.d()
    }

    pub fn rays(&self) -> [&Ray; 2] {
        [&self.r1, &self.r2]
    }

    pub fn has_boundary_ray(&self, p: &Ray) -> bool {
        self.r1 == *p || self.r2 == *p
    }

    pub fn contains(&self, p: &Ray, strict: bool) -> bool {
        cone_contains(self, p, strict)
    }

    /// `other` is a subset of `self`.
    pub fn contains_cone(&self, other: &Cone2) -> bool {
        self.contains(&other.r1, false) && self.contains(&other.r2, false)
    }

    /// `other` lies in the interior of `self` away from the origin.
    pub fn contains_cone_strictly(&self, other: &Cone2) -> bool {
        self.contains(&other.r1, true) && self.contains(&other.r2, true)
    }
}

impl fmt::Display for Cone2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cone[{}, {}]", self.r1, self.r2)
    }
}

pub fn cone_contains(c: &Cone2, p: &Ray, strict: bool) -> bool {
    let s1 = cross(&c.r1, p).sign();
    let s2 = cross(p, &c.r2).sign();
    if strict {
        s1 > 0 && s2 > 0
    } else {
        s1 >= 0 && s2 >= 0
    }
}

/// Angular order of two rays that lie in a common salient cone.
pub fn angular_cmp(p: &Ray, q: &Ray) -> Ordering {
    // q counter-clockwise of p means p < q
    0.cmp(&cross(p, q).sign())
}

/// A 2x2 integer matrix with determinant +1 or -1, acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatMat {
    m: [[BigInt; 2]; 2],
}

impl LatMat {
    pub fn new(m: [[BigInt; 2]; 2]) -> Result<LatMat, GeoError> {
        let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
        if det.abs().is_one() {
            Ok(LatMat { m })
        } else {
            Err(GeoError::BadDeterminant(det))
        }
    }

    /// Row-major quadruple.
    pub fn from_rows(a: i64, b: i64, c: i64, d: i64) -> Result<LatMat, GeoError> {
        LatMat::new([[a.into(), b.into()], [c.into(), d.into()]])
    }

    pub fn identity() -> LatMat {
        LatMat { m: [[BigInt::one(), BigInt::zero()], [BigInt::zero(), BigInt::one()]] }
    }

    pub fn entries(&self) -> &[[BigInt; 2]; 2] {
        &self.m
    }

    pub fn det(&self) -> i8 {
        let det = &self.m[0][0] * &self.m[1][1] - &self.m[0][1] * &self.m[1][0];
        if det.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn trace(&self) -> BigInt {
        &self.m[0][0] + &self.m[1][1]
    }

    pub fn is_identity(&self) -> bool {
        *self == LatMat::identity()
    }

    pub fn mul(&self, other: &LatMat) -> LatMat {
        let (a, b) = (&self.m, &other.m);
        let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
        LatMat { m: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]] }
    }

    pub fn inverse(&self) -> LatMat {
        let m = &self.m;
        let s = BigInt::from(self.det());
        LatMat { m: [[&s * &m[1][1], -(&s * &m[0][1])], [-(&s * &m[1][0]), &s * &m[0][0]]] }
    }

    /// Integer power; negative exponents use the inverse.
    pub fn pow(&self, e: i64) -> LatMat {
        let mut base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = LatMat::identity();
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    pub fn apply_vec(&self, p: &Vec2) -> Vec2 {
        let m = &self.m;
        Vec2 { u: p.u.mul_int(&m[0][0]) + p.v.mul_int(&m[0][1]), v: p.u.mul_int(&m[1][0]) + p.v.mul_int(&m[1][1]) }
    }

    /// Parses a row-major quadruple `"[a, b, c, d]"` (brackets optional).
    pub fn parse(text: &str) -> Result<LatMat, GeoError> {
        let err = || GeoError::Parse(text.to_string());
        let t = text.trim();
        let t = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')).unwrap_or(t);
        let parts: Vec<BigInt> = t
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<BigInt>().map_err(|_| err()))
            .collect::<Result<_, _>>()?;
        let [a, b, c, d]: [BigInt; 4] = parts.try_into().map_err(|_| err())?;
        LatMat::new([[a, b], [c, d]])
    }
}

/// Row-major quadruple `[a, b, c, d]`.
impl fmt::Display for LatMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.m;
        write!(f, "[{}, {}, {}, {}]", m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

pub fn apply(m: &LatMat, p: &Ray) -> Ray {
    m.apply_vec(&p.vector()).ray().expect("invertible matrix maps rays to rays")
}

pub fn apply_cone(m: &LatMat, c: &Cone2) -> Cone2 {
    Cone2::new(apply(m, &c.r1), apply(m, &c.r2)).expect("invertible matrix keeps cones salient")
}

/// Exact eigen data of a lattice matrix.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EigenData {
    /// Eigenvalues in descending order with matching eigenrays. Repeated
    /// eigenvalues of a non-scalar matrix repeat their single eigenray.
    Real { values: [QF; 2], rays: [Ray; 2] },
    /// Complex-conjugate eigenvalues (finite-order rotation type).
    NonReal,
}

/// Picks the eigenvector sign with `u + v > 0`, or `u > 0` on the anti-diagonal.
fn oriented_eigenray(u: QF, v: QF) -> Ray {
    let s = (&u + &v).sign();
    let flip = s < 0 || (s == 0 && u.sign() < 0);
    let (u, v) = if flip { (-u, -v) } else { (u, v) };
    Ray::new(u, v).expect("eigenvector is nonzero")
}

pub fn eigen_data(m: &LatMat, d: u64) -> Result<EigenData, GeoError> {
    let e = &m.m;
    let tr = m.trace();
    let det = BigInt::from(m.det());
    let disc = &tr * &tr - BigInt::from(4) * &det;
    if disc.is_negative() {
        return Ok(EigenData::NonReal);
    }
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    let tr_half = Rat::from_integer(tr) * &half;
    let root = if let Some(s) = qfield::exact_sqrt(&disc) {
        QF::rational(Rat::from_integer(s) * &half, d)
    } else if let Some(s) = qfield::sqrt_over_field(&disc, d) {
        QF::new(Rat::zero(), Rat::from_integer(s) * &half, d)
    } else {
        return Err(GeoError::FieldMismatch { discriminant_part: disc.to_string(), field: d });
    };
    let center = QF::rational(tr_half, d);
    let values = [&center + &root, &center - &root];
    let (a, b, c, dd) = (&e[0][0], &e[0][1], &e[1][0], &e[1][1]);
    let ray_for = |lambda: &QF| -> Ray {
        if !c.is_zero() {
            oriented_eigenray(lambda - &QF::from_bigint(dd, d), QF::from_bigint(c, d))
        } else if !b.is_zero() {
            oriented_eigenray(QF::from_bigint(b, d), lambda - &QF::from_bigint(a, d))
        } else if *lambda == QF::from_bigint(a, d) {
            Ray::from_ints(1, 0, d).unwrap()
        } else {
            Ray::from_ints(0, 1, d).unwrap()
        }
    };
    let rays = if b.is_zero() && c.is_zero() && a == dd {
        [Ray::from_ints(1, 0, d).unwrap(), Ray::from_ints(0, 1, d).unwrap()]
    } else {
        [ray_for(&values[0]), ray_for(&values[1])]
    };
    Ok(EigenData::Real { values, rays })
}

/// Scalar `lambda` with `m * ray = lambda * ray`, if the ray is fixed.
pub fn ray_eigenvalue(m: &LatMat, p: &Ray) -> Option<QF> {
    let image = m.apply_vec(&p.vector());
    let v = p.vector();
    if !image.cross(&v).is_zero() {
        return None;
    }
    let lambda = if !v.u.is_zero() { &image.u / &v.u } else { &image.v / &v.v };
    Some(lambda)
}
