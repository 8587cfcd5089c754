//! Intersection-form and Chern-class obstructions forced by an infinite-order
//! cone action.
//!
//! Forms live on a chosen basis `{x1, x2}` of the plane. When that basis is
//! the pair of boundary rays fixed by a hyperbolic `f` with `f x1 = a x1`,
//! `f x2 = a^-1 x2`, invariance scales the monomial `x1^m x2^(n-m)` by
//! `a^(2m-n)`, so every coefficient away from the middle must vanish.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::conegeo::{Cone2, LatMat, Vec2};
use crate::qfield::QF;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChernError {
    #[error("alpha = {0} is rational; an infinite-order action needs an irrational scaling factor")]
    AlphaRational(Box<QF>),
    #[error("alpha = {0} is not greater than one")]
    AlphaNotExpanding(Box<QF>),
    #[error("dimension {0} is odd; odd dimensions are handled by the finiteness criterion")]
    OddDimension(u32),
    #[error("form degree must be at least 2, got {0}")]
    DegreeTooSmall(u32),
    #[error("form of degree {n} needs {} coefficients, got {got}", n + 1)]
    CoefficientCount { n: u32, got: usize },
    #[error("off-middle coefficient of x1^{0} x2^(n-{0}) is nonzero")]
    OffMiddleTerm(u32),
    #[error("basis vectors are linearly dependent")]
    SingularBasis,
    #[error("mixed quadratic fields in form data")]
    FieldMismatch,
}

fn check_alpha(alpha: &QF) -> Result<(), ChernError> {
    if alpha.minimal_poly_degree() == 1 {
        return Err(ChernError::AlphaRational(Box::new(alpha.clone())));
    }
    if alpha.cmp_exact(&QF::one(alpha.d())).map_err(|_| ChernError::FieldMismatch)?.is_le() {
        return Err(ChernError::AlphaNotExpanding(Box::new(alpha.clone())));
    }
    Ok(())
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Symmetric `n`-linear intersection data: `coeffs[m]` is `x1^m . x2^(n-m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymForm {
    n: u32,
    coeffs: Vec<QF>,
}

impl SymForm {
    pub fn new(n: u32, coeffs: Vec<QF>) -> Result<SymForm, ChernError> {
        if n < 2 {
            return Err(ChernError::DegreeTooSmall(n));
        }
        if coeffs.len() != n as usize + 1 {
            return Err(ChernError::CoefficientCount { n, got: coeffs.len() });
        }
        let d = coeffs[0].d();
        if coeffs.iter().any(|c| c.d() != d) {
            return Err(ChernError::FieldMismatch);
        }
        Ok(SymForm { n, coeffs })
    }

    pub fn zero(n: u32, d: u64) -> SymForm {
        SymForm { n, coeffs: vec![QF::zero(d); n as usize + 1] }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> u64 {
        self.coeffs[0].d()
    }

    pub fn coeff(&self, m: u32) -> &QF {
        &self.coeffs[m as usize]
    }

    pub fn coeffs(&self) -> &[QF] {
        &self.coeffs
    }

    /// `F o M` for `M` written in the form's basis (columns are the images of `x1`, `x2`).
    pub fn pullback(&self, m: &[[QF; 2]; 2]) -> SymForm {
        let n = self.n;
        let (p, q) = (&m[0][0], &m[1][0]);
        let (r, s) = (&m[0][1], &m[1][1]);
        let d = self.d();
        let powers = |x: &QF| -> Vec<QF> {
            let mut out = vec![QF::one(d)];
            for k in 0..n as usize {
                out.push(&out[k] * x);
            }
            out
        };
        let (pp, qp, rp, sp) = (powers(p), powers(q), powers(r), powers(s));
        let coeffs = (0..=n)
            .map(|mm| {
                let mut acc = QF::zero(d);
                for i in 0..=mm {
                    let left = (&pp[i as usize] * &qp[(mm - i) as usize]).mul_int(&binomial(mm, i));
                    for j in 0..=(n - mm) {
                        let c = &self.coeffs[(i + j) as usize];
                        if c.is_zero() {
                            continue;
                        }
                        let right = (&rp[j as usize] * &sp[(n - mm - j) as usize]).mul_int(&binomial(n - mm, j));
                        acc = acc + &(&left * &right) * c;
                    }
                }
                acc
            })
            .collect();
        SymForm { n, coeffs }
    }
}

impl fmt::Display for SymForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().enumerate().map(|(m, c)| format!("{m}: {c}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Pairing of a codimension-`(n-1)` class against `(x1, x2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinFunc {
    pub c: [QF; 2],
}

/// Ordered basis `{x1, x2}` of the plane in integral coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    pub x1: Vec2,
    pub x2: Vec2,
}

impl Basis {
    pub fn standard(d: u64) -> Basis {
        Basis { x1: Vec2::from_ints(1, 0, d), x2: Vec2::from_ints(0, 1, d) }
    }

    /// Boundary rays of a cone: primitive integral when rational, canonical scale otherwise.
    pub fn cone_rays(c: &Cone2) -> Basis {
        Basis { x1: c.r1().preferred_vector(), x2: c.r2().preferred_vector() }
    }

    /// `B^-1 M B`: the action of `m` expressed in this basis.
    pub fn express(&self, m: &LatMat) -> Result<[[QF; 2]; 2], ChernError> {
        let det = self.x1.cross(&self.x2);
        let inv_det = det.inv().map_err(|_| ChernError::SingularBasis)?;
        let coords = |w: &Vec2| -> (QF, QF) {
            // solve a*x1 + b*x2 = w by Cramer's rule
            (&w.cross(&self.x2) * &inv_det, &self.x1.cross(w) * &inv_det)
        };
        let (p, q) = coords(&m.apply_vec(&self.x1));
        let (r, s) = coords(&m.apply_vec(&self.x2));
        Ok([[p, r], [q, s]])
    }
}

/// Exponents `m` with `x1^m . x2^(n-m) = 0` forced by invariance.
pub fn forced_vanishing(n: u32, alpha: &QF) -> Result<BTreeSet<u32>, ChernError> {
    check_alpha(alpha)?;
    Ok((0..=n).filter(|m| 2 * m != n).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormReport {
    pub invariant: bool,
    /// Exponents where `F o M` differs from `F`.
    pub mismatched: Vec<u32>,
    /// Nonzero coefficients that invariance forces to vanish; only reported
    /// when `M` is hyperbolic and diagonal in the form's basis.
    pub forced_violations: Option<Vec<u32>>,
    pub pulled_back: SymForm,
}

pub fn check_form_invariance(form: &SymForm, m: &LatMat, basis: &Basis) -> Result<FormReport, ChernError> {
    let mb = basis.express(m)?;
    let pulled_back = form.pullback(&mb);
    let mismatched: Vec<u32> = (0..=form.n).filter(|&k| pulled_back.coeff(k) != form.coeff(k)).collect();
    let diagonal = mb[0][1].is_zero() && mb[1][0].is_zero();
    let hyperbolic = m.det() == 1 && {
        let tr = m.trace();
        tr.clone() * tr > BigInt::from(4)
    };
    let forced_violations = (diagonal && hyperbolic)
        .then(|| (0..=form.n).filter(|&k| 2 * k != form.n && !form.coeff(k).is_zero()).collect());
    Ok(FormReport { invariant: mismatched.is_empty(), mismatched, forced_violations, pulled_back })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cn1Certificate {
    pub consistent: bool,
    /// `(i, value)`: `x_i . c_{n-1}` is nonzero although invariance forces it to vanish.
    pub witnesses: Vec<(u8, QF)>,
}

impl fmt::Display for Cn1Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.consistent {
            return write!(f, "consistent: c_(n-1) = 0");
        }
        let w: Vec<String> = self
            .witnesses
            .iter()
            .map(|(i, v)| {
                format!("x{i}.c_(n-1) = {v} but invariance scales it by alpha^{}", if *i == 1 { "1" } else { "-1" })
            })
            .collect();
        write!(f, "inconsistent: {}", w.join("; "))
    }
}

/// An invariant functional on an eigenbasis with eigenvalues `alpha`, `1/alpha`
/// must vanish on both basis vectors.
pub fn cn1_must_vanish(phi: &LinFunc, alpha: &QF) -> Result<Cn1Certificate, ChernError> {
    check_alpha(alpha)?;
    let witnesses: Vec<(u8, QF)> =
        phi.c.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i as u8 + 1, v.clone())).collect();
    Ok(Cn1Certificate { consistent: witnesses.is_empty(), witnesses })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum C2Verdict {
    /// `x1^x1_power . c2^c2_power` is positive yet scales by `scale != 1`.
    Contradiction {
        x1_power: u32,
        c2_power: u32,
        scale: QF,
    },
    NoObstruction {
        reason: String,
    },
}

impl fmt::Display for C2Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            C2Verdict::Contradiction { x1_power, c2_power, scale } => write!(
                f,
                "CONTRADICTION: infinite Aut impossible (x1^{x1_power}.c2^{c2_power} > 0 but scales by {scale})"
            ),
            C2Verdict::NoObstruction { reason } => write!(f, "NO OBSTRUCTION: {reason}"),
        }
    }
}

pub fn c2_obstruction(n: u32, c2_pairing_positive: bool, alpha: &QF) -> Result<C2Verdict, ChernError> {
    if n % 2 == 1 {
        return Err(ChernError::OddDimension(n));
    }
    check_alpha(alpha)?;
    if !c2_pairing_positive {
        return Ok(C2Verdict::NoObstruction { reason: "c2 positivity not asserted".into() });
    }
    let half = n / 2;
    // n = 4k pairs x1^(2k) with c2^k; n = 4s+2 pairs x1^(2s) with c2^(s+1)
    let (x1_power, c2_power) = if half.is_multiple_of(2) { (half, half / 2) } else { (half - 1, half.div_ceil(2)) };
    let scale = alpha.pow(x1_power as i64).expect("alpha is nonzero");
    if scale.is_one() {
        return Ok(C2Verdict::NoObstruction {
            reason: format!("x1^{x1_power}.c2^{c2_power} is invariant (surface case)"),
        });
    }
    Ok(C2Verdict::Contradiction { x1_power, c2_power, scale })
}

/// `(x1 + x2)^n = C(n, m) x1^m x2^m > 0` for a form supported on the middle term.
pub fn middle_positivity(form: &SymForm) -> Result<bool, ChernError> {
    let n = form.n;
    if n % 2 == 1 {
        return Err(ChernError::OddDimension(n));
    }
    if let Some(k) = (0..=n).find(|&k| 2 * k != n && !form.coeff(k).is_zero()) {
        return Err(ChernError::OffMiddleTerm(k));
    }
    Ok(form.coeff(n / 2).sign() > 0)
}
