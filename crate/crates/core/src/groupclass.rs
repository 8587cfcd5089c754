//! Classification of cone-preserving subgroups of `GL(2, Z)`.
//!
//! A group preserving a salient cone splits by determinant: the `det = +1`
//! part fixes both boundary rays and is trivial or infinite cyclic, and the
//! `det = -1` part is a single coset of involutions. The four outcomes are
//! trivial, `Z/2`, `Z` and the infinite dihedral group.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::chern::{Basis, LinFunc, SymForm};
use crate::conegeo::{apply_cone, ray_eigenvalue, Cone2, LatMat};
use crate::qfield::QF;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("matrix {0} does not map the cone onto itself")]
    NotConeAutomorphism(Box<LatMat>),
    #[error("non-hyperbolic generator {0}: eigenvalue 1 but not the identity")]
    NonHyperbolic(Box<LatMat>),
    #[error("ray mismatch: {0} does not fix both boundary rays")]
    RayMismatch(Box<LatMat>),
    #[error("det -1 element {0} is not an involution")]
    NotInvolution(Box<LatMat>),
}

/// Which cone and generator set a computation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Action {
    /// Automorphisms acting on the nef cone.
    Aut,
    /// Birational automorphisms acting on the movable cone.
    Bir,
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Action::Aut => "aut",
            Action::Bir => "bir",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub role: Action,
    pub matrix: LatMat,
}

/// Where the coefficients of a scenario's intersection form live.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormBasis {
    /// The nef boundary rays `x1 in r1`, `x2 in r2`.
    Nef,
    /// The integral lattice basis.
    Integral,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionData {
    pub basis: FormBasis,
    pub form: SymForm,
}

/// Lattice shadow of a Picard-number-two Calabi-Yau manifold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionScenario {
    pub d: u64,
    pub dimension: Option<u32>,
    pub nef: Cone2,
    pub mov: Cone2,
    pub generators: Vec<Generator>,
    pub intersection: Option<IntersectionData>,
    /// Pairing of `c_(n-1)` against the form basis.
    pub cn1: Option<LinFunc>,
    pub c2_positive: Option<bool>,
}

impl ActionScenario {
    pub fn cone(&self, action: Action) -> &Cone2 {
        match action {
            Action::Aut => &self.nef,
            Action::Bir => &self.mov,
        }
    }

    /// Generators of the group for `action`. Automorphisms are birational
    /// automorphisms too, so the birational group uses every generator.
    pub fn generators_for(&self, action: Action) -> Vec<LatMat> {
        self.generators
            .iter()
            .filter(|g| action == Action::Bir || g.role == Action::Aut)
            .map(|g| g.matrix.clone())
            .collect()
    }

    pub fn form_basis(&self) -> Option<Basis> {
        self.intersection.as_ref().map(|i| match i.basis {
            FormBasis::Nef => Basis::cone_rays(&self.nef),
            FormBasis::Integral => Basis::standard(self.d),
        })
    }

    /// Load-time invariants: `nef` inside `mov`, automorphisms preserve both
    /// cones, birational generators preserve `mov`.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.mov.contains_cone(&self.nef) {
            out.push(format!("nef cone {} is not contained in mov cone {}", self.nef, self.mov));
        }
        for g in &self.generators {
            if g.role == Action::Aut && !is_cone_automorphism(&g.matrix, &self.nef) {
                out.push(format!("automorphism {} = {} does not preserve the nef cone", g.name, g.matrix));
            }
            if !is_cone_automorphism(&g.matrix, &self.mov) {
                out.push(format!("generator {} = {} does not preserve the mov cone", g.name, g.matrix));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupKind {
    Trivial,
    OrderTwo,
    InfiniteCyclic,
    InfiniteDihedral,
}

impl GroupKind {
    pub fn is_infinite(self) -> bool {
        matches!(self, GroupKind::InfiniteCyclic | GroupKind::InfiniteDihedral)
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::Trivial => "TRIVIAL",
            GroupKind::OrderTwo => "ORDER_TWO",
            GroupKind::InfiniteCyclic => "INFINITE_CYCLIC",
            GroupKind::InfiniteDihedral => "INFINITE_DIHEDRAL",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupProfile {
    pub kind: GroupKind,
    /// `f` with `G+ = <f>`, normalized to expand the cone's second ray.
    pub plus_generator: Option<LatMat>,
    /// A `det = -1` coset representative.
    pub minus_rep: Option<LatMat>,
    /// Eigenvalue of `plus_generator` on the second boundary ray; always `> 1`.
    pub alpha: Option<QF>,
}

impl GroupProfile {
    pub fn trivial() -> GroupProfile {
        GroupProfile { kind: GroupKind::Trivial, plus_generator: None, minus_rep: None, alpha: None }
    }
}

impl fmt::Display for GroupProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn opt<T: fmt::Display>(x: &Option<T>) -> String {
            x.as_ref().map_or_else(|| "none".to_string(), |v| v.to_string())
        }
        writeln!(f, "kind: {}", self.kind)?;
        writeln!(f, "plus_generator: {}", opt(&self.plus_generator))?;
        if let Some(g) = &self.plus_generator {
            writeln!(f, "plus_trace: {}", g.trace())?;
        }
        writeln!(f, "alpha: {}", opt(&self.alpha))?;
        write!(f, "minus_rep: {}", opt(&self.minus_rep))
    }
}

/// `m` maps `c` onto itself.
pub fn is_cone_automorphism(m: &LatMat, c: &Cone2) -> bool {
    apply_cone(m, c) == *c
}

pub fn split_by_det(gens: &[LatMat]) -> (Vec<LatMat>, Vec<LatMat>) {
    gens.iter().cloned().partition(|g| g.det() == 1)
}

/// Eigenvalue of a `det = +1` cone automorphism on the second boundary ray,
/// after checking it fixes both rays.
pub fn expansion_factor(m: &LatMat, c: &Cone2) -> Result<QF, ClassifyError> {
    if m.det() != 1 || ray_eigenvalue(m, c.r1()).is_none() {
        return Err(ClassifyError::RayMismatch(Box::new(m.clone())));
    }
    let lambda = ray_eigenvalue(m, c.r2()).ok_or_else(|| ClassifyError::RayMismatch(Box::new(m.clone())))?;
    if lambda.sign() <= 0 {
        return Err(ClassifyError::RayMismatch(Box::new(m.clone())));
    }
    Ok(lambda)
}

/// Generator of the cyclic group spanned by `plus_elements`, or `None` for
/// the trivial group.
///
/// Each element is normalized to expand the second boundary ray, then the
/// largest is repeatedly reduced by the smallest (`A <- A B^-k` with `k`
/// maximal keeping the factor `>= 1`) until one element remains.
pub fn fundamental_plus_generator(plus_elements: &[LatMat], c: &Cone2) -> Result<Option<LatMat>, ClassifyError> {
    let one = QF::one(c.d());
    let mut pool: Vec<(QF, LatMat)> = Vec::new();
    for m in plus_elements {
        let lambda = expansion_factor(m, c)?;
        match lambda.cmp_exact(&one).expect("same field") {
            std::cmp::Ordering::Equal => {
                if !m.is_identity() {
                    return Err(ClassifyError::NonHyperbolic(Box::new(m.clone())));
                }
            }
            std::cmp::Ordering::Less => pool.push((lambda.inv().expect("nonzero"), m.inverse())),
            std::cmp::Ordering::Greater => pool.push((lambda, m.clone())),
        }
    }
    loop {
        pool.sort_by(|x, y| x.0.cmp_exact(&y.0).expect("same field"));
        pool.dedup_by(|x, y| x.0 == y.0);
        if pool.len() <= 1 {
            return Ok(pool.pop().map(|(_, m)| m));
        }
        let (small_l, small_m) = pool[0].clone();
        let small_inv_m = small_m.inverse();
        let small_inv_l = small_l.inv().expect("nonzero");
        let (mut l, mut m) = pool.pop().expect("nonempty");
        while l.cmp_exact(&small_l).expect("same field").is_ge() {
            l = &l * &small_inv_l;
            m = m.mul(&small_inv_m);
        }
        if l.is_one() {
            debug_assert!(m.is_identity());
        } else {
            pool.push((l, m));
        }
    }
}

pub fn classify(gens: &[LatMat], c: &Cone2) -> Result<GroupProfile, ClassifyError> {
    if let Some(bad) = gens.iter().find(|g| !is_cone_automorphism(g, c)) {
        return Err(ClassifyError::NotConeAutomorphism(Box::new(bad.clone())));
    }
    let (plus, minus) = split_by_det(gens);
    if let Some(bad) = minus.iter().find(|t| !t.mul(t).is_identity()) {
        return Err(ClassifyError::NotInvolution(Box::new(bad.clone())));
    }
    let mut candidates = plus;
    for a in &minus {
        for b in &minus {
            candidates.push(a.mul(b));
        }
    }
    let plus_generator = fundamental_plus_generator(&candidates, c)?;
    let alpha = match &plus_generator {
        Some(g) => Some(expansion_factor(g, c)?),
        None => None,
    };
    let minus_rep = minus.into_iter().next();
    let kind = match (plus_generator.is_some(), minus_rep.is_some()) {
        (false, false) => GroupKind::Trivial,
        (false, true) => GroupKind::OrderTwo,
        (true, false) => GroupKind::InfiniteCyclic,
        (true, true) => GroupKind::InfiniteDihedral,
    };
    Ok(GroupProfile { kind, plus_generator, minus_rep, alpha })
}

/// An element of infinite order among words of length at most two, found
/// without reference to any cone.
pub fn infinite_order_witness(gens: &[LatMat]) -> Option<LatMat> {
    let infinite = |m: &LatMat| {
        let tr = m.trace();
        if m.det() == 1 {
            let minus_id = LatMat::from_rows(-1, 0, 0, -1).expect("det 1");
            !m.is_identity() && *m != minus_id && tr.abs() >= BigInt::from(2)
        } else {
            !tr.is_zero()
        }
    };
    let mut words: Vec<LatMat> = gens.to_vec();
    for a in gens {
        for b in gens {
            words.push(a.mul(b));
        }
    }
    words.into_iter().find(infinite)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Info,
    Error,
}

/// Validator rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Rule {
    /// Load-time invariants (cone inclusion and preservation).
    Invariant,
    /// Rational movable ray with an infinite birational group.
    RationalMovRay,
    /// Rational nef ray or odd dimension with an infinite automorphism group.
    RationalNefRay,
    /// Shared nef/mov boundary ray: plus parts must agree.
    SharedBoundary,
    /// `det = -1` element that squares to something other than the identity.
    Involution,
    /// Informational summary.
    Summary,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Invariant => "inv",
            Rule::RationalMovRay => "a",
            Rule::RationalNefRay => "b",
            Rule::SharedBoundary => "c",
            Rule::Involution => "d",
            Rule::Summary => "info",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub severity: Severity,
    pub rule: Rule,
    pub message: String,
}

impl Finding {
    fn error(rule: Rule, message: String) -> Finding {
        Finding { severity: Severity::Error, rule, message }
    }

    fn info(rule: Rule, message: String) -> Finding {
        Finding { severity: Severity::Info, rule, message }
    }
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Info => "INFO",
            Severity::Error => "ERROR",
        };
        write!(f, "{sev} [{}] {}", self.rule, self.message)
    }
}

/// What could be decided about a group before cone invariants are trusted.
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupOutcome {
    Profile(GroupProfile),
    /// Cone-based classification failed; this word has infinite order.
    Infinite(LatMat, String),
    Undetermined(String),
}

impl GroupOutcome {
    pub fn is_infinite(&self) -> bool {
        match self {
            GroupOutcome::Profile(p) => p.kind.is_infinite(),
            GroupOutcome::Infinite(..) => true,
            GroupOutcome::Undetermined(_) => false,
        }
    }

    fn describe(&self) -> String {
        match self {
            GroupOutcome::Profile(p) => p.kind.to_string(),
            GroupOutcome::Infinite(w, why) => format!("infinite (word {w} has infinite order; {why})"),
            GroupOutcome::Undetermined(why) => format!("undetermined ({why})"),
        }
    }
}

pub fn group_outcome(gens: &[LatMat], c: &Cone2) -> GroupOutcome {
    match classify(gens, c) {
        Ok(p) => GroupOutcome::Profile(p),
        Err(e) => match infinite_order_witness(gens) {
            Some(w) => GroupOutcome::Infinite(w, e.to_string()),
            None => GroupOutcome::Undetermined(e.to_string()),
        },
    }
}

/// Same subgroup of `<f>`: equal generators up to inversion.
fn same_plus_part(a: &Option<LatMat>, b: &Option<LatMat>) -> bool {
    match (a, b) {
        (None, None) => true,
        (Some(x), Some(y)) => x == y || *x == y.inverse(),
        _ => false,
    }
}

pub fn validate_scenario(s: &ActionScenario) -> Vec<Finding> {
    let mut out = Vec::new();
    for v in s.invariant_violations() {
        out.push(Finding::error(Rule::Invariant, v));
    }
    for g in &s.generators {
        if g.matrix.det() == -1 && !g.matrix.mul(&g.matrix).is_identity() {
            out.push(Finding::error(
                Rule::Involution,
                format!("det -1 generator {} = {} has g^2 != id", g.name, g.matrix),
            ));
        }
    }

    let aut = group_outcome(&s.generators_for(Action::Aut), &s.nef);
    let bir = group_outcome(&s.generators_for(Action::Bir), &s.mov);
    out.push(Finding::info(Rule::Summary, format!("aut action on nef cone: {}", aut.describe())));
    out.push(Finding::info(Rule::Summary, format!("bir action on mov cone: {}", bir.describe())));

    let rational_mov: Vec<_> = s.mov.rays().into_iter().filter(|r| r.is_rational()).collect();
    if rational_mov.is_empty() {
        out.push(Finding::info(Rule::Summary, "both mov rays irrational".into()));
    }
    for r in rational_mov {
        if bir.is_infinite() {
            out.push(Finding::error(
                Rule::RationalMovRay,
                format!("mov boundary ray {r} is rational but the birational group is infinite"),
            ));
        }
    }

    let odd = s.dimension.is_some_and(|n| n % 2 == 1);
    let rational_nef: Vec<_> = s.nef.rays().into_iter().filter(|r| r.is_rational()).collect();
    if aut.is_infinite() {
        for r in &rational_nef {
            out.push(Finding::error(
                Rule::RationalNefRay,
                format!("nef boundary ray {r} is rational but the automorphism group is infinite"),
            ));
        }
        if odd {
            out.push(Finding::error(
                Rule::RationalNefRay,
                format!("dimension {} is odd but the automorphism group is infinite", s.dimension.unwrap_or(0)),
            ));
        }
    }

    if s.mov.contains_cone_strictly(&s.nef) {
        out.push(Finding::info(Rule::Summary, "Nef is contained in the interior of Mov".into()));
    }
    let shared: Vec<_> = s.nef.rays().into_iter().filter(|r| s.mov.has_boundary_ray(r)).collect();
    if !shared.is_empty() {
        let list: Vec<String> = shared.iter().map(|r| r.to_string()).collect();
        out.push(Finding::info(
            Rule::SharedBoundary,
            format!("nef and mov share boundary ray {}; plus parts of aut and bir must agree", list.join(", ")),
        ));
        match (&aut, &bir) {
            (GroupOutcome::Profile(a), GroupOutcome::Profile(b)) => {
                if !same_plus_part(&a.plus_generator, &b.plus_generator) {
                    out.push(Finding::error(Rule::SharedBoundary, "det +1 parts of aut and bir differ".into()));
                } else {
                    out.push(Finding::info(Rule::SharedBoundary, "det +1 parts of aut and bir agree".into()));
                }
            }
            _ => {
                if bir.is_infinite() != aut.is_infinite() {
                    out.push(Finding::error(Rule::SharedBoundary, "det +1 parts of aut and bir differ".into()));
                }
            }
        }
        if odd && bir.is_infinite() {
            out.push(Finding::error(
                Rule::SharedBoundary,
                "odd dimension with a shared boundary ray forces a finite birational group".into(),
            ));
        }
    }
    out.sort_by(|a, b| (b.severity, a.rule).cmp(&(a.severity, b.rule)));
    out
}

pub fn has_errors(findings: &[Finding]) -> bool {
    findings.iter().any(|f| f.severity == Severity::Error)
}

/// `base^k` equals `m` for some integer `k` in `[-bound, bound]`.
pub fn power_exponent(base: &LatMat, m: &LatMat, bound: i64) -> Option<i64> {
    (-bound..=bound).find(|&k| base.pow(k) == *m)
}
