//! Fundamental domains for cone-preserving groups and finite-depth tiling
//! certificates.
//!
//! Group elements are written as words `f^k` or `f^k tau`, where `f` is the
//! profile's plus generator and `tau` its minus representative. With
//! `z1 = x + tau x`, `z2 = z1 + f z1` and `theta = f tau`, the dihedral domain
//! is `cone(z1, z2)`; `theta` fixes `z2` and sends `z1` to `f z1`.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::conegeo::{angular_cmp, apply_cone, cross, Cone2, GeoError, LatMat, Ray, Vec2};
use crate::groupclass::{is_cone_automorphism, GroupKind, GroupProfile};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DomainError {
    #[error("seed {0} lies on the cone boundary")]
    SeedOnBoundary(Box<Vec2>),
    #[error("seed {0} lies outside the cone")]
    SeedOutside(Box<Vec2>),
    #[error("seed {0} is not an integral vector")]
    NonIntegralSeed(Box<Vec2>),
    #[error("profile/cone mismatch: {0}")]
    ProfileMismatch(String),
    #[error("point {0} is on the cone boundary; no translate of the domain contains it")]
    PointOnBoundary(Box<Ray>),
    #[error("point {0} lies outside the cone")]
    PointOutside(Box<Ray>),
    #[error("tiling depth must be at least 1")]
    InvalidDepth,
    #[error(transparent)]
    Geo(#[from] GeoError),
}

/// The group element `f^k` (or `f^k tau` when `flip`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    pub k: i64,
    pub flip: bool,
}

impl Word {
    pub const IDENTITY: Word = Word { k: 0, flip: false };

    pub fn new(k: i64, flip: bool) -> Word {
        Word { k, flip }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.flip {
            write!(f, "(k={}, flip)", self.k)
        } else {
            write!(f, "(k={})", self.k)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum DomainCase {
    FiniteTrivial,
    FiniteInvolution,
    Cyclic,
    Dihedral,
}

impl fmt::Display for DomainCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DomainCase::FiniteTrivial => "FINITE_TRIVIAL",
            DomainCase::FiniteInvolution => "FINITE_INVOLUTION",
            DomainCase::Cyclic => "CYCLIC",
            DomainCase::Dihedral => "DIHEDRAL",
        })
    }
}

#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witnesses {
    None,
    /// `y = x + tau x`, fixed by the involution.
    Fixed {
        y: Vec2,
    },
    /// `f x`, the far edge of the cyclic domain.
    Cyclic {
        image: Vec2,
    },
    Dihedral {
        z1: Vec2,
        z2: Vec2,
        theta: LatMat,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainResult {
    /// The cone being acted on.
    pub cone: Cone2,
    pub pi: Cone2,
    pub case: DomainCase,
    pub seed: Vec2,
    pub witnesses: Witnesses,
}

/// The all-ones vector, when it lies in the interior of `c`.
pub fn default_seed(c: &Cone2) -> Result<Vec2, DomainError> {
    let seed = Vec2::from_ints(1, 1, c.d());
    check_seed(c, &seed)?;
    Ok(seed)
}

fn check_seed(c: &Cone2, seed: &Vec2) -> Result<Ray, DomainError> {
    let ray = seed.ray()?;
    if c.contains(&ray, true) {
        Ok(ray)
    } else if c.contains(&ray, false) {
        Err(DomainError::SeedOnBoundary(Box::new(seed.clone())))
    } else {
        Err(DomainError::SeedOutside(Box::new(seed.clone())))
    }
}

fn check_profile(profile: &GroupProfile, c: &Cone2) -> Result<(), DomainError> {
    let mismatch = |what: &str| Err(DomainError::ProfileMismatch(what.to_string()));
    let expects_plus = profile.kind.is_infinite();
    let expects_minus = matches!(profile.kind, GroupKind::OrderTwo | GroupKind::InfiniteDihedral);
    if profile.plus_generator.is_some() != expects_plus {
        return mismatch("plus generator presence does not match the group kind");
    }
    if profile.minus_rep.is_some() != expects_minus {
        return mismatch("minus representative presence does not match the group kind");
    }
    for m in profile.plus_generator.iter().chain(&profile.minus_rep) {
        if !is_cone_automorphism(m, c) {
            return Err(DomainError::ProfileMismatch(format!("{m} does not preserve {c}")));
        }
    }
    Ok(())
}

fn involution_domain(c: &Cone2, tau: &LatMat, seed: &Vec2) -> Result<DomainResult, DomainError> {
    let y = seed.add(&tau.apply_vec(seed));
    let pi = Cone2::new(c.r1().clone(), y.ray()?)?;
    Ok(DomainResult {
        cone: c.clone(),
        pi,
        case: DomainCase::FiniteInvolution,
        seed: seed.clone(),
        witnesses: Witnesses::Fixed { y },
    })
}

pub fn build_domain(profile: &GroupProfile, c: &Cone2, seed: &Vec2) -> Result<DomainResult, DomainError> {
    check_profile(profile, c)?;
    check_seed(c, seed)?;
    let result = match profile.kind {
        GroupKind::Trivial => DomainResult {
            cone: c.clone(),
            pi: c.clone(),
            case: DomainCase::FiniteTrivial,
            seed: seed.clone(),
            witnesses: Witnesses::None,
        },
        GroupKind::OrderTwo => involution_domain(c, profile.minus_rep.as_ref().expect("checked"), seed)?,
        GroupKind::InfiniteCyclic => {
            let f = profile.plus_generator.as_ref().expect("checked");
            let image = f.apply_vec(seed);
            DomainResult {
                cone: c.clone(),
                pi: Cone2::from_vectors(seed, &image)?,
                case: DomainCase::Cyclic,
                seed: seed.clone(),
                witnesses: Witnesses::Cyclic { image },
            }
        }
        GroupKind::InfiniteDihedral => {
            let f = profile.plus_generator.as_ref().expect("checked");
            let tau = profile.minus_rep.as_ref().expect("checked");
            let z1 = seed.add(&tau.apply_vec(seed));
            let z2 = z1.add(&f.apply_vec(&z1));
            DomainResult {
                cone: c.clone(),
                pi: Cone2::from_vectors(&z1, &z2)?,
                case: DomainCase::Dihedral,
                seed: seed.clone(),
                witnesses: Witnesses::Dihedral { z1, z2, theta: f.mul(tau) },
            }
        }
    };
    Ok(result)
}

/// Weak fundamental domain for a group of order at most two.
pub fn weak_domain_finite(c: &Cone2, invol: Option<&LatMat>, seed: &Vec2) -> Result<DomainResult, DomainError> {
    check_seed(c, seed)?;
    if seed.integral().is_none() {
        return Err(DomainError::NonIntegralSeed(Box::new(seed.clone())));
    }
    match invol {
        None => build_domain(&GroupProfile::trivial(), c, seed),
        Some(tau) => {
            if tau.det() != -1 || !tau.mul(tau).is_identity() || !is_cone_automorphism(tau, c) {
                return Err(DomainError::ProfileMismatch(format!("{tau} is not a cone-preserving det -1 involution")));
            }
            involution_domain(c, tau, seed)
        }
    }
}

/// The matrix of `word` under `profile`.
pub fn word_matrix(profile: &GroupProfile, word: Word) -> Result<LatMat, DomainError> {
    let mut m = LatMat::identity();
    if word.k != 0 {
        let f = profile
            .plus_generator
            .as_ref()
            .ok_or_else(|| DomainError::ProfileMismatch("word uses f but the plus part is trivial".into()))?;
        m = f.pow(word.k);
    }
    if word.flip {
        let tau = profile
            .minus_rep
            .as_ref()
            .ok_or_else(|| DomainError::ProfileMismatch("word uses tau but the minus part is empty".into()))?;
        m = m.mul(tau);
    }
    Ok(m)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tile {
    pub word: Word,
    pub cone: Cone2,
}

/// Words `f^k`, `f^k tau` with `|k| <= depth` that exist in the group.
pub fn words(profile: &GroupProfile, depth: u32) -> Vec<Word> {
    let depth = depth as i64;
    let ks: Vec<i64> = if profile.plus_generator.is_some() { (-depth..=depth).collect() } else { vec![0] };
    let flips: &[bool] = if profile.minus_rep.is_some() { &[false, true] } else { &[false] };
    ks.iter().flat_map(|&k| flips.iter().map(move |&flip| Word { k, flip })).collect()
}

/// Translates of the domain by every word up to `depth`, sorted by word.
pub fn tiles(dr: &DomainResult, profile: &GroupProfile, depth: u32) -> Result<Vec<Tile>, DomainError> {
    let f = profile.plus_generator.as_ref();
    let f_inv = f.map(|m| m.inverse());
    let tau = profile.minus_rep.as_ref();
    let base: Vec<(bool, Cone2)> = if let Some(t) = tau {
        vec![(false, dr.pi.clone()), (true, apply_cone(t, &dr.pi))]
    } else {
        vec![(false, dr.pi.clone())]
    };
    let mut out = Vec::new();
    for (flip, cone) in base {
        out.push(Tile { word: Word::new(0, flip), cone: cone.clone() });
        if let (Some(f), Some(f_inv)) = (f, &f_inv) {
            let mut up = cone.clone();
            let mut down = cone;
            for k in 1..=depth as i64 {
                up = apply_cone(f, &up);
                down = apply_cone(f_inv, &down);
                out.push(Tile { word: Word::new(k, flip), cone: up.clone() });
                out.push(Tile { word: Word::new(-k, flip), cone: down.clone() });
            }
        }
    }
    out.sort_by_key(|t| t.word);
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    /// Every tile lies inside the acted-on cone.
    Containment,
    /// Distinct tiles have disjoint interiors.
    Disjointness,
    /// Angularly consecutive tiles share exactly one boundary ray.
    Adjacency,
    /// The union's extreme rays strictly approach the cone boundary.
    Convergence,
    /// Finite kinds: overlaps are confined to a rational ray.
    WeakOverlap,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Check::Containment => "containment",
            Check::Disjointness => "disjointness",
            Check::Adjacency => "adjacency",
            Check::Convergence => "convergence",
            Check::WeakOverlap => "weak-overlap",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub check: Check,
    pub first: Word,
    pub second: Option<Word>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.second {
            Some(w) => write!(f, "{} {} vs {}: {}", self.check, self.first, w, self.detail),
            None => write!(f, "{} {}: {}", self.check, self.first, self.detail),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::NotApplicable => "N/A",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TilingReport {
    pub case: DomainCase,
    pub depth: u32,
    pub tiles: Vec<Tile>,
    pub outcomes: Vec<(Check, Outcome)>,
    pub violations: Vec<Violation>,
}

impl TilingReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn outcome(&self, check: Check) -> Outcome {
        self.outcomes.iter().find(|(c, _)| *c == check).map_or(Outcome::NotApplicable, |(_, o)| *o)
    }
}

impl fmt::Display for TilingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "case: {}", self.case)?;
        writeln!(f, "depth: {}", self.depth)?;
        writeln!(f, "tiles: {}", self.tiles.len())?;
        for t in &self.tiles {
            writeln!(f, "tile {}: {} {}", t.word, t.cone.r1(), t.cone.r2())?;
        }
        for (c, o) in &self.outcomes {
            writeln!(f, "check {c}: {o}")?;
        }
        for v in &self.violations {
            writeln!(f, "violation: {v}")?;
        }
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "result: {verdict}, {} tiles", self.tiles.len())
    }
}

/// Open cones inside a common salient cone have disjoint interiors iff one
/// ends (angularly) before the other begins.
pub fn interiors_disjoint(a: &Cone2, b: &Cone2) -> bool {
    cross(a.r2(), b.r1()).sign() >= 0 || cross(b.r2(), a.r1()).sign() >= 0
}

/// Boundary ray shared by two cones with disjoint interiors.
fn shared_ray(a: &Cone2, b: &Cone2) -> Option<Ray> {
    if a.r2() == b.r1() {
        Some(a.r2().clone())
    } else if b.r2() == a.r1() {
        Some(a.r1().clone())
    } else {
        None
    }
}

pub fn verify_tiling(
    dr: &DomainResult,
    profile: &GroupProfile,
    c: &Cone2,
    depth: u32,
) -> Result<TilingReport, DomainError> {
    if depth == 0 {
        return Err(DomainError::InvalidDepth);
    }
    if dr.cone != *c {
        return Err(DomainError::ProfileMismatch("domain was built for a different cone".into()));
    }
    check_profile(profile, c)?;
    let tiles = tiles(dr, profile, depth)?;
    let finite = !profile.kind.is_infinite();
    let mut violations = Vec::new();
    let mut outcomes = Vec::new();
    let mut record = |check: Check, found: Vec<Violation>, applicable: bool| {
        let o = if !applicable {
            Outcome::NotApplicable
        } else if found.is_empty() {
            Outcome::Pass
        } else {
            Outcome::Fail
        };
        outcomes.push((check, o));
        violations.extend(found);
    };

    let containment: Vec<Violation> = tiles
        .iter()
        .filter(|t| !c.contains_cone(&t.cone) || (!finite && !c.contains_cone_strictly(&t.cone)))
        .map(|t| Violation {
            check: Check::Containment,
            first: t.word,
            second: None,
            detail: format!("tile {} leaves {c}", t.cone),
        })
        .collect();
    let contained = containment.is_empty();
    record(Check::Containment, containment, true);

    // pairwise interiors; meaningful only once every tile sits in the salient cone
    let mut disjoint = Vec::new();
    if contained {
        for (i, a) in tiles.iter().enumerate() {
            for b in &tiles[i + 1..] {
                if !interiors_disjoint(&a.cone, &b.cone) {
                    disjoint.push(Violation {
                        check: Check::Disjointness,
                        first: a.word,
                        second: Some(b.word),
                        detail: format!("interiors of {} and {} meet", a.cone, b.cone),
                    });
                }
            }
        }
    }
    record(Check::Disjointness, disjoint, contained);

    let mut ordered: Vec<&Tile> = tiles.iter().collect();
    ordered.sort_by(|a, b| angular_cmp(a.cone.r1(), b.cone.r1()).then(a.word.cmp(&b.word)));
    let mut adjacency = Vec::new();
    for pair in ordered.windows(2) {
        if pair[0].cone.r2() != pair[1].cone.r1() {
            adjacency.push(Violation {
                check: Check::Adjacency,
                first: pair[0].word,
                second: Some(pair[1].word),
                detail: format!("edge {} does not meet edge {}", pair[0].cone.r2(), pair[1].cone.r1()),
            });
        }
    }
    if finite {
        let (first, last) = (ordered[0], ordered[ordered.len() - 1]);
        if first.cone.r1() != c.r1() || last.cone.r2() != c.r2() {
            adjacency.push(Violation {
                check: Check::Adjacency,
                first: first.word,
                second: Some(last.word),
                detail: format!("union of tiles does not cover {c}"),
            });
        }
    }
    record(Check::Adjacency, adjacency, contained);

    let mut convergence = Vec::new();
    if !finite && contained {
        let extremes = |j: i64| -> (&Tile, &Tile) {
            let layer = tiles.iter().filter(|t| t.word.k.abs() <= j);
            let lo = layer.clone().min_by(|a, b| angular_cmp(a.cone.r1(), b.cone.r1())).expect("nonempty");
            let hi = layer.max_by(|a, b| angular_cmp(a.cone.r2(), b.cone.r2())).expect("nonempty");
            (lo, hi)
        };
        let (mut lo, mut hi) = extremes(0);
        for j in 1..=depth as i64 {
            let (nlo, nhi) = extremes(j);
            let lo_ok = cross(c.r1(), nlo.cone.r1()).sign() > 0 && cross(nlo.cone.r1(), lo.cone.r1()).sign() > 0;
            let hi_ok = cross(hi.cone.r2(), nhi.cone.r2()).sign() > 0 && cross(nhi.cone.r2(), c.r2()).sign() > 0;
            if !lo_ok {
                convergence.push(Violation {
                    check: Check::Convergence,
                    first: nlo.word,
                    second: Some(lo.word),
                    detail: format!("lower extreme ray does not strictly approach {}", c.r1()),
                });
            }
            if !hi_ok {
                convergence.push(Violation {
                    check: Check::Convergence,
                    first: nhi.word,
                    second: Some(hi.word),
                    detail: format!("upper extreme ray does not strictly approach {}", c.r2()),
                });
            }
            lo = nlo;
            hi = nhi;
        }
    }
    record(Check::Convergence, convergence, !finite && contained);

    let mut weak = Vec::new();
    if finite && contained {
        for (i, a) in tiles.iter().enumerate() {
            for b in &tiles[i + 1..] {
                if let Some(r) = shared_ray(&a.cone, &b.cone) {
                    if !r.is_rational() {
                        weak.push(Violation {
                            check: Check::WeakOverlap,
                            first: a.word,
                            second: Some(b.word),
                            detail: format!("overlap ray {r} is irrational"),
                        });
                    }
                }
            }
        }
    }
    record(Check::WeakOverlap, weak, finite && contained);

    violations.sort();
    Ok(TilingReport { case: dr.case, depth, tiles, outcomes, violations })
}

/// Finds the word whose tile contains `p`, preferring the lexicographically
/// smallest word when `p` lies on a shared edge.
pub fn locate(dr: &DomainResult, profile: &GroupProfile, p: &Ray) -> Result<Word, DomainError> {
    let c = &dr.cone;
    if !c.contains(p, false) {
        return Err(DomainError::PointOutside(Box::new(p.clone())));
    }
    if !c.contains(p, true) {
        return Err(DomainError::PointOnBoundary(Box::new(p.clone())));
    }
    check_profile(profile, c)?;
    let candidates: Vec<Word> = match (&profile.plus_generator, &dr.witnesses) {
        (None, _) => words(profile, 0),
        (Some(f), witnesses) => {
            // fundamental region of <f>: Pi for the cyclic case, Pi u theta Pi otherwise
            let band = match witnesses {
                Witnesses::Dihedral { z1, .. } => Cone2::from_vectors(z1, &f.apply_vec(z1))?,
                _ => dr.pi.clone(),
            };
            let f_inv = f.inverse();
            let mut q = p.vector();
            let mut k: i64 = 0;
            loop {
                let qr = q.ray()?;
                if cross(band.r1(), &qr).sign() < 0 {
                    q = f.apply_vec(&q);
                    k -= 1;
                } else if cross(&qr, band.r2()).sign() < 0 {
                    q = f_inv.apply_vec(&q);
                    k += 1;
                } else {
                    break;
                }
            }
            let flips: &[bool] = if profile.minus_rep.is_some() { &[false, true] } else { &[false] };
            (k - 1..=k + 2).flat_map(|kk| flips.iter().map(move |&fl| Word::new(kk, fl))).collect()
        }
    };
    let mut best: Option<Word> = None;
    for w in candidates {
        let tile = apply_cone(&word_matrix(profile, w)?, &dr.pi);
        if tile.contains(p, false) && best.is_none_or(|b| w.cmp(&b) == Ordering::Less) {
            best = Some(w);
        }
    }
    best.ok_or_else(|| DomainError::PointOutside(Box::new(p.clone())))
}
