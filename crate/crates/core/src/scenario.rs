//! Scenario files: the on-disk description of a lattice action.
//!
//! Scenarios are TOML documents. Numbers in `Q(sqrt(d))` use the canonical
//! text encoding `p/q+r/s*sqrt(d)`, rays are written `"(u, v)"` and matrices
//! as row-major integer quadruples. Unknown keys are rejected.
//!
//! ```toml
//! field = 2
//! dimension = 3
//!
//! [nef]
//! rays = ["(1, 0)", "(0, 1)"]
//!
//! [mov]
//! rays = ["(-1, 3+2*sqrt(2))", "(3+2*sqrt(2), -1)"]
//!
//! [[generator]]
//! name = "tau1"
//! role = "birational"
//! matrix = [-1, 0, 6, 1]
//! ```
//!
//! Optional sections: `[intersection]` with `basis = "nef" | "integral"` and
//! `coefficients = { "0" = "...", ... }` (exponent `m` of `x1^m x2^(n-m)`),
//! and `[chern]` with `cn1 = ["...", "..."]` and `c2_positive = true|false`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chern::{ChernError, LinFunc, SymForm};
use crate::conegeo::{Cone2, GeoError, LatMat, Ray};
use crate::groupclass::{Action, ActionScenario, FormBasis, Generator, IntersectionData};
use crate::qfield::{self, QfError, QF};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScenarioError {
    #[error("scenario syntax: {0}")]
    Syntax(String),
    #[error("scenario field: {0}")]
    Field(#[from] QfError),
    #[error("scenario geometry: {0}")]
    Geo(#[from] GeoError),
    #[error("scenario intersection data: {0}")]
    Chern(#[from] ChernError),
    #[error("scenario: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeSection {
    pub rays: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RoleTag {
    Automorphism,
    Birational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSection {
    pub name: String,
    pub role: RoleTag,
    pub matrix: Vec<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisTag {
    Nef,
    Integral,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntersectionSection {
    pub basis: BasisTag,
    pub coefficients: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChernSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cn1: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c2_positive: Option<bool>,
}

/// Raw, textual form of a scenario file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub field: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<u32>,
    pub nef: ConeSection,
    pub mov: ConeSection,
    #[serde(default, rename = "generator")]
    pub generators: Vec<GeneratorSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intersection: Option<IntersectionSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chern: Option<ChernSection>,
}

impl ScenarioFile {
    pub fn parse(text: &str) -> Result<ScenarioFile, ScenarioError> {
        toml::from_str(text).map_err(|e| ScenarioError::Syntax(e.message().to_string()))
    }

    pub fn to_text(&self) -> String {
        toml::to_string(self).expect("scenario files always serialize")
    }

    pub fn into_scenario(self) -> Result<ActionScenario, ScenarioError> {
        let d = qfield::check_field(self.field)?;
        let cone = |sec: &ConeSection, what: &str| -> Result<Cone2, ScenarioError> {
            let [a, b] = sec.rays.as_slice() else {
                return Err(ScenarioError::Invalid(format!("{what} cone needs exactly two rays")));
            };
            Ok(Cone2::new(Ray::parse(a, d)?, Ray::parse(b, d)?)?)
        };
        let nef = cone(&self.nef, "nef")?;
        let mov = cone(&self.mov, "mov")?;
        let mut generators = Vec::new();
        for g in &self.generators {
            let [a, b, c, e] = g.matrix.as_slice() else {
                return Err(ScenarioError::Invalid(format!("generator {} needs four matrix entries", g.name)));
            };
            let role = match g.role {
                RoleTag::Automorphism => Action::Aut,
                RoleTag::Birational => Action::Bir,
            };
            if generators.iter().any(|x: &Generator| x.name == g.name) {
                return Err(ScenarioError::Invalid(format!("duplicate generator name {}", g.name)));
            }
            generators.push(Generator { name: g.name.clone(), role, matrix: LatMat::from_rows(*a, *b, *c, *e)? });
        }
        let intersection = match &self.intersection {
            None => None,
            Some(sec) => {
                let n = self
                    .dimension
                    .ok_or_else(|| ScenarioError::Invalid("intersection data needs a dimension".into()))?;
                let mut coeffs = Vec::new();
                for m in 0..=n {
                    let v = sec
                        .coefficients
                        .get(&m.to_string())
                        .ok_or_else(|| ScenarioError::Invalid(format!("missing intersection coefficient {m}")))?;
                    coeffs.push(QF::parse(v, d)?);
                }
                if sec.coefficients.len() != coeffs.len() {
                    return Err(ScenarioError::Invalid(format!("intersection exponents must be 0..={n}")));
                }
                let basis = match sec.basis {
                    BasisTag::Nef => FormBasis::Nef,
                    BasisTag::Integral => FormBasis::Integral,
                };
                Some(IntersectionData { basis, form: SymForm::new(n, coeffs)? })
            }
        };
        let (cn1, c2_positive) = match &self.chern {
            None => (None, None),
            Some(sec) => {
                let cn1 = match &sec.cn1 {
                    None => None,
                    Some(v) => {
                        let [a, b] = v.as_slice() else {
                            return Err(ScenarioError::Invalid("cn1 needs two values".into()));
                        };
                        Some(LinFunc { c: [QF::parse(a, d)?, QF::parse(b, d)?] })
                    }
                };
                (cn1, sec.c2_positive)
            }
        };
        Ok(ActionScenario { d, dimension: self.dimension, nef, mov, generators, intersection, cn1, c2_positive })
    }

    pub fn from_scenario(s: &ActionScenario) -> ScenarioFile {
        let cone = |c: &Cone2| ConeSection { rays: c.rays().iter().map(|r| r.to_string()).collect() };
        let entry = |x: &BigInt| -> i64 { i64::try_from(x).expect("scenario matrices fit in i64") };
        ScenarioFile {
            field: s.d,
            dimension: s.dimension,
            nef: cone(&s.nef),
            mov: cone(&s.mov),
            generators: s
                .generators
                .iter()
                .map(|g| {
                    let m = g.matrix.entries();
                    GeneratorSection {
                        name: g.name.clone(),
                        role: match g.role {
                            Action::Aut => RoleTag::Automorphism,
                            Action::Bir => RoleTag::Birational,
                        },
                        matrix: vec![entry(&m[0][0]), entry(&m[0][1]), entry(&m[1][0]), entry(&m[1][1])],
                    }
                })
                .collect(),
            intersection: s.intersection.as_ref().map(|i| IntersectionSection {
                basis: match i.basis {
                    FormBasis::Nef => BasisTag::Nef,
                    FormBasis::Integral => BasisTag::Integral,
                },
                coefficients: i.form.coeffs().iter().enumerate().map(|(m, c)| (m.to_string(), c.to_string())).collect(),
            }),
            chern: if s.cn1.is_none() && s.c2_positive.is_none() {
                None
            } else {
                Some(ChernSection {
                    cn1: s.cn1.as_ref().map(|l| l.c.iter().map(|c| c.to_string()).collect()),
                    c2_positive: s.c2_positive,
                })
            },
        }
    }
}

pub fn parse_scenario(text: &str) -> Result<ActionScenario, ScenarioError> {
    ScenarioFile::parse(text)?.into_scenario()
}

pub fn serialize_scenario(s: &ActionScenario) -> String {
    ScenarioFile::from_scenario(s).to_text()
}

fn square_free_split(n: u64) -> (u64, u64) {
    // n = s^2 * d with d square-free
    let (mut s, mut d, mut rest) = (1u64, 1u64, n);
    let mut p = 2u64;
    while p * p <= rest {
        while rest % (p * p) == 0 {
            rest /= p * p;
            s *= p;
        }
        if rest % p == 0 {
            rest /= p;
            d *= p;
        }
        p += 1;
    }
    (s, d * rest)
}

/// Complete intersection of `n-1` bidegree `(1,1)` and one `(2,2)` hypersurface
/// in `P^n x P^n`, seen through its two covering involutions.
///
/// Each projection to a factor is a double cover, so its involution fixes one
/// hyperplane class `L_j` and sends the other to `2n L_j - L_i`. The movable
/// cone is bounded by the eigenrays `(-1, n + sqrt(n^2 - 1))` and its mirror.
pub fn pn_pn_family(n: u32) -> Result<ActionScenario, ScenarioError> {
    if n < 3 {
        return Err(ScenarioError::Invalid(format!("family needs n >= 3, got {n}")));
    }
    let c = 2 * n as i64;
    let (s, d) = square_free_split((n as u64) * (n as u64) - 1);
    let far = QF::from_ints(n as i64, s as i64, d);
    let m1 = Ray::new(QF::from_int(-1, d), far.clone())?;
    let m2 = Ray::new(far, QF::from_int(-1, d))?;
    Ok(ActionScenario {
        d,
        dimension: Some(n),
        nef: Cone2::new(Ray::from_ints(1, 0, d)?, Ray::from_ints(0, 1, d)?)?,
        mov: Cone2::new(m1, m2)?,
        generators: vec![
            Generator { name: "iota1".into(), role: Action::Bir, matrix: LatMat::from_rows(-1, 0, c, 1)? },
            Generator { name: "iota2".into(), role: Action::Bir, matrix: LatMat::from_rows(1, c, 0, -1)? },
        ],
        intersection: None,
        cn1: None,
        c2_positive: None,
    })
}

/// Scenario files shipped with the crate.
pub mod bundled {
    pub const OGUISO: &str = include_str!("../data/oguiso.scenario");
    pub const BAD_RATIONAL_RAY: &str = include_str!("../data/bad-rational-ray.scenario");
    pub const SINGLE_INVOLUTION: &str = include_str!("../data/single-involution.scenario");
    pub const NO_GENERATORS: &str = include_str!("../data/no-generators.scenario");
    pub const HYPERBOLIC_AUT: &str = include_str!("../data/hyperbolic-aut.scenario");
    pub const P4XP4: &str = include_str!("../data/p4xp4.scenario");

    pub const ALL: [(&str, &str); 6] = [
        ("oguiso.scenario", OGUISO),
        ("bad-rational-ray.scenario", BAD_RATIONAL_RAY),
        ("single-involution.scenario", SINGLE_INVOLUTION),
        ("no-generators.scenario", NO_GENERATORS),
        ("hyperbolic-aut.scenario", HYPERBOLIC_AUT),
        ("p4xp4.scenario", P4XP4),
    ];
}
