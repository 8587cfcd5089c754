//! Command implementations behind the `pic2cone` binary.
//!
//! Every command returns its complete report as text so output is identical
//! across runs and easy to compare in tests.

use std::fmt::Write as _;

use thiserror::Error;

use crate::chern::{self, C2Verdict};
use crate::conegeo::{Ray, Vec2};
use crate::fundom::{self, DomainError, DomainResult, Witnesses};
use crate::groupclass::{self, Action, ActionScenario, ClassifyError, GroupProfile};
use crate::render;
use crate::scenario::{self, ScenarioError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CommandError {
    #[error("{0}")]
    Scenario(#[from] ScenarioError),
    #[error("invalid scenario: {0}")]
    Invalid(String),
    #[error("{0}")]
    Classify(#[from] ClassifyError),
    #[error("{0}")]
    Domain(#[from] DomainError),
    #[error("{0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CommandError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Invalid(_) | CommandError::Classify(_) => EXIT_FAILURE,
            _ => EXIT_USAGE,
        }
    }
}

/// Report text plus whether the command's check succeeded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub ok: bool,
}

impl Report {
    fn ok(text: String) -> Report {
        Report { text, ok: true }
    }

    pub fn exit_code(&self) -> i32 {
        if self.ok {
            EXIT_OK
        } else {
            EXIT_FAILURE
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Options {
    pub action: Option<Action>,
    pub seed: Option<String>,
    pub depth: Option<u32>,
    pub point: Option<String>,
}

pub const DEFAULT_DEPTH: u32 = 8;

pub fn load(text: &str) -> Result<ActionScenario, CommandError> {
    Ok(scenario::parse_scenario(text)?)
}

fn require_valid(s: &ActionScenario) -> Result<(), CommandError> {
    let v = s.invariant_violations();
    if v.is_empty() {
        Ok(())
    } else {
        Err(CommandError::Invalid(v.join("; ")))
    }
}

pub fn validate(s: &ActionScenario) -> Report {
    let findings = groupclass::validate_scenario(s);
    let mut text = String::new();
    for f in &findings {
        writeln!(text, "{f}").unwrap();
    }
    let ok = !groupclass::has_errors(&findings);
    write!(text, "result: {}", if ok { "OK" } else { "FAIL" }).unwrap();
    Report { text, ok }
}

fn profile_for(s: &ActionScenario, action: Action) -> Result<GroupProfile, CommandError> {
    require_valid(s)?;
    Ok(groupclass::classify(&s.generators_for(action), s.cone(action))?)
}

pub fn classify(s: &ActionScenario, opts: &Options) -> Result<Report, CommandError> {
    let actions = match opts.action {
        Some(a) => vec![a],
        None => vec![Action::Aut, Action::Bir],
    };
    let mut blocks = Vec::new();
    for a in actions {
        let p = profile_for(s, a)?;
        blocks.push(format!("action: {a}\ncone: {}\n{p}", s.cone(a)));
    }
    Ok(Report::ok(blocks.join("\n\n")))
}

struct Context {
    action: Action,
    profile: GroupProfile,
    domain: DomainResult,
}

fn context(s: &ActionScenario, opts: &Options) -> Result<Context, CommandError> {
    let action = opts.action.unwrap_or(Action::Bir);
    let profile = profile_for(s, action)?;
    let cone = s.cone(action);
    let seed = match &opts.seed {
        Some(t) => Vec2::parse(t, s.d).map_err(|e| CommandError::Usage(format!("--seed: {e}")))?,
        None => fundom::default_seed(cone)?,
    };
    let domain = fundom::build_domain(&profile, cone, &seed)?;
    Ok(Context { action, profile, domain })
}

fn vec_line(label: &str, v: &Vec2) -> Result<String, CommandError> {
    let ray = v.ray().map_err(DomainError::from)?;
    Ok(format!("{label}: {ray} (vector {v})"))
}

pub fn domain(s: &ActionScenario, opts: &Options) -> Result<Report, CommandError> {
    let cx = context(s, opts)?;
    let dr = &cx.domain;
    let mut lines = vec![
        format!("action: {}", cx.action),
        format!("cone: {}", dr.cone),
        format!("kind: {}", cx.profile.kind),
        format!("case: {}", dr.case),
        vec_line("seed", &dr.seed)?,
    ];
    match &dr.witnesses {
        Witnesses::None => {}
        Witnesses::Fixed { y } => lines.push(vec_line("y", y)?),
        Witnesses::Cyclic { image } => lines.push(vec_line("f seed", image)?),
        Witnesses::Dihedral { z1, z2, theta } => {
            lines.push(vec_line("z1", z1)?);
            lines.push(vec_line("z2", z2)?);
            lines.push(format!("theta: {theta}"));
            let tau = cx.profile.minus_rep.as_ref().expect("dihedral has a minus part");
            let f = cx.profile.plus_generator.as_ref().expect("dihedral has a plus part");
            lines.push(format!("tau z1 = z1: {}", tau.apply_vec(z1) == *z1));
            lines.push(format!("theta z1 = f z1: {}", theta.apply_vec(z1) == f.apply_vec(z1)));
            lines.push(format!("theta z2 = z2: {}", theta.apply_vec(z2) == *z2));
            lines.push(format!("integral: {}", z1.integral().is_some() && z2.integral().is_some()));
        }
    }
    lines.push(format!("pi: {}", dr.pi));
    Ok(Report::ok(lines.join("\n")))
}

pub fn tile(s: &ActionScenario, opts: &Options) -> Result<Report, CommandError> {
    let cx = context(s, opts)?;
    let depth = opts.depth.unwrap_or(DEFAULT_DEPTH);
    let rep = fundom::verify_tiling(&cx.domain, &cx.profile, &cx.domain.cone, depth)?;
    Ok(Report { text: format!("action: {}\n{rep}", cx.action), ok: rep.passed() })
}

pub fn locate(s: &ActionScenario, opts: &Options) -> Result<Report, CommandError> {
    let point = opts.point.as_ref().ok_or_else(|| CommandError::Usage("locate needs --point".into()))?;
    let p = Ray::parse(point, s.d).map_err(|e| CommandError::Usage(format!("--point: {e}")))?;
    let cx = context(s, opts)?;
    let w = fundom::locate(&cx.domain, &cx.profile, &p)?;
    let m = fundom::word_matrix(&cx.profile, w)?;
    let tile = crate::conegeo::apply_cone(&m, &cx.domain.pi);
    let back = crate::conegeo::apply(&m.inverse(), &p);
    let text = format!("action: {}\npoint: {p}\nword: {w}\nmatrix: {m}\ntile: {tile}\npulled back: {back}", cx.action);
    Ok(Report::ok(text))
}

pub fn render(s: &ActionScenario, opts: &Options) -> Result<Report, CommandError> {
    let cx = context(s, opts)?;
    let depth = opts.depth.unwrap_or(DEFAULT_DEPTH);
    let tiles = fundom::tiles(&cx.domain, &cx.profile, depth)?;
    Ok(Report::ok(render::svg(&cx.domain, &tiles)))
}

/// Obstructions to an infinite automorphism group, checked against the
/// scenario's optional intersection and Chern data.
pub fn constraints(s: &ActionScenario) -> Result<Report, CommandError> {
    let profile = profile_for(s, Action::Aut)?;
    let mut lines = vec![format!("aut kind: {}", profile.kind)];
    let mut ok = true;
    let dim = s.dimension.map_or_else(|| "unknown".to_string(), |n| n.to_string());
    lines.push(format!("dimension: {dim}"));
    if let Some(d) = &s.intersection {
        lines.push(format!("form: {}", d.form));
    }
    let (Some(f), Some(alpha)) = (&profile.plus_generator, &profile.alpha) else {
        lines.push("no hyperbolic automorphism: obstructions not applicable".into());
        if let Some(d) = &s.intersection {
            if d.form.n() % 2 == 0 {
                match chern::middle_positivity(&d.form) {
                    Ok(b) => {
                        ok &= b;
                        lines.push(format!("middle positivity: {b}"));
                    }
                    Err(e) => lines.push(format!("middle positivity: not applicable ({e})")),
                }
            }
        }
        return Ok(Report { text: lines.join("\n"), ok });
    };
    lines.push(format!("f: {f}"));
    lines.push(format!("alpha: {alpha}"));
    let chern_err = |e: chern::ChernError| CommandError::Invalid(e.to_string());
    if let Some(n) = s.dimension {
        let fv: Vec<String> =
            chern::forced_vanishing(n, alpha).map_err(chern_err)?.iter().map(|m| m.to_string()).collect();
        lines.push(format!("forced vanishing: {{{}}}", fv.join(", ")));
    }
    if let (Some(d), Some(basis)) = (&s.intersection, s.form_basis()) {
        let rep = chern::check_form_invariance(&d.form, f, &basis).map_err(chern_err)?;
        if rep.invariant {
            lines.push("form invariance: invariant".into());
        } else {
            ok = false;
            let mm: Vec<String> = rep.mismatched.iter().map(|m| m.to_string()).collect();
            lines.push(format!("form invariance: VIOLATION at m = {}", mm.join(", ")));
        }
        if let Some(v) = &rep.forced_violations {
            let vv: Vec<String> = v.iter().map(|m| m.to_string()).collect();
            lines.push(format!("forced-vanishing violations: {{{}}}", vv.join(", ")));
        }
        if d.form.n() % 2 == 0 {
            match chern::middle_positivity(&d.form) {
                Ok(b) => {
                    ok &= b;
                    lines.push(format!("middle positivity: {b}"));
                }
                Err(e) => lines.push(format!("middle positivity: not applicable ({e})")),
            }
        }
    }
    if let Some(phi) = &s.cn1 {
        let cert = chern::cn1_must_vanish(phi, alpha).map_err(chern_err)?;
        ok &= cert.consistent;
        lines.push(format!("c_(n-1): {cert}"));
    }
    if let (Some(n), Some(pos)) = (s.dimension, s.c2_positive) {
        if n % 2 == 1 {
            lines.push("c2: not applicable (odd dimension; every coefficient already vanishes)".into());
        } else {
            let v = chern::c2_obstruction(n, pos, alpha).map_err(chern_err)?;
            ok &= !matches!(v, C2Verdict::Contradiction { .. });
            lines.push(format!("c2: {v}"));
        }
    }
    lines.push(format!("result: {}", if ok { "CONSISTENT" } else { "OBSTRUCTED" }));
    Ok(Report { text: lines.join("\n"), ok })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Validate,
    Classify,
    Domain,
    Tile,
    Locate,
    Constraints,
    Render,
}

/// Parse `text` and run `cmd`; errors are folded into exit codes.
pub fn run(cmd: Command, text: &str, opts: &Options) -> Result<Report, CommandError> {
    let s = load(text)?;
    match cmd {
        Command::Validate => Ok(validate(&s)),
        Command::Classify => classify(&s, opts),
        Command::Domain => domain(&s, opts),
        Command::Tile => tile(&s, opts),
        Command::Locate => locate(&s, opts),
        Command::Constraints => constraints(&s),
        Command::Render => render(&s, opts),
    }
}
