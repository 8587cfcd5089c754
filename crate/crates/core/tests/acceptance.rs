//! End-to-end acceptance checks. Prints one line per criterion and exits
//! nonzero if any fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use common::{eigenbasis_matrix, forced_zero_coordinates, interiors_overlap, invariance_system, oguiso_f};
use pic2cone::chern::{c2_obstruction, forced_vanishing, C2Verdict};
use pic2cone::conegeo::{apply, apply_cone, eigen_data, EigenData};
use pic2cone::fundom::{build_domain, locate, verify_tiling, word_matrix, Check, Outcome, Witnesses};
use pic2cone::groupclass::{classify, fundamental_plus_generator, is_cone_automorphism, Action};
use pic2cone::scenario::{bundled, parse_scenario};
use pic2cone::{Cone2, GroupKind, LatMat, Ray, Vec2, QF};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome_ = Result<String, String>;
type Criterion = fn() -> Outcome_;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn oguiso() -> pic2cone::ActionScenario {
    parse_scenario(bundled::OGUISO).unwrap()
}

fn ms(d: Duration) -> String {
    format!("{:.1} ms", d.as_secs_f64() * 1e3)
}

fn criterion_1() -> Outcome_ {
    let start = Instant::now();
    let s = oguiso();
    let p = classify(&s.generators_for(Action::Bir), &s.mov).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure!(p.kind == GroupKind::InfiniteDihedral, "kind {}", p.kind);
    let f = p.plus_generator.clone().ok_or("no plus generator")?;
    ensure!(f.trace() == 34.into(), "trace {}", f.trace());
    let alpha = p.alpha.clone().ok_or("no alpha")?;
    ensure!(alpha == QF::from_ints(17, 12, 2), "alpha {alpha}");
    let sum = &alpha + &alpha.inv().unwrap();
    ensure!(sum.to_integer() == Some(34.into()), "alpha + 1/alpha = {sum}");
    ensure!(alpha.minimal_poly_degree() == 2, "degree {}", alpha.minimal_poly_degree());
    ensure!(elapsed < Duration::from_secs(1), "took {}", ms(elapsed));
    Ok(format!("INFINITE_DIHEDRAL, trace 34, alpha {alpha}, {}", ms(elapsed)))
}

fn criterion_2() -> Outcome_ {
    let s = oguiso();
    let p = classify(&s.generators_for(Action::Bir), &s.mov).unwrap();
    let dr = build_domain(&p, &s.mov, &Vec2::from_ints(1, 1, 2)).map_err(|e| e.to_string())?;
    let Witnesses::Dihedral { z1, z2, theta } = &dr.witnesses else { return Err("not dihedral".into()) };
    let (f, tau) = (p.plus_generator.as_ref().unwrap(), p.minus_rep.as_ref().unwrap());
    ensure!(tau.apply_vec(z1) == *z1, "tau z1 = {}", tau.apply_vec(z1));
    ensure!(theta.apply_vec(z1) == f.apply_vec(z1), "theta z1 != f z1");
    ensure!(theta.apply_vec(z2) == *z2, "theta z2 != z2");
    ensure!(z1.integral().is_some() && z2.integral().is_some(), "non-integral witness");
    Ok(format!("z1 = {z1}, z2 = {z2}, theta = {theta}"))
}

fn criterion_3() -> Outcome_ {
    let s = oguiso();
    let p = classify(&s.generators_for(Action::Bir), &s.mov).unwrap();
    let dr = build_domain(&p, &s.mov, &Vec2::from_ints(1, 1, 2)).unwrap();
    let start = Instant::now();
    let rep = verify_tiling(&dr, &p, &s.mov, 20).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure!(rep.passed(), "violations: {:?}", rep.violations);
    for c in [Check::Containment, Check::Disjointness, Check::Adjacency, Check::Convergence] {
        ensure!(rep.outcome(c) == Outcome::Pass, "{c}: {}", rep.outcome(c));
    }
    ensure!(rep.tiles.len() == 82, "{} tiles", rep.tiles.len());
    ensure!(elapsed < Duration::from_secs(10), "took {}", ms(elapsed));
    for depth in 1..=6 {
        let small = verify_tiling(&dr, &p, &s.mov, depth).unwrap();
        for (i, a) in small.tiles.iter().enumerate() {
            for b in &small.tiles[i + 1..] {
                ensure!(!interiors_overlap(&a.cone, &b.cone), "oracle: {} overlaps {}", a.word, b.word);
            }
        }
        ensure!(small.passed(), "library rejects depth {depth}");
    }
    Ok(format!("82 tiles at depth 20 in {}, brute force agrees for depth <= 6", ms(elapsed)))
}

fn criterion_4() -> Outcome_ {
    let s = oguiso();
    let p = classify(&s.generators_for(Action::Bir), &s.mov).unwrap();
    let dr = build_domain(&p, &s.mov, &Vec2::from_ints(1, 1, 2)).unwrap();
    let Witnesses::Dihedral { theta, .. } = &dr.witnesses else { return Err("not dihedral".into()) };
    let theta_pi = apply_cone(theta, &dr.pi);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let start = Instant::now();
    let mut done = 0;
    while done < 1000 {
        let (u, v) = (rng.gen_range(-1_000_000i64..=1_000_000), rng.gen_range(-1_000_000i64..=1_000_000));
        if u == 0 && v == 0 {
            continue;
        }
        let r = Ray::from_ints(u, v, 2).unwrap();
        if !s.mov.contains(&r, true) {
            continue;
        }
        let w = locate(&dr, &p, &r).map_err(|e| format!("({u}, {v}): {e}"))?;
        let m = word_matrix(&p, w).unwrap();
        ensure!(apply_cone(&m, &dr.pi).contains(&r, false), "({u}, {v}) not in tile {w}");
        let back = apply(&m.inverse(), &r);
        ensure!(dr.pi.contains(&back, false) || theta_pi.contains(&back, false), "({u}, {v}) pulls back to {back}");
        done += 1;
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(10), "took {}", ms(elapsed));
    Ok(format!("1000 points located in {}", ms(elapsed)))
}

/// Involutions `[[a, b], [c, -a]]` with `a^2 + bc = 1`.
fn random_involution(rng: &mut ChaCha8Rng) -> LatMat {
    let a = rng.gen_range(-6i64..=6);
    let n = 1 - a * a;
    if n == 0 {
        let t = rng.gen_range(-6i64..=6);
        return if rng.gen_bool(0.5) {
            LatMat::from_rows(a, t, 0, -a).unwrap()
        } else {
            LatMat::from_rows(a, 0, t, -a).unwrap()
        };
    }
    let divs: Vec<i64> = (1..=n.abs()).filter(|k| n % k == 0).collect();
    let b = divs[rng.gen_range(0..divs.len())] * if rng.gen_bool(0.5) { 1 } else { -1 };
    LatMat::from_rows(a, b, n / b, -a).unwrap()
}

fn random_sl2(rng: &mut ChaCha8Rng) -> LatMat {
    let gens = [
        LatMat::from_rows(1, 1, 0, 1).unwrap(),
        LatMat::from_rows(1, 0, -1, 1).unwrap(),
        LatMat::from_rows(0, -1, 1, 0).unwrap(),
    ];
    (0..rng.gen_range(2..9)).fold(LatMat::identity(), |m, _| m.mul(&gens[rng.gen_range(0..3)]))
}

fn square_free_part(n: u64) -> u64 {
    let mut d = 1;
    let mut rest = n;
    let mut p = 2;
    while p * p <= rest {
        while rest.is_multiple_of(p * p) {
            rest /= p * p;
        }
        if rest.is_multiple_of(p) {
            rest /= p;
            d *= p;
        }
        p += 1;
    }
    d * rest
}

/// Salient cones spanned by the irrational eigenrays of a hyperbolic matrix.
fn irrational_cones(f: &LatMat) -> Vec<Cone2> {
    let tr = i64::try_from(&f.trace()).unwrap();
    if f.det() != 1 || tr.abs() <= 2 || tr.abs() > 10_000 {
        return vec![];
    }
    let disc = (tr * tr - 4) as u64;
    let d = square_free_part(disc);
    if d == 1 {
        return vec![];
    }
    let Ok(EigenData::Real { rays, .. }) = eigen_data(f, d) else { return vec![] };
    let [a, b] = rays;
    [Cone2::new(a.clone(), b.clone()), Cone2::new(a, b.opposite())].into_iter().filter_map(Result::ok).collect()
}

fn criterion_5() -> Outcome_ {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    const BOX: i64 = 7;
    let (mut found, mut cones, mut generic_hits) = (0usize, 0usize, 0usize);
    let mut attempts = 0;
    while found < 200 {
        attempts += 1;
        ensure!(attempts < 20_000, "only {found} matrices found");
        let generic = attempts % 2 == 0;
        let f =
            if generic { random_sl2(&mut rng) } else { random_involution(&mut rng).mul(&random_involution(&mut rng)) };
        for c in irrational_cones(&f) {
            cones += 1;
            let (r1, r2) = (c.r1().vector(), c.r2().vector());
            let (x1, y1, x2, y2) = (r1.u.to_f64(), r1.v.to_f64(), r2.u.to_f64(), r2.v.to_f64());
            for a in -BOX..=BOX {
                for b in -BOX..=BOX {
                    for cc in -BOX..=BOX {
                        for dd in -BOX..=BOX {
                            if a * dd - b * cc != -1 {
                                continue;
                            }
                            // cheap float screen before the exact test: m r1 must point along r2
                            let (p, q) = (a as f64 * x1 + b as f64 * y1, cc as f64 * x1 + dd as f64 * y1);
                            if (p * y2 - q * x2).abs() > 1e-6 * (p.abs() + q.abs()) * (x2.abs() + y2.abs()) {
                                continue;
                            }
                            let m = LatMat::from_rows(a, b, cc, dd).unwrap();
                            if !is_cone_automorphism(&m, &c) {
                                continue;
                            }
                            ensure!(m.mul(&m).is_identity(), "{m} preserves {c} but m^2 = {}", m.mul(&m));
                            found += 1;
                            if generic {
                                generic_hits += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(format!(
        "{found} det -1 automorphisms of {cones} irrational cones are involutions ({generic_hits} from generic cones)"
    ))
}

fn criterion_6() -> Outcome_ {
    let f = oguiso_f();
    let mov = oguiso().mov;
    let mut pairs = 0;
    for k1 in (-6i64..=6).filter(|k| *k != 0) {
        for k2 in (-6i64..=6).filter(|k| *k != 0) {
            let g = fundamental_plus_generator(&[f.pow(k1), f.pow(k2)], &mov)
                .map_err(|e| e.to_string())?
                .ok_or(format!("no generator for ({k1}, {k2})"))?;
            let e = num_integer::gcd(k1.abs(), k2.abs());
            ensure!(g == f.pow(e) || g == f.pow(-e), "({k1}, {k2}) gave {g}");
            pairs += 1;
        }
    }
    Ok(format!("all {pairs} exponent pairs reduce to f^gcd"))
}

fn criterion_7() -> Outcome_ {
    let mats = [
        (oguiso_f(), 2u64),
        (LatMat::from_rows(2, 1, 1, 1).unwrap(), 5),
        (LatMat::from_rows(-1, -8, 8, 63).unwrap(), 15),
    ];
    for (f, d) in &mats {
        let m = eigenbasis_matrix(f, *d);
        let alpha = if m[1][1] > m[0][0] { m[1][1].clone() } else { m[0][0].clone() };
        for n in 1..=8 {
            let oracle: Vec<u32> =
                forced_zero_coordinates(invariance_system(n, &m)).into_iter().map(|c| c as u32).collect();
            let got: Vec<u32> = forced_vanishing(n, &alpha).map_err(|e| e.to_string())?.into_iter().collect();
            ensure!(got == oracle, "n = {n}, f = {f}: {got:?} vs oracle {oracle:?}");
        }
    }
    let alpha = QF::from_ints(17, 12, 2);
    for (n, powers) in [(4, (2, 1)), (6, (2, 2))] {
        match c2_obstruction(n, true, &alpha).map_err(|e| e.to_string())? {
            C2Verdict::Contradiction { x1_power, c2_power, .. } => {
                ensure!((x1_power, c2_power) == powers, "n = {n}: powers ({x1_power}, {c2_power})")
            }
            v => return Err(format!("n = {n}: {v}")),
        }
    }
    Ok("forced vanishing matches the linear-system oracle for n <= 8; n = 4, 6 both contradict".into())
}

fn criterion_8() -> Outcome_ {
    let exe = env!("CARGO_BIN_EXE_pic2cone");
    let file = concat!(env!("CARGO_MANIFEST_DIR"), "/data/oguiso.scenario");
    let dir = std::env::temp_dir().join(format!("pic2cone-accept-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let commands: [&[&str]; 6] = [
        &["validate", file],
        &["classify", file],
        &["domain", file],
        &["tile", file],
        &["locate", file, "--point", "(3, 5)"],
        &["constraints", file],
    ];
    let run = |args: &[&str]| Command::new(exe).args(args).output().map_err(|e| e.to_string());
    for args in commands {
        let (a, b) = (run(args)?, run(args)?);
        ensure!(a.status.success(), "{} exited {:?}", args[0], a.status.code());
        ensure!(a.stdout == b.stdout && a.stderr == b.stderr, "{} output differs between runs", args[0]);
    }
    let mut svgs = Vec::new();
    for i in 0..2 {
        let out = dir.join(format!("run{i}.svg"));
        let o = run(&["render", file, "--depth", "5", "--out", out.to_str().unwrap()])?;
        ensure!(o.status.success(), "render exited {:?}", o.status.code());
        svgs.push(std::fs::read(&out).map_err(|e| e.to_string())?);
    }
    ensure!(svgs[0] == svgs[1], "svg differs between runs");
    let _ = std::fs::remove_dir_all(&dir);
    Ok("7 commands byte-identical across two runs".into())
}

fn main() {
    let criteria: [(&str, Criterion); 8] = [
        ("oguiso end-to-end classification", criterion_1),
        ("fundamental domain identities", criterion_2),
        ("tiling certificate at depth 20", criterion_3),
        ("point location totality", criterion_4),
        ("det -1 cone automorphisms are involutions", criterion_5),
        ("exponent-Euclid correctness", criterion_6),
        ("chern obstructions", criterion_7),
        ("determinism", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match result {
            Ok(detail) => println!("criterion {} ({name}): PASS - {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL - {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
