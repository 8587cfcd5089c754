use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pic2cone")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn validate_exit_codes() {
    assert_eq!(run(&["validate", &data("oguiso.scenario")]).status.code(), Some(0));
    let bad = run(&["validate", &data("bad-rational-ray.scenario")]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("ERROR [a]"));
    let empty = run(&["validate", &data("no-generators.scenario")]);
    assert_eq!(empty.status.code(), Some(0));
    assert!(stdout(&empty).contains("TRIVIAL"));
}

#[test]
fn usage_and_parse_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["validate", "/nonexistent/file.scenario"]).status.code(), Some(2));
    let dir = std::env::temp_dir().join(format!("pic2cone-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let junk = dir.join("junk.scenario");
    std::fs::write(&junk, "field = 2\nnef = 3\n").unwrap();
    assert_eq!(run(&["validate", junk.to_str().unwrap()]).status.code(), Some(2));
    let o = run(&["locate", &data("oguiso.scenario"), "--point", "(1, 1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["tile", &data("oguiso.scenario"), "--seed", "(-1, -1)"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn classify_golden() {
    let o = run(&["classify", &data("oguiso.scenario")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), include_str!("golden/oguiso-classify.txt"));
    let o = run(&["classify", &data("single-involution.scenario"), "--action", "aut"]);
    assert!(stdout(&o).contains("kind: ORDER_TWO"));
}

#[test]
fn domain_tile_locate() {
    let o = run(&["domain", &data("oguiso.scenario")]);
    let text = stdout(&o);
    assert!(text.contains("z1: (0, 1)") && text.contains("z2: (-1, 6)"), "{text}");
    let o = run(&["tile", &data("oguiso.scenario")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim_end().ends_with("result: PASS, 34 tiles"));
    let o = run(&["locate", &data("oguiso.scenario"), "--point", "(1,1)"]);
    assert!(stdout(&o).contains("word: (k=0, flip)"));
}

#[test]
fn constraints_surface_chern_checks() {
    let o = run(&["constraints", &data("hyperbolic-aut.scenario")]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("form invariance: VIOLATION at m = 3"), "{text}");
    assert!(text.contains("c_(n-1): inconsistent"));
    assert!(text.contains("c2: CONTRADICTION"));
}

#[test]
fn render_golden_svg() {
    let dir = std::env::temp_dir().join(format!("pic2cone-render-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("o5.svg");
    let o = run(&["render", &data("oguiso.scenario"), "--depth", "5", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let svg = std::fs::read_to_string(&out).unwrap();
    assert_eq!(svg.matches("class=\"tile\"").count(), 22);
    assert_eq!(svg, include_str!("golden/oguiso-depth5.svg"));
    let zero = stdout(&run(&["render", &data("oguiso.scenario"), "--depth", "0"]));
    assert_eq!(zero.matches("class=\"tile\"").count(), 2);
    let trivial = stdout(&run(&["render", &data("no-generators.scenario")]));
    assert_eq!(trivial.matches("class=\"tile\"").count(), 1);
}
