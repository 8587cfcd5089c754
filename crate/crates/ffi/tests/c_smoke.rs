use std::path::PathBuf;
use std::process::Command;

/// Compile a C program against the generated header and the static library.
#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/<test binary>
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|p| p.parent()).unwrap().to_path_buf();
    let lib = profile_dir.join("libpic2cone_ffi.a");
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler");
        return;
    }
    // test builds only produce the rlib; ask cargo for the static library
    let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
    let built = Command::new(cargo)
        .args(["build", "--offline", "-q", "-p", "pic2cone-ffi", "--lib"])
        .arg("--manifest-path")
        .arg(manifest.join("Cargo.toml"))
        .status()
        .unwrap();
    assert!(built.success() && lib.exists(), "no static library at {}", lib.display());
    let out = std::env::temp_dir().join(format!("pic2cone-smoke-{}", std::process::id()));
    let status = Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let run = Command::new(&out).arg(manifest.join("../core/data/oguiso.scenario")).output().unwrap();
    let _ = std::fs::remove_file(&out);
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8(run.stdout).unwrap(), "kind=3 alpha=17+12*sqrt(2) trace=34\n");
}
