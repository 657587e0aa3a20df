//! End-to-end checks of the `pcat` binary: exit codes, output shapes,
//! config precedence, cache behavior.

use std::path::Path;
use std::process::{Command, Output};

fn pcat() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_pcat"));
    // Isolate from ambient configuration.
    for var in [
        "PCAT_DEGREE",
        "PCAT_BOUND",
        "PCAT_AMBIENT",
        "PCAT_BUDGET",
        "PCAT_FORMAT",
        "PCAT_CACHE",
    ] {
        cmd.env_remove(var);
    }
    cmd.current_dir(env!("CARGO_TARGET_TMPDIR"));
    cmd
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary runs")
}

fn stdout_lines(out: &Output) -> Vec<String> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(String::from)
        .collect()
}

fn write_generators(dir: &Path, name: &str, gens: &[&str]) -> std::path::PathBuf {
    let path = dir.join(name);
    let doc = serde_json::json!({ "generators": gens });
    std::fs::write(&path, serde_json::to_string_pretty(&doc).unwrap()).unwrap();
    path
}

#[test]
fn enumerate_counts_and_exit_codes() {
    let out = run(pcat().args(["enumerate", "--up", "", "--down", "wwww"]));
    assert!(out.status.success());
    assert_eq!(stdout_lines(&out).len(), 15, "Bell number of 4");

    let out = run(pcat().args([
        "enumerate",
        "--up",
        "",
        "--down",
        "wwwwww",
        "--filter",
        "nc-pairing",
    ]));
    assert!(out.status.success());
    assert_eq!(stdout_lines(&out).len(), 5, "Catalan number of 3");

    let out = run(pcat().args(["enumerate", "--up", "w", "--down", "w"]));
    assert_eq!(stdout_lines(&out).len(), 2, "Bell number of 2");

    // Malformed word: usage error.
    let out = run(pcat().args(["enumerate", "--up", "x", "--down", "w"]));
    assert_eq!(out.status.code(), Some(2));

    // Bound exceeded: usage error.
    let out = run(pcat().args(["enumerate", "--down", "wwwwwwwww"]));
    assert_eq!(out.status.code(), Some(2));

    // Unknown filter: usage error.
    let out = run(pcat().args(["enumerate", "--down", "ww", "--filter", "frobnicate"]));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn enumerate_json_is_deterministic() {
    let a = run(pcat().args(["enumerate", "--down", "wbwb", "--format", "json"]));
    let b = run(pcat().args(["enumerate", "--down", "wbwb", "--format", "json"]));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn closure_of_crossing_is_the_matching_pairings() {
    let dir = tempfile::tempdir().unwrap();
    let gen = write_generators(dir.path(), "x.json", &["[ww|ww] {u1 d2} {u2 d1}"]);
    let out_path = dir.path().join("x-closure.json");
    let out = run(pcat().args([
        "closure",
        "--gen",
        gen.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
        "--degree",
        "4",
        "--bound",
        "8",
        "--budget",
        "1000000",
    ]));
    assert_eq!(out.status.code(), Some(0), "stable closure exits 0");

    let text = std::fs::read_to_string(&out_path).unwrap();
    let file = pcat_core::category::CategoryFile::from_json(&text).unwrap();
    let got = file.into_category().unwrap();
    let want =
        pcat_core::category::vertex_category(pcat_core::partition::ClassPredicate::CP2, 4)
            .unwrap();
    assert!(got.equals(&want).unwrap());
}

#[test]
fn closure_of_nothing_is_the_base_category() {
    let dir = tempfile::tempdir().unwrap();
    let gen = write_generators(dir.path(), "empty.json", &[]);
    let out = run(pcat().args([
        "closure",
        "--gen",
        gen.to_str().unwrap(),
        "--degree",
        "4",
        "--bound",
        "6",
        "--budget",
        "500000",
    ]));
    assert_eq!(out.status.code(), Some(0));
    let file = pcat_core::category::CategoryFile::from_json(
        &String::from_utf8_lossy(&out.stdout),
    )
    .unwrap();
    let got = file.into_category().unwrap();
    let want =
        pcat_core::category::vertex_category(pcat_core::partition::ClassPredicate::CNC2, 4)
            .unwrap();
    assert!(got.equals(&want).unwrap());
}

#[test]
fn closure_with_unreadable_file_exits_2() {
    let out = run(pcat().args(["closure", "--gen", "/nonexistent/gens.json"]));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_cube_small_degree_passes() {
    let out = run(pcat().args([
        "verify-cube",
        "--degree",
        "4",
        "--bound",
        "8",
        "--budget",
        "1000000",
    ]));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let lines = stdout_lines(&out);
    let passes = lines.iter().filter(|l| l.starts_with("PASS face.")).count();
    assert_eq!(passes, 12, "12 face conditions: {lines:?}");
}

#[test]
fn uniformity_of_halflib_fails_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let gen = write_generators(
        dir.path(),
        "halflib.json",
        &["[www|www] {u1 d3} {u2 d2} {u3 d1}", "[|ww] {d1 d2}"],
    );
    let out = run(pcat().args([
        "uniformity",
        "--gen",
        gen.to_str().unwrap(),
        "--ambient",
        "3",
        "--degree",
        "4",
        "--budget",
        "2000000",
    ]));
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(
        text.contains("witness=(ww,ww) dims 3 vs 2"),
        "witness line missing: {text}"
    );
}

#[test]
fn classify_small_pool() {
    let dir = tempfile::tempdir().unwrap();
    let pool = dir.path().join("pool");
    std::fs::create_dir(&pool).unwrap();
    let base =
        pcat_core::category::vertex_category(pcat_core::partition::ClassPredicate::CNC2, 4)
            .unwrap();
    let all = pcat_core::category::predicate_category("P", 4, |_| true).unwrap();
    for cat in [&base, &all] {
        let file = pcat_core::category::CategoryFile::from_category(cat);
        std::fs::write(
            pool.join(format!("{}.json", cat.label())),
            file.to_json(),
        )
        .unwrap();
    }
    let out = run(pcat().args([
        "classify",
        "--pool",
        pool.to_str().unwrap(),
        "--ambient",
        "3",
        "--budget",
        "1000000",
    ]));
    // The full category is rejected, so the run reports a failure exit.
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("SURVIVOR CNC2"), "{text}");
    assert!(text.contains("REJECTED P axiom=containment"), "{text}");
    assert!(text.contains("survivors CNC2"), "{text}");
}

#[test]
fn hom_dim_reports_dimensions_and_dumps_bases() {
    let dir = tempfile::tempdir().unwrap();
    let gen = write_generators(dir.path(), "base.json", &[]);
    let dump = dir.path().join("bases.json");
    let out = run(pcat().args([
        "hom-dim",
        "--gen",
        gen.to_str().unwrap(),
        "--degree",
        "4",
        "--ambient",
        "2",
        "--budget",
        "500000",
        "--dump-bases",
        dump.to_str().unwrap(),
    ]));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("up=wb down=wb dim=2"), "{text}");
    let bases: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&dump).unwrap()).unwrap();
    assert_eq!(bases["report"], "hom-bases");
    assert!(bases["spaces"].as_array().unwrap().len() > 4);
}

#[test]
fn config_precedence_flags_env_file() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("pcat.conf");
    // Config allows 10 legs; enumeration of 9 legs needs degree >= 9.
    std::fs::write(&conf, "degree=10\n").unwrap();
    let args = [
        "enumerate",
        "--down",
        "wwwwwwwww",
        "--filter",
        "nc-pairing",
    ];

    // File layer alone: succeeds.
    let out = run(pcat()
        .args(args)
        .arg("--config")
        .arg(conf.to_str().unwrap()));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));

    // Environment overrides the file: fails the bound.
    let out = run(pcat()
        .args(args)
        .arg("--config")
        .arg(conf.to_str().unwrap())
        .env("PCAT_DEGREE", "6"));
    assert_eq!(out.status.code(), Some(2));

    // Flag overrides the environment: succeeds again.
    let out = run(pcat()
        .args(args)
        .arg("--config")
        .arg(conf.to_str().unwrap())
        .env("PCAT_DEGREE", "6")
        .args(["--degree", "10"]));
    assert_eq!(out.status.code(), Some(0));

    // Bad config line: usage error.
    std::fs::write(&conf, "degre=10\n").unwrap();
    let out = run(pcat()
        .args(args)
        .arg("--config")
        .arg(conf.to_str().unwrap()));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cold_and_warm_cache_reports_are_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let args = [
        "verify-cube",
        "--degree",
        "4",
        "--bound",
        "6",
        "--budget",
        "500000",
        "--format",
        "json",
    ];
    let cold = run(pcat().args(args).args(["--cache-dir", cache.to_str().unwrap()]));
    assert_eq!(cold.status.code(), Some(0), "{}", String::from_utf8_lossy(&cold.stderr));
    assert!(cache.read_dir().unwrap().count() > 0, "cache populated");
    let warm = run(pcat().args(args).args(["--cache-dir", cache.to_str().unwrap()]));
    assert_eq!(warm.status.code(), Some(0));
    assert_eq!(cold.stdout, warm.stdout, "cold and warm runs agree byte for byte");
}

#[test]
fn slice_of_a_vertex_file_passes() {
    let dir = tempfile::tempdir().unwrap();
    let vertex =
        pcat_core::category::vertex_category(pcat_core::partition::ClassPredicate::CNC2, 4)
            .unwrap();
    let path = dir.path().join("cnc2.json");
    std::fs::write(
        &path,
        pcat_core::category::CategoryFile::from_category(&vertex).to_json(),
    )
    .unwrap();
    let out = run(pcat().args([
        "slice",
        "--category",
        path.to_str().unwrap(),
        "--bound",
        "6",
        "--budget",
        "1000000",
    ]));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("summary pass=72 fail=0 inconclusive=0"), "{text}");
}
