use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_concordance"))
        .args(args)
        .env_remove("CONCORDANCE_CATALOG")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = vec!["--output", "json"];
    all.extend_from_slice(args);
    let o = run(&all);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("concordance-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn verdict_trefoil_cable_is_topologically_obstructed() {
    let v = json(&["verdict", "RH-trefoil", "--cable", "2"]);
    assert_eq!(v["summary"], "obstructed (topological)");
    let w = &v["topological"]["witnesses"][0];
    assert_eq!(w["kind"], "signature_mismatch");
    assert_eq!(w["exact_check"], true);
}

#[test]
fn fox_milnor_twist_up_to_four() {
    let v = json(&["fox-milnor", "3-twist-negative-clasp", "--cable", "2", "--k-max", "4"]);
    assert_eq!(v["report"]["verdict"], "obstructed-up-to-complexity-4");
    assert_eq!(v["report"]["witnesses"].as_array().unwrap().len(), 4);
}

#[test]
fn legendrian_satellite_of_bundled_pattern() {
    let v = json(&["legendrian", "satellite", "paper-pattern-P", "legendrian-RH-trefoil"]);
    assert_eq!(v["satellite"]["tb"], 2);
    assert_eq!(v["satellite"]["rot"], 1);
    let t = run(&["legendrian", "satellite", "paper-pattern-P", "legendrian-RH-trefoil"]);
    assert!(String::from_utf8(t.stdout)
        .unwrap()
        .contains("satellite: tb = 2, rot = 1"));
}

#[test]
fn slice_bennequin_pipeline_and_homology_check() {
    let v = json(&["theorem31", "RH-trefoil"]);
    assert_eq!(v["report"]["satellite_bounds"]["g4_min"], 2);
    assert_eq!(v["report"]["g4_increases"], true);
    let v = json(&["homology-check", "cable-cobordism-p3"]);
    assert_eq!(v["check"]["integral_relation"], true);
    assert_eq!(v["homology"]["rank"], 1);
}

#[test]
fn smooth_verdict_for_whitehead_double() {
    let v = json(&["verdict", "whitehead-double-RH-trefoil", "--cable", "3"]);
    assert_eq!(v["summary"], "obstructed (smooth)");
    assert_eq!(v["topologically_slice"][0]["value"], true);
    assert_eq!(v["topologically_slice"][1]["value"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["signature", "no-such-knot", "--omega", "1/3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["signature", "RH-trefoil", "--omega", "1/6"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["theorem31", "figure-eight"]).status.code(), Some(3));
    assert_eq!(
        run(&["homology-check", "cable-cobordism-p2", "--p", "3"]).status.code(),
        Some(3)
    );
    assert_eq!(run(&["catalog"]).status.code(), Some(0));
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    for args in [
        &["--output", "json", "verdict", "figure-eight", "unknot"][..],
        &["--output", "json", "sigfn", "RH-trefoil", "--cable", "3"][..],
        &["--output", "json", "cable-obstruction", "RH-trefoil", "--p", "5"][..],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}

#[test]
fn catalog_override_from_environment() {
    let dir = scratch("env");
    let path = dir.join("empty.json");
    std::fs::write(&path, "").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_concordance"))
        .args(["--output", "json", "catalog"])
        .env("CONCORDANCE_CATALOG", &path)
        .output()
        .unwrap();
    assert!(o.status.success());
    assert_eq!(
        serde_json::from_slice::<serde_json::Value>(&o.stdout).unwrap(),
        serde_json::json!([])
    );

    std::fs::create_dir_all(dir.join("fronts")).unwrap();
    std::fs::write(
        dir.join("fronts/k.front"),
        "orient +\nL 0\nL 2\nX 1\nX 1\nX 1\nR 2\nR 0\n",
    )
    .unwrap();
    let path = dir.join("one.json");
    std::fs::write(
        &path,
        r#"[{"name": "k", "seifert_matrix": [[-1, 1], [0, -1]], "fronts": [{"name": "kf", "file": "fronts/k.front"}]}]"#,
    )
    .unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_concordance"))
        .args(["--output", "json", "legendrian", "front", "kf"])
        .env("CONCORDANCE_CATALOG", &path)
        .output()
        .unwrap();
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["invariants"]["tb"], 1);

    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"[{"name": "k", "seifert_matrix": [[2, 0], [0, 2]]}]"#).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_concordance"))
        .args(["catalog"])
        .env("CONCORDANCE_CATALOG", &bad)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("validation"));
    std::fs::remove_dir_all(&dir).ok();
}
