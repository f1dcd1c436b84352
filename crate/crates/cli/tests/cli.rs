//! The `neumaier` binary end to end: outputs, reports and exit statuses.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn neumaier(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_neumaier"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let out = neumaier(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn write_recipe(dir: &Path, name: &str, inputs: &[&Value], pi: Value) -> String {
    let recipe = serde_json::json!({
        "inputs": inputs.iter().map(|a| serde_json::json!({"graph6": a["graph6"], "partition": a["partition"]})).collect::<Vec<_>>(),
        "pi": pi,
    });
    let path = dir.join(name);
    std::fs::write(&path, recipe.to_string()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn generate_lists_and_builds() {
    let list = report(&["generate", "--list"]);
    let names: Vec<&str> = list["outputs"]["measurements"]["generators"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"icosahedron") && names.contains(&"circulant"));

    let circ = report(&["generate", "circulant", "--n", "65", "--log2-powers"]);
    assert_eq!(
        circ["outputs"]["measurements"]["regularity"],
        "edge-regular (65,12,3)"
    );

    let ico = report(&["generate", "icosahedron"]);
    let art = &ico["outputs"]["artifacts"][0];
    assert_eq!(art["graph6"].as_str().unwrap().len(), 12);
    assert_eq!(art["partition"]["codes"].as_array().unwrap().len(), 6);
    assert_eq!(
        ico["command"],
        serde_json::json!(["neumaier", "generate", "icosahedron"])
    );
}

#[test]
fn construct_and_switch_from_recipes() {
    let dir = tempfile::tempdir().unwrap();
    let ico = report(&["generate", "icosahedron"]);
    let art = &ico["outputs"]["artifacts"][0];
    let recipe = write_recipe(
        dir.path(),
        "ico.json",
        &[art, art],
        serde_json::json!([[1, 2, 3, 4, 5, 6]]),
    );

    let built = report(&["construct", &recipe]);
    let cert = &built["outputs"]["artifacts"][0]["certificate"];
    assert_eq!(
        cert["params"],
        serde_json::json!({"v": 24, "k": 8, "lambda": 2, "m": 1, "s": 4})
    );
    assert_eq!(cert["strict"], true);
    assert_eq!(cert["spread"].as_array().unwrap().len(), 6);
    assert_eq!(built["outputs"]["measurements"]["round_trip"], true);
    assert_eq!(built["inputs"][0]["sha256"].as_str().unwrap().len(), 64);

    let sw = report(&["switch", &recipe, "--keep", "1", "-i", "1", "-j", "2"]);
    let m = &sw["outputs"]["measurements"];
    assert_eq!(m["pi_after"], serde_json::json!([[2, 1, 3, 4, 5, 6]]));
    assert_eq!(m["cospectral"], true);
    // the switched recipe constructs exactly the "after" graph
    let after = write_recipe(dir.path(), "after.json", &[art, art], m["pi_after"].clone());
    let rebuilt = report(&["construct", &after]);
    assert_eq!(
        rebuilt["outputs"]["artifacts"][0]["graph6"],
        sw["outputs"]["artifacts"][1]["graph6"]
    );

    let delta = report(&["generate", "delta1"]);
    let d1 = write_recipe(
        dir.path(),
        "d1.json",
        &[&delta["outputs"]["artifacts"][0]],
        serde_json::json!([]),
    );
    let built = report(&["construct", &d1]);
    assert_eq!(built["outputs"]["measurements"]["params"], "(28,9,2;1,4)");
}

#[test]
fn invalid_recipes_fail_with_the_violated_condition() {
    let dir = tempfile::tempdir().unwrap();
    let ico = report(&["generate", "icosahedron"]);
    let art = &ico["outputs"]["artifacts"][0];
    // one icosahedron where (lambda + 2)/a = 2 copies are needed
    let recipe = write_recipe(dir.path(), "short.json", &[art], serde_json::json!([]));
    let out = neumaier(&["construct", &recipe]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("input graphs are required"));

    std::fs::write(dir.path().join("garbage.json"), "{").unwrap();
    let out = neumaier(&[
        "construct",
        dir.path().join("garbage.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = neumaier(&[
        "construct",
        dir.path().join("missing.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(neumaier(&["generate", "nope"]).status.code(), Some(2));
    assert_eq!(neumaier(&["reproduce", "4.9"]).status.code(), Some(2));
    assert_eq!(
        neumaier(&["reproduce", "5-tables", "--row", "n=x"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(neumaier(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        neumaier(&["spectrum", "not graph6 at all"]).status.code(),
        Some(2)
    );
}

#[test]
fn certify_spectrum_and_classify() {
    // C5 is not Neumaier: no regular clique
    assert_eq!(neumaier(&["certify", "Dhc"]).status.code(), Some(1));
    let spec = report(&["spectrum", "Dhc"]);
    assert_eq!(
        spec["outputs"]["measurements"]["factored"],
        "(x-2)(x^2+x-1)^2"
    );
    let entries = spec["outputs"]["artifacts"][0]["spectrum"]
        .as_array()
        .unwrap();
    assert_eq!(entries[1]["exact"]["text"], "(-1+√5)/2");
    assert_eq!(entries[1]["mult"], 2);

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("graphs.g6");
    // C5 twice under different labelings, and the bull
    std::fs::write(&file, "Dhc\nDUW\n# comment\nD@s\n").unwrap();
    let classes = report(&["classify", file.to_str().unwrap()]);
    let counts: Vec<u64> = classes["outputs"]["classes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["count"].as_u64().unwrap())
        .collect();
    assert_eq!(counts.iter().sum::<u64>(), 3);
    assert_eq!(counts.len(), 2);
}

#[test]
fn reproduce_reports_pass_and_are_deterministic() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("wall_clock_ms");
        v
    };
    let a = report(&["reproduce", "4.3"]);
    let b = report(&["reproduce", "circulant65"]);
    let (a, b) = (strip(a), strip(b));
    assert_eq!(a["outputs"]["runs"], b["outputs"]["runs"]);
    let checks = a["outputs"]["runs"][0]["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["pass"] == true));
    assert_eq!(
        a["outputs"]["runs"][0]["measurements"]["sng_params"],
        "(65,16,3;1,5)"
    );

    let row = report(&["reproduce", "5-tables", "--row", "n=3"]);
    let m = &row["outputs"]["runs"][0]["measurements"];
    assert_eq!(m["family1.n=3.sng_classes"], 2);
    assert_eq!(m["family1.n=3.sng_params"], "(28,9,2;1,4)");
    assert!(m.get("formulas").is_none());
}

#[test]
fn out_dir_and_graph6_format() {
    let dir = tempfile::tempdir().unwrap();
    let out = neumaier(&[
        "reproduce",
        "4.4",
        "--format",
        "graph6",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let written = std::fs::read_to_string(dir.path().join("graphs.g6")).unwrap();
    assert_eq!(stdout, written);
    // two inputs and two constructions
    assert_eq!(stdout.lines().count(), 4);
    let saved: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap())
            .unwrap();
    assert_eq!(saved["outputs"]["runs"][0]["id"], "triangular-grid");
    // every emitted graph6 re-certifies from the string alone
    let constructed: Vec<&str> = stdout.lines().skip(2).collect();
    for g6 in constructed {
        let cert = report(&["certify", g6]);
        assert_eq!(
            cert["outputs"]["artifacts"][0]["certificate"]["strict"],
            true
        );
    }
}
