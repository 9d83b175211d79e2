use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tiling-reflect")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    stdout(&out)
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn documented_values() {
    assert_eq!(ok(&["compute", "product-4-1", "--m", "1", "--n", "1", "--k", "1"]), "9/2\n");
    assert_eq!(
        ok(&["compute", "product-4-1", "--m", "2", "--n", "2", "--k", "1", "--method", "both"]),
        ok(&["compute", "product-4-1", "--m", "2", "--n", "2", "--k", "1"])
    );
    assert_eq!(
        ok(&["compute", "spp-gf", "--m", "1", "--shape", "1", "--mode", "qt", "--method", "det"]),
        "1 + 2*t + t^2\n"
    );
    assert_eq!(ok(&["spp", "gf", "--m", "1", "--shape", "1", "--mode", "qt", "--method", "both"]), "1 + 2*t + t^2\n");
}

#[test]
fn hexagon_region_file() {
    let dir = tempfile::tempdir().unwrap();
    let hex = dir.path().join("hex_2_1.json");
    ok(&["tile", "build", "--family", "hexagon", "--m", "1", "--n", "1", "--out", path_str(&hex)]);
    assert_eq!(ok(&["compute", "tiling-count", "--region", path_str(&hex)]), "3\n");
    assert_eq!(ok(&["tile", "count", "--region", path_str(&hex), "--symmetry", "central"]), "1\n");
    assert_eq!(ok(&["tile", "count", "--region", path_str(&hex), "--symmetry", "vertical"]), "3\n");
    let no_formula = run(&["compute", "tiling-count", "--region", path_str(&hex), "--method", "formula"]);
    assert_eq!(no_formula.status.code(), Some(2));
}

#[test]
fn stacked_hook_formula_and_tiler_agree() {
    let args = ["compute", "tiling-count", "--family", "a-tilde", "--m", "2", "--shape", "3,1", "--method", "both"];
    assert_eq!(ok(&args), "100\n");
    assert!(ok(&["tile", "verify", "--m", "2", "--shape", "4,2,1", "--removed", "2"]).ends_with("PASS\n"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["verify", "--suite", "everything"]).status.code(), Some(2));
    assert_eq!(run(&["compute", "spp-gf", "--m", "1", "--shape", "2,2"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\n  \"cells\": [\n").unwrap();
    let out = run(&["compute", "tiling-count", "--region", path_str(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn verify_formats() {
    let text = ok(&["verify", "--suite", "sigma", "--seed", "1"]);
    assert!(text.starts_with("# verify --suite sigma --size-budget small --seed 1\n"));
    assert!(text.lines().skip(1).take_while(|l| !l.contains("passed")).all(|l| l.starts_with("PASS ")));
    let json: serde_json::Value =
        serde_json::from_str(&ok(&["verify", "--suite", "hexagons", "--size-budget", "tiny", "--format", "json"]))
            .unwrap();
    assert_eq!(json["exit_status"], 0);
    assert_eq!(json["failed"], 0);
    let csv = ok(&["verify", "--suite", "spp", "--size-budget", "tiny", "--format", "csv", "--timings"]);
    assert!(csv.starts_with("name,lhs,rhs,pass,wall_ms\n"));
}

#[test]
fn verify_all_is_byte_identical_across_runs() {
    let first = run(&["verify", "--suite", "all", "--seed", "1"]);
    let second = run(&["verify", "--suite", "all", "--seed", "1"]);
    let sequential = run(&["--sequential", "verify", "--suite", "all", "--seed", "1"]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.stdout, sequential.stdout);
}

#[test]
fn render_svg_files() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.json");
    fs::write(&empty, r#"{"cells": []}"#).unwrap();
    let svg = ok(&["tile", "render", "--region", path_str(&empty)]);
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));

    let out = dir.path().join("a.svg");
    ok(&[
        "tile",
        "render",
        "--family",
        "a",
        "--m",
        "6",
        "--shape",
        "9,8,7,4,3,1",
        "--removed",
        "2,4",
        "--out",
        path_str(&out),
    ]);
    assert!(fs::read_to_string(&out).unwrap().contains("stroke-dasharray"));

    let tilde = ["tile", "render", "--family", "a-tilde", "--m", "2", "--shape", "3,1", "--sample-tiling", "7"];
    let drawn = ok(&tilde);
    assert!(drawn.contains("<ellipse"));
    assert_eq!(drawn, ok(&tilde));
}

#[test]
fn reflect_build_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.json");
    let body = r#"{
        "vertices": ["a", "b", "c", "d", "e", "f"],
        "edges": [
            {"from": "a", "to": "c", "w": "2"}, {"from": "a", "to": "d"},
            {"from": "b", "to": "d", "w": "q"}, {"from": "b", "to": "e"},
            {"from": "d", "to": "f", "w": "3"}
        ],
        "starts": ["a", "b"],
        "ends": ["c", "e", "f"]
    }"#;
    fs::write(&graph, body).unwrap();
    let verified = ok(&["reflect", "verify", "--graph", path_str(&graph)]);
    assert!(verified.ends_with("PASS\n"), "{verified}");
    let reflected = dir.path().join("bar.json");
    ok(&["reflect", "build", "--graph", path_str(&graph), "--variant", "bar", "--out", path_str(&reflected)]);
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(&reflected).unwrap()).unwrap();
    assert_eq!(json["vertices"].as_array().unwrap().len(), 12);
    assert_eq!(json["starts"].as_array().unwrap().len(), 2);
    let gf = ok(&["compute", "path-gf", "--graph", path_str(&graph), "--from", "b", "--to", "f", "--method", "both"]);
    assert_eq!(gf, "3*q\n");
}

#[test]
fn pfaffian_inline() {
    assert_eq!(ok(&["compute", "pfaffian", "--entries", r#"[["0","q"],["-q","0"]]"#, "--method", "both"]), "q\n");
    let skew4 = r#"[[0,1,2,3],[-1,0,4,5],[-2,-4,0,6],[-3,-5,-6,0]]"#;
    assert_eq!(ok(&["compute", "pfaffian", "--entries", skew4]), "8\n");
    assert_eq!(run(&["compute", "pfaffian", "--entries", "[[1,2],[3,4]]"]).status.code(), Some(1));
}
