//! End-to-end checks of the `icg` binary: pipelines, exit codes, and the
//! machine-readable outputs downstream tooling depends on.

use std::io::Write;
use std::process::{Command, Stdio};

fn run(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_icg"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.as_bytes())
        .expect("stdin accepts input");
    let out = child.wait_with_output().expect("binary exits");
    (
        out.status.code().expect("no signal"),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

#[test]
fn gen_then_solve_pipeline_reports_the_palette() {
    let (code, cube, _) = run(&["gen", "--family", "hypercube", "3"], "");
    assert_eq!(code, 0);
    let (code, answer, _) = run(&["solve", "--mode", "chi-i"], &cube);
    assert_eq!(code, 0);
    assert_eq!(answer.trim(), "4");
}

#[test]
fn construction_output_passes_verification() {
    let (code, coloring, _) = run(&["color", "--strategy", "hypercube", "4"], "");
    assert_eq!(code, 0);
    let (code, report, _) = run(&["verify", "--expect-palette", "6"], &coloring);
    assert_eq!(code, 0);
    assert!(report.contains("valid"), "got: {report}");
}

#[test]
fn tampered_coloring_is_rejected_with_exit_1() {
    let (code, coloring, _) = run(&["color", "--strategy", "hamming", "2"], "");
    assert_eq!(code, 0);
    let mut v: serde_json::Value = serde_json::from_str(&coloring).unwrap();
    // the first two entries are the two incidences of one edge; forcing them
    // equal breaks the coloring
    let first = v["colors"][0]["c"].clone();
    v["colors"][1]["c"] = first;
    let (code, _, err) = run(&["verify"], &v.to_string());
    assert_eq!(code, 1);
    assert!(err.contains("conflict"), "got: {err}");
}

#[test]
fn failed_searches_exit_1_and_usage_errors_exit_2() {
    let (_, c7, _) = run(&["gen", "--family", "cycle", "7"], "");
    let (code, _, err) = run(&["hom", "--target", "kminus", "--k", "4"], &c7);
    assert_eq!(code, 1);
    assert!(err.contains("no locally injective homomorphism"));

    let (_, c5, _) = run(&["gen", "--family", "cycle", "5"], "");
    let (code, _, _) = run(&["solve", "--mode", "chi-i", "--max", "3"], &c5);
    assert_eq!(code, 1);

    let (code, _, err) = run(&["gen", "--family", "cycle", "5", "7"], "");
    assert_eq!(code, 2);
    assert!(err.contains("one parameter"));

    let (code, _, _) = run(&["solve", "--mode", "chi-i"], "not a graph\n");
    assert_eq!(code, 2);
}

#[test]
fn json_and_graph6_inputs_are_interchangeable() {
    let (_, g6, _) = run(&["gen", "--family", "cycle", "6"], "");
    let (_, js, _) = run(&["gen", "--family", "cycle", "6", "--json"], "");
    let (code, a, _) = run(&["solve", "--mode", "chi-i"], &g6);
    assert_eq!(code, 0);
    let (code, b, _) = run(&["solve", "--mode", "chi-i"], &js);
    assert_eq!(code, 0);
    assert_eq!(a, b);
}

#[test]
fn one_based_round_trip_shifts_ids_only() {
    let (_, shifted, _) = run(
        &["gen", "--family", "path", "3", "--json", "--one-based"],
        "",
    );
    let v: serde_json::Value = serde_json::from_str(&shifted).unwrap();
    assert_eq!(v["n"], 3);
    assert_eq!(
        v["edges"][0][0], 1,
        "smallest vertex is 1 in one-based output"
    );
    let (code, answer, _) = run(&["solve", "--mode", "chi-i", "--one-based"], &shifted);
    assert_eq!(code, 0);
    assert_eq!(answer.trim(), "3");
}

#[test]
fn hom_certificate_feeds_back_into_pullback() {
    let dir = std::env::temp_dir().join(format!("icg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let g8 = dir.join("c8.g6");
    let target = dir.join("k4m.g6");
    let homf = dir.join("hom.json");
    let colf = dir.join("col.json");

    let (_, c8, _) = run(&["gen", "--family", "cycle", "8"], "");
    std::fs::write(&g8, &c8).unwrap();
    let (_, k4m, _) = run(&["gen", "--family", "complete-minus-matching", "2"], "");
    std::fs::write(&target, &k4m).unwrap();

    let (code, hom, _) = run(
        &[
            "hom",
            "--target",
            "kminus",
            "--k",
            "4",
            g8.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(code, 0);
    std::fs::write(&homf, &hom).unwrap();

    let (code, _, _) = run(
        &[
            "solve",
            "--mode",
            "chi-i",
            target.to_str().unwrap(),
            "-o",
            colf.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(code, 0);

    let (code, pulled, _) = run(
        &[
            "color",
            "--strategy",
            "pullback",
            g8.to_str().unwrap(),
            homf.to_str().unwrap(),
            colf.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(code, 0);
    let (code, report, _) = run(&["verify", "--p", "1", "--expect-palette", "4"], &pulled);
    assert_eq!(code, 0, "pullback coloring verifies: {report}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn census_emits_records_then_summary() {
    let dir = std::env::temp_dir().join(format!("icg-census-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let corpus = dir.join("cycles.g6");
    let mut lines = String::new();
    for n in [4, 5, 6, 8] {
        let (_, g6, _) = run(&["gen", "--family", "cycle", &n.to_string()], "");
        lines.push_str(&g6);
    }
    std::fs::write(&corpus, &lines).unwrap();

    let (code, out, _) = run(
        &[
            "census",
            "--input",
            corpus.to_str().unwrap(),
            "--predicates",
            "2-permutable,chi-i",
            "--jobs",
            "2",
        ],
        "",
    );
    assert_eq!(code, 0);
    let rows: Vec<serde_json::Value> = out
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(rows.len(), 5, "four records and one summary");
    assert_eq!(rows[0]["twoPermutable"], true, "C4 is permutable");
    assert_eq!(rows[1]["twoPermutable"], false, "C5 is not");
    assert_eq!(rows[4]["summary"]["twoPermutable"], 2);
    assert_eq!(rows[4]["summary"]["chiICounts"]["4"], 3);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn product_command_matches_library_product() {
    let dir = std::env::temp_dir().join(format!("icg-prod-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a = dir.join("a.g6");
    let b = dir.join("b.g6");
    let (_, c4, _) = run(&["gen", "--family", "cycle", "4"], "");
    let (_, k2, _) = run(&["gen", "--family", "path", "2"], "");
    std::fs::write(&a, &c4).unwrap();
    std::fs::write(&b, &k2).unwrap();
    let (code, g6, _) = run(&["product", a.to_str().unwrap(), b.to_str().unwrap()], "");
    assert_eq!(code, 0);
    let parsed = icg::graph6::parse_graph6(g6.trim()).unwrap();
    let expect = icg::graph::cartesian_product(&icg::graph::cycle(4), &icg::graph::path(2)).graph;
    assert_eq!(parsed, expect);
    std::fs::remove_dir_all(&dir).ok();
}
