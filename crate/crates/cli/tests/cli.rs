//! End-to-end runs of the binary: determinism of `gen`, transform
//! round-trips, classification output, the behaviour tables, and suite exit
//! codes.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn gdr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gdr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("gdr-cli-test-{}-{name}", std::process::id()));
    path
}

#[test]
fn gen_is_deterministic_and_certified() {
    let out1 = tmp("gen1.json");
    let out2 = tmp("gen2.json");
    for out in [&out1, &out2] {
        let run = gdr(&[
            "gen",
            "--n",
            "8",
            "--k",
            "2",
            "--seed",
            "1",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(
            run.status.success(),
            "{}",
            String::from_utf8_lossy(&run.stderr)
        );
        let note = String::from_utf8_lossy(&run.stderr);
        assert!(note.contains("pass"), "{note}");
    }
    let bytes1 = fs::read(&out1).unwrap();
    let bytes2 = fs::read(&out2).unwrap();
    assert_eq!(bytes1, bytes2, "same seed must give byte-identical files");
    let g = gdr_core::Digraph::from_json(&String::from_utf8(bytes1).unwrap()).unwrap();
    assert!(g.vertex_count() >= 8);
    fs::remove_file(out1).ok();
    fs::remove_file(out2).ok();
}

#[test]
fn gen_with_n_zero_writes_empty_digraph() {
    let out = gdr(&["gen", "--n", "0", "--seed", "3"]);
    assert!(out.status.success());
    let g = gdr_core::Digraph::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(g.vertex_count(), 0);
}

#[test]
fn transform_reverse_twice_is_identity() {
    let input = tmp("g.json");
    let spec = tmp("reverse.json");
    let once = tmp("once.json");
    let twice = tmp("twice.json");
    let g = gdr_core::ep::random_digraph(7, 9);
    fs::write(&input, g.to_json()).unwrap();
    fs::write(&spec, "{\"op\": \"reverse\"}").unwrap();
    let run = gdr(&[
        "transform",
        input.to_str().unwrap(),
        spec.to_str().unwrap(),
        "--out",
        once.to_str().unwrap(),
    ]);
    assert!(
        run.status.success(),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    let run = gdr(&[
        "transform",
        once.to_str().unwrap(),
        spec.to_str().unwrap(),
        "--out",
        twice.to_str().unwrap(),
    ]);
    assert!(run.status.success());
    assert_eq!(fs::read(&input).unwrap(), fs::read(&twice).unwrap());
    for f in [input, spec, once, twice] {
        fs::remove_file(f).ok();
    }
}

#[test]
fn transform_identities() {
    let input = tmp("gid.json");
    let out = tmp("gid-out.json");
    let g = gdr_core::ep::random_digraph(6, 2);
    fs::write(&input, g.to_json()).unwrap();

    // Switching about the empty set changes nothing.
    let spec = tmp("sw-empty.json");
    fs::write(&spec, "{\"op\": \"switch\", \"A\": []}").unwrap();
    let run = gdr(&[
        "transform",
        input.to_str().unwrap(),
        spec.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(run.status.success());
    assert_eq!(fs::read(&input).unwrap(), fs::read(&out).unwrap());

    // Rotating three times is the identity.
    let rot = serde_json::json!({
        "op": "rot", "A": [0, 3], "B": [1, 4], "C": [2, 5],
    })
    .to_string();
    fs::write(&spec, &rot).unwrap();
    let mut current = input.clone();
    for step in 0..3 {
        let next = tmp(&format!("rot-{step}.json"));
        let run = gdr(&[
            "transform",
            current.to_str().unwrap(),
            spec.to_str().unwrap(),
            "--out",
            next.to_str().unwrap(),
        ]);
        assert!(run.status.success());
        if current != input {
            fs::remove_file(&current).ok();
        }
        current = next;
    }
    assert_eq!(fs::read(&input).unwrap(), fs::read(&current).unwrap());
    for f in [input, spec, out, current] {
        fs::remove_file(f).ok();
    }
}

#[test]
fn transform_rejects_malformed_spec() {
    let input = tmp("g2.json");
    let spec = tmp("bad.json");
    fs::write(&input, gdr_core::Digraph::empty(3).to_json()).unwrap();
    fs::write(&spec, "{\"op\": \"spin\"}").unwrap();
    let run = gdr(&["transform", input.to_str().unwrap(), spec.to_str().unwrap()]);
    assert!(!run.status.success());
    assert!(String::from_utf8_lossy(&run.stderr).contains("invalid transform"));
    fs::remove_file(input).ok();
    fs::remove_file(spec).ok();
}

#[test]
fn classify_identity_and_reverse() {
    let g = gdr_core::ep::extend_to_ep(&gdr_core::ep::random_digraph(6, 4), 2, 4);
    let n = g.vertex_count();
    let g_path = tmp("cg.json");
    let h_path = tmp("ch.json");
    let map_path = tmp("cmap.json");
    fs::write(&g_path, g.to_json()).unwrap();
    fs::write(&h_path, g.to_json()).unwrap();
    let identity: Vec<usize> = (0..n).collect();
    fs::write(&map_path, serde_json::to_string(&identity).unwrap()).unwrap();
    let run = gdr(&[
        "classify",
        g_path.to_str().unwrap(),
        h_path.to_str().unwrap(),
        map_path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(run.status.success());
    let value: serde_json::Value = serde_json::from_slice(&run.stdout).unwrap();
    assert_eq!(value["node"], "AutDE");

    let reversed = gdr_core::Transform::Reverse.apply(&g).unwrap();
    fs::write(&h_path, reversed.to_json()).unwrap();
    let run = gdr(&[
        "classify",
        g_path.to_str().unwrap(),
        h_path.to_str().unwrap(),
        map_path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(run.status.success());
    let value: serde_json::Value = serde_json::from_slice(&run.stdout).unwrap();
    assert_eq!(value["node"], "Minus");
    assert!(value["excluded_by"].get("E").is_some());

    // Length mismatch is a hard error.
    fs::write(&map_path, "[0, 1]").unwrap();
    let run = gdr(&[
        "classify",
        g_path.to_str().unwrap(),
        h_path.to_str().unwrap(),
        map_path.to_str().unwrap(),
    ]);
    assert!(!run.status.success());
    for f in [g_path, h_path, map_path] {
        fs::remove_file(f).ok();
    }
}

#[test]
fn behaviors_noconst_table_matches_golden_file() {
    let run = gdr(&["behaviors", "--mode", "noconst"]);
    assert!(run.status.success());
    let expected = include_str!("data/behaviors_noconst.md");
    assert_eq!(String::from_utf8(run.stdout).unwrap(), expected);
}

#[test]
fn behaviors_tables() {
    let run = gdr(&["behaviors", "--mode", "noconst", "--format", "json"]);
    assert!(run.status.success());
    let rows: Vec<serde_json::Value> = serde_json::from_slice(&run.stdout).unwrap();
    assert_eq!(rows.len(), 27);
    let id_row = rows
        .iter()
        .find(|r| r["case"] == "1a")
        .expect("identity row present");
    assert_eq!(id_row["verdict"], "BehavesLikeId");

    let run = gdr(&["behaviors", "--mode", "twoorbit"]);
    assert!(run.status.success());
    let table = String::from_utf8(run.stdout).unwrap();
    assert!(table.contains("MinusRotCombined"));
}

#[test]
fn verify_suites_and_exit_codes() {
    let run = gdr(&["verify", "rot-orbits"]);
    assert!(run.status.success());
    let text = String::from_utf8(run.stdout).unwrap();
    assert!(text.contains("3 orbits, sizes 9/9/9"));

    let run = gdr(&["verify", "lattice-axioms", "--format", "json"]);
    assert!(run.status.success());
    let reports: Vec<serde_json::Value> = serde_json::from_slice(&run.stdout).unwrap();
    assert_eq!(reports[0]["pass"], true);

    let run = gdr(&["verify", "psw-preservation", "--trials", "20"]);
    assert!(run.status.success());

    let run = gdr(&["verify", "no-such-suite"]);
    assert!(!run.status.success(), "unknown suite must fail");
    assert!(String::from_utf8_lossy(&run.stderr).contains("unknown verification suite"));

    let run = gdr(&[
        "verify",
        "preservation",
        "--trials",
        "5",
        "--n",
        "7",
        "--seed",
        "2",
    ]);
    assert!(run.status.success());
}
