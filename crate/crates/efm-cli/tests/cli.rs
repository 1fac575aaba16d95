//! End-to-end tests of the binary: golden outputs, exit codes, and
//! byte-level determinism.

use std::process::{Command, Output};

fn efm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_efm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = efm(args);
    assert!(
        out.status.success(),
        "command {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn decompose_flagship() {
    let args = [
        "decompose", "--n", "3", "--p", "1", "--q", "2", "--a", "2", "--b", "2", "--xi", "2,1",
    ];
    let text = stdout_of(&args);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["dimension"], 11);
    assert_eq!(v["kappa2"], -1);
    assert_eq!(v["okada"].as_array().unwrap().len(), 3);
    // identical reruns are byte-identical
    assert_eq!(text, stdout_of(&args));
}

#[test]
fn decompose_zero_module_from_mu() {
    let text = stdout_of(&[
        "decompose", "--n", "2", "--p", "1", "--q", "2", "--mu", "1/2", "--xi", "",
    ]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["dimension"], 0);
}

#[test]
fn dim_agrees() {
    let text = stdout_of(&[
        "dim", "--n", "3", "--p", "1", "--q", "2", "--mu", "0", "--xi", "2,1",
    ]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["by_tableaux"], 11);
    assert_eq!(v["by_formula"], 11);
    assert_eq!(v["agree"], true);
}

#[test]
fn verify_passes_and_mutation_fails() {
    let ok = efm(&[
        "verify", "--n", "3", "--p", "1", "--q", "2", "--a", "2", "--b", "2", "--xi", "2,1",
    ]);
    assert!(ok.status.success());

    let bad = efm(&[
        "verify", "--n", "3", "--p", "1", "--q", "2", "--a", "2", "--b", "2", "--xi", "2,1",
        "--mutate", "0,0",
    ]);
    assert_eq!(bad.status.code(), Some(4));
    let v: serde_json::Value =
        serde_json::from_slice(&bad.stdout).expect("report still emitted");
    assert_eq!(v["all_pass"], false);
    // the failing relation carries a counterexample location
    let failing = v["relations"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["pass"] == false)
        .unwrap();
    assert!(failing["counterexample"].is_array());
}

#[test]
fn degenerate_kappa2_zero_exits_3() {
    let out = efm(&[
        "build", "--n", "8", "--p", "1", "--q", "2", "--a", "2", "--b", "3", "--xi", "",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("kappa2 = 0"));
}

#[test]
fn graph_flagship_dot() {
    let text = stdout_of(&[
        "graph", "--n", "3", "--p", "1", "--q", "2", "--a", "2", "--b", "2", "--xi", "2,1",
    ]);
    assert!(text.starts_with("digraph weight_graph {"));
    assert_eq!(text.matches("label=\"m").count(), text.matches("->").count());
    assert_eq!(text.lines().filter(|l| l.contains("[label=\"")).count(), 11 + text.matches("->").count());
    // node count: lines like "  n0 [label=...]" minus edges
    let nodes = text
        .lines()
        .filter(|l| l.trim_start().starts_with('n') && !l.contains("->"))
        .count();
    assert_eq!(nodes, 11);
}

#[test]
fn graph_output_deterministic() {
    let args = [
        "graph", "--n", "3", "--p", "1", "--q", "2", "--a", "2", "--b", "2", "--xi", "2,1",
    ];
    assert_eq!(stdout_of(&args), stdout_of(&args));
}

#[test]
fn graph_n0_single_node() {
    let text = stdout_of(&[
        "graph", "--n", "0", "--p", "1", "--q", "2", "--a", "2", "--b", "2", "--xi", "4,2",
    ]);
    let nodes = text
        .lines()
        .filter(|l| l.trim_start().starts_with('n') && !l.contains("->"))
        .count();
    assert_eq!(nodes, 1);
    assert_eq!(text.matches("->").count(), 0);
}

#[test]
fn graphs_isomorphic_across_shared_minimal_weight() {
    // two parameter sets with the same minimal weight: compare the graphs
    // through their weight-labeled canonical edge sets
    let a = stdout_of(&[
        "graph", "--format", "json", "--n", "3", "--p", "1", "--q", "3", "--a", "2", "--b",
        "3", "--xi", "3,3,2",
    ]);
    let b = stdout_of(&[
        "graph", "--format", "json", "--n", "3", "--p", "1", "--q", "2", "--a", "3", "--b",
        "3", "--xi", "4,2",
    ]);
    let ja: serde_json::Value = serde_json::from_str(&a).unwrap();
    let jb: serde_json::Value = serde_json::from_str(&b).unwrap();
    let canon = |v: &serde_json::Value| {
        let weights: Vec<Vec<i64>> = v["weights"]
            .as_array()
            .unwrap()
            .iter()
            .map(|w| {
                w["doubled"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|x| x.as_i64().unwrap())
                    .collect()
            })
            .collect();
        let mut edges: Vec<(Vec<i64>, i64, Vec<i64>)> = v["edges"]
            .as_array()
            .unwrap()
            .iter()
            .map(|e| {
                (
                    weights[e["from"].as_u64().unwrap() as usize].clone(),
                    e["label"].as_i64().unwrap(),
                    weights[e["to"].as_u64().unwrap() as usize].clone(),
                )
            })
            .collect();
        edges.sort();
        edges
    };
    assert_eq!(canon(&ja), canon(&jb));
}

#[test]
fn recover_golden_case1() {
    let text = stdout_of(&[
        "recover", "--kappa2", "-2", "--weight", "[0,-1,-2,1,-5,-6,-4]",
    ]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let rec = &v["recovered"];
    assert_eq!(rec["case"], "Case1");
    assert_eq!(rec["rect_a"], serde_json::json!([4, 3]));
    assert_eq!(rec["rect_b"], serde_json::json!([3, 4]));
    assert_eq!(rec["xi"], serde_json::json!([5, 5, 2, 2, 2, 1, 0]));
    assert_eq!(rec["big_n"], 7);
    assert_eq!(rec["mu"], "1/7");
}

#[test]
fn recover_minimalizes_first() {
    let text = stdout_of(&[
        "recover", "--kappa2", "-2", "--weight", "[0,4,-1,6,-2,5,1]", "--minimalize",
    ]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(
        v["minimal_weight"]["doubled"],
        serde_json::json!([0, -2, -4, 2, -10, -12, -8])
    );
    assert!(!v["word"].as_array().unwrap().is_empty());
}

#[test]
fn recover_rejects_non_image_weights() {
    let out = efm(&["recover", "--kappa2", "-6", "--weight", "[-3,-2,-1]"]);
    assert_eq!(out.status.code(), Some(4));
    let out2 = efm(&["recover", "--kappa2", "-6", "--weight", "[1,2,-3]"]);
    assert_eq!(out2.status.code(), Some(4));
}

#[test]
fn rejects_float_mu() {
    let out = efm(&[
        "decompose", "--n", "3", "--p", "1", "--q", "2", "--mu", "0.5", "--xi", "2,1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn rejects_p_above_q() {
    let out = efm(&[
        "decompose", "--n", "3", "--p", "2", "--q", "1", "--a", "2", "--b", "2", "--xi", "2,1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("swap"));
}

#[test]
fn oracle_small_case() {
    let text = stdout_of(&[
        "oracle", "--xi", "", "--N", "2", "--p", "1", "--n", "2", "--a", "1", "--b", "1",
    ]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["match"], true);
}

#[test]
fn symfunc_rectangle_product() {
    let text = stdout_of(&["symfunc", "--left", "2", "--right", "2,2", "--vars", "4"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 3);
    assert!(terms.iter().all(|t| t["coefficient"] == 1));
}

#[test]
fn sweep_batch_deterministic() {
    use std::io::Write as _;
    let dir = std::env::temp_dir().join("efm-cli-sweep-test");
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("params.jsonl");
    let mut f = std::fs::File::create(&input).unwrap();
    writeln!(f, r#"{{"n":3,"p":1,"q":2,"a":2,"b":2,"xi":[2,1]}}"#).unwrap();
    writeln!(f, r#"{{"n":2,"p":1,"q":1,"a":1,"b":1,"xi":[]}}"#).unwrap();
    drop(f);
    let run1 = stdout_of(&["sweep", "--file", input.to_str().unwrap()]);
    let run2 = stdout_of(&["sweep", "--file", input.to_str().unwrap()]);
    assert_eq!(run1, run2);
    let lines: Vec<&str> = run1.trim_end().lines().collect();
    assert_eq!(lines.len(), 2);
    let first: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(first["dimension"], 11);
}
