use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const PETERSEN: &str = "IheA@GUAo";
const TRIANGLE_OK: &str = r#"{"tree":[[0,1],[1,2]],"matching":[[0,2]],"two_regular":[]}"#;

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_gooddecomp"))
        .args(args)
        .env_remove("GOODDECOMP_MAX_NODES")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn json(out: &Output) -> Value {
    let mut lines = json_lines(out);
    assert_eq!(lines.len(), 1);
    lines.pop().unwrap()
}

#[test]
fn classify_k4() {
    let out = run(&["classify", "C~"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["cubic"], true);
    assert_eq!(v["claw_free"], true);
    assert_eq!(v["four_chordal"], true);
}

#[test]
fn classify_petersen_has_claw_witness() {
    let v = json(&run(&["classify", PETERSEN], None));
    assert_eq!(v["claw_free"], false);
    assert!(v["claw"]["center"].is_u64());
    assert_eq!(v["claw"]["leaves"].as_array().unwrap().len(), 3);
}

#[test]
fn classify_c5_reads_stdin() {
    let v = json(&run(&["classify"], Some("Dhc\n")));
    assert_eq!(v["four_chordal"], false);
    assert_eq!(v["induced_cycle"]["cycle"].as_array().unwrap().len(), 5);
}

#[test]
fn classify_rejects_garbage() {
    let out = run(&["classify", "C!"], None);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn decompose_k4_auto_uses_clawfree() {
    let out = run(&["decompose", "C~", "--method", "auto", "--trace"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["method"], "clawfree");
    assert_eq!(v["outcome"], "good");
    assert!(v["trace"].is_array());
    assert_eq!(v["decomposition"]["tree"].as_array().unwrap().len(), 3);
}

#[test]
fn decompose_clawfree_always_emits_trace() {
    let v = json(&run(&["decompose", "Bw", "--method", "clawfree"], None));
    assert_eq!(v["trace"][0]["tag"], "BASE_SMALL");
}

#[test]
fn decompose_petersen_auto_uses_exact() {
    let out = run(&["decompose", PETERSEN], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["method"], "exact");
    assert_eq!(v["outcome"], "good");
    let d = serde_json::to_string(&v["decomposition"]).unwrap();
    let verified = run(&["verify", PETERSEN, &d], None);
    assert_eq!(verified.status.code(), Some(0));
}

#[test]
fn decompose_budget_exit_code() {
    let out = run(
        &[
            "decompose",
            PETERSEN,
            "--method",
            "exact",
            "--max-nodes",
            "3",
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["outcome"], "budget_exceeded");
}

#[test]
fn decompose_budget_from_env() {
    let out = Command::new(env!("CARGO_BIN_EXE_gooddecomp"))
        .args(["decompose", PETERSEN, "--method", "exact"])
        .env("GOODDECOMP_MAX_NODES", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn decompose_disconnected_is_usage_error() {
    let out = run(&["decompose", "Cg"], None);
    assert_eq!(out.status.code(), Some(64));
    let v = json(&out);
    assert_eq!(v["error"]["code"], "PRECONDITION_DISCONNECTED");
    assert!(v.get("decomposition").is_none());
}

#[test]
fn decompose_clawfree_rejects_claw_with_witness() {
    let out = run(&["decompose", PETERSEN, "--method", "clawfree"], None);
    assert_eq!(out.status.code(), Some(64));
    assert_eq!(json(&out)["error"]["code"], "PRECONDITION_NOT_CLAWFREE");
}

#[test]
fn decompose_dot() {
    let out = run(&["decompose", "Bw", "--dot"], None);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("graph G {"));
    assert!(text.contains(r#"0 -- 2 [part="matching", color="blue", style="dashed"];"#));
}

#[test]
fn verify_valid_triangle() {
    let out = run(&["verify", "Bw", TRIANGLE_OK], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["ok"], true);
}

#[test]
fn verify_tree_edge_moved_to_matching() {
    let bad = r#"{"tree":[[0,1]],"matching":[[0,2],[1,2]],"two_regular":[]}"#;
    let out = run(&["verify", "Bw", bad], None);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let codes: Vec<&str> = v["violations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["code"].as_str().unwrap())
        .collect();
    assert!(codes.contains(&"MATCHING_SHARED_VERTEX"));
    assert!(codes.contains(&"TREE_WRONG_SIZE"));
}

#[test]
fn verify_foreign_edge() {
    let bad = r#"{"tree":[[0,1],[1,2]],"matching":[[0,3]],"two_regular":[]}"#;
    let out = run(&["verify", "Bw", bad], None);
    assert_eq!(out.status.code(), Some(1));
    assert!(json(&out)["violations"][0]["code"] == "NOT_PARTITION_FOREIGN");
}

#[test]
fn verify_reads_decomposition_from_stdin() {
    let out = run(&["verify", "Bw", "-"], Some(TRIANGLE_OK));
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn unknown_subcommand_is_usage_error() {
    assert_eq!(run(&["frobnicate"], None).status.code(), Some(64));
    assert_eq!(
        run(&["decompose", "C~", "--method", "magic"], None)
            .status
            .code(),
        Some(64)
    );
}

#[test]
fn gen_families() {
    let out = run(&["gen", "--family", "petersen"], None);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), PETERSEN);
    let out = run(&["gen", "--family", "complete", "--n", "4"], None);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "C~");
    let out = run(&["gen", "--family", "cycle", "--n", "5"], None);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "Dhc");
    assert_eq!(
        run(&["gen", "--family", "prism", "--n", "2"], None)
            .status
            .code(),
        Some(64)
    );
}

#[test]
fn gen_random_is_reproducible_and_filtered() {
    let args = [
        "gen",
        "--family",
        "random",
        "--n",
        "8",
        "--seed",
        "7",
        "--filter",
        "claw-free",
        "--count",
        "5",
    ];
    let a = run(&args, None);
    let b = run(&args, None);
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert_eq!(text.lines().count(), 5);
    for line in text.lines() {
        let v = json(&run(&["classify", line], None));
        assert_eq!(v["claw_free"], true);
        assert_eq!(v["connected"], true);
    }
}

#[test]
fn batch_three_lines() {
    let out = run(&["batch"], Some("C~\nBw\nDhc\n"));
    assert_eq!(out.status.code(), Some(0));
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[3]["summary"]["records"], 3);
    assert_eq!(lines[3]["summary"]["good"], 3);
}

#[test]
fn batch_petersen_good_and_bad_line_reported() {
    let input = format!("C~\nnot graph6!\n{PETERSEN}\n");
    let lines = json_lines(&run(&["batch"], Some(&input)));
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[1]["line"], 2);
    assert_eq!(lines[1]["error"]["code"], "PARSE_ERROR");
    assert_eq!(lines[2]["outcome"], "good");
    assert_eq!(lines[2]["method"], "exact");
    assert_eq!(lines[3]["summary"]["errors"], 1);
    assert_eq!(lines[3]["summary"]["good"], 2);
}

fn strip_timing(mut v: Value) -> Value {
    if let Some(obj) = v.as_object_mut() {
        obj.remove("elapsed_ms");
    }
    v
}

#[test]
fn batch_parallel_matches_sequential() {
    let gen = run(
        &[
            "gen", "--family", "random", "--n", "12", "--seed", "100", "--count", "60",
        ],
        None,
    );
    let input = String::from_utf8(gen.stdout).unwrap();
    let one: Vec<Value> = json_lines(&run(&["batch", "--with-decomposition"], Some(&input)))
        .into_iter()
        .map(strip_timing)
        .collect();
    let four: Vec<Value> = json_lines(&run(
        &["batch", "-j", "4", "--with-decomposition"],
        Some(&input),
    ))
    .into_iter()
    .map(strip_timing)
    .collect();
    assert_eq!(one.len(), 61);
    assert_eq!(one, four);
}
