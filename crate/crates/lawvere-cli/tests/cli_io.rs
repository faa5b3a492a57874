//! End-to-end tests of the `lawvere` binary: exit codes, text output,
//! schema round-trips, DOT well-formedness, and determinism across
//! thread counts.

use std::process::Command;

use lawvere_cli::emit::{CategoryJson, GraphJson, PartitionJson, PosetJson};

const COLLAPSE: &str = "(((S K) (I K)) S)";
const OMEGA_UNDER_K: &str = "((K S) (((S I) I) ((S I) I)))";

fn ski() -> String {
    concat!(env!("CARGO_MANIFEST_DIR"), "/../lawvere/theories/ski.th").to_string()
}

fn ski_r() -> String {
    concat!(env!("CARGO_MANIFEST_DIR"), "/../lawvere/theories/ski_r.th").to_string()
}

/// Runs the binary, returning (exit code, stdout, stderr).
fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_lawvere"))
        .args(args)
        .output()
        .expect("failed to spawn the lawvere binary");
    (
        out.status.code().expect("process terminated by signal"),
        String::from_utf8(out.stdout).expect("stdout was not UTF-8"),
        String::from_utf8(out.stderr).expect("stderr was not UTF-8"),
    )
}

fn run_ok(args: &[&str]) -> String {
    let (code, stdout, stderr) = run(args);
    assert_eq!(code, 0, "args {args:?} failed: {stderr}");
    stdout
}

/// A lightweight DOT structure check: correct header and footer, balanced
/// braces, every statement line semicolon-terminated or a comment.
fn assert_dot_well_formed(dot: &str) {
    let mut lines = dot.lines();
    let first = lines.next().expect("empty DOT output");
    assert!(
        first.starts_with("digraph ") && first.ends_with(" {"),
        "bad DOT header: {first}"
    );
    let mut depth = 1i32;
    for line in lines {
        let t = line.trim();
        assert!(depth >= 1, "content after the closing brace: {t}");
        if t == "}" {
            depth -= 1;
            continue;
        }
        if t.starts_with("//") {
            continue;
        }
        if t.starts_with("subgraph ") && t.ends_with('{') {
            depth += 1;
            continue;
        }
        assert!(t.ends_with(';'), "DOT statement missing semicolon: {t}");
    }
    assert_eq!(depth, 0, "unbalanced braces in DOT output");
}

#[test]
fn check_reports_the_signature() {
    assert_eq!(run_ok(&["check", &ski()]), "ok: 4 ops, 3 rules\n");
    assert_eq!(run_ok(&["check", &ski_r()]), "ok: 5 ops, 2 eqs, 3 rules\n");
}

#[test]
fn exit_codes_follow_the_documented_taxonomy() {
    // 1: usage.
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 1);

    // 2: parse error in a term.
    let (code, _, stderr) = run(&["rewrite", &ski(), "((K S)"]);
    assert_eq!(code, 2, "{stderr}");

    // 2: unreadable theory file.
    let (code, _, _) = run(&["check", "/does/not/exist.th"]);
    assert_eq!(code, 2);

    // 3: the file parses but the presentation fails validation.
    let bad = format!("{}/bad.th", env!("CARGO_TARGET_TMPDIR"));
    std::fs::write(&bad, "theory bad\nop f : 1\nrule r : f(x) => f(y)\n").unwrap();
    let (code, _, stderr) = run(&["check", &bad]);
    assert_eq!(code, 3, "{stderr}");

    // 4: bounds exhausted, only under --strict.
    let truncating =
        ["graph", &ski(), OMEGA_UNDER_K, "--max-terms", "50", "--format", "json"];
    let (code, _, _) = run(&truncating);
    assert_eq!(code, 0);
    let mut strict = vec!["--strict"];
    strict.extend_from_slice(&truncating);
    let (code, stdout, _) = run(&strict);
    assert_eq!(code, 4);
    assert!(stdout.contains("\"truncated\": true"), "artifact still emitted under --strict");
}

#[test]
fn graph_json_round_trips_through_the_schema() {
    let stdout = run_ok(&["graph", &ski(), COLLAPSE, "--format", "json"]);
    let parsed: GraphJson = serde_json::from_str(&stdout).expect("graph JSON must parse");
    assert_eq!(parsed.vertices.len(), 5);
    assert_eq!(parsed.edges.len(), 6);
    assert!(!parsed.truncated);
    assert!(parsed.vertices.iter().enumerate().all(|(i, v)| v.id == i));
    assert_eq!(lawvere_cli::emit::to_json_string(&parsed), stdout, "round-trip must be exact");
}

#[test]
fn semantics_json_round_trips_through_the_schemas() {
    let big = run_ok(&["semantics", &ski(), COLLAPSE, "--level", "big", "--format", "json"]);
    let cat: CategoryJson = serde_json::from_str(&big).expect("category JSON must parse");
    assert_eq!((cat.objects.len(), cat.generators.len()), (5, 6));
    assert!(cat.complete);
    assert_eq!(lawvere_cli::emit::to_json_string(&cat), big);

    let full = run_ok(&["semantics", &ski(), COLLAPSE, "--level", "full", "--format", "json"]);
    let poset: PosetJson = serde_json::from_str(&full).expect("poset JSON must parse");
    assert_eq!(poset.elements.len(), 5);
    assert_eq!(lawvere_cli::emit::to_json_string(&poset), full);

    let denote =
        run_ok(&["semantics", &ski(), COLLAPSE, "--level", "denote", "--format", "json"]);
    let classes: PartitionJson = serde_json::from_str(&denote).expect("partition JSON must parse");
    assert_eq!(classes.classes.len(), 1);
    assert_eq!(lawvere_cli::emit::to_json_string(&classes), denote);
}

#[test]
fn parallel_edges_carry_the_redexes_extension() {
    let stdout =
        run_ok(&["graph", &ski(), "((I K) (I K))", "--mode", "parallel", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let edges = value["edges"].as_array().unwrap();
    let mut saw_parallel = false;
    for edge in edges {
        if edge["rule"] == "parallel" {
            saw_parallel = true;
            assert!(edge["pos"].as_array().unwrap().is_empty());
            assert!(edge["redexes"].as_array().unwrap().len() >= 2);
        } else {
            assert!(edge.get("redexes").is_none(), "single edges carry no redexes field");
        }
    }
    assert!(saw_parallel, "((I K) (I K)) fires both ι redexes at once");
}

#[test]
fn dot_output_is_well_formed_everywhere() {
    assert_dot_well_formed(&run_ok(&["graph", &ski(), COLLAPSE]));
    assert_dot_well_formed(&run_ok(&["demo", "diamond"]));
    for level in ["small", "big", "full", "denote"] {
        let out = run_ok(&["semantics", &ski(), COLLAPSE, "--level", level, "--format", "dot"]);
        assert_dot_well_formed(&out);
    }
}

#[test]
fn output_is_byte_identical_across_runs_and_thread_counts() {
    let ski = ski();
    let commands: Vec<Vec<&str>> = vec![
        vec!["graph", &ski, OMEGA_UNDER_K, "--max-terms", "60", "--format", "json"],
        vec!["graph", &ski, COLLAPSE, "--mode", "parallel", "--format", "dot"],
        vec!["semantics", &ski, COLLAPSE, "--level", "denote", "--format", "json"],
    ];
    for base in commands {
        let one = run_ok(&[&["--threads", "1"], base.as_slice()].concat());
        let again = run_ok(&[&["--threads", "1"], base.as_slice()].concat());
        let three = run_ok(&[&["--threads", "3"], base.as_slice()].concat());
        assert_eq!(one, again, "{base:?} must be deterministic run to run");
        assert_eq!(one, three, "{base:?} must not depend on the thread count");
    }
}

#[test]
fn semantics_text_summaries_read_as_documented() {
    let s = |level| run_ok(&["semantics", &ski(), COLLAPSE, "--level", level]);
    assert_eq!(s("small"), "5 vertices, 6 edges, truncated: false\n");
    assert_eq!(s("big"), "5 objects, 6 generators, 0 relations, 18 morphisms, complete: true\n");
    assert_eq!(s("full"), "5 elements, bottom: S\n");
    assert_eq!(s("denote"), "one component, representative S\n");
}

#[test]
fn translate_round_trips_on_the_cli() {
    let marked = run_ok(&["translate", "--morphism", "f_r", "((K S) K)"]);
    assert_eq!(marked, "((R(K) S) K)\n");
    let back = run_ok(&["translate", "--morphism", "u_r", marked.trim()]);
    assert_eq!(back, "((K S) K)\n");
}

#[test]
fn rewrite_prints_the_whole_trace() {
    let out = run_ok(&["rewrite", &ski_r(), "R(((K S) K))", "--strategy", "lo", "--fuel", "10"]);
    assert_eq!(out, "1: κ_r@[] ⇒ R(S)\nnormal form: R(S)\n");

    let (code, out, _) = run(&["rewrite", &ski(), OMEGA_UNDER_K, "--strategy", "li", "--fuel", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 4, "three steps and a timeout line");
    assert!(out.lines().last().unwrap().starts_with("timeout after 3 steps:"));
}

#[test]
fn laws_sweep_passes_on_the_cli() {
    let out = run_ok(&["laws", "--base", "set", "--max", "2"]);
    assert_eq!(out.lines().last().unwrap(), "passed 36/36 checks over Set");
    assert!(out.lines().all(|l| !l.contains("FAIL")));
}

#[test]
fn the_counterexample_table_shows_the_three_functors() {
    let out = run_ok(&["demo", "counterexample"]);
    let rows: Vec<Vec<&str>> =
        out.lines().skip(1).map(|l| l.split_whitespace().collect()).collect();
    assert_eq!(rows.len(), 3);
    let tail = |row: &Vec<&str>| {
        let n = row.len();
        (row[n - 3].to_string(), row[n - 2].to_string(), row[n - 1].to_string())
    };
    assert_eq!(tail(&rows[0]), ("1".into(), "5".into(), "no".into()));
    assert_eq!(tail(&rows[1]), ("7".into(), "5".into(), "no".into()));
    assert_eq!(tail(&rows[2]), ("5".into(), "5".into(), "yes".into()));
}

/// Closing the read end of a stdout pipe early (as `lawvere … | head`
/// does) must kill the process quietly, with no panic on stderr.
#[test]
#[cfg(unix)]
fn a_closed_stdout_pipe_does_not_panic() {
    use std::io::Read;
    let ski = ski();
    let mut child = std::process::Command::new(env!("CARGO_BIN_EXE_lawvere"))
        .args([
            "graph",
            &ski,
            "((((S I) I) ((S I) I)) ((S I) I))",
            "--max-terms",
            "3000",
            "--format",
            "json",
        ])
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    let mut byte = [0u8; 1];
    child.stdout.take().unwrap().read_exact(&mut byte).unwrap();
    // Dropping the handle closed the pipe; the next write raises SIGPIPE.
    let status = child.wait().unwrap();
    let mut stderr = String::new();
    child.stderr.take().unwrap().read_to_string(&mut stderr).unwrap();
    assert!(!status.success());
    assert!(
        !stderr.contains("panic"),
        "broken pipe must not panic, got stderr: {stderr}"
    );
}
