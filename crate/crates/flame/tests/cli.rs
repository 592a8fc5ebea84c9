//! End-to-end checks of the command line: exact output bytes, exit codes,
//! and stream separation. Most cases drive `cli::run` in-process; a few
//! spawn the real binary to cover standard input and process exit codes.

use std::io::Write as _;
use std::process::{Command, Stdio};

use tempfile::TempDir;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("flame").chain(args.iter().copied());
    let code = flame::cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        Workspace {
            dir: TempDir::new().unwrap(),
        }
    }

    fn file(&self, name: &str, contents: &str) -> String {
        let path = self.dir.path().join(name);
        std::fs::write(&path, contents).unwrap();
        path.to_str().unwrap().to_string()
    }
}

const TRIANGLE: &str = "digraph 3 3 0\n0 1\n0 2\n1 2\n";
const PARALLEL_PATHS: &str = "digraph 3 4 0\n0 1\n1 2\n0 2\n1 2\n";
const TWO_CYCLE: &str = "digraph 3 4 0\n0 1\n0 2\n1 2\n2 1\n";
const CYCLIC_FORK: &str = "digraph 4 5 0\n0 1\n1 2\n1 3\n2 3\n3 2\n";
const WEIGHTED_SINK: &str = "digraph 3 4 0\n0 1\n0 2 10\n1 2\n1 2 3\n";

#[test]
fn lambda_text_and_json() {
    let ws = Workspace::new();
    let input = ws.file("triangle.fg", TRIANGLE);
    let (code, out, err) = run(&["lambda", &input]);
    assert_eq!((code, err.as_str()), (0, ""));
    assert_eq!(out, "1 1 {1} {1}\n2 2 {2} {1,2}\n");

    let (code, out, _) = run(&["lambda", &input, "--json"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "[{\"v\":1,\"lambda\":1,\"t_min\":[1],\"m_max\":[1]},{\"v\":2,\"lambda\":2,\"t_min\":[2],\"m_max\":[1,2]}]\n"
    );
    let parsed: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(parsed[1]["m_max"], serde_json::json!([1, 2]));
}

#[test]
fn grow_and_peel_reports() {
    let ws = Workspace::new();
    let triangle = ws.file("triangle.fg", TRIANGLE);
    let (code, out, _) = run(&["grow", &triangle]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "edges 0 1 2\nsize 3\nsum_lambda 3\nv 1 rho 1 lambda 1\nv 2 rho 2 lambda 2\n"
    );

    let parallels = ws.file("parallel.fg", PARALLEL_PATHS);
    let (code, out, _) = run(&["peel", &parallels]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "edges 0 2 3\nsize 3\nsum_lambda 3\nv 1 rho 1 lambda 1\nv 2 rho 2 lambda 2\n"
    );

    let (code, out, _) = run(&["peel", &parallels, "--dot"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("digraph flame {"));
    assert!(out.contains("0 [shape=doublecircle];"));
    assert!(out.contains("1 -> 2 [label=\"e1\", style=dashed];"));

    // Peel ignores weights; it drops the lowest-id redundant edge e2 and
    // keeps the weighted parallel e3.
    let weighted = ws.file("weighted.fg", WEIGHTED_SINK);
    let (code, out, _) = run(&["peel", &weighted, "--dot"]);
    assert_eq!(code, 0);
    assert!(out.contains("1 -> 2 [label=\"e2\", style=dashed];"));
    assert!(out.contains("1 -> 2 [label=\"e3 w=3\"];"));
}

#[test]
fn minflame_outputs_and_cyclic_error() {
    let ws = Workspace::new();
    let weighted = ws.file("weighted.fg", WEIGHTED_SINK);
    let (code, out, _) = run(&["minflame", &weighted]);
    assert_eq!(code, 0);
    assert_eq!(out, "edges 0 1 2\nweight 12\n");

    let (code, out, _) = run(&["minflame", &weighted, "--json"]);
    assert_eq!(code, 0);
    assert_eq!(out, "{\"edges\":[0,1,2],\"weight\":\"12\"}\n");

    let cyclic = ws.file("cyclic.fg", CYCLIC_FORK);
    let (code, out, err) = run(&["minflame", &cyclic]);
    assert_eq!(code, 1);
    assert_eq!(out, "", "data stream stays clean on errors");
    assert_eq!(
        err,
        "error: minimum-weight flame supported for acyclic digraphs only; use oracle brute force for small cyclic instances\n"
    );
}

#[test]
fn decompose_formats() {
    let ws = Workspace::new();
    let input = ws.file("two_cycle.fg", TWO_CYCLE);
    let (code, out, _) = run(&["decompose", &input]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "m 2\nB1 edges 1 3 heads {1,2}\nB2 edges 0 2 heads {1,2}\n"
    );

    let (code, out, _) = run(&["decompose", &input, "--json"]);
    assert_eq!(code, 0);
    assert_eq!(out, "{\"flame\":[0,1,2,3],\"branchings\":[[1,3],[0,2]]}\n");

    let (code, out, _) = run(&["decompose", &input, "--dot"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("digraph decomposition {"));
    assert!(out.contains("B1"));
    assert!(out.contains("color=blue3"));

    // The grown flame of this graph equals the peeled one.
    let (code, grown, _) = run(&["decompose", &input, "--grow", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(grown, "{\"flame\":[0,1,2,3],\"branchings\":[[1,3],[0,2]]}\n");
}

#[test]
fn verify_checks() {
    let ws = Workspace::new();
    let triangle = ws.file("triangle.fg", TRIANGLE);
    for (check, name) in [
        ("lambda", "lambda-tight-sets"),
        ("greedoid", "greedoid-exchange"),
        ("matroid", "gammoid-matroid-axioms"),
        ("dag-equivalence", "dag-base-flame-equivalence"),
        ("decomposition", "flame-decomposition"),
    ] {
        let (code, out, err) = run(&["verify", &triangle, "--check", check]);
        assert_eq!((code, err.as_str()), (0, ""), "check {check}");
        assert!(out.starts_with(&format!("check {name} instances ")), "got {out}");
        assert!(out.trim_end().ends_with("pass"));
    }

    let cyclic = ws.file("cyclic.fg", CYCLIC_FORK);
    let (code, out, _) = run(&["verify", &cyclic, "--check", "greedoid"]);
    assert_eq!(code, 0);
    assert!(out.trim_end().ends_with("pass"));
    let (code, _, err) = run(&["verify", &cyclic, "--check", "dag-equivalence"]);
    assert_eq!(code, 1);
    assert!(err.contains("acyclic"));
}

#[test]
fn gen_is_deterministic_and_parseable() {
    let (code, first, _) = run(&["gen", "--n", "5", "--m", "8", "--seed", "1", "--acyclic", "--parallel"]);
    assert_eq!(code, 0);
    let (_, second, _) = run(&["gen", "--n", "5", "--m", "8", "--seed", "1", "--acyclic", "--parallel"]);
    assert_eq!(first, second);
    assert!(first.starts_with("digraph 5 8 0\n"));
    let g = flame::RootedDigraph::parse(&first).unwrap();
    assert!(flame::is_acyclic(&g));

    let (code, out, err) = run(&["gen", "--n", "3", "--m", "7", "--seed", "0"]);
    assert_eq!(code, 1);
    assert_eq!(out, "");
    assert!(err.contains("cannot place 7 edges"));
}

#[test]
fn usage_and_parse_errors_exit_2() {
    let ws = Workspace::new();
    let (code, _, err) = run(&["lambda", "/nonexistent/path.fg"]);
    assert_eq!(code, 2);
    assert!(err.contains("cannot read"));

    let bad = ws.file("bad.fg", "digraph 2 1 0\n0 0\n");
    let (code, _, err) = run(&["lambda", &bad]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2: self-loop at vertex 0"));

    let (code, _, err) = run(&["explode"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());

    let triangle = ws.file("triangle.fg", TRIANGLE);
    let (code, _, err) = run(&["lambda", &triangle, "--unknown-flag"]);
    assert_eq!(code, 2);
    assert!(err.contains("unexpected argument"));
}

#[test]
fn help_prints_to_stdout_with_success() {
    let (code, out, err) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(err.is_empty());
    assert!(out.contains("lambda"));
    assert!(out.contains("decompose"));
}

#[test]
fn binary_reads_stdin_and_sets_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_flame");
    let mut child = Command::new(exe)
        .args(["lambda", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(TRIANGLE.as_bytes())
        .unwrap();
    let output = child.wait_with_output().unwrap();
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(output.stdout).unwrap(),
        "1 1 {1} {1}\n2 2 {2} {1,2}\n"
    );

    let status = Command::new(exe)
        .args(["minflame", "-"])
        .stdin(Stdio::null())
        .stdout(Stdio::null())
        .stderr(Stdio::null())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2), "empty stdin is a parse error");
}

#[test]
fn debug_assert_flag_is_accepted() {
    let ws = Workspace::new();
    let input = ws.file("triangle.fg", TRIANGLE);
    let (code, out, _) = run(&["decompose", &input, "--debug-assert"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("m 2\n"));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let ws = Workspace::new();
    let input = ws.file("parallel.fg", PARALLEL_PATHS);
    let first = run(&["decompose", &input, "--json"]);
    let second = run(&["decompose", &input, "--json"]);
    assert_eq!(first, second);
}
