use std::io::Cursor;
use std::path::{Path, PathBuf};
use std::process::Command;

use clusteredit::cli::run_with;

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let dir = golden_dir();
    let mut full = vec!["clusteredit".to_string()];
    for a in args {
        let p = dir.join(a);
        full.push(if !a.starts_with('-') && p.is_file() {
            p.to_string_lossy().into_owned()
        } else {
            a.to_string()
        });
    }
    let mut out = Cursor::new(Vec::new());
    let mut err = Cursor::new(Vec::new());
    let code = run_with(full, &mut out, &mut err);
    (
        code,
        String::from_utf8(out.into_inner()).unwrap(),
        String::from_utf8(err.into_inner()).unwrap(),
    )
}

const GOLDEN: &[(&str, &[&str])] = &[
    ("solve_star.json", &["solve", "star.graph"]),
    ("solve_star_check.json", &["solve", "--check", "star.graph"]),
    ("solve_star_p1.json", &["solve", "--p", "1", "star.graph"]),
    ("solve_c4_p2.json", &["solve", "--p", "2", "c4.graph"]),
    ("solve_c5.json", &["solve", "c5.graph"]),
    (
        "solve_c5_p2_atmost.json",
        &["solve", "--p", "2", "--at-most", "c5.graph"],
    ),
    ("dump_star.tsv", &["solve", "--dump-table", "-", "star.graph"]),
    ("recognize_star.txt", &["recognize", "star.graph"]),
    ("recognize_p4.txt", &["recognize", "p4.graph"]),
    ("recognize_c4.json", &["recognize", "--format", "json", "c4.graph"]),
    ("oracle_c4_all.json", &["oracle", "--all-optimal", "c4.graph"]),
    ("oracle_c5.json", &["oracle", "c5.graph"]),
    ("expr_solve.json", &["solve", "--expr", "c4.nlc", "--p", "2"]),
    ("eval_expr.graph", &["eval", "--expr", "expr.nlc"]),
    ("gadget_yes.graph", &["gadget", "build", "--h", "2", "packing_yes.txt"]),
    ("verify_yes.json", &["gadget", "verify", "packing_yes.txt"]),
    ("sweep_yes.json", &["gadget", "sweep", "packing_yes.txt"]),
    (
        "symbolic_yes.json",
        &["gadget", "build", "--symbolic", "packing_yes.txt"],
    ),
    ("gen_tpg.graph", &["gen", "--class", "tpg", "--n", "8", "--seed", "42"]),
    (
        "gen_cograph.graph",
        &["gen", "--class", "cograph", "--n", "8", "--seed", "42"],
    ),
];

#[test]
fn outputs_match_golden_files() {
    for (expected, args) in GOLDEN {
        let (code, out, err) = run(args);
        assert_eq!(code, 0, "{args:?}: {err}");
        let want = std::fs::read_to_string(golden_dir().join(expected)).unwrap();
        assert_eq!(out, want, "{args:?} differs from {expected}");
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    for (_, args) in GOLDEN {
        assert_eq!(run(args), run(args));
    }
}

#[test]
fn failed_gadget_check_exits_one_with_report() {
    let (code, out, _) = run(&["gadget", "verify", "packing_no.txt"]);
    assert_eq!(code, 0, "tight iff packable holds on a NO instance too");
    assert_eq!(
        out,
        std::fs::read_to_string(golden_dir().join("verify_no.json")).unwrap()
    );
    let (code, out, _) = run(&["gadget", "verify", "--h", "1", "packing_no.txt"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let checks = v["checks"].as_object().unwrap();
    assert!(checks.values().any(|c| c == false), "{out}");
}

fn error_kind(err: &str) -> String {
    let last = err.lines().last().unwrap();
    let v: serde_json::Value = serde_json::from_str(last).unwrap();
    v["error"].as_str().unwrap().to_string()
}

#[test]
fn exit_codes_and_error_json() {
    let (code, _, err) = run(&["solve", "--class", "tpg", "p4.graph"]);
    assert_eq!((code, error_kind(&err).as_str()), (1, "not-trivially-perfect"));
    let (code, _, err) = run(&["solve", "--class", "tpg", "c4.graph"]);
    assert_eq!((code, error_kind(&err).as_str()), (1, "not-trivially-perfect"));
    let (code, _, err) = run(&["solve", "--p", "5", "c4.graph"]);
    assert_eq!((code, error_kind(&err).as_str()), (1, "infeasible"));
    let (code, _, err) = run(&["oracle", "--budget", "3", "c5.graph"]);
    assert_eq!((code, error_kind(&err).as_str()), (3, "budget-exceeded"));
    let (code, _, err) = run(&["solve", "--class", "tpg", "--p", "2", "star.graph"]);
    assert_eq!((code, error_kind(&err).as_str()), (2, "usage"));
    let (code, _, err) = run(&["frobnicate"]);
    assert_eq!((code, error_kind(&err).as_str()), (2, "usage"));
    let (code, _, err) = run(&["solve", "/nonexistent/graph"]);
    assert_eq!((code, error_kind(&err).as_str()), (2, "io"));
    let (code, _, err) = run(&["oracle", "--budget", "0", "c5.graph"]);
    assert_eq!((code, error_kind(&err).as_str()), (2, "usage"));
}

#[test]
fn parse_errors_report_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.graph");
    std::fs::write(&path, "3 1\n0 x\n").unwrap();
    let (code, _, err) = run(&["solve", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(error_kind(&err), "parse");
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn gadget_build_writes_graph_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("gadget.graph");
    let (code, stdout, _) = run(&[
        "gadget",
        "build",
        "--h",
        "2",
        "--out",
        out.to_str().unwrap(),
        "packing_yes.txt",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let graph = std::fs::read_to_string(&out).unwrap();
    let golden = std::fs::read_to_string(golden_dir().join("gadget_yes.graph")).unwrap();
    // The stdout form carries the sidecar as a leading comment.
    let (sidecar_line, body) = golden.split_once('\n').unwrap();
    assert_eq!(graph, body);
    let sidecar = std::fs::read_to_string(dir.path().join("gadget.graph.json")).unwrap();
    assert_eq!(format!("# {sidecar}"), format!("{sidecar_line}\n"));
    let v: serde_json::Value = serde_json::from_str(&sidecar).unwrap();
    assert_eq!(v["t"], 9);
    assert_eq!(v["h"], 2);
}

#[test]
fn gadget_build_reduces_non_perfect_instances() {
    let dir = tempfile::tempdir().unwrap();
    let packing = dir.path().join("p.txt");
    std::fs::write(&packing, "2 2\n1 2\n").unwrap();
    let (code, _, err) = run(&["gadget", "build", packing.to_str().unwrap()]);
    assert_eq!((code, error_kind(&err).as_str()), (1, "not-perfect"));
    let (code, out, _) = run(&["gadget", "build", "--reduce", "--h", "1", packing.to_str().unwrap()]);
    assert_eq!(code, 0);
    // Padded with one unit item: bins 2x1, items 1+2+1.
    assert!(out.lines().nth(1).unwrap().starts_with("6 "));
}

#[test]
fn solved_outputs_parse_back() {
    let (_, out, _) = run(&["gen", "--class", "cograph", "--n", "9", "--seed", "5"]);
    let g = clusteredit::Graph::parse(&out).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.graph");
    std::fs::write(&path, &out).unwrap();
    let (code, json, _) = run(&["solve", "--p", "3", "--check", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["check"], "agree");
    let clusters: Vec<Vec<usize>> = serde_json::from_value(v["clusters"].clone()).unwrap();
    let c = clusteredit::Clustering::new(g.n(), clusters).unwrap();
    assert_eq!(
        clusteredit::cost_of_clustering(&g, &c).unwrap(),
        v["cost"].as_u64().unwrap()
    );
    assert_eq!(c.len(), 3);
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_clusteredit");
    let dir = golden_dir();
    let ok = Command::new(bin)
        .arg("solve")
        .arg(dir.join("star.graph"))
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(ok.stdout).unwrap(),
        std::fs::read_to_string(dir.join("solve_star.json")).unwrap()
    );
    let no = Command::new(bin)
        .args(["solve", "--class", "tpg"])
        .arg(dir.join("p4.graph"))
        .output()
        .unwrap();
    assert_eq!(no.status.code(), Some(1));
    let usage = Command::new(bin).arg("solve").output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let budget = Command::new(bin)
        .args(["oracle", "--budget", "1"])
        .arg(dir.join("c5.graph"))
        .output()
        .unwrap();
    assert_eq!(budget.status.code(), Some(3));
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
}
