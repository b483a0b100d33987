use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use clusteredit_ffi::*;

fn parse(text: &str) -> *mut CeGraph {
    let text = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { ce_graph_parse(text.as_ptr(), &mut g) }, CeStatus::Ok);
    g
}

fn last_error() -> String {
    let p = ce_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn star_through_every_solver() {
    let g = parse("4 3\n0 1\n0 2\n0 3\n");
    unsafe {
        assert_eq!(ce_graph_vertex_count(g), 4);
        let mut class = CeGraphClass::Neither;
        assert_eq!(ce_recognize(g, &mut class), CeStatus::Ok);
        assert_eq!(class, CeGraphClass::TriviallyPerfect);

        let mut c = ptr::null_mut();
        assert_eq!(ce_solve_tpg(g, &mut c), CeStatus::Ok);
        assert_eq!(ce_clustering_cost(c), 2);
        assert_eq!(ce_clustering_len(c), 3);
        let mut buf = [0usize; 4];
        assert_eq!(ce_clustering_assignment(c, buf.as_mut_ptr(), 4), CeStatus::Ok);
        assert_eq!(buf[0], buf[1]);
        assert_eq!(ce_clustering_assignment(c, buf.as_mut_ptr(), 3), CeStatus::InvalidInput);
        let json = ce_clustering_to_json(c);
        assert_eq!(
            CStr::from_ptr(json).to_str().unwrap(),
            r#"{"cost":2,"clusters":[[0,1],[2],[3]]}"#
        );
        ce_string_free(json);
        ce_clustering_free(c);

        let mut c = ptr::null_mut();
        assert_eq!(ce_solve_cograph_p(g, 1, true, &mut c), CeStatus::Ok);
        assert_eq!(ce_clustering_cost(c), 3);
        ce_clustering_free(c);

        let mut c = ptr::null_mut();
        assert_eq!(ce_solve_oracle(g, 1000, &mut c), CeStatus::Ok);
        assert_eq!(ce_clustering_cost(c), 2);
        ce_clustering_free(c);
        ce_graph_free(g);
    }
}

#[test]
fn errors_carry_status_and_message() {
    let text = CString::new("3 1\n0 7\n").unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { ce_graph_parse(text.as_ptr(), &mut g) }, CeStatus::Parse);
    assert!(g.is_null());
    assert!(last_error().contains("line 2"));

    let p4 = parse("4 3\n0 1\n1 2\n2 3\n");
    let mut c = ptr::null_mut();
    unsafe {
        assert_eq!(ce_solve_tpg(p4, &mut c), CeStatus::NotTriviallyPerfect);
        assert_eq!(ce_solve_cograph_p(p4, 2, true, &mut c), CeStatus::NotCograph);
        assert_eq!(ce_solve_oracle(p4, 2, &mut c), CeStatus::BudgetExceeded);
        assert!(c.is_null());
        assert_eq!(ce_graph_add_edge(p4, 1, 1), CeStatus::InvalidInput);
        assert_eq!(ce_graph_add_edge(ptr::null_mut(), 0, 1), CeStatus::NullPointer);
        ce_graph_free(p4);
    }
}

#[test]
fn built_graphs_match_parsed_ones() {
    let g = ce_graph_new(3);
    unsafe {
        assert_eq!(ce_graph_add_edge(g, 0, 1), CeStatus::Ok);
        assert_eq!(ce_graph_add_edge(g, 2, 1), CeStatus::Ok);
        let mut c = ptr::null_mut();
        assert_eq!(ce_solve_tpg(g, &mut c), CeStatus::Ok);
        assert_eq!(ce_clustering_cost(c), 1);
        ce_clustering_free(c);
        ce_graph_free(g);
    }
}

fn target_dir() -> PathBuf {
    // target/<profile>/deps/<test binary>
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

/// Compiles a C program against the generated header and the static library.
#[test]
fn header_compiles_and_links_from_c() {
    let lib = target_dir().join("libclusteredit_ffi.a");
    if Command::new("cc").arg("--version").output().is_err() || !lib.exists() {
        eprintln!("skipping: no C compiler or static library");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "clusteredit.h"
int main(void) {
    CeGraph *g = NULL;
    if (ce_graph_parse("4 3\n0 1\n0 2\n0 3\n", &g) != CE_STATUS_OK) return 1;
    CeClustering *c = NULL;
    if (ce_solve_tpg(g, &c) != CE_STATUS_OK) return 2;
    char *json = ce_clustering_to_json(c);
    printf("%s\n", json);
    ce_string_free(json);
    ce_clustering_free(c);
    ce_graph_free(g);
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.path().join("smoke");
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "{\"cost\":2,\"clusters\":[[0,1],[2],[3]]}\n"
    );
}
