//! C ABI over the clusteredit solvers.
//!
//! Graphs and clusterings are opaque heap handles released with their
//! `*_free` functions. Every fallible call returns a [`CeStatus`]; on failure
//! `ce_last_error_message` describes the error for the calling thread.
//! Strings returned by the library are freed with `ce_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use clusteredit::cotree::{build_cotree, is_trivially_perfect};
use clusteredit::nlc::solve_cograph_p;
use clusteredit::oracle::brute_force_optimal;
use clusteredit::{solve_tpg, Clustering, ClusteringJson, Error, Graph};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CeStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    Parse = 3,
    NotCograph = 4,
    NotTriviallyPerfect = 5,
    Infeasible = 6,
    BudgetExceeded = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CeGraphClass {
    TriviallyPerfect = 0,
    Cograph = 1,
    Neither = 2,
}

/// Opaque undirected graph.
pub struct CeGraph(Graph);

/// Opaque solved clustering with its edit cost.
pub struct CeClustering {
    cost: u64,
    clustering: Clustering,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> CeStatus {
    match e {
        Error::Parse { .. } => CeStatus::Parse,
        Error::NotCograph { .. } => CeStatus::NotCograph,
        Error::NotTriviallyPerfect { .. } => CeStatus::NotTriviallyPerfect,
        Error::Infeasible { .. } => CeStatus::Infeasible,
        Error::BudgetExceeded { .. } => CeStatus::BudgetExceeded,
        _ => CeStatus::InvalidInput,
    }
}

/// Runs `f`, recording errors and turning panics into [`CeStatus::Panic`].
fn guard(f: impl FnOnce() -> Result<(), CeStatus>) -> CeStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CeStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("internal panic".into());
            CeStatus::Panic
        }
    }
}

fn lib<T>(r: clusteredit::Result<T>) -> Result<T, CeStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

fn non_null<T>(p: *const T, what: &str) -> Result<(), CeStatus> {
    if p.is_null() {
        set_error(format!("{what} is null"));
        return Err(CeStatus::NullPointer);
    }
    Ok(())
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ce_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Edgeless graph on `n` vertices.
#[no_mangle]
pub extern "C" fn ce_graph_new(n: usize) -> *mut CeGraph {
    Box::into_raw(Box::new(CeGraph(Graph::new(n))))
}

/// Parses the text graph format (`n m` header, then `u v` lines).
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ce_graph_parse(text: *const c_char, out: *mut *mut CeGraph) -> CeStatus {
    guard(|| {
        non_null(text, "text")?;
        non_null(out, "out")?;
        let s = CStr::from_ptr(text).to_str().map_err(|e| {
            set_error(format!("text is not UTF-8: {e}"));
            CeStatus::InvalidInput
        })?;
        let g = lib(Graph::parse(s))?;
        *out = Box::into_raw(Box::new(CeGraph(g)));
        Ok(())
    })
}

/// # Safety
/// `g` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ce_graph_free(g: *mut CeGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn ce_graph_vertex_count(g: *const CeGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n())
}

/// # Safety
/// `g` must be a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn ce_graph_add_edge(g: *mut CeGraph, u: usize, v: usize) -> CeStatus {
    guard(|| {
        non_null(g, "graph")?;
        let g = &mut (*g).0;
        if u == v || u >= g.n() || v >= g.n() {
            set_error(format!("invalid edge ({u}, {v}) on {} vertices", g.n()));
            return Err(CeStatus::InvalidInput);
        }
        g.add_edge(u, v);
        Ok(())
    })
}

/// # Safety
/// `g` must be a live graph handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ce_recognize(g: *const CeGraph, out: *mut CeGraphClass) -> CeStatus {
    guard(|| {
        non_null(g, "graph")?;
        non_null(out, "out")?;
        *out = match build_cotree(&(*g).0) {
            Ok(t) if is_trivially_perfect(&t) => CeGraphClass::TriviallyPerfect,
            Ok(_) => CeGraphClass::Cograph,
            Err(_) => CeGraphClass::Neither,
        };
        Ok(())
    })
}

unsafe fn solve_into(
    g: *const CeGraph,
    out: *mut *mut CeClustering,
    solve: impl FnOnce(&Graph) -> clusteredit::Result<(u64, Clustering)>,
) -> CeStatus {
    guard(|| {
        non_null(g, "graph")?;
        non_null(out, "out")?;
        let (cost, clustering) = lib(solve(&(*g).0))?;
        *out = Box::into_raw(Box::new(CeClustering { cost, clustering }));
        Ok(())
    })
}

/// Optimal Cluster Editing on a trivially perfect graph.
///
/// # Safety
/// `g` must be a live graph handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ce_solve_tpg(g: *const CeGraph, out: *mut *mut CeClustering) -> CeStatus {
    solve_into(g, out, |g| solve_tpg(g).map(|s| (s.cost, s.clustering)))
}

/// p-Cluster Editing on a cograph, with exactly `p` clusters when `exact`
/// is nonzero and at most `p` otherwise.
///
/// # Safety
/// `g` must be a live graph handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ce_solve_cograph_p(
    g: *const CeGraph,
    p: usize,
    exact: bool,
    out: *mut *mut CeClustering,
) -> CeStatus {
    solve_into(g, out, |g| solve_cograph_p(g, p, exact).map(|s| (s.cost, s.clustering)))
}

/// Exhaustive optimum, enumerating at most `budget` partitions.
///
/// # Safety
/// `g` must be a live graph handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ce_solve_oracle(g: *const CeGraph, budget: u64, out: *mut *mut CeClustering) -> CeStatus {
    solve_into(g, out, |g| {
        brute_force_optimal(g, u128::from(budget)).map(|s| (s.cost, s.clustering))
    })
}

/// # Safety
/// `c` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ce_clustering_free(c: *mut CeClustering) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// `c` must be a live clustering handle.
#[no_mangle]
pub unsafe extern "C" fn ce_clustering_cost(c: *const CeClustering) -> u64 {
    c.as_ref().map_or(0, |c| c.cost)
}

/// Number of clusters.
///
/// # Safety
/// `c` must be a live clustering handle.
#[no_mangle]
pub unsafe extern "C" fn ce_clustering_len(c: *const CeClustering) -> usize {
    c.as_ref().map_or(0, |c| c.clustering.len())
}

/// Writes the cluster index of each vertex into `buf`, which must hold
/// `len` entries with `len` equal to the vertex count.
///
/// # Safety
/// `c` must be a live clustering handle and `buf` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn ce_clustering_assignment(c: *const CeClustering, buf: *mut usize, len: usize) -> CeStatus {
    guard(|| {
        non_null(c, "clustering")?;
        non_null(buf, "buf")?;
        let a = (*c).clustering.assignment();
        if a.len() != len {
            set_error(format!(
                "buffer holds {len} entries, clustering has {} vertices",
                a.len()
            ));
            return Err(CeStatus::InvalidInput);
        }
        std::slice::from_raw_parts_mut(buf, len).copy_from_slice(&a);
        Ok(())
    })
}

/// Canonical JSON `{"cost":..,"clusters":[..]}`; free with `ce_string_free`.
///
/// # Safety
/// `c` must be a live clustering handle.
#[no_mangle]
pub unsafe extern "C" fn ce_clustering_to_json(c: *const CeClustering) -> *mut c_char {
    let Some(c) = c.as_ref() else {
        set_error("clustering is null".into());
        return ptr::null_mut();
    };
    let json = serde_json::to_string(&ClusteringJson::new(c.cost, &c.clustering)).expect("serializable");
    CString::new(json).expect("JSON has no nul").into_raw()
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ce_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
