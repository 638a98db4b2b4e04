//! C ABI over `greedy-order`.
//!
//! Graphs, orderings and coverage problems cross the boundary as opaque
//! handles. Every fallible call returns a [`GroStatus`]; results come back
//! through out-pointers, and the message of the most recent failure on the
//! calling thread is available from [`gro_last_error`]. Handles returned by
//! the library must be released with the matching `*_free` function.
//!
//! Labels in orderings are 1-based, vertices are 0-based.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use greedy_order::generators;
use greedy_order::{CoverageObjective, Error, Graph, Ordering, SubmodularProblem, Termination};

/// Status code returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Domain = 3,
    Budget = 4,
    Sampling = 5,
    Parse = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

/// Termination rule of the token traversal.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroVariant {
    Standard = 0,
    OrderEqualsN = 1,
}

impl From<GroVariant> for Termination {
    fn from(v: GroVariant) -> Self {
        match v {
            GroVariant::Standard => Termination::Standard,
            GroVariant::OrderEqualsN => Termination::OrderEqualsN,
        }
    }
}

/// Opaque communication graph.
pub struct GroGraph(Graph);

/// Opaque agent ordering.
pub struct GroOrdering(Ordering);

/// Opaque coverage problem.
pub struct GroProblem(SubmodularProblem<CoverageObjective>);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    let c = CString::new(text).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> GroStatus {
    match err {
        Error::Argument(_) => GroStatus::InvalidArgument,
        Error::Domain(_) => GroStatus::Domain,
        Error::Budget(_) => GroStatus::Budget,
        Error::Sampling(_) => GroStatus::Sampling,
        Error::Parse(_) => GroStatus::Parse,
    }
}

struct Fail(GroStatus);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        set_error(e.to_string());
        Fail(status_of(&e))
    }
}

type FfiResult = std::result::Result<(), Fail>;

/// Runs `body`, translating errors and panics into status codes.
fn guard(body: impl FnOnce() -> FfiResult) -> GroStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => GroStatus::Ok,
        Ok(Err(Fail(s))) => s,
        Err(_) => {
            set_error("internal panic");
            GroStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    set_error(format!("{what} is null"));
    Fail(GroStatus::NullPointer)
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> std::result::Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> FfiResult {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn c_str<'a>(s: *const c_char, what: &str) -> std::result::Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error(format!("{what} is not valid UTF-8"));
        Fail(GroStatus::Parse)
    })
}

unsafe fn put_graph(out: *mut *mut GroGraph, g: Graph) -> FfiResult {
    write(out, Box::into_raw(Box::new(GroGraph(g))), "out")
}

unsafe fn put_ordering(out: *mut *mut GroOrdering, o: Ordering) -> FfiResult {
    write(out, Box::into_raw(Box::new(GroOrdering(o))), "out")
}

/// Writes the message of the last failure on this thread into `buf`
/// (NUL-terminated, truncated to `len`). Returns the full message length in
/// bytes, or 0 when no error has been recorded.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn gro_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else { return 0 };
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

// ---------------------------------------------------------------- graphs

/// Creates a graph with `n` vertices and no edges.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gro_graph_new(
    n: usize,
    directed: bool,
    out: *mut *mut GroGraph,
) -> GroStatus {
    guard(|| put_graph(out, Graph::empty(n, directed)?))
}

/// Adds the edge (or arc) `u -> v`.
///
/// # Safety
/// `g` must be a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn gro_graph_add_edge(g: *mut GroGraph, u: usize, v: usize) -> GroStatus {
    guard(|| {
        let g = g.as_mut().ok_or_else(|| null("graph"))?;
        g.0.add_edge(u, v)?;
        Ok(())
    })
}

/// Parses the text edge-list format (`n <count> <directed|undirected>` then `u v` lines).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gro_graph_parse(
    text: *const c_char,
    out: *mut *mut GroGraph,
) -> GroStatus {
    guard(|| {
        let text = c_str(text, "text")?;
        put_graph(out, Graph::parse_edge_list(text)?)
    })
}

/// Renders the graph in edge-list format. Free the string with [`gro_string_free`].
///
/// # Safety
/// `g` must be a live graph handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gro_graph_to_string(
    g: *const GroGraph,
    out: *mut *mut c_char,
) -> GroStatus {
    guard(|| {
        let g = deref(g, "graph")?;
        let s = CString::new(g.0.to_edge_list()).map_err(|_| Fail(GroStatus::Panic))?;
        write(out, s.into_raw(), "out")
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a string obtained from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn gro_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Releases a graph handle.
///
/// # Safety
/// `g` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn gro_graph_free(g: *mut GroGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn gro_graph_vertex_count(g: *const GroGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n())
}

/// Number of edges (arcs for a directed graph), or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn gro_graph_edge_count(g: *const GroGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

/// Whether every vertex reaches every other (strongly, when directed).
///
/// # Safety
/// `g` must be a live graph handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gro_graph_is_connected(g: *const GroGraph, out: *mut bool) -> GroStatus {
    guard(|| write(out, deref(g, "graph")?.0.is_connected(), "out"))
}

/// Hop distance from `s` to `d`. Fails with `Domain` when `d` is unreachable.
///
/// # Safety
/// `g` must be a live graph handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gro_graph_hops(
    g: *const GroGraph,
    s: usize,
    d: usize,
    out: *mut usize,
) -> GroStatus {
    guard(|| {
        let g = deref(g, "graph")?;
        match g.0.shortest_path_hops(s, d)? {
            Some(h) => write(out, h, "out"),
            None => Err(Error::Domain(format!("vertex {d} unreachable from {s}")).into()),
        }
    })
}

/// Largest hop distance over all pairs; requires a connected graph.
///
/// # Safety
/// `g` must be a live graph handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gro_graph_diameter(g: *const GroGraph, out: *mut usize) -> GroStatus {
    guard(|| write(out, deref(g, "graph")?.0.diameter()?, "out"))
}

/// Path on `n` vertices.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gro_gen_line(n: usize, out: *mut *mut GroGraph) -> GroStatus {
    guard(|| put_graph(out, generators::gen_line(n)?))
}

/// Star on `n` vertices centered at vertex 0.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gro_gen_star(n: usize, out: *mut *mut GroGraph) -> GroStatus {
    guard(|| put_graph(out, generators::gen_star(n)?))
}

/// Complete undirected graph on `n` vertices.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gro_gen_complete(n: usize, out: *mut *mut GroGraph) -> GroStatus {
    guard(|| put_graph(out, generators::gen_complete(n)?))
}

/// Directed cycle `0 -> 1 -> ... -> n-1 -> 0`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gro_gen_directed_cycle(n: usize, out: *mut *mut GroGraph) -> GroStatus {
    guard(|| put_graph(out, generators::gen_directed_cycle(n)?))
}

/// Strongly connected digraph whose best ordering costs the most among digraphs of its size.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gro_gen_dn(n: usize, out: *mut *mut GroGraph) -> GroStatus {
    guard(|| put_graph(out, generators::gen_dn(n)?))
}

/// Erdos-Renyi G(n, p) from `seed`. With `connected`, draws are rejected
/// until the sample is connected (failing with `Budget` after many attempts).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gro_gen_erdos_renyi(
    n: usize,
    p: f64,
    seed: u64,
    connected: bool,
    out: *mut *mut GroGraph,
) -> GroStatus {
    guard(|| {
        let g = if connected {
            generators::gen_connected_erdos_renyi(n, p, seed)?
        } else {
            generators::gen_erdos_renyi(n, p, seed)?
        };
        put_graph(out, g)
    })
}

// ------------------------------------------------------------- orderings

/// Builds an ordering from `labels[v]`, the 1-based label of vertex `v`.
///
/// # Safety
/// `labels` must point to `n` readable values; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gro_ordering_from_labels(
    labels: *const usize,
    n: usize,
    out: *mut *mut GroOrdering,
) -> GroStatus {
    guard(|| {
        if labels.is_null() {
            return Err(null("labels"));
        }
        let labels = std::slice::from_raw_parts(labels, n).to_vec();
        put_ordering(out, Ordering::from_labels(labels)?)
    })
}

/// Uniformly random ordering of `n` vertices.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gro_ordering_random(
    n: usize,
    seed: u64,
    out: *mut *mut GroOrdering,
) -> GroStatus {
    guard(|| put_ordering(out, greedy_order::random_ordering(n, seed)?))
}

/// Number of vertices covered, or 0 for a null handle.
///
/// # Safety
/// `o` must be null or a live ordering handle.
#[no_mangle]
pub unsafe extern "C" fn gro_ordering_len(o: *const GroOrdering) -> usize {
    o.as_ref().map_or(0, |o| o.0.n())
}

/// Copies the labels (indexed by vertex) into `buf`, which must hold `len >= n` values.
///
/// # Safety
/// `o` must be a live ordering handle; `buf` must point to `len` writable values.
#[no_mangle]
pub unsafe extern "C" fn gro_ordering_labels(
    o: *const GroOrdering,
    buf: *mut usize,
    len: usize,
) -> GroStatus {
    guard(|| {
        let o = deref(o, "ordering")?;
        copy_out(o.0.labels(), buf, len)
    })
}

/// Copies the vertices in label order into `buf`, which must hold `len >= n` values.
///
/// # Safety
/// `o` must be a live ordering handle; `buf` must point to `len` writable values.
#[no_mangle]
pub unsafe extern "C" fn gro_ordering_sequence(
    o: *const GroOrdering,
    buf: *mut usize,
    len: usize,
) -> GroStatus {
    guard(|| {
        let o = deref(o, "ordering")?;
        copy_out(o.0.sequence(), buf, len)
    })
}

unsafe fn copy_out(src: &[usize], buf: *mut usize, len: usize) -> FfiResult {
    if buf.is_null() {
        return Err(null("buffer"));
    }
    if len < src.len() {
        set_error(format!("buffer holds {len} values, {} needed", src.len()));
        return Err(Fail(GroStatus::BufferTooSmall));
    }
    ptr::copy_nonoverlapping(src.as_ptr(), buf, src.len());
    Ok(())
}

/// Releases an ordering handle.
///
/// # Safety
/// `o` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn gro_ordering_free(o: *mut GroOrdering) {
    if !o.is_null() {
        drop(Box::from_raw(o));
    }
}

// ------------------------------------------------------ communication time

/// Total communication time of ordering `o` on `g`. When `per_step` is not
/// null it receives the `n - 1` per-step hop counts (`len` must be large enough).
///
/// # Safety
/// `g` and `o` must be live handles; `total` a valid pointer; `per_step`
/// null or pointing to `len` writable values.
#[no_mangle]
pub unsafe extern "C" fn gro_comm_time(
    g: *const GroGraph,
    o: *const GroOrdering,
    total: *mut usize,
    per_step: *mut usize,
    len: usize,
) -> GroStatus {
    guard(|| {
        let g = deref(g, "graph")?;
        let o = deref(o, "ordering")?;
        let t = greedy_order::comm_time(&g.0, &o.0)?;
        if !per_step.is_null() {
            copy_out(t.per_step(), per_step, len)?;
        }
        write(total, t.total(), "total")
    })
}

unsafe fn report(
    r: greedy_order::Result<greedy_order::OrderingReport>,
    out: *mut *mut GroOrdering,
    total: *mut usize,
) -> FfiResult {
    let r = r?;
    write(total, r.time.total(), "total")?;
    put_ordering(out, r.ordering)
}

/// Minimum-time ordering by exhaustive search (small graphs only, else `Budget`).
///
/// # Safety
/// `g` must be a live graph handle; `out` and `total` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn gro_best_ordering_exact(
    g: *const GroGraph,
    out: *mut *mut GroOrdering,
    total: *mut usize,
) -> GroStatus {
    guard(|| {
        report(
            greedy_order::best_ordering_exact(&deref(g, "graph")?.0),
            out,
            total,
        )
    })
}

/// Maximum-time ordering by exhaustive search (small graphs only, else `Budget`).
///
/// # Safety
/// `g` must be a live graph handle; `out` and `total` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn gro_worst_ordering_exact(
    g: *const GroGraph,
    out: *mut *mut GroOrdering,
    total: *mut usize,
) -> GroStatus {
    guard(|| {
        report(
            greedy_order::worst_ordering_exact(&deref(g, "graph")?.0),
            out,
            total,
        )
    })
}

/// Minimum-time ordering read off a shortest spanning walk.
///
/// # Safety
/// `g` must be a live graph handle; `out` and `total` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn gro_best_ordering_walk(
    g: *const GroGraph,
    out: *mut *mut GroOrdering,
    total: *mut usize,
) -> GroStatus {
    guard(|| {
        let r = greedy_order::best_ordering_spanning_walk(&deref(g, "graph")?.0).map(|(r, _)| r);
        report(r, out, total)
    })
}

/// Minimum communication time of a tree, `2(n - 1) - diameter`.
///
/// # Safety
/// `g` must be a live graph handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gro_tree_min_time(g: *const GroGraph, out: *mut usize) -> GroStatus {
    guard(|| {
        write(
            out,
            greedy_order::tree_tmin_closed_form(&deref(g, "graph")?.0)?,
            "out",
        )
    })
}

/// Worst ordering of the `n`-vertex line.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gro_worst_line_ordering(
    n: usize,
    out: *mut *mut GroOrdering,
) -> GroStatus {
    guard(|| put_ordering(out, greedy_order::worst_line_ordering(n)?))
}

/// Worst ordering of the `n`-vertex directed cycle.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gro_worst_cycle_ordering(
    n: usize,
    out: *mut *mut GroOrdering,
) -> GroStatus {
    guard(|| put_ordering(out, greedy_order::worst_directed_cycle_ordering(n)?))
}

/// Best ordering of the digraph built by [`gro_gen_dn`].
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gro_dn_best_ordering(n: usize, out: *mut *mut GroOrdering) -> GroStatus {
    guard(|| put_ordering(out, greedy_order::dn_best_ordering(n)?))
}

// ------------------------------------------------------ traversal & greedy

/// Runs the token traversal from `seed` on an undirected connected graph.
/// When `problem` is not null each agent also makes its greedy pick, and
/// `value` (if not null) receives the objective of the resulting joint action.
///
/// # Safety
/// `g` must be a live graph handle; `problem` null or a live problem handle;
/// `t` and `out` valid pointers; `value` null or valid.
#[no_mangle]
pub unsafe extern "C" fn gro_run_traversal(
    g: *const GroGraph,
    seed: usize,
    variant: GroVariant,
    problem: *const GroProblem,
    t: *mut usize,
    out: *mut *mut GroOrdering,
    value: *mut f64,
) -> GroStatus {
    guard(|| {
        let g = deref(g, "graph")?;
        let problem = problem.as_ref().map(|p| &p.0);
        let trace = greedy_order::run_algorithm1(&g.0, seed, problem, variant.into())?;
        if let (Some(p), false) = (problem, value.is_null()) {
            let (_, w) = greedy_order::greedy_execute(p, &trace.ordering)?;
            value.write(w);
        }
        write(t, trace.t, "t")?;
        put_ordering(out, trace.ordering)
    })
}

/// Parses a coverage problem from JSON
/// (`{"ground_size": .., "weights": [..], "agents": [[[..], ..], ..]}`).
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gro_problem_from_json(
    json: *const c_char,
    out: *mut *mut GroProblem,
) -> GroStatus {
    guard(|| {
        let p = SubmodularProblem::from_json(c_str(json, "json")?)?;
        write(out, Box::into_raw(Box::new(GroProblem(p))), "out")
    })
}

/// Releases a problem handle.
///
/// # Safety
/// `p` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn gro_problem_free(p: *mut GroProblem) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Objective value reached by the greedy run in ordering `o`.
///
/// # Safety
/// `p` and `o` must be live handles; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gro_greedy_value(
    p: *const GroProblem,
    o: *const GroOrdering,
    out: *mut f64,
) -> GroStatus {
    guard(|| {
        let (_, w) =
            greedy_order::greedy_execute(&deref(p, "problem")?.0, &deref(o, "ordering")?.0)?;
        write(out, w, "out")
    })
}

/// Optimal objective value by enumerating every joint action.
///
/// # Safety
/// `p` must be a live problem handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gro_optimum_value(p: *const GroProblem, out: *mut f64) -> GroStatus {
    guard(|| {
        let (_, w) = greedy_order::brute_force_opt(&deref(p, "problem")?.0)?;
        write(out, w, "out")
    })
}
