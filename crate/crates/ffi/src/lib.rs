//! C ABI over `samplab`.
//!
//! Graphs and traces are opaque heap handles released with their `_free`
//! function. Every call returns a [`SamplabStatus`]; on failure the message
//! is available from [`samplab_last_error`] on the same thread. Results are
//! written through out-pointers, which are left untouched on failure.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::slice;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use samplab::analytic::{mean_q_of_f, t_of_f};
use samplab::edgelist::{load_edge_list_file, GraphStats, LoadOptions};
use samplab::estimate::{bfs_correct, rw_correct};
use samplab::generate::configuration_model;
use samplab::sampling::{sample, SamplerParams};
use samplab::{DegreeDistribution, Error, Graph, SampleTrace, Technique};

/// Result code of every exported function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SamplabStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Io = 4,
    UnreachableCoverage = 5,
    NonConvergence = 6,
    Undefined = 7,
    Infeasible = 8,
    Unsupported = 9,
    Panic = 10,
}

/// Opaque graph handle.
pub struct SamplabGraph(Graph);

/// Opaque sample trace handle.
pub struct SamplabTrace(SampleTrace);

/// Summary statistics; `assortativity` is NaN when undefined.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct SamplabGraphStats {
    pub nodes: usize,
    pub edges: usize,
    pub mean_degree: f64,
    pub k2_over_k: f64,
    pub assortativity: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> SamplabStatus {
    match e {
        Error::Parse { .. } | Error::Json(_) | Error::Csv(_) => SamplabStatus::Parse,
        Error::Io(_) => SamplabStatus::Io,
        Error::UnreachableCoverage { .. } => SamplabStatus::UnreachableCoverage,
        Error::NonConvergence { .. } => SamplabStatus::NonConvergence,
        Error::UndefinedAssortativity => SamplabStatus::Undefined,
        Error::Infeasible(_) => SamplabStatus::Infeasible,
        Error::Unsupported(_) => SamplabStatus::Unsupported,
        _ => SamplabStatus::InvalidArgument,
    }
}

enum Failure {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Runs `body`, converting errors and panics to a status.
fn guard(body: impl FnOnce() -> Outcome) -> SamplabStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => SamplabStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_error(&format!("null pointer: {what}"));
            SamplabStatus::NullPointer
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(&format!("panic: {msg}"));
            SamplabStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(what))
}

unsafe fn array<'a, T>(p: *const T, len: usize, what: &'static str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    Ok(slice::from_raw_parts(p, len))
}

unsafe fn text<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::Lib(Error::InvalidArgument(format!("{what} is not valid UTF-8"))))
}

unsafe fn distribution(
    ks: *const usize,
    ps: *const f64,
    len: usize,
) -> Result<DegreeDistribution, Failure> {
    let ks = array(ks, len, "degrees")?;
    let ps = array(ps, len, "probabilities")?;
    Ok(DegreeDistribution::new(
        ks.iter().copied().zip(ps.iter().copied()),
    )?)
}

/// Message of the last failed call on this thread. The pointer stays valid
/// until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn samplab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Loads a whitespace-separated edge list. Unless `raw` is set, duplicate
/// edges and self-loops are dropped and only the largest component is kept.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out_graph` must be writable.
#[no_mangle]
pub unsafe extern "C" fn samplab_graph_load(
    path: *const c_char,
    raw: bool,
    out_graph: *mut *mut SamplabGraph,
) -> SamplabStatus {
    guard(|| {
        let path = text(path, "path")?;
        let slot = out(out_graph, "out_graph")?;
        let options = if raw {
            LoadOptions::raw()
        } else {
            LoadOptions::default()
        };
        let g = load_edge_list_file(path, options)?;
        *slot = Box::into_raw(Box::new(SamplabGraph(g)));
        Ok(())
    })
}

/// Builds a multigraph on `node_count` nodes from `edge_count` pairs
/// `(sources[i], targets[i])`.
///
/// # Safety
/// `sources` and `targets` must hold `edge_count` elements.
#[no_mangle]
pub unsafe extern "C" fn samplab_graph_from_edges(
    node_count: usize,
    sources: *const usize,
    targets: *const usize,
    edge_count: usize,
    out_graph: *mut *mut SamplabGraph,
) -> SamplabStatus {
    guard(|| {
        let s = array(sources, edge_count, "sources")?;
        let t = array(targets, edge_count, "targets")?;
        let slot = out(out_graph, "out_graph")?;
        let g = Graph::from_edges(
            node_count,
            s.iter().copied().zip(t.iter().copied()).collect(),
        )?;
        *slot = Box::into_raw(Box::new(SamplabGraph(g)));
        Ok(())
    })
}

/// Configuration-model multigraph realizing `degrees` exactly.
///
/// # Safety
/// `degrees` must hold `node_count` elements.
#[no_mangle]
pub unsafe extern "C" fn samplab_generate_configuration(
    degrees: *const usize,
    node_count: usize,
    rng_seed: u64,
    out_graph: *mut *mut SamplabGraph,
) -> SamplabStatus {
    guard(|| {
        let seq = array(degrees, node_count, "degrees")?;
        let slot = out(out_graph, "out_graph")?;
        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
        let g = configuration_model(seq, &mut rng)?;
        *slot = Box::into_raw(Box::new(SamplabGraph(g)));
        Ok(())
    })
}

/// # Safety
/// `graph` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn samplab_graph_free(graph: *mut SamplabGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// # Safety
/// `graph` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn samplab_graph_node_count(
    graph: *const SamplabGraph,
    out_count: *mut usize,
) -> SamplabStatus {
    guard(|| {
        *out(out_count, "out_count")? = deref(graph, "graph")?.0.node_count();
        Ok(())
    })
}

/// # Safety
/// `graph` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn samplab_graph_edge_count(
    graph: *const SamplabGraph,
    out_count: *mut usize,
) -> SamplabStatus {
    guard(|| {
        *out(out_count, "out_count")? = deref(graph, "graph")?.0.edge_count();
        Ok(())
    })
}

/// Degree of internal node `node`; a self-loop counts twice.
///
/// # Safety
/// `graph` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn samplab_graph_degree(
    graph: *const SamplabGraph,
    node: usize,
    out_degree: *mut usize,
) -> SamplabStatus {
    guard(|| {
        let g = &deref(graph, "graph")?.0;
        g.check_node(node)?;
        *out(out_degree, "out_degree")? = g.degree(node);
        Ok(())
    })
}

/// Original edge-list label of internal node `node`.
///
/// # Safety
/// `graph` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn samplab_graph_label(
    graph: *const SamplabGraph,
    node: usize,
    out_label: *mut u64,
) -> SamplabStatus {
    guard(|| {
        let g = &deref(graph, "graph")?.0;
        g.check_node(node)?;
        *out(out_label, "out_label")? = g.label(node);
        Ok(())
    })
}

/// # Safety
/// `graph` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn samplab_graph_stats(
    graph: *const SamplabGraph,
    out_stats: *mut SamplabGraphStats,
) -> SamplabStatus {
    guard(|| {
        let s = GraphStats::of(&deref(graph, "graph")?.0)?;
        *out(out_stats, "out_stats")? = SamplabGraphStats {
            nodes: s.nodes,
            edges: s.edges,
            mean_degree: s.mean_degree,
            k2_over_k: s.k2_over_k,
            assortativity: s.assortativity.unwrap_or(f64::NAN),
        };
        Ok(())
    })
}

/// Explores `graph` from internal node `seed`. `technique` is one of
/// `bfs`, `dfs`, `ff`, `sbs`, `rw`, `mhrw`, `wwr`, `stub`. `budget` counts
/// distinct nodes for traversals and steps for walks.
///
/// # Safety
/// `graph` must be a live handle and `technique` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn samplab_sample(
    graph: *const SamplabGraph,
    technique: *const c_char,
    seed: usize,
    budget: usize,
    burn_probability: f64,
    names: usize,
    rng_seed: u64,
    out_trace: *mut *mut SamplabTrace,
) -> SamplabStatus {
    guard(|| {
        let g = &deref(graph, "graph")?.0;
        let technique: Technique = text(technique, "technique")?.parse()?;
        let slot = out(out_trace, "out_trace")?;
        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
        let params = SamplerParams {
            burn_probability,
            names,
        };
        let mut trace = sample(g, technique, seed, budget, params, &mut rng)?;
        trace.rng_seed = Some(rng_seed);
        *slot = Box::into_raw(Box::new(SamplabTrace(trace)));
        Ok(())
    })
}

/// # Safety
/// `trace` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn samplab_trace_free(trace: *mut SamplabTrace) {
    if !trace.is_null() {
        drop(Box::from_raw(trace));
    }
}

/// # Safety
/// `trace` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn samplab_trace_len(
    trace: *const SamplabTrace,
    out_len: *mut usize,
) -> SamplabStatus {
    guard(|| {
        *out(out_len, "out_len")? = deref(trace, "trace")?.0.len();
        Ok(())
    })
}

/// Fraction of graph nodes present in the trace.
///
/// # Safety
/// `trace` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn samplab_trace_coverage(
    trace: *const SamplabTrace,
    out_coverage: *mut f64,
) -> SamplabStatus {
    guard(|| {
        *out(out_coverage, "out_coverage")? = deref(trace, "trace")?.0.coverage;
        Ok(())
    })
}

/// Copies up to `capacity` node ids and degrees in sample order; either
/// buffer may be null. `out_written` receives the number copied.
///
/// # Safety
/// Non-null buffers must hold `capacity` elements.
#[no_mangle]
pub unsafe extern "C" fn samplab_trace_records(
    trace: *const SamplabTrace,
    nodes: *mut usize,
    degrees: *mut usize,
    capacity: usize,
    out_written: *mut usize,
) -> SamplabStatus {
    guard(|| {
        let t = &deref(trace, "trace")?.0;
        let written = out(out_written, "out_written")?;
        let m = capacity.min(t.len());
        for (i, r) in t.records.iter().take(m).enumerate() {
            if !nodes.is_null() {
                *nodes.add(i) = r.node;
            }
            if !degrees.is_null() {
                *degrees.add(i) = r.degree;
            }
        }
        *written = m;
        Ok(())
    })
}

/// Expected mean sampled degree of a BFS-like traversal at coverage `f` on
/// a random graph with degree distribution `(degrees[i], probabilities[i])`.
///
/// # Safety
/// Both arrays must hold `len` elements.
#[no_mangle]
pub unsafe extern "C" fn samplab_mean_q_of_f(
    degrees: *const usize,
    probabilities: *const f64,
    len: usize,
    f: f64,
    out_mean: *mut f64,
) -> SamplabStatus {
    guard(|| {
        let d = distribution(degrees, probabilities, len)?;
        let slot = out(out_mean, "out_mean")?;
        *slot = mean_q_of_f(&d, f)?;
        Ok(())
    })
}

/// Stub-index time at which the expected coverage reaches `f`.
///
/// # Safety
/// Both arrays must hold `len` elements.
#[no_mangle]
pub unsafe extern "C" fn samplab_t_of_f(
    degrees: *const usize,
    probabilities: *const f64,
    len: usize,
    f: f64,
    out_t: *mut f64,
) -> SamplabStatus {
    guard(|| {
        let d = distribution(degrees, probabilities, len)?;
        let slot = out(out_t, "out_t")?;
        *slot = t_of_f(&d, f)?;
        Ok(())
    })
}

/// Mean degree estimate of a traversal trace corrected for its degree bias,
/// given the true coverage `f_real`.
///
/// # Safety
/// `trace` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn samplab_bfs_correct(
    trace: *const SamplabTrace,
    f_real: f64,
    out_mean: *mut f64,
) -> SamplabStatus {
    guard(|| {
        let t = &deref(trace, "trace")?.0;
        let slot = out(out_mean, "out_mean")?;
        let report = bfs_correct(t, &t.x_or_degree(), f_real)?;
        *slot = report.value;
        Ok(())
    })
}

/// Mean degree estimate of a random-walk trace with degree re-weighting.
///
/// # Safety
/// `trace` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn samplab_rw_correct(
    trace: *const SamplabTrace,
    out_mean: *mut f64,
) -> SamplabStatus {
    guard(|| {
        let t = &deref(trace, "trace")?.0;
        let slot = out(out_mean, "out_mean")?;
        *slot = rw_correct(t, &t.x_or_degree())?.value;
        Ok(())
    })
}
