use std::ffi::{CStr, CString};
use std::ptr;

use samplab_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(samplab_last_error()) }
        .to_string_lossy()
        .into_owned()
}

fn path_graph(n: usize) -> *mut SamplabGraph {
    let s: Vec<usize> = (0..n - 1).collect();
    let t: Vec<usize> = (1..n).collect();
    let mut g = ptr::null_mut();
    let st = unsafe { samplab_graph_from_edges(n, s.as_ptr(), t.as_ptr(), n - 1, &mut g) };
    assert_eq!(st, SamplabStatus::Ok);
    g
}

#[test]
fn graph_accessors() {
    let g = path_graph(4);
    let (mut n, mut m, mut k) = (0, 0, 0);
    unsafe {
        assert_eq!(samplab_graph_node_count(g, &mut n), SamplabStatus::Ok);
        assert_eq!(samplab_graph_edge_count(g, &mut m), SamplabStatus::Ok);
        assert_eq!(samplab_graph_degree(g, 1, &mut k), SamplabStatus::Ok);
        assert_eq!((n, m, k), (4, 3, 2));
        assert_eq!(
            samplab_graph_degree(g, 9, &mut k),
            SamplabStatus::InvalidArgument
        );
        assert!(last_error().contains('9'));
        let mut stats = SamplabGraphStats::default();
        assert_eq!(samplab_graph_stats(g, &mut stats), SamplabStatus::Ok);
        assert_eq!(stats.edges, 3);
        assert!((stats.mean_degree - 1.5).abs() < 1e-12);
        samplab_graph_free(g);
    }
}

#[test]
fn null_pointers_are_reported() {
    let mut n = 0;
    unsafe {
        assert_eq!(
            samplab_graph_node_count(ptr::null(), &mut n),
            SamplabStatus::NullPointer
        );
        assert!(last_error().contains("graph"));
        let g = path_graph(3);
        assert_eq!(
            samplab_graph_node_count(g, ptr::null_mut()),
            SamplabStatus::NullPointer
        );
        samplab_graph_free(g);
        samplab_graph_free(ptr::null_mut());
        samplab_trace_free(ptr::null_mut());
    }
}

#[test]
fn sampling_and_correction() {
    let degrees = vec![3usize; 200];
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(
            samplab_generate_configuration(degrees.as_ptr(), degrees.len(), 7, &mut g),
            SamplabStatus::Ok
        );
        let bfs = CString::new("bfs").unwrap();
        let mut trace = ptr::null_mut();
        assert_eq!(
            samplab_sample(g, bfs.as_ptr(), 0, 50, 0.7, 2, 1, &mut trace),
            SamplabStatus::Ok
        );
        let mut len = 0;
        assert_eq!(samplab_trace_len(trace, &mut len), SamplabStatus::Ok);
        assert_eq!(len, 50);
        let mut nodes = vec![0usize; 60];
        let mut degs = vec![0usize; 60];
        let mut written = 0;
        assert_eq!(
            samplab_trace_records(
                trace,
                nodes.as_mut_ptr(),
                degs.as_mut_ptr(),
                nodes.len(),
                &mut written
            ),
            SamplabStatus::Ok
        );
        assert_eq!(written, 50);
        assert_eq!(nodes[0], 0);
        assert!(degs[..50].iter().all(|&k| k == 3));
        let mut mean = 0.0;
        assert_eq!(
            samplab_bfs_correct(trace, 0.25, &mut mean),
            SamplabStatus::Ok
        );
        assert!((mean - 3.0).abs() < 1e-9);
        assert_eq!(
            samplab_bfs_correct(trace, 1.5, &mut mean),
            SamplabStatus::InvalidArgument
        );
        samplab_trace_free(trace);

        let rw = CString::new("rw").unwrap();
        assert_eq!(
            samplab_sample(g, rw.as_ptr(), 0, 100, 0.7, 2, 1, &mut trace),
            SamplabStatus::Ok
        );
        assert_eq!(samplab_rw_correct(trace, &mut mean), SamplabStatus::Ok);
        assert!((mean - 3.0).abs() < 1e-12);
        samplab_trace_free(trace);

        let bad = CString::new("crawl").unwrap();
        assert_eq!(
            samplab_sample(g, bad.as_ptr(), 0, 10, 0.7, 2, 1, &mut trace),
            SamplabStatus::InvalidArgument
        );
        assert!(last_error().contains("crawl"));
        samplab_graph_free(g);
    }
}

#[test]
fn analytic_entry_points() {
    let ks = [1usize, 3];
    let ps = [0.5, 0.5];
    let (mut m, mut t) = (0.0, 0.0);
    unsafe {
        assert_eq!(
            samplab_mean_q_of_f(ks.as_ptr(), ps.as_ptr(), 2, 1.0, &mut m),
            SamplabStatus::Ok
        );
        assert!((m - 2.0).abs() < 1e-9);
        assert_eq!(
            samplab_t_of_f(ks.as_ptr(), ps.as_ptr(), 2, 1.0, &mut t),
            SamplabStatus::Ok
        );
        assert_eq!(t, 1.0);
        let zero = [0usize, 2];
        let ps = [0.5, 0.5];
        assert_eq!(
            samplab_t_of_f(zero.as_ptr(), ps.as_ptr(), 2, 0.9, &mut t),
            SamplabStatus::UnreachableCoverage
        );
    }
}

#[test]
fn load_reports_io_and_parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    let missing = CString::new(dir.path().join("none.txt").to_str().unwrap()).unwrap();
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(
            samplab_graph_load(missing.as_ptr(), false, &mut g),
            SamplabStatus::Io
        );
        assert!(g.is_null());
        let bad = dir.path().join("bad.txt");
        std::fs::write(&bad, "1 2\nx y\n").unwrap();
        let bad = CString::new(bad.to_str().unwrap()).unwrap();
        assert_eq!(
            samplab_graph_load(bad.as_ptr(), false, &mut g),
            SamplabStatus::Parse
        );
        let good = dir.path().join("good.txt");
        std::fs::write(&good, "# c\n10 20\n20 30\n").unwrap();
        let good = CString::new(good.to_str().unwrap()).unwrap();
        assert_eq!(
            samplab_graph_load(good.as_ptr(), false, &mut g),
            SamplabStatus::Ok
        );
        let mut label = 0;
        assert_eq!(samplab_graph_label(g, 0, &mut label), SamplabStatus::Ok);
        assert!([10, 20, 30].contains(&label));
        samplab_graph_free(g);
    }
}

#[test]
fn header_declares_the_api() {
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/samplab.h")).unwrap();
    for name in [
        "typedef struct SamplabGraph SamplabGraph;",
        "typedef struct SamplabTrace SamplabTrace;",
        "SAMPLAB_STATUS_OK = 0",
        "SAMPLAB_STATUS_NON_CONVERGENCE",
        "samplab_last_error(void)",
        "samplab_graph_load(",
        "samplab_sample(",
        "samplab_bfs_correct(",
        "samplab_mean_q_of_f(",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}
