//! SNAP-style edge-list text: one `u v` pair per line, `#` comments.

use std::collections::{HashMap, HashSet};
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Preprocessing applied by [`load_edge_list`]. The default produces a
/// simple, connected, undirected graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LoadOptions {
    pub collapse_duplicates: bool,
    pub drop_self_loops: bool,
    pub largest_component: bool,
}

impl Default for LoadOptions {
    fn default() -> Self {
        Self {
            collapse_duplicates: true,
            drop_self_loops: true,
            largest_component: true,
        }
    }
}

impl LoadOptions {
    /// Keep the input exactly as written (multigraph, possibly disconnected).
    pub fn raw() -> Self {
        Self {
            collapse_duplicates: false,
            drop_self_loops: false,
            largest_component: false,
        }
    }
}

pub fn load_edge_list<R: BufRead>(source: R, options: LoadOptions) -> Result<Graph> {
    let mut ids: HashMap<u64, usize> = HashMap::new();
    let mut labels = Vec::new();
    let mut edges = Vec::new();
    let mut seen = HashSet::new();

    let mut intern = |label: u64, labels: &mut Vec<u64>| -> usize {
        *ids.entry(label).or_insert_with(|| {
            labels.push(label);
            labels.len() - 1
        })
    };

    for (i, line) in source.lines().enumerate() {
        let line = line?;
        let line_no = i + 1;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let mut tokens = text.split_whitespace();
        let mut next_id = || -> Result<u64> {
            let tok = tokens.next().ok_or_else(|| Error::Parse {
                line: line_no,
                message: "expected two node ids".into(),
            })?;
            tok.parse::<u64>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("invalid node id {tok:?}"),
            })
        };
        let (a, b) = (next_id()?, next_id()?);
        if options.drop_self_loops && a == b {
            continue;
        }
        let (u, v) = (intern(a, &mut labels), intern(b, &mut labels));
        if options.collapse_duplicates && !seen.insert((u.min(v), u.max(v))) {
            continue;
        }
        edges.push((u, v));
    }

    let mut g = Graph::from_edges(labels.len(), edges)?.with_labels(labels)?;
    if options.largest_component {
        g = g.largest_component();
    }
    if g.node_count() == 0 || g.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(g)
}

pub fn load_edge_list_file(path: impl AsRef<Path>, options: LoadOptions) -> Result<Graph> {
    let file = File::open(path)?;
    load_edge_list(BufReader::new(file), options)
}

/// Writes one line per edge using original labels. Self-loops are written as
/// `u u`, parallel edges as repeated lines.
pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> Result<()> {
    writeln!(out, "# nodes {} edges {}", g.node_count(), g.edge_count())?;
    for &(u, v) in g.edges() {
        writeln!(out, "{} {}", g.label(u), g.label(v))?;
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GraphStats {
    pub nodes: usize,
    pub edges: usize,
    pub mean_degree: f64,
    pub k2_over_k: f64,
    /// `None` when undefined (zero degree variance over edges).
    pub assortativity: Option<f64>,
}

impl GraphStats {
    pub const CSV_HEADER: &'static str = "nodes,edges,mean_degree,k2_over_k,assortativity";

    pub fn of(g: &Graph) -> Result<Self> {
        let (mean_degree, k2_over_k) = g.degree_distribution().moments()?;
        let assortativity = match g.assortativity() {
            Ok(r) => Some(r),
            Err(Error::UndefinedAssortativity) => None,
            Err(e) => return Err(e),
        };
        Ok(Self {
            nodes: g.node_count(),
            edges: g.edge_count(),
            mean_degree,
            k2_over_k,
            assortativity,
        })
    }

    pub fn csv_row(&self) -> String {
        let r = self
            .assortativity
            .map_or_else(|| "undefined".to_string(), |r| format!("{r:.6}"));
        format!(
            "{},{},{:.6},{:.6},{}",
            self.nodes, self.edges, self.mean_degree, self.k2_over_k, r
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_simple_list_with_comment() {
        let g = load_edge_list("0 1\n1 2\n# c\n".as_bytes(), LoadOptions::default()).unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.degrees(), vec![1, 2, 1]);
    }

    #[test]
    fn collapses_duplicates_and_drops_loops() {
        let g = load_edge_list("0 1\n1 0\n0 0\n".as_bytes(), LoadOptions::default()).unwrap();
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn raw_options_keep_multigraph() {
        let g = load_edge_list("0 1\n1 0\n0 0\n".as_bytes(), LoadOptions::raw()).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.degree(0), 4);
    }

    #[test]
    fn crlf_and_tabs_are_accepted() {
        let g =
            load_edge_list("# x\r\n5\t7\r\n7 9\r\n".as_bytes(), LoadOptions::default()).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.labels().unwrap(), &[5, 7, 9]);
    }

    #[test]
    fn restricts_to_largest_component() {
        let g = load_edge_list("1 2\n3 4\n4 5\n".as_bytes(), LoadOptions::default()).unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.labels().unwrap(), &[3, 4, 5]);
    }

    #[test]
    fn parse_error_carries_line_number() {
        let err =
            load_edge_list("0 1\n# ok\n2 x\n".as_bytes(), LoadOptions::default()).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        let err = load_edge_list("7\n".as_bytes(), LoadOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn empty_after_preprocessing() {
        let err =
            load_edge_list("3 3\n# only a loop\n".as_bytes(), LoadOptions::default()).unwrap_err();
        assert!(matches!(err, Error::EmptyGraph));
    }

    #[test]
    fn write_then_read_preserves_multigraph() {
        let g = Graph::from_edges(3, vec![(0, 0), (0, 1), (0, 1), (1, 2)]).unwrap();
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf).unwrap();
        let back = load_edge_list(buf.as_slice(), LoadOptions::raw()).unwrap();
        assert_eq!(back.degrees(), g.degrees());
        assert_eq!(back.edge_count(), 4);
    }

    #[test]
    fn stats_row_format() {
        let g = load_edge_list("0 1\n1 2\n2 0\n".as_bytes(), LoadOptions::default()).unwrap();
        let s = GraphStats::of(&g).unwrap();
        assert_eq!(s.csv_row(), "3,3,2.000000,2.000000,undefined");
    }
}
