//! Immutable undirected simple graph and edge-list loading.
//!
//! Nodes are dense `0..node_count` ids. Adjacency is stored in CSR form with
//! every neighbor list sorted, so iteration order (and therefore every random
//! tie-break downstream) is deterministic.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use serde::Serialize;

use crate::error::{Error, Result};

/// Undirected, unweighted graph without self-loops or parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    /// Each undirected edge once, as `(u, v)` with `u < v`, sorted.
    edges: Vec<(u32, u32)>,
}

/// Counts gathered while cleaning raw edges into a [`Graph`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct LoadReport {
    pub nodes: usize,
    pub edges: usize,
    pub dropped_self_loops: usize,
    pub dropped_duplicates: usize,
}

impl Graph {
    /// Builds a graph on `node_count` nodes. Self-loops are dropped and
    /// parallel edges collapsed; both are counted in the returned report.
    /// A graph with no edges is allowed here, unlike [`load_edge_list`].
    pub fn from_edges<I>(node_count: usize, edges: I) -> Result<(Graph, LoadReport)>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if node_count > u32::MAX as usize {
            return Err(Error::Config(format!("{node_count} nodes exceeds the u32 id space")));
        }
        let mut report = LoadReport { nodes: node_count, ..LoadReport::default() };
        let mut list = Vec::new();
        for (u, v) in edges {
            for node in [u, v] {
                if node >= node_count {
                    return Err(Error::NodeOutOfRange { node, node_count });
                }
            }
            if u == v {
                report.dropped_self_loops += 1;
                continue;
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            list.push((a as u32, b as u32));
        }
        list.sort_unstable();
        let raw = list.len();
        list.dedup();
        report.dropped_duplicates = raw - list.len();
        report.edges = list.len();

        let mut degree = vec![0usize; node_count];
        for &(u, v) in &list {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(node_count + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..node_count].to_vec();
        let mut targets = vec![0u32; 2 * list.len()];
        // Smaller neighbors first, then larger ones; `list` is sorted so each
        // pass appends in ascending order and every row ends up sorted.
        for &(u, v) in &list {
            targets[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }
        for &(u, v) in &list {
            targets[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
        }

        Ok((Graph { offsets, targets, edges: list }, report))
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of undirected edges, `m`.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.offsets.windows(2).map(|w| w[1] - w[0])
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().max().unwrap_or(0)
    }

    /// Sorted neighbors of `v`.
    pub fn neighbors(&self, v: usize) -> Result<&[u32]> {
        if v >= self.node_count() {
            return Err(Error::NodeOutOfRange { node: v, node_count: self.node_count() });
        }
        Ok(self.adjacent(v))
    }

    /// Unchecked variant of [`Graph::neighbors`]; panics if `v` is out of range.
    #[inline]
    pub fn adjacent(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Every edge once as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }
}

/// Bijection between external node identifiers and dense ids.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NodeLabelTable {
    labels: Vec<String>,
    index: HashMap<String, u32>,
}

impl NodeLabelTable {
    /// Labels `0..n` rendered as decimal strings.
    pub fn identity(n: usize) -> Self {
        Self::from_sorted_labels((0..n).map(|i| i.to_string()).collect())
    }

    fn from_sorted_labels(labels: Vec<String>) -> Self {
        let index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i as u32)).collect();
        NodeLabelTable { labels, index }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn id(&self, label: &str) -> Option<usize> {
        self.index.get(label).map(|&i| i as usize)
    }

    pub fn label(&self, id: usize) -> Option<&str> {
        self.labels.get(id).map(String::as_str)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}

/// A graph loaded from external identifiers.
#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub graph: Graph,
    pub labels: NodeLabelTable,
    pub report: LoadReport,
}

/// Builds a graph from pairs of external identifiers with the same cleaning
/// rules as [`load_edge_list`].
///
/// Dense ids follow the sorted order of the labels: numeric order when every
/// label parses as an integer, lexicographic otherwise.
pub fn from_labeled_edges<I, S>(pairs: I) -> Result<LoadedGraph>
where
    I: IntoIterator<Item = (S, S)>,
    S: AsRef<str>,
{
    let pairs: Vec<(String, String)> =
        pairs.into_iter().map(|(a, b)| (a.as_ref().to_owned(), b.as_ref().to_owned())).collect();
    build_labeled(pairs)
}

fn build_labeled(pairs: Vec<(String, String)>) -> Result<LoadedGraph> {
    let mut distinct: Vec<&str> = pairs.iter().flat_map(|(a, b)| [a.as_str(), b.as_str()]).collect();
    distinct.sort_unstable();
    distinct.dedup();
    let numeric: Option<Vec<i64>> = distinct.iter().map(|s| s.parse::<i64>().ok()).collect();
    let sorted: Vec<String> = match numeric {
        Some(mut keyed) => {
            keyed.sort_unstable();
            keyed.dedup();
            // "01" and "1" parse alike; fall back to text order to stay bijective.
            if keyed.len() == distinct.len() {
                let mut by_value: Vec<&str> = distinct.clone();
                by_value.sort_by_key(|s| s.parse::<i64>().unwrap());
                by_value.into_iter().map(str::to_owned).collect()
            } else {
                distinct.iter().map(|s| (*s).to_owned()).collect()
            }
        }
        None => distinct.iter().map(|s| (*s).to_owned()).collect(),
    };
    let labels = NodeLabelTable::from_sorted_labels(sorted);
    let ids = pairs.iter().map(|(a, b)| (labels.id(a).unwrap(), labels.id(b).unwrap()));
    let (graph, report) = Graph::from_edges(labels.len(), ids)?;
    if graph.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(LoadedGraph { graph, labels, report })
}

/// Field separator of an edge-list file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EdgeListFormat {
    /// Whitespace-separated; a comma is also accepted as separator.
    #[default]
    Whitespace,
    Csv,
}

/// Reads one edge per line. Blank lines and lines starting with `#` are
/// skipped.
pub fn load_edge_list<R: BufRead>(source: R, format: EdgeListFormat) -> Result<LoadedGraph> {
    let mut pairs = Vec::new();
    for (idx, line) in source.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = match format {
            EdgeListFormat::Whitespace => {
                trimmed.split(|c: char| c.is_whitespace() || c == ',').filter(|f| !f.is_empty()).collect()
            }
            EdgeListFormat::Csv => trimmed.split(',').map(str::trim).collect(),
        };
        match fields.as_slice() {
            [a, b] if !a.is_empty() && !b.is_empty() => pairs.push(((*a).to_owned(), (*b).to_owned())),
            _ => {
                return Err(Error::Parse {
                    line: idx + 1,
                    message: format!("expected two endpoint identifiers, found {:?}", trimmed),
                })
            }
        }
    }
    build_labeled(pairs)
}

/// Writes `g` as a whitespace edge list, one `u v` line per edge. Without a
/// label table the dense ids are written.
pub fn write_edge_list<W: Write>(g: &Graph, labels: Option<&NodeLabelTable>, mut out: W) -> Result<()> {
    writeln!(out, "# nodes: {} edges: {}", g.node_count(), g.edge_count())?;
    for &(u, v) in g.edges() {
        match labels {
            Some(t) => {
                let lu = t.label(u as usize).ok_or(Error::NodeOutOfRange { node: u as usize, node_count: t.len() })?;
                let lv = t.label(v as usize).ok_or(Error::NodeOutOfRange { node: v as usize, node_count: t.len() })?;
                writeln!(out, "{lu} {lv}")?;
            }
            None => writeln!(out, "{u} {v}")?,
        }
    }
    Ok(())
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use proptest::prelude::*;

    fn load(text: &str) -> Result<LoadedGraph> {
        load_edge_list(text.as_bytes(), EdgeListFormat::Whitespace)
    }

    #[test]
    fn triangle_loads() {
        let l = load("0 1\n1 2\n2 0").unwrap();
        assert_eq!(l.graph.node_count(), 3);
        assert_eq!(l.graph.edge_count(), 3);
        assert_eq!(l.graph.degrees().collect::<Vec<_>>(), vec![2, 2, 2]);
        assert_eq!(l.graph.neighbors(0).unwrap(), &[1, 2]);
    }

    #[test]
    fn three_clique_graph_counts() {
        let mut text = String::from("# figure graph, 1-based\n");
        for base in [1, 5, 9] {
            for i in 0..4 {
                for j in i + 1..4 {
                    text.push_str(&format!("{} {}\n", base + i, base + j));
                }
            }
        }
        text.push_str("4 5\n4 10\n5 10\n");
        let l = load(&text).unwrap();
        assert_eq!(l.graph, three_cliques());
        assert_eq!(l.graph.edge_count(), 21);
        for v in 0..12 {
            let expected = if [3, 4, 9].contains(&v) { 5 } else { 3 };
            assert_eq!(l.graph.degree(v), expected, "node {}", v + 1);
        }
        let node4 = l.labels.id("4").unwrap();
        let names: Vec<&str> =
            l.graph.neighbors(node4).unwrap().iter().map(|&u| l.labels.label(u as usize).unwrap()).collect();
        assert_eq!(names, vec!["1", "2", "3", "5", "10"]);
    }

    #[test]
    fn self_loop_only_is_empty() {
        assert!(matches!(load("0 0"), Err(Error::EmptyGraph)));
    }

    #[test]
    fn cleaning_is_counted() {
        let l = load("a b\nb a\na a\n# c d\n\nb c\n").unwrap();
        assert_eq!(l.report, LoadReport { nodes: 3, edges: 2, dropped_self_loops: 1, dropped_duplicates: 1 });
        assert_eq!(l.labels.labels(), &["a", "b", "c"]);
    }

    #[test]
    fn malformed_line_reports_number() {
        match load("0 1\n1 2 3\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(load("0\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn csv_format() {
        let l = load_edge_list("x, y\ny,z\n".as_bytes(), EdgeListFormat::Csv).unwrap();
        assert_eq!(l.graph.edge_count(), 2);
        assert!(matches!(load_edge_list("x y\n".as_bytes(), EdgeListFormat::Csv), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn numeric_labels_sort_numerically() {
        let l = load("10 2\n2 1\n").unwrap();
        assert_eq!(l.labels.labels(), &["1", "2", "10"]);
    }

    #[test]
    fn neighbors_out_of_range() {
        let g = triangle();
        assert!(matches!(g.neighbors(3), Err(Error::NodeOutOfRange { node: 3, node_count: 3 })));
        let path = Graph::from_edges(2, [(0, 1)]).unwrap().0;
        assert_eq!(path.neighbors(1).unwrap(), &[0]);
    }

    #[test]
    fn out_of_range_edge_rejected() {
        assert!(Graph::from_edges(2, [(0, 2)]).is_err());
    }

    fn arb_edges() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
        (2usize..40).prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n), 1..120)))
    }

    proptest! {
        #[test]
        fn invariants_hold((n, edges) in arb_edges()) {
            let (g, _) = Graph::from_edges(n, edges).unwrap();
            prop_assert_eq!(g.degrees().sum::<usize>(), 2 * g.edge_count());
            for v in 0..n {
                let adj = g.adjacent(v);
                prop_assert!(adj.windows(2).all(|w| w[0] < w[1]));
                prop_assert!(!adj.contains(&(v as u32)));
                for &u in adj {
                    prop_assert!(g.adjacent(u as usize).binary_search(&(v as u32)).is_ok());
                }
            }
        }

        #[test]
        fn write_then_load_round_trips((n, edges) in arb_edges()) {
            let mut edges = edges;
            edges.extend((1..n).map(|i| (i - 1, i)));
            let (g, _) = Graph::from_edges(n, edges).unwrap();
            let mut buf = Vec::new();
            write_edge_list(&g, None, &mut buf).unwrap();
            let back = load_edge_list(buf.as_slice(), EdgeListFormat::Whitespace).unwrap();
            prop_assert_eq!(back.graph, g);
            prop_assert_eq!(back.labels, NodeLabelTable::identity(n));
        }
    }
}
