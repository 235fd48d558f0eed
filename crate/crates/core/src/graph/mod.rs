//! Simple undirected graphs and the exact robustness analytics built on them.
//!
//! A graph is *r-robust* when, for every pair of nonempty disjoint node sets,
//! at least one set contains a node with `r` or more neighbors outside it.
//! Refuting r-robustness amounts to exhibiting an `(r-1)`-degree cut, so the
//! decision routines here are organised around the exact cut search in
//! [`cut`].

pub mod connectivity;
pub mod cut;
pub mod reach;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nodeset::NodeSet;

pub use connectivity::{is_k_connected, local_connectivity, min_degree, vertex_connectivity};
pub use cut::{
    find_degree_cut, find_degree_cut_with, find_relaxed_degree_cut,
    find_relaxed_degree_cut_with, heuristic_cut, CutOptions, TriPartition,
    DEFAULT_SEARCH_LIMIT,
};
pub use reach::{
    check_subsets_reachable, is_r_reachable, is_r_robust, is_r_robust_with, naive_is_r_robust,
    reach_index, robustness, robustness_with, NAIVE_ORACLE_LIMIT,
};

/// Simple undirected graph on nodes `0..n` with bitset adjacency rows.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    rows: Vec<NodeSet>,
    edge_count: usize,
}

impl Graph {
    /// Edgeless graph on `n` nodes.
    pub fn empty(n: usize) -> Self {
        Graph {
            rows: (0..n).map(|_| NodeSet::new(n)).collect(),
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge list, rejecting self-loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.node_count();
        for w in [u, v] {
            if w >= n {
                return Err(Error::NodeOutOfRange { node: w, n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.rows[u].contains(v) {
            return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.rows[u].insert(v);
        self.rows[v].insert(u);
        self.edge_count += 1;
        Ok(())
    }

    /// Adds the edge unless it is already present. Self-loops and
    /// out-of-range endpoints are still rejected.
    pub fn ensure_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u < self.node_count() && v < self.node_count() && self.rows[u].contains(v) {
            return Ok(());
        }
        self.add_edge(u, v)
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.rows.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.node_count() && self.rows[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &NodeSet {
        &self.rows[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.node_count()).map(|v| self.degree(v)).collect()
    }

    /// Edges as `(u, v)` pairs with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.node_count())
            .flat_map(move |u| self.rows[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Neighbor lists, convenient for traversal-heavy code.
    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        self.rows.iter().map(|r| r.iter().collect()).collect()
    }

    pub fn is_complete(&self) -> bool {
        let n = self.node_count();
        self.edge_count == n * n.saturating_sub(1) / 2
    }

    /// Number of neighbors of `v` outside `set`.
    #[inline]
    pub fn outside_degree(&self, v: usize, set: &NodeSet) -> usize {
        self.rows[v].difference_len(set)
    }

    pub fn node_set(&self, nodes: impl IntoIterator<Item = usize>) -> Result<NodeSet> {
        NodeSet::from_nodes(self.node_count(), nodes)
    }

    pub(crate) fn check_set(&self, s: &NodeSet) -> Result<()> {
        if s.universe() != self.node_count() {
            return Err(Error::UniverseMismatch {
                expected: self.node_count(),
                found: s.universe(),
            });
        }
        Ok(())
    }

    pub fn is_connected(&self) -> bool {
        let n = self.node_count();
        if n <= 1 {
            return true;
        }
        self.component_of(0).len() == n
    }

    /// Nodes reachable from `start`.
    pub fn component_of(&self, start: usize) -> NodeSet {
        let mut seen = NodeSet::new(self.node_count());
        let mut stack = vec![start];
        seen.insert(start);
        while let Some(v) = stack.pop() {
            for w in self.rows[v].iter() {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Copy of this graph with a new node `n` attached to `neighbors`.
    pub fn with_added_node(&self, neighbors: &NodeSet) -> Result<Graph> {
        self.check_set(neighbors)?;
        if neighbors.is_empty() {
            return Err(Error::EmptySet);
        }
        let n = self.node_count();
        let mut g = Graph::empty(n + 1);
        for (u, v) in self.edges() {
            g.add_edge(u, v)?;
        }
        for v in neighbors.iter() {
            g.add_edge(n, v)?;
        }
        Ok(g)
    }

    /// Disjoint union; nodes of `other` are shifted by `self.node_count()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.node_count();
        let mut g = Graph::empty(off + other.node_count());
        for (u, v) in self.edges().chain(other.edges().map(|(u, v)| (u + off, v + off))) {
            g.add_edge(u, v).expect("edges of simple graphs stay simple");
        }
        g
    }

    /// Subgraph induced by `nodes`, relabelled to `0..nodes.len()` in iteration order.
    pub fn induced(&self, nodes: &[usize]) -> Result<Graph> {
        let mut index = vec![usize::MAX; self.node_count()];
        for (i, &v) in nodes.iter().enumerate() {
            if v >= self.node_count() {
                return Err(Error::NodeOutOfRange { node: v, n: self.node_count() });
            }
            index[v] = i;
        }
        let mut g = Graph::empty(nodes.len());
        for (i, &v) in nodes.iter().enumerate() {
            for w in self.rows[v].iter() {
                let j = index[w];
                if j != usize::MAX && i < j {
                    g.add_edge(i, j)?;
                }
            }
        }
        Ok(g)
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.node_count())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Structured-object form `{"n": .., "edges": [[u, v], ..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&Graph> for GraphRecord {
    fn from(g: &Graph) -> Self {
        GraphRecord {
            n: g.node_count(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<GraphRecord> for Graph {
    type Error = Error;

    fn try_from(rec: GraphRecord) -> Result<Graph> {
        Graph::from_edges(rec.n, rec.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphRecord::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Graph::try_from(GraphRecord::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v).expect("fresh pair");
        }
    }
    g
}

/// Cycle `0-1-..-(n-1)-0`; requires `n >= 3`.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("cycle needs n >= 3, got {n}")));
    }
    let mut g = path(n);
    g.add_edge(n - 1, 0)?;
    Ok(g)
}

pub fn path(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for v in 1..n {
        g.add_edge(v - 1, v).expect("fresh pair");
    }
    g
}

/// Two cliques on `n/2` nodes joined by the perfect matching `i <-> i + n/2`.
///
/// Minimum degree and connectivity are both `n/2`, yet the graph is only
/// 1-robust: each clique is a set whose members see a single outside node.
pub fn counterexample(n: usize) -> Result<Graph> {
    if n % 2 != 0 || n < 4 {
        return Err(Error::InvalidParameter(format!(
            "counterexample needs even n >= 4, got {n}"
        )));
    }
    let h = n / 2;
    let mut g = Graph::empty(n);
    for side in [0, h] {
        for u in 0..h {
            for v in u + 1..h {
                g.add_edge(side + u, side + v)?;
            }
        }
    }
    for i in 0..h {
        g.add_edge(i, i + h)?;
    }
    Ok(g)
}

/// Star with center 0 and `n - 1` leaves.
pub fn star(n: usize) -> Graph {
    let mut g = Graph::empty(n);
    for v in 1..n {
        g.add_edge(0, v).expect("fresh pair");
    }
    g
}
