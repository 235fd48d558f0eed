//! Degree and vertex-connectivity computations.
//!
//! Local connectivity is a unit-capacity max-flow on the node-split graph
//! (each node `v` becomes `v_in -> v_out` with capacity one). Global
//! connectivity follows the Esfahanian–Hakimi scheme: fix a minimum-degree
//! node `v`, take the minimum of `κ(v, t)` over non-neighbors `t` and of
//! `κ(x, y)` over non-adjacent pairs of neighbors of `v`.

use std::collections::VecDeque;

use super::Graph;
use crate::error::{Error, Result};

pub fn min_degree(g: &Graph) -> Result<usize> {
    (0..g.node_count())
        .map(|v| g.degree(v))
        .min()
        .ok_or(Error::EmptyGraph)
}

/// Residual network with unit-capacity arcs.
struct FlowNet {
    head: Vec<usize>,
    next: Vec<usize>,
    to: Vec<usize>,
    cap: Vec<u32>,
}

const NIL: usize = usize::MAX;

impl FlowNet {
    fn new(nodes: usize, arcs_hint: usize) -> Self {
        FlowNet {
            head: vec![NIL; nodes],
            next: Vec::with_capacity(arcs_hint * 2),
            to: Vec::with_capacity(arcs_hint * 2),
            cap: Vec::with_capacity(arcs_hint * 2),
        }
    }

    fn arc(&mut self, u: usize, v: usize, c: u32) {
        for (a, b, c) in [(u, v, c), (v, u, 0)] {
            self.to.push(b);
            self.cap.push(c);
            self.next.push(self.head[a]);
            self.head[a] = self.to.len() - 1;
        }
    }

    /// Augments along BFS paths until `limit` units are pushed or no path remains.
    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut flow = 0;
        let mut via = vec![NIL; self.head.len()];
        while flow < limit {
            via.iter_mut().for_each(|x| *x = NIL);
            let mut queue = VecDeque::from([s]);
            let mut found = false;
            'bfs: while let Some(u) = queue.pop_front() {
                let mut e = self.head[u];
                while e != NIL {
                    let v = self.to[e];
                    if self.cap[e] > 0 && v != s && via[v] == NIL {
                        via[v] = e;
                        if v == t {
                            found = true;
                            break 'bfs;
                        }
                        queue.push_back(v);
                    }
                    e = self.next[e];
                }
            }
            if !found {
                break;
            }
            let mut v = t;
            while v != s {
                let e = via[v];
                self.cap[e] -= 1;
                self.cap[e ^ 1] += 1;
                v = self.to[e ^ 1];
            }
            flow += 1;
        }
        flow
    }
}

/// Maximum number of internally node-disjoint `s`–`t` paths, capped at `limit`.
///
/// `s` and `t` must be distinct and non-adjacent.
pub fn local_connectivity(g: &Graph, s: usize, t: usize, limit: usize) -> Result<usize> {
    let n = g.node_count();
    for v in [s, t] {
        if v >= n {
            return Err(Error::NodeOutOfRange { node: v, n });
        }
    }
    if s == t || g.has_edge(s, t) {
        return Err(Error::InvalidParameter(format!(
            "local connectivity needs distinct non-adjacent nodes, got ({s}, {t})"
        )));
    }
    let inn = |v: usize| 2 * v;
    let out = |v: usize| 2 * v + 1;
    let mut net = FlowNet::new(2 * n, n + 2 * g.edge_count());
    for v in 0..n {
        if v != s && v != t {
            net.arc(inn(v), out(v), 1);
        }
    }
    for (u, v) in g.edges() {
        net.arc(out(u), inn(v), 1);
        net.arc(out(v), inn(u), 1);
    }
    Ok(net.max_flow(out(s), inn(t), limit))
}

/// Connectivity of `g`, i.e. the size of a minimum vertex separator, with
/// the convention `κ(K_n) = n - 1`. Disconnected graphs have connectivity 0.
pub fn vertex_connectivity(g: &Graph) -> Result<usize> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::ConnectivityUndefined(n));
    }
    Ok(connectivity_capped(g, usize::MAX))
}

/// `min(κ(g), cap)`, stopping flows as soon as `cap` is certified.
fn connectivity_capped(g: &Graph, cap: usize) -> usize {
    let n = g.node_count();
    if g.is_complete() {
        return (n - 1).min(cap);
    }
    let v = (0..n).min_by_key(|&v| g.degree(v)).expect("n >= 2");
    let mut best = g.degree(v).min(cap);
    for t in 0..n {
        if best == 0 {
            return 0;
        }
        if t != v && !g.has_edge(v, t) {
            best = best.min(local_connectivity(g, v, t, best).expect("valid pair"));
        }
    }
    let nbrs: Vec<usize> = g.neighbors(v).iter().collect();
    for (i, &x) in nbrs.iter().enumerate() {
        for &y in &nbrs[i + 1..] {
            if best == 0 {
                return 0;
            }
            if !g.has_edge(x, y) {
                best = best.min(local_connectivity(g, x, y, best).expect("valid pair"));
            }
        }
    }
    best
}

/// Whether `κ(g) >= k`. Uses traversal for `k <= 2` and capped flows above.
pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    let n = g.node_count();
    if k == 0 {
        return true;
    }
    if n < 2 || min_degree(g).unwrap_or(0) < k {
        return false;
    }
    match k {
        1 => g.is_connected(),
        2 => g.is_connected() && n >= 3 && !has_articulation_point(g),
        _ => connectivity_capped(g, k) >= k,
    }
}

/// Iterative lowlink search for a cut vertex in a connected graph.
fn has_articulation_point(g: &Graph) -> bool {
    let n = g.node_count();
    let adj = g.adjacency_lists();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0;
    let root = 0;
    disc[root] = 0;
    low[root] = 0;
    timer += 1;
    let mut root_children = 0;
    // (node, parent, next neighbor index)
    let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
    while let Some(top) = stack.last_mut() {
        let (v, parent) = (top.0, top.1);
        if top.2 < adj[v].len() {
            let w = adj[v][top.2];
            top.2 += 1;
            if disc[w] == usize::MAX {
                disc[w] = timer;
                low[w] = timer;
                timer += 1;
                if v == root {
                    root_children += 1;
                }
                stack.push((w, v, 0));
            } else if w != parent {
                low[v] = low[v].min(disc[w]);
            }
        } else {
            stack.pop();
            if let Some(&(p, _, _)) = stack.last() {
                low[p] = low[p].min(low[v]);
                if p != root && low[v] >= disc[p] {
                    return true;
                }
            }
        }
    }
    root_children > 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, counterexample, cycle, path, star};

    #[test]
    fn min_degree_examples() {
        assert_eq!(min_degree(&complete(5)).unwrap(), 4);
        assert_eq!(min_degree(&counterexample(8).unwrap()).unwrap(), 4);
        assert_eq!(min_degree(&path(4)).unwrap(), 1);
        assert!(matches!(min_degree(&Graph::empty(0)), Err(Error::EmptyGraph)));
    }

    #[test]
    fn connectivity_examples() {
        assert_eq!(vertex_connectivity(&complete(5)).unwrap(), 4);
        assert_eq!(vertex_connectivity(&path(4)).unwrap(), 1);
        assert_eq!(vertex_connectivity(&counterexample(8).unwrap()).unwrap(), 4);
        assert_eq!(vertex_connectivity(&cycle(7).unwrap()).unwrap(), 2);
        assert_eq!(vertex_connectivity(&star(5)).unwrap(), 1);
        assert_eq!(vertex_connectivity(&Graph::empty(3)).unwrap(), 0);
        assert!(matches!(
            vertex_connectivity(&Graph::empty(1)),
            Err(Error::ConnectivityUndefined(1))
        ));
    }

    #[test]
    fn local_connectivity_rejects_adjacent() {
        assert!(local_connectivity(&path(3), 0, 1, 5).is_err());
        assert_eq!(local_connectivity(&path(3), 0, 2, 5).unwrap(), 1);
        assert_eq!(local_connectivity(&cycle(6).unwrap(), 0, 3, 5).unwrap(), 2);
        assert_eq!(local_connectivity(&cycle(6).unwrap(), 0, 3, 1).unwrap(), 1);
    }

    #[test]
    fn k_connected_fast_paths_agree() {
        let graphs = [
            path(5),
            cycle(5).unwrap(),
            star(4),
            counterexample(6).unwrap(),
            complete(4),
            complete(3).disjoint_union(&complete(3)),
        ];
        for g in &graphs {
            let kappa = vertex_connectivity(g).unwrap();
            for k in 0..6 {
                assert_eq!(is_k_connected(g, k), kappa >= k, "{g:?} k={k}");
            }
        }
    }
}
