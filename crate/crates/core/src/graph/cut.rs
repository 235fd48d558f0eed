//! Exact search for ρ-degree cuts.
//!
//! A ρ-degree cut is a pair of nonempty disjoint sets `A`, `B` such that every
//! node of `A` has at most ρ neighbors outside `A` and every node of `B` has at
//! most ρ neighbors outside `B`; the remaining nodes form `X`. A *relaxed* cut
//! additionally has `X = ∅`. A graph is r-robust exactly when it has no
//! `(r-1)`-degree cut.
//!
//! The search labels nodes with `A`, `B` or `X` depth first. Besides the
//! direct degree budget, two propagation rules keep the tree small:
//!
//! * a labelled node whose budget is exhausted drags all free neighbors onto
//!   its own side, and a free common neighbor of `a ∈ A` and `b ∈ B` spends
//!   budget of at least one of them;
//! * the final `B` can never meet the threshold-(ρ+1) contagion closure of
//!   `A ∪ X` (every node of `B` has at most ρ neighbors in `A ∪ X`), and
//!   symmetrically for `A`.
//!
//! The `A`/`B` symmetry is broken by never branching into `B` while both
//! sides are empty.
//! Both rules are symmetric in `A` and `B`, so the dynamic branching order
//! does not interfere with the symmetry break.

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};
use crate::nodeset::NodeSet;

/// Node count above which the exponential search refuses to run.
pub const DEFAULT_SEARCH_LIMIT: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CutOptions {
    /// Graphs with more nodes than this are rejected with
    /// [`Error::SearchLimitExceeded`] before branching starts.
    pub max_nodes: usize,
    /// Answer polynomial special cases (ρ = 0, low-degree nodes) without
    /// branching.
    pub shortcuts: bool,
}

impl Default for CutOptions {
    fn default() -> Self {
        CutOptions {
            max_nodes: DEFAULT_SEARCH_LIMIT,
            shortcuts: true,
        }
    }
}

impl CutOptions {
    pub fn with_limit(max_nodes: usize) -> Self {
        CutOptions {
            max_nodes,
            ..Default::default()
        }
    }
}

/// Disjoint sets `(A, B, X)` covering every node, with `A` and `B` nonempty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TriPartitionRepr", into = "TriPartitionRepr")]
pub struct TriPartition {
    a: NodeSet,
    b: NodeSet,
    x: NodeSet,
}

#[derive(Serialize, Deserialize)]
struct TriPartitionRepr {
    n: usize,
    a: Vec<usize>,
    b: Vec<usize>,
    x: Vec<usize>,
}

impl TryFrom<TriPartitionRepr> for TriPartition {
    type Error = Error;

    fn try_from(r: TriPartitionRepr) -> Result<Self> {
        TriPartition::new(
            NodeSet::from_nodes(r.n, r.a)?,
            NodeSet::from_nodes(r.n, r.b)?,
            NodeSet::from_nodes(r.n, r.x)?,
        )
    }
}

impl From<TriPartition> for TriPartitionRepr {
    fn from(t: TriPartition) -> Self {
        TriPartitionRepr {
            n: t.node_count(),
            a: t.a.iter().collect(),
            b: t.b.iter().collect(),
            x: t.x.iter().collect(),
        }
    }
}

impl TriPartition {
    pub fn new(a: NodeSet, b: NodeSet, x: NodeSet) -> Result<Self> {
        let n = a.universe();
        if b.universe() != n || x.universe() != n {
            return Err(Error::MalformedPartition("sets over different universes".into()));
        }
        if a.is_empty() || b.is_empty() {
            return Err(Error::MalformedPartition("A and B must be nonempty".into()));
        }
        if !a.is_disjoint(&b) || !a.is_disjoint(&x) || !b.is_disjoint(&x) {
            return Err(Error::MalformedPartition("sets overlap".into()));
        }
        if a.len() + b.len() + x.len() != n {
            return Err(Error::MalformedPartition("sets do not cover every node".into()));
        }
        Ok(TriPartition { a, b, x })
    }

    /// Bipartition `(A, V ∖ A)`.
    pub fn relaxed(a: NodeSet) -> Result<Self> {
        let b = a.complement();
        let x = NodeSet::new(a.universe());
        TriPartition::new(a, b, x)
    }

    pub fn a(&self) -> &NodeSet {
        &self.a
    }

    pub fn b(&self) -> &NodeSet {
        &self.b
    }

    pub fn x(&self) -> &NodeSet {
        &self.x
    }

    pub fn node_count(&self) -> usize {
        self.a.universe()
    }

    pub fn is_relaxed(&self) -> bool {
        self.x.is_empty()
    }

    pub fn swapped(&self) -> TriPartition {
        TriPartition {
            a: self.b.clone(),
            b: self.a.clone(),
            x: self.x.clone(),
        }
    }

    /// Smallest ρ for which this partition is a ρ-degree cut of `g`.
    pub fn max_outside_degree(&self, g: &Graph) -> usize {
        let side = |s: &NodeSet| s.iter().map(|v| g.outside_degree(v, s)).max().unwrap_or(0);
        side(&self.a).max(side(&self.b))
    }

    /// Independent per-node count check of the ρ-degree cut condition.
    pub fn is_degree_cut(&self, g: &Graph, rho: usize) -> bool {
        self.node_count() == g.node_count() && self.max_outside_degree(g) <= rho
    }
}

/// Exact ρ-degree cut search with the default node limit.
pub fn find_degree_cut(g: &Graph, rho: usize) -> Result<Option<TriPartition>> {
    find_degree_cut_with(g, rho, &CutOptions::default())
}

pub fn find_degree_cut_with(
    g: &Graph,
    rho: usize,
    opts: &CutOptions,
) -> Result<Option<TriPartition>> {
    search_cut(g, rho, false, opts)
}

/// Exact relaxed-ρ-degree cut search (`X = ∅`); ρ = 1 is the matching-cut problem.
pub fn find_relaxed_degree_cut(g: &Graph, rho: usize) -> Result<Option<TriPartition>> {
    find_relaxed_degree_cut_with(g, rho, &CutOptions::default())
}

pub fn find_relaxed_degree_cut_with(
    g: &Graph,
    rho: usize,
    opts: &CutOptions,
) -> Result<Option<TriPartition>> {
    search_cut(g, rho, true, opts)
}

fn search_cut(
    g: &Graph,
    rho: usize,
    relaxed: bool,
    opts: &CutOptions,
) -> Result<Option<TriPartition>> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::RobustnessUndefined(n));
    }
    if opts.shortcuts {
        if let Some(cut) = shortcut(g, rho)? {
            return Ok(cut);
        }
    }
    if n > opts.max_nodes {
        return Err(Error::SearchLimitExceeded {
            n,
            limit: opts.max_nodes,
        });
    }
    let mut search = Search::new(g, rho, relaxed);
    if search.run() {
        let cut = search.into_partition()?;
        debug_assert!(cut.is_degree_cut(g, rho));
        Ok(Some(cut))
    } else {
        Ok(None)
    }
}

/// Polynomial answers: a 0-degree cut exists iff the graph is disconnected,
/// and a node of degree at most ρ ≥ 1 yields `({v}, V ∖ {v})`.
/// Returns `Some(answer)` when decided.
fn shortcut(g: &Graph, rho: usize) -> Result<Option<Option<TriPartition>>> {
    if rho == 0 {
        let comp = g.component_of(0);
        if comp.len() == g.node_count() {
            return Ok(Some(None));
        }
        return Ok(Some(Some(TriPartition::relaxed(comp)?)));
    }
    let v = (0..g.node_count()).min_by_key(|&v| g.degree(v)).expect("n >= 2");
    if g.degree(v) <= rho {
        let a = NodeSet::from_nodes(g.node_count(), [v])?;
        return Ok(Some(Some(TriPartition::relaxed(a)?)));
    }
    Ok(None)
}

/// Cheap upper bound on the smallest ρ admitting a cut, with its witness.
///
/// Tries every singleton and every closed neighborhood against the rest of
/// the graph, plus the component split when disconnected. Carries no
/// approximation guarantee; none better than a factor of 2 is possible in
/// polynomial time unless P = NP.
pub fn heuristic_cut(g: &Graph) -> Result<(usize, TriPartition)> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::RobustnessUndefined(n));
    }
    let mut candidates = Vec::new();
    let comp = g.component_of(0);
    if comp.len() < n {
        candidates.push(comp);
    }
    for v in 0..n {
        candidates.push(NodeSet::from_nodes(n, [v])?);
        let mut closed = g.neighbors(v).clone();
        closed.insert(v);
        if closed.len() < n {
            candidates.push(closed);
        }
    }
    candidates
        .into_iter()
        .map(|a| {
            let cut = TriPartition::relaxed(a)?;
            Ok((cut.max_outside_degree(g), cut))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .min_by_key(|(rho, _)| *rho)
        .ok_or(Error::EmptyGraph)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Label {
    Free,
    A,
    B,
    X,
}

const CAN_A: u8 = 1;
const CAN_B: u8 = 2;
const CAN_X: u8 = 4;

struct Search<'g> {
    g: &'g Graph,
    adj: Vec<Vec<usize>>,
    rho: usize,
    relaxed: bool,
    label: Vec<Label>,
    a: NodeSet,
    b: NodeSet,
    x: NodeSet,
    rank: Vec<usize>,
    domain: Vec<u8>,
    trail: Vec<usize>,
    // closure scratch
    hits: Vec<usize>,
    queue: Vec<usize>,
}

impl<'g> Search<'g> {
    fn new(g: &'g Graph, rho: usize, relaxed: bool) -> Self {
        let n = g.node_count();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        let mut rank = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            rank[v] = i;
        }
        Search {
            g,
            adj: g.adjacency_lists(),
            rho,
            relaxed,
            label: vec![Label::Free; n],
            a: NodeSet::new(n),
            b: NodeSet::new(n),
            x: NodeSet::new(n),
            rank,
            domain: vec![0; n],
            trail: Vec::with_capacity(n),
            hits: vec![0; n],
            queue: Vec::with_capacity(n),
        }
    }

    fn run(&mut self) -> bool {
        self.descend()
    }

    fn into_partition(self) -> Result<TriPartition> {
        TriPartition::new(self.a, self.b, self.x)
    }

    fn assign(&mut self, v: usize, l: Label) {
        debug_assert_eq!(self.label[v], Label::Free);
        self.label[v] = l;
        match l {
            Label::A => self.a.insert(v),
            Label::B => self.b.insert(v),
            Label::X => self.x.insert(v),
            Label::Free => unreachable!(),
        };
        self.trail.push(v);
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().expect("trail above mark");
            match self.label[v] {
                Label::A => self.a.remove(v),
                Label::B => self.b.remove(v),
                Label::X => self.x.remove(v),
                Label::Free => unreachable!(),
            };
            self.label[v] = Label::Free;
        }
    }

    fn descend(&mut self) -> bool {
        let mark = self.trail.len();
        if !self.propagate() {
            self.undo_to(mark);
            return false;
        }
        let Some(v) = self.choose() else {
            if !self.a.is_empty() && !self.b.is_empty() {
                return true;
            }
            self.undo_to(mark);
            return false;
        };
        let mut dom = self.domain[v];
        if self.a.is_empty() && self.b.is_empty() {
            // both sides empty: labels are interchangeable, so try only A
            dom &= !CAN_B;
        }
        for (bit, l) in [(CAN_A, Label::A), (CAN_B, Label::B), (CAN_X, Label::X)] {
            if dom & bit != 0 {
                let inner = self.trail.len();
                self.assign(v, l);
                if self.descend() {
                    return true;
                }
                self.undo_to(inner);
            }
        }
        self.undo_to(mark);
        false
    }

    /// Most constrained free node: smallest domain, then most labelled
    /// `A`/`B` neighbors, then static degree order.
    fn choose(&self) -> Option<usize> {
        let ab = self.a.union(&self.b);
        (0..self.g.node_count())
            .filter(|&v| self.label[v] == Label::Free)
            .min_by_key(|&v| {
                (
                    self.domain[v].count_ones(),
                    std::cmp::Reverse(self.g.neighbors(v).intersection_len(&ab)),
                    self.rank[v],
                )
            })
    }

    /// Threshold-(ρ+1) contagion closure of `seed`.
    fn closure(&mut self, seed: &NodeSet) -> NodeSet {
        let threshold = self.rho + 1;
        let mut closed = seed.clone();
        self.hits.iter_mut().for_each(|h| *h = 0);
        self.queue.clear();
        self.queue.extend(seed.iter());
        let mut head = 0;
        while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            for &w in &self.adj[v] {
                if closed.contains(w) {
                    continue;
                }
                self.hits[w] += 1;
                if self.hits[w] >= threshold {
                    closed.insert(w);
                    self.queue.push(w);
                }
            }
        }
        closed
    }

    /// Runs the propagation rules to a fixpoint. Returns false on conflict.
    fn propagate(&mut self) -> bool {
        let n = self.g.node_count();
        loop {
            let ax = self.a.union(&self.x);
            let bx = self.b.union(&self.x);
            let cl_ax = self.closure(&ax);
            let cl_bx = self.closure(&bx);
            if !self.a.is_disjoint(&cl_bx) || !self.b.is_disjoint(&cl_ax) {
                return false;
            }

            // slack = budget left once certain outside neighbors are counted
            let mut force_a = NodeSet::new(n);
            let mut force_b = NodeSet::new(n);
            let mut slack_a = Vec::with_capacity(self.a.len());
            let mut slack_b = Vec::with_capacity(self.b.len());
            for v in self.a.iter() {
                let slack = self.rho - self.g.neighbors(v).intersection_len(&cl_bx);
                if slack == 0 {
                    force_a.union_with(&self.g.neighbors(v).difference(&cl_bx));
                }
                slack_a.push((v, slack));
            }
            for v in self.b.iter() {
                let slack = self.rho - self.g.neighbors(v).intersection_len(&cl_ax);
                if slack == 0 {
                    force_b.union_with(&self.g.neighbors(v).difference(&cl_ax));
                }
                slack_b.push((v, slack));
            }
            // a free common neighbor of v in A and u in B costs one of them
            if !slack_a.is_empty() && !slack_b.is_empty() {
                let mut open = self.a.union(&self.b);
                open.union_with(&cl_ax);
                open.union_with(&cl_bx);
                let open = open.complement();
                for &(v, sv) in &slack_a {
                    let nv = self.g.neighbors(v).intersection(&open);
                    for &(u, su) in &slack_b {
                        if nv.intersection_len(self.g.neighbors(u)) > sv + su {
                            return false;
                        }
                    }
                }
            }

            let (mut room_a, mut room_b) = (!self.a.is_empty(), !self.b.is_empty());
            let mut forced = Vec::new();
            for v in 0..n {
                if self.label[v] != Label::Free {
                    continue;
                }
                let fa = force_a.contains(v);
                let fb = force_b.contains(v);
                let mut dom = 0;
                if !fb && !cl_bx.contains(v) {
                    dom |= CAN_A;
                }
                if !fa && !cl_ax.contains(v) {
                    dom |= CAN_B;
                }
                if !self.relaxed && !fa && !fb {
                    dom |= CAN_X;
                }
                room_a |= dom & CAN_A != 0;
                room_b |= dom & CAN_B != 0;
                match dom.count_ones() {
                    0 => return false,
                    1 => forced.push((v, dom)),
                    _ => {}
                }
                self.domain[v] = dom;
            }
            if !room_a || !room_b {
                return false;
            }
            if forced.is_empty() {
                return true;
            }
            for (v, dom) in forced {
                let l = match dom {
                    CAN_A => Label::A,
                    CAN_B => Label::B,
                    _ => Label::X,
                };
                self.assign(v, l);
            }
        }
    }
}
