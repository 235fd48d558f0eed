//! Reduction graphs built from an NAE3SAT formula.
//!
//! `G(φ)` has two block cliques of `4m + t` nodes (True and False). Variable
//! `x_i` contributes nodes `v_i`, `v̄_i`, both adjacent to a dedicated block
//! node `T_i` and `F_i`. Clause `j` contributes nodes labelled 1..9 with
//! internal edges [`CLAUSE_EDGES`]; nodes 1 and 2 share a dedicated pair of
//! block nodes, as do nodes 8 and 9, while nodes 3 and 7 each have their own
//! pair. Literal nodes 1, 5 and 9 are joined to the variable node of the
//! clause's first, second and third literal.
//!
//! `G_ρ(φ)` adds `ρ - 1` support nodes in the opposite block for every block
//! node and `ρ - 1` support nodes in each block for every gadget node.
//! `H(φ)` and `H_ρ(φ)` take `2ρ + 1` copies and merge all True-block nodes
//! into one clique, likewise the False-block nodes.

use serde::{Deserialize, Serialize};

use super::formula::CnfFormula;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::nodeset::NodeSet;

/// Edges among the nine clause nodes, by label.
pub const CLAUSE_EDGES: [(usize, usize); 8] =
    [(2, 3), (2, 4), (3, 4), (4, 5), (5, 6), (6, 7), (6, 8), (7, 8)];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    True,
    False,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::True => Side::False,
            Side::False => Side::True,
        }
    }

    fn index(self) -> usize {
        match self {
            Side::True => 0,
            Side::False => 1,
        }
    }
}

/// Role of a gadget-graph node. Indices of variables and clauses are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum Role {
    TrueBlock,
    FalseBlock,
    Variable { var: usize, positive: bool },
    Clause { clause: usize, label: usize },
    /// Support node inside block `side`, attached to node `owner`.
    BlockSupport { side: Side, owner: usize },
}

impl Role {
    pub fn block(&self) -> Option<Side> {
        match *self {
            Role::TrueBlock => Some(Side::True),
            Role::FalseBlock => Some(Side::False),
            Role::BlockSupport { side, .. } => Some(side),
            _ => None,
        }
    }

    /// `(role, param1, param2)` columns of the roles file.
    pub fn columns(&self) -> (&'static str, String, String) {
        match *self {
            Role::TrueBlock => ("true_block", String::new(), String::new()),
            Role::FalseBlock => ("false_block", String::new(), String::new()),
            Role::Variable { var, positive } => {
                ("variable_node", var.to_string(), if positive { "pos" } else { "neg" }.into())
            }
            Role::Clause { clause, label } => ("clause_node", clause.to_string(), label.to_string()),
            Role::BlockSupport { side, owner } => (
                "block_support",
                owner.to_string(),
                match side {
                    Side::True => "true",
                    Side::False => "false",
                }
                .into(),
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GadgetKind {
    G,
    H,
    GRho,
    HRho,
}

/// A reduction graph with per-node roles and the inputs that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetGraph {
    pub graph: Graph,
    pub roles: Vec<Role>,
    /// Copy index of each node (always 0 for `G` and `G_ρ`).
    pub copy: Vec<usize>,
    pub formula: CnfFormula,
    pub rho: usize,
    pub kind: GadgetKind,
    copies: Vec<CopyIndex>,
}

/// Node lookup tables for one copy of `G_ρ(φ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct CopyIndex {
    /// `[v_i, v̄_i]` per variable.
    variables: Vec<[usize; 2]>,
    /// Nodes labelled 1..9 (stored at 0..8) per clause.
    clauses: Vec<[usize; 9]>,
}

impl GadgetGraph {
    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn copy_count(&self) -> usize {
        self.copies.len()
    }

    /// Node `v_i` (`positive`) or `v̄_i` of the given copy; `var` is 1-based.
    pub fn variable_node(&self, copy: usize, var: usize, positive: bool) -> usize {
        self.copies[copy].variables[var - 1][usize::from(!positive)]
    }

    /// Clause node with label `1..=9` of clause `clause` (1-based).
    pub fn clause_node(&self, copy: usize, clause: usize, label: usize) -> usize {
        self.copies[copy].clauses[clause - 1][label - 1]
    }

    /// All nodes of the block clique on `side`, support nodes included.
    pub fn block(&self, side: Side) -> NodeSet {
        let n = self.node_count();
        NodeSet::from_nodes(n, (0..n).filter(|&v| self.roles[v].block() == Some(side)))
            .expect("nodes in range")
    }

    /// Edges between literal nodes (labels 1, 5, 9) and variable nodes.
    pub fn intermediate_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for c in 0..self.copy_count() {
            for (j, clause) in self.formula.clauses().iter().enumerate() {
                for (lit, label) in clause.iter().zip([1, 5, 9]) {
                    out.push((
                        self.clause_node(c, j + 1, label),
                        self.variable_node(c, lit.var, lit.positive),
                    ));
                }
            }
        }
        out
    }
}

struct Builder {
    roles: Vec<Role>,
    copy: Vec<usize>,
    edges: Vec<(usize, usize)>,
    blocks: [Vec<usize>; 2],
}

impl Builder {
    fn new() -> Self {
        Builder {
            roles: Vec::new(),
            copy: Vec::new(),
            edges: Vec::new(),
            blocks: [Vec::new(), Vec::new()],
        }
    }

    fn node(&mut self, role: Role, copy: usize) -> usize {
        self.roles.push(role);
        self.copy.push(copy);
        if let Some(side) = role.block() {
            self.blocks[side.index()].push(self.roles.len() - 1);
        }
        self.roles.len() - 1
    }

    fn block_node(&mut self, side: Side, copy: usize) -> usize {
        let role = match side {
            Side::True => Role::TrueBlock,
            Side::False => Role::FalseBlock,
        };
        self.node(role, copy)
    }

    fn edge(&mut self, u: usize, v: usize) {
        self.edges.push((u.min(v), u.max(v)));
    }

    /// One copy of `G_ρ(φ)`; block cliques are added by `finish`.
    fn copy(&mut self, phi: &CnfFormula, rho: usize, c: usize) -> CopyIndex {
        let t = phi.num_variables();
        let m = phi.num_clauses();
        let dedicated = |b: &mut Builder, count: usize| -> Vec<[usize; 2]> {
            let trues: Vec<usize> = (0..count).map(|_| b.block_node(Side::True, c)).collect();
            let falses: Vec<usize> = (0..count).map(|_| b.block_node(Side::False, c)).collect();
            trues.into_iter().zip(falses).map(|(x, y)| [x, y]).collect()
        };
        let var_block = dedicated(self, t);
        // per clause: pairs for {1,2}, {3}, {7}, {8,9}
        let clause_block: Vec<Vec<[usize; 2]>> = (0..m).map(|_| dedicated(self, 4)).collect();
        let base_block_nodes: Vec<usize> = var_block
            .iter()
            .chain(clause_block.iter().flatten())
            .flat_map(|p| p.iter().copied())
            .collect();

        let mut gadget_nodes = Vec::new();
        let variables: Vec<[usize; 2]> = (1..=t)
            .map(|var| {
                let pos = self.node(Role::Variable { var, positive: true }, c);
                let neg = self.node(Role::Variable { var, positive: false }, c);
                gadget_nodes.extend([pos, neg]);
                [pos, neg]
            })
            .collect();
        for (i, &[pos, neg]) in variables.iter().enumerate() {
            for b in var_block[i] {
                self.edge(pos, b);
                self.edge(neg, b);
            }
        }

        let mut clauses = Vec::with_capacity(m);
        for (j, lits) in phi.clauses().iter().enumerate() {
            let nodes: [usize; 9] = std::array::from_fn(|k| {
                self.node(
                    Role::Clause {
                        clause: j + 1,
                        label: k + 1,
                    },
                    c,
                )
            });
            gadget_nodes.extend(nodes);
            let at = |label: usize| nodes[label - 1];
            for (x, y) in CLAUSE_EDGES {
                self.edge(at(x), at(y));
            }
            let [b12, b3, b7, b89] = [0, 1, 2, 3].map(|k| clause_block[j][k]);
            for (labels, pair) in [(&[1, 2][..], b12), (&[3][..], b3), (&[7][..], b7), (&[8, 9][..], b89)] {
                for &l in labels {
                    for b in pair {
                        self.edge(at(l), b);
                    }
                }
            }
            for (lit, label) in lits.iter().zip([1, 5, 9]) {
                let var_node = variables[lit.var - 1][usize::from(!lit.positive)];
                self.edge(at(label), var_node);
            }
            clauses.push(nodes);
        }

        for _ in 1..rho {
            for &v in &base_block_nodes {
                let side = self.roles[v].block().expect("block node").opposite();
                let s = self.node(Role::BlockSupport { side, owner: v }, c);
                self.edge(s, v);
            }
            for &u in &gadget_nodes {
                for side in [Side::True, Side::False] {
                    let s = self.node(Role::BlockSupport { side, owner: u }, c);
                    self.edge(s, u);
                }
            }
        }
        CopyIndex { variables, clauses }
    }

    fn finish(mut self, phi: &CnfFormula, rho: usize, kind: GadgetKind, copies: Vec<CopyIndex>) -> GadgetGraph {
        for side in 0..2 {
            let block = std::mem::take(&mut self.blocks[side]);
            for (i, &u) in block.iter().enumerate() {
                for &v in &block[i + 1..] {
                    self.edge(u, v);
                }
            }
        }
        self.edges.sort_unstable();
        self.edges.dedup();
        let graph = Graph::from_edges(self.roles.len(), self.edges).expect("construction is simple");
        GadgetGraph {
            graph,
            roles: self.roles,
            copy: self.copy,
            formula: phi.clone(),
            rho,
            kind,
            copies,
        }
    }
}

fn build(phi: &CnfFormula, rho: usize, copies: usize, kind: GadgetKind) -> Result<GadgetGraph> {
    if rho == 0 {
        return Err(Error::InvalidParameter("rho must be at least 1".into()));
    }
    let mut b = Builder::new();
    let index = (0..copies).map(|c| b.copy(phi, rho, c)).collect();
    Ok(b.finish(phi, rho, kind, index))
}

pub fn build_g_phi(phi: &CnfFormula) -> GadgetGraph {
    build(phi, 1, 1, GadgetKind::G).expect("rho = 1 is valid")
}

/// Three copies of `G(φ)` with merged block cliques.
pub fn build_h_phi(phi: &CnfFormula) -> GadgetGraph {
    build(phi, 1, 3, GadgetKind::H).expect("rho = 1 is valid")
}

pub fn build_g_rho_phi(phi: &CnfFormula, rho: usize) -> Result<GadgetGraph> {
    build(phi, rho, 1, if rho == 1 { GadgetKind::G } else { GadgetKind::GRho })
}

/// `2ρ + 1` copies of `G_ρ(φ)` with merged block cliques.
pub fn build_h_rho_phi(phi: &CnfFormula, rho: usize) -> Result<GadgetGraph> {
    build(phi, rho, 2 * rho + 1, if rho == 1 { GadgetKind::H } else { GadgetKind::HRho })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi() -> CnfFormula {
        CnfFormula::from_signed(3, &[[1, 2, 3]]).unwrap()
    }

    #[test]
    fn g_phi_counts() {
        let gg = build_g_phi(&phi());
        assert_eq!(gg.node_count(), 29);
        assert_eq!(gg.block(Side::True).len(), 7);
        assert_eq!(gg.block(Side::False).len(), 7);
        let v1 = gg.variable_node(0, 1, true);
        let nv1 = gg.variable_node(0, 1, false);
        assert!(!gg.graph.has_edge(v1, nv1));
        assert_eq!(gg.graph.degree(gg.clause_node(0, 1, 5)), 3);
        assert_eq!(gg.graph.degree(gg.clause_node(0, 1, 2)), 4);
        assert_eq!(gg.intermediate_edges().len(), 3);
    }

    #[test]
    fn blocks_are_cliques() {
        for gg in [
            build_g_phi(&phi()),
            build_h_phi(&phi()),
            build_g_rho_phi(&phi(), 3).unwrap(),
            build_h_rho_phi(&phi(), 2).unwrap(),
        ] {
            for side in [Side::True, Side::False] {
                let b: Vec<usize> = gg.block(side).iter().collect();
                for (i, &u) in b.iter().enumerate() {
                    assert!(b[i + 1..].iter().all(|&v| gg.graph.has_edge(u, v)));
                }
            }
        }
    }

    #[test]
    fn rho_counts() {
        assert_eq!(build_g_rho_phi(&phi(), 1).unwrap(), build_g_phi(&phi()));
        let g2 = build_g_rho_phi(&phi(), 2).unwrap();
        assert_eq!(g2.node_count(), 73);
        assert_eq!(g2.block(Side::True).len(), 7 * 2 + 15);
        assert_eq!(build_h_rho_phi(&phi(), 2).unwrap().node_count(), 365);
        assert_eq!(build_h_rho_phi(&phi(), 1).unwrap(), build_h_phi(&phi()));
        assert_eq!(build_h_phi(&phi()).node_count(), 87);
        assert_eq!(build_h_phi(&phi()).block(Side::True).len(), 21);
        assert!(build_g_rho_phi(&phi(), 0).is_err());
    }
}
