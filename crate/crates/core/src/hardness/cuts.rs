use super::formula::{nae_check, Assignment};
use super::gadget::{GadgetGraph, Role, Side};
use crate::error::{Error, Result};
use crate::graph::{Graph, TriPartition};
use crate::nodeset::NodeSet;

/// The relaxed cut encoded by an NAE-satisfying assignment: True side in `A`.
///
/// Variable node `v_i` sits on the side of `x_i`, `v̄_i` opposite. In a clause
/// with literal values `(L1, L2, L3)`: node 1 takes `L1` and nodes 2, 3, 4
/// take `¬L1`; node 9 takes `L3` and nodes 8, 7, 6 take `¬L3`; node 5 takes
/// `L2`. Support nodes follow their block. The same cut is valid for every
/// ρ and every number of copies.
pub fn cut_from_assignment(gg: &GadgetGraph, a: &Assignment) -> Result<TriPartition> {
    if !nae_check(&gg.formula, a)? {
        return Err(Error::NoCutForAssignment);
    }
    let n = gg.node_count();
    let clauses = gg.formula.clauses();
    let mut a_side = NodeSet::new(n);
    for (v, role) in gg.roles.iter().enumerate() {
        let truth = match *role {
            Role::TrueBlock => true,
            Role::FalseBlock => false,
            Role::BlockSupport { side, .. } => side == Side::True,
            Role::Variable { var, positive } => a.values[var - 1] == positive,
            Role::Clause { clause, label } => {
                let lits = clauses[clause - 1].map(|l| l.eval(a));
                match label {
                    1 => lits[0],
                    2..=4 => !lits[0],
                    5 => lits[1],
                    6..=8 => !lits[2],
                    9 => lits[2],
                    _ => unreachable!("clause labels are 1..=9"),
                }
            }
        };
        if truth {
            a_side.insert(v);
        }
    }
    TriPartition::relaxed(a_side)
}

/// Per-node check of the ρ-degree cut condition on a plain graph; `relaxed`
/// additionally requires `X = ∅`.
pub fn verify_degree_cut(g: &Graph, cut: &TriPartition, rho: usize, relaxed: bool) -> Result<bool> {
    if cut.node_count() != g.node_count() {
        return Err(Error::MalformedPartition(format!(
            "partition over {} nodes, graph has {}",
            cut.node_count(),
            g.node_count()
        )));
    }
    if relaxed && !cut.is_relaxed() {
        return Ok(false);
    }
    let side_ok = |s: &NodeSet| s.iter().all(|v| g.outside_degree(v, s) <= rho);
    Ok(side_ok(cut.a()) && side_ok(cut.b()))
}

pub fn verify_cut(gg: &GadgetGraph, cut: &TriPartition, rho: usize, relaxed: bool) -> Result<bool> {
    verify_degree_cut(&gg.graph, cut, rho, relaxed)
}

/// Reads `x_i` off a verified cut: true iff `v_i` lies on the True-block side
/// (copy 0).
pub fn assignment_from_cut(gg: &GadgetGraph, cut: &TriPartition) -> Result<Assignment> {
    if !verify_cut(gg, cut, gg.rho, false)? {
        return Err(Error::DegenerateCut(format!("not a {}-degree cut", gg.rho)));
    }
    let side_of = |v: usize| {
        if cut.a().contains(v) {
            Some(true)
        } else if cut.b().contains(v) {
            Some(false)
        } else {
            None
        }
    };
    let blocks = [gg.block(Side::True), gg.block(Side::False)];
    let [t_side, f_side] = blocks.each_ref().map(|b| {
        let mut sides = b.iter().map(side_of);
        let first = sides.next().flatten();
        if sides.all(|s| s == first) {
            first
        } else {
            None
        }
    });
    let true_in_a = match (t_side, f_side) {
        (Some(t), Some(f)) if t != f => t,
        _ => {
            return Err(Error::DegenerateCut(
                "True and False blocks are not on opposite sides".into(),
            ))
        }
    };
    let values = (1..=gg.formula.num_variables())
        .map(|i| {
            let pos = side_of(gg.variable_node(0, i, true));
            let neg = side_of(gg.variable_node(0, i, false));
            match (pos, neg) {
                (Some(p), Some(q)) if p != q => Ok(p == true_in_a),
                _ => Err(Error::DegenerateCut(format!(
                    "variable nodes of x{i} are not on opposite sides"
                ))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Assignment::new(values))
}
