use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{check_subsets_reachable, Graph};
use crate::nodeset::NodeSet;

/// Largest graph for which every size-m seed set is simulated.
pub const SIMULATE_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CascadeState {
    pub infected: NodeSet,
    pub threshold: usize,
    pub round: usize,
}

impl CascadeState {
    pub fn new(infected: NodeSet, threshold: usize) -> Self {
        CascadeState {
            infected,
            threshold,
            round: 0,
        }
    }
}

/// Infects, simultaneously, every node with at least `threshold` infected neighbors.
pub fn cascade_step(g: &Graph, state: &CascadeState) -> CascadeState {
    let mut infected = state.infected.clone();
    for v in 0..g.node_count() {
        if !state.infected.contains(v)
            && g.neighbors(v).intersection_len(&state.infected) >= state.threshold
        {
            infected.insert(v);
        }
    }
    CascadeState {
        infected,
        threshold: state.threshold,
        round: state.round + 1,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CascadeOutcome {
    pub infected: NodeSet,
    /// Steps that infected at least one node.
    pub rounds: usize,
    /// `(round, infected_count, newly_infected)`; row 0 is the seed set.
    pub history: Vec<(usize, usize, usize)>,
}

impl CascadeOutcome {
    pub fn is_complete(&self) -> bool {
        self.infected.len() == self.infected.universe()
    }
}

/// Runs threshold-`r` contagion from `initial` to its fixpoint (at most n steps).
pub fn run_cascade(g: &Graph, initial: &NodeSet, r: usize) -> Result<CascadeOutcome> {
    g.check_set(initial)?;
    if initial.is_empty() {
        return Err(Error::EmptySet);
    }
    if r == 0 {
        return Err(Error::InvalidParameter("threshold must be at least 1".into()));
    }
    let mut state = CascadeState::new(initial.clone(), r);
    let mut history = vec![(0, initial.len(), initial.len())];
    loop {
        let next = cascade_step(g, &state);
        let newly = next.infected.len() - state.infected.len();
        if newly == 0 {
            break;
        }
        history.push((next.round, next.infected.len(), newly));
        state = next;
    }
    Ok(CascadeOutcome {
        infected: state.infected,
        rounds: state.round,
        history,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContagionMethod {
    /// Every node set of size at most `n - m` is r-reachable.
    Exact,
    /// Cascade from every size-m seed set; limited to small graphs.
    Simulate,
}

/// Whether threshold-`r` contagion from any `m` initially infected nodes infects everyone.
pub fn contagion_from_any_m(g: &Graph, m: usize, r: usize, method: ContagionMethod) -> Result<bool> {
    let n = g.node_count();
    if r == 0 {
        return Err(Error::InvalidParameter("threshold must be at least 1".into()));
    }
    if m < r {
        return Err(Error::ThresholdAboveSeed { m, r });
    }
    if m >= n {
        return Err(Error::InvalidParameter(format!(
            "m must be smaller than n = {n}, got {m}"
        )));
    }
    match method {
        ContagionMethod::Exact => check_subsets_reachable(g, r, n - m),
        ContagionMethod::Simulate => {
            if n > SIMULATE_LIMIT {
                return Err(Error::OracleSizeExceeded {
                    n,
                    limit: SIMULATE_LIMIT,
                });
            }
            let top = 1u64 << n;
            let mut s: u64 = (1u64 << m) - 1;
            while s < top {
                let seed = NodeSet::from_mask(n, s);
                if !run_cascade(g, &seed, r)?.is_complete() {
                    return Ok(false);
                }
                let c = s & s.wrapping_neg();
                let t = s + c;
                s = (((t ^ s) >> 2) / c) | t;
            }
            Ok(true)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, counterexample, cycle, path};

    fn set(n: usize, v: &[usize]) -> NodeSet {
        NodeSet::from_nodes(n, v.iter().copied()).unwrap()
    }

    #[test]
    fn step_examples() {
        let c8 = counterexample(8).unwrap();
        let s = CascadeState::new(set(8, &[0, 1, 2, 3]), 2);
        assert_eq!(cascade_step(&c8, &s).infected, s.infected);
        let k5 = CascadeState::new(set(5, &[0, 1]), 2);
        assert_eq!(cascade_step(&complete(5), &k5).infected.len(), 5);
    }

    #[test]
    fn run_examples() {
        let out = run_cascade(&path(4), &set(4, &[0]), 1).unwrap();
        assert!(out.is_complete());
        assert_eq!(out.rounds, 3);
        assert_eq!(out.history, vec![(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1)]);
        let out = run_cascade(&cycle(6).unwrap(), &set(6, &[0, 3]), 2).unwrap();
        assert_eq!(out.infected, set(6, &[0, 3]));
        assert_eq!(out.rounds, 0);
        assert!(matches!(run_cascade(&path(4), &set(4, &[]), 1), Err(Error::EmptySet)));
    }

    #[test]
    fn any_m_examples() {
        let c8 = counterexample(8).unwrap();
        for method in [ContagionMethod::Exact, ContagionMethod::Simulate] {
            assert!(!contagion_from_any_m(&c8, 4, 2, method).unwrap());
            assert!(contagion_from_any_m(&path(5), 1, 1, method).unwrap());
            assert!(!contagion_from_any_m(&cycle(6).unwrap(), 4, 2, method).unwrap());
        }
        assert!(matches!(
            contagion_from_any_m(&c8, 1, 2, ContagionMethod::Exact),
            Err(Error::ThresholdAboveSeed { m: 1, r: 2 })
        ));
        assert!(contagion_from_any_m(&c8, 8, 2, ContagionMethod::Exact).is_err());
        assert!(contagion_from_any_m(&complete(13), 3, 2, ContagionMethod::Simulate).is_err());
    }
}
