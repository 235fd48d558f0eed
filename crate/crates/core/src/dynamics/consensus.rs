use std::cmp::Ordering;

use rand::Rng;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::RngSeed;
use crate::graph::Graph;
use crate::nodeset::NodeSet;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FilterMode {
    /// Drop up to F values strictly above and up to F strictly below the own value.
    #[default]
    Strict,
    /// Drop the F largest and the F smallest neighbor values regardless of the own value.
    Literal,
}

/// Value an adversary broadcasts in round `k ≥ 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[serde(bound = "T: Scalar + Serialize + DeserializeOwned")]
pub enum AdversaryStrategy<T> {
    Constant { value: T },
    UniformRandom { lo: T, hi: T },
    Ramp { start: T, slope: T },
}

impl<T: Scalar> AdversaryStrategy<T> {
    fn value<R: Rng>(&self, round: usize, rng: &mut R) -> T {
        match *self {
            AdversaryStrategy::Constant { value } => value,
            AdversaryStrategy::UniformRandom { lo, hi } => lo + (hi - lo) * T::of(rng.gen::<f64>()),
            AdversaryStrategy::Ramp { start, slope } => start + slope * T::of(round as f64),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar + Serialize + DeserializeOwned")]
pub struct Adversary<T> {
    pub node: usize,
    pub strategy: AdversaryStrategy<T>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar + Serialize + DeserializeOwned")]
pub struct ConsensusConfig<T> {
    /// F: the most misbehaving neighbors any normal node may have.
    pub f: usize,
    #[serde(default)]
    pub filter_mode: FilterMode,
    pub max_rounds: usize,
    pub epsilon: T,
    #[serde(default)]
    pub adversaries: Vec<Adversary<T>>,
    /// Drives `uniform_random` adversaries.
    #[serde(default)]
    pub seed: RngSeed,
}

impl<T: Scalar> ConsensusConfig<T> {
    pub fn new(f: usize, max_rounds: usize, epsilon: T) -> Self {
        ConsensusConfig {
            f,
            filter_mode: FilterMode::Strict,
            max_rounds,
            epsilon,
            adversaries: Vec::new(),
            seed: RngSeed::default(),
        }
    }

    pub fn with_mode(mut self, mode: FilterMode) -> Self {
        self.filter_mode = mode;
        self
    }

    pub fn with_adversary(mut self, node: usize, strategy: AdversaryStrategy<T>) -> Self {
        self.adversaries.push(Adversary { node, strategy });
        self
    }

    pub fn adversary_set(&self, n: usize) -> Result<NodeSet> {
        let set = NodeSet::from_nodes(n, self.adversaries.iter().map(|a| a.node))?;
        if set.len() != self.adversaries.len() {
            return Err(Error::InvalidParameter("adversary listed twice".into()));
        }
        Ok(set)
    }

    fn validate(&self, g: &Graph, values: usize) -> Result<NodeSet> {
        if values != g.node_count() {
            return Err(Error::InvalidParameter(format!(
                "{} values for {} nodes",
                values,
                g.node_count()
            )));
        }
        if self.max_rounds == 0 {
            return Err(Error::InvalidParameter("max_rounds must be positive".into()));
        }
        if !(self.epsilon > T::zero()) {
            return Err(Error::InvalidParameter("epsilon must be positive".into()));
        }
        let adv = self.adversary_set(g.node_count())?;
        if !validate_f_local(g, &adv, self.f)? {
            return Err(Error::FLocalViolation);
        }
        Ok(adv)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar + Serialize + DeserializeOwned")]
pub struct ConsensusTrace<T> {
    /// Per-round value vectors; entry 0 is the initial state.
    pub rounds: Vec<Vec<T>>,
    pub adversaries: NodeSet,
    pub filter_mode: FilterMode,
    pub converged: bool,
    /// max − min over normal nodes in the last round.
    pub final_spread: T,
    /// Every normal value stayed within the initial normal range.
    pub validity_held: bool,
}

impl<T: Scalar> ConsensusTrace<T> {
    pub fn spread_at(&self, round: usize) -> T {
        normal_spread(&self.rounds[round], &self.adversaries)
    }
}

/// Whether every normal node has at most `f` adversarial neighbors.
pub fn validate_f_local(g: &Graph, adversaries: &NodeSet, f: usize) -> Result<bool> {
    g.check_set(adversaries)?;
    Ok((0..g.node_count())
        .filter(|&v| !adversaries.contains(v))
        .all(|v| g.neighbors(v).intersection_len(adversaries) <= f))
}

/// Neighbor values retained by the W-MSR filter, in their original order.
///
/// Among equal values the later list entry is removed first.
pub fn wmsr_filter<T: Scalar>(own: T, neighbor_values: &[T], f: usize, mode: FilterMode) -> Vec<T> {
    let n = neighbor_values.len();
    let by_value = |i: &usize, j: &usize| {
        neighbor_values[*i]
            .partial_cmp(&neighbor_values[*j])
            .unwrap_or(Ordering::Equal)
    };
    // descending value, later position first
    let mut high: Vec<usize> = (0..n).collect();
    high.sort_by(|i, j| by_value(j, i).then(j.cmp(i)));
    // ascending value, later position first
    let mut low: Vec<usize> = (0..n).collect();
    low.sort_by(|i, j| by_value(i, j).then(j.cmp(i)));

    let mut removed = vec![false; n];
    match mode {
        FilterMode::Strict => {
            for &i in high.iter().filter(|&&i| neighbor_values[i] > own).take(f) {
                removed[i] = true;
            }
            for &i in low.iter().filter(|&&i| neighbor_values[i] < own).take(f) {
                removed[i] = true;
            }
        }
        FilterMode::Literal => {
            for &i in high.iter().take(f) {
                removed[i] = true;
            }
            let rest: Vec<usize> = low.iter().copied().filter(|&i| !removed[i]).take(f).collect();
            for i in rest {
                removed[i] = true;
            }
        }
    }
    (0..n)
        .filter(|&i| !removed[i])
        .map(|i| neighbor_values[i])
        .collect()
}

/// One synchronous update producing round `round` from `values`.
///
/// Normal nodes average their own value with the filtered neighbor values
/// (equal weights); adversaries broadcast their strategy value for `round`.
pub fn wmsr_round<T: Scalar>(
    g: &Graph,
    values: &[T],
    config: &ConsensusConfig<T>,
    round: usize,
) -> Result<Vec<T>> {
    let adv = config.validate(g, values.len())?;
    Ok(step(g, values, config, &adv, round))
}

fn step<T: Scalar>(
    g: &Graph,
    values: &[T],
    config: &ConsensusConfig<T>,
    adv: &NodeSet,
    round: usize,
) -> Vec<T> {
    let mut next: Vec<T> = (0..g.node_count())
        .map(|v| {
            if adv.contains(v) {
                return values[v];
            }
            let heard: Vec<T> = g.neighbors(v).iter().map(|u| values[u]).collect();
            let kept = wmsr_filter(values[v], &heard, config.f, config.filter_mode);
            let sum = kept.iter().fold(values[v], |acc, &x| acc + x);
            sum / T::of((kept.len() + 1) as f64)
        })
        .collect();
    let mut rng = config.seed.with_stream(round as u64).rng();
    for a in &config.adversaries {
        next[a.node] = a.strategy.value(round, &mut rng);
    }
    next
}

fn normal_range<T: Scalar>(values: &[T], adv: &NodeSet) -> Option<(T, T)> {
    values
        .iter()
        .enumerate()
        .filter(|(v, _)| !adv.contains(*v))
        .map(|(_, &x)| x)
        .fold(None, |acc, x| match acc {
            None => Some((x, x)),
            Some((lo, hi)) => Some((lo.min(x), hi.max(x))),
        })
}

fn normal_spread<T: Scalar>(values: &[T], adv: &NodeSet) -> T {
    normal_range(values, adv).map_or(T::zero(), |(lo, hi)| hi - lo)
}

/// Iterates W-MSR until the normal spread drops below ε or `max_rounds` updates ran.
///
/// Convergence is an operational verdict for this finite run only.
pub fn run_consensus<T: Scalar>(
    g: &Graph,
    initial: &[T],
    config: &ConsensusConfig<T>,
) -> Result<ConsensusTrace<T>> {
    let adv = config.validate(g, initial.len())?;
    let (lo, hi) = normal_range(initial, &adv).unwrap_or((T::zero(), T::zero()));
    let scale = T::one().max(lo.abs()).max(hi.abs());
    let tol = T::epsilon() * T::of(64.0) * scale;
    let mut rounds = vec![initial.to_vec()];
    let mut validity_held = true;
    let mut spread = normal_spread(initial, &adv);
    let mut k = 0;
    while !(spread < config.epsilon) && k < config.max_rounds {
        k += 1;
        let next = step(g, &rounds[k - 1], config, &adv, k);
        if let Some((a, b)) = normal_range(&next, &adv) {
            if a < lo - tol || b > hi + tol {
                validity_held = false;
            }
        }
        spread = normal_spread(&next, &adv);
        rounds.push(next);
    }
    Ok(ConsensusTrace {
        rounds,
        adversaries: adv,
        filter_mode: config.filter_mode,
        converged: spread < config.epsilon,
        final_spread: spread,
        validity_held,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, counterexample, path};

    #[test]
    fn filter_examples() {
        assert_eq!(wmsr_filter(5.0, &[1.0, 2.0, 6.0, 9.0], 1, FilterMode::Strict), vec![2.0, 6.0]);
        assert_eq!(wmsr_filter(5.0, &[1.0, 2.0, 6.0, 9.0], 0, FilterMode::Strict), vec![1.0, 2.0, 6.0, 9.0]);
        assert_eq!(wmsr_filter(5.0, &[7.0, 8.0, 9.0], 2, FilterMode::Strict), vec![7.0]);
        assert_eq!(wmsr_filter(5.0, &[7.0, 8.0, 9.0], 1, FilterMode::Literal), vec![8.0]);
        assert!(wmsr_filter(5.0, &[7.0, 8.0, 9.0, 1.0], 2, FilterMode::Literal).is_empty());
        assert_eq!(wmsr_filter(5.0, &[3.0, 2.0, 3.0], 1, FilterMode::Strict), vec![3.0, 3.0]);
    }

    #[test]
    fn ties_remove_later_entry() {
        // two copies of 9: the second is dropped
        let kept = wmsr_filter(0.0f64, &[9.0, 1.0, 9.0], 1, FilterMode::Strict);
        assert_eq!(kept, vec![9.0, 1.0]);
        let kept = wmsr_filter(0.0f64, &[4.0, 4.0, 4.0], 1, FilterMode::Literal);
        assert_eq!(kept, vec![4.0]);
    }

    #[test]
    fn f_local_examples() {
        let c8 = counterexample(8).unwrap();
        assert!(validate_f_local(&c8, &NodeSet::new(8), 0).unwrap());
        assert!(validate_f_local(&c8, &NodeSet::from_nodes(8, [0]).unwrap(), 1).unwrap());
        let k5 = complete(5);
        assert!(!validate_f_local(&k5, &NodeSet::from_nodes(5, [0, 1]).unwrap(), 1).unwrap());
    }

    #[test]
    fn stalemate_on_counterexample() {
        let g = counterexample(8).unwrap();
        let init: Vec<f64> = (0..8).map(|v| if v < 4 { 0.0 } else { 1.0 }).collect();
        for mode in [FilterMode::Strict, FilterMode::Literal] {
            let cfg = ConsensusConfig::new(1, 50, 1e-6).with_mode(mode);
            assert_eq!(wmsr_round(&g, &init, &cfg, 1).unwrap(), init);
            let trace = run_consensus(&g, &init, &cfg).unwrap();
            assert!(!trace.converged);
            assert_eq!(trace.rounds.len(), 51);
            assert!(trace.rounds.iter().all(|r| r == &init));
            assert_eq!(trace.final_spread, 1.0);
        }
    }

    #[test]
    fn plain_averaging_without_filter() {
        let g = path(3);
        let cfg = ConsensusConfig::new(0, 1, 1e-9);
        let next = wmsr_round(&g, &[0.0, 3.0, 6.0], &cfg, 1).unwrap();
        assert_eq!(next, vec![1.5, 3.0, 4.5]);
        let trace = run_consensus(&g, &[0.0, 3.0, 6.0], &ConsensusConfig::new(0, 10_000, 1e-9)).unwrap();
        assert!(trace.converged && trace.validity_held);
    }

    #[test]
    fn constant_adversary_filtered() {
        let g = complete(4);
        let cfg = ConsensusConfig::new(1, 20, 1e-9)
            .with_adversary(3, AdversaryStrategy::Constant { value: 9.0 });
        let next = wmsr_round(&g, &[0.0, 0.0, 0.0, 9.0], &cfg, 1).unwrap();
        assert_eq!(next, vec![0.0, 0.0, 0.0, 9.0]);
        let trace = run_consensus(&g, &[0.0, 0.0, 0.0, 9.0], &cfg).unwrap();
        assert!(trace.converged && trace.validity_held);
        assert_eq!(trace.rounds.len(), 1);
    }

    #[test]
    fn f_local_violation_rejected() {
        let cfg = ConsensusConfig::new(1, 5, 1e-6)
            .with_adversary(0, AdversaryStrategy::Constant { value: 1.0 })
            .with_adversary(1, AdversaryStrategy::Constant { value: 1.0 });
        assert!(matches!(
            run_consensus(&complete(5), &[0.0; 5], &cfg),
            Err(Error::FLocalViolation)
        ));
    }

    #[test]
    fn strategies_and_config_serde() {
        let cfg = ConsensusConfig::new(1, 10, 1e-6f64)
            .with_adversary(0, AdversaryStrategy::Ramp { start: 1.0, slope: 2.0 })
            .with_adversary(1, AdversaryStrategy::UniformRandom { lo: -1.0, hi: 1.0 });
        let text = serde_json::to_string(&cfg).unwrap();
        let back: ConsensusConfig<f64> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cfg);
        let mut rng = RngSeed::new(0).rng();
        assert_eq!(cfg.adversaries[0].strategy.value(3, &mut rng), 7.0);
        let u = cfg.adversaries[1].strategy.value(3, &mut rng);
        assert!((-1.0..=1.0).contains(&u));
        let minimal: ConsensusConfig<f32> =
            serde_json::from_str(r#"{"f": 1, "max_rounds": 5, "epsilon": 1e-3}"#).unwrap();
        assert_eq!(minimal.filter_mode, FilterMode::Strict);
    }
}
