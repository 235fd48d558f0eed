use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::records::SweepRecord;
use super::threshold::threshold_p;
use crate::error::{Error, Result};
use crate::generators::{
    er_from_uniforms, er_uniforms, gen_geometric, gen_preferential, geometric_node_count, RngSeed,
};
use crate::graph::{
    check_subsets_reachable, is_k_connected, is_r_robust_with, min_degree, robustness_with,
    vertex_connectivity, CutOptions, Graph,
};

pub const DEFAULT_OFFSETS: [f64; 5] = [-4.0, -2.0, 0.0, 2.0, 4.0];
pub const DEFAULT_TRIALS: usize = 200;
/// Largest graph on which sweeps run the exact robustness search.
pub const DEFAULT_EXACT_LIMIT: usize = 22;

/// Per-sample graph property evaluated at threshold `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    /// Minimum degree at least r.
    MinDegreeR,
    RConnected,
    RRobust,
    /// Every nonempty set of at most `cap` nodes is r-reachable.
    SProperty { cap: usize },
}

impl Property {
    pub fn name(&self) -> String {
        match self {
            Property::MinDegreeR => "min_degree_r".into(),
            Property::RConnected => "r_connected".into(),
            Property::RRobust => "r_robust".into(),
            Property::SProperty { cap } => format!("s_property({cap})"),
        }
    }

    fn holds(&self, g: &Graph, r: usize, limit: usize) -> Result<bool> {
        Ok(match *self {
            Property::MinDegreeR => min_degree(g)? >= r,
            Property::RConnected => is_k_connected(g, r),
            Property::RRobust => is_r_robust_with(g, r, &CutOptions::with_limit(limit))?,
            Property::SProperty { cap } => check_subsets_reachable(g, r, cap)?,
        })
    }
}

fn default_offsets() -> Vec<f64> {
    DEFAULT_OFFSETS.to_vec()
}

fn default_trials() -> usize {
    DEFAULT_TRIALS
}

fn default_limit() -> usize {
    DEFAULT_EXACT_LIMIT
}

fn default_er_properties() -> Vec<Property> {
    vec![Property::MinDegreeR, Property::RConnected, Property::RRobust]
}

/// Geometric regime point: `n = round(k · l · ln l / radius)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeometricPoint {
    pub k: f64,
    pub radius: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum SweepSpec {
    /// `p = (ln n + (r − 1) ln ln n + x) / n` for each offset `x`, with the
    /// same pair variates reused across offsets.
    ErdosRenyi {
        n: usize,
        r: usize,
        #[serde(default = "default_offsets")]
        offsets: Vec<f64>,
        #[serde(default = "default_trials")]
        trials: usize,
        #[serde(default)]
        base_seed: RngSeed,
        #[serde(default = "default_er_properties")]
        properties: Vec<Property>,
        #[serde(default = "default_limit")]
        exact_limit: usize,
    },
    Geometric1d {
        side_length: f64,
        r: usize,
        points: Vec<GeometricPoint>,
        #[serde(default = "default_trials")]
        trials: usize,
        #[serde(default)]
        base_seed: RngSeed,
        #[serde(default = "default_limit")]
        exact_limit: usize,
    },
    Preferential {
        n: usize,
        r: usize,
        #[serde(default = "default_trials")]
        trials: usize,
        #[serde(default)]
        base_seed: RngSeed,
        #[serde(default = "default_limit")]
        exact_limit: usize,
    },
}

/// Seed of trial `t`: consecutive base seeds on the base stream.
fn trial_seed(base: RngSeed, t: usize) -> RngSeed {
    RngSeed {
        seed: base.seed.wrapping_add(t as u64),
        stream: base.stream,
    }
}

fn check_trials(trials: usize) -> Result<()> {
    if trials == 0 {
        Err(Error::InvalidParameter("trials must be at least 1".into()))
    } else {
        Ok(())
    }
}

struct Tally<'a> {
    family: &'a str,
    n_or_l: f64,
    r: usize,
    trials: usize,
    base: RngSeed,
}

impl Tally<'_> {
    fn record(&self, param: f64, property: String, hits: usize, flags: String) -> SweepRecord {
        let est = hits as f64 / self.trials as f64;
        SweepRecord {
            family: self.family.into(),
            n_or_l: self.n_or_l,
            r: self.r,
            param,
            property,
            estimate: est,
            ci_halfwidth: 1.96 * (est * (1.0 - est) / self.trials as f64).sqrt(),
            trials: self.trials,
            seed_lo: self.base.seed,
            seed_hi: self.base.seed.wrapping_add(self.trials as u64 - 1),
            flags,
        }
    }
}

pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRecord>> {
    match spec {
        SweepSpec::ErdosRenyi { .. } => run_er_sweep(spec),
        SweepSpec::Geometric1d { .. } => run_geometric_sweep(spec),
        SweepSpec::Preferential { .. } => run_ba_trials(spec),
    }
}

fn wrong_family(expected: &str) -> Error {
    Error::InvalidParameter(format!("expected a {expected} sweep spec"))
}

/// Coupled G(n, p) sweep; records are ordered by offset, then property.
pub fn run_er_sweep(spec: &SweepSpec) -> Result<Vec<SweepRecord>> {
    let SweepSpec::ErdosRenyi {
        n,
        r,
        offsets,
        trials,
        base_seed,
        properties,
        exact_limit,
    } = spec
    else {
        return Err(wrong_family("erdos_renyi"));
    };
    let (n, r, trials) = (*n, *r, *trials);
    check_trials(trials)?;
    if properties.contains(&Property::RRobust) && n > *exact_limit {
        return Err(Error::SearchLimitExceeded {
            n,
            limit: *exact_limit,
        });
    }
    let t: f64 = threshold_p(n, r)?;
    let points: Vec<(f64, f64, bool)> = offsets
        .iter()
        .map(|&x| {
            let raw = t + x / n as f64;
            let p = raw.clamp(0.0, 1.0);
            (x, p, p != raw)
        })
        .collect();

    // hits[point][property], accumulated over trials in trial order
    let per_trial: Vec<Vec<Vec<bool>>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let u = er_uniforms(n, trial_seed(*base_seed, i));
            points
                .iter()
                .map(|&(_, p, _)| {
                    let g = er_from_uniforms(n, &u, p)?;
                    properties.iter().map(|prop| prop.holds(&g, r, *exact_limit)).collect()
                })
                .collect()
        })
        .collect::<Result<_>>()?;

    let tally = Tally {
        family: "erdos_renyi",
        n_or_l: n as f64,
        r,
        trials,
        base: *base_seed,
    };
    let mut out = Vec::new();
    for (pi, &(x, p, clamped)) in points.iter().enumerate() {
        for (qi, prop) in properties.iter().enumerate() {
            let hits = per_trial.iter().filter(|s| s[pi][qi]).count();
            let mut flags = format!("x={x}");
            if clamped {
                flags.push_str(";clamped");
            }
            out.push(tally.record(p, prop.name(), hits, flags));
        }
    }
    Ok(out)
}

/// Outcome of one 1-D geometric sample.
#[derive(Default, Clone, Copy)]
struct GeoSample {
    min_degree_r: bool,
    r_connected: bool,
    r_robust: bool,
    spread_gt_3rho: bool,
    conn_eq_rob: bool,
    /// Spread > 3ρ implies κ = robustness, and robustness ≥ ⌊κ/2⌋.
    law_holds: bool,
}

/// 1-D geometric sweep; each point records the rates of the degree,
/// connectivity and robustness properties, of `spread > 3ρ`, of
/// `κ = robustness` and of the per-sample connectivity/robustness law.
pub fn run_geometric_sweep(spec: &SweepSpec) -> Result<Vec<SweepRecord>> {
    let SweepSpec::Geometric1d {
        side_length,
        r,
        points,
        trials,
        base_seed,
        exact_limit,
    } = spec
    else {
        return Err(wrong_family("geometric1d"));
    };
    let (l, r, trials) = (*side_length, *r, *trials);
    check_trials(trials)?;
    let tally = Tally {
        family: "geometric1d",
        n_or_l: l,
        r,
        trials,
        base: *base_seed,
    };
    let mut out = Vec::new();
    for pt in points {
        let n = geometric_node_count(pt.k, l, pt.radius)?;
        if n < 2 {
            return Err(Error::InvalidParameter(format!(
                "point k={} radius={} gives {n} nodes",
                pt.k, pt.radius
            )));
        }
        if n > *exact_limit {
            return Err(Error::SearchLimitExceeded {
                n,
                limit: *exact_limit,
            });
        }
        let opts = CutOptions::with_limit(*exact_limit);
        let samples: Vec<GeoSample> = (0..trials)
            .into_par_iter()
            .map(|i| {
                let (g, pl) = gen_geometric(n, pt.radius, l, 1, trial_seed(*base_seed, i))?;
                let kappa = vertex_connectivity(&g)?;
                let rob = robustness_with(&g, &opts)?;
                let wide = pl.spread()? > 3.0 * pt.radius;
                Ok(GeoSample {
                    min_degree_r: min_degree(&g)? >= r,
                    r_connected: kappa >= r,
                    r_robust: rob >= r,
                    spread_gt_3rho: wide,
                    conn_eq_rob: kappa == rob,
                    law_holds: (!wide || kappa == rob) && rob >= kappa / 2,
                })
            })
            .collect::<Result<_>>()?;
        let flags = format!("radius={};n={n}", pt.radius);
        let rate = |f: fn(&GeoSample) -> bool| samples.iter().filter(|s| f(s)).count();
        let rows: [(&str, fn(&GeoSample) -> bool); 6] = [
            ("min_degree_r", |s| s.min_degree_r),
            ("r_connected", |s| s.r_connected),
            ("r_robust", |s| s.r_robust),
            ("spread_gt_3rho", |s| s.spread_gt_3rho),
            ("conn_eq_rob", |s| s.conn_eq_rob),
            ("conn_rob_law", |s| s.law_holds),
        ];
        for (name, f) in rows {
            out.push(tally.record(pt.k, name.into(), rate(f), flags.clone()));
        }
    }
    Ok(out)
}

/// Exact r-robustness and minimum-degree rates of preferential-attachment graphs.
pub fn run_ba_trials(spec: &SweepSpec) -> Result<Vec<SweepRecord>> {
    let SweepSpec::Preferential {
        n,
        r,
        trials,
        base_seed,
        exact_limit,
    } = spec
    else {
        return Err(wrong_family("preferential"));
    };
    let (n, r, trials) = (*n, *r, *trials);
    check_trials(trials)?;
    if n > *exact_limit {
        return Err(Error::SearchLimitExceeded {
            n,
            limit: *exact_limit,
        });
    }
    let opts = CutOptions::with_limit(*exact_limit);
    let samples: Vec<(bool, bool)> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let g = gen_preferential(n, r, trial_seed(*base_seed, i))?;
            if g.node_count() < 2 {
                return Ok((true, true));
            }
            Ok((is_r_robust_with(&g, r, &opts)?, min_degree(&g)? >= r))
        })
        .collect::<Result<_>>()?;
    let tally = Tally {
        family: "preferential",
        n_or_l: n as f64,
        r,
        trials,
        base: *base_seed,
    };
    Ok(vec![
        tally.record(r as f64, "r_robust".into(), samples.iter().filter(|s| s.0).count(), String::new()),
        tally.record(r as f64, "min_degree_r".into(), samples.iter().filter(|s| s.1).count(), String::new()),
    ])
}
