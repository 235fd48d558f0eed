use rand::Rng;

use super::RngSeed;
use crate::error::{Error, Result};
use crate::graph::{complete, is_r_robust_with, CutOptions, Graph};
use crate::nodeset::NodeSet;

#[derive(Debug, Clone, Default)]
pub struct PreferentialOptions {
    /// Replaces the default seed graph `K_{2r-1}`.
    pub seed_graph: Option<Graph>,
    /// Check the supplied seed graph for r-robustness exactly before growing it.
    pub verify_seed: bool,
}

pub fn gen_preferential(n: usize, r: usize, seed: RngSeed) -> Result<Graph> {
    gen_preferential_with(n, r, seed, &PreferentialOptions::default())
}

/// Grows a seed graph to `n` nodes; every new node attaches to `r` distinct
/// existing nodes drawn with probability proportional to current degree.
///
/// Draws are sequential without replacement, which matches degree-weighted
/// sampling with rejection of nodes already chosen. When all remaining
/// candidates have degree zero the draw is uniform among them.
pub fn gen_preferential_with(
    n: usize,
    r: usize,
    seed: RngSeed,
    opts: &PreferentialOptions,
) -> Result<Graph> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    let base = match &opts.seed_graph {
        Some(g) => {
            if g.node_count() < r {
                return Err(Error::SeedGraphTooSmall {
                    needed: r,
                    got: g.node_count(),
                });
            }
            if opts.verify_seed
                && g.node_count() >= 2
                && !is_r_robust_with(g, r, &CutOptions::with_limit(g.node_count()))?
            {
                return Err(Error::SeedGraphNotRobust(r));
            }
            g.clone()
        }
        None => complete(2 * r - 1),
    };
    let n0 = base.node_count();
    if n < n0 {
        return Err(Error::SeedGraphTooSmall { needed: n0, got: n });
    }
    let mut edges: Vec<(usize, usize)> = base.edges().collect();
    let mut degree = base.degrees();
    degree.resize(n, 0);
    let mut rng = seed.rng();
    let mut chosen = Vec::with_capacity(r);
    for v in n0..n {
        chosen.clear();
        for _ in 0..r {
            let pick = draw(&mut rng, &degree[..v], &chosen);
            chosen.push(pick);
        }
        for &u in &chosen {
            edges.push((u, v));
            degree[u] += 1;
        }
        degree[v] = r;
    }
    Graph::from_edges(n, edges)
}

fn draw<R: Rng>(rng: &mut R, degree: &[usize], taken: &[usize]) -> usize {
    let weight = |u: usize| if taken.contains(&u) { 0 } else { degree[u] as u64 };
    let total: u64 = (0..degree.len()).map(weight).sum();
    if total == 0 {
        let free: Vec<usize> = (0..degree.len()).filter(|u| !taken.contains(u)).collect();
        return free[rng.gen_range(0..free.len())];
    }
    let mut ticket = rng.gen_range(0..total);
    for u in 0..degree.len() {
        let w = weight(u);
        if ticket < w {
            return u;
        }
        ticket -= w;
    }
    unreachable!("ticket below total weight")
}

/// Neighbors of node `v` among `0..v`: its attachment set when `v` is not a seed node.
pub fn attachment_set(g: &Graph, v: usize) -> NodeSet {
    let mut s = g.neighbors(v).clone();
    for u in v..g.node_count() {
        s.remove(u);
    }
    s
}
