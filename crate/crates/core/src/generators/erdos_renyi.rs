use rand::Rng;

use super::RngSeed;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// One uniform variate per unordered pair `(i, j)`, `i < j`, in lexicographic order.
///
/// Thresholding the same variates at different `p` couples the samples:
/// the edge set grows monotonically with `p`.
pub fn er_uniforms(n: usize, seed: RngSeed) -> Vec<f64> {
    let mut rng = seed.rng();
    (0..pair_count(n)).map(|_| rng.gen::<f64>()).collect()
}

/// G(n, p) from precomputed pair variates: edge iff `u < p`.
pub fn er_from_uniforms(n: usize, uniforms: &[f64], p: f64) -> Result<Graph> {
    check_p(p)?;
    if uniforms.len() != pair_count(n) {
        return Err(Error::InvalidParameter(format!(
            "expected {} pair variates, got {}",
            pair_count(n),
            uniforms.len()
        )));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if uniforms[k] < p {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    Ok(g)
}

pub fn gen_erdos_renyi(n: usize, p: f64, seed: RngSeed) -> Result<Graph> {
    check_p(p)?;
    er_from_uniforms(n, &er_uniforms(n, seed), p)
}

fn check_p(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("p must lie in [0, 1], got {p}")))
    }
}
