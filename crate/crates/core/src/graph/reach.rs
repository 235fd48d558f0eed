//! Reachable sets, r-robustness and the brute-force oracles used to check them.

use super::cut::{find_degree_cut_with, CutOptions};
use super::Graph;
use crate::error::{Error, Result};
use crate::nodeset::NodeSet;

/// Largest graph accepted by [`naive_is_r_robust`].
pub const NAIVE_ORACLE_LIMIT: usize = 12;

/// Largest graph accepted by [`check_subsets_reachable`] (subset enumeration).
pub const SUBSET_ENUMERATION_LIMIT: usize = 32;

/// Whether some member of `s` has at least `r` neighbors outside `s`.
pub fn is_r_reachable(g: &Graph, s: &NodeSet, r: usize) -> Result<bool> {
    Ok(r <= reach_index(g, s)?)
}

/// `max_{i ∈ s} |N(i) ∖ s|`: the largest r for which `s` is r-reachable.
pub fn reach_index(g: &Graph, s: &NodeSet) -> Result<usize> {
    g.check_set(s)?;
    s.iter()
        .map(|v| g.outside_degree(v, s))
        .max()
        .ok_or(Error::EmptySet)
}

pub fn is_r_robust(g: &Graph, r: usize) -> Result<bool> {
    is_r_robust_with(g, r, &CutOptions::default())
}

/// r-robust iff no `(r-1)`-degree cut exists; every graph is 0-robust.
pub fn is_r_robust_with(g: &Graph, r: usize, opts: &CutOptions) -> Result<bool> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::RobustnessUndefined(n));
    }
    if r == 0 {
        return Ok(true);
    }
    Ok(find_degree_cut_with(g, r - 1, opts)?.is_none())
}

pub fn robustness(g: &Graph) -> Result<usize> {
    robustness_with(g, &CutOptions::default())
}

/// Smallest ρ admitting a ρ-degree cut, found by ascending search. The scan
/// stops at `max(min_degree, 1)`, where a singleton cut always exists.
pub fn robustness_with(g: &Graph, opts: &CutOptions) -> Result<usize> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::RobustnessUndefined(n));
    }
    let mut rho = 0;
    loop {
        if find_degree_cut_with(g, rho, opts)?.is_some() {
            return Ok(rho);
        }
        rho += 1;
    }
}

fn row_masks(g: &Graph) -> Vec<u64> {
    (0..g.node_count()).map(|v| g.neighbors(v).mask()).collect()
}

#[inline]
fn mask_reachable(rows: &[u64], s: u64, r: usize) -> bool {
    let mut rest = s;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if (rows[v] & !s).count_ones() as usize >= r {
            return true;
        }
    }
    false
}

/// Whether every nonempty node set of size at most `cap` is r-reachable.
///
/// Exact enumeration by increasing size with early exit. Requires
/// `1 <= cap <= n - 1`.
pub fn check_subsets_reachable(g: &Graph, r: usize, cap: usize) -> Result<bool> {
    let n = g.node_count();
    if cap == 0 || cap >= n {
        return Err(Error::InvalidParameter(format!(
            "cap must lie in 1..={}, got {cap}",
            n.saturating_sub(1)
        )));
    }
    if n > SUBSET_ENUMERATION_LIMIT {
        return Err(Error::OracleSizeExceeded {
            n,
            limit: SUBSET_ENUMERATION_LIMIT,
        });
    }
    if r == 0 {
        return Ok(true);
    }
    let rows = row_masks(g);
    let top = 1u64 << n;
    for k in 1..=cap {
        // Gosper's hack over k-subsets of 0..n
        let mut s: u64 = (1u64 << k) - 1;
        while s < top {
            if !mask_reachable(&rows, s, r) {
                return Ok(false);
            }
            let c = s & s.wrapping_neg();
            let t = s + c;
            s = (((t ^ s) >> 2) / c) | t;
        }
    }
    Ok(true)
}

/// Literal reading of r-robustness: enumerate every unordered pair of
/// nonempty disjoint subsets and require one of them to be r-reachable.
///
/// Test oracle only; refuses graphs above [`NAIVE_ORACLE_LIMIT`] nodes.
pub fn naive_is_r_robust(g: &Graph, r: usize) -> Result<bool> {
    let n = g.node_count();
    if n > NAIVE_ORACLE_LIMIT {
        return Err(Error::OracleSizeExceeded {
            n,
            limit: NAIVE_ORACLE_LIMIT,
        });
    }
    if n < 2 {
        return Err(Error::RobustnessUndefined(n));
    }
    let rows = row_masks(g);
    let full = (1u64 << n) - 1;
    let reachable: Vec<bool> = (0..=full).map(|s| mask_reachable(&rows, s, r)).collect();
    for s1 in 1..=full {
        if reachable[s1 as usize] {
            continue;
        }
        let rest = full & !s1;
        // nonempty submasks of the complement, each unordered pair once
        let mut s2 = rest;
        while s2 != 0 {
            if s2 > s1 && !reachable[s2 as usize] {
                return Ok(false);
            }
            s2 = (s2 - 1) & rest;
        }
    }
    Ok(true)
}
