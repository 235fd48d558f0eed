use rand::Rng;
use serde::{Deserialize, Serialize};

use super::RngSeed;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::Scalar;

/// Node positions in the cube `[0, l]^d` together with the connection radius.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar + Serialize + serde::de::DeserializeOwned")]
pub struct GeometricPlacement<T> {
    positions: Vec<Vec<T>>,
    side_length: T,
    radius: T,
    dimension: usize,
}

impl<T: Scalar> GeometricPlacement<T> {
    pub fn new(positions: Vec<Vec<T>>, side_length: T, radius: T, dimension: usize) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::InvalidParameter("dimension must be at least 1".into()));
        }
        if !(side_length > T::zero()) || !side_length.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "side length must be positive, got {side_length}"
            )));
        }
        if !(radius > T::zero()) || !radius.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "radius must be positive, got {radius}"
            )));
        }
        for (i, p) in positions.iter().enumerate() {
            if p.len() != dimension {
                return Err(Error::InvalidParameter(format!(
                    "node {i} has {} coordinates, expected {dimension}",
                    p.len()
                )));
            }
            if p.iter().any(|&c| !(c >= T::zero() && c <= side_length)) {
                return Err(Error::InvalidParameter(format!(
                    "node {i} lies outside [0, {side_length}]^{dimension}"
                )));
            }
        }
        Ok(GeometricPlacement {
            positions,
            side_length,
            radius,
            dimension,
        })
    }

    /// One-dimensional placement from scalar positions.
    pub fn line(positions: &[T], side_length: T, radius: T) -> Result<Self> {
        Self::new(positions.iter().map(|&x| vec![x]).collect(), side_length, radius, 1)
    }

    pub fn positions(&self) -> &[Vec<T>] {
        &self.positions
    }

    pub fn node_count(&self) -> usize {
        self.positions.len()
    }

    pub fn side_length(&self) -> T {
        self.side_length
    }

    pub fn radius(&self) -> T {
        self.radius
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    fn squared_distance(&self, i: usize, j: usize) -> T {
        self.positions[i]
            .iter()
            .zip(&self.positions[j])
            .fold(T::zero(), |acc, (&a, &b)| acc + (a - b) * (a - b))
    }

    /// Node indices sorted by position (d = 1), ties broken by index.
    pub fn order_1d(&self) -> Result<Vec<usize>> {
        self.require_line()?;
        let mut order: Vec<usize> = (0..self.node_count()).collect();
        order.sort_by(|&i, &j| {
            self.positions[i][0]
                .partial_cmp(&self.positions[j][0])
                .expect("positions are finite")
                .then(i.cmp(&j))
        });
        Ok(order)
    }

    /// `x(n) - x(1)`: distance between the extreme nodes (d = 1).
    pub fn spread(&self) -> Result<T> {
        self.require_line()?;
        let xs = self.positions.iter().map(|p| p[0]);
        let lo = xs.clone().fold(T::infinity(), T::min);
        let hi = xs.fold(T::neg_infinity(), T::max);
        Ok(if self.positions.is_empty() { T::zero() } else { hi - lo })
    }

    fn require_line(&self) -> Result<()> {
        if self.dimension == 1 {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "operation needs dimension 1, placement has {}",
                self.dimension
            )))
        }
    }
}

/// Edge between `i` and `j` iff `‖x(i) − x(j)‖ ≤ radius`.
pub fn graph_from_placement<T: Scalar>(pl: &GeometricPlacement<T>) -> Graph {
    let n = pl.node_count();
    let r2 = pl.radius * pl.radius;
    let mut g = Graph::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            if pl.squared_distance(i, j) <= r2 {
                g.add_edge(i, j).expect("i < j < n");
            }
        }
    }
    g
}

/// Positions i.i.d. uniform on `[0, side_length]^dimension`.
pub fn gen_geometric<T: Scalar>(
    n: usize,
    radius: T,
    side_length: T,
    dimension: usize,
    seed: RngSeed,
) -> Result<(Graph, GeometricPlacement<T>)> {
    // validate before sampling so bad parameters never consume randomness
    GeometricPlacement::new(Vec::new(), side_length, radius, dimension)?;
    let mut rng = seed.rng();
    let side = side_length.as_f64();
    let positions = (0..n)
        .map(|_| {
            (0..dimension)
                .map(|_| T::of(rng.gen::<f64>() * side).min(side_length))
                .collect()
        })
        .collect();
    let pl = GeometricPlacement::new(positions, side_length, radius, dimension)?;
    Ok((graph_from_placement(&pl), pl))
}

/// `round(k · l · ln l / ρ)`: node count for the regime `ρ n = k l ln l`.
pub fn geometric_node_count<T: Scalar>(k: T, side_length: T, radius: T) -> Result<usize> {
    if !(k > T::zero() && side_length > T::one() && radius > T::zero()) {
        return Err(Error::InvalidParameter(
            "need k > 0, side length > 1 and radius > 0".into(),
        ));
    }
    let n = (k * side_length * side_length.ln() / radius).round();
    n.to_usize()
        .ok_or_else(|| Error::InvalidParameter(format!("node count {n} not representable")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, path};

    #[test]
    fn unit_spacing_gives_path() {
        let pl = GeometricPlacement::line(&[0.0, 1.0, 2.0], 2.0, 1.0).unwrap();
        assert_eq!(graph_from_placement(&pl), path(3));
    }

    #[test]
    fn triangle_plus_isolated() {
        let pl = GeometricPlacement::line(&[0.0, 0.4, 0.8, 3.0], 3.0, 1.0).unwrap();
        let g = graph_from_placement(&pl);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 2)]);
        assert_eq!(g.degree(3), 0);
        assert_eq!(pl.spread().unwrap(), 3.0);
    }

    #[test]
    fn large_radius_is_complete() {
        for d in 1..=3 {
            let radius = 5.0 * (d as f64).sqrt();
            let (g, _) = gen_geometric(9, radius, 5.0, d, RngSeed::new(d as u64)).unwrap();
            assert_eq!(g, complete(9));
        }
    }

    #[test]
    fn single_precision_placements() {
        let (g, pl) = gen_geometric::<f32>(12, 0.5, 4.0, 1, RngSeed::new(4)).unwrap();
        assert_eq!(pl.node_count(), 12);
        assert!(pl.positions().iter().all(|p| (0.0..=4.0).contains(&p[0])));
        assert_eq!(g, graph_from_placement(&pl));
    }

    #[test]
    fn order_ties_broken_by_index() {
        let pl = GeometricPlacement::line(&[2.0, 1.0, 2.0, 0.5], 3.0, 1.0).unwrap();
        assert_eq!(pl.order_1d().unwrap(), vec![3, 1, 0, 2]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(gen_geometric(5, 0.0, 1.0, 1, RngSeed::new(0)).is_err());
        assert!(gen_geometric(5, 1.0, -1.0, 1, RngSeed::new(0)).is_err());
        assert!(gen_geometric(5, 1.0, 1.0, 0, RngSeed::new(0)).is_err());
        assert!(GeometricPlacement::line(&[1.5], 1.0, 1.0).is_err());
        let (_, pl) = gen_geometric(4, 1.0, 2.0, 2, RngSeed::new(0)).unwrap();
        assert!(pl.order_1d().is_err());
    }

    #[test]
    fn node_count_regime() {
        // 2 * 100 * ln 100 / 5 = 184.2
        assert_eq!(geometric_node_count(2.0, 100.0, 5.0).unwrap(), 184);
    }
}
