//! Bridges between graphs, metrics and planar point sets.
//!
//! A graph `G` and a metric with radius `r` such that `{i, j}` is an edge
//! exactly when `d(i, j) <= r` have the same domatic partitions and
//! `r`-solidarity covers. [`graph_to_hop_metric`] and [`unit_ball_graph`]
//! produce such pairs in both directions; [`gadget`] embeds planar
//! 3-coloring into planar solidarity covers.

pub mod gadget;
pub mod planar;

use crate::error::{Error, Result};
use crate::metric::{Graph, HopGraph, Instance, Radius};

pub use gadget::{
    coloring_from_cover, coloring_gadget, cover_from_coloring, GadgetOutput, PointRole,
};
pub use planar::{GridPoint, PlanarOrthogonalGraph};

/// Shortest-path edge counts of a connected graph, as an explicit matrix.
pub fn graph_to_hop_metric(g: &Graph) -> Result<Instance> {
    if !g.is_connected() {
        return Err(Error::InvalidInstance(
            "graph is disconnected, hop metric undefined".into(),
        ));
    }
    let hop = HopGraph::new(g.clone())?;
    let n = g.n();
    let rows = (0..n)
        .map(|i| (0..n).map(|j| f64::from(hop.hops(i, j))).collect())
        .collect();
    Instance::matrix(rows)
}

/// Graph joining every pair of points within `r` of each other.
pub fn unit_ball_graph(inst: &Instance, r: Radius) -> Graph {
    let n = inst.len();
    let edges = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .filter(|&(i, j)| inst.is_close(i, j, r));
    Graph::new(n, edges).expect("pairs are in range and distinct")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(inst: &Instance) -> Vec<Vec<f64>> {
        let n = inst.len();
        (0..n)
            .map(|i| (0..n).map(|j| inst.dist(i, j)).collect())
            .collect()
    }

    #[test]
    fn hop_metric_examples() {
        let p3 = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            rows(&graph_to_hop_metric(&p3).unwrap()),
            vec![
                vec![0.0, 1.0, 2.0],
                vec![1.0, 0.0, 1.0],
                vec![2.0, 1.0, 0.0]
            ]
        );
        let k3 = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let m = graph_to_hop_metric(&k3).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(m.dist(i, j), if i == j { 0.0 } else { 1.0 });
            }
        }
        let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let m = graph_to_hop_metric(&star).unwrap();
        assert_eq!(m.dist(1, 2), 2.0);
        assert_eq!(m.dist(0, 3), 1.0);
        assert!(matches!(m, Instance::ExplicitMetric(_)));

        let split = Graph::new(3, [(0, 1)]).unwrap();
        assert!(graph_to_hop_metric(&split).is_err());
    }

    #[test]
    fn unit_ball_examples() {
        let sq = Instance::from_xy(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)]).unwrap();
        let c4 = unit_ball_graph(&sq, Radius::new(1.0).unwrap());
        assert_eq!(
            c4.edges().collect::<Vec<_>>(),
            vec![(0, 1), (0, 2), (1, 3), (2, 3)]
        );
        let k4 = unit_ball_graph(&sq, Radius::new(2f64.sqrt()).unwrap());
        assert_eq!(k4.edge_count(), 6);
        let empty = unit_ball_graph(&sq, Radius::new(0.5).unwrap());
        assert_eq!(empty.edge_count(), 0);
    }

    #[test]
    fn round_trip_on_small_graphs() {
        let cycle = Graph::new(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        let back = unit_ball_graph(
            &graph_to_hop_metric(&cycle).unwrap(),
            Radius::new(1.0).unwrap(),
        );
        assert_eq!(back, cycle);
    }
}
