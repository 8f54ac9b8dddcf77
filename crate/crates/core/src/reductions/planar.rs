//! Graphs drawn on the integer grid with axis-parallel edge paths.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::metric::Graph;

pub type GridPoint = (i64, i64);

/// A planar orthogonal drawing: vertices on grid points, each edge a path
/// of unit grid steps. Vertices are ordered lexicographically by
/// coordinate, and every stored path runs from its lower to its higher
/// endpoint in that order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarOrthogonalGraph {
    vertices: Vec<GridPoint>,
    paths: Vec<Vec<GridPoint>>,
    endpoints: Vec<(usize, usize)>,
    incident: Vec<Vec<usize>>,
}

fn is_unit_step(a: GridPoint, b: GridPoint) -> bool {
    (a.0 - b.0).abs() + (a.1 - b.1).abs() == 1
}

impl PlanarOrthogonalGraph {
    /// Validates a drawing. Paths may be given in either direction.
    pub fn new(vertices: Vec<GridPoint>, paths: Vec<Vec<GridPoint>>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidPlanarGraph(msg));
        let mut index: HashMap<GridPoint, usize> = HashMap::with_capacity(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            if index.insert(v, i).is_some() {
                return bad(format!("vertex coordinate {v:?} appears twice"));
            }
        }

        let mut interior_owner: HashMap<GridPoint, usize> = HashMap::new();
        let mut pairs: HashSet<(usize, usize)> = HashSet::new();
        let mut canonical = Vec::with_capacity(paths.len());
        let mut endpoints = Vec::with_capacity(paths.len());
        let mut incident = vec![Vec::new(); vertices.len()];

        for (e, path) in paths.into_iter().enumerate() {
            if path.len() < 2 {
                return bad(format!("edge {e} has fewer than two grid points"));
            }
            if let Some(w) = path.windows(2).position(|w| !is_unit_step(w[0], w[1])) {
                return bad(format!(
                    "edge {e} steps from {:?} to {:?}, which is not a unit grid step",
                    path[w],
                    path[w + 1]
                ));
            }
            let (first, last) = (path[0], path[path.len() - 1]);
            let (Some(&a), Some(&b)) = (index.get(&first), index.get(&last)) else {
                return bad(format!("edge {e} does not start and end at vertices"));
            };
            if a == b {
                return bad(format!("edge {e} is a loop at vertex {a}"));
            }
            let mut seen = HashSet::with_capacity(path.len());
            for &p in &path {
                if !seen.insert(p) {
                    return bad(format!("edge {e} visits {p:?} twice"));
                }
            }
            for &p in &path[1..path.len() - 1] {
                if index.contains_key(&p) {
                    return bad(format!("edge {e} passes through vertex at {p:?}"));
                }
                if let Some(other) = interior_owner.insert(p, e) {
                    return bad(format!("edges {other} and {e} share grid point {p:?}"));
                }
            }
            let key = (a.min(b), a.max(b));
            if !pairs.insert(key) {
                return bad(format!("vertices {} and {} are joined twice", key.0, key.1));
            }
            // lexicographic coordinate order decides the direction
            let (u, v, path) = if vertices[a] < vertices[b] {
                (a, b, path)
            } else {
                let mut rev = path;
                rev.reverse();
                (b, a, rev)
            };
            incident[u].push(e);
            incident[v].push(e);
            canonical.push(path);
            endpoints.push((u, v));
        }

        if let Some(v) = incident.iter().position(|list| list.len() > 4) {
            return bad(format!("vertex {v} has degree {} > 4", incident[v].len()));
        }

        Ok(Self {
            vertices,
            paths: canonical,
            endpoints,
            incident,
        })
    }

    pub fn vertices(&self) -> &[GridPoint] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.paths.len()
    }

    /// Path of edge `e`, from its lower to its higher endpoint.
    pub fn path(&self, e: usize) -> &[GridPoint] {
        &self.paths[e]
    }

    pub fn paths(&self) -> &[Vec<GridPoint>] {
        &self.paths
    }

    /// `(lower, higher)` endpoint vertex indices of edge `e`.
    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.endpoints[e]
    }

    /// Edges at `v`, ascending.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incident[v].len()
    }

    /// Bounding box area of the drawing.
    pub fn drawing_area(&self) -> u64 {
        let all = self.vertices.iter().chain(self.paths.iter().flatten());
        let (mut lo, mut hi) = ((i64::MAX, i64::MAX), (i64::MIN, i64::MIN));
        for &(x, y) in all {
            lo = (lo.0.min(x), lo.1.min(y));
            hi = (hi.0.max(x), hi.1.max(y));
        }
        if lo.0 > hi.0 {
            return 0;
        }
        ((hi.0 - lo.0) as u64 + 1) * ((hi.1 - lo.1) as u64 + 1)
    }

    /// The abstract graph on vertex indices.
    pub fn to_graph(&self) -> Graph {
        Graph::new(self.vertices.len(), self.endpoints.iter().copied())
            .expect("validated endpoints are in range and loop-free")
    }

    pub fn is_proper_coloring(&self, colors: &[usize]) -> bool {
        colors.len() == self.vertices.len()
            && self.endpoints.iter().all(|&(u, v)| colors[u] != colors[v])
    }

    /// Every proper coloring with `k` colors, in lexicographic order.
    pub fn proper_colorings(&self, k: usize) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut out = Vec::new();
        let mut colors = vec![0; n];
        fn extend(
            g: &PlanarOrthogonalGraph,
            k: usize,
            v: usize,
            colors: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if v == colors.len() {
                out.push(colors.clone());
                return;
            }
            for c in 0..k {
                let clash = g.incident[v].iter().any(|&e| {
                    let (a, b) = g.endpoints[e];
                    let other = if a == v { b } else { a };
                    other < v && colors[other] == c
                });
                if !clash {
                    colors[v] = c;
                    extend(g, k, v + 1, colors, out);
                }
            }
        }
        extend(self, k, 0, &mut colors, &mut out);
        out
    }
}

/// Small drawings used as fixtures for the gadget.
pub mod fixtures {
    use super::*;

    /// Two vertices joined by one unit horizontal edge.
    pub fn single_edge() -> PlanarOrthogonalGraph {
        PlanarOrthogonalGraph::new(vec![(0, 0), (1, 0)], vec![vec![(0, 0), (1, 0)]]).unwrap()
    }

    pub fn isolated_vertex() -> PlanarOrthogonalGraph {
        PlanarOrthogonalGraph::new(vec![(0, 0)], vec![]).unwrap()
    }

    /// Three vertices on a line, with an upward bend in the second edge.
    pub fn path() -> PlanarOrthogonalGraph {
        PlanarOrthogonalGraph::new(
            vec![(0, 0), (1, 0), (2, 1)],
            vec![vec![(0, 0), (1, 0)], vec![(1, 0), (2, 0), (2, 1)]],
        )
        .unwrap()
    }

    pub fn four_cycle() -> PlanarOrthogonalGraph {
        PlanarOrthogonalGraph::new(
            vec![(0, 0), (1, 0), (1, 1), (0, 1)],
            vec![
                vec![(0, 0), (1, 0)],
                vec![(1, 0), (1, 1)],
                vec![(1, 1), (0, 1)],
                vec![(0, 1), (0, 0)],
            ],
        )
        .unwrap()
    }

    /// A triangle with one bent edge.
    pub fn triangle() -> PlanarOrthogonalGraph {
        PlanarOrthogonalGraph::new(
            vec![(0, 0), (2, 0), (0, 2)],
            vec![
                vec![(0, 0), (1, 0), (2, 0)],
                vec![(0, 0), (0, 1), (0, 2)],
                vec![(2, 0), (2, 1), (2, 2), (1, 2), (0, 2)],
            ],
        )
        .unwrap()
    }

    /// A degree-3 centre with three leaves in different directions.
    pub fn star() -> PlanarOrthogonalGraph {
        PlanarOrthogonalGraph::new(
            vec![(1, 1), (0, 1), (2, 1), (1, 3)],
            vec![
                vec![(1, 1), (0, 1)],
                vec![(1, 1), (2, 1)],
                vec![(1, 1), (1, 2), (1, 3)],
            ],
        )
        .unwrap()
    }

    pub fn all() -> BTreeMap<&'static str, PlanarOrthogonalGraph> {
        BTreeMap::from([
            ("single-edge", single_edge()),
            ("path", path()),
            ("four-cycle", four_cycle()),
            ("triangle", triangle()),
            ("star", star()),
            ("isolated-vertex", isolated_vertex()),
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_direction_and_degrees() {
        let g = PlanarOrthogonalGraph::new(
            vec![(3, 0), (0, 0)],
            vec![vec![(3, 0), (2, 0), (1, 0), (0, 0)]],
        )
        .unwrap();
        assert_eq!(g.endpoints(0), (1, 0));
        assert_eq!(g.path(0).first(), Some(&(0, 0)));
        assert_eq!(g.degree(0), 1);
        assert_eq!(g.drawing_area(), 4);
    }

    #[test]
    fn rejects_malformed_drawings() {
        let v = vec![(0, 0), (2, 0), (1, 1)];
        let cases: Vec<Vec<Vec<GridPoint>>> = vec![
            vec![vec![(0, 0), (2, 0)]],
            vec![vec![(0, 0)]],
            vec![vec![(0, 0), (1, 0), (1, 1), (1, 0), (2, 0)]],
            vec![vec![(0, 0), (1, 0), (1, 1), (2, 1), (2, 0)]],
            vec![
                vec![(0, 0), (1, 0), (2, 0)],
                vec![(1, 1), (1, 0), (1, -1), (2, -1), (2, 0)],
            ],
            vec![
                vec![(0, 0), (1, 0), (2, 0)],
                vec![(0, 0), (0, -1), (1, -1), (2, -1), (2, 0)],
            ],
            vec![vec![(0, 0), (0, 1), (0, 0)]],
        ];
        for paths in cases {
            assert!(
                PlanarOrthogonalGraph::new(v.clone(), paths.clone()).is_err(),
                "{paths:?}"
            );
        }
        assert!(PlanarOrthogonalGraph::new(vec![(0, 0), (0, 0)], vec![]).is_err());
    }

    #[test]
    fn rejects_degree_five() {
        // five neighbours cannot fit around one grid point
        let err = PlanarOrthogonalGraph::new(
            vec![(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1), (2, 2)],
            vec![
                vec![(0, 0), (1, 0)],
                vec![(0, 0), (-1, 0)],
                vec![(0, 0), (0, 1)],
                vec![(0, 0), (0, -1)],
                vec![(0, 0), (1, 0), (1, 1), (2, 1), (2, 2)],
            ],
        );
        assert!(err.is_err());
    }

    #[test]
    fn fixtures_are_valid_and_colorable() {
        for (name, g) in fixtures::all() {
            let colorings = g.proper_colorings(3);
            assert!(!colorings.is_empty(), "{name}");
            assert!(colorings.iter().all(|c| g.is_proper_coloring(c)));
        }
        assert_eq!(fixtures::triangle().proper_colorings(3).len(), 6);
        assert_eq!(fixtures::four_cycle().proper_colorings(3).len(), 18);
        assert_eq!(fixtures::triangle().proper_colorings(2).len(), 0);
    }
}
