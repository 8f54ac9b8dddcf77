//! Finite metric spaces in three encodings: planar points, an explicit
//! distance matrix and a connected graph under the hop metric.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Absolute slack applied when comparing Euclidean distances against a
/// radius. Matrix and hop distances are compared exactly.
pub const EUCLIDEAN_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point2D {
    pub x: f64,
    pub y: f64,
}

impl Point2D {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dist(&self, other: &Point2D) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

/// A covering radius: finite and nonnegative.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Radius(f64);

impl Radius {
    pub const ZERO: Radius = Radius(0.0);

    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value >= 0.0 {
            // normalise -0.0
            Ok(Radius(value + 0.0))
        } else {
            Err(Error::InvalidRadius(value))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Multiplies by a nonnegative finite factor.
    pub fn scaled(self, factor: f64) -> Result<Self> {
        Radius::new(self.0 * factor)
    }
}

impl fmt::Display for Radius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Simple undirected graph. May be disconnected; use [`HopGraph`] when a
/// metric is needed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph on vertices `0..n`. Edges are unordered; duplicates
    /// collapse. Self-loops and out-of-range endpoints are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidInstance(format!(
                    "edge ({a}, {b}) has an endpoint outside 0..{n}"
                )));
            }
            if a == b {
                return Err(Error::InvalidInstance(format!("self-loop at vertex {a}")));
            }
            set.insert((a.min(b), a.max(b)));
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(a, b) in &set {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Self {
            n,
            edges: set,
            adjacency,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges as `(low, high)` pairs in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    /// `v` together with its neighbors, ascending.
    pub fn closed_neighborhood(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.adjacency[v].len() + 1);
        out.push(v);
        out.extend_from_slice(&self.adjacency[v]);
        out.sort_unstable();
        out
    }

    fn bfs(&self, source: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap_or(0);
            for &w in &self.adjacency[v] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.bfs(0).iter().all(Option::is_some)
    }
}

/// A connected graph together with its all-pairs hop distances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopGraph {
    graph: Graph,
    hops: Vec<Vec<u32>>,
}

impl HopGraph {
    pub fn new(graph: Graph) -> Result<Self> {
        if graph.n() == 0 {
            return Err(Error::InvalidInstance("graph has no vertices".into()));
        }
        let mut hops = Vec::with_capacity(graph.n());
        for source in 0..graph.n() {
            let row = graph
                .bfs(source)
                .into_iter()
                .collect::<Option<Vec<u32>>>()
                .ok_or_else(|| {
                    Error::InvalidInstance("graph is disconnected, hop metric undefined".into())
                })?;
            hops.push(row);
        }
        Ok(Self { graph, hops })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn hops(&self, i: usize, j: usize) -> u32 {
        self.hops[i][j]
    }
}

/// Validated planar point set (nonempty, finite coordinates).
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet(Vec<Point2D>);

impl PointSet {
    pub fn new(points: Vec<Point2D>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidInstance("point set is empty".into()));
        }
        if let Some(i) = points.iter().position(|p| !p.is_finite()) {
            return Err(Error::InvalidInstance(format!(
                "point {i} has a non-finite coordinate"
            )));
        }
        Ok(Self(points))
    }

    pub fn as_slice(&self) -> &[Point2D] {
        &self.0
    }
}

/// Validated distance matrix: square, symmetric, zero diagonal, positive
/// off-diagonal, triangle inequality.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceMatrix(Vec<Vec<f64>>);

impl DistanceMatrix {
    #[allow(clippy::needless_range_loop)]
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidInstance("distance matrix is empty".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidInstance(format!(
                    "distance matrix row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, &d) in row.iter().enumerate() {
                if !d.is_finite() {
                    return Err(Error::InvalidInstance(format!(
                        "distance matrix entry ({i}, {j}) is not finite"
                    )));
                }
                if i == j && d != 0.0 {
                    return Err(Error::InvalidInstance(format!(
                        "distance matrix diagonal entry ({i}, {i}) is {d}, expected 0"
                    )));
                }
                if i != j && d <= 0.0 {
                    return Err(Error::InvalidInstance(format!(
                        "distance matrix entry ({i}, {j}) is {d}, expected a positive distance"
                    )));
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::InvalidInstance(format!(
                        "distance matrix is asymmetric at ({i}, {j}): {} != {}",
                        rows[i][j], rows[j][i]
                    )));
                }
            }
        }
        // relative slack only absorbs decimal rounding in hand-written files
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let direct = rows[i][k];
                    let detour = rows[i][j] + rows[j][k];
                    if direct > detour + 1e-12 * detour.max(1.0) {
                        return Err(Error::InvalidInstance(format!(
                            "triangle inequality violated: d({i},{k}) = {direct} > d({i},{j}) + d({j},{k}) = {detour}"
                        )));
                    }
                }
            }
        }
        Ok(Self(rows))
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.0
    }
}

/// A finite metric space.
#[derive(Clone, Debug, PartialEq)]
pub enum Instance {
    Points2D(PointSet),
    ExplicitMetric(DistanceMatrix),
    HopGraph(HopGraph),
}

impl Instance {
    pub fn points(points: Vec<Point2D>) -> Result<Self> {
        PointSet::new(points).map(Instance::Points2D)
    }

    /// Convenience constructor from `(x, y)` tuples.
    pub fn from_xy(coords: &[(f64, f64)]) -> Result<Self> {
        Self::points(coords.iter().map(|&(x, y)| Point2D::new(x, y)).collect())
    }

    pub fn matrix(rows: Vec<Vec<f64>>) -> Result<Self> {
        DistanceMatrix::new(rows).map(Instance::ExplicitMetric)
    }

    pub fn hop_graph(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        HopGraph::new(Graph::new(n, edges)?).map(Instance::HopGraph)
    }

    pub fn len(&self) -> usize {
        match self {
            Instance::Points2D(p) => p.0.len(),
            Instance::ExplicitMetric(m) => m.0.len(),
            Instance::HopGraph(g) => g.graph.n(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn as_points(&self) -> Option<&[Point2D]> {
        match self {
            Instance::Points2D(p) => Some(p.as_slice()),
            _ => None,
        }
    }

    fn check_index(&self, index: usize) -> Result<()> {
        let n = self.len();
        if index < n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index, n })
        }
    }

    /// Distance between two points, with bounds checking.
    pub fn distance(&self, i: usize, j: usize) -> Result<f64> {
        self.check_index(i)?;
        self.check_index(j)?;
        Ok(self.dist(i, j))
    }

    /// Distance between two in-range points. Panics on a bad index.
    pub fn dist(&self, i: usize, j: usize) -> f64 {
        match self {
            Instance::Points2D(p) => p.0[i].dist(&p.0[j]),
            Instance::ExplicitMetric(m) => m.0[i][j],
            Instance::HopGraph(g) => f64::from(g.hops[i][j]),
        }
    }

    /// Slack used by [`Instance::within`] for this encoding.
    pub fn tolerance(&self) -> f64 {
        match self {
            Instance::Points2D(_) => EUCLIDEAN_TOLERANCE,
            _ => 0.0,
        }
    }

    /// `d <= r`, with the Euclidean slack where it applies.
    pub fn within(&self, d: f64, r: f64) -> bool {
        d <= r + self.tolerance()
    }

    pub fn is_close(&self, i: usize, j: usize, r: Radius) -> bool {
        self.within(self.dist(i, j), r.value())
    }

    /// All points within `r` of `center`, ascending.
    pub fn ball(&self, center: usize, r: Radius) -> Result<Vec<usize>> {
        self.check_index(center)?;
        Ok(self.ball_unchecked(center, r))
    }

    pub(crate) fn ball_unchecked(&self, center: usize, r: Radius) -> Vec<usize> {
        (0..self.len())
            .filter(|&u| u == center || self.is_close(u, center, r))
            .collect()
    }

    /// Sorted distinct pairwise distances, including 0.
    pub fn candidate_radii(&self) -> Vec<Radius> {
        let n = self.len();
        let mut values = Vec::with_capacity(n * n.saturating_sub(1) / 2 + 1);
        values.push(0.0);
        for i in 0..n {
            for j in (i + 1)..n {
                values.push(self.dist(i, j));
            }
        }
        values.sort_by(f64::total_cmp);
        let tol = self.tolerance();
        let mut out: Vec<Radius> = Vec::new();
        for v in values {
            match out.last() {
                Some(last) if v - last.value() <= tol => {}
                _ => out.push(Radius(v)),
            }
        }
        out
    }

    pub fn max_distance(&self) -> Radius {
        self.candidate_radii()
            .last()
            .copied()
            .unwrap_or(Radius::ZERO)
    }
}
