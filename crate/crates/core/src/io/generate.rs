//! Seeded instance generators. Every generator is a pure function of its
//! arguments.

use std::collections::HashSet;
use std::f64::consts::TAU;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::metric::{Graph, Instance, Point2D};
use crate::reductions::{GridPoint, PlanarOrthogonalGraph};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` points uniform in `[0, box_side]^2`.
pub fn gen_random_points(n: usize, box_side: f64, seed: u64) -> Result<Instance> {
    if n == 0 {
        return Err(Error::InvalidParameter("need at least one point".into()));
    }
    if !(box_side.is_finite() && box_side >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "box side {box_side} must be finite and nonnegative"
        )));
    }
    let mut rng = rng(seed);
    let pts = (0..n)
        .map(|_| Point2D::new(rng.gen::<f64>() * box_side, rng.gen::<f64>() * box_side))
        .collect();
    Instance::points(pts)
}

/// `k_clusters` discs of radius `cluster_radius`, centred on a square
/// lattice of spacing `separation`, each holding `pts_per_cluster` uniform
/// points. Points are listed cluster by cluster.
pub fn gen_clustered(
    k_clusters: usize,
    pts_per_cluster: usize,
    cluster_radius: f64,
    separation: f64,
    seed: u64,
) -> Result<Instance> {
    if k_clusters == 0 || pts_per_cluster == 0 {
        return Err(Error::InvalidParameter(
            "cluster count and size must be positive".into(),
        ));
    }
    if !(cluster_radius.is_finite() && cluster_radius >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "cluster radius {cluster_radius} must be finite and nonnegative"
        )));
    }
    if k_clusters > 1 && !(separation.is_finite() && separation > 2.0 * cluster_radius) {
        return Err(Error::InvalidParameter(format!(
            "separation {separation} must exceed twice the cluster radius {cluster_radius}"
        )));
    }
    let columns = (k_clusters as f64).sqrt().ceil() as usize;
    let mut rng = rng(seed);
    let mut pts = Vec::with_capacity(k_clusters * pts_per_cluster);
    for c in 0..k_clusters {
        let (cx, cy) = if k_clusters > 1 {
            (
                (c % columns) as f64 * separation,
                (c / columns) as f64 * separation,
            )
        } else {
            (0.0, 0.0)
        };
        for _ in 0..pts_per_cluster {
            let rho = cluster_radius * rng.gen::<f64>().sqrt();
            let theta = rng.gen::<f64>() * TAU;
            pts.push(Point2D::new(cx + rho * theta.cos(), cy + rho * theta.sin()));
        }
    }
    Instance::points(pts)
}

/// A connected G(n, p) sample, resampling until connected.
pub fn gen_connected_graph(n: usize, edge_probability: f64, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameter("need at least one vertex".into()));
    }
    if !(0.0..=1.0).contains(&edge_probability) || (n > 1 && edge_probability == 0.0) {
        return Err(Error::InvalidParameter(format!(
            "edge probability {edge_probability} cannot give a connected graph"
        )));
    }
    let mut rng = rng(seed);
    loop {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                if rng.gen::<f64>() < edge_probability {
                    edges.push((a, b));
                }
            }
        }
        let g = Graph::new(n, edges)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
}

/// Axis-parallel path from `a` to `b`, straight or with one bend.
fn l_path(a: GridPoint, b: GridPoint, horizontal_first: bool) -> Vec<GridPoint> {
    let corner = if horizontal_first {
        (b.0, a.1)
    } else {
        (a.0, b.1)
    };
    let mut path = vec![a];
    for target in [corner, b] {
        let mut cur = *path.last().unwrap();
        while cur != target {
            cur = (
                cur.0 + (target.0 - cur.0).signum(),
                cur.1 + (target.1 - cur.1).signum(),
            );
            path.push(cur);
        }
    }
    path
}

/// A random planar orthogonal drawing on a `width x height` grid: `vertices`
/// distinct grid points, then up to `edge_attempts` tries to join a random
/// pair by a straight or one-bend path avoiding everything drawn so far.
pub fn gen_planar_orthogonal(
    width: i64,
    height: i64,
    vertices: usize,
    edge_attempts: usize,
    seed: u64,
) -> Result<PlanarOrthogonalGraph> {
    if width <= 0 || height <= 0 || vertices as i64 > width * height {
        return Err(Error::InvalidParameter(format!(
            "cannot place {vertices} vertices on a {width}x{height} grid"
        )));
    }
    let mut rng = rng(seed);
    let mut cells: Vec<GridPoint> = (0..width)
        .flat_map(|x| (0..height).map(move |y| (x, y)))
        .collect();
    cells.shuffle(&mut rng);
    cells.truncate(vertices);
    cells.sort_unstable();
    let vertex_set: HashSet<GridPoint> = cells.iter().copied().collect();

    let mut occupied: HashSet<GridPoint> = HashSet::new();
    let mut joined: HashSet<(usize, usize)> = HashSet::new();
    let mut paths = Vec::new();
    for _ in 0..edge_attempts {
        if vertices < 2 {
            break;
        }
        let a = rng.gen_range(0..vertices);
        let b = rng.gen_range(0..vertices);
        if a == b || joined.contains(&(a.min(b), a.max(b))) {
            continue;
        }
        let path = l_path(cells[a], cells[b], rng.gen());
        let interior = &path[1..path.len() - 1];
        if interior
            .iter()
            .any(|p| vertex_set.contains(p) || occupied.contains(p))
        {
            continue;
        }
        occupied.extend(interior.iter().copied());
        joined.insert((a.min(b), a.max(b)));
        paths.push(path);
    }
    PlanarOrthogonalGraph::new(cells, paths)
}
