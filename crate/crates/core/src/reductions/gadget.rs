//! Point-set gadget turning 3-coloring of a planar orthogonal drawing into a
//! 3-solidarity cover at any radius in `[1, sqrt 2)`.
//!
//! The drawing is scaled by 6. Each vertex contributes its grid point, plus
//! two companions when its degree is at most 1. Each edge path
//! `e_1 = u, ..., e_k = v` contributes `e_2, e_3, e_5, ..., e_{k-1}`; the
//! missing `e_4` is replaced by an anchor triple beside it. Every pair of
//! output points is either within distance 1 or at least `sqrt 2` apart.

use std::f64::consts::SQRT_2;

use crate::error::{Error, Result};
use crate::metric::{Instance, Point2D, Radius};
use crate::verify::{is_solidarity_cover, Partition};

use super::planar::{GridPoint, PlanarOrthogonalGraph};

const SCALE: i64 = 6;

/// What a gadget point stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PointRole {
    Vertex(usize),
    /// One of the two extra points of a vertex of degree at most 1;
    /// `which` is 1 or 2.
    Companion {
        vertex: usize,
        which: u8,
    },
    /// Anchor on the lower endpoint's side of `e_4`.
    AnchorU {
        edge: usize,
    },
    /// Anchor on the higher endpoint's side of `e_4`.
    AnchorV {
        edge: usize,
    },
    /// Anchor opposite `e_4`, adjacent to both other anchors.
    AnchorUV {
        edge: usize,
    },
    /// Path point `e_k` of `edge` (1-based `k`, scaled path).
    Path {
        edge: usize,
        k: usize,
    },
}

impl PointRole {
    pub fn label(&self) -> &'static str {
        match self {
            PointRole::Vertex(_) => "vertex",
            PointRole::Companion { .. } => "companion",
            PointRole::AnchorU { .. } | PointRole::AnchorV { .. } | PointRole::AnchorUV { .. } => {
                "anchor"
            }
            PointRole::Path { .. } => "path",
        }
    }
}

/// Point indices belonging to one edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgePoints {
    /// Length `k_uv` of the scaled path.
    pub path_len: usize,
    /// `path[k]` is the index of `e_k`, for `k` in `2..k_uv` except 4.
    pub path: Vec<Option<usize>>,
    pub anchor_u: usize,
    pub anchor_v: usize,
    pub anchor_uv: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GadgetOutput {
    graph: PlanarOrthogonalGraph,
    instance: Instance,
    roles: Vec<PointRole>,
    vertex_index: Vec<usize>,
    companions: Vec<Option<(usize, usize)>>,
    edges: Vec<EdgePoints>,
}

impl GadgetOutput {
    pub fn graph(&self) -> &PlanarOrthogonalGraph {
        &self.graph
    }

    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    pub fn points(&self) -> &[Point2D] {
        self.instance
            .as_points()
            .expect("gadget instances are planar")
    }

    pub fn roles(&self) -> &[PointRole] {
        &self.roles
    }

    /// Point index of each graph vertex.
    pub fn vertex_index(&self) -> &[usize] {
        &self.vertex_index
    }

    pub fn edge_points(&self, e: usize) -> &EdgePoints {
        &self.edges[e]
    }
}

fn scaled_path(path: &[GridPoint]) -> Vec<GridPoint> {
    let mut out = vec![(path[0].0 * SCALE, path[0].1 * SCALE)];
    for w in path.windows(2) {
        let (dx, dy) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
        for _ in 0..SCALE {
            let &(x, y) = out.last().unwrap();
            out.push((x + dx, y + dy));
        }
    }
    out
}

fn at(p: GridPoint) -> Point2D {
    Point2D::new(p.0 as f64, p.1 as f64)
}

/// `offset` rotated so that `+x` maps onto `dir`.
fn rotate(offset: (f64, f64), dir: (i64, i64)) -> (f64, f64) {
    let (dx, dy) = (dir.0 as f64, dir.1 as f64);
    (offset.0 * dx - offset.1 * dy, offset.0 * dy + offset.1 * dx)
}

fn shifted(base: GridPoint, offset: (f64, f64)) -> Point2D {
    Point2D::new(base.0 as f64 + offset.0, base.1 as f64 + offset.1)
}

/// Builds the point set for a drawing.
#[allow(clippy::needless_range_loop)]
pub fn coloring_gadget(g: &PlanarOrthogonalGraph) -> Result<GadgetOutput> {
    let scaled: Vec<Vec<GridPoint>> = g.paths().iter().map(|p| scaled_path(p)).collect();
    let mut points = Vec::new();
    let mut roles = Vec::new();

    let vertex_index: Vec<usize> = (0..g.vertex_count())
        .map(|v| {
            let (x, y) = g.vertices()[v];
            points.push(at((x * SCALE, y * SCALE)));
            roles.push(PointRole::Vertex(v));
            points.len() - 1
        })
        .collect();

    let mut companions = vec![None; g.vertex_count()];
    for v in 0..g.vertex_count() {
        if g.degree(v) >= 2 {
            continue;
        }
        let (x, y) = g.vertices()[v];
        let base = (x * SCALE, y * SCALE);
        // direction in which the single edge leaves, rightward if isolated
        let dir = match g.incident_edges(v).first() {
            Some(&e) => {
                let path = &scaled[e];
                let next = if g.endpoints(e).0 == v {
                    path[1]
                } else {
                    path[path.len() - 2]
                };
                (next.0 - base.0, next.1 - base.1)
            }
            None => (1, 0),
        };
        let first = points.len();
        points.push(shifted(base, rotate((-1.0, 0.0), dir)));
        roles.push(PointRole::Companion {
            vertex: v,
            which: 1,
        });
        points.push(shifted(base, rotate((-0.5, 0.5), dir)));
        roles.push(PointRole::Companion {
            vertex: v,
            which: 2,
        });
        companions[v] = Some((first, first + 1));
    }

    let mut edges = Vec::with_capacity(g.edge_count());
    for (e, path) in scaled.iter().enumerate() {
        let k_uv = path.len();
        // 1-based: e_k = path[k - 1]
        let e3 = path[2];
        let e4 = path[3];
        let e5 = path[4];
        let dir = (e4.0 - e3.0, e4.1 - e3.1);
        if (e5.0 - e4.0, e5.1 - e4.1) != dir {
            return Err(Error::InvalidPlanarGraph(format!(
                "edge {e}: fourth scaled path point is a corner"
            )));
        }
        let normal = (-dir.1, dir.0);
        let half = |along: f64, across: f64| {
            shifted(
                e4,
                (
                    along * dir.0 as f64 + across * normal.0 as f64,
                    along * dir.1 as f64 + across * normal.1 as f64,
                ),
            )
        };
        let anchor_u = points.len();
        points.push(half(-0.5, 0.5));
        roles.push(PointRole::AnchorU { edge: e });
        points.push(half(0.5, 0.5));
        roles.push(PointRole::AnchorV { edge: e });
        points.push(half(0.0, 1.0));
        roles.push(PointRole::AnchorUV { edge: e });

        let mut path_index = vec![None; k_uv + 1];
        for k in (2..k_uv).filter(|&k| k != 4) {
            path_index[k] = Some(points.len());
            points.push(at(path[k - 1]));
            roles.push(PointRole::Path { edge: e, k });
        }
        edges.push(EdgePoints {
            path_len: k_uv,
            path: path_index,
            anchor_u,
            anchor_v: anchor_u + 1,
            anchor_uv: anchor_u + 2,
        });
    }

    Ok(GadgetOutput {
        graph: g.clone(),
        instance: Instance::points(points)?,
        roles,
        vertex_index,
        companions,
        edges,
    })
}

/// The point adjacent to vertex `v` on edge `e`.
fn first_edge_point(out: &GadgetOutput, v: usize, e: usize) -> usize {
    let ep = &out.edges[e];
    let k = if out.graph.endpoints(e).0 == v {
        2
    } else {
        ep.path_len - 1
    };
    ep.path[k].expect("first edge points exist")
}

fn others(c: usize) -> [usize; 2] {
    match c {
        0 => [1, 2],
        1 => [0, 2],
        _ => [0, 1],
    }
}

fn third(a: usize, b: usize) -> usize {
    3 - a - b
}

fn fully_covered(balls: &[Vec<usize>], assign: &[Option<usize>], p: usize) -> bool {
    let mut seen = [false; 3];
    for &q in &balls[p] {
        if let Some(s) = assign[q] {
            seen[s] = true;
        }
    }
    seen.iter().all(|&b| b)
}

/// Turns a proper 3-coloring of the source drawing into a 3-solidarity
/// 1-cover of the gadget.
pub fn cover_from_coloring(out: &GadgetOutput, tau: &[usize]) -> Result<Partition> {
    let g = &out.graph;
    if tau.len() != g.vertex_count() {
        return Err(Error::InvalidColoring(format!(
            "coloring has {} entries, graph has {} vertices",
            tau.len(),
            g.vertex_count()
        )));
    }
    if let Some(&c) = tau.iter().find(|&&c| c >= 3) {
        return Err(Error::InvalidColoring(format!(
            "color {c} is not one of 0, 1, 2"
        )));
    }
    if !g.is_proper_coloring(tau) {
        return Err(Error::InvalidColoring(
            "adjacent vertices share a color".into(),
        ));
    }

    let n = out.instance.len();
    let one = Radius::new(1.0)?;
    let balls: Vec<Vec<usize>> = (0..n)
        .map(|p| out.instance.ball_unchecked(p, one))
        .collect();
    let mut assign: Vec<Option<usize>> = vec![None; n];

    for v in 0..g.vertex_count() {
        assign[out.vertex_index[v]] = Some(tau[v]);
        let rest = others(tau[v]);
        if let Some((p1, p2)) = out.companions[v] {
            assign[p1] = Some(rest[0]);
            assign[p2] = Some(rest[1]);
        } else {
            for (&e, &c) in g.incident_edges(v).iter().zip(rest.iter()) {
                assign[first_edge_point(out, v, e)] = Some(c);
            }
        }
    }

    for (e, ep) in out.edges.iter().enumerate() {
        let (u, v) = g.endpoints(e);
        let (cu, cv) = (tau[u], tau[v]);
        assign[ep.anchor_u] = Some(cu);
        assign[ep.anchor_v] = Some(cv);
        assign[ep.anchor_uv] = Some(third(cu, cv));

        let k_uv = ep.path_len;
        let interior: Vec<usize> = (5..=k_uv.saturating_sub(4)).collect();
        let free: Vec<usize> = (2..k_uv)
            .filter(|&k| k != 4 && !interior.contains(&k))
            .map(|k| ep.path[k].expect("path point"))
            .filter(|&p| assign[p].is_none())
            .collect();
        let mut checked: Vec<usize> = ep.path.iter().flatten().copied().collect();
        checked.extend([ep.anchor_u, ep.anchor_v, ep.anchor_uv]);
        checked.push(out.vertex_index[u]);
        checked.push(out.vertex_index[v]);

        let mut solved = false;
        'outer: for swap in [false, true] {
            let [mut q, mut r] = others(cv);
            if swap {
                std::mem::swap(&mut q, &mut r);
            }
            for &k in &interior {
                let p = ep.path[k].expect("path point");
                assign[p] = Some(match (k - 4) % 3 {
                    0 => cv,
                    1 => q,
                    _ => r,
                });
            }
            let combos = 3usize.pow(free.len() as u32);
            for code in 0..combos {
                let mut rest = code;
                for &p in free.iter().rev() {
                    assign[p] = Some(rest % 3);
                    rest /= 3;
                }
                if checked.iter().all(|&p| fully_covered(&balls, &assign, p)) {
                    solved = true;
                    break 'outer;
                }
            }
        }
        if !solved {
            return Err(Error::GadgetAssignment(format!(
                "no assignment of the free path points of edge {e} covers its neighbourhood"
            )));
        }
    }

    let assignment = assign
        .iter()
        .enumerate()
        .map(|(p, s)| {
            s.ok_or_else(|| Error::GadgetAssignment(format!("point {p} left unassigned")))
                .map(Some)
        })
        .collect::<Result<Vec<_>>>()?;
    let partition = Partition::new(3, assignment)?;
    if !is_solidarity_cover(&out.instance, &partition, one) {
        return Err(Error::GadgetAssignment(
            "constructed partition is not a 3-solidarity 1-cover".into(),
        ));
    }
    Ok(partition)
}

/// Reads a proper 3-coloring off a 3-solidarity `r`-cover of the gadget,
/// `1 <= r < sqrt 2`.
pub fn coloring_from_cover(out: &GadgetOutput, p: &Partition, r: Radius) -> Result<Vec<usize>> {
    if !(1.0..SQRT_2).contains(&r.value()) {
        return Err(Error::InvalidParameter(format!(
            "radius {r} outside [1, sqrt 2)"
        )));
    }
    if p.m() != 3 {
        return Err(Error::InvalidPartition(format!(
            "expected 3 subsets, got {}",
            p.m()
        )));
    }
    p.check_size(&out.instance)?;
    let colors = out
        .vertex_index
        .iter()
        .enumerate()
        .map(|(v, &idx)| {
            p.subset_of(idx)
                .ok_or_else(|| Error::InvalidPartition(format!("vertex {v} is unassigned")))
        })
        .collect::<Result<Vec<_>>>()?;
    if !is_solidarity_cover(&out.instance, p, r) {
        return Err(Error::InvalidPartition(format!(
            "partition is not a 3-solidarity cover at radius {r}"
        )));
    }
    if !out.graph.is_proper_coloring(&colors) {
        return Err(Error::InvalidColoring(
            "cover induced an improper coloring".into(),
        ));
    }
    Ok(colors)
}
