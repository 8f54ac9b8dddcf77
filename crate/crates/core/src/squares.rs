//! Grid-based bicriteria scheme for planar instances.
//!
//! The bounding box of the points is cut into axis-parallel squares of
//! diameter `(beta - 1) r`. Any circle of radius `r` meets at most
//! `f(r, (beta - 1) r)` of them, so if every point has `m` disjoint
//! representatives within `r`, some square met by its circle holds at least
//! `m / f` points. Dealing the points of every square round-robin over
//! `m' = floor(m / f)` subsets therefore yields an `m'`-solidarity cover at
//! radius `beta * r`. The result is self-checked before being returned.

use std::collections::BTreeMap;
use std::f64::consts::SQRT_2;

use crate::error::{Error, Result};
use crate::metric::{Instance, Point2D, Radius};
use crate::scan::{first_success, RadiusSearch};
use crate::verify::{is_solidarity_cover, Partition};

const SNAP: f64 = 1e-9;

fn bound_from_ratio(ratio: f64) -> Result<u64> {
    if !ratio.is_finite() || ratio <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "square bound needs a positive finite radius ratio, got {ratio}"
        )));
    }
    let per_axis = 2.0 * SQRT_2 * ratio;
    let rounded = per_axis.round();
    let snapped = if (per_axis - rounded).abs() < SNAP {
        rounded
    } else {
        per_axis
    };
    let lines = snapped.ceil() as u64 + 1;
    Ok(lines * lines)
}

/// Upper bound on how many grid squares of diameter `r_prime` a circle of
/// radius `r` can meet: `(ceil(2 sqrt(2) r / r_prime) + 1)^2`. Exactly 16
/// when `r_prime == r`.
pub fn max_square_intersections(r: Radius, r_prime: Radius) -> Result<u64> {
    if r.value() <= 0.0 || r_prime.value() <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "square bound needs positive radii, got r = {r}, r' = {r_prime}"
        )));
    }
    bound_from_ratio(r.value() / r_prime.value())
}

/// Number of closed grid squares of side `cell_side`, anchored at `origin`,
/// that a closed disc meets.
pub fn cells_meeting_disc(origin: Point2D, cell_side: f64, center: Point2D, radius: f64) -> usize {
    let slack = 1e-9 * cell_side.max(radius);
    let lo_x = ((center.x - radius - origin.x) / cell_side).floor() as i64 - 1;
    let hi_x = ((center.x + radius - origin.x) / cell_side).floor() as i64 + 1;
    let lo_y = ((center.y - radius - origin.y) / cell_side).floor() as i64 - 1;
    let hi_y = ((center.y + radius - origin.y) / cell_side).floor() as i64 + 1;
    let mut count = 0;
    for i in lo_x..=hi_x {
        let x0 = origin.x + i as f64 * cell_side;
        let dx = (x0 - center.x).max(0.0).max(center.x - (x0 + cell_side));
        for j in lo_y..=hi_y {
            let y0 = origin.y + j as f64 * cell_side;
            let dy = (y0 - center.y).max(0.0).max(center.y - (y0 + cell_side));
            if dx.hypot(dy) <= radius + slack {
                count += 1;
            }
        }
    }
    count
}

/// Partition size and radius factor of one bicriteria solve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BicriteriaParams {
    pub beta: f64,
    pub m: usize,
    /// Square bound `f(r, (beta - 1) r)`; depends only on `beta`.
    pub square_bound: u64,
    pub m_prime: usize,
}

impl BicriteriaParams {
    /// Fails when `beta <= 1`, `m == 0`, or `m` is below the square bound
    /// (so that `m' = 0` and the scheme cannot apply).
    pub fn new(m: usize, beta: f64) -> Result<Self> {
        if !(beta.is_finite() && beta > 1.0) {
            return Err(Error::InvalidParameter(format!(
                "beta must be a finite value greater than 1, got {beta}"
            )));
        }
        if m == 0 {
            return Err(Error::InvalidParameter(
                "partition size m must be at least 1".into(),
            ));
        }
        let square_bound = bound_from_ratio(1.0 / (beta - 1.0))?;
        let m_prime = (m as u64 / square_bound) as usize;
        if m_prime == 0 {
            return Err(Error::InvalidParameter(format!(
                "reduced partition size floor({m} / {square_bound}) is 0 for beta = {beta}"
            )));
        }
        Ok(Self {
            beta,
            m,
            square_bound,
            m_prime,
        })
    }
}

/// Axis-parallel grid over the bounding box of a point set.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SquareGrid {
    /// Left-bottom corner of the bounding box.
    pub origin: Point2D,
    /// Side length; zero means one cell per distinct location.
    pub cell_side: f64,
    pub columns: u64,
    pub rows: u64,
}

impl SquareGrid {
    /// Grid of squares with diameter `diameter` covering `points`.
    pub fn covering(points: &[Point2D], diameter: f64) -> Self {
        let (mut min_x, mut min_y) = (f64::INFINITY, f64::INFINITY);
        let (mut max_x, mut max_y) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in points {
            min_x = min_x.min(p.x);
            min_y = min_y.min(p.y);
            max_x = max_x.max(p.x);
            max_y = max_y.max(p.y);
        }
        let cell_side = diameter / SQRT_2;
        let span = |extent: f64| {
            if cell_side > 0.0 {
                ((extent / cell_side).ceil() as u64).max(1)
            } else {
                1
            }
        };
        Self {
            origin: Point2D::new(min_x, min_y),
            cell_side,
            columns: span(max_x - min_x),
            rows: span(max_y - min_y),
        }
    }

    /// Half-open cell `[x0, x0 + s) x [y0, y0 + s)` holding `p`; the last
    /// column and row are closed so the extreme points stay inside.
    pub fn cell_of(&self, p: &Point2D) -> (u64, u64) {
        let index = |offset: f64, limit: u64| {
            let raw = (offset / self.cell_side).floor();
            (raw.max(0.0) as u64).min(limit - 1)
        };
        (
            index(p.x - self.origin.x, self.columns),
            index(p.y - self.origin.y, self.rows),
        )
    }
}

/// Point indices grouped by cell, each group ascending.
fn group_by_cell(points: &[Point2D], grid: &SquareGrid) -> Vec<Vec<usize>> {
    if grid.cell_side > 0.0 {
        let mut cells: BTreeMap<(u64, u64), Vec<usize>> = BTreeMap::new();
        for (i, p) in points.iter().enumerate() {
            cells.entry(grid.cell_of(p)).or_default().push(i);
        }
        cells.into_values().collect()
    } else {
        let mut cells: BTreeMap<(u64, u64), Vec<usize>> = BTreeMap::new();
        for (i, p) in points.iter().enumerate() {
            cells
                .entry(((p.x + 0.0).to_bits(), (p.y + 0.0).to_bits()))
                .or_default()
                .push(i);
        }
        cells.into_values().collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SquaresOutcome {
    Cover {
        partition: Partition,
        grid: SquareGrid,
        params: BicriteriaParams,
    },
    /// The dealt partition failed the radius `beta * r` check.
    Infeasible {
        grid: SquareGrid,
        params: BicriteriaParams,
    },
}

impl SquaresOutcome {
    pub fn partition(&self) -> Option<&Partition> {
        match self {
            SquaresOutcome::Cover { partition, .. } => Some(partition),
            SquaresOutcome::Infeasible { .. } => None,
        }
    }

    pub fn into_partition(self) -> Option<Partition> {
        match self {
            SquaresOutcome::Cover { partition, .. } => Some(partition),
            SquaresOutcome::Infeasible { .. } => None,
        }
    }
}

fn planar(inst: &Instance) -> Result<&[Point2D]> {
    inst.as_points().ok_or_else(|| {
        Error::InvalidParameter(
            "the square-grid scheme only applies to planar point instances".into(),
        )
    })
}

fn check_m(inst: &Instance, m: usize) -> Result<()> {
    if m == 0 || m > inst.len() {
        return Err(Error::InvalidParameter(format!(
            "partition size m = {m} must lie in 1..={}",
            inst.len()
        )));
    }
    Ok(())
}

fn solve_with(
    inst: &Instance,
    points: &[Point2D],
    params: BicriteriaParams,
    r: Radius,
) -> Result<SquaresOutcome> {
    let grid = SquareGrid::covering(points, (params.beta - 1.0) * r.value());
    let mut assignment = vec![None; points.len()];
    for members in group_by_cell(points, &grid) {
        for (j, p) in members.into_iter().enumerate() {
            assignment[p] = Some(j % params.m_prime);
        }
    }
    let partition = Partition::new(params.m_prime, assignment)?;
    if is_solidarity_cover(inst, &partition, r.scaled(params.beta)?) {
        Ok(SquaresOutcome::Cover {
            partition,
            grid,
            params,
        })
    } else {
        Ok(SquaresOutcome::Infeasible { grid, params })
    }
}

/// One grid pass at radius `r`. A returned partition has `m'` subsets and
/// has been verified at radius `beta * r`.
pub fn squares_sc(inst: &Instance, m: usize, beta: f64, r: Radius) -> Result<SquaresOutcome> {
    let points = planar(inst)?;
    check_m(inst, m)?;
    let params = BicriteriaParams::new(m, beta)?;
    solve_with(inst, points, params, r)
}

/// Smallest candidate radius at which [`squares_sc`] succeeds.
pub fn min_radius_bicriteria(inst: &Instance, m: usize, beta: f64) -> Result<RadiusSearch> {
    min_radius_bicriteria_threaded(inst, m, beta, 1)
}

pub fn min_radius_bicriteria_threaded(
    inst: &Instance,
    m: usize,
    beta: f64,
    threads: usize,
) -> Result<RadiusSearch> {
    let points = planar(inst)?;
    check_m(inst, m)?;
    let params = BicriteriaParams::new(m, beta)?;
    let candidates = inst.candidate_radii();
    let found = first_success(&candidates, threads, |r| {
        solve_with(inst, points, params, r).map(SquaresOutcome::into_partition)
    })?;
    let (index, partition, scanned) = found.ok_or_else(|| {
        Error::InvalidParameter("no candidate radius admits a verified grid partition".into())
    })?;
    Ok(RadiusSearch {
        radius: candidates[index],
        partition,
        candidates_scanned: scanned,
        candidates_total: candidates.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn r(v: f64) -> Radius {
        Radius::new(v).unwrap()
    }

    /// Largest number of cells met over a lattice of disc centres covering
    /// one grid period. The lattice is shifted off the grid lines so that no
    /// sampled disc is exactly tangent to a cell.
    fn placement_search(radius: f64, cell_side: f64, steps: usize) -> usize {
        let origin = Point2D::new(0.0, 0.0);
        let shift = 0.5 + 1.0 / std::f64::consts::PI;
        let mut best = 0;
        for a in 0..steps {
            for b in 0..steps {
                let c = Point2D::new(
                    (a as f64 + shift) * cell_side / steps as f64,
                    (b as f64 + shift) * cell_side / steps as f64,
                );
                best = best.max(cells_meeting_disc(origin, cell_side, c, radius));
            }
        }
        best
    }

    #[test]
    fn bound_examples() {
        assert_eq!(max_square_intersections(r(1.0), r(1.0)).unwrap(), 16);
        assert_eq!(
            max_square_intersections(r(1.0), r(2.0 * SQRT_2)).unwrap(),
            4
        );
        assert_eq!(
            max_square_intersections(r(1.0), r(4.0 * SQRT_2)).unwrap(),
            4
        );
        assert!(max_square_intersections(r(0.0), r(1.0)).is_err());
        assert!(max_square_intersections(r(1.0), r(0.0)).is_err());
    }

    #[test]
    fn bound_examples_against_placement_search() {
        // diameter 2 sqrt 2 -> side 2; diameter 4 sqrt 2 -> side 4
        assert_eq!(placement_search(1.0, 2.0, 64), 4);
        assert_eq!(placement_search(1.0, 4.0, 64), 4);
        // sixteen needs the tangent configuration; generic discs stay below
        assert!(placement_search(1.0, 1.0 / SQRT_2, 64) <= 16);
    }

    #[test]
    fn bound_dominates_placement_search_for_assorted_ratios() {
        for &(radius, diameter) in &[(1.0, 0.7), (1.0, 1.3), (2.0, 1.0), (1.0, 3.0), (0.5, 2.2)] {
            let bound = max_square_intersections(r(radius), r(diameter)).unwrap() as usize;
            assert!(placement_search(radius, diameter / SQRT_2, 40) <= bound);
        }
    }

    #[test]
    fn origin_construction_meets_sixteen() {
        for radius in [0.3, 1.0, 7.5] {
            let side = radius / SQRT_2;
            let n =
                cells_meeting_disc(Point2D::new(0.0, 0.0), side, Point2D::new(0.0, 0.0), radius);
            assert_eq!(n, 16);
        }
    }

    #[test]
    fn random_placements_stay_within_sixteen() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..2000 {
            let c = Point2D::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            assert!(cells_meeting_disc(Point2D::new(0.0, 0.0), 1.0 / SQRT_2, c, 1.0) <= 16);
        }
    }

    #[test]
    fn params() {
        let p = BicriteriaParams::new(16, 2.0).unwrap();
        assert_eq!((p.square_bound, p.m_prime), (16, 1));
        assert_eq!(BicriteriaParams::new(33, 2.0).unwrap().m_prime, 2);
        assert!(BicriteriaParams::new(15, 2.0).is_err());
        assert!(BicriteriaParams::new(16, 1.0).is_err());
        assert!(BicriteriaParams::new(16, f64::NAN).is_err());
        assert_eq!(
            BicriteriaParams::new(4, 1.0 + 4.0 * SQRT_2)
                .unwrap()
                .m_prime,
            1
        );
    }

    #[test]
    fn grid_cells_are_a_function_of_position() {
        let pts = [
            Point2D::new(0.0, 0.0),
            Point2D::new(1.0, 0.0),
            Point2D::new(2.0, 2.0),
            Point2D::new(0.999, 1.0),
        ];
        let grid = SquareGrid::covering(&pts, SQRT_2);
        assert_eq!(grid.cell_side, 1.0);
        assert_eq!((grid.columns, grid.rows), (2, 2));
        assert_eq!(grid.cell_of(&pts[0]), (0, 0));
        assert_eq!(grid.cell_of(&pts[1]), (1, 0));
        // extreme corner falls into the closed last cell
        assert_eq!(grid.cell_of(&pts[2]), (1, 1));
        assert_eq!(grid.cell_of(&pts[3]), (0, 1));
    }

    fn disc_cluster(n: usize, diameter: f64, seed: u64) -> Instance {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts = (0..n)
            .map(|_| {
                let rho = 0.5 * diameter * rng.gen::<f64>().sqrt();
                let theta = rng.gen_range(0.0..std::f64::consts::TAU);
                Point2D::new(5.0 + rho * theta.cos(), -2.0 + rho * theta.sin())
            })
            .collect();
        Instance::points(pts).unwrap()
    }

    #[test]
    fn dense_disc_single_subset() {
        let inst = disc_cluster(32, 1.0, 7);
        let out = squares_sc(&inst, 16, 2.0, r(1.0)).unwrap();
        let p = out.partition().expect("verified partition");
        assert_eq!(p.m(), 1);
        assert_eq!(p.subsets()[0].len(), 32);
        assert!(is_solidarity_cover(&inst, p, r(2.0)));
    }

    #[test]
    fn fifteen_is_below_the_bound() {
        let inst = disc_cluster(32, 1.0, 7);
        assert!(matches!(
            squares_sc(&inst, 15, 2.0, r(1.0)),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            min_radius_bicriteria(&inst, 15, 2.0),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn rejects_non_planar_instances() {
        let m = Instance::matrix(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert!(squares_sc(&m, 1, 2.0, r(1.0)).is_err());
        let g = Instance::hop_graph(2, [(0, 1)]).unwrap();
        assert!(min_radius_bicriteria(&g, 1, 2.0).is_err());
    }

    #[test]
    fn sixteen_point_cluster_succeeds_at_its_radius() {
        let inst = disc_cluster(16, 0.9, 3);
        let out = squares_sc(&inst, 16, 2.0, r(0.9)).unwrap();
        assert!(out.partition().is_some());
    }

    #[test]
    fn min_radius_with_one_subset() {
        let inst = Instance::from_xy(&[(0.0, 0.0), (1.0, 0.0), (5.0, 5.0), (5.0, 6.0)]).unwrap();
        // the bound is at least 4 for every beta, so m = 1 never applies
        assert!(min_radius_bicriteria(&inst, 1, 100.0).is_err());
        let found = min_radius_bicriteria(&inst, 4, 1.0 + 4.0 * SQRT_2).unwrap();
        assert_eq!(found.radius, r(0.0));
        assert_eq!(found.partition.m(), 1);
        assert_eq!(found.candidates_scanned, 1);
    }

    #[test]
    fn min_radius_cluster_and_threads() {
        let inst = disc_cluster(32, 1.0, 7);
        let seq = min_radius_bicriteria(&inst, 16, 2.0).unwrap();
        assert!(seq.radius.value() <= 1.0 + 1e-9);
        assert!(is_solidarity_cover(
            &inst,
            &seq.partition,
            seq.radius.scaled(2.0).unwrap()
        ));
        let par = min_radius_bicriteria_threaded(&inst, 16, 2.0, 4).unwrap();
        assert_eq!(par.radius, seq.radius);
        assert_eq!(par.partition, seq.partition);
    }
}
