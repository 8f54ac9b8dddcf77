//! Farthest-point greedy partitioning.
//!
//! Centers are chosen by farthest-point traversal until the next candidate
//! lies within `2r` of the chosen set. The radius-`r` balls around the
//! centers are then pairwise disjoint; each ball must hold at least `m`
//! points, which are dealt round-robin to the `m` subsets. If an
//! `m`-solidarity-`r`-cover exists the greedy never fails, and whatever it
//! returns covers at radius `3r`.

use crate::error::{Error, Result};
use crate::metric::{Instance, Radius};
use crate::scan::{first_success, RadiusSearch};
use crate::verify::Partition;

/// Record of one greedy run.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GreedyTrace {
    /// Selected centers in selection order.
    pub centers: Vec<usize>,
    /// Separation of each center from the previously selected ones at the
    /// time it was chosen; the first entry is infinite.
    pub separation_radii: Vec<f64>,
    /// For each center, the `(point, subset)` pairs dealt from its ball.
    pub assignment_log: Vec<(usize, Vec<(usize, usize)>)>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum GreedyOutcome {
    Cover {
        partition: Partition,
        trace: GreedyTrace,
    },
    /// The ball around `center` holds fewer than `m` points.
    Infeasible {
        center: usize,
        ball_size: usize,
        trace: GreedyTrace,
    },
}

impl GreedyOutcome {
    pub fn partition(&self) -> Option<&Partition> {
        match self {
            GreedyOutcome::Cover { partition, .. } => Some(partition),
            GreedyOutcome::Infeasible { .. } => None,
        }
    }

    pub fn into_partition(self) -> Option<Partition> {
        match self {
            GreedyOutcome::Cover { partition, .. } => Some(partition),
            GreedyOutcome::Infeasible { .. } => None,
        }
    }

    pub fn trace(&self) -> &GreedyTrace {
        match self {
            GreedyOutcome::Cover { trace, .. } | GreedyOutcome::Infeasible { trace, .. } => trace,
        }
    }
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

/// Farthest-point traversal from point 0, stopping once the next point
/// would be within `2r` of the selection. Ties go to the lowest index.
fn select_centers(inst: &Instance, r: Radius) -> (Vec<usize>, Vec<f64>) {
    let n = inst.len();
    let two_r = 2.0 * r.value();
    let mut centers = Vec::new();
    let mut radii = Vec::new();
    let mut in_set = vec![false; n];
    // distance of each point to the current center set
    let mut gap = vec![f64::INFINITY; n];

    let mut next = 0;
    let mut next_radius = f64::INFINITY;
    // `next_radius > 2r`, ties to within-tolerance count as not separated
    while !inst.within(next_radius, two_r) {
        centers.push(next);
        radii.push(next_radius);
        in_set[next] = true;
        if centers.len() == n {
            break;
        }
        for (p, g) in gap.iter_mut().enumerate() {
            *g = g.min(inst.dist(p, next));
        }
        let (best, best_gap) = (0..n).filter(|&p| !in_set[p]).map(|p| (p, gap[p])).fold(
            (usize::MAX, f64::NEG_INFINITY),
            |acc, cur| {
                if cur.1 > acc.1 {
                    cur
                } else {
                    acc
                }
            },
        );
        next = best;
        next_radius = best_gap;
    }
    (centers, radii)
}

/// One greedy pass at radius `r`.
pub fn greedy_sc(inst: &Instance, m: usize, r: Radius) -> Result<GreedyOutcome> {
    check_m(inst, m)?;
    let n = inst.len();
    let (centers, separation_radii) = select_centers(inst, r);
    let mut trace = GreedyTrace {
        centers,
        separation_radii,
        assignment_log: Vec::new(),
    };

    let mut assignment = vec![None; n];
    for k in 0..trace.centers.len() {
        let center = trace.centers[k];
        let ball = inst.ball_unchecked(center, r);
        if ball.len() < m {
            return Ok(GreedyOutcome::Infeasible {
                center,
                ball_size: ball.len(),
                trace,
            });
        }
        let mut dealt = Vec::with_capacity(ball.len());
        for (j, &p) in ball.iter().enumerate() {
            // balls are disjoint up to the Euclidean slack; keep the first deal
            if assignment[p].is_none() {
                assignment[p] = Some(j % m);
                dealt.push((p, j % m));
            }
        }
        trace.assignment_log.push((center, dealt));
    }

    let mut next_subset = 0;
    for slot in assignment.iter_mut().filter(|s| s.is_none()) {
        *slot = Some(next_subset);
        next_subset = (next_subset + 1) % m;
    }

    Ok(GreedyOutcome::Cover {
        partition: Partition::new(m, assignment)?,
        trace,
    })
}

/// Smallest candidate radius at which [`greedy_sc`] succeeds. The returned
/// partition covers at three times the reported radius, and the reported
/// radius is at most the optimum radius.
pub fn min_radius_greedy(inst: &Instance, m: usize) -> Result<RadiusSearch> {
    min_radius_greedy_threaded(inst, m, 1)
}

pub fn min_radius_greedy_threaded(
    inst: &Instance,
    m: usize,
    threads: usize,
) -> Result<RadiusSearch> {
    check_m(inst, m)?;
    let candidates = inst.candidate_radii();
    let found = first_success(&candidates, threads, |r| {
        greedy_sc(inst, m, r).map(GreedyOutcome::into_partition)
    })?;
    // at the largest candidate there is a single center whose ball is all of S
    let (index, partition, scanned) =
        found.expect("greedy succeeds at the maximal pairwise distance");
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
    use crate::verify::is_solidarity_cover;

    fn r(v: f64) -> Radius {
        Radius::new(v).unwrap()
    }

    fn collinear() -> Instance {
        Instance::from_xy(&[(0.0, 0.0), (1.0, 0.0), (10.0, 0.0), (11.0, 0.0)]).unwrap()
    }

    fn unit_square() -> Instance {
        Instance::from_xy(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)]).unwrap()
    }

    #[test]
    fn collinear_trace() {
        let inst = collinear();
        let out = greedy_sc(&inst, 2, r(1.0)).unwrap();
        assert_eq!(out.trace().centers, vec![0, 3]);
        assert_eq!(out.trace().separation_radii[1], 11.0);
        let p = out.partition().unwrap();
        assert_eq!(p.subsets(), vec![vec![0, 2], vec![1, 3]]);
        assert!(is_solidarity_cover(&inst, p, r(1.0)));
        assert!(is_solidarity_cover(&inst, p, r(3.0)));
    }

    #[test]
    fn single_point() {
        let inst = Instance::from_xy(&[(4.0, 2.0)]).unwrap();
        let out = greedy_sc(&inst, 1, r(0.0)).unwrap();
        assert_eq!(out.trace().centers, vec![0]);
        assert_eq!(out.partition().unwrap().subsets(), vec![vec![0]]);
    }

    #[test]
    fn unit_square_three_subsets() {
        let inst = unit_square();
        let out = greedy_sc(&inst, 3, r(1.0)).unwrap();
        let p = out.partition().expect("greedy returns a partition");
        assert!(is_solidarity_cover(&inst, p, r(3.0)));
        assert!(!is_solidarity_cover(&inst, p, r(1.0)));
        assert_eq!(out.trace().centers, vec![0]);
    }

    #[test]
    fn infeasible_reports_small_ball() {
        let inst = Instance::from_xy(&[(0.0, 0.0), (5.0, 0.0)]).unwrap();
        match greedy_sc(&inst, 2, r(0.0)).unwrap() {
            GreedyOutcome::Infeasible {
                center, ball_size, ..
            } => {
                assert_eq!(center, 0);
                assert_eq!(ball_size, 1);
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn break_path_keeps_last_center() {
        // at r = 0 every point becomes a center through the P = S exit
        let inst = collinear();
        let out = greedy_sc(&inst, 1, r(0.0)).unwrap();
        assert_eq!(out.trace().centers.len(), 4);
        assert!(is_solidarity_cover(&inst, out.partition().unwrap(), r(0.0)));
    }

    #[test]
    fn min_radius_examples() {
        let found = min_radius_greedy(&collinear(), 2).unwrap();
        assert_eq!(found.radius, r(1.0));
        assert_eq!(found.partition.subsets(), vec![vec![0, 2], vec![1, 3]]);

        let spread = Instance::from_xy(&[(0.0, 0.0), (1.0, 0.3), (2.5, 2.0), (7.0, 1.0)]).unwrap();
        let found = min_radius_greedy(&spread, 1).unwrap();
        assert_eq!(found.radius, r(0.0));
        assert_eq!(found.candidates_scanned, 1);

        let two = Instance::from_xy(&[(0.0, 0.0), (3.0, 4.0)]).unwrap();
        let found = min_radius_greedy(&two, 2).unwrap();
        assert_eq!(found.radius, r(5.0));
        assert_eq!(found.candidates_scanned, 2);
    }

    #[test]
    fn threaded_scan_matches_sequential() {
        let inst = Instance::from_xy(&[
            (0.0, 0.0),
            (0.4, 0.1),
            (3.0, 0.2),
            (3.3, 0.0),
            (1.7, 2.9),
            (1.5, 3.1),
            (6.0, 6.0),
        ])
        .unwrap();
        for m in 1..=3 {
            let seq = min_radius_greedy(&inst, m).unwrap();
            for threads in [2, 3, 8] {
                let par = min_radius_greedy_threaded(&inst, m, threads).unwrap();
                assert_eq!(par.radius, seq.radius);
                assert_eq!(par.partition, seq.partition);
            }
        }
    }

    #[test]
    fn rejects_bad_m() {
        assert!(greedy_sc(&collinear(), 0, r(1.0)).is_err());
        assert!(greedy_sc(&collinear(), 5, r(1.0)).is_err());
        assert!(min_radius_greedy(&collinear(), 5).is_err());
    }
}
