//! The cover checker. Every solver result in this crate is re-checked here.

use crate::error::{Error, Result};
use crate::metric::{Instance, Radius};

/// Assignment of points to `m` disjoint subsets. Points may be left out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    m: usize,
    assignment: Vec<Option<usize>>,
}

impl Partition {
    pub fn new(m: usize, assignment: Vec<Option<usize>>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidPartition(
                "subset count must be at least 1".into(),
            ));
        }
        if let Some((i, s)) = assignment
            .iter()
            .enumerate()
            .find_map(|(i, s)| s.filter(|&s| s >= m).map(|s| (i, s)))
        {
            return Err(Error::InvalidPartition(format!(
                "point {i} assigned to subset {s}, but m = {m}"
            )));
        }
        Ok(Self { m, assignment })
    }

    /// Every point unassigned.
    pub fn empty(m: usize, n: usize) -> Result<Self> {
        Self::new(m, vec![None; n])
    }

    /// Builds a partition from explicit subsets over `n` points.
    pub fn from_subsets(n: usize, subsets: &[Vec<usize>]) -> Result<Self> {
        let mut assignment = vec![None; n];
        for (s, members) in subsets.iter().enumerate() {
            for &p in members {
                let slot = assignment
                    .get_mut(p)
                    .ok_or(Error::IndexOutOfRange { index: p, n })?;
                if slot.is_some() {
                    return Err(Error::InvalidPartition(format!(
                        "point {p} appears in more than one subset"
                    )));
                }
                *slot = Some(s);
            }
        }
        Self::new(subsets.len(), assignment)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn assignment(&self) -> &[Option<usize>] {
        &self.assignment
    }

    pub fn subset_of(&self, point: usize) -> Option<usize> {
        self.assignment.get(point).copied().flatten()
    }

    /// Members of each subset, ascending.
    pub fn subsets(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.m];
        for (p, s) in self.assignment.iter().enumerate() {
            if let Some(s) = s {
                out[*s].push(p);
            }
        }
        out
    }

    pub fn is_exhaustive(&self) -> bool {
        self.assignment.iter().all(Option::is_some)
    }

    pub(crate) fn check_size(&self, inst: &Instance) -> Result<()> {
        if self.len() == inst.len() {
            Ok(())
        } else {
            Err(Error::InvalidPartition(format!(
                "partition covers {} points, instance has {}",
                self.len(),
                inst.len()
            )))
        }
    }
}

/// Whether every point lies within `r` of some member of `subset`.
pub fn is_r_cover(inst: &Instance, subset: &[usize], r: Radius) -> bool {
    let n = inst.len();
    if subset.iter().any(|&s| s >= n) {
        return false;
    }
    (0..n).all(|p| subset.iter().any(|&s| s == p || inst.is_close(p, s, r)))
}

/// Number of distinct subsets having a member within `r` of `pt`.
///
/// Returns 0 for a partition whose size disagrees with the instance.
pub fn coverage_count(inst: &Instance, p: &Partition, r: Radius, pt: usize) -> usize {
    if p.check_size(inst).is_err() || pt >= inst.len() {
        return 0;
    }
    let mut seen = vec![false; p.m()];
    for (q, s) in p.assignment().iter().enumerate() {
        if let Some(s) = *s {
            if !seen[s] && (q == pt || inst.is_close(pt, q, r)) {
                seen[s] = true;
            }
        }
    }
    seen.into_iter().filter(|&b| b).count()
}

/// Whether each of the `m` subsets is an `r`-cover.
pub fn is_solidarity_cover(inst: &Instance, p: &Partition, r: Radius) -> bool {
    p.check_size(inst).is_ok() && (0..inst.len()).all(|pt| coverage_count(inst, p, r, pt) == p.m())
}

/// Smallest point-wise coverage count, i.e. how many subsets cover every
/// point simultaneously.
pub fn min_coverage(inst: &Instance, p: &Partition, r: Radius) -> usize {
    (0..inst.len())
        .map(|pt| coverage_count(inst, p, r, pt))
        .min()
        .unwrap_or(0)
}

/// The least radius at which `p` is a solidarity cover.
pub fn cover_radius(inst: &Instance, p: &Partition) -> Result<Radius> {
    p.check_size(inst)?;
    let subsets = p.subsets();
    if let Some(empty) = subsets.iter().position(Vec::is_empty) {
        return Err(Error::EmptySubset(empty));
    }
    let mut worst: f64 = 0.0;
    for pt in 0..inst.len() {
        for members in &subsets {
            let nearest = members
                .iter()
                .map(|&q| inst.dist(pt, q))
                .fold(f64::INFINITY, f64::min);
            worst = worst.max(nearest);
        }
    }
    Radius::new(worst)
}
