//! Brute-force oracles for small instances.
//!
//! All of them run one backtracking search: points are assigned to subsets
//! in ascending index order, a point may open at most the lowest unused
//! subset, and a branch is cut as soon as some point can no longer collect
//! `m` distinct subsets from the unassigned members of its ball. Leaving a
//! point unassigned never helps a cover, so every point is assigned.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::metric::{Graph, Instance, Radius};
use crate::verify::{is_solidarity_cover, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Cap on explored assignments.
    pub max_nodes: u64,
    pub timeout: Option<Duration>,
}

impl SearchBudget {
    pub fn new(max_nodes: u64, timeout: Option<Duration>) -> Result<Self> {
        if max_nodes == 0 || timeout.is_some_and(|t| t.is_zero()) {
            return Err(Error::InvalidParameter(
                "search budget must be positive".into(),
            ));
        }
        Ok(Self { max_nodes, timeout })
    }

    pub fn nodes(max_nodes: u64) -> Self {
        Self {
            max_nodes: max_nodes.max(1),
            timeout: None,
        }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            max_nodes: 200_000_000,
            timeout: Some(Duration::from_secs(120)),
        }
    }
}

/// Result of an exact decision. `Indeterminate` means the budget ran out;
/// it is never reported as infeasible.
#[derive(Clone, Debug, PartialEq)]
pub enum Decision {
    Feasible(Partition),
    Infeasible,
    Indeterminate,
}

impl Decision {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Decision::Feasible(_))
    }

    /// `Some(feasible?)`, or `None` when indeterminate.
    pub fn known(&self) -> Option<bool> {
        match self {
            Decision::Feasible(_) => Some(true),
            Decision::Infeasible => Some(false),
            Decision::Indeterminate => None,
        }
    }

    pub fn witness(&self) -> Option<&Partition> {
        match self {
            Decision::Feasible(p) => Some(p),
            _ => None,
        }
    }
}

enum Search {
    Found(Vec<usize>),
    Exhausted,
    Aborted,
}

struct Solver<'a> {
    m: usize,
    /// `balls[p]`: points within reach of `p`, including `p`. Symmetric.
    balls: &'a [Vec<usize>],
    assign: Vec<Option<usize>>,
    /// `hits[p * m + s]`: members of subset `s` inside `balls[p]`.
    hits: Vec<u32>,
    distinct: Vec<usize>,
    open: Vec<usize>,
    used: usize,
    symmetric: bool,
    nodes: u64,
    budget: SearchBudget,
    started: Instant,
}

impl<'a> Solver<'a> {
    fn new(balls: &'a [Vec<usize>], m: usize, symmetric: bool, budget: SearchBudget) -> Self {
        let n = balls.len();
        Self {
            m,
            balls,
            assign: vec![None; n],
            hits: vec![0; n * m],
            distinct: vec![0; n],
            open: balls.iter().map(Vec::len).collect(),
            used: 0,
            symmetric,
            nodes: 0,
            budget,
            started: Instant::now(),
        }
    }

    /// Assigns `q` to `s`; returns false if some affected point is starved.
    fn place(&mut self, q: usize, s: usize) -> bool {
        self.assign[q] = Some(s);
        self.used = self.used.max(s + 1);
        let mut ok = true;
        for &p in &self.balls[q] {
            self.open[p] -= 1;
            let slot = &mut self.hits[p * self.m + s];
            *slot += 1;
            if *slot == 1 {
                self.distinct[p] += 1;
            }
            if self.m - self.distinct[p] > self.open[p] {
                ok = false;
            }
        }
        ok
    }

    fn unplace(&mut self, q: usize, s: usize, used_before: usize) {
        for &p in &self.balls[q] {
            self.open[p] += 1;
            let slot = &mut self.hits[p * self.m + s];
            *slot -= 1;
            if *slot == 0 {
                self.distinct[p] -= 1;
            }
        }
        self.assign[q] = None;
        self.used = used_before;
    }

    fn out_of_budget(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            return true;
        }
        if self.nodes.is_multiple_of(4096) {
            if let Some(limit) = self.budget.timeout {
                return self.started.elapsed() > limit;
            }
        }
        false
    }

    fn next_free(&self, from: usize) -> Option<usize> {
        (from..self.assign.len()).find(|&q| self.assign[q].is_none())
    }

    fn run(&mut self, from: usize) -> Search {
        let Some(q) = self.next_free(from) else {
            return Search::Found(self.assign.iter().map(|s| s.unwrap_or(0)).collect());
        };
        let limit = if self.symmetric {
            (self.used + 1).min(self.m)
        } else {
            self.m
        };
        for s in 0..limit {
            if self.out_of_budget() {
                return Search::Aborted;
            }
            let used_before = self.used;
            if self.place(q, s) {
                match self.run(q + 1) {
                    Search::Exhausted => {}
                    other => return other,
                }
            }
            self.unplace(q, s, used_before);
        }
        Search::Exhausted
    }
}

/// Searches for an assignment giving every point `m` subsets in its ball,
/// with some points pinned in advance.
fn search(
    balls: &[Vec<usize>],
    m: usize,
    fixed: &[(usize, usize)],
    budget: SearchBudget,
) -> Result<Option<Option<Vec<usize>>>> {
    let n = balls.len();
    if m == 0 {
        return Err(Error::InvalidParameter(
            "partition size m must be at least 1".into(),
        ));
    }
    if balls.iter().any(|b| b.len() < m) {
        return Ok(Some(None));
    }
    let mut solver = Solver::new(balls, m, fixed.is_empty(), budget);
    for &(q, s) in fixed {
        if q >= n {
            return Err(Error::IndexOutOfRange { index: q, n });
        }
        if s >= m {
            return Err(Error::InvalidParameter(format!(
                "fixed subset {s} out of range for m = {m}"
            )));
        }
        if solver.assign[q].is_some() {
            return Err(Error::InvalidParameter(format!("point {q} fixed twice")));
        }
        if !solver.place(q, s) {
            return Ok(Some(None));
        }
    }
    Ok(match solver.run(0) {
        Search::Found(a) => Some(Some(a)),
        Search::Exhausted => Some(None),
        Search::Aborted => None,
    })
}

fn balls_at(inst: &Instance, r: Radius) -> Vec<Vec<usize>> {
    (0..inst.len()).map(|p| inst.ball_unchecked(p, r)).collect()
}

/// Whether an `m`-solidarity-`r`-cover exists.
pub fn exact_decide(
    inst: &Instance,
    m: usize,
    r: Radius,
    budget: SearchBudget,
) -> Result<Decision> {
    exact_decide_fixed(inst, m, r, &[], budget)
}

/// [`exact_decide`] restricted to covers placing each `(point, subset)` of
/// `fixed` as given. Symmetry breaking is off when anything is pinned.
pub fn exact_decide_fixed(
    inst: &Instance,
    m: usize,
    r: Radius,
    fixed: &[(usize, usize)],
    budget: SearchBudget,
) -> Result<Decision> {
    let balls = balls_at(inst, r);
    Ok(match search(&balls, m, fixed, budget)? {
        None => Decision::Indeterminate,
        Some(None) => Decision::Infeasible,
        Some(Some(assignment)) => {
            let p = Partition::new(m, assignment.into_iter().map(Some).collect())?;
            debug_assert!(is_solidarity_cover(inst, &p, r));
            Decision::Feasible(p)
        }
    })
}

/// Smallest candidate radius admitting an `m`-solidarity cover.
pub fn exact_min_radius(inst: &Instance, m: usize, budget: SearchBudget) -> Result<Radius> {
    if m == 0 || m > inst.len() {
        return Err(Error::InvalidParameter(format!(
            "partition size m = {m} must lie in 1..={}",
            inst.len()
        )));
    }
    let candidates = inst.candidate_radii();
    // feasibility is monotone in r and holds at the largest candidate
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        match exact_decide(inst, m, candidates[mid], budget)? {
            Decision::Feasible(_) => hi = mid,
            Decision::Infeasible => lo = mid + 1,
            Decision::Indeterminate => return Err(Error::BudgetExhausted),
        }
    }
    Ok(candidates[lo])
}

/// Largest `m` admitting an `m`-solidarity-`r`-cover.
pub fn exact_max_m(inst: &Instance, r: Radius, budget: SearchBudget) -> Result<usize> {
    let balls = balls_at(inst, r);
    let ceiling = balls.iter().map(Vec::len).min().unwrap_or(0);
    let mut best = 1;
    for m in 2..=ceiling {
        match search(&balls, m, &[], budget)? {
            Some(Some(_)) => best = m,
            Some(None) => break,
            None => return Err(Error::BudgetExhausted),
        }
    }
    Ok(best)
}

/// Whether `g` has `m` pairwise-disjoint dominating sets.
pub fn exact_domatic(g: &Graph, m: usize, budget: SearchBudget) -> Result<bool> {
    let neighborhoods: Vec<Vec<usize>> = (0..g.n()).map(|v| g.closed_neighborhood(v)).collect();
    match search(&neighborhoods, m, &[], budget)? {
        Some(found) => Ok(found.is_some()),
        None => Err(Error::BudgetExhausted),
    }
}
