//! Independent baselines for tests: exhaustive optima, exact LP values and
//! seeded instance generators.
//!
//! Nothing here calls into the solvers. Feasibility checks are written out
//! again so that a bug in a solver cannot hide in shared code.

pub mod bip2;
pub mod gen;
pub mod problems;
pub mod simplex;
pub mod vc;

use num_traits::{Signed, Zero};
use simplex::{rat, LpOutcome, Rat};
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle budget exceeded")]
    BudgetExceeded,
    #[error("instance too large for the oracle: {what} = {size} > {limit}")]
    TooLarge { what: &'static str, size: usize, limit: usize },
    #[error("variable {var} has no finite upper bound")]
    UnboundedDomain { var: usize },
    #[error("variable {var} has negative cost")]
    NegativeCost { var: usize },
    #[error("oracle self-check failed: {0}")]
    CertificationFailed(String),
}

/// Caps on enumeration work. Exceeding either one is an error, never a
/// silent partial answer.
#[derive(Clone, Copy, Debug)]
pub struct OracleBudget {
    pub max_steps: u64,
    pub time_limit: Option<Duration>,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_steps: 200_000_000, time_limit: None }
    }
}

pub(crate) struct Meter {
    left: u64,
    deadline: Option<Instant>,
}

impl Meter {
    pub(crate) fn new(budget: OracleBudget) -> Self {
        Meter { left: budget.max_steps, deadline: budget.time_limit.map(|d| Instant::now() + d) }
    }

    pub(crate) fn tick(&mut self) -> Result<(), OracleError> {
        if self.left == 0 {
            return Err(OracleError::BudgetExceeded);
        }
        self.left -= 1;
        if self.left % 4096 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    return Err(OracleError::BudgetExceeded);
                }
            }
        }
        Ok(())
    }
}

/// `Σ terms ≥ rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub terms: Vec<(usize, i64)>,
    pub rhs: i64,
}

/// `min Σ costs·x` over nonnegative integers `x ≤ upper` subject to `rows`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntProgram {
    pub costs: Vec<i64>,
    pub upper: Vec<Option<i64>>,
    pub rows: Vec<Row>,
}

impl IntProgram {
    pub fn var_count(&self) -> usize {
        self.costs.len()
    }

    pub fn add_var(&mut self, cost: i64, upper: Option<i64>) -> usize {
        self.costs.push(cost);
        self.upper.push(upper);
        self.costs.len() - 1
    }

    pub fn add_row(&mut self, terms: Vec<(usize, i64)>, rhs: i64) {
        self.rows.push(Row { terms, rhs });
    }

    pub fn is_feasible(&self, x: &[i64]) -> bool {
        x.len() == self.var_count()
            && x.iter().zip(&self.upper).all(|(&v, u)| v >= 0 && u.is_none_or(|u| v <= u))
            && self.rows.iter().all(|r| r.terms.iter().map(|&(j, a)| a * x[j]).sum::<i64>() >= r.rhs)
    }

    pub fn value(&self, x: &[i64]) -> i64 {
        x.iter().zip(&self.costs).map(|(v, c)| v * c).sum()
    }

    /// The same program over the half-integral grid, scaled by two.
    pub fn doubled(&self) -> IntProgram {
        IntProgram {
            costs: self.costs.clone(),
            upper: self.upper.iter().map(|u| u.map(|u| 2 * u)).collect(),
            rows: self.rows.iter().map(|r| Row { terms: r.terms.clone(), rhs: 2 * r.rhs }).collect(),
        }
    }
}

struct Dfs<'a> {
    p: &'a IntProgram,
    upper: Vec<i64>,
    rows_of: Vec<Vec<(usize, i64)>>,
    last_of_row: Vec<usize>,
    closing: Vec<bool>,
    lhs: Vec<i64>,
    slack_room: Vec<i64>,
    x: Vec<i64>,
    best: i64,
    best_x: Option<Vec<i64>>,
    meter: Meter,
}

impl Dfs<'_> {
    fn run(&mut self, i: usize, cost: i64) -> Result<(), OracleError> {
        if i == self.x.len() {
            if cost < self.best {
                self.best = cost;
                self.best_x = Some(self.x.clone());
            }
            return Ok(());
        }
        let (mut lo, mut hi) = (0i64, self.upper[i]);
        for &(r, a) in &self.rows_of[i] {
            if self.last_of_row[r] != i {
                continue;
            }
            let need = self.p.rows[r].rhs - self.lhs[r];
            if a > 0 {
                lo = lo.max(div_ceil(need, a));
            } else if a < 0 {
                hi = hi.min(div_floor(need, a));
            } else if need > 0 {
                return Ok(());
            }
        }
        let c = self.p.costs[i];
        let mut val = lo;
        while val <= hi {
            self.meter.tick()?;
            let next = cost + c * val;
            if next >= self.best {
                break;
            }
            let mut ok = true;
            for &(r, a) in &self.rows_of[i] {
                self.lhs[r] += a * val;
                self.slack_room[r] -= (a * self.upper[i]).max(0);
                if self.last_of_row[r] != i && self.lhs[r] + self.slack_room[r] < self.p.rows[r].rhs {
                    ok = false;
                }
            }
            if ok {
                self.x[i] = val;
                self.run(i + 1, next)?;
            }
            for &(r, a) in &self.rows_of[i] {
                self.lhs[r] -= a * val;
                self.slack_room[r] += (a * self.upper[i]).max(0);
            }
            if self.closing[i] && ok {
                break;
            }
            val += 1;
        }
        self.x[i] = 0;
        Ok(())
    }
}

fn div_ceil(a: i64, b: i64) -> i64 {
    let q = a / b;
    if a % b != 0 && ((a < 0) == (b < 0)) {
        q + 1
    } else {
        q
    }
}

fn div_floor(a: i64, b: i64) -> i64 {
    let q = a / b;
    if a % b != 0 && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

/// Exact integer optimum by depth-first enumeration in variable order, with
/// row-capacity and cost pruning. Costs must be nonnegative and every
/// variable bounded. Returns `None` when infeasible.
pub fn ip_optimum(p: &IntProgram, budget: OracleBudget) -> Result<Option<(i64, Vec<i64>)>, OracleError> {
    let n = p.var_count();
    let mut upper = Vec::with_capacity(n);
    for j in 0..n {
        if p.costs[j] < 0 {
            return Err(OracleError::NegativeCost { var: j });
        }
        upper.push(p.upper[j].ok_or(OracleError::UnboundedDomain { var: j })?);
    }
    let mut rows_of = vec![Vec::new(); n];
    let mut last_of_row = Vec::with_capacity(p.rows.len());
    let mut slack_room = Vec::with_capacity(p.rows.len());
    for (r, row) in p.rows.iter().enumerate() {
        let mut merged: Vec<(usize, i64)> = Vec::new();
        for &(j, a) in &row.terms {
            match merged.iter_mut().find(|t| t.0 == j) {
                Some(t) => t.1 += a,
                None => merged.push((j, a)),
            }
        }
        for &(j, a) in &merged {
            rows_of[j].push((r, a));
        }
        last_of_row.push(merged.iter().map(|t| t.0).max().unwrap_or(usize::MAX));
        slack_room.push(merged.iter().map(|&(j, a)| (a * upper[j]).max(0)).sum());
        if merged.is_empty() && row.rhs > 0 {
            return Ok(None);
        }
    }
    let closing = (0..n).map(|j| rows_of[j].iter().all(|&(r, _)| last_of_row[r] == j)).collect();
    let mut dfs = Dfs {
        p,
        upper,
        rows_of,
        last_of_row,
        closing,
        lhs: vec![0; p.rows.len()],
        slack_room,
        x: vec![0; n],
        best: i64::MAX,
        best_x: None,
        meter: Meter::new(budget),
    };
    // Rows with no variables never reach a last variable.
    dfs.run(0, 0)?;
    Ok(dfs.best_x.map(|x| {
        debug_assert!(p.is_feasible(&x));
        (dfs.best, x)
    }))
}

/// LP optimum over the half-integral grid, found by enumeration and
/// certified by an exact dual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfIntLp {
    /// Twice the optimal value.
    pub doubled_value: i64,
    /// Twice the optimal primal.
    pub doubled_primal: Vec<i64>,
    /// An optimal dual, one entry per row then one per finite upper bound.
    pub dual: Vec<Rat>,
}

/// Enumerates the half-integral grid for the LP optimum and certifies it
/// with a dual from the exact simplex. Returns `None` when the LP is
/// infeasible.
pub fn brute_halfint_lp(p: &IntProgram, budget: OracleBudget) -> Result<Option<HalfIntLp>, OracleError> {
    let Some((doubled_value, doubled_primal)) = ip_optimum(&p.doubled(), budget)? else {
        return match simplex::solve_lp(p, budget.max_steps)? {
            LpOutcome::Infeasible => Ok(None),
            other => Err(OracleError::CertificationFailed(format!("grid empty but LP is {other:?}"))),
        };
    };
    let dual = certified_dual(p, &(rat(doubled_value) / rat(2)), budget)?;
    Ok(Some(HalfIntLp { doubled_value, doubled_primal, dual }))
}

/// Exact LP optimum of `p`, self-checked by primal and dual feasibility.
pub fn lp_value(p: &IntProgram, budget: OracleBudget) -> Result<Option<Rat>, OracleError> {
    match simplex::solve_lp(p, budget.max_steps)? {
        LpOutcome::Infeasible => Ok(None),
        LpOutcome::Unbounded => Err(OracleError::CertificationFailed("unbounded LP".into())),
        LpOutcome::Optimal { value, primal, dual } => {
            check_primal(p, &primal, &value)?;
            check_dual(p, &dual, &value)?;
            Ok(Some(value))
        }
    }
}

fn certified_dual(p: &IntProgram, value: &Rat, budget: OracleBudget) -> Result<Vec<Rat>, OracleError> {
    match simplex::solve_lp(p, budget.max_steps)? {
        LpOutcome::Optimal { value: v, dual, .. } if v == *value => {
            check_dual(p, &dual, value)?;
            Ok(dual)
        }
        other => Err(OracleError::CertificationFailed(format!("grid value {value} but exact LP gives {other:?}"))),
    }
}

fn check_primal(p: &IntProgram, x: &[Rat], value: &Rat) -> Result<(), OracleError> {
    let fail = |m: String| Err(OracleError::CertificationFailed(m));
    for (j, v) in x.iter().enumerate() {
        if v.is_negative() || p.upper[j].is_some_and(|u| *v > rat(u)) {
            return fail(format!("primal {j} out of bounds"));
        }
    }
    for (r, row) in p.rows.iter().enumerate() {
        let lhs: Rat = row.terms.iter().map(|&(j, a)| rat(a) * &x[j]).sum();
        if lhs < rat(row.rhs) {
            return fail(format!("row {r} violated"));
        }
    }
    let v: Rat = x.iter().zip(&p.costs).map(|(x, &c)| x * rat(c)).sum();
    if v != *value {
        return fail("primal value mismatch".into());
    }
    Ok(())
}

fn check_dual(p: &IntProgram, y: &[Rat], value: &Rat) -> Result<(), OracleError> {
    let fail = |m: String| Err(OracleError::CertificationFailed(m));
    let mut reduced: Vec<Rat> = p.costs.iter().map(|&c| rat(c)).collect();
    let mut dual_value = Rat::zero();
    for (r, row) in p.rows.iter().enumerate() {
        if y[r].is_negative() {
            return fail(format!("dual {r} negative"));
        }
        for &(j, a) in &row.terms {
            reduced[j] -= rat(a) * &y[r];
        }
        dual_value += rat(row.rhs) * &y[r];
    }
    let mut r = p.rows.len();
    for (j, u) in p.upper.iter().enumerate() {
        if let Some(u) = *u {
            if y[r].is_negative() {
                return fail(format!("bound dual {j} negative"));
            }
            reduced[j] += &y[r];
            dual_value -= rat(u) * &y[r];
            r += 1;
        }
    }
    if reduced.iter().any(|d| d.is_negative()) {
        return fail("dual constraint violated".into());
    }
    if dual_value != *value {
        return fail(format!("dual value {dual_value} differs from {value}"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vc_program(w: &[i64], edges: &[(usize, usize)]) -> IntProgram {
        let mut p = IntProgram::default();
        for &c in w {
            p.add_var(c, Some(1));
        }
        for &(u, v) in edges {
            p.add_row(vec![(u, 1), (v, 1)], 1);
        }
        p
    }

    #[test]
    fn triangle_ip_and_lp() {
        let p = vc_program(&[1, 1, 1], &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(ip_optimum(&p, OracleBudget::default()).unwrap().unwrap().0, 2);
        let lp = brute_halfint_lp(&p, OracleBudget::default()).unwrap().unwrap();
        assert_eq!(lp.doubled_value, 3);
        assert_eq!(lp_value(&p, OracleBudget::default()).unwrap(), Some(rat(3) / rat(2)));
    }

    #[test]
    fn weighted_edge_lp() {
        let p = vc_program(&[1, 2], &[(0, 1)]);
        assert_eq!(brute_halfint_lp(&p, OracleBudget::default()).unwrap().unwrap().doubled_value, 2);
    }

    #[test]
    fn empty_program() {
        let p = IntProgram::default();
        assert_eq!(brute_halfint_lp(&p, OracleBudget::default()).unwrap().unwrap().doubled_value, 0);
    }

    #[test]
    fn difference_constraints_and_infeasibility() {
        let mut p = IntProgram::default();
        let a = p.add_var(1, Some(10));
        let b = p.add_var(1, Some(10));
        p.add_row(vec![(a, 1), (b, -1)], 5);
        p.add_row(vec![(b, 1)], 1);
        assert_eq!(ip_optimum(&p, OracleBudget::default()).unwrap(), Some((7, vec![6, 1])));
        p.add_row(vec![(a, -1)], -3);
        assert_eq!(ip_optimum(&p, OracleBudget::default()).unwrap(), None);
        assert_eq!(brute_halfint_lp(&p, OracleBudget::default()).unwrap(), None);
    }

    #[test]
    fn budget_is_enforced() {
        let edges: Vec<_> = (0..12).flat_map(|u| (u + 1..12).map(move |v| (u, v))).collect();
        let p = vc_program(&[1; 12], &edges);
        let tiny = OracleBudget { max_steps: 10, time_limit: None };
        assert_eq!(ip_optimum(&p, tiny), Err(OracleError::BudgetExceeded));
    }

    #[test]
    fn rounding_helpers() {
        assert_eq!(div_ceil(5, 2), 3);
        assert_eq!(div_ceil(-5, 2), -2);
        assert_eq!(div_ceil(5, -2), -2);
        assert_eq!(div_ceil(-5, -2), 3);
        assert_eq!(div_floor(5, -1), -5);
        assert_eq!(div_floor(-5, -2), 2);
    }
}
