//! Dense two-phase simplex over exact rationals with Bland's rule.
//!
//! Solves `min c·x` subject to `Σ a·x ≥ b` per row and `x ≥ 0`, returning an
//! optimal primal, an optimal dual and their common value.

use super::{IntProgram, OracleError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rat, primal: Vec<Rat>, dual: Vec<Rat> },
    Infeasible,
    Unbounded,
}

pub fn rat(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

struct Tableau {
    rows: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x = &*x / &p;
        }
        self.rhs[r] = &self.rhs[r] / &p;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (x, y) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = &*x - &f * y;
                }
            }
            self.rhs[i] = &self.rhs[i] - &f * &pivot_rhs;
        }
        self.basis[r] = c;
    }

    fn reduced_costs(&self, cost: &[Rat]) -> Vec<Rat> {
        let mut red = cost.to_vec();
        for (i, &b) in self.basis.iter().enumerate() {
            if cost[b].is_zero() {
                continue;
            }
            for (j, x) in self.rows[i].iter().enumerate() {
                if !x.is_zero() {
                    red[j] = &red[j] - &cost[b] * x;
                }
            }
        }
        red
    }

    /// Minimizes `cost` over the current basis. Columns with `enterable[j]`
    /// false never enter. Rows whose basic column is marked `stuck` sit at
    /// zero and are pivoted on first. Returns false when unbounded.
    fn optimize(&mut self, cost: &[Rat], enterable: &[bool], stuck: &[bool], budget: &mut u64) -> Result<bool, OracleError> {
        loop {
            if *budget == 0 {
                return Err(OracleError::BudgetExceeded);
            }
            *budget -= 1;
            let red = self.reduced_costs(cost);
            let Some(enter) = (0..self.cols).find(|&j| enterable[j] && red[j].is_negative()) else {
                return Ok(true);
            };
            // A basic artificial at zero must leave before it can turn positive.
            if let Some(r) = (0..self.rows.len()).find(|&i| stuck[self.basis[i]] && !self.rows[i][enter].is_zero()) {
                self.pivot(r, enter);
                continue;
            }
            let mut leave: Option<(usize, Rat)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter),
                None => return Ok(false),
            }
        }
    }
}

/// Solves the LP relaxation of `program` (upper bounds become rows). The
/// dual vector has one entry per row of `program` followed by one entry per
/// finite upper bound, in variable order.
pub fn solve_lp(program: &IntProgram, max_pivots: u64) -> Result<LpOutcome, OracleError> {
    let n = program.costs.len();
    let mut rows: Vec<(Vec<(usize, i64)>, i64)> = program.rows.iter().map(|r| (r.terms.clone(), r.rhs)).collect();
    for (j, u) in program.upper.iter().enumerate() {
        if let Some(u) = *u {
            rows.push((vec![(j, -1)], -u));
        }
    }
    let m = rows.len();
    // Columns: variables, one surplus per row, one artificial per row.
    let cols = n + 2 * m;
    let mut t = Tableau { rows: Vec::with_capacity(m), rhs: Vec::with_capacity(m), basis: Vec::with_capacity(m), cols };
    let mut sign = Vec::with_capacity(m);
    for (r, (terms, b)) in rows.iter().enumerate() {
        let s: i64 = if *b >= 0 { 1 } else { -1 };
        let mut row = vec![Rat::zero(); cols];
        for &(j, a) in terms {
            row[j] = &row[j] + rat(a * s);
        }
        row[n + r] = rat(-s);
        row[n + m + r] = Rat::one();
        t.rows.push(row);
        t.rhs.push(rat(b * s));
        t.basis.push(if s < 0 { n + r } else { n + m + r });
        sign.push(s);
    }
    let mut budget = max_pivots;

    let mut phase1 = vec![Rat::zero(); cols];
    let mut is_art = vec![false; cols];
    for r in 0..m {
        is_art[n + m + r] = true;
        if sign[r] > 0 {
            phase1[n + m + r] = Rat::one();
        }
    }
    let enterable: Vec<bool> = is_art.iter().map(|a| !a).collect();
    let none = vec![false; cols];
    t.optimize(&phase1, &enterable, &none, &mut budget)?;
    let infeas: Rat = (0..m).filter(|&i| is_art[t.basis[i]]).map(|i| t.rhs[i].clone()).sum();
    if infeas.is_positive() {
        return Ok(LpOutcome::Infeasible);
    }

    let mut cost = vec![Rat::zero(); cols];
    for (j, &c) in program.costs.iter().enumerate() {
        cost[j] = rat(c);
    }
    if !t.optimize(&cost, &enterable, &is_art, &mut budget)? {
        return Ok(LpOutcome::Unbounded);
    }

    let mut primal = vec![Rat::zero(); n];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            primal[b] = t.rhs[i].clone();
        }
    }
    // y = c_B B⁻¹; column n+m+r of the tableau is B⁻¹ e_r.
    let dual: Vec<Rat> = (0..m)
        .map(|r| {
            let y: Rat = (0..m).map(|i| &cost[t.basis[i]] * &t.rows[i][n + m + r]).sum();
            y * rat(sign[r])
        })
        .collect();
    let value: Rat = primal.iter().zip(&cost).map(|(x, c)| x * c).sum();
    Ok(LpOutcome::Optimal { value, primal, dual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::Row;

    #[test]
    fn triangle_vertex_cover_lp() {
        let rows = [(0, 1), (1, 2), (0, 2)].iter().map(|&(u, v)| Row { terms: vec![(u, 1), (v, 1)], rhs: 1 }).collect();
        let p = IntProgram { costs: vec![1; 3], upper: vec![Some(1); 3], rows };
        let LpOutcome::Optimal { value, primal, dual } = solve_lp(&p, 10_000).unwrap() else { panic!() };
        assert_eq!(value, Rat::new(3.into(), 2.into()));
        assert!(primal.iter().all(|x| *x == Rat::new(1.into(), 2.into())));
        let dual_value: Rat = dual[..3].iter().cloned().sum::<Rat>() - dual[3..].iter().cloned().sum::<Rat>();
        assert_eq!(dual_value, value);
    }

    #[test]
    fn infeasible_and_unbounded() {
        let p = IntProgram { costs: vec![1], upper: vec![Some(1)], rows: vec![Row { terms: vec![(0, 1)], rhs: 2 }] };
        assert_eq!(solve_lp(&p, 1000).unwrap(), LpOutcome::Infeasible);
        let p = IntProgram { costs: vec![-1], upper: vec![None], rows: vec![] };
        assert_eq!(solve_lp(&p, 1000).unwrap(), LpOutcome::Unbounded);
    }

    #[test]
    fn negative_right_hand_sides() {
        // min x0 + x1 with x0 - x1 >= -3, x1 >= 2  →  x = (0, 2)
        let p = IntProgram {
            costs: vec![1, 1],
            upper: vec![None, None],
            rows: vec![Row { terms: vec![(0, 1), (1, -1)], rhs: -3 }, Row { terms: vec![(1, 1)], rhs: 2 }],
        };
        let LpOutcome::Optimal { value, dual, .. } = solve_lp(&p, 1000).unwrap() else { panic!() };
        assert_eq!(value, rat(2));
        assert_eq!(dual, vec![rat(0), rat(1)]);
    }
}
