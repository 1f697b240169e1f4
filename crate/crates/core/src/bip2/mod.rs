//! Binarized two-variable integer programs.
//!
//! An instance minimizes `Σ w_i x_i + Σ d_r z_r + constant` subject to one
//! row per constraint, `a x_i + b x_j + z_r ≥ c` with `a, b ∈ {−1, 0, 1}`.
//! A constraint without an independent variable `z_r` is hard. Variables are
//! binary or range over the nonnegative integers.
//!
//! The reduction chain in [`chain`] turns an instance and an optimal
//! half-integral LP pair into a vertex cover instance with the same
//! integrality gap, and maps covers back.

pub mod chain;
pub mod pair;
pub mod solve;
pub mod text;

use crate::half::{BigWeight, HalfInt};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Bip2Error {
    #[error("constraint {0}: coefficient outside {{-1, 0, 1}}")]
    Coefficient(usize),
    #[error("constraint {con}: variable {var} out of range")]
    VariableOutOfRange { con: usize, var: usize },
    #[error("variable {0} has a negative weight")]
    NegativeWeight(usize),
    #[error("constraint {0} has a negative independent weight")]
    NegativeIndependentWeight(usize),
    #[error("constraint {0} has no variables and a positive right-hand side, so it can never hold")]
    InfeasibleHard(usize),
    #[error("arithmetic overflow while concretizing large weights")]
    Overflow,
    #[error("instance has a non-binary variable; an LP pair must be supplied")]
    PairRequired,
    #[error("the instance has no feasible solution")]
    Infeasible,
    #[error("LP pair check failed: {0}")]
    Pair(String),
    #[error("decoded solution is invalid: {0}")]
    Decode(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Domain {
    Binary,
    Nonneg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Variable {
    pub weight: BigWeight,
    pub domain: Domain,
}

/// `a·x_i + b·x_j + z ≥ c`. Unary constraints have `b = 0` and `j = i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Constraint {
    pub i: usize,
    pub a: i64,
    pub j: usize,
    pub b: i64,
    pub c: i64,
    /// Weight of the independent variable; `None` for a hard constraint.
    pub indep: Option<BigWeight>,
}

impl Constraint {
    pub fn pair(a: i64, i: usize, b: i64, j: usize, c: i64, indep: Option<BigWeight>) -> Self {
        Constraint { i, a, j, b, c, indep }
    }

    pub fn unary(a: i64, i: usize, c: i64, indep: Option<BigWeight>) -> Self {
        Constraint { i, a, j: i, b: 0, c, indep }
    }

    pub fn is_unary(&self) -> bool {
        self.b == 0
    }

    pub fn is_hard(&self) -> bool {
        self.indep.is_none()
    }

    /// `(variable, coefficient)` terms, one or two of them.
    pub fn terms(&self) -> impl Iterator<Item = (usize, i64)> {
        let second = (!self.is_unary()).then_some((self.j, self.b));
        std::iter::once((self.i, self.a)).chain(second)
    }

    /// Number of negative coefficients.
    pub fn negatives(&self) -> i64 {
        self.terms().filter(|t| t.1 < 0).count() as i64
    }

    fn lhs<T: Copy + std::ops::Mul<i64, Output = T> + std::ops::Add<Output = T>>(&self, x: &[T]) -> T {
        let mut s = x[self.i] * self.a;
        if !self.is_unary() {
            s = s + x[self.j] * self.b;
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bip2Instance {
    vars: Vec<Variable>,
    cons: Vec<Constraint>,
    /// Cost already committed by constraints that mention no variable.
    constant: BigWeight,
}

impl Bip2Instance {
    /// Validates and normalizes. A constraint on one variable twice becomes
    /// unary (or constant when the coefficients cancel); a constraint with
    /// no variables left is folded into the constant or rejected if hard.
    pub fn new(vars: Vec<Variable>, raw: Vec<Constraint>) -> Result<Self, Bip2Error> {
        for (v, var) in vars.iter().enumerate() {
            if !var.weight.is_nonneg() {
                return Err(Bip2Error::NegativeWeight(v));
            }
        }
        let n = vars.len();
        let mut cons = Vec::with_capacity(raw.len());
        let mut constant = BigWeight::ZERO;
        for (r, con) in raw.into_iter().enumerate() {
            if ![con.a, con.b].iter().all(|c| (-1..=1).contains(c)) {
                return Err(Bip2Error::Coefficient(r));
            }
            if let Some(d) = con.indep {
                if !d.is_nonneg() {
                    return Err(Bip2Error::NegativeIndependentWeight(r));
                }
            }
            let mut terms: Vec<(usize, i64)> = Vec::with_capacity(2);
            for (var, coef) in [(con.i, con.a), (con.j, con.b)] {
                if coef == 0 {
                    continue;
                }
                if var >= n {
                    return Err(Bip2Error::VariableOutOfRange { con: r, var });
                }
                match terms.iter_mut().find(|t| t.0 == var) {
                    Some(t) => t.1 += coef,
                    None => terms.push((var, coef)),
                }
            }
            terms.retain(|t| t.1 != 0);
            if terms.iter().any(|t| t.1.abs() > 1) {
                return Err(Bip2Error::Coefficient(r));
            }
            match terms.as_slice() {
                [] => {
                    if con.c > 0 {
                        match con.indep {
                            None => return Err(Bip2Error::InfeasibleHard(r)),
                            Some(d) => constant += d.scale(HalfInt::from_int(con.c)).ok_or(Bip2Error::Overflow)?,
                        }
                    }
                }
                [(i, a)] => cons.push(Constraint::unary(*a, *i, con.c, con.indep)),
                [(i, a), (j, b)] => cons.push(Constraint::pair(*a, *i, *b, *j, con.c, con.indep)),
                _ => unreachable!(),
            }
        }
        Ok(Bip2Instance { vars, cons, constant })
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.cons
    }

    pub fn constant(&self) -> BigWeight {
        self.constant
    }

    pub fn var_count(&self) -> usize {
        self.vars.len()
    }

    pub fn is_all_binary(&self) -> bool {
        self.vars.iter().all(|v| v.domain == Domain::Binary)
    }

    pub(crate) fn from_parts(vars: Vec<Variable>, cons: Vec<Constraint>, constant: BigWeight) -> Self {
        Bip2Instance { vars, cons, constant }
    }

    /// Concrete weights with `M = m0`.
    pub fn concrete_weights(&self, m0: i64) -> Result<Vec<i64>, Bip2Error> {
        self.vars.iter().map(|v| concretize(v.weight, m0)).collect()
    }

    /// Concrete independent weights (`None` for hard constraints).
    pub fn concrete_indep(&self, m0: i64) -> Result<Vec<Option<i64>>, Bip2Error> {
        self.cons.iter().map(|c| c.indep.map(|d| concretize(d, m0)).transpose()).collect()
    }

    pub fn concrete_constant(&self, m0: i64) -> Result<HalfInt, Bip2Error> {
        self.constant.concretize(m0).ok_or(Bip2Error::Overflow)
    }

    /// Checks an integral assignment and returns its objective with `M = m0`.
    /// Independent variables are set to their cheapest feasible values.
    pub fn evaluate(&self, x: &[i64], m0: i64) -> Result<i64, Bip2Error> {
        if x.len() != self.vars.len() {
            return Err(Bip2Error::Decode(format!("expected {} values, got {}", self.vars.len(), x.len())));
        }
        let mut total = self.concrete_constant(m0)?;
        for (i, (&v, var)) in x.iter().zip(&self.vars).enumerate() {
            if v < 0 || (var.domain == Domain::Binary && v > 1) {
                return Err(Bip2Error::Decode(format!("x{i} = {v} outside its domain")));
            }
            total += HalfInt::from_int(concretize(var.weight, m0)?.checked_mul(v).ok_or(Bip2Error::Overflow)?);
        }
        for (r, con) in self.cons.iter().enumerate() {
            let short = con.c - con.lhs(x);
            if short > 0 {
                match con.indep {
                    None => return Err(Bip2Error::Decode(format!("hard constraint {r} violated"))),
                    Some(d) => total += HalfInt::from_int(concretize(d, m0)?.checked_mul(short).ok_or(Bip2Error::Overflow)?),
                }
            }
        }
        if total.is_integral() {
            Ok(total.floor())
        } else {
            Err(Bip2Error::Decode("fractional objective".into()))
        }
    }
}

pub(crate) fn concretize(w: BigWeight, m0: i64) -> Result<i64, Bip2Error> {
    let h = w.concretize(m0).ok_or(Bip2Error::Overflow)?;
    if h.is_integral() {
        Ok(h.floor())
    } else {
        Err(Bip2Error::Overflow)
    }
}

/// A primal and dual LP solution of a [`Bip2Instance`], concretized.
///
/// The LP relaxes binary variables to `[0, 1]`; `beta` holds the duals of
/// those upper bounds (zero for nonnegative variables).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LpPair {
    pub x: Vec<HalfInt>,
    /// Independent variables, one per constraint (zero for hard ones).
    pub z: Vec<HalfInt>,
    pub y: Vec<HalfInt>,
    pub beta: Vec<HalfInt>,
}

impl LpPair {
    /// Checks both solutions for feasibility and equal value with `M = m0`,
    /// returning the common value (the LP optimum).
    pub fn check(&self, inst: &Bip2Instance, m0: i64) -> Result<HalfInt, Bip2Error> {
        let fail = |m: String| Err(Bip2Error::Pair(m));
        let n = inst.var_count();
        let m = inst.constraints().len();
        if self.x.len() != n || self.beta.len() != n || self.z.len() != m || self.y.len() != m {
            return fail("wrong vector lengths".into());
        }
        let w = inst.concrete_weights(m0)?;
        let d = inst.concrete_indep(m0)?;
        let mut primal = inst.concrete_constant(m0)?;
        let mut dual = inst.concrete_constant(m0)?;
        let mut load: Vec<HalfInt> = vec![HalfInt::ZERO; n];
        for (i, var) in inst.vars().iter().enumerate() {
            let x = self.x[i];
            if x < HalfInt::ZERO || (var.domain == Domain::Binary && x > HalfInt::ONE) {
                return fail(format!("x{i} = {x} out of bounds"));
            }
            if self.beta[i] < HalfInt::ZERO || (var.domain == Domain::Nonneg && self.beta[i] != HalfInt::ZERO) {
                return fail(format!("bound dual {i} = {} invalid", self.beta[i]));
            }
            primal += mul(x, w[i])?;
            dual -= self.beta[i];
            load[i] -= self.beta[i];
        }
        for (r, con) in inst.constraints().iter().enumerate() {
            let (z, y) = (self.z[r], self.y[r]);
            if z < HalfInt::ZERO || y < HalfInt::ZERO {
                return fail(format!("constraint {r}: negative z or y"));
            }
            if con.lhs(&self.x) + z < HalfInt::from_int(con.c) {
                return fail(format!("constraint {r} violated"));
            }
            match d[r] {
                None if z != HalfInt::ZERO => return fail(format!("hard constraint {r} has z = {z}")),
                None => {}
                Some(d) => {
                    if y > HalfInt::from_int(d) {
                        return fail(format!("constraint {r}: y = {y} above d = {d}"));
                    }
                    primal += mul(z, d)?;
                }
            }
            dual += y * con.c;
            for (v, coef) in con.terms() {
                load[v] += y * coef;
            }
        }
        for i in 0..n {
            if load[i] > HalfInt::from_int(w[i]) {
                return fail(format!("dual constraint of x{i} violated: {} > {}", load[i], w[i]));
            }
        }
        if primal != dual {
            return fail(format!("primal value {primal} differs from dual value {dual}"));
        }
        Ok(primal)
    }
}

fn mul(h: HalfInt, w: i64) -> Result<HalfInt, Bip2Error> {
    h.checked_mul_int(w).ok_or(Bip2Error::Overflow)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn bin(w: i64) -> Variable {
        Variable { weight: BigWeight::int(w), domain: Domain::Binary }
    }

    #[test]
    fn normalization() {
        let inst = Bip2Instance::new(
            vec![bin(1), bin(1)],
            vec![
                Constraint::pair(1, 0, 0, 1, 1, None),
                Constraint::pair(0, 0, -1, 1, -1, None),
                Constraint::pair(1, 0, -1, 0, 2, Some(BigWeight::int(3))),
                Constraint::pair(1, 1, 0, 1, 0, None),
            ],
        )
        .unwrap();
        let cons = inst.constraints();
        assert_eq!(cons[0], Constraint::unary(1, 0, 1, None));
        assert_eq!(cons[1], Constraint::unary(-1, 1, -1, None));
        assert_eq!(cons[2], Constraint::unary(1, 1, 0, None));
        assert_eq!(cons.len(), 3);
        assert_eq!(inst.constant(), BigWeight::int(6));
        assert_eq!(
            Bip2Instance::new(vec![bin(1)], vec![Constraint::pair(1, 0, 1, 0, 1, None)]),
            Err(Bip2Error::Coefficient(0))
        );
        assert_eq!(
            Bip2Instance::new(vec![bin(1)], vec![Constraint::pair(0, 0, 0, 0, 1, None)]),
            Err(Bip2Error::InfeasibleHard(0))
        );
    }

    #[test]
    fn evaluate_and_pair_check() {
        let inst = Bip2Instance::new(vec![bin(1), bin(1)], vec![Constraint::pair(1, 0, 1, 1, 1, None)]).unwrap();
        assert_eq!(inst.evaluate(&[1, 0], 0), Ok(1));
        assert!(inst.evaluate(&[0, 0], 0).is_err());
        let h = HalfInt::HALF;
        let pair = LpPair { x: vec![h, h], z: vec![HalfInt::ZERO], y: vec![HalfInt::ONE], beta: vec![HalfInt::ZERO; 2] };
        assert_eq!(pair.check(&inst, 0), Ok(HalfInt::ONE));
        let bad = LpPair { y: vec![HalfInt::from_int(2)], ..pair };
        assert!(bad.check(&inst, 0).is_err());
    }
}
