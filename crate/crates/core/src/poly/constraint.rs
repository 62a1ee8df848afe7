use serde::{Deserialize, Serialize};

use super::polynomial::{assignment_to_key, BinaryPolynomial};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    /// Satisfied when the polynomial is strictly negative.
    LessThanZero,
    EqualsZero,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    pub polynomial: BinaryPolynomial,
    pub relation: Relation,
}

impl Constraint {
    pub fn less_than_zero(polynomial: BinaryPolynomial) -> Self {
        Constraint {
            polynomial,
            relation: Relation::LessThanZero,
        }
    }

    pub fn equals_zero(polynomial: BinaryPolynomial) -> Self {
        Constraint {
            polynomial,
            relation: Relation::EqualsZero,
        }
    }

    pub fn is_satisfied_key(&self, key: usize) -> Result<bool> {
        let v = self.polynomial.evaluate_key(key)?;
        Ok(match self.relation {
            Relation::LessThanZero => v < 0,
            Relation::EqualsZero => v == 0,
        })
    }
}

/// Constrained polynomial binary optimization: minimize `objective` subject to
/// every constraint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CpboProblem {
    objective: BinaryPolynomial,
    constraints: Vec<Constraint>,
}

impl CpboProblem {
    pub fn new(objective: BinaryPolynomial, constraints: Vec<Constraint>) -> Result<Self> {
        let n = objective.num_vars();
        if let Some(c) = constraints.iter().find(|c| c.polynomial.num_vars() != n) {
            return Err(Error::Dimension(format!(
                "constraint over {} variables, objective over {n}",
                c.polynomial.num_vars()
            )));
        }
        Ok(CpboProblem {
            objective,
            constraints,
        })
    }

    pub fn unconstrained(objective: BinaryPolynomial) -> Self {
        CpboProblem {
            objective,
            constraints: Vec::new(),
        }
    }

    pub fn objective(&self) -> &BinaryPolynomial {
        &self.objective
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn num_vars(&self) -> usize {
        self.objective.num_vars()
    }

    pub fn is_feasible(&self, x: &[u8]) -> Result<bool> {
        if x.len() != self.num_vars() || x.iter().any(|&v| v > 1) {
            return Err(Error::InvalidAssignment(format!("{x:?}")));
        }
        self.is_feasible_key(assignment_to_key(x))
    }

    pub fn is_feasible_key(&self, key: usize) -> Result<bool> {
        for c in &self.constraints {
            if !c.is_satisfied_key(key)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn is_feasible(problem: &CpboProblem, x: &[u8]) -> Result<bool> {
    problem.is_feasible(x)
}

/// `λ·p²`, reduced with `x² = x`. It is zero exactly where `p` is zero and at
/// least `λ` elsewhere, so adding it to an objective enforces `p = 0`.
pub fn equality_to_penalty(p: &BinaryPolynomial, lambda: i64) -> Result<BinaryPolynomial> {
    if lambda <= 0 {
        return Err(Error::InvalidParameter(format!(
            "penalty weight must be positive, got {lambda}"
        )));
    }
    p.mul(p)?.scale(lambda)
}

/// Penalty for the cardinality equality `Σ_i x_i = target` over all variables.
pub fn cardinality_penalty(num_vars: usize, target: i64, lambda: i64) -> Result<BinaryPolynomial> {
    let mut p = BinaryPolynomial::constant(num_vars, -target);
    for i in 0..num_vars {
        p.add_term(&[i], 1)?;
    }
    equality_to_penalty(&p, lambda)
}
