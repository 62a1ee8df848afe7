use serde::{Deserialize, Serialize};

use super::polynomial::BinaryPolynomial;
use super::quantize::RealPolynomial;
use crate::error::{Error, Result};

/// `min xᵀQx + bᵀx + c` over binary `x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuboProblem {
    pub q: Vec<Vec<f64>>,
    pub b: Vec<f64>,
    pub c: f64,
}

impl QuboProblem {
    pub fn new(q: Vec<Vec<f64>>, b: Vec<f64>, c: f64) -> Result<Self> {
        let n = q.len();
        if let Some(row) = q.iter().position(|r| r.len() != n) {
            return Err(Error::Dimension(format!(
                "Q row {row} has {} entries, expected {n}",
                q[row].len()
            )));
        }
        if b.len() != n {
            return Err(Error::Dimension(format!(
                "b has {} entries, expected {n}",
                b.len()
            )));
        }
        Ok(QuboProblem { q, b, c })
    }

    pub fn num_vars(&self) -> usize {
        self.b.len()
    }

    pub fn evaluate(&self, x: &[u8]) -> f64 {
        let n = self.num_vars();
        let mut acc = self.c;
        for (i, row) in self.q.iter().enumerate().take(n) {
            let xi = x[i] as f64;
            acc += self.b[i] * xi;
            for (qij, &xj) in row.iter().zip(x) {
                acc += qij * xi * xj as f64;
            }
        }
        acc
    }

    /// Multilinear form with real coefficients: `{i}` gets `Q_ii + b_i`,
    /// `{i,j}` (i<j) gets `Q_ij + Q_ji`, the free term is `c`.
    pub fn to_real_polynomial(&self) -> RealPolynomial {
        let n = self.num_vars();
        let mut p = RealPolynomial::zero(n);
        p.add_term(&[], self.c);
        for i in 0..n {
            p.add_term(&[i], self.q[i][i] + self.b[i]);
            for j in i + 1..n {
                p.add_term(&[i, j], self.q[i][j] + self.q[j][i]);
            }
        }
        p
    }

    /// Exact conversion; every entry must be an integer.
    pub fn to_polynomial(&self) -> Result<BinaryPolynomial> {
        let entries = self
            .q
            .iter()
            .flatten()
            .chain(&self.b)
            .chain(std::iter::once(&self.c));
        for &v in entries {
            as_integer(v)?;
        }
        self.to_real_polynomial().to_integer()
    }
}

pub fn qubo_to_polynomial(q: &QuboProblem) -> Result<BinaryPolynomial> {
    q.to_polynomial()
}

pub(crate) fn as_integer(v: f64) -> Result<i64> {
    if !v.is_finite() || v.fract() != 0.0 || v.abs() > (1u64 << 53) as f64 {
        return Err(Error::NonInteger(v));
    }
    Ok(v as i64)
}

/// Mean-variance objective `q·xᵀΣx − μᵀx`.
pub fn portfolio_qubo(risk_factor: f64, mu: &[f64], sigma: &[Vec<f64>]) -> Result<QuboProblem> {
    let q = sigma
        .iter()
        .map(|row| row.iter().map(|v| risk_factor * v).collect())
        .collect();
    QuboProblem::new(q, mu.iter().map(|m| -m).collect(), 0.0)
}
