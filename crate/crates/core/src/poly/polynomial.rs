use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sorted, duplicate-free variable subset identifying a monomial. The empty
/// subset is the free term.
pub type Monomial = Vec<usize>;

/// Multilinear polynomial with integer coefficients over binary variables.
///
/// Zero coefficients are never stored and every key is a canonical subset,
/// so two polynomials are equal iff their term maps are equal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryPolynomial {
    num_vars: usize,
    terms: BTreeMap<Monomial, i64>,
}

impl BinaryPolynomial {
    pub fn zero(num_vars: usize) -> Self {
        BinaryPolynomial {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: i64) -> Self {
        let mut p = Self::zero(num_vars);
        if c != 0 {
            p.terms.insert(Vec::new(), c);
        }
        p
    }

    /// Builds a polynomial from `(variables, coefficient)` pairs. Repeated
    /// variables collapse (`x² = x`) and like terms are merged.
    pub fn from_terms<I, V>(num_vars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (V, i64)>,
        V: AsRef<[usize]>,
    {
        let mut p = Self::zero(num_vars);
        for (vars, coeff) in terms {
            p.add_term(vars.as_ref(), coeff)?;
        }
        Ok(p)
    }

    pub fn add_term(&mut self, vars: &[usize], coeff: i64) -> Result<()> {
        let key = canonical(vars, self.num_vars)?;
        let entry = self.terms.entry(key.clone()).or_insert(0);
        *entry = entry
            .checked_add(coeff)
            .ok_or(Error::Overflow("adding terms"))?;
        if *entry == 0 {
            self.terms.remove(&key);
        }
        Ok(())
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i64)> {
        self.terms.iter().map(|(k, &v)| (k, v))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, vars: &[usize]) -> i64 {
        let mut key = vars.to_vec();
        key.sort_unstable();
        key.dedup();
        self.terms.get(&key).copied().unwrap_or(0)
    }

    pub fn free_term(&self) -> i64 {
        self.coefficient(&[])
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// Sum of negative and sum of positive coefficients: every value of the
    /// polynomial lies in `[lower, upper]`.
    pub fn coefficient_bounds(&self) -> (i64, i64) {
        self.terms.values().fold((0i64, 0i64), |(lo, hi), &c| {
            if c < 0 {
                (lo.saturating_add(c), hi)
            } else {
                (lo, hi.saturating_add(c))
            }
        })
    }

    /// Evaluates at an explicit 0/1 assignment.
    pub fn evaluate(&self, x: &[u8]) -> Result<i64> {
        if x.len() != self.num_vars {
            return Err(Error::InvalidAssignment(format!(
                "expected {} values, got {}",
                self.num_vars,
                x.len()
            )));
        }
        if let Some(v) = x.iter().find(|&&v| v > 1) {
            return Err(Error::InvalidAssignment(format!("value {v} is not binary")));
        }
        self.evaluate_key(assignment_to_key(x))
    }

    /// Evaluates at the assignment whose bit `j` is `x_j`.
    pub fn evaluate_key(&self, key: usize) -> Result<i64> {
        let mut acc: i64 = 0;
        for (vars, &c) in &self.terms {
            if vars.iter().all(|&j| (key >> j) & 1 == 1) {
                acc = acc.checked_add(c).ok_or(Error::Overflow("evaluating"))?;
            }
        }
        Ok(acc)
    }

    /// Exact `(min, max)` over all `2^n` assignments.
    pub fn exact_range(&self) -> Result<(i64, i64)> {
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for key in 0..1usize << self.num_vars {
            let v = self.evaluate_key(key)?;
            lo = lo.min(v);
            hi = hi.max(v);
        }
        Ok((lo, hi))
    }

    pub fn add(&self, other: &BinaryPolynomial) -> Result<BinaryPolynomial> {
        self.same_vars(other)?;
        let mut out = self.clone();
        for (vars, c) in other.terms() {
            out.add_term(vars, c)?;
        }
        Ok(out)
    }

    pub fn add_constant(&self, c: i64) -> Result<BinaryPolynomial> {
        let mut out = self.clone();
        out.add_term(&[], c)?;
        Ok(out)
    }

    pub fn scale(&self, factor: i64) -> Result<BinaryPolynomial> {
        let mut out = Self::zero(self.num_vars);
        for (vars, c) in self.terms() {
            let v = c.checked_mul(factor).ok_or(Error::Overflow("scaling"))?;
            out.add_term(vars, v)?;
        }
        Ok(out)
    }

    /// Product reduced with `x_i² = x_i`: monomials multiply by subset union.
    pub fn mul(&self, other: &BinaryPolynomial) -> Result<BinaryPolynomial> {
        self.same_vars(other)?;
        let mut out = Self::zero(self.num_vars);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                let mut vars = a.clone();
                vars.extend_from_slice(b);
                let c = ca.checked_mul(cb).ok_or(Error::Overflow("multiplying"))?;
                out.add_term(&vars, c)?;
            }
        }
        Ok(out)
    }

    /// Keys (bit `j` = `x_j`) on which the two polynomials take different values.
    pub fn disagreements(&self, other: &BinaryPolynomial) -> Result<Vec<usize>> {
        self.same_vars(other)?;
        let mut out = Vec::new();
        for key in 0..1usize << self.num_vars {
            if self.evaluate_key(key)? != other.evaluate_key(key)? {
                out.push(key);
            }
        }
        Ok(out)
    }

    fn same_vars(&self, other: &BinaryPolynomial) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(Error::Dimension(format!(
                "{} vs {} variables",
                self.num_vars, other.num_vars
            )));
        }
        Ok(())
    }
}

impl fmt::Display for BinaryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (vars, &c)) in self.terms.iter().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.unsigned_abs();
            if vars.is_empty() || mag != 1 {
                write!(f, "{mag}")?;
            }
            for v in vars {
                write!(f, "x{v}")?;
            }
        }
        Ok(())
    }
}

pub(crate) fn canonical(vars: &[usize], num_vars: usize) -> Result<Monomial> {
    if let Some(&index) = vars.iter().find(|&&v| v >= num_vars) {
        return Err(Error::VariableOutOfRange { index, num_vars });
    }
    let mut key = vars.to_vec();
    key.sort_unstable();
    key.dedup();
    Ok(key)
}

/// Packs a 0/1 assignment into a key with bit `j` = `x_j`.
pub fn assignment_to_key(x: &[u8]) -> usize {
    x.iter()
        .enumerate()
        .fold(0, |k, (j, &v)| k | ((v as usize & 1) << j))
}

pub fn key_to_assignment(key: usize, num_vars: usize) -> Vec<u8> {
    (0..num_vars).map(|j| ((key >> j) & 1) as u8).collect()
}
