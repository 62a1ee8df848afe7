use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::polynomial::{canonical, BinaryPolynomial, Monomial};
use super::qubo::as_integer;
use crate::error::{Error, Result};

/// Multilinear polynomial with real coefficients, the input to quantization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealPolynomial {
    num_vars: usize,
    terms: BTreeMap<Monomial, f64>,
}

impl RealPolynomial {
    pub fn zero(num_vars: usize) -> Self {
        RealPolynomial {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I, V>(num_vars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (V, f64)>,
        V: AsRef<[usize]>,
    {
        let mut p = Self::zero(num_vars);
        for (vars, c) in terms {
            canonical(vars.as_ref(), num_vars)?;
            p.add_term(vars.as_ref(), c);
        }
        Ok(p)
    }

    /// Variables must be in range; callers inside the crate guarantee it.
    pub(crate) fn add_term(&mut self, vars: &[usize], coeff: f64) {
        let mut key = vars.to_vec();
        key.sort_unstable();
        key.dedup();
        let entry = self.terms.entry(key.clone()).or_insert(0.0);
        *entry += coeff;
        if *entry == 0.0 {
            self.terms.remove(&key);
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, f64)> {
        self.terms.iter().map(|(k, &v)| (k, v))
    }

    pub fn evaluate_key(&self, key: usize) -> f64 {
        self.terms
            .iter()
            .filter(|(vars, _)| vars.iter().all(|&j| (key >> j) & 1 == 1))
            .map(|(_, c)| c)
            .sum()
    }

    pub fn to_integer(&self) -> Result<BinaryPolynomial> {
        let mut p = BinaryPolynomial::zero(self.num_vars);
        for (vars, c) in self.terms() {
            p.add_term(vars, as_integer(c)?)?;
        }
        Ok(p)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantizationReport {
    /// Multiplier taking an original coefficient to its (unrounded) integer image,
    /// `2^{m-1} / max|v|`.
    pub scale: f64,
    pub quantized: BinaryPolynomial,
    /// Largest rounding error, in units of the normalized coefficients `v / max|v|`.
    pub max_abs_error: f64,
}

/// Rescales so the largest magnitude maps to `2^{m-1}` and rounds half away
/// from zero. A positive maximum is clamped to `2^{m-1} - 1` so that every
/// integer fits an `m`-bit two's-complement register.
pub fn quantize(poly: &RealPolynomial, m: usize) -> Result<QuantizationReport> {
    if !(2..=62).contains(&m) {
        return Err(Error::InvalidParameter(format!(
            "quantization needs 2 <= m <= 62, got {m}"
        )));
    }
    let max = poly.terms().map(|(_, c)| c.abs()).fold(0.0, f64::max);
    if max == 0.0 {
        return Err(Error::AllZero);
    }
    if !max.is_finite() {
        return Err(Error::InvalidParameter("non-finite coefficient".into()));
    }
    let half = (1i64 << (m - 1)) as f64;
    let mut quantized = BinaryPolynomial::zero(poly.num_vars());
    let mut max_abs_error: f64 = 0.0;
    for (vars, c) in poly.terms() {
        let scaled = c / max * half;
        let k = scaled.round().min(half - 1.0);
        max_abs_error = max_abs_error.max((scaled - k).abs() / half);
        quantized.add_term(vars, k as i64)?;
    }
    Ok(QuantizationReport {
        scale: half / max,
        quantized,
        max_abs_error,
    })
}
