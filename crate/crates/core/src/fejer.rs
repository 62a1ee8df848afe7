//! Outcome distributions for non-integer phase targets fed through `U_G` and
//! the inverse QFT. Analysis only; the solver quantizes to integers first.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::build_ug;
use crate::qsim::{inverse_qft, run, Circuit};

/// Largest register accepted; keeps `2^m` probability vectors small.
pub const MAX_FEJER_QUBITS: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FejerDistribution {
    pub m: usize,
    pub a: f64,
    /// `probabilities[j]` is the chance of reading `|j⟩`.
    pub probabilities: Vec<f64>,
}

impl FejerDistribution {
    /// Register values of `⌊a⌋` and `⌈a⌉`, reduced mod `2^m`. Equal for integer `a`.
    pub fn nearest_outcomes(&self) -> (usize, usize) {
        let size = 1i64 << self.m;
        let lo = (self.a.floor() as i64).rem_euclid(size) as usize;
        let hi = (self.a.ceil() as i64).rem_euclid(size) as usize;
        (lo, hi)
    }

    pub fn two_nearest_mass(&self) -> f64 {
        let (lo, hi) = self.nearest_outcomes();
        if lo == hi {
            self.probabilities[lo]
        } else {
            self.probabilities[lo] + self.probabilities[hi]
        }
    }
}

fn check_m(m: usize) -> Result<()> {
    if !(2..=MAX_FEJER_QUBITS).contains(&m) {
        return Err(Error::InvalidParameter(format!(
            "m must lie in 2..={MAX_FEJER_QUBITS}, got {m}"
        )));
    }
    Ok(())
}

/// Closed form: `P(j) = |⟨G(2πa/2^m), G(2πj/2^m)⟩|² / 2^{2m}`, with the
/// geometric sum evaluated as a Dirichlet kernel.
pub fn fejer_distribution(a: f64, m: usize) -> Result<FejerDistribution> {
    check_m(m)?;
    if !a.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "target must be finite, got {a}"
        )));
    }
    let size = 1usize << m;
    let n = size as f64;
    let probabilities = (0..size)
        .map(|j| {
            let half = PI * (a - j as f64) / n;
            let s = half.sin();
            if s.abs() < 1e-15 {
                1.0
            } else {
                ((n * half).sin() / (n * s)).powi(2)
            }
        })
        .collect();
    Ok(FejerDistribution {
        m,
        a,
        probabilities,
    })
}

/// `H^{⊗m}`, `U_G(2πa/2^m)`, inverse QFT.
pub fn fejer_circuit(a: f64, m: usize) -> Result<Circuit> {
    check_m(m)?;
    let register: Vec<usize> = (0..m).collect();
    let mut c = Circuit::new(m);
    for &q in &register {
        c.h(q)?;
    }
    c.append(&build_ug(2.0 * PI * a / (1u64 << m) as f64, &register, m)?)?
        .append(&inverse_qft(m, &register)?)?;
    Ok(c)
}

/// The same distribution obtained by simulating [`fejer_circuit`].
pub fn simulate_fejer(a: f64, m: usize) -> Result<FejerDistribution> {
    let state = run(&fejer_circuit(a, m)?)?;
    Ok(FejerDistribution {
        m,
        a,
        probabilities: state.probabilities(),
    })
}
