//! Classical reference results: exhaustive minimization and closed-form
//! amplitude-amplification predictions. Nothing here touches the circuit
//! builders, so a disagreement with a simulation points at the circuits.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::poly::CpboProblem;

/// Largest key register accepted by the exhaustive oracles.
pub const MAX_BRUTE_FORCE_VARS: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForceResult {
    pub value: i64,
    /// Every minimizing key, ascending; bit `j` is `x_j`.
    pub argmins: Vec<usize>,
}

pub fn brute_force_min(problem: &CpboProblem) -> Result<BruteForceResult> {
    let n = problem.num_vars();
    if n > MAX_BRUTE_FORCE_VARS {
        return Err(Error::InvalidParameter(format!(
            "brute force is limited to {MAX_BRUTE_FORCE_VARS} variables, got {n}"
        )));
    }
    let mut best: Option<BruteForceResult> = None;
    for key in 0..1usize << n {
        if !problem.is_feasible_key(key)? {
            continue;
        }
        let v = problem.objective().evaluate_key(key)?;
        match &mut best {
            Some(b) if v > b.value => {}
            Some(b) if v == b.value => b.argmins.push(key),
            _ => {
                best = Some(BruteForceResult {
                    value: v,
                    argmins: vec![key],
                })
            }
        }
    }
    best.ok_or(Error::Infeasible)
}

/// Probability of measuring a marked item after `r` Grover iterations with
/// `s` of `n_items` marked: `sin²((2r+1)·asin(√(s/N)))`.
pub fn amplification_probability(n_items: usize, marked: usize, r: usize) -> f64 {
    if marked == 0 || n_items == 0 {
        return 0.0;
    }
    let theta = (marked as f64 / n_items as f64).sqrt().asin();
    ((2 * r + 1) as f64 * theta).sin().powi(2)
}

/// Keys flagged for threshold `y`: feasible, and `f(x) − y` negative as read
/// back from an `m`-bit two's-complement register.
pub fn flagged_keys(problem: &CpboProblem, y: i64, m: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for key in 0..1usize << problem.num_vars() {
        let raw = register_image(problem.objective().evaluate_key(key)? - y, m);
        if raw >= 1 << (m - 1) && problem.is_feasible_key(key)? {
            out.push(key);
        }
    }
    Ok(out)
}

fn register_image(v: i64, m: usize) -> usize {
    v.rem_euclid(1i64 << m) as usize
}

/// Closed-form distribution over `(key, value register)` after `G^r A_y|0⟩`,
/// keyed by `key | raw << n`. Marked mass `sin²((2r+1)θ)` is spread evenly over
/// the flagged keys and the remainder evenly over the rest.
pub fn predict_distribution(
    problem: &CpboProblem,
    y: i64,
    r: usize,
    m: usize,
) -> Result<BTreeMap<usize, f64>> {
    let n = problem.num_vars();
    let n_items = 1usize << n;
    let flagged = flagged_keys(problem, y, m)?;
    let s = flagged.len();
    let p_marked = amplification_probability(n_items, s, r);
    let (per_marked, per_other) = if s == 0 {
        (0.0, 1.0 / n_items as f64)
    } else if s == n_items {
        (1.0 / n_items as f64, 0.0)
    } else {
        (p_marked / s as f64, (1.0 - p_marked) / (n_items - s) as f64)
    };
    let mut out = BTreeMap::new();
    for key in 0..n_items {
        let raw = register_image(problem.objective().evaluate_key(key)? - y, m);
        let p = if flagged.binary_search(&key).is_ok() {
            per_marked
        } else {
            per_other
        };
        out.insert(key | raw << n, p);
    }
    Ok(out)
}
