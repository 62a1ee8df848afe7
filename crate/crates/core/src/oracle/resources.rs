use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::layout::RegisterLayout;
use crate::poly::BinaryPolynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GateClass {
    /// Hadamards on the value register.
    H,
    /// Phase rotation with the given number of key-register controls.
    R(usize),
    InverseQft,
}

impl fmt::Display for GateClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateClass::H => write!(f, "H"),
            GateClass::R(0) => write!(f, "R"),
            GateClass::R(k) => write!(f, "{k}-controlled R"),
            GateClass::InverseQft => write!(f, "Inverse QFT"),
        }
    }
}

/// Gate counts for `A` by class. Hadamards on the key register are kept apart
/// from the value-register count so both tallies stay visible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResourceEstimate {
    pub counts: BTreeMap<GateClass, usize>,
    pub key_hadamards: usize,
}

impl ResourceEstimate {
    pub fn get(&self, class: GateClass) -> usize {
        self.counts.get(&class).copied().unwrap_or(0)
    }
}

/// One `m`-gate rotation block per non-zero monomial, `m` value-register
/// Hadamards and a single inverse QFT.
pub fn estimate_resources(poly: &BinaryPolynomial, layout: &RegisterLayout) -> ResourceEstimate {
    let m = layout.m();
    let mut counts = BTreeMap::new();
    counts.insert(GateClass::H, m);
    counts.insert(GateClass::InverseQft, 1);
    for (vars, _) in poly.terms() {
        *counts.entry(GateClass::R(vars.len())).or_insert(0) += m;
    }
    ResourceEstimate {
        counts,
        key_hadamards: layout.n(),
    }
}

/// Closed-form counts for a dense QUBO with non-zero offset.
pub fn dense_qubo_counts(n: usize, m: usize) -> BTreeMap<GateClass, usize> {
    let mut counts = BTreeMap::from([
        (GateClass::H, m),
        (GateClass::R(0), m),
        (GateClass::InverseQft, 1),
    ]);
    if n >= 1 {
        counts.insert(GateClass::R(1), m * n);
    }
    if n >= 2 {
        counts.insert(GateClass::R(2), m * n * (n - 1) / 2);
    }
    counts
}
