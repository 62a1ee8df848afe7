use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{BinaryPolynomial, CpboProblem};

/// Named, contiguous qubit ranges. In order: key register, objective value
/// register, one value register per constraint, one indicator per constraint,
/// the optional global flag, the optional R_y ancilla.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegisterLayout {
    n: usize,
    m: usize,
    constraint_registers: Vec<(String, usize)>,
    global_flag: bool,
    ancilla: bool,
}

impl RegisterLayout {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParameter(format!(
                "value register needs at least 2 qubits, got {m}"
            )));
        }
        Ok(RegisterLayout {
            n,
            m,
            constraint_registers: Vec::new(),
            global_flag: false,
            ancilla: false,
        })
    }

    /// Layout for `problem` with `m` objective qubits and each constraint
    /// register sized to hold its polynomial exactly.
    pub fn for_problem(problem: &CpboProblem, m: usize) -> Result<Self> {
        let mut layout = Self::new(problem.num_vars(), m)?;
        for (i, c) in problem.constraints().iter().enumerate() {
            let (lo, hi) = value_range(&c.polynomial)?;
            layout = layout.with_constraint_register(format!("c{i}"), required_qubits(lo, hi))?;
        }
        Ok(layout)
    }

    pub fn with_constraint_register(
        mut self,
        name: impl Into<String>,
        width: usize,
    ) -> Result<Self> {
        if width < 2 {
            return Err(Error::InvalidParameter(format!(
                "constraint register needs at least 2 qubits, got {width}"
            )));
        }
        self.constraint_registers.push((name.into(), width));
        Ok(self)
    }

    pub fn with_global_flag(mut self, enabled: bool) -> Self {
        self.global_flag = enabled;
        self
    }

    pub fn with_ancilla(mut self, enabled: bool) -> Self {
        self.ancilla = enabled;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn num_constraints(&self) -> usize {
        self.constraint_registers.len()
    }

    pub fn constraint_registers(&self) -> &[(String, usize)] {
        &self.constraint_registers
    }

    pub fn key(&self) -> Range<usize> {
        0..self.n
    }

    pub fn value(&self) -> Range<usize> {
        self.n..self.n + self.m
    }

    /// Most significant qubit of the objective value register.
    pub fn sign_qubit(&self) -> usize {
        self.n + self.m - 1
    }

    pub fn constraint_register(&self, i: usize) -> Range<usize> {
        let start = self.n
            + self.m
            + self.constraint_registers[..i]
                .iter()
                .map(|(_, w)| w)
                .sum::<usize>();
        start..start + self.constraint_registers[i].1
    }

    fn registers_end(&self) -> usize {
        self.n
            + self.m
            + self
                .constraint_registers
                .iter()
                .map(|(_, w)| w)
                .sum::<usize>()
    }

    pub fn indicator(&self, i: usize) -> usize {
        assert!(i < self.num_constraints());
        self.registers_end() + i
    }

    pub fn global_flag(&self) -> Option<usize> {
        self.global_flag
            .then(|| self.registers_end() + self.num_constraints())
    }

    pub fn ancilla(&self) -> Option<usize> {
        self.ancilla
            .then(|| self.registers_end() + self.num_constraints() + usize::from(self.global_flag))
    }

    pub fn total_qubits(&self) -> usize {
        self.registers_end()
            + self.num_constraints()
            + usize::from(self.global_flag)
            + usize::from(self.ancilla)
    }

    /// Extracts `(key, raw value)` from a basis index.
    pub fn split(&self, basis: usize) -> (usize, usize) {
        let key = basis & ((1 << self.n) - 1);
        let value = (basis >> self.n) & ((1 << self.m) - 1);
        (key, value)
    }
}

/// Smallest register width (at least 2) whose two's-complement range covers `[lo, hi]`.
pub fn required_qubits(lo: i64, hi: i64) -> usize {
    let mut w = 2;
    while w < 63 && !(lo >= -(1i64 << (w - 1)) && hi < (1i64 << (w - 1))) {
        w += 1;
    }
    w
}

/// Default objective register size: `⌈log₂(U − L + 1)⌉ + 1`, where `L` and `U`
/// are the sums of the negative and positive coefficients. The extra qubit makes
/// room for `f(x) − y` with any threshold `y` in `[L, U]`.
pub fn default_value_qubits(poly: &BinaryPolynomial) -> usize {
    let (lo, hi) = poly.coefficient_bounds();
    let span = (hi as i128 - lo as i128 + 1).max(1) as u128;
    let bits = 128 - (span - 1).leading_zeros() as usize;
    (bits + 1).max(2)
}

/// Exact value range for small `n`, coefficient bounds otherwise.
pub fn value_range(poly: &BinaryPolynomial) -> Result<(i64, i64)> {
    if poly.num_vars() <= 20 {
        poly.exact_range()
    } else {
        Ok(poly.coefficient_bounds())
    }
}

/// Two's-complement image of `k` in an `m`-bit register.
pub fn encode_twos_complement(k: i64, m: usize) -> usize {
    k.rem_euclid(1i64 << m) as usize
}

pub fn decode_twos_complement(raw: usize, m: usize) -> Result<i64> {
    if m == 0 || m > 62 || raw >= 1 << m {
        return Err(Error::InvalidParameter(format!(
            "raw value {raw} does not fit {m} qubits"
        )));
    }
    let raw = raw as i64;
    Ok(if raw < 1 << (m - 1) {
        raw
    } else {
        raw - (1 << m)
    })
}
