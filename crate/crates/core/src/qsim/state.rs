use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::gate::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};

/// Tolerance on ‖ψ‖² for state-level checks.
pub const NORM_TOLERANCE: f64 = 1e-9;
/// A state whose ‖ψ‖² deviates more than this from 1 cannot be measured.
pub const MEASURE_TOLERANCE: f64 = 1e-6;

/// Dense state vector. Qubit 0 is the least significant bit of the basis index.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// `|0…0⟩` on `num_qubits` qubits.
    pub fn zero(num_qubits: usize) -> Self {
        Self::basis(num_qubits, 0)
    }

    pub fn basis(num_qubits: usize, index: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << num_qubits];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        StateVector {
            num_qubits,
            amplitudes,
        }
    }

    /// Wraps raw amplitudes; the length must be a power of two.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(Error::Dimension(format!(
                "{len} amplitudes is not a power of two"
            )));
        }
        Ok(StateVector {
            num_qubits: len.trailing_zeros() as usize,
            amplitudes,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.num_qubits)?;
        let cmask = gate.controls.iter().fold(0usize, |m, &c| m | (1 << c));
        let t = 1usize << gate.targets[0];
        let amps = &mut self.amplitudes;
        match gate.kind {
            GateKind::Z => {
                let mask = cmask | t;
                for (i, a) in amps.iter_mut().enumerate() {
                    if i & mask == mask {
                        *a = -*a;
                    }
                }
            }
            GateKind::Phase(theta) => {
                let mask = cmask | t;
                let w = Complex64::from_polar(1.0, theta.rem_euclid(TAU));
                for (i, a) in amps.iter_mut().enumerate() {
                    if i & mask == mask {
                        *a *= w;
                    }
                }
            }
            GateKind::X => {
                for i in 0..amps.len() {
                    if i & t == 0 && i & cmask == cmask {
                        amps.swap(i, i | t);
                    }
                }
            }
            GateKind::Swap => {
                let u = 1usize << gate.targets[1];
                for i in 0..amps.len() {
                    if i & t != 0 && i & u == 0 && i & cmask == cmask {
                        amps.swap(i, i ^ t ^ u);
                    }
                }
            }
            GateKind::H => {
                let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
                let m = [[s, s], [s, -s]];
                apply_2x2(amps, t, cmask, m);
            }
            GateKind::Rx(theta) => {
                // Reduction is mod 4π: Rx(θ + 2π) = -Rx(θ).
                let half = theta.rem_euclid(2.0 * TAU) / 2.0;
                let (c, s) = (half.cos(), half.sin());
                let m = [
                    [Complex64::new(c, 0.0), Complex64::new(0.0, -s)],
                    [Complex64::new(0.0, -s), Complex64::new(c, 0.0)],
                ];
                apply_2x2(amps, t, cmask, m);
            }
            GateKind::Ry(theta) => {
                let half = theta.rem_euclid(2.0 * TAU) / 2.0;
                let (c, s) = (half.cos(), half.sin());
                let m = [
                    [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
                    [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
                ];
                apply_2x2(amps, t, cmask, m);
            }
        }
        Ok(())
    }

    pub fn apply_circuit(&mut self, circuit: &Circuit) -> Result<()> {
        if circuit.num_qubits() != self.num_qubits {
            return Err(Error::QubitCountMismatch {
                state: self.num_qubits,
                circuit: circuit.num_qubits(),
            });
        }
        circuit.gates().iter().try_for_each(|g| self.apply_gate(g))
    }

    /// Samples one basis index from the Born distribution.
    pub fn measure_all<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<usize> {
        let norm = self.norm_sqr();
        if (norm - 1.0).abs() > MEASURE_TOLERANCE {
            return Err(Error::Unnormalized(norm));
        }
        let u: f64 = rng.gen::<f64>() * norm;
        let mut acc = 0.0;
        let mut last_nonzero = 0;
        for (i, a) in self.amplitudes.iter().enumerate() {
            let p = a.norm_sqr();
            if p > 0.0 {
                last_nonzero = i;
                acc += p;
                if u < acc {
                    return Ok(i);
                }
            }
        }
        // u landed in the rounding slack above the cumulative sum.
        Ok(last_nonzero)
    }

    pub fn measure_with_seed(&self, seed: u64) -> Result<usize> {
        self.measure_all(&mut ChaCha8Rng::seed_from_u64(seed))
    }

    /// Marginal distribution over the qubits in `qubits`, with `qubits[0]` as the
    /// least significant bit of the returned index.
    pub fn marginal(&self, qubits: &[usize]) -> Vec<f64> {
        let mut out = vec![0.0; 1 << qubits.len()];
        for (i, a) in self.amplitudes.iter().enumerate() {
            let k = qubits
                .iter()
                .enumerate()
                .fold(0usize, |k, (bit, &q)| k | (((i >> q) & 1) << bit));
            out[k] += a.norm_sqr();
        }
        out
    }
}

fn apply_2x2(amps: &mut [Complex64], t: usize, cmask: usize, m: [[Complex64; 2]; 2]) {
    for i in 0..amps.len() {
        if i & t == 0 && i & cmask == cmask {
            let j = i | t;
            let (a0, a1) = (amps[i], amps[j]);
            amps[i] = m[0][0] * a0 + m[0][1] * a1;
            amps[j] = m[1][0] * a0 + m[1][1] * a1;
        }
    }
}
