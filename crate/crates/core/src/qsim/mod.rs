//! Exact state-vector simulation for the small gate set used by the oracles.
//!
//! Qubit 0 is the least significant bit of a basis-state index throughout the
//! crate. Registers are decoded with their first qubit as the least significant bit.

mod gate;
mod qft;
mod state;

pub use gate::{Circuit, Gate, GateKind};
pub use qft::{inverse_qft, qft};
pub use state::{StateVector, MEASURE_TOLERANCE, NORM_TOLERANCE};

use crate::error::Result;

/// Applies `circuit` to a copy of `state`.
pub fn apply_circuit(state: &StateVector, circuit: &Circuit) -> Result<StateVector> {
    let mut out = state.clone();
    out.apply_circuit(circuit)?;
    Ok(out)
}

/// Runs `circuit` on `|0…0⟩`.
pub fn run(circuit: &Circuit) -> Result<StateVector> {
    let mut s = StateVector::zero(circuit.num_qubits());
    s.apply_circuit(circuit)?;
    Ok(s)
}
