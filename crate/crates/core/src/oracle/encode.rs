//! Quantum-dictionary state preparation: controlled geometric-sequence phases
//! followed by an inverse QFT write `|x⟩|P(x) mod 2^m⟩`.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use super::layout::{required_qubits, value_range, RegisterLayout};
use crate::error::{Error, Result};
use crate::poly::BinaryPolynomial;
use crate::qsim::{inverse_qft, Circuit, Gate, GateKind};

/// How the controlled phase rotations are realized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Encoder {
    /// Controlled phase gates on the value register.
    #[default]
    Phase,
    /// Controlled R_y rotations kicked back from an ancilla held in an R_y eigenstate.
    Ry,
}

/// `U_G(θ)` on `register` (`register[0]` least significant): `R(2^i θ)` on the
/// weight-`2^i` qubit, emitted from the most significant qubit down.
pub fn build_ug(theta: f64, register: &[usize], num_qubits: usize) -> Result<Circuit> {
    if register.is_empty() {
        return Err(Error::InvalidParameter(
            "U_G needs at least one qubit".into(),
        ));
    }
    let mut c = Circuit::new(num_qubits);
    for (i, &q) in register.iter().enumerate().rev() {
        c.phase((1u64 << i) as f64 * theta, q)?;
    }
    Ok(c)
}

/// Phase angle `2π·a / 2^m` for integer `a`, with `a` first wrapped into
/// `[-2^{m-1}, 2^{m-1})` so the angle lies in `[-π, π)`.
pub fn dictionary_angle(a: i64, m: usize) -> f64 {
    let modulus = 1i64 << m;
    let mut r = a.rem_euclid(modulus);
    if r >= modulus / 2 {
        r -= modulus;
    }
    2.0 * PI * r as f64 / modulus as f64
}

/// `C^J(U_G(2π a_J / 2^m))`: the geometric-sequence block for one monomial,
/// controlled on the key qubits in `vars`.
pub fn build_controlled_monomial(
    vars: &[usize],
    coeff: i64,
    layout: &RegisterLayout,
) -> Result<Circuit> {
    let value: Vec<usize> = layout.value().collect();
    controlled_monomial_on(vars, coeff, layout.n(), &value, layout.total_qubits())
}

fn controlled_monomial_on(
    vars: &[usize],
    coeff: i64,
    n: usize,
    register: &[usize],
    num_qubits: usize,
) -> Result<Circuit> {
    if coeff == 0 {
        return Err(Error::InvalidParameter(
            "monomial coefficient must be non-zero".into(),
        ));
    }
    if let Some(&index) = vars.iter().find(|&&v| v >= n) {
        return Err(Error::VariableOutOfRange { index, num_vars: n });
    }
    build_ug(
        dictionary_angle(coeff, register.len()),
        register,
        num_qubits,
    )?
    .with_controls(vars)
}

/// Checks that `poly + shift` fits an `m`-qubit register over every assignment.
pub fn check_fits(poly: &BinaryPolynomial, shift: i64, m: usize) -> Result<()> {
    let (lo, hi) = value_range(poly)?;
    let lo = lo.checked_add(shift).ok_or(Error::Overflow("shifting"))?;
    let hi = hi.checked_add(shift).ok_or(Error::Overflow("shifting"))?;
    let required = required_qubits(lo, hi);
    if required > m {
        return Err(Error::ValueOverflow {
            m,
            min: lo,
            max: hi,
            required,
        });
    }
    Ok(())
}

/// Writes `(poly(x) + shift) mod 2^w` into `register`, which starts in `|0⟩`:
/// H on the register, one controlled block per monomial, inverse QFT. The key
/// register is assumed to occupy qubits `0..n`.
pub fn encode_into_register(
    poly: &BinaryPolynomial,
    shift: i64,
    register: &[usize],
    num_qubits: usize,
    encoder: Encoder,
    ancilla: Option<usize>,
) -> Result<Circuit> {
    let n = poly.num_vars();
    let mut c = Circuit::new(num_qubits);
    for &q in register {
        c.h(q)?;
    }
    let mut phases = Circuit::new(num_qubits);
    let shifted = poly.add_constant(shift)?;
    for (vars, coeff) in shifted.terms() {
        phases.append(&controlled_monomial_on(
            vars, coeff, n, register, num_qubits,
        )?)?;
    }
    match encoder {
        Encoder::Phase => {
            c.append(&phases)?;
        }
        Encoder::Ry => {
            let anc = ancilla.ok_or_else(|| {
                Error::InvalidParameter("the R_y encoder needs an ancilla qubit".into())
            })?;
            let prep = ry_eigenstate_prep(anc, num_qubits)?;
            c.append(&prep)?;
            c.append(&phases_as_ry_kickback(&phases, anc)?)?;
            c.append(&prep.adjoint())?;
        }
    }
    c.append(&inverse_qft(num_qubits, register)?)?;
    Ok(c)
}

/// `A_y`: uniform superposition of keys entangled with `|f(x) − y mod 2^m⟩`.
pub fn build_a(
    poly: &BinaryPolynomial,
    threshold: i64,
    layout: &RegisterLayout,
    encoder: Encoder,
) -> Result<Circuit> {
    if poly.num_vars() != layout.n() {
        return Err(Error::Dimension(format!(
            "polynomial has {} variables, layout has {} key qubits",
            poly.num_vars(),
            layout.n()
        )));
    }
    let shift = threshold
        .checked_neg()
        .ok_or(Error::Overflow("negating the threshold"))?;
    check_fits(poly, shift, layout.m())?;
    let num_qubits = layout.total_qubits();
    let mut c = Circuit::new(num_qubits);
    for q in layout.key() {
        c.h(q)?;
    }
    let value: Vec<usize> = layout.value().collect();
    c.append(&encode_into_register(
        poly,
        shift,
        &value,
        num_qubits,
        encoder,
        layout.ancilla(),
    )?)?;
    Ok(c)
}

/// `E(R_y)`: `R_x(π/2)`, `Z`, `X` takes `|0⟩` to `(i|0⟩ + |1⟩)/√2`, on which
/// `R_y(2θ)` acts as the phase `e^{iθ}`.
pub fn ry_eigenstate_prep(ancilla: usize, num_qubits: usize) -> Result<Circuit> {
    let mut c = Circuit::new(num_qubits);
    c.push(Gate::single(GateKind::Rx(FRAC_PI_2), ancilla))?
        .z(ancilla)?
        .x(ancilla)?;
    Ok(c)
}

/// Rewrites each (controlled) phase gate `R(φ)` on qubit `v` as `R_y(2φ)` on the
/// ancilla, controlled on `v` and the original controls.
fn phases_as_ry_kickback(phases: &Circuit, ancilla: usize) -> Result<Circuit> {
    let mut out = Circuit::new(phases.num_qubits());
    for g in phases.gates() {
        let GateKind::Phase(phi) = g.kind else {
            return Err(Error::InvalidParameter(format!(
                "cannot kick back a {} gate",
                g.kind.name()
            )));
        };
        let mut controls = g.controls.clone();
        controls.push(g.targets[0]);
        out.push(Gate::controlled(GateKind::Ry(2.0 * phi), ancilla, controls))?;
    }
    Ok(out)
}

/// `A_y` realized with the R_y ancilla encoder; the layout must reserve an ancilla.
pub fn build_ry_encoder(
    poly: &BinaryPolynomial,
    threshold: i64,
    layout: &RegisterLayout,
) -> Result<Circuit> {
    if layout.ancilla().is_none() {
        return Err(Error::InvalidParameter(
            "layout has no ancilla for the R_y encoder".into(),
        ));
    }
    build_a(poly, threshold, layout, Encoder::Ry)
}
