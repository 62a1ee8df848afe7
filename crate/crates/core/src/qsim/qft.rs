use std::f64::consts::PI;

use super::gate::{Circuit, Gate, GateKind};
use crate::error::Result;

/// QFT on `register` (`register[0]` least significant) inside a `num_qubits` circuit:
/// `|j⟩ ↦ 2^{-m/2} Σ_k e^{2πi jk / 2^m} |k⟩`.
pub fn qft(num_qubits: usize, register: &[usize]) -> Result<Circuit> {
    let m = register.len();
    let mut c = Circuit::new(num_qubits);
    for j in (0..m).rev() {
        c.h(register[j])?;
        for k in (0..j).rev() {
            let angle = PI / (1u64 << (j - k)) as f64;
            c.push(Gate::controlled(
                GateKind::Phase(angle),
                register[j],
                vec![register[k]],
            ))?;
        }
    }
    for i in 0..m / 2 {
        c.swap(register[i], register[m - 1 - i])?;
    }
    Ok(c)
}

pub fn inverse_qft(num_qubits: usize, register: &[usize]) -> Result<Circuit> {
    Ok(qft(num_qubits, register)?.adjoint())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsim::StateVector;
    use num_complex::Complex64;

    #[test]
    fn matches_dft_matrix() {
        for m in 1..=5 {
            let reg: Vec<usize> = (0..m).collect();
            let c = qft(m, &reg).unwrap();
            let dim = 1usize << m;
            for j in 0..dim {
                let mut s = StateVector::basis(m, j);
                s.apply_circuit(&c).unwrap();
                for k in 0..dim {
                    let expected = Complex64::from_polar(
                        1.0 / (dim as f64).sqrt(),
                        2.0 * PI * (j * k) as f64 / dim as f64,
                    );
                    assert!(
                        (s.amplitudes()[k] - expected).norm() < 1e-10,
                        "m={m} j={j} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn inverse_undoes_forward_on_embedded_register() {
        let reg = [1, 3, 4];
        let mut s = StateVector::basis(5, 0b10110);
        let before = s.clone();
        s.apply_circuit(&qft(5, &reg).unwrap()).unwrap();
        s.apply_circuit(&inverse_qft(5, &reg).unwrap()).unwrap();
        for (a, b) in s.amplitudes().iter().zip(before.amplitudes()) {
            assert!((a - b).norm() < 1e-12);
        }
    }
}
