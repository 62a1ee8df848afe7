use super::encode::{build_a, encode_into_register, Encoder};
use super::layout::RegisterLayout;
use crate::error::{Error, Result};
use crate::poly::{CpboProblem, Relation};
use crate::qsim::{Circuit, Gate, GateKind};

/// The three Grover ingredients for one threshold, plus their composition.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleSet {
    pub a_y: Circuit,
    pub oracle: Circuit,
    pub diffusion: Circuit,
    /// `G = A D A† O`, as a gate list: `O`, then `A†`, then `D`, then `A`.
    pub grover_iterate: Circuit,
}

/// `Z` on the sign qubit of the objective register: phase −1 on negative values.
pub fn build_sign_oracle(layout: &RegisterLayout) -> Result<Circuit> {
    let mut c = Circuit::new(layout.total_qubits());
    c.z(layout.sign_qubit())?;
    Ok(c)
}

/// Reflection about `|0…0⟩` on every qubit of the layout: X on all, multi-controlled Z, X on all.
pub fn build_diffusion(layout: &RegisterLayout) -> Result<Circuit> {
    let total = layout.total_qubits();
    let mut c = Circuit::new(total);
    for q in 0..total {
        c.x(q)?;
    }
    let target = total - 1;
    c.push(Gate::controlled(
        GateKind::Z,
        target,
        (0..target).collect::<Vec<_>>(),
    ))?;
    for q in 0..total {
        c.x(q)?;
    }
    Ok(c)
}

/// Computes constraint `i` into its register, copies the satisfaction bit to the
/// indicator qubit, and uncomputes the register.
fn constraint_flag(
    problem: &CpboProblem,
    i: usize,
    layout: &RegisterLayout,
    encoder: Encoder,
) -> Result<Circuit> {
    let total = layout.total_qubits();
    let constraint = &problem.constraints()[i];
    let register: Vec<usize> = layout.constraint_register(i).collect();
    let compute = encode_into_register(
        &constraint.polynomial,
        0,
        &register,
        total,
        encoder,
        layout.ancilla(),
    )?;
    let indicator = layout.indicator(i);
    let mut c = compute.clone();
    match constraint.relation {
        Relation::LessThanZero => {
            let sign = *register.last().expect("register width >= 2");
            c.push(Gate::controlled(GateKind::X, indicator, vec![sign]))?;
        }
        Relation::EqualsZero => {
            for &q in &register {
                c.x(q)?;
            }
            c.push(Gate::controlled(GateKind::X, indicator, register.clone()))?;
            for &q in &register {
                c.x(q)?;
            }
        }
    }
    c.append(&compute.adjoint())?;
    Ok(c)
}

/// Phase oracle for a constrained problem: flips the sign of states whose
/// objective register is negative and whose key satisfies every constraint.
/// All constraint registers and indicators are returned to `|0⟩`.
pub fn build_constrained_oracle_circuit(
    problem: &CpboProblem,
    layout: &RegisterLayout,
    encoder: Encoder,
) -> Result<Circuit> {
    if layout.num_constraints() != problem.constraints().len() {
        return Err(Error::Dimension(format!(
            "layout has {} constraint registers, problem has {} constraints",
            layout.num_constraints(),
            problem.constraints().len()
        )));
    }
    if problem.constraints().is_empty() && layout.global_flag().is_none() {
        return build_sign_oracle(layout);
    }
    let total = layout.total_qubits();
    let mut flags = Circuit::new(total);
    for i in 0..problem.constraints().len() {
        flags.append(&constraint_flag(problem, i, layout, encoder)?)?;
    }
    let mut conditions = vec![layout.sign_qubit()];
    conditions.extend((0..layout.num_constraints()).map(|i| layout.indicator(i)));

    let mut c = flags.clone();
    match layout.global_flag() {
        Some(flag) => {
            let and = Gate::controlled(GateKind::X, flag, conditions);
            c.push(and.clone())?;
            c.z(flag)?;
            c.push(and)?;
        }
        None => {
            let target = conditions.pop().expect("at least the sign qubit");
            c.push(Gate::controlled(GateKind::Z, target, conditions))?;
        }
    }
    c.append(&flags.adjoint())?;
    Ok(c)
}

/// Builds `A_y`, `O`, `D` and `G` for threshold `y`.
pub fn build_constrained_oracle(
    problem: &CpboProblem,
    threshold: i64,
    layout: &RegisterLayout,
    encoder: Encoder,
) -> Result<OracleSet> {
    let a_y = build_a(problem.objective(), threshold, layout, encoder)?;
    let oracle = build_constrained_oracle_circuit(problem, layout, encoder)?;
    let diffusion = build_diffusion(layout)?;
    let mut grover_iterate = oracle.clone();
    grover_iterate
        .append(&a_y.adjoint())?
        .append(&diffusion)?
        .append(&a_y)?;
    Ok(OracleSet {
        a_y,
        oracle,
        diffusion,
        grover_iterate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::layout::encode_twos_complement;
    use crate::poly::{BinaryPolynomial, Constraint};
    use crate::qsim::{run, StateVector};

    fn two_var() -> BinaryPolynomial {
        BinaryPolynomial::from_terms(2, [(vec![], -2), (vec![0], 1), (vec![1], 1)]).unwrap()
    }

    #[test]
    fn sign_oracle_flips_negative_values_only() {
        let layout = RegisterLayout::new(1, 3).unwrap();
        let o = build_sign_oracle(&layout).unwrap();
        assert_eq!(o.len(), 1);
        for raw in 0..8usize {
            for key in 0..2usize {
                let basis = key | raw << 1;
                let mut s = StateVector::basis(4, basis);
                s.apply_circuit(&o).unwrap();
                let expected = if raw >= 4 { -1.0 } else { 1.0 };
                assert_eq!(s.amplitudes()[basis].re, expected, "raw {raw}");
            }
        }
    }

    #[test]
    fn diffusion_reflects_zero_state() {
        let layout = RegisterLayout::new(2, 2).unwrap();
        let d = build_diffusion(&layout).unwrap();
        for basis in 0..16 {
            let mut s = StateVector::basis(4, basis);
            s.apply_circuit(&d).unwrap();
            let expected = if basis == 0 { -1.0 } else { 1.0 };
            assert!((s.amplitudes()[basis].re - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn one_iteration_finds_the_minimum_of_two_variable_example() {
        let problem = CpboProblem::unconstrained(two_var());
        let layout = RegisterLayout::new(2, 3).unwrap();
        let set = build_constrained_oracle(&problem, -1, &layout, Encoder::Phase).unwrap();
        let mut s = run(&set.a_y).unwrap();
        s.apply_circuit(&set.grover_iterate).unwrap();
        let keys = s.marginal(&[0, 1]);
        assert!(1.0 - keys[0] < 1e-9, "P(00) = {}", keys[0]);
    }

    #[test]
    fn grover_iterate_is_the_composition() {
        let problem = CpboProblem::unconstrained(two_var());
        let layout = RegisterLayout::new(2, 3).unwrap();
        let set = build_constrained_oracle(&problem, 0, &layout, Encoder::Phase).unwrap();
        let n = set.oracle.len() + 2 * set.a_y.len() + set.diffusion.len();
        assert_eq!(set.grover_iterate.len(), n);
        assert_eq!(
            &set.grover_iterate.gates()[..set.oracle.len()],
            set.oracle.gates()
        );
        assert_eq!(
            &set.grover_iterate.gates()[n - set.a_y.len()..],
            set.a_y.gates()
        );
    }

    fn hamming_problem() -> CpboProblem {
        let f = BinaryPolynomial::from_terms(
            3,
            [
                (vec![0, 2], -2),
                (vec![1, 2], -1),
                (vec![0], -1),
                (vec![1], 2),
                (vec![2], -3),
            ],
        )
        .unwrap();
        let c = BinaryPolynomial::from_terms(
            3,
            [(vec![0], 1), (vec![1], 1), (vec![2], 1), (vec![], -2)],
        )
        .unwrap();
        CpboProblem::new(f, vec![Constraint::less_than_zero(c)]).unwrap()
    }

    /// Keys whose amplitude sign was flipped by the oracle applied to `A_y|0⟩`.
    fn flipped_keys(problem: &CpboProblem, layout: &RegisterLayout, y: i64) -> Vec<usize> {
        let set = build_constrained_oracle(problem, y, layout, Encoder::Phase).unwrap();
        let before = run(&set.a_y).unwrap();
        let mut after = before.clone();
        after.apply_circuit(&set.oracle).unwrap();
        let n = layout.n();
        let mut out = Vec::new();
        for key in 0..1usize << n {
            let v = problem.objective().evaluate_key(key).unwrap() - y;
            let basis = key | encode_twos_complement(v, layout.m()) << n;
            let ratio = after.amplitudes()[basis] / before.amplitudes()[basis];
            if (ratio.re + 1.0).abs() < 1e-9 {
                out.push(key);
            } else {
                assert!((ratio.re - 1.0).abs() < 1e-9);
            }
        }
        out
    }

    #[test]
    fn hamming_constraint_flags_feasible_negative_keys() {
        let problem = hamming_problem();
        let layout = RegisterLayout::for_problem(&problem, 4).unwrap();
        // (x0,x1,x2): (1,0,0) → -1 is key 0b001, (0,0,1) → -3 is key 0b100
        assert_eq!(flipped_keys(&problem, &layout, 0), vec![0b001, 0b100]);
        let with_flag = layout.clone().with_global_flag(true);
        assert_eq!(flipped_keys(&problem, &with_flag, 0), vec![0b001, 0b100]);
    }

    #[test]
    fn equality_constraint_detects_exact_state() {
        let f = BinaryPolynomial::from_terms(2, [(vec![0], -1), (vec![1], -1)]).unwrap();
        // x0 + x1 - 1 == 0
        let c =
            BinaryPolynomial::from_terms(2, [(vec![0], 1), (vec![1], 1), (vec![], -1)]).unwrap();
        let problem = CpboProblem::new(f, vec![Constraint::equals_zero(c)]).unwrap();
        let layout = RegisterLayout::for_problem(&problem, 3).unwrap();
        assert_eq!(flipped_keys(&problem, &layout, 0), vec![0b01, 0b10]);
    }

    #[test]
    fn infeasible_everywhere_flags_nothing() {
        let f = two_var();
        let c = BinaryPolynomial::from_terms(2, [(vec![0], 1), (vec![1], 1), (vec![], 1)]).unwrap();
        let problem = CpboProblem::new(f, vec![Constraint::less_than_zero(c)]).unwrap();
        let layout = RegisterLayout::for_problem(&problem, 4).unwrap();
        assert!(flipped_keys(&problem, &layout, 0).is_empty());
        let set = build_constrained_oracle(&problem, 0, &layout, Encoder::Phase).unwrap();
        let start = run(&set.a_y).unwrap();
        let mut s = start.clone();
        s.apply_circuit(&set.grover_iterate).unwrap();
        // invariant up to a global phase
        let overlap: num_complex::Complex64 = start
            .amplitudes()
            .iter()
            .zip(s.amplitudes())
            .map(|(a, b)| a.conj() * b)
            .sum();
        assert!((overlap.norm() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn no_constraints_is_the_sign_oracle() {
        let problem = CpboProblem::unconstrained(two_var());
        let layout = RegisterLayout::for_problem(&problem, 3).unwrap();
        assert_eq!(
            build_constrained_oracle_circuit(&problem, &layout, Encoder::Phase).unwrap(),
            build_sign_oracle(&layout).unwrap()
        );
    }

    #[test]
    fn layout_must_match_constraints() {
        let problem = hamming_problem();
        let layout = RegisterLayout::new(3, 4).unwrap();
        assert!(build_constrained_oracle_circuit(&problem, &layout, Encoder::Phase).is_err());
    }
}
