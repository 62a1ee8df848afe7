use proptest::prelude::*;
use qdict_gas::gas::{run_gas, GasConfig};
use qdict_gas::oracle::{
    build_a, build_constrained_oracle, encode_twos_complement, Encoder, RegisterLayout,
};
use qdict_gas::poly::{
    cardinality_penalty, equality_to_penalty, quantize, BinaryPolynomial, Constraint, CpboProblem,
    QuboProblem, RealPolynomial,
};
use qdict_gas::qsim::{Circuit, Gate, GateKind, StateVector};
use qdict_gas::report::{trace_from_json, trace_to_json};
use qdict_gas::verify::{brute_force_min, predict_distribution};

fn terms(n: usize, max_degree: usize) -> impl Strategy<Value = Vec<(Vec<usize>, i64)>> {
    let term = (
        proptest::collection::btree_set(0..n, 0..=max_degree.min(n)),
        -6i64..=6,
    )
        .prop_map(|(vars, c)| (vars.into_iter().collect::<Vec<_>>(), c));
    proptest::collection::vec(term, 1..6)
}

fn polynomial(max_n: usize, max_degree: usize) -> impl Strategy<Value = BinaryPolynomial> {
    (1..=max_n).prop_flat_map(move |n| {
        terms(n, max_degree).prop_map(move |t| BinaryPolynomial::from_terms(n, t).unwrap())
    })
}

fn fitting_width(poly: &BinaryPolynomial, y: i64) -> usize {
    let (lo, hi) = poly.exact_range().unwrap();
    (2..)
        .find(|&m| lo - y >= -(1i64 << (m - 1)) && hi - y < (1i64 << (m - 1)))
        .unwrap()
}

fn gate(num_qubits: usize) -> impl Strategy<Value = Gate> {
    let kind = prop_oneof![
        Just(GateKind::H),
        Just(GateKind::X),
        Just(GateKind::Z),
        (-6.3f64..6.3).prop_map(GateKind::Phase),
        (-6.3f64..6.3).prop_map(GateKind::Rx),
        (-6.3f64..6.3).prop_map(GateKind::Ry),
    ];
    (
        kind,
        0..num_qubits,
        proptest::collection::btree_set(0..num_qubits, 0..num_qubits),
    )
        .prop_map(|(kind, target, controls)| {
            let controls: Vec<usize> = controls.into_iter().filter(|&c| c != target).collect();
            Gate::controlled(kind, target, controls)
        })
}

fn random_state(num_qubits: usize) -> impl Strategy<Value = StateVector> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << num_qubits).prop_filter_map(
        "non-zero",
        |v| {
            let norm: f64 = v.iter().map(|(a, b)| a * a + b * b).sum::<f64>().sqrt();
            (norm > 1e-3).then(|| {
                StateVector::from_amplitudes(
                    v.iter()
                        .map(|&(a, b)| num_complex::Complex64::new(a / norm, b / norm))
                        .collect(),
                )
                .unwrap()
            })
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn qubo_polynomial_matches_matrix_form(
        (n, q, b, c) in (1usize..=12).prop_flat_map(|n| (
            Just(n),
            proptest::collection::vec(proptest::collection::vec(-5i32..=5, n), n),
            proptest::collection::vec(-5i32..=5, n),
            -5i32..=5,
        )),
        key_seed in any::<u64>(),
    ) {
        let qubo = QuboProblem::new(
            q.iter().map(|r| r.iter().map(|&v| v as f64).collect()).collect(),
            b.iter().map(|&v| v as f64).collect(),
            c as f64,
        ).unwrap();
        let poly = qubo.to_polynomial().unwrap();
        let key = (key_seed as usize) & ((1 << n) - 1);
        let x: Vec<i64> = (0..n).map(|j| ((key >> j) & 1) as i64).collect();
        let mut direct = c as i64;
        for i in 0..n {
            direct += b[i] as i64 * x[i];
            for j in 0..n {
                direct += q[i][j] as i64 * x[i] * x[j];
            }
        }
        prop_assert_eq!(poly.evaluate_key(key).unwrap(), direct);
    }

    #[test]
    fn penalties_vanish_exactly_on_feasible_keys(p in polynomial(4, 2), lambda in 1i64..5) {
        let penalty = equality_to_penalty(&p, lambda).unwrap();
        for key in 0..1usize << p.num_vars() {
            let v = penalty.evaluate_key(key).unwrap();
            if p.evaluate_key(key).unwrap() == 0 {
                prop_assert_eq!(v, 0);
            } else {
                prop_assert!(v >= lambda);
            }
        }
    }

    #[test]
    fn cardinality_penalty_counts_ones(n in 1usize..6, target in 0i64..6, lambda in 1i64..4) {
        let p = cardinality_penalty(n, target, lambda).unwrap();
        for key in 0..1usize << n {
            let w = key.count_ones() as i64;
            prop_assert_eq!(p.evaluate_key(key).unwrap(), lambda * (w - target).pow(2));
        }
    }

    #[test]
    fn quantization_keeps_a_well_separated_minimizer(
        n in 2usize..5,
        raw in proptest::collection::vec(-1000i32..1000, 4),
    ) {
        let coeffs: Vec<f64> = raw.iter().take(n).map(|&v| v as f64 * 1e-3).collect();
        prop_assume!(coeffs.iter().any(|&c| c != 0.0));
        let real = RealPolynomial::from_terms(n, coeffs.iter().enumerate().map(|(i, &c)| (vec![i], c))).unwrap();
        let report = quantize(&real, 12).unwrap();
        let values: Vec<f64> = (0..1usize << n).map(|k| real.evaluate_key(k)).collect();
        let best = values.iter().cloned().fold(f64::INFINITY, f64::min);
        let mut sorted = values.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let max = coeffs.iter().map(|c| c.abs()).fold(0.0, f64::max);
        // a gap larger than the accumulated rounding error survives quantization
        prop_assume!(sorted[1] - sorted[0] > n as f64 * max / 1024.0);
        let argmin = values.iter().position(|&v| v == best).unwrap();
        let q = CpboProblem::unconstrained(report.quantized);
        prop_assert_eq!(brute_force_min(&q).unwrap().argmins, vec![argmin]);
    }

    #[test]
    fn encoding_writes_each_value_next_to_its_key(p in polynomial(4, 3), y in -4i64..=4) {
        let n = p.num_vars();
        let m = fitting_width(&p, y);
        let layout = RegisterLayout::new(n, m).unwrap();
        let mut state = StateVector::zero(layout.total_qubits());
        state.apply_circuit(&build_a(&p, y, &layout, Encoder::Phase).unwrap()).unwrap();
        let probs = state.probabilities();
        for key in 0..1usize << n {
            let raw = encode_twos_complement(p.evaluate_key(key).unwrap() - y, m);
            prop_assert!((probs[key | raw << n] - 1.0 / (1 << n) as f64).abs() < 1e-9);
        }
    }

    #[test]
    fn circuit_then_adjoint_is_identity(
        gates in proptest::collection::vec(gate(4), 0..25),
        state in random_state(4),
    ) {
        let mut c = Circuit::new(4);
        for g in gates {
            c.push(g).unwrap();
        }
        let mut s = state.clone();
        s.apply_circuit(&c).unwrap();
        s.apply_circuit(&c.adjoint()).unwrap();
        for (a, b) in s.amplitudes().iter().zip(state.amplitudes()) {
            prop_assert!((a - b).norm() < 1e-9);
        }
    }

    #[test]
    fn closed_form_distribution_matches_simulation(p in polynomial(4, 3), y in -4i64..=4, r in 0usize..=5) {
        let n = p.num_vars();
        let m = fitting_width(&p, y);
        let problem = CpboProblem::unconstrained(p);
        let layout = RegisterLayout::new(n, m).unwrap();
        let set = build_constrained_oracle(&problem, y, &layout, Encoder::Phase).unwrap();
        let mut state = StateVector::zero(layout.total_qubits());
        state.apply_circuit(&set.a_y).unwrap();
        for _ in 0..r {
            state.apply_circuit(&set.grover_iterate).unwrap();
        }
        let predicted = predict_distribution(&problem, y, r, m).unwrap();
        for (basis, p) in state.probabilities().into_iter().enumerate() {
            let expected = predicted.get(&basis).copied().unwrap_or(0.0);
            prop_assert!((p - expected).abs() < 1e-9, "basis {} sim {} predicted {}", basis, p, expected);
        }
    }

    #[test]
    fn oracle_restores_ancillary_registers(
        f in polynomial(3, 2),
        cons in proptest::collection::vec((terms(3, 2), any::<bool>()), 1..3),
        y in -3i64..=3,
        global_flag in any::<bool>(),
        use_ry in any::<bool>(),
    ) {
        let n = f.num_vars();
        let constraints = cons
            .into_iter()
            .map(|(t, eq)| {
                let t: Vec<_> = t.into_iter().filter(|(v, _)| v.iter().all(|&i| i < n)).collect();
                let c = BinaryPolynomial::from_terms(n, t).unwrap();
                if eq { Constraint::equals_zero(c) } else { Constraint::less_than_zero(c) }
            })
            .collect();
        let problem = CpboProblem::new(f.clone(), constraints).unwrap();
        let encoder = if use_ry { Encoder::Ry } else { Encoder::Phase };
        let layout = RegisterLayout::for_problem(&problem, fitting_width(&f, y))
            .unwrap()
            .with_global_flag(global_flag)
            .with_ancilla(use_ry);
        let set = build_constrained_oracle(&problem, y, &layout, encoder).unwrap();
        let mut state = StateVector::zero(layout.total_qubits());
        state.apply_circuit(&set.a_y).unwrap();
        state.apply_circuit(&set.grover_iterate).unwrap();
        let used = layout.n() + layout.m();
        let leaked: f64 = state
            .probabilities()
            .iter()
            .enumerate()
            .filter(|(i, _)| i >> used != 0)
            .map(|(_, p)| p)
            .sum();
        prop_assert!(leaked < 1e-9);
    }

    #[test]
    fn encoders_agree(p in polynomial(3, 3), y in -3i64..=3) {
        let n = p.num_vars();
        let m = fitting_width(&p, y);
        let mut dists = Vec::new();
        for (encoder, ancilla) in [(Encoder::Phase, false), (Encoder::Ry, true)] {
            let layout = RegisterLayout::new(n, m).unwrap().with_ancilla(ancilla);
            let mut state = StateVector::zero(layout.total_qubits());
            state.apply_circuit(&build_a(&p, y, &layout, encoder).unwrap()).unwrap();
            let qubits: Vec<usize> = layout.key().chain(layout.value()).collect();
            dists.push(state.marginal(&qubits));
        }
        for (a, b) in dists[0].iter().zip(&dists[1]) {
            prop_assert!((a - b).abs() < 1e-9);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn gas_is_sound_and_deterministic(p in polynomial(3, 2), seed in any::<u64>(), patience in 1usize..5) {
        let problem = CpboProblem::unconstrained(p);
        let config = GasConfig { seed, patience, ..GasConfig::default() };
        let trace = run_gas(&problem, &config).unwrap();
        prop_assert_eq!(&run_gas(&problem, &config).unwrap(), &trace);
        let optimum = brute_force_min(&problem).unwrap().value;
        prop_assert!(trace.best_value >= optimum);
        prop_assert_eq!(problem.objective().evaluate_key(trace.best_key).unwrap(), trace.best_value);
        let mut threshold = trace.initial_value;
        for it in &trace.iterations {
            prop_assert_eq!(it.threshold, threshold);
            prop_assert_eq!(it.accepted, it.objective < threshold);
            if it.accepted {
                threshold = it.objective;
            }
        }
        prop_assert!(trace.iterations.len() <= config.max_iterations);
        let back = trace_from_json(&trace_to_json(&trace)).unwrap();
        prop_assert_eq!(back.summary(), trace.summary());
    }
}

#[test]
fn portfolio_qubo_and_printed_polynomial_disagree() {
    let mu = [1.0, -2.0, 3.0];
    let sigma = vec![
        vec![2.0, 0.0, -4.0],
        vec![0.0, 4.0, -2.0],
        vec![-4.0, -2.0, 10.0],
    ];
    let from_data = qdict_gas::poly::portfolio_qubo(0.5, &mu, &sigma)
        .unwrap()
        .to_polynomial()
        .unwrap();
    let printed = BinaryPolynomial::from_terms(
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
    // q·xᵀΣx − μᵀx works out to 4x1 + 2x2 − 4x0x2 − 2x1x2, minimum −2 at (1,0,1)
    let expected = BinaryPolynomial::from_terms(
        3,
        [
            (vec![1], 4),
            (vec![2], 2),
            (vec![0, 2], -4),
            (vec![1, 2], -2),
        ],
    )
    .unwrap();
    assert_eq!(from_data, expected);
    assert!(!from_data.disagreements(&printed).unwrap().is_empty());
    assert_eq!(
        brute_force_min(&CpboProblem::unconstrained(printed))
            .unwrap()
            .value,
        -6
    );
}
