//! Browser bindings. Each export takes plain values or a problem document and
//! returns JSON for the page to draw.

use qdict_gas::fejer::fejer_distribution;
use qdict_gas::gas::{layout_for, run_gas_observed, GasConfig, GasTrace};
use qdict_gas::oracle::{build_a, Encoder};
use qdict_gas::problem::ProblemFile;
use qdict_gas::qsim::run;
use qdict_gas::report::{histogram_rows, HistogramRow};
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Serialize)]
struct Bar {
    label: String,
    value: f64,
}

#[derive(Serialize)]
struct FejerView {
    m: usize,
    a: f64,
    two_nearest_mass: f64,
    bars: Vec<Bar>,
}

#[derive(Serialize)]
struct EncodeView {
    n: usize,
    m: usize,
    rows: Vec<HistogramRow>,
}

#[derive(Serialize)]
struct SolveView {
    trace: GasTrace,
    best_assignment: String,
    histograms: Vec<HistogramRow>,
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("views always serialize")
}

pub fn fejer_json(a: f64, m: usize) -> Result<String, String> {
    let d = fejer_distribution(a, m).map_err(|e| e.to_string())?;
    let bars = d
        .probabilities
        .iter()
        .enumerate()
        .map(|(j, &p)| Bar {
            label: j.to_string(),
            value: p,
        })
        .collect();
    Ok(to_json(&FejerView {
        m,
        a,
        two_nearest_mass: d.two_nearest_mass(),
        bars,
    }))
}

/// Key/value distribution right after `A_y` for the problem's objective.
pub fn encode_json(
    problem: &str,
    threshold: i64,
    value_qubits: Option<usize>,
) -> Result<String, String> {
    let loaded = ProblemFile::from_json_str(problem)
        .and_then(|f| f.load())
        .map_err(|e| e.to_string())?;
    let config = GasConfig {
        m_override: value_qubits,
        ..GasConfig::default()
    };
    let layout = layout_for(&loaded.problem, &config).map_err(|e| e.to_string())?;
    let circuit = build_a(
        loaded.problem.objective(),
        threshold,
        &layout,
        Encoder::Phase,
    )
    .map_err(|e| e.to_string())?;
    let state = run(&circuit).map_err(|e| e.to_string())?;
    let record = qdict_gas::gas::GasIteration {
        index: 0,
        threshold,
        k: 1.0,
        rotations: 0,
        key: 0,
        raw_value: 0,
        measured_value: 0,
        objective: 0,
        feasible: true,
        accepted: false,
    };
    let rows =
        histogram_rows(&record, &state, &layout, &loaded.names).map_err(|e| e.to_string())?;
    Ok(to_json(&EncodeView {
        n: layout.n(),
        m: layout.m(),
        rows,
    }))
}

pub fn solve_json(
    problem: &str,
    seed: u64,
    lambda: f64,
    patience: usize,
) -> Result<String, String> {
    let loaded = ProblemFile::from_json_str(problem)
        .and_then(|f| f.load())
        .map_err(|e| e.to_string())?;
    let config = GasConfig {
        seed,
        lambda,
        patience,
        ..GasConfig::default()
    };
    let mut histograms = Vec::new();
    let mut failure = None;
    let trace = run_gas_observed(
        &loaded.problem,
        &config,
        |it, state, layout| match histogram_rows(it, state, layout, &loaded.names) {
            Ok(rows) => histograms.extend(rows),
            Err(e) => failure = Some(e.to_string()),
        },
    )
    .map_err(|e| e.to_string())?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(to_json(&SolveView {
        best_assignment: loaded.assignment_string(trace.best_key),
        trace,
        histograms,
    }))
}

#[wasm_bindgen]
pub fn fejer(a: f64, m: usize) -> Result<String, JsError> {
    fejer_json(a, m).map_err(|e| JsError::new(&e))
}

/// `value_qubits = 0` derives the width from the coefficients.
#[wasm_bindgen]
pub fn encode(problem: &str, threshold: i32, value_qubits: usize) -> Result<String, JsError> {
    let m = (value_qubits > 0).then_some(value_qubits);
    encode_json(problem, threshold as i64, m).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn solve(problem: &str, seed: u32, lambda: f64, patience: usize) -> Result<String, JsError> {
    solve_json(problem, seed as u64, lambda, patience).map_err(|e| JsError::new(&e))
}
