//! Grover Adaptive Search: repeatedly amplify keys below the current
//! threshold, measure, and lower the threshold on improvement.

use std::f64::consts::FRAC_PI_4;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{
    build_constrained_oracle, decode_twos_complement, default_value_qubits, Encoder, RegisterLayout,
};
use crate::poly::CpboProblem;
use crate::qsim::{run, StateVector};

/// Rejection-sampling budget for the initial feasible key.
pub const INITIAL_SAMPLE_ATTEMPTS: usize = 1000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GasConfig {
    /// Growth factor applied to `k` after every non-improving iteration.
    pub lambda: f64,
    /// Consecutive non-improving iterations before stopping.
    pub patience: usize,
    pub max_iterations: usize,
    pub seed: u64,
    /// Objective register size; derived from the coefficients when absent.
    pub m_override: Option<usize>,
    pub encoder: Encoder,
    /// AND the oracle conditions into a dedicated flag qubit instead of a
    /// single multi-controlled Z.
    pub global_flag: bool,
}

impl Default for GasConfig {
    fn default() -> Self {
        GasConfig {
            lambda: 8.0 / 7.0,
            patience: 3,
            max_iterations: 100,
            seed: 0,
            m_override: None,
            encoder: Encoder::Phase,
            global_flag: false,
        }
    }
}

impl GasConfig {
    pub fn validate(&self) -> Result<()> {
        if self.lambda.is_nan() || self.lambda <= 1.0 || !self.lambda.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "lambda must be a finite number > 1, got {}",
                self.lambda
            )));
        }
        if self.patience == 0 {
            return Err(Error::InvalidParameter(
                "patience must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GasIteration {
    /// 1-based iteration number.
    pub index: usize,
    pub threshold: i64,
    pub k: f64,
    pub rotations: usize,
    pub key: usize,
    /// Raw value-register readout.
    pub raw_value: usize,
    /// Objective implied by the register: `decode(raw) + threshold`.
    pub measured_value: i64,
    /// Objective recomputed classically for `key`.
    pub objective: i64,
    pub feasible: bool,
    pub accepted: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GasTrace {
    pub num_vars: usize,
    pub value_qubits: usize,
    pub initial_key: usize,
    pub initial_value: i64,
    pub iterations: Vec<GasIteration>,
    pub best_key: usize,
    pub best_value: i64,
    pub total_grover_applications: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceSummary {
    pub iterations: usize,
    pub accepted: usize,
    pub best_key: usize,
    pub best_value: i64,
    pub total_grover_applications: usize,
    pub thresholds: Vec<i64>,
}

impl GasTrace {
    pub fn summary(&self) -> TraceSummary {
        TraceSummary {
            iterations: self.iterations.len(),
            accepted: self.iterations.iter().filter(|it| it.accepted).count(),
            best_key: self.best_key,
            best_value: self.best_value,
            total_grover_applications: self.total_grover_applications,
            thresholds: self.iterations.iter().map(|it| it.threshold).collect(),
        }
    }
}

/// `⌊(π/4)·√(N/s)⌋`.
pub fn optimal_rotations(n_items: usize, marked: usize) -> Result<usize> {
    if marked == 0 || marked > n_items {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= s <= N, got s = {marked}, N = {n_items}"
        )));
    }
    Ok((FRAC_PI_4 * (n_items as f64 / marked as f64).sqrt()).floor() as usize)
}

/// Uniform draw from `{0, 1, …, ⌈k − 1⌉}`.
pub fn sample_rotation_count<R: Rng + ?Sized>(k: f64, rng: &mut R) -> Result<usize> {
    if k.is_nan() || k < 1.0 || !k.is_finite() {
        return Err(Error::InvalidParameter(format!("k must be >= 1, got {k}")));
    }
    let upper = (k - 1.0).ceil() as usize;
    // u64 keeps the random stream identical on 32- and 64-bit targets
    Ok(rng.gen_range(0..=upper as u64) as usize)
}

pub fn decode_value(raw: usize, m: usize) -> Result<i64> {
    decode_twos_complement(raw, m)
}

/// Register layout `run_gas` uses for `problem` under `config`.
pub fn layout_for(problem: &CpboProblem, config: &GasConfig) -> Result<RegisterLayout> {
    let m = config
        .m_override
        .unwrap_or_else(|| default_value_qubits(problem.objective()));
    Ok(RegisterLayout::for_problem(problem, m)?
        .with_global_flag(config.global_flag)
        .with_ancilla(config.encoder == Encoder::Ry))
}

pub fn run_gas(problem: &CpboProblem, config: &GasConfig) -> Result<GasTrace> {
    run_gas_observed(problem, config, |_, _, _| {})
}

/// Like [`run_gas`], calling `observer` with each iteration record and the
/// pre-measurement state it was sampled from.
pub fn run_gas_observed<F>(
    problem: &CpboProblem,
    config: &GasConfig,
    mut observer: F,
) -> Result<GasTrace>
where
    F: FnMut(&GasIteration, &StateVector, &RegisterLayout),
{
    config.validate()?;
    let n = problem.num_vars();
    let layout = layout_for(problem, config)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let initial_key = sample_feasible(problem, &mut rng)?;
    let initial_value = problem.objective().evaluate_key(initial_key)?;

    let mut trace = GasTrace {
        num_vars: n,
        value_qubits: layout.m(),
        initial_key,
        initial_value,
        iterations: Vec::new(),
        best_key: initial_key,
        best_value: initial_value,
        total_grover_applications: 0,
    };
    let mut k = 1.0;
    let mut misses = 0;
    for index in 1..=config.max_iterations {
        let threshold = trace.best_value;
        let rotations = sample_rotation_count(k, &mut rng)?;
        let set = build_constrained_oracle(problem, threshold, &layout, config.encoder)?;
        let mut state = run(&set.a_y)?;
        for _ in 0..rotations {
            state.apply_circuit(&set.grover_iterate)?;
        }
        let (key, raw_value) = layout.split(state.measure_all(&mut rng)?);
        let measured_value = decode_value(raw_value, layout.m())? + threshold;
        // The register readout is informational; acceptance is decided classically.
        let objective = problem.objective().evaluate_key(key)?;
        let feasible = problem.is_feasible_key(key)?;
        let accepted = feasible && objective < threshold;

        let record = GasIteration {
            index,
            threshold,
            k,
            rotations,
            key,
            raw_value,
            measured_value,
            objective,
            feasible,
            accepted,
        };
        observer(&record, &state, &layout);
        trace.iterations.push(record);
        trace.total_grover_applications += rotations;

        if accepted {
            trace.best_key = key;
            trace.best_value = objective;
            k = 1.0;
            misses = 0;
        } else {
            k *= config.lambda;
            misses += 1;
            if misses >= config.patience {
                break;
            }
        }
    }
    Ok(trace)
}

fn sample_feasible<R: Rng + ?Sized>(problem: &CpboProblem, rng: &mut R) -> Result<usize> {
    let space = 1usize << problem.num_vars();
    for _ in 0..INITIAL_SAMPLE_ATTEMPTS {
        let key = rng.gen_range(0..space as u64) as usize;
        if problem.is_feasible_key(key)? {
            return Ok(key);
        }
    }
    Err(Error::Infeasible)
}
