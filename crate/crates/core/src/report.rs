//! Run outputs: the trace as JSON and per-iteration key/value histograms as CSV.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gas::{decode_value, GasIteration, GasTrace};
use crate::oracle::RegisterLayout;
use crate::qsim::StateVector;

/// Rows below this probability are left out of histograms.
pub const HISTOGRAM_CUTOFF: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistogramRow {
    pub iteration: usize,
    pub threshold: i64,
    /// Index into the key and value registers: `key | raw << n`.
    pub basis_state: usize,
    /// Variable 0 leftmost.
    pub key_bits: String,
    /// Two's-complement reading of the value register, i.e. `f(x) - threshold`.
    pub decoded_value: i64,
    pub probability: f64,
    /// Named assignment such as `x0=1;x1=0`.
    pub assignment: String,
}

fn key_bits(key: usize, n: usize) -> String {
    (0..n)
        .map(|j| if (key >> j) & 1 == 1 { '1' } else { '0' })
        .collect()
}

fn assignment(key: usize, names: &[String]) -> String {
    names
        .iter()
        .enumerate()
        .map(|(j, name)| format!("{name}={}", (key >> j) & 1))
        .collect::<Vec<_>>()
        .join(";")
}

/// Joint key/value distribution of `state`, one row per outcome above
/// [`HISTOGRAM_CUTOFF`]. Other registers are traced out.
pub fn histogram_rows(
    record: &GasIteration,
    state: &StateVector,
    layout: &RegisterLayout,
    names: &[String],
) -> Result<Vec<HistogramRow>> {
    let n = layout.n();
    if names.len() != n {
        return Err(Error::Dimension(format!(
            "{} variable names for {n} key qubits",
            names.len()
        )));
    }
    let qubits: Vec<usize> = layout.key().chain(layout.value()).collect();
    let mut rows = Vec::new();
    for (basis, p) in state.marginal(&qubits).into_iter().enumerate() {
        if p <= HISTOGRAM_CUTOFF {
            continue;
        }
        let (key, raw) = layout.split(basis);
        rows.push(HistogramRow {
            iteration: record.index,
            threshold: record.threshold,
            basis_state: basis,
            key_bits: key_bits(key, n),
            decoded_value: decode_value(raw, layout.m())?,
            probability: p,
            assignment: assignment(key, names),
        });
    }
    Ok(rows)
}

pub fn write_histograms_csv<W: Write>(rows: &[HistogramRow], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for row in rows {
        w.serialize(row).map_err(io_error)?;
    }
    w.flush()
        .map_err(|e| Error::InvalidParameter(format!("write failed: {e}")))
}

pub fn read_histograms_csv<R: Read>(reader: R) -> Result<Vec<HistogramRow>> {
    csv::Reader::from_reader(reader)
        .deserialize()
        .collect::<std::result::Result<_, _>>()
        .map_err(io_error)
}

fn io_error(e: csv::Error) -> Error {
    Error::InvalidParameter(format!("histogram csv: {e}"))
}

pub fn trace_to_json(trace: &GasTrace) -> String {
    serde_json::to_string_pretty(trace).expect("traces always serialize")
}

pub fn trace_from_json(text: &str) -> Result<GasTrace> {
    serde_json::from_str(text).map_err(|e| Error::InvalidParameter(format!("trace json: {e}")))
}
