//! JSON problem files.
//!
//! ```json
//! {
//!   "variables": ["x0", "x1"],
//!   "objective": [{"vars": [], "coeff": -2}, {"vars": ["x0"], "coeff": 1}],
//!   "constraints": [{"terms": [{"vars": ["x1"], "coeff": 1}], "relation": "==0"}],
//!   "quantization": {"m": 5}
//! }
//! ```
//!
//! `qubo: {"Q": [[..]], "b": [..], "c": 0}` may replace `objective`.

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{
    quantize, Constraint, CpboProblem, QuantizationReport, QuboProblem, RealPolynomial,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub vars: Vec<String>,
    pub coeff: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RelationSpec {
    #[serde(rename = "<0")]
    LessThanZero,
    #[serde(rename = "==0")]
    EqualsZero,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintSpec {
    pub terms: Vec<Term>,
    pub relation: RelationSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuantizationSpec {
    pub m: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuboSpec {
    #[serde(rename = "Q")]
    pub q: Vec<Vec<f64>>,
    pub b: Vec<f64>,
    #[serde(default)]
    pub c: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub variables: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub objective: Option<Vec<Term>>,
    #[serde(default)]
    pub constraints: Vec<ConstraintSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quantization: Option<QuantizationSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qubo: Option<QuboSpec>,
}

/// A validated problem ready for the solver.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedProblem {
    pub names: Vec<String>,
    pub problem: CpboProblem,
    /// Present when the objective was rescaled to integers.
    pub quantization: Option<QuantizationReport>,
}

impl LoadedProblem {
    /// `x0=1;x1=0` style rendering of a key.
    pub fn assignment_string(&self, key: usize) -> String {
        self.names
            .iter()
            .enumerate()
            .map(|(j, name)| format!("{name}={}", (key >> j) & 1))
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Key bits with variable 0 leftmost.
    pub fn key_bits(&self, key: usize) -> String {
        (0..self.names.len())
            .map(|j| if (key >> j) & 1 == 1 { '1' } else { '0' })
            .collect()
    }
}

fn file_error(field: impl std::fmt::Display, msg: impl std::fmt::Display) -> Error {
    Error::ProblemFile(format!("{field}: {msg}"))
}

impl ProblemFile {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let field = if path == "." {
                "<root>".to_string()
            } else {
                path
            };
            file_error(field, e.inner())
        })
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::ProblemFile(format!("{}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem files always serialize")
    }

    pub fn load(&self) -> Result<LoadedProblem> {
        let n = self.variables.len();
        if n == 0 {
            return Err(file_error("variables", "at least one variable is required"));
        }
        if n > 30 {
            return Err(file_error(
                "variables",
                format!("at most 30 variables, got {n}"),
            ));
        }
        let mut index = HashMap::new();
        for (i, name) in self.variables.iter().enumerate() {
            if index.insert(name.as_str(), i).is_some() {
                return Err(file_error(
                    format!("variables[{i}]"),
                    format!("duplicate variable `{name}`"),
                ));
            }
        }

        let real = match (&self.objective, &self.qubo) {
            (Some(_), Some(_)) => {
                return Err(file_error(
                    "objective",
                    "give either `objective` or `qubo`, not both",
                ))
            }
            (None, None) => return Err(file_error("objective", "missing (or give `qubo`)")),
            (Some(terms), None) => real_polynomial(terms, &index, n, "objective")?,
            (None, Some(spec)) => {
                let qubo = QuboProblem::new(spec.q.clone(), spec.b.clone(), spec.c)
                    .map_err(|e| file_error("qubo", e))?;
                if qubo.num_vars() != n {
                    return Err(file_error(
                        "qubo.b",
                        format!("{} entries for {n} variables", qubo.num_vars()),
                    ));
                }
                qubo.to_real_polynomial()
            }
        };
        let (objective, quantization) = match &self.quantization {
            Some(spec) => {
                let report =
                    quantize(&real, spec.m).map_err(|e| file_error("quantization.m", e))?;
                (report.quantized.clone(), Some(report))
            }
            None => {
                let field = if self.qubo.is_some() {
                    "qubo"
                } else {
                    "objective"
                };
                let p = real.to_integer().map_err(|e| {
                    file_error(
                        field,
                        format!("{e}; add a `quantization` block for real coefficients"),
                    )
                })?;
                (p, None)
            }
        };

        let mut constraints = Vec::with_capacity(self.constraints.len());
        for (i, spec) in self.constraints.iter().enumerate() {
            let field = format!("constraints[{i}].terms");
            let p = real_polynomial(&spec.terms, &index, n, &field)?
                .to_integer()
                .map_err(|e| file_error(&field, e))?;
            constraints.push(match spec.relation {
                RelationSpec::LessThanZero => Constraint::less_than_zero(p),
                RelationSpec::EqualsZero => Constraint::equals_zero(p),
            });
        }
        let problem =
            CpboProblem::new(objective, constraints).map_err(|e| file_error("constraints", e))?;
        Ok(LoadedProblem {
            names: self.variables.clone(),
            problem,
            quantization,
        })
    }
}

fn real_polynomial(
    terms: &[Term],
    index: &HashMap<&str, usize>,
    n: usize,
    field: &str,
) -> Result<RealPolynomial> {
    let mut resolved = Vec::with_capacity(terms.len());
    for (t, term) in terms.iter().enumerate() {
        if !term.coeff.is_finite() {
            return Err(file_error(format!("{field}[{t}].coeff"), "must be finite"));
        }
        let mut vars = Vec::with_capacity(term.vars.len());
        for (v, name) in term.vars.iter().enumerate() {
            let i = *index.get(name.as_str()).ok_or_else(|| {
                file_error(
                    format!("{field}[{t}].vars[{v}]"),
                    format!("unknown variable `{name}`"),
                )
            })?;
            vars.push(i);
        }
        resolved.push((vars, term.coeff));
    }
    RealPolynomial::from_terms(n, resolved).map_err(|e| file_error(field, e))
}

pub fn load_problem(path: impl AsRef<Path>) -> Result<LoadedProblem> {
    ProblemFile::from_path(path)?.load()
}
