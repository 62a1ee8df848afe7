//! Problem representation: integer multilinear polynomials, QUBO matrices,
//! constraints, penalty terms and real-coefficient quantization.

mod constraint;
mod polynomial;
mod quantize;
mod qubo;

pub use constraint::{
    cardinality_penalty, equality_to_penalty, is_feasible, Constraint, CpboProblem, Relation,
};
pub use polynomial::{assignment_to_key, key_to_assignment, BinaryPolynomial, Monomial};
pub use quantize::{quantize, QuantizationReport, RealPolynomial};
pub use qubo::{portfolio_qubo, qubo_to_polynomial, QuboProblem};
