//! Circuit construction: state preparation `A_y`, sign and constraint oracles,
//! diffusion, the Grover iterate, and gate-count estimates.

mod encode;
mod layout;
mod oracles;
mod resources;

pub use encode::{
    build_a, build_controlled_monomial, build_ry_encoder, build_ug, check_fits, dictionary_angle,
    encode_into_register, ry_eigenstate_prep, Encoder,
};
pub use layout::{
    decode_twos_complement, default_value_qubits, encode_twos_complement, required_qubits,
    value_range, RegisterLayout,
};
pub use oracles::{
    build_constrained_oracle, build_constrained_oracle_circuit, build_diffusion, build_sign_oracle,
    OracleSet,
};
pub use resources::{dense_qubo_counts, estimate_resources, GateClass, ResourceEstimate};
