//! Gate model and lowering to selective pulses over a coupling topology.

mod compile;
mod gate;
mod pulse;

pub use compile::{
    compile_circuit, compile_cnot, compile_gate, compile_linear, compile_quadratic_direct,
    compile_quadratic_indirect, compile_rotation, compile_swap,
};
pub use gate::{circuit_unitary, Gate};
pub use pulse::{
    normalize_deg, wrap_deg, ProgramElement, PulseAxis, PulseElement, PulseProgram, PulseSequence,
};
