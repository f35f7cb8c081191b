//! Simulator and pulse compiler for three-spin NMR quantum computation.
//!
//! A boolean function is decomposed into linear and quadratic phase gates,
//! lowered to selective pulses and refocused delays over the molecule's coupling
//! network, applied to the rotated thermal state in the product-operator
//! picture, and read out as per-spin multiplet phases against a fiducial
//! spectrum.
//!
//! ```
//! use spinlab::{run_protocol, BooleanFunction, ProtocolOptions, SpinSystem64, Verdict};
//!
//! let system = SpinSystem64::alanine();
//! let f = BooleanFunction::parse("anf:x2*x1 ^ x1*x0 ^ x2*x0", 3).unwrap();
//! let out = run_protocol(&f, &system, &ProtocolOptions::default()).unwrap();
//! assert_eq!(out.verdict.verdict, Verdict::Balanced);
//! ```

pub mod compiler;
pub mod dynamics;
mod error;
pub mod operator;
pub mod oracle;
pub mod protocol;
pub mod report;
pub mod scalar;
pub mod spectra;
pub mod spin;

pub use compiler::{compile_circuit, compile_gate, Gate, PulseAxis, PulseElement, PulseProgram, PulseSequence};
pub use dynamics::{evolve, fiducial_state, initial_rotation, rho_f, thermal_state, EvolutionConfig, Relaxation};
pub use error::{Error, Result};
pub use operator::Operator;
pub use oracle::{AnfDecomposition, Admissibility, BooleanFunction, ClassId};
pub use protocol::{run_protocol, sweep, ProtocolOptions, TopologyKind};
pub use report::RunReport;
pub use scalar::{Cplx, Real};
pub use spectra::{compare, dj_verdict, predict_spectrum, DjVerdict, Spectrum, Verdict};
pub use spin::{CouplingTopology, DeviationOperator, MoleculeFile, ProductOperatorTerm, SpinSystem};

pub type Operator64 = Operator<f64>;
pub type Operator32 = Operator<f32>;
pub type SpinSystem64 = SpinSystem<f64>;
pub type SpinSystem32 = SpinSystem<f32>;
pub type DeviationOperator64 = DeviationOperator<f64>;
pub type DeviationOperator32 = DeviationOperator<f32>;
pub type PulseSequence64 = PulseSequence<f64>;
pub type PulseSequence32 = PulseSequence<f32>;
pub type Gate64 = Gate<f64>;
pub type Gate32 = Gate<f32>;
pub type Spectrum64 = Spectrum<f64>;
pub type Spectrum32 = Spectrum<f32>;
