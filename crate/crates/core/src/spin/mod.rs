//! Operator algebra for `n` spin-1/2 nuclei.

mod deviation;
pub mod ops;
pub mod product;
mod system;

pub use deviation::DeviationOperator;
pub use ops::{
    coupling_propagator, pauli_operator, phase_axis, rotation_unitary, Axis,
};
pub use product::{expand_product_operators, reconstruct, Factor, ProductOperatorTerm};
pub use system::{
    CouplingTopology, MoleculeFile, SpinPair, SpinSystem, ALANINE_JSON,
    DEFAULT_COUPLING_THRESHOLD_HZ,
};
