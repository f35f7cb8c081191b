//! State preparation and propagation of deviation operators through pulse programs.

use serde::{Deserialize, Serialize};

use crate::compiler::{compile_circuit, PulseElement, PulseSequence};
use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::oracle::{build_uf_gates, BooleanFunction};
use crate::scalar::{c, Real};
use crate::spin::ops::{collective, collective_rotation, coupling_diagonal, embed_single, rotation_2x2, z_rotation_diagonal};
use crate::spin::{Axis, CouplingTopology, DeviationOperator, SpinSystem};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relaxation {
    #[default]
    Off,
    /// Transverse decay during delays, one `exp(-t/T2_i)` per transverse factor.
    T2Only,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EvolutionConfig {
    pub relaxation: Relaxation,
}

impl EvolutionConfig {
    pub fn ideal() -> Self {
        Self::default()
    }

    pub fn t2_only() -> Self {
        Self {
            relaxation: Relaxation::T2Only,
        }
    }
}

/// `Σ_i I_z^i`.
pub fn thermal_state<R: Real>(system: &SpinSystem<R>) -> DeviationOperator<R> {
    DeviationOperator::new(collective(Axis::Z, system.n_spins())).expect("Σ Iz is traceless Hermitian")
}

/// Collective 90° rotation of every spin about `cos φ x̂ + sin φ ŷ`.
pub fn initial_rotation<R: Real>(rho: &DeviationOperator<R>, phi_rad: R) -> DeviationOperator<R> {
    let axis = [phi_rad.cos(), phi_rad.sin(), R::zero()];
    let u = collective_rotation(axis, R::lit(90.0), rho.n_spins()).expect("unit in-plane axis");
    rho.conjugate(&u)
}

/// Initial-rotation phase of the protocol: a `-ŷ` pulse.
pub fn protocol_phase<R: Real>() -> R {
    -R::FRAC_PI_2()
}

/// `R_{-y}(90) ρ_th`, the reference state whose spectrum is the fiducial one.
pub fn fiducial_state<R: Real>(system: &SpinSystem<R>) -> DeviationOperator<R> {
    initial_rotation(&thermal_state(system), protocol_phase())
}

/// Propagates `rho` through `seq`, element by element, then applies the
/// sequence's trailing z-rotations.
pub fn evolve<R: Real>(
    rho: &DeviationOperator<R>,
    seq: &PulseSequence<R>,
    system: &SpinSystem<R>,
    config: EvolutionConfig,
) -> Result<DeviationOperator<R>> {
    let n = system.n_spins();
    if rho.n_spins() != n || seq.n_spins() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: if rho.n_spins() != n { rho.n_spins() } else { seq.n_spins() },
        });
    }
    let t2 = match config.relaxation {
        Relaxation::Off => None,
        Relaxation::T2Only => Some(system.t2_s().ok_or(Error::MissingRelaxationTimes)?.to_vec()),
    };
    let mut rho = rho.clone();
    for e in seq.elements() {
        rho = match *e {
            PulseElement::SelectivePulse {
                spin,
                axis,
                angle_deg,
                ..
            } => rho.conjugate(&embed_single(&rotation_2x2(axis.vector(), angle_deg)?, spin, n)?),
            PulseElement::VirtualZ { spin, angle_deg } => {
                system.check_spin(spin)?;
                rho.conjugate_diagonal(&z_rotation_diagonal(spin, angle_deg, n))
            }
            PulseElement::RefocusedDelay { i, j, duration_s } => {
                let rho = rho.conjugate_diagonal(&coupling_diagonal(i, j, duration_s, system)?);
                match &t2 {
                    None => rho,
                    Some(t2) => rho.scale_coherences(|flips| {
                        (0..n)
                            .filter(|k| flips >> k & 1 == 1)
                            .fold(R::one(), |acc, k| acc * (-duration_s / t2[k]).exp())
                    }),
                }
            }
        };
    }
    let mut diag = vec![c(R::one(), R::zero()); system.dim()];
    for (spin, &angle) in seq.trailing_phase_shifts_deg().iter().enumerate() {
        for (d, z) in diag.iter_mut().zip(z_rotation_diagonal(spin, angle, n)) {
            *d = *d * z;
        }
    }
    Ok(rho.conjugate_diagonal(&diag))
}

/// Gates and compiled program implementing `U_f`.
pub fn compile_function<R: Real>(
    f: &BooleanFunction,
    system: &SpinSystem<R>,
    topology: &CouplingTopology,
) -> Result<PulseSequence<R>> {
    if !f.is_admissible() {
        return Err(Error::NotAdmissible { mask: f.table() });
    }
    if f.n_bits() != system.n_spins() {
        return Err(Error::DimensionMismatch {
            expected: system.n_spins(),
            found: f.n_bits(),
        });
    }
    let gates = build_uf_gates(&f.anf())?;
    compile_circuit(&gates, system, topology)
}

/// `ρ_f = U_f R_{-y}(90) ρ_th`, with `U_f` realized by the compiled pulse program.
pub fn rho_f<R: Real>(
    f: &BooleanFunction,
    system: &SpinSystem<R>,
    topology: &CouplingTopology,
    config: EvolutionConfig,
) -> Result<DeviationOperator<R>> {
    let seq = compile_function(f, system, topology)?;
    evolve(&fiducial_state(system), &seq, system, config)
}

/// Same state from the ideal diagonal `U_f`, bypassing the compiler.
pub fn rho_f_reference<R: Real>(f: &BooleanFunction, system: &SpinSystem<R>) -> DeviationOperator<R> {
    let u: Operator<R> = crate::oracle::uf_unitary(f);
    fiducial_state(system).conjugate(&u)
}
