//! Lowering of gates to selective pulses, refocused delays and frame changes.

use crate::compiler::gate::Gate;
use crate::compiler::pulse::{PulseAxis, PulseElement, PulseSequence};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::spin::{CouplingTopology, SpinSystem};

fn pulse<R: Real>(
    seq: &mut PulseSequence<R>,
    system: &SpinSystem<R>,
    spin: usize,
    axis: PulseAxis<R>,
    angle_deg: R,
) -> Result<()> {
    let duration_s = system.pulse_90_s(spin) * angle_deg.abs() / R::lit(90.0);
    seq.push(PulseElement::SelectivePulse {
        spin,
        axis,
        angle_deg,
        duration_s,
    })
}

fn vz<R: Real>(seq: &mut PulseSequence<R>, spin: usize, angle_deg: R) -> Result<()> {
    seq.push(PulseElement::VirtualZ { spin, angle_deg })
}

/// `[1/2|J_ij|]^{ij}`: a quarter-turn of `exp(-i (π/4) σ_z^i σ_z^j)`. A negative
/// coupling produces the opposite phase, which differs by π z-rotations of both spins.
fn half_coupling_delay<R: Real>(
    seq: &mut PulseSequence<R>,
    system: &SpinSystem<R>,
    topology: &CouplingTopology,
    i: usize,
    j: usize,
) -> Result<()> {
    if !topology.has_edge(i, j) {
        return Err(Error::RouteRequired { i, j });
    }
    let jij = system.coupling_hz(i, j);
    seq.push(PulseElement::RefocusedDelay {
        i,
        j,
        duration_s: R::one() / (R::lit(2.0) * jij.abs()),
    })?;
    if jij < R::zero() {
        vz(seq, i, R::lit(180.0))?;
        vz(seq, j, R::lit(180.0))?;
    }
    Ok(())
}

fn check_pair<R: Real>(system: &SpinSystem<R>, i: usize, j: usize) -> Result<()> {
    system.check_spin(i)?;
    system.check_spin(j)?;
    if i == j {
        return Err(Error::SameSpin(i));
    }
    Ok(())
}

/// `U^i = R_z^i(180)`, realized as a frame change on spin `i`.
pub fn compile_linear<R: Real>(i: usize, system: &SpinSystem<R>) -> Result<PulseSequence<R>> {
    system.check_spin(i)?;
    let mut seq = PulseSequence::new(system.n_spins());
    vz(&mut seq, i, R::lit(180.0))?;
    Ok(seq)
}

/// `U^{ij} = [1/2J_ij]^{ij} - [90]^i_{-z} - [90]^j_{-z}` over an existing edge.
pub fn compile_quadratic_direct<R: Real>(
    i: usize,
    j: usize,
    system: &SpinSystem<R>,
    topology: &CouplingTopology,
) -> Result<PulseSequence<R>> {
    check_pair(system, i, j)?;
    let mut seq = PulseSequence::new(system.n_spins());
    half_coupling_delay(&mut seq, system, topology, i, j)?;
    vz(&mut seq, i, R::lit(-90.0))?;
    vz(&mut seq, j, R::lit(-90.0))?;
    Ok(seq)
}

/// `U^{ij}` between spins without a usable coupling, processed through `via`.
///
/// This is the simplified form of `SWAP(via,j) · U^{i,via} · SWAP(via,j)`:
/// ten selective pulses (six on `via`, four on `j`), four `(via, j)` delays and one
/// `(i, via)` delay. The closing frame changes are `+90` on `i` and `-90` on `via`;
/// they absorb the single-spin z-phases the pulse train leaves behind.
pub fn compile_quadratic_indirect<R: Real>(
    i: usize,
    j: usize,
    via: usize,
    system: &SpinSystem<R>,
    topology: &CouplingTopology,
) -> Result<PulseSequence<R>> {
    check_pair(system, i, j)?;
    check_pair(system, i, via)?;
    check_pair(system, via, j)?;
    if !topology.has_edge(i, via) || !topology.has_edge(via, j) {
        return Err(Error::RoutingInfeasible { i, j });
    }
    let n90 = R::lit(90.0);
    let (x, y) = (PulseAxis::x(), PulseAxis::y());
    let mut s = PulseSequence::new(system.n_spins());
    pulse(&mut s, system, via, y, n90)?;
    pulse(&mut s, system, j, y, n90)?;
    half_coupling_delay(&mut s, system, topology, via, j)?;
    pulse(&mut s, system, via, x, n90)?;
    pulse(&mut s, system, j, x, n90)?;
    half_coupling_delay(&mut s, system, topology, via, j)?;
    pulse(&mut s, system, via, y, n90)?;
    half_coupling_delay(&mut s, system, topology, i, via)?;
    pulse(&mut s, system, via, x, n90)?;
    half_coupling_delay(&mut s, system, topology, via, j)?;
    pulse(&mut s, system, via, y, n90)?;
    pulse(&mut s, system, j, x, n90)?;
    half_coupling_delay(&mut s, system, topology, via, j)?;
    pulse(&mut s, system, via, x, n90)?;
    pulse(&mut s, system, j, PulseAxis::minus_y(), n90)?;
    vz(&mut s, i, n90)?;
    vz(&mut s, via, -n90)?;
    Ok(s)
}

/// `CNOT = R^t_y(90) · U^{ct} · R^t_{-y}(90)` over an existing edge.
pub fn compile_cnot<R: Real>(
    control: usize,
    target: usize,
    system: &SpinSystem<R>,
    topology: &CouplingTopology,
) -> Result<PulseSequence<R>> {
    check_pair(system, control, target)?;
    if !topology.has_edge(control, target) {
        return Err(Error::RouteRequired { i: control, j: target });
    }
    let mut seq = PulseSequence::new(system.n_spins());
    pulse(&mut seq, system, target, PulseAxis::minus_y(), R::lit(90.0))?;
    seq.append(&compile_quadratic_direct(control, target, system, topology)?)?;
    pulse(&mut seq, system, target, PulseAxis::y(), R::lit(90.0))?;
    Ok(seq)
}

/// Three alternating CNOTs over an existing edge.
pub fn compile_swap<R: Real>(
    i: usize,
    j: usize,
    system: &SpinSystem<R>,
    topology: &CouplingTopology,
) -> Result<PulseSequence<R>> {
    let mut seq = compile_cnot(i, j, system, topology)?;
    seq.append(&compile_cnot(j, i, system, topology)?)?;
    seq.append(&compile_cnot(i, j, system, topology)?)?;
    Ok(seq)
}

/// Selective rotation about an arbitrary axis. In-plane axes are one pulse, z
/// axes are a frame change, tilted axes are conjugated down onto z.
pub fn compile_rotation<R: Real>(
    spin: usize,
    axis: [R; 3],
    angle_deg: R,
    system: &SpinSystem<R>,
) -> Result<PulseSequence<R>> {
    system.check_spin(spin)?;
    // validates the axis norm
    crate::spin::ops::rotation_2x2(axis, angle_deg)?;
    let mut seq = PulseSequence::new(system.n_spins());
    let [nx, ny, nz] = axis;
    let to_deg = |rad: R| rad * R::lit(180.0) / R::PI();
    let in_plane = (nx * nx + ny * ny).sqrt();
    if in_plane <= R::structural_tol() {
        vz(&mut seq, spin, if nz > R::zero() { angle_deg } else { -angle_deg })?;
    } else if nz.abs() <= R::structural_tol() {
        pulse(&mut seq, system, spin, PulseAxis::Xy(to_deg(ny.atan2(nx))), angle_deg)?;
    } else {
        // n = Rz(φ) Ry(θ) ẑ, so R_n(α) = Rz(φ) Ry(θ) Rz(α) Ry(-θ) Rz(-φ)
        let polar = to_deg(in_plane.atan2(nz));
        let azimuth = to_deg(ny.atan2(nx));
        vz(&mut seq, spin, -azimuth)?;
        pulse(&mut seq, system, spin, PulseAxis::minus_y(), polar)?;
        vz(&mut seq, spin, angle_deg)?;
        pulse(&mut seq, system, spin, PulseAxis::y(), polar)?;
        vz(&mut seq, spin, azimuth)?;
    }
    Ok(seq)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum TwoSpin {
    Quadratic,
    Cnot,
    Swap,
}

/// Compiles a two-spin gate from `path[0]` to `path[last]` along `path`.
/// Longer paths bring the far spin's state next to the near end by a SWAP,
/// recurse, then swap back.
fn compile_along<R: Real>(
    kind: TwoSpin,
    path: &[usize],
    system: &SpinSystem<R>,
    topology: &CouplingTopology,
) -> Result<PulseSequence<R>> {
    let (a, b) = (path[0], path[path.len() - 1]);
    match (kind, path.len()) {
        (TwoSpin::Quadratic, 2) => compile_quadratic_direct(a, b, system, topology),
        (TwoSpin::Cnot, 2) => compile_cnot(a, b, system, topology),
        (TwoSpin::Swap, 2) => compile_swap(a, b, system, topology),
        (TwoSpin::Quadratic, 3) => compile_quadratic_indirect(a, b, path[1], system, topology),
        _ => {
            let near = path[path.len() - 2];
            let mut seq = compile_swap(near, b, system, topology)?;
            seq.append(&compile_along(kind, &path[..path.len() - 1], system, topology)?)?;
            seq.append(&compile_swap(near, b, system, topology)?)?;
            Ok(seq)
        }
    }
}

fn route<R: Real>(
    kind: TwoSpin,
    a: usize,
    b: usize,
    system: &SpinSystem<R>,
    topology: &CouplingTopology,
) -> Result<PulseSequence<R>> {
    check_pair(system, a, b)?;
    if topology.has_edge(a, b) {
        return compile_along(kind, &[a, b], system, topology);
    }
    let mut paths = topology.simple_paths(a, b);
    paths.sort_by(|p, q| p.len().cmp(&q.len()).then_with(|| p.cmp(q)));
    let mut best: Option<PulseSequence<R>> = None;
    for path in paths {
        let seq = compile_along(kind, &path, system, topology)?;
        if best
            .as_ref()
            .is_none_or(|b| seq.total_duration_s() < b.total_duration_s())
        {
            best = Some(seq);
        }
    }
    best.ok_or(Error::RoutingInfeasible { i: a, j: b })
}

/// Lowers one gate, routing two-spin gates around missing couplings.
pub fn compile_gate<R: Real>(
    gate: &Gate<R>,
    system: &SpinSystem<R>,
    topology: &CouplingTopology,
) -> Result<PulseSequence<R>> {
    gate.validate(system.n_spins())?;
    match *gate {
        Gate::SingleRotation {
            spin,
            axis,
            angle_deg,
        } => compile_rotation(spin, axis, angle_deg, system),
        Gate::Linear(i) => compile_linear(i, system),
        Gate::Quadratic(i, j) => route(TwoSpin::Quadratic, i, j, system, topology),
        Gate::Cnot { control, target } => route(TwoSpin::Cnot, control, target, system, topology),
        Gate::Swap(i, j) => route(TwoSpin::Swap, i, j, system, topology),
    }
}

/// Concatenates the gates' pulse programs and commutes every frame change to
/// the end, where it becomes a spin-selective phase shift of the spectrum.
pub fn compile_circuit<R: Real>(
    gates: &[Gate<R>],
    system: &SpinSystem<R>,
    topology: &CouplingTopology,
) -> Result<PulseSequence<R>> {
    if topology.n_spins() != system.n_spins() {
        return Err(Error::DimensionMismatch {
            expected: system.n_spins(),
            found: topology.n_spins(),
        });
    }
    topology.ensure_connected()?;
    let mut seq = PulseSequence::new(system.n_spins());
    for g in gates {
        seq.append(&compile_gate(g, system, topology)?)?;
    }
    Ok(seq.coalesced())
}
