use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::report::sig9;
use crate::scalar::Real;
use crate::spin::ops::{coupling_diagonal, embed_single, rotation_2x2, z_rotation_diagonal};
use crate::spin::{phase_axis, CouplingTopology, SpinSystem};

/// Rotation axis of a selective pulse.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PulseAxis<R: Real = f64> {
    /// `cos φ x̂ + sin φ ŷ`, phase in degrees.
    Xy(R),
    PlusZ,
    MinusZ,
}

impl<R: Real> PulseAxis<R> {
    pub fn x() -> Self {
        Self::Xy(R::zero())
    }

    pub fn y() -> Self {
        Self::Xy(R::lit(90.0))
    }

    pub fn minus_x() -> Self {
        Self::Xy(R::lit(180.0))
    }

    pub fn minus_y() -> Self {
        Self::Xy(R::lit(270.0))
    }

    pub fn vector(&self) -> [R; 3] {
        match *self {
            PulseAxis::Xy(phase) => phase_axis(phase),
            PulseAxis::PlusZ => [R::zero(), R::zero(), R::one()],
            PulseAxis::MinusZ => [R::zero(), R::zero(), -R::one()],
        }
    }

    /// `x`, `y`, `-x`, `-y`, `z`, `-z`, or the phase in degrees.
    pub fn label(&self) -> String {
        match *self {
            PulseAxis::PlusZ => "z".into(),
            PulseAxis::MinusZ => "-z".into(),
            PulseAxis::Xy(phase) => {
                let p = normalize_deg(phase).as_f64();
                let names = [(0.0, "x"), (90.0, "y"), (180.0, "-x"), (270.0, "-y"), (360.0, "x")];
                names
                    .iter()
                    .find(|(a, _)| (p - a).abs() < 1e-9)
                    .map(|(_, n)| n.to_string())
                    .unwrap_or_else(|| format!("{}", sig9(p)))
            }
        }
    }
}

/// Maps an angle in degrees into `[0, 360)`.
pub fn normalize_deg<R: Real>(deg: R) -> R {
    let full = R::lit(360.0);
    let r = deg % full;
    let r = if r < R::zero() { r + full } else { r };
    if r >= full {
        R::zero()
    } else {
        r
    }
}

/// Maps an angle in degrees into `(-180, 180]`.
pub fn wrap_deg<R: Real>(deg: R) -> R {
    let r = normalize_deg(deg);
    if r > R::lit(180.0) {
        r - R::lit(360.0)
    } else {
        r
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum PulseElement<R: Real = f64> {
    SelectivePulse {
        spin: usize,
        axis: PulseAxis<R>,
        angle_deg: R,
        duration_s: R,
    },
    /// Free evolution under the `(i, j)` coupling alone.
    RefocusedDelay { i: usize, j: usize, duration_s: R },
    /// Frame change; costs no time.
    VirtualZ { spin: usize, angle_deg: R },
}

impl<R: Real> PulseElement<R> {
    pub fn duration_s(&self) -> R {
        match *self {
            PulseElement::SelectivePulse { duration_s, .. }
            | PulseElement::RefocusedDelay { duration_s, .. } => duration_s,
            PulseElement::VirtualZ { .. } => R::zero(),
        }
    }

    pub fn spins(&self) -> Vec<usize> {
        match *self {
            PulseElement::SelectivePulse { spin, .. } | PulseElement::VirtualZ { spin, .. } => {
                vec![spin]
            }
            PulseElement::RefocusedDelay { i, j, .. } => vec![i, j],
        }
    }

    /// Propagator of the element. Delays need the system for `J_ij`.
    pub fn unitary(&self, system: &SpinSystem<R>) -> Result<Operator<R>> {
        let n = system.n_spins();
        match *self {
            PulseElement::SelectivePulse {
                spin,
                axis,
                angle_deg,
                ..
            } => embed_single(&rotation_2x2(axis.vector(), angle_deg)?, spin, n),
            PulseElement::RefocusedDelay { i, j, duration_s } => Ok(Operator::from_diagonal(
                &coupling_diagonal(i, j, duration_s, system)?,
            )),
            PulseElement::VirtualZ { spin, angle_deg } => {
                system.check_spin(spin)?;
                Ok(Operator::from_diagonal(&z_rotation_diagonal(spin, angle_deg, n)))
            }
        }
    }
}

impl<R: Real> fmt::Display for PulseElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PulseElement::SelectivePulse {
                spin,
                axis,
                angle_deg,
                ..
            } => write!(f, "[{}]^{spin}_{}", sig9(angle_deg.as_f64()), axis.label()),
            PulseElement::RefocusedDelay { i, j, duration_s } => {
                write!(f, "[{} s]^{i}{j}", sig9(duration_s.as_f64()))
            }
            PulseElement::VirtualZ { spin, angle_deg } => {
                write!(f, "[{}]^{spin}_z(virtual)", sig9(angle_deg.as_f64()))
            }
        }
    }
}

/// Time-ordered pulse program plus the z-rotations deferred to acquisition.
#[derive(Clone, Debug, PartialEq)]
pub struct PulseSequence<R: Real = f64> {
    n_spins: usize,
    elements: Vec<PulseElement<R>>,
    total_duration_s: R,
    /// Per spin, degrees; applied after the last element.
    trailing_phase_shifts_deg: Vec<R>,
}

impl<R: Real> PulseSequence<R> {
    pub fn new(n_spins: usize) -> Self {
        Self {
            n_spins,
            elements: Vec::new(),
            total_duration_s: R::zero(),
            trailing_phase_shifts_deg: vec![R::zero(); n_spins],
        }
    }

    pub fn push(&mut self, element: PulseElement<R>) -> Result<()> {
        for s in element.spins() {
            if s >= self.n_spins {
                return Err(Error::SpinOutOfRange {
                    spin: s,
                    n_spins: self.n_spins,
                });
            }
        }
        if let PulseElement::RefocusedDelay { i, j, .. } = element {
            if i == j {
                return Err(Error::SameSpin(i));
            }
        }
        let d = element.duration_s();
        if d < R::zero() || !d.is_finite() {
            return Err(Error::InvalidSystem(format!("element duration {d} must be finite and >= 0")));
        }
        self.total_duration_s = self.total_duration_s + d;
        self.elements.push(element);
        Ok(())
    }

    /// Appends `other` after `self`. Deferred z-rotations of `self` become
    /// explicit frame changes so the time order is preserved.
    pub fn append(&mut self, other: &PulseSequence<R>) -> Result<()> {
        if other.n_spins != self.n_spins {
            return Err(Error::DimensionMismatch {
                expected: self.n_spins,
                found: other.n_spins,
            });
        }
        let pending = std::mem::replace(&mut self.trailing_phase_shifts_deg, vec![R::zero(); self.n_spins]);
        for (spin, angle_deg) in pending.into_iter().enumerate() {
            if angle_deg != R::zero() {
                self.push(PulseElement::VirtualZ { spin, angle_deg })?;
            }
        }
        for e in &other.elements {
            self.push(e.clone())?;
        }
        self.trailing_phase_shifts_deg = other.trailing_phase_shifts_deg.clone();
        Ok(())
    }

    pub fn n_spins(&self) -> usize {
        self.n_spins
    }

    pub fn elements(&self) -> &[PulseElement<R>] {
        &self.elements
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn total_duration_s(&self) -> R {
        self.total_duration_s
    }

    pub fn trailing_phase_shifts_deg(&self) -> &[R] {
        &self.trailing_phase_shifts_deg
    }

    pub fn count_pulses(&self) -> usize {
        self.elements
            .iter()
            .filter(|e| matches!(e, PulseElement::SelectivePulse { .. }))
            .count()
    }

    pub fn count_delays(&self) -> usize {
        self.elements
            .iter()
            .filter(|e| matches!(e, PulseElement::RefocusedDelay { .. }))
            .count()
    }

    /// Elements that take time (everything but frame changes).
    pub fn physical_element_count(&self) -> usize {
        self.elements
            .iter()
            .filter(|e| !matches!(e, PulseElement::VirtualZ { .. }))
            .count()
    }

    /// True when every delay uses an edge of `topology`.
    pub fn respects(&self, topology: &CouplingTopology) -> bool {
        self.elements.iter().all(|e| match *e {
            PulseElement::RefocusedDelay { i, j, .. } => topology.has_edge(i, j),
            _ => true,
        })
    }

    /// Commutes every frame change to the end of the sequence. Pulses that a
    /// frame change passes have their phase shifted by minus its angle; delays
    /// and z-axis pulses commute with it unchanged. The unitary is unaffected.
    pub fn coalesced(&self) -> Self {
        let mut frame = vec![R::zero(); self.n_spins];
        let mut out = Self::new(self.n_spins);
        for e in &self.elements {
            match *e {
                PulseElement::VirtualZ { spin, angle_deg } => frame[spin] = frame[spin] + angle_deg,
                PulseElement::SelectivePulse {
                    spin,
                    axis: PulseAxis::Xy(phase),
                    angle_deg,
                    duration_s,
                } => out
                    .push(PulseElement::SelectivePulse {
                        spin,
                        axis: PulseAxis::Xy(normalize_deg(phase - frame[spin])),
                        angle_deg,
                        duration_s,
                    })
                    .expect("already validated"),
                _ => out.push(e.clone()).expect("already validated"),
            }
        }
        out.trailing_phase_shifts_deg = frame
            .iter()
            .zip(&self.trailing_phase_shifts_deg)
            .map(|(&a, &b)| wrap_deg(a + b))
            .collect();
        out
    }

    /// Full propagator: elements in time order, then the trailing z-rotations.
    pub fn unitary(&self, system: &SpinSystem<R>) -> Result<Operator<R>> {
        if system.n_spins() != self.n_spins {
            return Err(Error::DimensionMismatch {
                expected: self.n_spins,
                found: system.n_spins(),
            });
        }
        let mut u = Operator::identity(system.dim());
        for e in &self.elements {
            u = &e.unitary(system)? * &u;
        }
        let mut diag = vec![num_complex::Complex::new(R::one(), R::zero()); system.dim()];
        for (spin, &angle) in self.trailing_phase_shifts_deg.iter().enumerate() {
            if !angle.is_zero() {
                for (d, z) in diag.iter_mut().zip(z_rotation_diagonal(spin, angle, self.n_spins)) {
                    *d = *d * z;
                }
            }
        }
        Ok(&Operator::from_diagonal(&diag) * &u)
    }

    pub fn to_program(&self) -> PulseProgram {
        PulseProgram {
            n_spins: self.n_spins,
            element_count: self.elements.len(),
            total_duration_s: sig9(self.total_duration_s.as_f64()),
            trailing_phase_shifts_deg: self
                .trailing_phase_shifts_deg
                .iter()
                .map(|a| sig9(a.as_f64()))
                .collect(),
            elements: self.elements.iter().map(ProgramElement::from_element).collect(),
        }
    }
}

impl<R: Real> fmt::Display for PulseSequence<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join(" - "))?;
        for (spin, a) in self.trailing_phase_shifts_deg.iter().enumerate() {
            if !a.is_zero() {
                write!(f, " | phase^{spin} {}", sig9(a.as_f64()))?;
            }
        }
        Ok(())
    }
}

/// JSON export of a [`PulseSequence`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PulseProgram {
    pub n_spins: usize,
    pub element_count: usize,
    pub total_duration_s: f64,
    /// Indexed by spin number.
    pub trailing_phase_shifts_deg: Vec<f64>,
    pub elements: Vec<ProgramElement>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ProgramElement {
    Pulse {
        spin: usize,
        axis: String,
        phase_deg: Option<f64>,
        angle_deg: f64,
        duration_s: f64,
    },
    Delay {
        spins: [usize; 2],
        duration_s: f64,
    },
    VirtualZ {
        spin: usize,
        angle_deg: f64,
        duration_s: f64,
    },
}

impl ProgramElement {
    fn from_element<R: Real>(e: &PulseElement<R>) -> Self {
        match *e {
            PulseElement::SelectivePulse {
                spin,
                axis,
                angle_deg,
                duration_s,
            } => ProgramElement::Pulse {
                spin,
                axis: axis.label(),
                phase_deg: match axis {
                    PulseAxis::Xy(p) => Some(sig9(normalize_deg(p).as_f64())),
                    _ => None,
                },
                angle_deg: sig9(angle_deg.as_f64()),
                duration_s: sig9(duration_s.as_f64()),
            },
            PulseElement::RefocusedDelay { i, j, duration_s } => ProgramElement::Delay {
                spins: [i, j],
                duration_s: sig9(duration_s.as_f64()),
            },
            PulseElement::VirtualZ { spin, angle_deg } => ProgramElement::VirtualZ {
                spin,
                angle_deg: sig9(angle_deg.as_f64()),
                duration_s: 0.0,
            },
        }
    }
}
