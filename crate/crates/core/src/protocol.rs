//! The end-to-end Deutsch-Jozsa run: compile `U_f`, evolve, read the spectrum.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::compiler::{Gate, PulseSequence};
use crate::dynamics::{compile_function, evolve, fiducial_state, EvolutionConfig, Relaxation};
use crate::error::{Error, Result};
use crate::oracle::{build_uf_gates, membership, Admissibility, BooleanFunction};
use crate::report::{sig9, ProgramSummary, RunReport, TopologyRecord};
use crate::scalar::Real;
use crate::spectra::{
    compare, dj_verdict, predict_spectrum, Comparison, DjVerdict, Spectrum, Verdict,
    DEFAULT_BIN_TOL_HZ, DEFAULT_PHASE_TOL_RAD,
};
use crate::spin::{CouplingTopology, DeviationOperator, SpinSystem, DEFAULT_COUPLING_THRESHOLD_HZ};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TopologyKind {
    /// Every nonzero coupling.
    #[default]
    Full,
    /// Nearest neighbours only.
    Linear,
    /// Couplings at or above the threshold.
    Auto,
}

impl fmt::Display for TopologyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TopologyKind::Full => "full",
            TopologyKind::Linear => "linear",
            TopologyKind::Auto => "auto",
        })
    }
}

impl FromStr for TopologyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Self::Full),
            "linear" => Ok(Self::Linear),
            "auto" => Ok(Self::Auto),
            _ => Err(Error::Parse(format!("unknown topology `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProtocolOptions {
    pub topology: TopologyKind,
    pub relaxation: Relaxation,
    pub bin_tol_hz: f64,
    pub phase_tol_rad: f64,
    pub coupling_threshold_hz: f64,
}

impl Default for ProtocolOptions {
    fn default() -> Self {
        Self {
            topology: TopologyKind::Full,
            relaxation: Relaxation::Off,
            bin_tol_hz: DEFAULT_BIN_TOL_HZ,
            phase_tol_rad: DEFAULT_PHASE_TOL_RAD,
            coupling_threshold_hz: DEFAULT_COUPLING_THRESHOLD_HZ,
        }
    }
}

impl ProtocolOptions {
    pub fn with_topology(mut self, topology: TopologyKind) -> Self {
        self.topology = topology;
        self
    }

    pub fn with_relaxation(mut self, relaxation: Relaxation) -> Self {
        self.relaxation = relaxation;
        self
    }

    pub fn resolve_topology<R: Real>(&self, system: &SpinSystem<R>) -> CouplingTopology {
        match self.topology {
            TopologyKind::Full => CouplingTopology::full(system),
            TopologyKind::Linear => CouplingTopology::linear(system),
            TopologyKind::Auto => CouplingTopology::from_threshold(system, R::lit(self.coupling_threshold_hz)),
        }
    }
}

/// Intermediate and final products of one run.
#[derive(Clone, Debug)]
pub struct Outcome<R: Real = f64> {
    pub function: BooleanFunction,
    pub topology: CouplingTopology,
    pub gates: Vec<Gate<R>>,
    pub sequence: PulseSequence<R>,
    pub rho: DeviationOperator<R>,
    pub fiducial: Spectrum<R>,
    pub spectrum: Spectrum<R>,
    pub comparison: Comparison<R>,
    pub verdict: DjVerdict,
}

pub fn run_protocol<R: Real>(
    f: &BooleanFunction,
    system: &SpinSystem<R>,
    options: &ProtocolOptions,
) -> Result<Outcome<R>> {
    let topology = options.resolve_topology(system);
    topology.ensure_connected()?;
    let sequence = compile_function(f, system, &topology)?;
    let gates = build_uf_gates(&f.anf())?;
    let config = EvolutionConfig {
        relaxation: options.relaxation,
    };
    let start = fiducial_state(system);
    let rho = evolve(&start, &sequence, system, config)?;
    let bin_tol = R::lit(options.bin_tol_hz);
    let fiducial = predict_spectrum(&start, system, bin_tol)?;
    let spectrum = predict_spectrum(&rho, system, bin_tol)?;
    let comparison = compare(&spectrum, &fiducial, R::lit(options.phase_tol_rad))?;
    let verdict = dj_verdict(&comparison)?;
    Ok(Outcome {
        function: *f,
        topology,
        gates,
        sequence,
        rho,
        fiducial,
        spectrum,
        comparison,
        verdict,
    })
}

impl<R: Real> Outcome<R> {
    pub fn report(&self, options: &ProtocolOptions) -> RunReport {
        let seq = &self.sequence;
        RunReport {
            function: self.function.mask_spec(),
            truth_table: format!("{:0width$b}", self.function.table(), width = 1 << self.function.n_bits()),
            anf: self.function.anf().to_string(),
            class: membership(&self.function)
                .map(|m| m.id.to_string())
                .unwrap_or_else(|_| "-".into()),
            gates: self.gates.iter().map(|g| g.to_string()).collect(),
            topology: TopologyRecord {
                kind: options.topology.to_string(),
                edges: self.topology.edges().map(|e| [e.high(), e.low()]).collect(),
            },
            relaxation: options.relaxation,
            program: ProgramSummary {
                element_count: seq.elements().len(),
                pulse_count: seq.count_pulses(),
                delay_count: seq.count_delays(),
                total_duration_s: sig9(seq.total_duration_s().as_f64()),
                trailing_phase_shifts_deg: seq
                    .trailing_phase_shifts_deg()
                    .iter()
                    .map(|a| sig9(a.as_f64()))
                    .collect(),
            },
            spectrum: self.spectrum.to_record(Some(&self.comparison)),
            verdict: self.verdict.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepEntry {
    pub function: String,
    pub class: String,
    pub expected: Verdict,
    pub verdict: Option<Verdict>,
    /// Why there is no verdict.
    pub error: Option<String>,
    pub witnesses: usize,
    pub total_duration_s: f64,
}

impl SweepEntry {
    pub fn correct(&self) -> bool {
        self.verdict == Some(self.expected)
    }
}

/// Runs every admissible three-bit function. Errors that concern the system as
/// a whole (disconnected topology, missing relaxation data) abort the sweep.
pub fn sweep<R: Real>(system: &SpinSystem<R>, options: &ProtocolOptions) -> Result<Vec<SweepEntry>> {
    options.resolve_topology(system).ensure_connected()?;
    if options.relaxation == Relaxation::T2Only && system.t2_s().is_none() {
        return Err(Error::MissingRelaxationTimes);
    }
    let mut out = Vec::new();
    for f in BooleanFunction::admissible(system.n_spins())? {
        let expected = match f.admissibility() {
            Admissibility::Constant => Verdict::Constant,
            _ => Verdict::Balanced,
        };
        let run = run_protocol(&f, system, options);
        out.push(SweepEntry {
            function: f.mask_spec(),
            class: membership(&f).map(|m| m.id.to_string()).unwrap_or_default(),
            expected,
            witnesses: run.as_ref().map(|o| o.verdict.witnesses.len()).unwrap_or(0),
            total_duration_s: run
                .as_ref()
                .map(|o| sig9(o.sequence.total_duration_s().as_f64()))
                .unwrap_or(0.0),
            verdict: run.as_ref().ok().map(|o| o.verdict.verdict),
            error: run.err().map(|e| e.to_string()),
        });
    }
    Ok(out)
}
