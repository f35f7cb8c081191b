//! Serializable run summaries and the fixed float formatting they share.

use serde::Serialize;

use crate::dynamics::Relaxation;
use crate::spectra::{DjVerdict, SpectrumRecord};

/// Rounds to nine significant digits.
pub fn sig9(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.8e}").parse().expect("formatted float parses")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProgramSummary {
    pub element_count: usize,
    pub pulse_count: usize,
    pub delay_count: usize,
    pub total_duration_s: f64,
    pub trailing_phase_shifts_deg: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TopologyRecord {
    pub kind: String,
    pub edges: Vec<[usize; 2]>,
}

/// Everything one protocol run produced, in output order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub function: String,
    pub truth_table: String,
    pub anf: String,
    pub class: String,
    pub gates: Vec<String>,
    pub topology: TopologyRecord,
    pub relaxation: Relaxation,
    pub program: ProgramSummary,
    pub spectrum: SpectrumRecord,
    pub verdict: DjVerdict,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
