//! Multiplet spectra read off coherence elements, comparison against the
//! fiducial spectrum and the constant/balanced verdict.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::sig9;
use crate::scalar::{c, Cplx, Real};
use crate::spin::{DeviationOperator, Factor, ProductOperatorTerm, SpinSystem};

pub const DEFAULT_BIN_TOL_HZ: f64 = 0.01;
pub const DEFAULT_PHASE_TOL_RAD: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralLine<R: Real = f64> {
    pub spin: usize,
    pub frequency_hz: R,
    /// Phased so `-I_x` terms give positive real amplitudes.
    pub amplitude: Cplx<R>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum<R: Real = f64> {
    n_spins: usize,
    bin_tol_hz: R,
    /// Offsets followed by the upper triangle of couplings; identifies the system.
    fingerprint: Vec<R>,
    multiplets: Vec<Vec<SpectralLine<R>>>,
}

fn fingerprint<R: Real>(system: &SpinSystem<R>) -> Vec<R> {
    let n = system.n_spins();
    let mut v = system.offsets_hz().to_vec();
    for i in 0..n {
        for j in 0..i {
            v.push(system.coupling_hz(i, j));
        }
    }
    v
}

/// Frequency of spin `j`'s line with the other spins in basis state `x`
/// (bit `k` clear means `m_k = +1/2`).
fn line_frequency<R: Real>(system: &SpinSystem<R>, j: usize, x: usize) -> R {
    let half = R::lit(0.5);
    (0..system.n_spins())
        .filter(|&k| k != j)
        .fold(system.offset_hz(j), |acc, k| {
            let m = if x >> k & 1 == 0 { half } else { -half };
            acc + m * system.coupling_hz(j, k)
        })
}

/// Spectator configurations of spin `j`: basis indices with bit `j` clear.
fn spectator_states(n_spins: usize, j: usize) -> impl Iterator<Item = usize> {
    (0..1usize << n_spins).filter(move |x| x >> j & 1 == 0)
}

fn global_scale<R: Real>() -> Cplx<R> {
    c(R::lit(-2.0), R::zero())
}

impl<R: Real> Spectrum<R> {
    fn assemble(system: &SpinSystem<R>, bin_tol_hz: R, raw: Vec<Vec<SpectralLine<R>>>) -> Self {
        let multiplets = raw
            .into_iter()
            .map(|mut lines| {
                lines.sort_by(|a, b| a.frequency_hz.partial_cmp(&b.frequency_hz).expect("finite"));
                let mut bins: Vec<(SpectralLine<R>, R, usize)> = Vec::new();
                for l in lines {
                    match bins.last_mut() {
                        Some((bin, sum, count)) if l.frequency_hz - bin.frequency_hz <= bin_tol_hz => {
                            bin.amplitude = bin.amplitude + l.amplitude;
                            *sum = *sum + l.frequency_hz;
                            *count += 1;
                        }
                        _ => bins.push((l, l.frequency_hz, 1)),
                    }
                }
                bins.into_iter()
                    .map(|(mut bin, sum, count)| {
                        bin.frequency_hz = sum / R::from_usize(count).expect("small count");
                        bin
                    })
                    .filter(|l| l.amplitude.norm() >= R::prune_tol())
                    .collect()
            })
            .collect();
        Self {
            n_spins: system.n_spins(),
            bin_tol_hz,
            fingerprint: fingerprint(system),
            multiplets,
        }
    }

    pub fn n_spins(&self) -> usize {
        self.n_spins
    }

    pub fn bin_tol_hz(&self) -> R {
        self.bin_tol_hz
    }

    /// Lines of spin `j`, ascending frequency.
    pub fn multiplet(&self, j: usize) -> &[SpectralLine<R>] {
        &self.multiplets[j]
    }

    pub fn lines(&self) -> impl Iterator<Item = &SpectralLine<R>> {
        self.multiplets.iter().flatten()
    }

    pub fn line_count(&self) -> usize {
        self.multiplets.iter().map(Vec::len).sum()
    }

    fn find(&self, spin: usize, frequency_hz: R) -> Option<&SpectralLine<R>> {
        self.multiplets[spin]
            .iter()
            .find(|l| (l.frequency_hz - frequency_hz).abs() <= self.bin_tol_hz)
    }
}

/// Spectrum from the single-quantum coherence elements `<s,1_j| ρ |s,0_j>`.
pub fn predict_spectrum<R: Real>(
    rho: &DeviationOperator<R>,
    system: &SpinSystem<R>,
    bin_tol_hz: R,
) -> Result<Spectrum<R>> {
    let n = system.n_spins();
    if rho.n_spins() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: rho.n_spins(),
        });
    }
    let op = rho.as_operator();
    let tol = R::structural_tol() * R::one().max(op.max_abs());
    if !op.is_hermitian(tol) {
        return Err(Error::NonHermitian {
            deviation: op.hermiticity_defect().as_f64(),
        });
    }
    let raw = (0..n)
        .map(|j| {
            spectator_states(n, j)
                .map(|x| SpectralLine {
                    spin: j,
                    frequency_hz: line_frequency(system, j, x),
                    amplitude: op[(x | 1 << j, x)] * global_scale(),
                })
                .collect()
        })
        .collect();
    Ok(Spectrum::assemble(system, bin_tol_hz, raw))
}

/// Spectrum built term by term from a product-operator expansion: a term with
/// one transverse factor on spin `j` contributes an in-phase multiplet, split
/// into antiphase halves by each `I_z` on another spin. Terms with zero or
/// several transverse factors are unobservable.
pub fn spectrum_from_terms<R: Real>(
    terms: &[ProductOperatorTerm<R>],
    system: &SpinSystem<R>,
    bin_tol_hz: R,
) -> Result<Spectrum<R>> {
    let n = system.n_spins();
    let half = R::lit(0.5);
    let mut amps = vec![vec![Cplx::<R>::new(R::zero(), R::zero()); 1 << n]; n];
    for t in terms {
        if t.factors.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: t.factors.len(),
            });
        }
        let transverse: Vec<usize> = t.transverse_spins().collect();
        let [j] = transverse[..] else { continue };
        let unit = match t.factors[j] {
            Factor::Ix => c(half, R::zero()),
            _ => c(R::zero(), half),
        };
        for x in spectator_states(n, j) {
            let sign = (0..n)
                .filter(|&k| t.factors[k] == Factor::Iz)
                .fold(R::one(), |acc, k| if x >> k & 1 == 0 { acc * half } else { -acc * half });
            amps[j][x] = amps[j][x] + unit * t.coefficient * sign;
        }
    }
    let raw = (0..n)
        .map(|j| {
            spectator_states(n, j)
                .map(|x| SpectralLine {
                    spin: j,
                    frequency_hz: line_frequency(system, j, x),
                    amplitude: amps[j][x] * global_scale(),
                })
                .collect()
        })
        .collect();
    Ok(Spectrum::assemble(system, bin_tol_hz, raw))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PhaseClass {
    Zero,
    Pi,
    /// Neither 0 nor π within tolerance.
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LineRef {
    pub spin: usize,
    pub frequency_hz: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineComparison<R: Real = f64> {
    pub spin: usize,
    pub frequency_hz: R,
    pub amplitude: Cplx<R>,
    pub fiducial_amplitude: Cplx<R>,
    /// `arg(a_f / a_fid)` in `(-π, π]`.
    pub phase_diff_rad: R,
    pub class: PhaseClass,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Comparison<R: Real = f64> {
    pub lines: Vec<LineComparison<R>>,
    /// Fiducial lines with no counterpart.
    pub disappeared: Vec<LineRef>,
    /// Lines with no fiducial counterpart.
    pub extra: Vec<LineRef>,
}

impl<R: Real> Comparison<R> {
    pub fn witnesses(&self) -> impl Iterator<Item = &LineComparison<R>> {
        self.lines.iter().filter(|l| l.class == PhaseClass::Pi)
    }

    pub fn phase_of(&self, spin: usize, frequency_hz: R, tol_hz: R) -> Option<R> {
        self.lines
            .iter()
            .find(|l| l.spin == spin && (l.frequency_hz - frequency_hz).abs() <= tol_hz)
            .map(|l| l.phase_diff_rad)
    }
}

fn line_ref<R: Real>(l: &SpectralLine<R>) -> LineRef {
    LineRef {
        spin: l.spin,
        frequency_hz: sig9(l.frequency_hz.as_f64()),
    }
}

/// Pairs lines by spin and frequency and classifies each phase difference.
pub fn compare<R: Real>(f_spec: &Spectrum<R>, fiducial: &Spectrum<R>, phase_tol_rad: R) -> Result<Comparison<R>> {
    if f_spec.n_spins != fiducial.n_spins
        || f_spec.bin_tol_hz != fiducial.bin_tol_hz
        || f_spec.fingerprint != fiducial.fingerprint
    {
        return Err(Error::SpectrumMismatch(
            "spin count, couplings, offsets or bin width differ".into(),
        ));
    }
    let mut out = Comparison {
        lines: Vec::new(),
        disappeared: Vec::new(),
        extra: Vec::new(),
    };
    for fid in fiducial.lines() {
        match f_spec.find(fid.spin, fid.frequency_hz) {
            None => out.disappeared.push(line_ref(fid)),
            Some(l) => {
                let phase = (l.amplitude / fid.amplitude).arg();
                let class = if phase.abs() <= phase_tol_rad {
                    PhaseClass::Zero
                } else if (R::PI() - phase.abs()) <= phase_tol_rad {
                    PhaseClass::Pi
                } else {
                    PhaseClass::Other
                };
                out.lines.push(LineComparison {
                    spin: l.spin,
                    frequency_hz: l.frequency_hz,
                    amplitude: l.amplitude,
                    fiducial_amplitude: fid.amplitude,
                    phase_diff_rad: phase,
                    class,
                });
            }
        }
    }
    for l in f_spec.lines() {
        if fiducial.find(l.spin, l.frequency_hz).is_none() {
            out.extra.push(line_ref(l));
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Constant,
    Balanced,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Constant => "constant",
            Verdict::Balanced => "balanced",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DjVerdict {
    pub verdict: Verdict,
    /// Lines π out of phase with the fiducial spectrum.
    pub witnesses: Vec<LineRef>,
    pub disappeared: Vec<LineRef>,
}

/// Balanced iff some line is π out of phase. Without a witness the spectra
/// must be identical; missing, extra or off-phase lines make the readout
/// inconclusive rather than constant.
pub fn dj_verdict<R: Real>(comparison: &Comparison<R>) -> Result<DjVerdict> {
    let witnesses: Vec<LineRef> = comparison
        .witnesses()
        .map(|l| LineRef {
            spin: l.spin,
            frequency_hz: sig9(l.frequency_hz.as_f64()),
        })
        .collect();
    if witnesses.is_empty() {
        let off_phase = comparison.lines.iter().filter(|l| l.class == PhaseClass::Other).count();
        if !comparison.disappeared.is_empty() || !comparison.extra.is_empty() || off_phase > 0 {
            return Err(Error::Inconclusive(format!(
                "no π line, but {} disappeared, {} extra and {off_phase} off-phase lines",
                comparison.disappeared.len(),
                comparison.extra.len()
            )));
        }
    }
    Ok(DjVerdict {
        verdict: if witnesses.is_empty() {
            Verdict::Constant
        } else {
            Verdict::Balanced
        },
        witnesses,
        disappeared: comparison.disappeared.clone(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LineRecord {
    pub frequency_hz: f64,
    pub re: f64,
    pub im: f64,
    /// Absent for lines with no fiducial counterpart.
    pub phase_vs_fiducial: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MultipletRecord {
    pub spin: usize,
    pub lines: Vec<LineRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumRecord {
    pub bin_tol_hz: f64,
    pub spins: Vec<MultipletRecord>,
}

impl<R: Real> Spectrum<R> {
    /// JSON view, highest spin first; phases are taken from `comparison`.
    pub fn to_record(&self, comparison: Option<&Comparison<R>>) -> SpectrumRecord {
        SpectrumRecord {
            bin_tol_hz: sig9(self.bin_tol_hz.as_f64()),
            spins: (0..self.n_spins)
                .rev()
                .map(|spin| MultipletRecord {
                    spin,
                    lines: self.multiplets[spin]
                        .iter()
                        .map(|l| LineRecord {
                            frequency_hz: sig9(l.frequency_hz.as_f64()),
                            re: sig9(l.amplitude.re.as_f64()),
                            im: sig9(l.amplitude.im.as_f64()),
                            phase_vs_fiducial: comparison
                                .and_then(|c| c.phase_of(spin, l.frequency_hz, self.bin_tol_hz))
                                .map(|p| sig9(p.as_f64())),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}
