use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Weakly coupled homonuclear spin-1/2 molecule.
///
/// Every per-spin vector is indexed by spin number (`v[k]` belongs to spin `k`).
/// Molecule files list the same quantities in tensor-slot order instead, highest
/// spin first; [`MoleculeFile`] handles the reversal.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinSystem<R: Real = f64> {
    offsets_hz: Vec<R>,
    couplings_hz: Vec<Vec<R>>,
    t1_s: Option<Vec<R>>,
    t2_s: Option<Vec<R>>,
    pulse_90_s: Vec<R>,
}

impl<R: Real> SpinSystem<R> {
    pub fn new(
        offsets_hz: Vec<R>,
        couplings_hz: Vec<Vec<R>>,
        t1_s: Option<Vec<R>>,
        t2_s: Option<Vec<R>>,
        pulse_90_s: Vec<R>,
    ) -> Result<Self> {
        let system = Self {
            offsets_hz,
            couplings_hz,
            t1_s,
            t2_s,
            pulse_90_s,
        };
        system.validate()?;
        Ok(system)
    }

    fn validate(&self) -> Result<()> {
        let n = self.offsets_hz.len();
        let bad = |msg: String| Err(Error::InvalidSystem(msg));
        if n == 0 {
            return bad("at least one spin is required".into());
        }
        if self.couplings_hz.len() != n || self.couplings_hz.iter().any(|row| row.len() != n) {
            return bad(format!("coupling matrix must be {n}x{n}"));
        }
        for i in 0..n {
            if self.couplings_hz[i][i] != R::zero() {
                return bad(format!("J[{i}][{i}] must be zero"));
            }
            for j in 0..i {
                if self.couplings_hz[i][j] != self.couplings_hz[j][i] {
                    return bad(format!("coupling matrix not symmetric at ({i},{j})"));
                }
                if self.offsets_hz[i] == self.offsets_hz[j] {
                    return bad(format!("spins {i} and {j} share an offset"));
                }
            }
        }
        let positive = |name: &str, v: &[R]| -> Result<()> {
            if v.len() != n {
                return bad(format!("{name} needs {n} entries, got {}", v.len()));
            }
            if !v.iter().all(|&x| x > R::zero()) {
                return bad(format!("{name} entries must be strictly positive"));
            }
            Ok(())
        };
        positive("pulse_90_s", &self.pulse_90_s)?;
        if let Some(t1) = &self.t1_s {
            positive("t1_s", t1)?;
        }
        if let Some(t2) = &self.t2_s {
            positive("t2_s", t2)?;
        }
        Ok(())
    }

    #[inline]
    pub fn n_spins(&self) -> usize {
        self.offsets_hz.len()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        1 << self.n_spins()
    }

    pub fn offset_hz(&self, spin: usize) -> R {
        self.offsets_hz[spin]
    }

    pub fn offsets_hz(&self) -> &[R] {
        &self.offsets_hz
    }

    pub fn coupling_hz(&self, i: usize, j: usize) -> R {
        self.couplings_hz[i][j]
    }

    pub fn t1_s(&self) -> Option<&[R]> {
        self.t1_s.as_deref()
    }

    pub fn t2_s(&self) -> Option<&[R]> {
        self.t2_s.as_deref()
    }

    pub fn pulse_90_s(&self, spin: usize) -> R {
        self.pulse_90_s[spin]
    }

    pub fn check_spin(&self, spin: usize) -> Result<()> {
        if spin < self.n_spins() {
            Ok(())
        } else {
            Err(Error::SpinOutOfRange {
                spin,
                n_spins: self.n_spins(),
            })
        }
    }

    /// Copy of the system with `J_ij = J_ji = hz`.
    pub fn with_coupling(&self, i: usize, j: usize, hz: R) -> Result<Self> {
        self.check_spin(i)?;
        self.check_spin(j)?;
        if i == j {
            return Err(Error::SameSpin(i));
        }
        let mut out = self.clone();
        out.couplings_hz[i][j] = hz;
        out.couplings_hz[j][i] = hz;
        Ok(out)
    }

    pub fn without_relaxation_times(&self) -> Self {
        Self {
            t1_s: None,
            t2_s: None,
            ..self.clone()
        }
    }

    /// Converts to another precision.
    pub fn cast<S: Real>(&self) -> SpinSystem<S> {
        let v = |x: &[R]| x.iter().map(|&a| S::lit(a.as_f64())).collect::<Vec<S>>();
        SpinSystem {
            offsets_hz: v(&self.offsets_hz),
            couplings_hz: self.couplings_hz.iter().map(|row| v(row)).collect(),
            t1_s: self.t1_s.as_deref().map(v),
            t2_s: self.t2_s.as_deref().map(v),
            pulse_90_s: v(&self.pulse_90_s),
        }
    }

    pub fn from_molecule(file: &MoleculeFile) -> Result<Self> {
        let n = file.n_spins;
        let rev = |name: &str, v: &[f64]| -> Result<Vec<R>> {
            if v.len() != n {
                return Err(Error::InvalidSystem(format!(
                    "{name} needs {n} entries, got {}",
                    v.len()
                )));
            }
            Ok(v.iter().rev().map(|&x| R::lit(x)).collect())
        };
        if file.j_hz.len() != n || file.j_hz.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidSystem(format!("j_hz must be {n}x{n}")));
        }
        // slot s holds spin n-1-s
        let couplings = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| R::lit(file.j_hz[n - 1 - i][n - 1 - j]))
                    .collect()
            })
            .collect();
        Self::new(
            rev("offsets_hz", &file.offsets_hz)?,
            couplings,
            file.t1_s.as_deref().map(|v| rev("t1_s", v)).transpose()?,
            file.t2_s.as_deref().map(|v| rev("t2_s", v)).transpose()?,
            rev("pulse_90_s", &file.pulse_90_s)?,
        )
    }

    pub fn to_molecule(&self) -> MoleculeFile {
        let n = self.n_spins();
        let rev = |v: &[R]| v.iter().rev().map(|x| x.as_f64()).collect::<Vec<_>>();
        MoleculeFile {
            n_spins: n,
            offsets_hz: rev(&self.offsets_hz),
            j_hz: (0..n)
                .map(|s| {
                    (0..n)
                        .map(|t| self.couplings_hz[n - 1 - s][n - 1 - t].as_f64())
                        .collect()
                })
                .collect(),
            t1_s: self.t1_s.as_deref().map(rev),
            t2_s: self.t2_s.as_deref().map(rev),
            pulse_90_s: rev(&self.pulse_90_s),
        }
    }

    pub fn from_json_str(json: &str) -> Result<Self> {
        let file: MoleculeFile = serde_json::from_str(json)?;
        Self::from_molecule(&file)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    /// Uniformly 13C-labelled alanine: carboxyl (spin 2), alpha (spin 1) and
    /// methyl (spin 0) carbons. Offsets are placeholders; they only move lines.
    pub fn alanine() -> Self {
        Self::from_json_str(ALANINE_JSON).expect("bundled alanine.json is valid")
    }
}

/// Bundled molecule definition.
pub const ALANINE_JSON: &str = include_str!("../../molecules/alanine.json");

/// On-disk molecule definition. Per-spin arrays are in tensor-slot order, so
/// entry 0 describes spin `n_spins - 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MoleculeFile {
    pub n_spins: usize,
    pub offsets_hz: Vec<f64>,
    pub j_hz: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t1_s: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t2_s: Option<Vec<f64>>,
    pub pulse_90_s: Vec<f64>,
}

/// Unordered spin pair, stored with the larger index first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpinPair(usize, usize);

impl SpinPair {
    pub fn new(i: usize, j: usize) -> Self {
        if i >= j {
            Self(i, j)
        } else {
            Self(j, i)
        }
    }

    pub fn high(self) -> usize {
        self.0
    }

    pub fn low(self) -> usize {
        self.1
    }

    pub fn other(self, spin: usize) -> Option<usize> {
        if spin == self.0 {
            Some(self.1)
        } else if spin == self.1 {
            Some(self.0)
        } else {
            None
        }
    }
}

/// Couplings usable for two-qubit gates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CouplingTopology {
    n_spins: usize,
    edges: BTreeSet<SpinPair>,
}

/// Couplings weaker than this are too slow to use for gates.
pub const DEFAULT_COUPLING_THRESHOLD_HZ: f64 = 5.0;

impl CouplingTopology {
    /// Edge `(i, j)` iff `|J_ij| >= threshold_hz` and `J_ij != 0`.
    pub fn from_threshold<R: Real>(system: &SpinSystem<R>, threshold_hz: R) -> Self {
        let n = system.n_spins();
        let mut edges = BTreeSet::new();
        for i in 0..n {
            for j in 0..i {
                let jij = system.coupling_hz(i, j).abs();
                if jij != R::zero() && jij >= threshold_hz {
                    edges.insert(SpinPair::new(i, j));
                }
            }
        }
        Self { n_spins: n, edges }
    }

    /// Every nonzero coupling.
    pub fn full<R: Real>(system: &SpinSystem<R>) -> Self {
        Self::from_threshold(system, R::zero())
    }

    /// Nearest-neighbour chain `n-1 - ... - 1 - 0`, dropping links with zero coupling.
    pub fn linear<R: Real>(system: &SpinSystem<R>) -> Self {
        let edges = (1..system.n_spins())
            .filter(|&k| system.coupling_hz(k, k - 1) != R::zero())
            .map(|k| SpinPair::new(k, k - 1))
            .collect();
        Self {
            n_spins: system.n_spins(),
            edges,
        }
    }

    pub fn from_edges<R: Real>(
        system: &SpinSystem<R>,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut edges = BTreeSet::new();
        for (i, j) in pairs {
            system.check_spin(i)?;
            system.check_spin(j)?;
            if i == j {
                return Err(Error::SameSpin(i));
            }
            if system.coupling_hz(i, j) == R::zero() {
                return Err(Error::InvalidSystem(format!(
                    "edge ({i},{j}) has zero coupling"
                )));
            }
            edges.insert(SpinPair::new(i, j));
        }
        Ok(Self {
            n_spins: system.n_spins(),
            edges,
        })
    }

    pub fn n_spins(&self) -> usize {
        self.n_spins
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&SpinPair::new(i, j))
    }

    pub fn edges(&self) -> impl Iterator<Item = SpinPair> + '_ {
        self.edges.iter().copied()
    }

    pub fn neighbours(&self, spin: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter_map(move |e| e.other(spin))
    }

    pub fn is_connected(&self) -> bool {
        if self.n_spins <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n_spins];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(s) = stack.pop() {
            for nb in self.neighbours(s) {
                if !seen[nb] {
                    seen[nb] = true;
                    stack.push(nb);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn ensure_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            let edges: Vec<String> = self
                .edges
                .iter()
                .map(|e| format!("{}-{}", e.high(), e.low()))
                .collect();
            Err(Error::DisconnectedTopology(format!(
                "{} spins, edges [{}]",
                self.n_spins,
                edges.join(", ")
            )))
        }
    }

    /// Every simple path from `from` to `to`, each listed from `from`.
    pub fn simple_paths(&self, from: usize, to: usize) -> Vec<Vec<usize>> {
        fn walk(
            topo: &CouplingTopology,
            to: usize,
            path: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            let last = *path.last().expect("non-empty path");
            if last == to {
                out.push(path.clone());
                return;
            }
            let next: Vec<usize> = topo.neighbours(last).collect();
            for nb in next {
                if !path.contains(&nb) {
                    path.push(nb);
                    walk(topo, to, path, out);
                    path.pop();
                }
            }
        }
        let mut out = Vec::new();
        if from < self.n_spins && to < self.n_spins {
            walk(self, to, &mut vec![from], &mut out);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alanine_loads_in_spin_order() {
        let s = SpinSystem::<f64>::alanine();
        assert_eq!(s.n_spins(), 3);
        assert_eq!(s.coupling_hz(2, 1), 56.0);
        assert_eq!(s.coupling_hz(1, 0), 36.0);
        assert_eq!(s.coupling_hz(0, 2), 1.3);
        assert_eq!(s.t1_s().unwrap(), &[0.7, 1.2, 11.5]);
        assert_eq!(s.t2_s().unwrap(), &[0.81, 0.41, 1.3]);
        assert_eq!(s.pulse_90_s(2), 0.5e-3);
        assert_eq!(s.pulse_90_s(0), 0.7e-3);
    }

    #[test]
    fn molecule_file_round_trips() {
        let s = SpinSystem::<f64>::alanine();
        let back = SpinSystem::<f64>::from_molecule(&s.to_molecule()).unwrap();
        assert_eq!(s, back);
    }

    #[test]
    fn rejects_asymmetric_couplings_and_shared_offsets() {
        let j = vec![vec![0.0, 1.0], vec![2.0, 0.0]];
        assert!(SpinSystem::new(vec![0.0, 10.0], j, None, None, vec![1e-3; 2]).is_err());
        let j = vec![vec![0.0, 1.0], vec![1.0, 0.0]];
        assert!(SpinSystem::new(vec![5.0, 5.0], j.clone(), None, None, vec![1e-3; 2]).is_err());
        assert!(SpinSystem::new(vec![0.0, 10.0], j.clone(), None, None, vec![0.0; 2]).is_err());
        assert!(SpinSystem::new(vec![0.0, 10.0], j, None, Some(vec![1.0, -1.0]), vec![1e-3; 2]).is_err());
    }

    #[test]
    fn threshold_drops_weak_coupling() {
        let s = SpinSystem::<f64>::alanine();
        let auto = CouplingTopology::from_threshold(&s, DEFAULT_COUPLING_THRESHOLD_HZ);
        assert!(auto.has_edge(2, 1) && auto.has_edge(0, 1));
        assert!(!auto.has_edge(2, 0));
        assert!(CouplingTopology::full(&s).has_edge(0, 2));
        assert_eq!(auto, CouplingTopology::linear(&s));
        assert!(auto.is_connected());
    }

    #[test]
    fn zero_coupling_disconnects_linear_chain() {
        let s = SpinSystem::<f64>::alanine().with_coupling(1, 0, 0.0).unwrap();
        let lin = CouplingTopology::linear(&s);
        assert!(!lin.is_connected());
        assert!(matches!(lin.ensure_connected(), Err(Error::DisconnectedTopology(_))));
    }

    #[test]
    fn simple_paths_on_chain() {
        let s = SpinSystem::<f64>::alanine();
        let lin = CouplingTopology::linear(&s);
        assert_eq!(lin.simple_paths(2, 0), vec![vec![2, 1, 0]]);
        let full = CouplingTopology::full(&s);
        let mut paths = full.simple_paths(2, 0);
        paths.sort();
        assert_eq!(paths, vec![vec![2, 0], vec![2, 1, 0]]);
    }

    #[test]
    fn from_edges_requires_nonzero_coupling() {
        let s = SpinSystem::<f64>::alanine().with_coupling(2, 0, 0.0).unwrap();
        assert!(CouplingTopology::from_edges(&s, [(2, 0)]).is_err());
        assert!(CouplingTopology::from_edges(&s, [(2, 1), (1, 0)]).is_ok());
    }
}
