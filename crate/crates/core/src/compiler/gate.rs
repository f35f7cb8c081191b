use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::scalar::{Cplx, Real};
use crate::spin::rotation_unitary;

/// Abstract circuit element, before lowering to pulses.
#[derive(Clone, Debug, PartialEq)]
pub enum Gate<R: Real = f64> {
    SingleRotation { spin: usize, axis: [R; 3], angle_deg: R },
    Cnot { control: usize, target: usize },
    Swap(usize, usize),
    /// `|x> -> (-1)^{x_i x_j} |x>`.
    Quadratic(usize, usize),
    /// `|x> -> (-1)^{x_i} |x>`.
    Linear(usize),
}

impl<R: Real> Gate<R> {
    pub fn spins(&self) -> Vec<usize> {
        match *self {
            Gate::SingleRotation { spin, .. } | Gate::Linear(spin) => vec![spin],
            Gate::Cnot { control, target } => vec![control, target],
            Gate::Swap(i, j) | Gate::Quadratic(i, j) => vec![i, j],
        }
    }

    pub fn validate(&self, n_spins: usize) -> Result<()> {
        let spins = self.spins();
        for &s in &spins {
            if s >= n_spins {
                return Err(Error::SpinOutOfRange { spin: s, n_spins });
            }
        }
        if spins.len() == 2 && spins[0] == spins[1] {
            return Err(Error::SameSpin(spins[0]));
        }
        Ok(())
    }

    /// Renames spin `k` to `perm[k]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        match *self {
            Gate::SingleRotation {
                spin,
                axis,
                angle_deg,
            } => Gate::SingleRotation {
                spin: perm[spin],
                axis,
                angle_deg,
            },
            Gate::Cnot { control, target } => Gate::Cnot {
                control: perm[control],
                target: perm[target],
            },
            Gate::Swap(i, j) => Gate::Swap(perm[i], perm[j]),
            Gate::Quadratic(i, j) => Gate::Quadratic(perm[i], perm[j]),
            Gate::Linear(i) => Gate::Linear(perm[i]),
        }
    }

    /// The ideal unitary, built directly from the gate's definition.
    pub fn reference_unitary(&self, n_spins: usize) -> Result<Operator<R>> {
        self.validate(n_spins)?;
        let dim = 1usize << n_spins;
        let sign = |neg: bool| if neg { -Cplx::<R>::one() } else { Cplx::one() };
        let permutation = |map: &dyn Fn(usize) -> usize| {
            let mut m = Operator::zeros(dim);
            for x in 0..dim {
                m[(map(x), x)] = Cplx::one();
            }
            m
        };
        Ok(match *self {
            Gate::SingleRotation {
                spin,
                axis,
                angle_deg,
            } => rotation_unitary(spin, axis, angle_deg, n_spins)?,
            Gate::Quadratic(i, j) => Operator::from_diagonal(
                &(0..dim)
                    .map(|x| sign(x >> i & x >> j & 1 == 1))
                    .collect::<Vec<_>>(),
            ),
            Gate::Linear(i) => {
                Operator::from_diagonal(&(0..dim).map(|x| sign(x >> i & 1 == 1)).collect::<Vec<_>>())
            }
            Gate::Cnot { control, target } => {
                permutation(&|x| x ^ ((x >> control & 1) << target))
            }
            Gate::Swap(i, j) => permutation(&|x| {
                let (a, b) = (x >> i & 1, x >> j & 1);
                x & !(1 << i | 1 << j) | a << j | b << i
            }),
        })
    }

    pub fn is_diagonal(&self) -> bool {
        match self {
            Gate::Quadratic(..) | Gate::Linear(_) => true,
            Gate::SingleRotation { axis, .. } => axis[0] == R::zero() && axis[1] == R::zero(),
            _ => false,
        }
    }
}

impl<R: Real> fmt::Display for Gate<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::SingleRotation {
                spin,
                axis,
                angle_deg,
            } => write!(
                f,
                "R{spin}[{}, {}, {}]({angle_deg})",
                axis[0], axis[1], axis[2]
            ),
            Gate::Cnot { control, target } => write!(f, "CNOT({control},{target})"),
            Gate::Swap(i, j) => write!(f, "SWAP({i},{j})"),
            Gate::Quadratic(i, j) => write!(f, "Quad({i},{j})"),
            Gate::Linear(i) => write!(f, "Lin({i})"),
        }
    }
}

/// Product of the gates' reference unitaries, applied first to last.
pub fn circuit_unitary<R: Real>(gates: &[Gate<R>], n_spins: usize) -> Result<Operator<R>> {
    let mut u = Operator::identity(1 << n_spins);
    for g in gates {
        u = &g.reference_unitary(n_spins)? * &u;
    }
    Ok(u)
}
