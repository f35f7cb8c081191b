//! Product-operator basis `{E, Ix, Iy, Iz}^{⊗n}` and expansions in it.
//!
//! A term's coefficient multiplies the plain tensor product of its factors,
//! so `-4 Ix2 Iz1 Iz0` means `-4 · (σx/2 ⊗ σz/2 ⊗ σz/2)`.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::scalar::{Cplx, Real};
use crate::spin::ops::Axis;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Factor {
    E,
    Ix,
    Iy,
    Iz,
}

impl Factor {
    pub const ALL: [Factor; 4] = [Factor::E, Factor::Ix, Factor::Iy, Factor::Iz];

    pub fn axis(self) -> Option<Axis> {
        match self {
            Factor::E => None,
            Factor::Ix => Some(Axis::X),
            Factor::Iy => Some(Axis::Y),
            Factor::Iz => Some(Axis::Z),
        }
    }

    pub fn is_transverse(self) -> bool {
        matches!(self, Factor::Ix | Factor::Iy)
    }

    fn matrix<R: Real>(self) -> [[Cplx<R>; 2]; 2] {
        match self.axis() {
            Some(a) => a.half_pauli(),
            None => [[Cplx::one(), Cplx::zero()], [Cplx::zero(), Cplx::one()]],
        }
    }

    fn label(self) -> &'static str {
        match self {
            Factor::E => "E",
            Factor::Ix => "Ix",
            Factor::Iy => "Iy",
            Factor::Iz => "Iz",
        }
    }
}

/// `coefficient × ⊗_k factors[k]`, with `factors[k]` acting on spin `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductOperatorTerm<R: Real = f64> {
    pub coefficient: R,
    pub factors: Vec<Factor>,
}

impl<R: Real> ProductOperatorTerm<R> {
    pub fn new(coefficient: R, factors: Vec<Factor>) -> Self {
        Self {
            coefficient,
            factors,
        }
    }

    /// Builds a term from `(spin, factor)` pairs; unlisted spins carry `E`.
    pub fn from_sparse(coefficient: R, n_spins: usize, parts: &[(usize, Factor)]) -> Self {
        let mut factors = vec![Factor::E; n_spins];
        for &(spin, f) in parts {
            factors[spin] = f;
        }
        Self::new(coefficient, factors)
    }

    pub fn n_spins(&self) -> usize {
        self.factors.len()
    }

    /// Spins carrying an `Ix` or `Iy` factor.
    pub fn transverse_spins(&self) -> impl Iterator<Item = usize> + '_ {
        self.factors
            .iter()
            .enumerate()
            .filter(|(_, f)| f.is_transverse())
            .map(|(k, _)| k)
    }

    /// Plain tensor product of the factors, without the coefficient.
    pub fn basis_operator(&self) -> Operator<R> {
        basis_operator(&self.factors)
    }

    pub fn to_operator(&self) -> Operator<R> {
        self.basis_operator().scale_real(self.coefficient)
    }
}

impl<R: Real> fmt::Display for ProductOperatorTerm<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.coefficient < R::zero() { '-' } else { '+' };
        write!(f, "{sign}{}", self.coefficient.abs())?;
        for (k, fac) in self.factors.iter().enumerate().rev() {
            if *fac != Factor::E {
                write!(f, " {}{k}", fac.label())?;
            }
        }
        Ok(())
    }
}

pub fn basis_operator<R: Real>(factors: &[Factor]) -> Operator<R> {
    let n = factors.len();
    let mats: Vec<[[Cplx<R>; 2]; 2]> = factors.iter().map(|f| f.matrix()).collect();
    Operator::from_fn(1 << n, |r, col| {
        mats.iter()
            .enumerate()
            .fold(Cplx::one(), |acc, (k, m)| acc * m[r >> k & 1][col >> k & 1])
    })
}

/// All `4^n` factor strings, spin 0 varying fastest.
pub fn basis_labels(n_spins: usize) -> impl Iterator<Item = Vec<Factor>> {
    (0..4usize.pow(n_spins as u32)).map(move |mut code| {
        (0..n_spins)
            .map(|_| {
                let f = Factor::ALL[code % 4];
                code /= 4;
                f
            })
            .collect()
    })
}

/// `Tr(ρ B) / Tr(B B)` for the basis element `B` named by `factors`.
///
/// Each basis element has exactly one nonzero per column, at the row obtained
/// by flipping the transverse bits, so the trace is a single pass over `ρ`.
pub fn coefficient<R: Real>(rho: &Operator<R>, factors: &[Factor]) -> Cplx<R> {
    let n = factors.len();
    let flip: usize = factors
        .iter()
        .enumerate()
        .filter(|(_, f)| f.is_transverse())
        .map(|(k, _)| 1 << k)
        .sum();
    let mats: Vec<[[Cplx<R>; 2]; 2]> = factors.iter().map(|f| f.matrix()).collect();
    let mut tr = Cplx::zero();
    for x in 0..1usize << n {
        let y = x ^ flip;
        // <y|B|x>
        let b = mats
            .iter()
            .enumerate()
            .fold(Cplx::<R>::one(), |acc, (k, m)| acc * m[y >> k & 1][x >> k & 1]);
        tr = tr + rho[(x, y)] * b;
    }
    let active = factors.iter().filter(|&&f| f != Factor::E).count() as i32;
    let norm = R::lit(2f64.powi(n as i32) * 0.25f64.powi(active));
    tr / norm
}

/// Expands a Hermitian operator in the product-operator basis, dropping terms
/// with `|c| < prune_tol`.
pub fn expand_product_operators<R: Real>(rho: &Operator<R>) -> Result<Vec<ProductOperatorTerm<R>>> {
    let n = rho.n_spins().ok_or(Error::DimensionMismatch {
        expected: rho.dim().next_power_of_two(),
        found: rho.dim(),
    })?;
    let defect = rho.hermiticity_defect();
    if defect > R::structural_tol() * R::one().max(rho.max_abs()) {
        return Err(Error::NonHermitian {
            deviation: defect.as_f64(),
        });
    }
    Ok(basis_labels(n)
        .filter_map(|factors| {
            let coef = coefficient(rho, &factors).re;
            (coef.abs() >= R::prune_tol()).then(|| ProductOperatorTerm::new(coef, factors))
        })
        .collect())
}

/// `Σ c_T B_T`.
pub fn reconstruct<R: Real>(terms: &[ProductOperatorTerm<R>], n_spins: usize) -> Operator<R> {
    terms
        .iter()
        .fold(Operator::zeros(1 << n_spins), |acc, t| &acc + &t.to_operator())
}
