//! Dense complex square matrices on the 2^n-dimensional spin space.
//!
//! Qubit `k` of an `n`-spin register is bit `k` of the basis index, so the
//! basis state `|x_{n-1} ... x_0>` sits at row `x = sum_k x_k 2^k` and the
//! highest spin occupies the leftmost tensor slot.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::{c, Cplx, Real};

#[derive(Clone, Debug, PartialEq)]
pub struct Operator<R: Real> {
    dim: usize,
    data: Vec<Cplx<R>>,
}

impl<R: Real> Operator<R> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Cplx::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Cplx::one();
        }
        m
    }

    pub fn from_diagonal(diag: &[Cplx<R>]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    /// Builds a matrix from row-major entries. Panics if `rows` is not square.
    pub fn from_rows(rows: &[Vec<Cplx<R>>]) -> Self {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            assert_eq!(row.len(), dim, "matrix must be square");
            data.extend_from_slice(row);
        }
        Self { dim, data }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Cplx<R>) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for col in 0..dim {
                data.push(f(r, col));
            }
        }
        Self { dim, data }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of spins `n` with `dim == 2^n`, if the dimension is a power of two.
    pub fn n_spins(&self) -> Option<usize> {
        self.dim
            .is_power_of_two()
            .then(|| self.dim.trailing_zeros() as usize)
    }

    pub fn entries(&self) -> &[Cplx<R>] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, col| self[(col, r)].conj())
    }

    pub fn trace(&self) -> Cplx<R> {
        (0..self.dim).fold(Cplx::zero(), |acc, i| acc + self[(i, i)])
    }

    pub fn scale(&self, s: Cplx<R>) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: R) -> Self {
        self.scale(c(s, R::zero()))
    }

    /// Kronecker product `self ⊗ rhs`; `self` occupies the more significant bits.
    pub fn kron(&self, rhs: &Self) -> Self {
        let d = self.dim * rhs.dim;
        Self::from_fn(d, |r, col| {
            self[(r / rhs.dim, col / rhs.dim)] * rhs[(r % rhs.dim, col % rhs.dim)]
        })
    }

    /// `U · self · U†`.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        &(u * self) * &u.adjoint()
    }

    pub fn max_abs_diff(&self, other: &Self) -> R {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (*a - *b).norm())
            .fold(R::zero(), R::max)
    }

    pub fn max_abs(&self) -> R {
        self.data.iter().map(|z| z.norm()).fold(R::zero(), R::max)
    }

    /// Largest entry of `self - self†`.
    pub fn hermiticity_defect(&self) -> R {
        let mut worst = R::zero();
        for r in 0..self.dim {
            for col in r..self.dim {
                worst = worst.max((self[(r, col)] - self[(col, r)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: R) -> bool {
        self.hermiticity_defect() <= tol
    }

    /// Largest entry of `U·U† - 1`.
    pub fn unitarity_defect(&self) -> R {
        (self * &self.adjoint()).max_abs_diff(&Self::identity(self.dim))
    }

    pub fn is_diagonal(&self, tol: R) -> bool {
        (0..self.dim).all(|r| (0..self.dim).all(|col| r == col || self[(r, col)].norm() <= tol))
    }

    /// Phase-insensitive overlap `|Tr(U† V)| / dim`; equals 1 exactly when the two
    /// unitaries agree up to a global phase.
    pub fn fidelity(&self, other: &Self) -> R {
        assert_eq!(self.dim, other.dim);
        let mut acc = Cplx::<R>::zero();
        for r in 0..self.dim {
            for col in 0..self.dim {
                acc = acc + self[(r, col)].conj() * other[(r, col)];
            }
        }
        acc.norm() / R::from_usize(self.dim).expect("dimension fits")
    }

    /// Applies `U` as a conjugation in place of a diagonal unitary given by its
    /// diagonal, which avoids the dense products for z-type propagators.
    pub fn conjugate_by_diagonal(&self, diag: &[Cplx<R>]) -> Self {
        assert_eq!(diag.len(), self.dim);
        Self::from_fn(self.dim, |r, col| diag[r] * self[(r, col)] * diag[col].conj())
    }
}

impl<R: Real> std::ops::Index<(usize, usize)> for Operator<R> {
    type Output = Cplx<R>;

    #[inline]
    fn index(&self, (r, col): (usize, usize)) -> &Cplx<R> {
        &self.data[r * self.dim + col]
    }
}

impl<R: Real> std::ops::IndexMut<(usize, usize)> for Operator<R> {
    #[inline]
    fn index_mut(&mut self, (r, col): (usize, usize)) -> &mut Cplx<R> {
        &mut self.data[r * self.dim + col]
    }
}

impl<R: Real> Mul for &Operator<R> {
    type Output = Operator<R>;

    fn mul(self, rhs: &Operator<R>) -> Operator<R> {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in product");
        let d = self.dim;
        let mut out = Operator::zeros(d);
        for r in 0..d {
            for k in 0..d {
                let a = self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for col in 0..d {
                    out.data[r * d + col] = out.data[r * d + col] + a * rhs[(k, col)];
                }
            }
        }
        out
    }
}

impl<R: Real> Add for &Operator<R> {
    type Output = Operator<R>;

    fn add(self, rhs: &Operator<R>) -> Operator<R> {
        assert_eq!(self.dim, rhs.dim);
        Operator {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<R: Real> Sub for &Operator<R> {
    type Output = Operator<R>;

    fn sub(self, rhs: &Operator<R>) -> Operator<R> {
        assert_eq!(self.dim, rhs.dim);
        Operator {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<R: Real> Neg for &Operator<R> {
    type Output = Operator<R>;

    fn neg(self) -> Operator<R> {
        Operator {
            dim: self.dim,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pauli_x() -> Operator<f64> {
        Operator::from_rows(&[
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0)],
        ])
    }

    #[test]
    fn kron_puts_left_factor_on_high_bit() {
        let x = pauli_x();
        let e = Operator::<f64>::identity(2);
        let m = x.kron(&e);
        // flips bit 1: |00> -> |10>
        assert_eq!(m[(2, 0)], c(1.0, 0.0));
        assert_eq!(m[(1, 0)], c(0.0, 0.0));
    }

    #[test]
    fn fidelity_ignores_global_phase() {
        let x = pauli_x();
        let phased = x.scale(c(0.6, 0.8));
        assert!((x.fidelity(&phased) - 1.0).abs() < 1e-15);
        assert!(x.fidelity(&Operator::identity(2)) < 1e-15);
    }

    #[test]
    fn hermiticity_defect_detects_asymmetry() {
        let mut m = pauli_x();
        assert!(m.is_hermitian(0.0));
        m[(0, 1)] = c(0.0, 1.0);
        assert!(!m.is_hermitian(1e-3));
    }
}
