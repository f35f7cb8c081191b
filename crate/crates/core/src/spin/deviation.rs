use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::scalar::Real;
use crate::spin::product::{expand_product_operators, ProductOperatorTerm};

/// Traceless Hermitian part of a high-temperature density operator.
#[derive(Clone, Debug, PartialEq)]
pub struct DeviationOperator<R: Real = f64> {
    op: Operator<R>,
}

impl<R: Real> DeviationOperator<R> {
    pub fn new(op: Operator<R>) -> Result<Self> {
        if op.n_spins().is_none() {
            return Err(Error::DimensionMismatch {
                expected: op.dim().next_power_of_two(),
                found: op.dim(),
            });
        }
        let scale = R::one().max(op.max_abs());
        let defect = op.hermiticity_defect();
        if defect > R::structural_tol() * scale {
            return Err(Error::NonHermitian {
                deviation: defect.as_f64(),
            });
        }
        let tr = op.trace().norm();
        if tr > R::structural_tol() * scale {
            return Err(Error::NotTraceless { trace: tr.as_f64() });
        }
        Ok(Self { op })
    }

    pub fn zero(n_spins: usize) -> Self {
        Self {
            op: Operator::zeros(1 << n_spins),
        }
    }

    pub fn n_spins(&self) -> usize {
        self.op.n_spins().expect("validated dimension")
    }

    pub fn as_operator(&self) -> &Operator<R> {
        &self.op
    }

    pub fn into_operator(self) -> Operator<R> {
        self.op
    }

    /// `U ρ U†`. Unitary conjugation keeps both invariants, so no re-check.
    pub fn conjugate(&self, u: &Operator<R>) -> Self {
        Self {
            op: self.op.conjugate_by(u),
        }
    }

    pub(crate) fn conjugate_diagonal(&self, diag: &[crate::scalar::Cplx<R>]) -> Self {
        Self {
            op: self.op.conjugate_by_diagonal(diag),
        }
    }

    /// Scales every coherence `ρ[x][y]` by `factor(x ^ y)`.
    pub(crate) fn scale_coherences(&self, factor: impl Fn(usize) -> R) -> Self {
        let d = self.op.dim();
        let mut op = self.op.clone();
        for r in 0..d {
            for col in 0..d {
                op[(r, col)] = op[(r, col)] * factor(r ^ col);
            }
        }
        Self { op }
    }

    pub fn expand(&self) -> Vec<ProductOperatorTerm<R>> {
        expand_product_operators(&self.op).expect("deviation operators are Hermitian")
    }
}
