//! Scalar abstraction shared by every numeric module.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real field the simulator is written against: `f32` or `f64`.
///
/// Tolerances scale with the precision of the type, so the same checks
/// (Hermiticity, coefficient pruning, phase comparisons) work for both.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Structural tolerance: Hermiticity, tracelessness, unitarity.
    fn structural_tol() -> Self;

    /// Magnitude below which expansion coefficients and spectral lines are
    /// treated as absent.
    fn prune_tol() -> Self;

    /// Converts an `f64` constant. Panics only if the value is unrepresentable,
    /// which cannot happen for the finite literals used in this crate.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 literal")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    #[inline]
    fn deg_to_rad(deg: Self) -> Self {
        deg * Self::PI() / Self::lit(180.0)
    }
}

impl Real for f64 {
    fn structural_tol() -> Self {
        1e-12
    }

    fn prune_tol() -> Self {
        1e-9
    }
}

impl Real for f32 {
    fn structural_tol() -> Self {
        1e-5
    }

    fn prune_tol() -> Self {
        1e-4
    }
}

/// Complex amplitude over the crate's real field.
pub type Cplx<R> = Complex<R>;

#[inline]
pub(crate) fn c<R: Real>(re: R, im: R) -> Cplx<R> {
    Complex::new(re, im)
}
