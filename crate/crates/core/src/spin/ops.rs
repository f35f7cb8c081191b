//! Single-spin operators, selective rotations and coupling propagators.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::scalar::{c, Cplx, Real};
use crate::spin::system::SpinSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    /// 2x2 matrix of `σ_α / 2` in the `{|0>, |1>}` basis.
    pub fn half_pauli<R: Real>(self) -> [[Cplx<R>; 2]; 2] {
        let h = R::lit(0.5);
        let z = Cplx::zero();
        match self {
            Axis::X => [[z, c(h, R::zero())], [c(h, R::zero()), z]],
            Axis::Y => [[z, c(R::zero(), -h)], [c(R::zero(), h), z]],
            Axis::Z => [[c(h, R::zero()), z], [z, c(-h, R::zero())]],
        }
    }
}

fn check(spin: usize, n_spins: usize) -> Result<()> {
    if spin < n_spins {
        Ok(())
    } else {
        Err(Error::SpinOutOfRange { spin, n_spins })
    }
}

/// Places a 2x2 operator on `spin` and the identity everywhere else.
pub fn embed_single<R: Real>(op: &[[Cplx<R>; 2]; 2], spin: usize, n_spins: usize) -> Result<Operator<R>> {
    check(spin, n_spins)?;
    let bit = 1usize << spin;
    Ok(Operator::from_fn(1 << n_spins, |r, col| {
        if (r ^ col) & !bit != 0 {
            Cplx::zero()
        } else {
            op[(r & bit != 0) as usize][(col & bit != 0) as usize]
        }
    }))
}

/// `I_α` on `spin`: `E ⊗ ... ⊗ σ_α/2 ⊗ ... ⊗ E`.
pub fn pauli_operator<R: Real>(spin: usize, axis: Axis, n_spins: usize) -> Result<Operator<R>> {
    embed_single(&axis.half_pauli(), spin, n_spins)
}

/// `Σ_k I_α^k`.
pub fn collective<R: Real>(axis: Axis, n_spins: usize) -> Operator<R> {
    let mut acc = Operator::zeros(1 << n_spins);
    for k in 0..n_spins {
        acc = &acc + &pauli_operator(k, axis, n_spins).expect("index in range");
    }
    acc
}

/// 2x2 rotation `exp(-i θ n·σ / 2)`.
pub fn rotation_2x2<R: Real>(axis: [R; 3], angle_deg: R) -> Result<[[Cplx<R>; 2]; 2]> {
    let norm = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
    if (norm - R::one()).abs() > R::structural_tol().sqrt() {
        return Err(Error::NonUnitAxis { norm: norm.as_f64() });
    }
    let half = R::deg_to_rad(angle_deg) / R::lit(2.0);
    let (s, co) = half.sin_cos();
    let [nx, ny, nz] = axis;
    // cos(θ/2) E - i sin(θ/2) (nx σx + ny σy + nz σz)
    Ok([
        [c(co, -s * nz), c(-s * ny, -s * nx)],
        [c(s * ny, -s * nx), c(co, s * nz)],
    ])
}

/// Selective rotation of `spin` about `axis` through `angle_deg`; identity on the others.
pub fn rotation_unitary<R: Real>(
    spin: usize,
    axis: [R; 3],
    angle_deg: R,
    n_spins: usize,
) -> Result<Operator<R>> {
    embed_single(&rotation_2x2(axis, angle_deg)?, spin, n_spins)
}

/// Unit vector `cos φ x̂ + sin φ ŷ` for a pulse phase in degrees.
pub fn phase_axis<R: Real>(phase_deg: R) -> [R; 3] {
    let (s, co) = R::deg_to_rad(phase_deg).sin_cos();
    [co, s, R::zero()]
}

/// Diagonal of `R_z(θ)` on `spin`.
pub fn z_rotation_diagonal<R: Real>(spin: usize, angle_deg: R, n_spins: usize) -> Vec<Cplx<R>> {
    let half = R::deg_to_rad(angle_deg) / R::lit(2.0);
    let down = Cplx::from_polar(R::one(), -half);
    let up = Cplx::from_polar(R::one(), half);
    (0..1usize << n_spins)
        .map(|x| if x >> spin & 1 == 0 { down } else { up })
        .collect()
}

/// Diagonal of `exp(-i (π/2) J_ij t σ_z^i σ_z^j)`.
pub fn coupling_diagonal<R: Real>(
    i: usize,
    j: usize,
    t: R,
    system: &SpinSystem<R>,
) -> Result<Vec<Cplx<R>>> {
    system.check_spin(i)?;
    system.check_spin(j)?;
    if i == j {
        return Err(Error::SameSpin(i));
    }
    if t < R::zero() {
        return Err(Error::InvalidSystem(format!("negative evolution time {t}")));
    }
    let theta = R::FRAC_PI_2() * system.coupling_hz(i, j) * t;
    let same = Cplx::from_polar(R::one(), -theta);
    let differ = Cplx::from_polar(R::one(), theta);
    Ok((0..system.dim())
        .map(|x| if (x >> i ^ x >> j) & 1 == 0 { same } else { differ })
        .collect())
}

/// Evolution under the single coupling term `(π/2) J_ij σ_z^i σ_z^j` for `t` seconds,
/// with offsets and every other coupling frozen (ideal selective refocusing).
pub fn coupling_propagator<R: Real>(
    i: usize,
    j: usize,
    t: R,
    system: &SpinSystem<R>,
) -> Result<Operator<R>> {
    Ok(Operator::from_diagonal(&coupling_diagonal(i, j, t, system)?))
}

/// Product of per-spin rotations, each about the same axis.
pub fn collective_rotation<R: Real>(axis: [R; 3], angle_deg: R, n_spins: usize) -> Result<Operator<R>> {
    let u2 = rotation_2x2(axis, angle_deg)?;
    let mut u = Operator::identity(1);
    let single = Operator::from_rows(&[u2[0].to_vec(), u2[1].to_vec()]);
    for _ in 0..n_spins {
        u = u.kron(&single);
    }
    Ok(u)
}
