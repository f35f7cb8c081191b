use num_traits::One;

use crate::compiler::Gate;
use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::oracle::anf::AnfDecomposition;
use crate::oracle::boolean::BooleanFunction;
use crate::scalar::{Cplx, Real};

/// Function-evaluation gate list: one quadratic gate per `a_ij = 1`, then one
/// linear gate per `a_k = 1`. The constant term is a global phase and emits nothing.
pub fn build_uf_gates<R: Real>(anf: &AnfDecomposition) -> Result<Vec<Gate<R>>> {
    if let Some(degree) = anf.higher_terms().iter().map(|m| m.count_ones()).max() {
        return Err(Error::HigherDegreeTerm { degree });
    }
    let quad = anf.quadratic_terms().into_iter().map(|(i, j)| Gate::Quadratic(i, j));
    let lin = anf.linear_terms().into_iter().map(Gate::Linear);
    Ok(quad.chain(lin).collect())
}

/// `U_f |x> = (-1)^{f(x)} |x>`.
pub fn uf_unitary<R: Real>(f: &BooleanFunction) -> Operator<R> {
    let diag: Vec<Cplx<R>> = (0..1usize << f.n_bits())
        .map(|x| if f.eval(x) { -Cplx::one() } else { Cplx::one() })
        .collect();
    Operator::from_diagonal(&diag)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gates(spec: &str) -> Result<Vec<Gate<f64>>> {
        build_uf_gates(&BooleanFunction::parse(spec, 3).unwrap().anf())
    }

    #[test]
    fn f4_decomposition() {
        assert_eq!(
            gates("anf:x2*x1 ^ x0").unwrap(),
            vec![Gate::Quadratic(2, 1), Gate::Linear(0)]
        );
    }

    #[test]
    fn constant_needs_no_gates() {
        assert!(gates("mask:0x00").unwrap().is_empty());
        assert!(gates("mask:0xff").unwrap().is_empty());
    }

    #[test]
    fn f9_needs_every_pair() {
        assert_eq!(
            gates("anf:x2*x1 ^ x1*x0 ^ x2*x0").unwrap(),
            vec![Gate::Quadratic(2, 1), Gate::Quadratic(2, 0), Gate::Quadratic(1, 0)]
        );
    }

    #[test]
    fn cubic_term_rejected() {
        assert!(matches!(
            gates("anf:x2*x1*x0"),
            Err(Error::HigherDegreeTerm { degree: 3 })
        ));
    }

    #[test]
    fn uf_of_x2_flips_upper_half() {
        let u = uf_unitary::<f64>(&BooleanFunction::parse("anf:x2", 3).unwrap());
        for x in 0..8 {
            let want = if x < 4 { 1.0 } else { -1.0 };
            assert_eq!(u[(x, x)], Cplx::new(want, 0.0));
        }
        let id = uf_unitary::<f64>(&BooleanFunction::zero(3).unwrap());
        assert_eq!(id, Operator::identity(8));
    }
}
