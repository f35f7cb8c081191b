#![allow(dead_code)]

use spinlab::oracle::{membership, ClassId};
use spinlab::spin::{Factor, ProductOperatorTerm};
use spinlab::BooleanFunction;

use Factor::{Ix, Iz};

/// Expected `ρ_f` for each class representative, as `(coefficient, [(spin, factor)])`.
pub fn table_row(id: ClassId) -> Vec<(f64, Vec<(usize, Factor)>)> {
    match id {
        ClassId::Constant => vec![(-1.0, vec![(2, Ix)]), (-1.0, vec![(1, Ix)]), (-1.0, vec![(0, Ix)])],
        ClassId::Balanced(1) => vec![(1.0, vec![(2, Ix)]), (-1.0, vec![(1, Ix)]), (-1.0, vec![(0, Ix)])],
        ClassId::Balanced(2) => vec![(1.0, vec![(2, Ix)]), (1.0, vec![(1, Ix)]), (-1.0, vec![(0, Ix)])],
        ClassId::Balanced(3) => vec![(1.0, vec![(2, Ix)]), (1.0, vec![(1, Ix)]), (1.0, vec![(0, Ix)])],
        ClassId::Balanced(4) => vec![
            (-2.0, vec![(2, Ix), (1, Iz)]),
            (-2.0, vec![(2, Iz), (1, Ix)]),
            (1.0, vec![(0, Ix)]),
        ],
        ClassId::Balanced(5) => vec![
            (2.0, vec![(2, Ix), (1, Iz)]),
            (-2.0, vec![(2, Iz), (1, Ix)]),
            (1.0, vec![(0, Ix)]),
        ],
        ClassId::Balanced(6) => vec![
            (2.0, vec![(2, Ix), (1, Iz)]),
            (2.0, vec![(2, Iz), (1, Ix)]),
            (1.0, vec![(0, Ix)]),
        ],
        ClassId::Balanced(7) => vec![
            (2.0, vec![(2, Ix), (1, Iz)]),
            (4.0, vec![(2, Iz), (1, Ix), (0, Iz)]),
            (-2.0, vec![(1, Iz), (0, Ix)]),
        ],
        ClassId::Balanced(8) => vec![
            (2.0, vec![(2, Ix), (1, Iz)]),
            (-4.0, vec![(2, Iz), (1, Ix), (0, Iz)]),
            (-2.0, vec![(1, Iz), (0, Ix)]),
        ],
        ClassId::Balanced(9) => vec![
            (-4.0, vec![(2, Ix), (1, Iz), (0, Iz)]),
            (-4.0, vec![(2, Iz), (1, Ix), (0, Iz)]),
            (-4.0, vec![(2, Iz), (1, Iz), (0, Ix)]),
        ],
        ClassId::Balanced(10) => vec![
            (-4.0, vec![(2, Ix), (1, Iz), (0, Iz)]),
            (4.0, vec![(2, Iz), (1, Ix), (0, Iz)]),
            (4.0, vec![(2, Iz), (1, Iz), (0, Ix)]),
        ],
        ClassId::Balanced(k) => panic!("no class f{k}"),
    }
}

/// Expected expansion of `ρ_f` for any admissible `f`: the representative's
/// row with spin `k` renamed to `perm[k]`. Complementing only flips the sign
/// of `U_f` as a whole, which leaves `ρ_f` unchanged.
pub fn expected_terms(f: &BooleanFunction) -> Vec<ProductOperatorTerm<f64>> {
    let m = membership(f).expect("admissible");
    let mut terms: Vec<_> = table_row(m.id)
        .into_iter()
        .map(|(c, parts)| {
            let moved: Vec<_> = parts.into_iter().map(|(s, fac)| (m.perm[s], fac)).collect();
            ProductOperatorTerm::from_sparse(c, 3, &moved)
        })
        .collect();
    terms.sort_by(|a, b| a.factors.cmp(&b.factors));
    terms
}

/// Largest coefficient error between two expansions, or `None` when the
/// sets of product operators differ.
pub fn expansion_error(got: &[ProductOperatorTerm<f64>], want: &[ProductOperatorTerm<f64>]) -> Option<f64> {
    let mut got = got.to_vec();
    got.sort_by(|a, b| a.factors.cmp(&b.factors));
    if got.len() != want.len() || got.iter().zip(want).any(|(g, w)| g.factors != w.factors) {
        return None;
    }
    Some(
        got.iter()
            .zip(want)
            .map(|(g, w)| (g.coefficient - w.coefficient).abs())
            .fold(0.0, f64::max),
    )
}

pub fn table_row_terms(id: ClassId) -> Vec<ProductOperatorTerm<f64>> {
    let mut terms: Vec<_> = table_row(id)
        .into_iter()
        .map(|(c, parts)| ProductOperatorTerm::from_sparse(c, 3, &parts))
        .collect();
    terms.sort_by(|a, b| a.factors.cmp(&b.factors));
    terms
}

/// Representatives as listed, written out independently of the library's list.
pub fn table_function(id: ClassId) -> BooleanFunction {
    let expr = match id {
        ClassId::Constant => "0",
        ClassId::Balanced(1) => "x2",
        ClassId::Balanced(2) => "x2 ^ x1",
        ClassId::Balanced(3) => "x2 ^ x1 ^ x0",
        ClassId::Balanced(4) => "x2*x1 ^ x0",
        ClassId::Balanced(5) => "x2*x1 ^ x2 ^ x0",
        ClassId::Balanced(6) => "x2*x1 ^ x2 ^ x1 ^ x0",
        ClassId::Balanced(7) => "x2*x1 ^ x1*x0 ^ x2 ^ x1",
        ClassId::Balanced(8) => "x2*x1 ^ x1*x0 ^ x2",
        ClassId::Balanced(9) => "x2*x1 ^ x1*x0 ^ x2*x0",
        ClassId::Balanced(10) => "x2*x1 ^ x1*x0 ^ x2*x0 ^ x1 ^ x0",
        ClassId::Balanced(k) => panic!("no class f{k}"),
    };
    BooleanFunction::parse(&format!("anf:{expr}"), 3).unwrap()
}
