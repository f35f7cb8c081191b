//! Equivalence classes of admissible three-bit functions under argument
//! permutations and complementation.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::oracle::boolean::{Admissibility, BooleanFunction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassId {
    Constant,
    /// `f1` .. `f10`.
    Balanced(u8),
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassId::Constant => f.write_str("f_const"),
            ClassId::Balanced(k) => write!(f, "f{k}"),
        }
    }
}

/// Canonical representatives, in the naming used throughout the crate.
pub const REPRESENTATIVES: [(ClassId, &str); 11] = [
    (ClassId::Constant, "0"),
    (ClassId::Balanced(1), "x2"),
    (ClassId::Balanced(2), "x2 ^ x1"),
    (ClassId::Balanced(3), "x2 ^ x1 ^ x0"),
    (ClassId::Balanced(4), "x2*x1 ^ x0"),
    (ClassId::Balanced(5), "x2*x1 ^ x2 ^ x0"),
    (ClassId::Balanced(6), "x2*x1 ^ x2 ^ x1 ^ x0"),
    (ClassId::Balanced(7), "x2*x1 ^ x1*x0 ^ x2 ^ x1"),
    (ClassId::Balanced(8), "x2*x1 ^ x1*x0 ^ x2"),
    (ClassId::Balanced(9), "x2*x1 ^ x1*x0 ^ x2*x0"),
    (ClassId::Balanced(10), "x2*x1 ^ x1*x0 ^ x2*x0 ^ x1 ^ x0"),
];

pub fn representative(id: ClassId) -> BooleanFunction {
    let expr = REPRESENTATIVES
        .iter()
        .find(|(c, _)| *c == id)
        .map(|(_, e)| *e)
        .expect("every class id has a representative");
    BooleanFunction::parse(&format!("anf:{expr}"), 3).expect("representatives parse")
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for k in 0..n {
            if !prefix.contains(&k) {
                prefix.push(k);
                go(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(n), n, &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionClass {
    pub id: ClassId,
    pub representative: BooleanFunction,
    /// Sorted by truth table.
    pub members: Vec<BooleanFunction>,
}

impl FunctionClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// How a function is obtained from its class representative:
/// `f = representative.relabel(perm)`, complemented if `complemented`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassMembership {
    pub id: ClassId,
    pub perm: Vec<usize>,
    pub complemented: bool,
}

fn orbit(f: &BooleanFunction) -> BTreeSet<BooleanFunction> {
    permutations(f.n_bits())
        .iter()
        .flat_map(|p| {
            let g = f.relabel(p);
            [g, g.complement()]
        })
        .collect()
}

/// Partitions the 72 admissible three-bit functions into the constant class
/// and ten balanced classes by exhaustive orbit enumeration.
pub fn classify(n_bits: usize) -> Result<Vec<FunctionClass>> {
    if n_bits != 3 {
        return Err(Error::UnsupportedBits(n_bits));
    }
    let mut remaining: BTreeSet<BooleanFunction> =
        BooleanFunction::admissible(3)?.into_iter().collect();
    let mut classes = Vec::new();
    while let Some(&seed) = remaining.iter().next() {
        let members = orbit(&seed);
        let (id, rep) = REPRESENTATIVES
            .iter()
            .map(|(id, _)| (*id, representative(*id)))
            .find(|(_, rep)| members.contains(rep))
            .expect("each admissible orbit contains a canonical representative");
        for m in &members {
            remaining.remove(m);
        }
        classes.push(FunctionClass {
            id,
            representative: rep,
            members: members.into_iter().collect(),
        });
    }
    classes.sort_by_key(|c| c.id);
    Ok(classes)
}

/// Finds the class of an admissible three-bit function and the relabelling
/// that maps the representative onto it.
pub fn membership(f: &BooleanFunction) -> Result<ClassMembership> {
    if f.n_bits() != 3 {
        return Err(Error::UnsupportedBits(f.n_bits()));
    }
    if f.admissibility() == Admissibility::Neither {
        return Err(Error::NotAdmissible { mask: f.table() });
    }
    for (id, _) in REPRESENTATIVES {
        let rep = representative(id);
        for perm in permutations(3) {
            let g = rep.relabel(&perm);
            if g == *f || g.complement() == *f {
                return Ok(ClassMembership {
                    id,
                    perm,
                    complemented: g != *f,
                });
            }
        }
    }
    unreachable!("admissible three-bit functions all belong to a class")
}
