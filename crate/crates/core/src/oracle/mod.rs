//! Boolean oracles: admissibility, algebraic normal form, class taxonomy and
//! the function-evaluation gate.

pub mod anf;
pub mod boolean;
pub mod classes;
mod uf;

pub use anf::{AnfComponents, AnfDecomposition};
pub use boolean::{Admissibility, BooleanFunction};
pub use classes::{classify, membership, ClassId, ClassMembership, FunctionClass};
pub use uf::{build_uf_gates, uf_unitary};
