use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::boolean::BooleanFunction;

/// Algebraic normal form: `f = ⊕_S a_S Π_{k∈S} x_k` over GF(2).
///
/// Bit `S` of `coefficients` is `a_S`, with the monomial's variable set encoded
/// as a bitmask, so bit 0 is the constant term, bit `1<<i` is `a_i` and bit
/// `1<<i | 1<<j` is `a_ij`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AnfDecomposition {
    n_bits: usize,
    coefficients: u64,
}

/// XOR-subset (Möbius) transform over GF(2). It is its own inverse.
fn mobius(n_bits: usize, mut v: u64) -> u64 {
    for i in 0..n_bits {
        let step = 1usize << i;
        for x in 0..1usize << n_bits {
            if x & step != 0 {
                v ^= (v >> (x ^ step) & 1) << x;
            }
        }
    }
    v
}

impl AnfDecomposition {
    pub fn from_function(f: &BooleanFunction) -> Self {
        Self {
            n_bits: f.n_bits(),
            coefficients: mobius(f.n_bits(), f.table()),
        }
    }

    pub fn from_coefficients(n_bits: usize, coefficients: u64) -> Result<Self> {
        // validates width through the function constructor
        BooleanFunction::new(n_bits, coefficients)?;
        Ok(Self {
            n_bits,
            coefficients,
        })
    }

    pub fn to_function(&self) -> BooleanFunction {
        BooleanFunction::new(self.n_bits, mobius(self.n_bits, self.coefficients))
            .expect("transform preserves width")
    }

    pub fn n_bits(&self) -> usize {
        self.n_bits
    }

    pub fn coefficients(&self) -> u64 {
        self.coefficients
    }

    pub fn monomial(&self, vars: usize) -> bool {
        self.coefficients >> vars & 1 == 1
    }

    /// `a`.
    pub fn constant(&self) -> bool {
        self.monomial(0)
    }

    /// `a_i`.
    pub fn linear(&self, i: usize) -> bool {
        self.monomial(1 << i)
    }

    /// `a_ij`; symmetric in its arguments.
    pub fn quadratic(&self, i: usize, j: usize) -> bool {
        i != j && self.monomial(1 << i | 1 << j)
    }

    /// Variable sets of the monomials present, in increasing mask order.
    pub fn monomials(&self) -> impl Iterator<Item = usize> + '_ {
        (0..1usize << self.n_bits).filter(move |&m| self.monomial(m))
    }

    /// Indices `i` with `a_i = 1`, descending.
    pub fn linear_terms(&self) -> Vec<usize> {
        (0..self.n_bits).rev().filter(|&i| self.linear(i)).collect()
    }

    /// Pairs `(i, j)`, `i > j`, with `a_ij = 1`, in descending lexicographic order.
    pub fn quadratic_terms(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in (0..self.n_bits).rev() {
            for j in (0..i).rev() {
                if self.quadratic(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Variable sets of monomials of degree three or more.
    pub fn higher_terms(&self) -> Vec<usize> {
        self.monomials().filter(|m| m.count_ones() >= 3).collect()
    }

    pub fn degree(&self) -> u32 {
        self.monomials().map(|m| m.count_ones()).max().unwrap_or(0)
    }

    pub fn components(&self) -> AnfComponents {
        AnfComponents {
            constant: self.constant(),
            linear: self.linear_terms(),
            quadratic: self.quadratic_terms().into_iter().map(|(i, j)| [i, j]).collect(),
            higher: self
                .higher_terms()
                .into_iter()
                .map(|m| (0..self.n_bits).rev().filter(|k| m >> k & 1 == 1).collect())
                .collect(),
        }
    }

    /// Parses `x2*x1 ^ x0 ^ 1`: `^`-separated products of `x<k>`, `0` and `1`.
    pub fn parse(expr: &str, n_bits: usize) -> Result<Self> {
        if n_bits == 0 || n_bits > crate::oracle::boolean::MAX_BITS {
            return Err(Error::UnsupportedBits(n_bits));
        }
        let expr = expr.trim().trim_matches(|c| c == '"' || c == '\'');
        if expr.is_empty() {
            return Err(Error::Parse("empty expression".into()));
        }
        let mut coefficients = 0u64;
        for term in expr.split('^') {
            let mut vars = 0usize;
            let mut vanishes = false;
            for factor in term.split('*') {
                let factor = factor.trim();
                match factor {
                    "" => return Err(Error::Parse(format!("empty factor in `{term}`"))),
                    "0" => vanishes = true,
                    "1" => {}
                    _ => {
                        let k: usize = factor
                            .strip_prefix('x')
                            .and_then(|d| d.parse().ok())
                            .ok_or_else(|| Error::Parse(format!("unknown factor `{factor}`")))?;
                        if k >= n_bits {
                            return Err(Error::Parse(format!(
                                "variable x{k} out of range for {n_bits} bits"
                            )));
                        }
                        vars |= 1 << k;
                    }
                }
            }
            if !vanishes {
                coefficients ^= 1 << vars;
            }
        }
        Ok(Self {
            n_bits,
            coefficients,
        })
    }
}

impl fmt::Display for AnfDecomposition {
    /// Highest degree first, then descending indices: `x2*x1 ^ x1*x0 ^ x2 ^ 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut monos: Vec<usize> = self.monomials().collect();
        if monos.is_empty() {
            return f.write_str("0");
        }
        monos.sort_by_key(|&m| {
            let vars: Vec<usize> = (0..self.n_bits).rev().filter(|k| m >> k & 1 == 1).collect();
            (std::cmp::Reverse(m.count_ones()), std::cmp::Reverse(vars))
        });
        let parts: Vec<String> = monos
            .into_iter()
            .map(|m| {
                if m == 0 {
                    "1".to_string()
                } else {
                    (0..self.n_bits)
                        .rev()
                        .filter(|k| m >> k & 1 == 1)
                        .map(|k| format!("x{k}"))
                        .collect::<Vec<_>>()
                        .join("*")
                }
            })
            .collect();
        f.write_str(&parts.join(" ^ "))
    }
}

/// Field-by-field view for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnfComponents {
    pub constant: bool,
    pub linear: Vec<usize>,
    pub quadratic: Vec<[usize; 2]>,
    pub higher: Vec<Vec<usize>>,
}
