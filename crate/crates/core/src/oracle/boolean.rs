use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::anf::AnfDecomposition;

/// Largest argument width a `u64` truth table can hold.
pub const MAX_BITS: usize = 6;

/// `f: {0,1}^n -> {0,1}` as a truth table: bit `x` of `table` is `f(x)` with
/// `x = Σ_k x_k 2^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BooleanFunction {
    n_bits: usize,
    table: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Admissibility {
    Constant,
    Balanced,
    Neither,
}

impl fmt::Display for Admissibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Admissibility::Constant => "constant",
            Admissibility::Balanced => "balanced",
            Admissibility::Neither => "neither",
        })
    }
}

impl BooleanFunction {
    pub fn new(n_bits: usize, table: u64) -> Result<Self> {
        if n_bits == 0 || n_bits > MAX_BITS {
            return Err(Error::UnsupportedBits(n_bits));
        }
        if table & !Self::full_mask(n_bits) != 0 {
            return Err(Error::Parse(format!(
                "truth table {table:#x} has bits beyond 2^{n_bits} entries"
            )));
        }
        Ok(Self { n_bits, table })
    }

    fn full_mask(n_bits: usize) -> u64 {
        if n_bits == MAX_BITS {
            u64::MAX
        } else {
            (1u64 << (1 << n_bits)) - 1
        }
    }

    pub fn from_fn(n_bits: usize, f: impl Fn(usize) -> bool) -> Result<Self> {
        let table = (0..1usize << n_bits)
            .filter(|&x| f(x))
            .fold(0u64, |acc, x| acc | 1 << x);
        Self::new(n_bits, table)
    }

    pub fn zero(n_bits: usize) -> Result<Self> {
        Self::new(n_bits, 0)
    }

    /// Every function on `n_bits` arguments, by truth table.
    pub fn all(n_bits: usize) -> Result<impl Iterator<Item = BooleanFunction>> {
        if n_bits == 0 || n_bits > 4 {
            return Err(Error::UnsupportedBits(n_bits));
        }
        Ok((0..=Self::full_mask(n_bits)).map(move |table| Self { n_bits, table }))
    }

    /// The constant and balanced functions on `n_bits` arguments.
    pub fn admissible(n_bits: usize) -> Result<Vec<BooleanFunction>> {
        Ok(Self::all(n_bits)?.filter(|f| f.is_admissible()).collect())
    }

    #[inline]
    pub fn n_bits(&self) -> usize {
        self.n_bits
    }

    #[inline]
    pub fn table(&self) -> u64 {
        self.table
    }

    #[inline]
    pub fn eval(&self, x: usize) -> bool {
        self.table >> x & 1 == 1
    }

    pub fn ones(&self) -> u32 {
        self.table.count_ones()
    }

    pub fn admissibility(&self) -> Admissibility {
        let ones = self.ones() as u64;
        let size = 1u64 << self.n_bits;
        if ones == 0 || ones == size {
            Admissibility::Constant
        } else if ones * 2 == size {
            Admissibility::Balanced
        } else {
            Admissibility::Neither
        }
    }

    pub fn is_admissible(&self) -> bool {
        self.admissibility() != Admissibility::Neither
    }

    pub fn complement(&self) -> Self {
        Self {
            n_bits: self.n_bits,
            table: self.table ^ Self::full_mask(self.n_bits),
        }
    }

    /// Renames argument `x_k` to `x_{perm[k]}`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n_bits, "permutation width");
        let table = (0..1usize << self.n_bits)
            .filter(|&x| {
                let y = (0..self.n_bits).fold(0usize, |acc, k| acc | (x >> perm[k] & 1) << k);
                self.eval(y)
            })
            .fold(0u64, |acc, x| acc | 1 << x);
        Self {
            n_bits: self.n_bits,
            table,
        }
    }

    pub fn anf(&self) -> AnfDecomposition {
        AnfDecomposition::from_function(self)
    }

    /// Parses `mask:0xHH` or `anf:<expr>` (e.g. `anf:x2*x1 ^ x0`).
    pub fn parse(spec: &str, n_bits: usize) -> Result<Self> {
        let spec = spec.trim();
        if let Some(hex) = spec.strip_prefix("mask:") {
            let hex = hex.trim();
            let digits = hex
                .strip_prefix("0x")
                .or_else(|| hex.strip_prefix("0X"))
                .ok_or_else(|| Error::Parse(format!("mask must be hexadecimal with 0x prefix: {hex}")))?;
            let table = u64::from_str_radix(digits, 16)
                .map_err(|e| Error::Parse(format!("bad mask {hex}: {e}")))?;
            Self::new(n_bits, table)
        } else if let Some(expr) = spec.strip_prefix("anf:") {
            let anf = AnfDecomposition::parse(expr, n_bits)?;
            Ok(anf.to_function())
        } else {
            Err(Error::Parse(format!(
                "expected `mask:0xHH` or `anf:<expr>`, got `{spec}`"
            )))
        }
    }

    /// Canonical `mask:0x..` form.
    pub fn mask_spec(&self) -> String {
        let width = (1usize << self.n_bits).div_ceil(4);
        format!("mask:0x{:0width$x}", self.table)
    }
}

impl fmt::Display for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.anf())
    }
}

impl FromStr for BooleanFunction {
    type Err = Error;

    /// Three-argument functions, the protocol's design point.
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s, 3)
    }
}
