use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::DyadicRational;
use crate::error::{Error, Result};

/// A finite, non-empty 0/1 string `ξ₁ξ₂…ξ_N`.
///
/// The same value serves as a computational basis label `|ξ₁…ξ_N⟩` (qubit 1
/// first) and as the binary expansion `0.ξ₁…ξ_N` of a classical coordinate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitString {
    bits: Vec<u8>,
}

impl BitString {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::EmptyBitString);
        }
        if let Some(&b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::InvalidBit(char::from(b'0'.wrapping_add(b))));
        }
        Ok(Self { bits })
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Result<Self> {
        Self::new(bits.into_iter().map(u8::from).collect())
    }

    /// Label of basis index `j = Σ j_k 2^{N-k}` on `n` qubits.
    pub fn from_index(index: usize, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyBitString);
        }
        Self::new((0..n).map(|k| ((index >> (n - 1 - k)) & 1) as u8).collect())
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Digit `ξ_k` with the 1-based index used throughout the formulas.
    pub fn bit(&self, k: usize) -> u8 {
        self.bits[k - 1]
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.bits
    }

    /// Integer value `Σ ξ_k 2^{N-k}` for basis indexing. Only meaningful when
    /// `N < usize::BITS`.
    pub fn index(&self) -> usize {
        self.bits
            .iter()
            .fold(0usize, |acc, &b| (acc << 1) | usize::from(b))
    }

    pub fn value(&self) -> BigUint {
        digits_to_biguint(&self.bits)
    }

    /// `η_k = ξ_k + 1 (mod 2)`.
    pub fn complement(&self) -> Self {
        Self {
            bits: self.bits.iter().map(|b| b ^ 1).collect(),
        }
    }

    /// `Σ_{k=1}^{N} ξ_k 2^{-k}`, exact.
    pub fn to_dyadic(&self) -> DyadicRational {
        DyadicRational::new(self.value(), self.len() as u64)
    }

    /// The binary point `0.ξ₁…ξ_N1`: the expansion plus `2^{-(N+1)}`, which is
    /// also the position eigenvalue `q_j = (j + 1/2)/2^N` of `|ξ⟩`.
    pub fn initial_value(&self) -> DyadicRational {
        let numerator = (self.value() << 1usize) + 1u32;
        DyadicRational::new(numerator, self.len() as u64 + 1)
    }
}

/// Big-endian binary digits to an integer; the empty slice is zero.
pub(crate) fn digits_to_biguint(digits: &[u8]) -> BigUint {
    if digits.is_empty() {
        return BigUint::zero();
    }
    BigUint::from_radix_be(digits, 2).expect("digits are 0/1")
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::InvalidBit(other)),
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::new(bits)
    }
}

impl Serialize for BitString {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BitString {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
