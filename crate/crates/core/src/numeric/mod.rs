//! Exact bit-string and dyadic-rational arithmetic, plus the seeded bit source
//! every experiment draws its initial strings from.
//!
//! Bit index convention: `ξ₁` is the most significant digit of the binary
//! expansion `q = 0.ξ₁ξ₂…ξ_N`, and the first qubit of a basis ket.

pub(crate) mod bits;
mod dyadic;
mod random;

pub use bits::BitString;
pub use dyadic::DyadicRational;
pub use random::{random_bitstring, RandomBitSource};
