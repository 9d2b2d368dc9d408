//! Exact mean position `r_n = ⟨ξ|Tⁿ q̂ T⁻ⁿ|ξ⟩` of the quantized baker's map,
//! evaluated in `O(N)` per step for any number of qubits.
//!
//! Every `Tⁿ` matrix element factorizes into one-qubit factors that are entries
//! of powers of
//!
//! ```text
//! A = | 1  i |
//!     | i  1 |
//! ```
//!
//! and `|(Aⁿ)_{kj}|²` is `2ⁿ cos²(nπ/4)` on the diagonal and `2ⁿ sin²(nπ/4)` off
//! it. Those squared moduli are either zero or powers of two, so the sum over
//! the `2^N` basis states collapses to a handful of binary digit patterns,
//! selected by `m mod 4` where `n = mN + p`.

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numeric::{bits::digits_to_biguint, BitString, DyadicRational};
use crate::orbit::{OrbitSeries, Provenance};

/// Largest qubit count for which [`t_power_element`] is offered. Its values
/// scale like `2^{±n/2}` and only serve to check the dense oracle.
pub const MAX_ELEMENT_QUBITS: usize = 16;

/// `n = mN + p` with `0 ≤ p < N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RegimeDecomposition {
    pub m: u64,
    pub p: usize,
}

impl RegimeDecomposition {
    pub fn new(n: u64, qubits: usize) -> Self {
        assert!(qubits > 0, "qubit count must be positive");
        let q = qubits as u64;
        Self {
            m: n / q,
            p: (n % q) as usize,
        }
    }

    pub fn step(&self, qubits: usize) -> u64 {
        self.m * qubits as u64 + self.p as u64
    }
}

/// Exact `|(Aⁿ)_{kj}|²`, by the residue of `n` modulo 4.
pub fn a_power_abs_sq(n: u64, same_index: bool) -> BigUint {
    let pow = |e: u64| BigUint::one() << e as usize;
    match (n % 4, same_index) {
        (0, true) | (2, false) => pow(n),
        (0, false) | (2, true) => BigUint::zero(),
        (_, _) => pow(n - 1),
    }
}

/// `(Aᵏ)_{xy}` from `Aᵏ = ((1+i)ᵏ ± (1−i)ᵏ)/2`, exact while `2^{k/2} < 2^53`.
pub fn a_power_entry(k: u64, x: u8, y: u8) -> Complex64 {
    let plus = Complex64::new(1.0, 1.0).powu(k as u32);
    let minus = Complex64::new(1.0, -1.0).powu(k as u32);
    if x == y {
        (plus + minus) * 0.5
    } else {
        (plus - minus) * 0.5
    }
}

fn check_pair(xi: &BitString, zeta: &BitString) -> Result<usize> {
    if xi.len() != zeta.len() {
        return Err(Error::LengthMismatch {
            left: xi.len(),
            right: zeta.len(),
        });
    }
    if xi.len() > MAX_ELEMENT_QUBITS {
        return Err(Error::QubitCap {
            what: "matrix element formula",
            got: xi.len(),
            max: MAX_ELEMENT_QUBITS,
        });
    }
    Ok(xi.len())
}

fn prefactor(n: u64) -> Complex64 {
    Complex64::new(0.5, -0.5).powu(n as u32)
}

fn delta(a: u8, b: u8) -> f64 {
    if a == b {
        1.0
    } else {
        0.0
    }
}

/// `⟨ξ|T|η⟩ = (1−i)/2 · exp(iπ|ξ₁ − η_N|/2) · Π_{k=2}^{N} δ(ξ_k − η_{k−1})`.
pub fn baker_element(xi: &BitString, eta: &BitString) -> Result<Complex64> {
    let n = check_pair(xi, eta)?;
    let shifted = (2..=n).all(|k| xi.bit(k) == eta.bit(k - 1));
    if !shifted {
        return Ok(Complex64::zero());
    }
    let phase = if xi.bit(1) == eta.bit(n) {
        Complex64::one()
    } else {
        Complex64::i()
    };
    Ok(Complex64::new(0.5, -0.5) * phase)
}

/// `⟨ξ|Tⁿ|ζ⟩` from the four-branch power formula (`n < N`, `n = N`,
/// `n = mN + p`, `n = mN`).
pub fn t_power_element(xi: &BitString, zeta: &BitString, n: u64) -> Result<Complex64> {
    let qubits = check_pair(xi, zeta)?;
    let big_n = qubits as u64;
    let c = prefactor(n);
    let value = if n < big_n {
        let n = n as usize;
        let deltas: f64 = (1..=qubits - n)
            .map(|k| delta(xi.bit(n + k), zeta.bit(k)))
            .product();
        let a_part: Complex64 = (1..=n)
            .map(|l| a_power_entry(1, xi.bit(l), zeta.bit(qubits - n + l)))
            .product();
        c * deltas * a_part
    } else if n == big_n {
        let a_part: Complex64 = (1..=qubits)
            .map(|k| a_power_entry(1, xi.bit(k), zeta.bit(k)))
            .product();
        c * a_part
    } else {
        let RegimeDecomposition { m, p } = RegimeDecomposition::new(n, qubits);
        if p != 0 {
            let leading: Complex64 = (1..=p)
                .map(|k| a_power_entry(m + 1, xi.bit(k), zeta.bit(qubits - p + k)))
                .product();
            let trailing: Complex64 = (1..=qubits - p)
                .map(|l| a_power_entry(m, xi.bit(p + l), zeta.bit(l)))
                .product();
            c * leading * trailing
        } else {
            let all: Complex64 = (1..=qubits)
                .map(|k| a_power_entry(m, xi.bit(k), zeta.bit(k)))
                .product();
            c * all
        }
    };
    Ok(value)
}

/// Numerator over `2^{N+1}` of `Σ_{k=1}^{N−p} b_{p+k} 2^{-k} + 2^p/2^{N+1}`,
/// the binary point `0.b_{p+1}…b_N 1`.
fn shifted_numerator(bits: &BitString, p: usize) -> BigUint {
    (digits_to_biguint(&bits.as_slice()[p..]) << (p + 1)) + (BigUint::one() << p)
}

/// Numerator over `2^{N+1}` of
/// `Σ_{k=N−p+1}^{N} b_{k−(N−p)} 2^{-k} + (2^N − 2^p + 1)/2^{N+1}`.
fn spread_numerator(bits: &BitString, p: usize) -> BigUint {
    let n = bits.len();
    (BigUint::one() << n) - (BigUint::one() << p)
        + BigUint::one()
        + (digits_to_biguint(&bits.as_slice()[..p]) << 1usize)
}

fn on_grid(numerator: BigUint, qubits: usize) -> DyadicRational {
    DyadicRational::new(numerator, qubits as u64 + 1)
}

/// `r_n` at `n = mN` (including `m = 0`): `0.ξ1` for `m ≡ 0`, `1/2` for odd
/// `m`, `0.η1` for `m ≡ 2 (mod 4)`.
pub fn mean_position_at_period(xi: &BitString, m: u64) -> DyadicRational {
    match m % 4 {
        0 => on_grid(shifted_numerator(xi, 0), xi.len()),
        2 => on_grid(shifted_numerator(&xi.complement(), 0), xi.len()),
        _ => DyadicRational::half(),
    }
}

/// Exact `r_n = ⟨ξ|Tⁿ q̂ T⁻ⁿ|ξ⟩`.
///
/// Dispatch on `n = mN + p`:
/// - `n = 0`: `r₀ = 0.ξ₁…ξ_N 1`;
/// - `0 < n < N`: `0.ξ_{n+1}…ξ_N 1`, the classical shift;
/// - `p ≠ 0`: the four `m mod 4` branches, with `η = complement(ξ)` entering
///   for `m ≡ 1, 2`;
/// - `p = 0`: [`mean_position_at_period`].
pub fn mean_position(xi: &BitString, n: u64) -> DyadicRational {
    let qubits = xi.len();
    if n == 0 {
        return xi.initial_value();
    }
    let RegimeDecomposition { m, p } = RegimeDecomposition::new(n, qubits);
    if p == 0 {
        return mean_position_at_period(xi, m);
    }
    let numerator = match m % 4 {
        0 => shifted_numerator(xi, p),
        1 => spread_numerator(&xi.complement(), p),
        2 => shifted_numerator(&xi.complement(), p),
        _ => spread_numerator(xi, p),
    };
    on_grid(numerator, qubits)
}

/// `r_0, …, r_{n_max}` for a fixed basis label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeanPositionSeries {
    pub xi: BitString,
    pub orbit: OrbitSeries,
}

impl MeanPositionSeries {
    pub fn values(&self) -> &[DyadicRational] {
        self.orbit.values()
    }

    pub fn into_orbit(self) -> OrbitSeries {
        self.orbit
    }
}

pub fn quantum_orbit(xi: &BitString, n_max: u64) -> MeanPositionSeries {
    let values = (0..=n_max).map(|n| mean_position(xi, n)).collect();
    MeanPositionSeries {
        xi: xi.clone(),
        orbit: OrbitSeries::new(Provenance::QuantumClosedform, values),
    }
}
