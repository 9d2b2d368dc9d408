//! The classical baker's transformation of the unit square, its symbolic
//! (Bernoulli shift) description, and the `q`-coordinate orbits used as the
//! classical baseline.

use crate::error::{Error, Result};
use crate::numeric::{bits::digits_to_biguint, BitString, DyadicRational, RandomBitSource};
use crate::orbit::{OrbitSeries, Provenance};

/// A point `(q, p)` of the closed unit square.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassicalPoint {
    pub q: DyadicRational,
    pub p: DyadicRational,
}

impl ClassicalPoint {
    pub fn new(q: DyadicRational, p: DyadicRational) -> Result<Self> {
        for c in [&q, &p] {
            if !c.is_in_unit_interval() {
                return Err(Error::OutOfUnitInterval(c.to_string()));
            }
        }
        Ok(Self { q, p })
    }
}

/// One step of the baker's map:
/// `(2q, p/2)` for `q ≤ 1/2`, otherwise `(2q − 1, (p + 1)/2)`.
pub fn baker_step(pt: &ClassicalPoint) -> ClassicalPoint {
    let half = DyadicRational::half();
    if pt.q <= half {
        ClassicalPoint {
            q: pt.q.mul_pow2(1),
            p: pt.p.mul_pow2(-1),
        }
    } else {
        ClassicalPoint {
            q: &pt.q.mul_pow2(1) - &DyadicRational::one(),
            p: (&pt.p + &DyadicRational::one()).mul_pow2(-1),
        }
    }
}

/// Inverse of [`baker_step`] on the half-open square `[0,1) × [0,1)`.
///
/// The lower half `p < 1/2` is the image of the left strip, the upper half
/// `p ≥ 1/2` the image of the right strip.
pub fn inverse_baker_step(pt: &ClassicalPoint) -> ClassicalPoint {
    let half = DyadicRational::half();
    if pt.p < half {
        ClassicalPoint {
            q: pt.q.mul_pow2(-1),
            p: pt.p.mul_pow2(1),
        }
    } else {
        ClassicalPoint {
            q: (&pt.q + &DyadicRational::one()).mul_pow2(-1),
            p: &pt.p.mul_pow2(1) - &DyadicRational::one(),
        }
    }
}

/// Finite two-sided symbolic string `…ξ₋₁ξ₀.ξ₁ξ₂…`.
///
/// `past` holds `ξ₀, ξ₋₁, ξ₋₂, …` (nearest the dot first) and `future` holds
/// `ξ₁, ξ₂, …`. Digits beyond either end are zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymbolicString {
    past: Vec<u8>,
    future: Vec<u8>,
}

impl SymbolicString {
    pub fn new(past: Vec<u8>, future: Vec<u8>) -> Result<Self> {
        for &b in past.iter().chain(&future) {
            if b > 1 {
                return Err(Error::InvalidBit(char::from(b'0'.wrapping_add(b))));
            }
        }
        Ok(Self { past, future })
    }

    pub fn past(&self) -> &[u8] {
        &self.past
    }

    pub fn future(&self) -> &[u8] {
        &self.future
    }

    /// `q = Σ ξ_k 2^{-k}`, `p = Σ ξ_{-k} 2^{-k-1}`.
    pub fn decode(&self) -> ClassicalPoint {
        ClassicalPoint {
            q: DyadicRational::new(digits_to_biguint(&self.future), self.future.len() as u64),
            p: DyadicRational::new(digits_to_biguint(&self.past), self.past.len() as u64),
        }
    }
}

/// The Bernoulli shift: the dot moves one place to the right.
///
/// `decode(symbolic_shift(s)) == baker_step(decode(s))` except at the
/// boundary point `q = 1/2` written as `0.1000…`, where the baker map takes the
/// left branch and the shift takes the right one.
pub fn symbolic_shift(s: &SymbolicString) -> Result<SymbolicString> {
    let (&head, rest) = s.future.split_first().ok_or(Error::ExhaustedExpansion)?;
    let mut past = Vec::with_capacity(s.past.len() + 1);
    past.push(head);
    past.extend_from_slice(&s.past);
    Ok(SymbolicString {
        past,
        future: rest.to_vec(),
    })
}

/// How the digit stream continues past `ξ₁…ξ_N 1`.
#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum ClassicalOrbitMode {
    /// All further digits are zero: the orbit of the dyadic point `r₀` itself.
    Truncated,
    /// Fresh fair bits from the given source: a generic real point agreeing
    /// with `r₀` in its first `N + 1` digits.
    Extended(RandomBitSource),
}

impl ClassicalOrbitMode {
    pub fn provenance(&self) -> Provenance {
        match self {
            ClassicalOrbitMode::Truncated => Provenance::ClassicalTruncated,
            ClassicalOrbitMode::Extended(_) => Provenance::ClassicalExtended,
        }
    }
}

/// `q_n = Σ_{k≥1} s_{n+k} 2^{-k}` for `n = 0..=n_max`, where the digit stream
/// `s` is `ξ₁…ξ_N 1` followed by the continuation chosen by `mode`.
///
/// Each value is the binary window `0.s_{n+1}…s_{n+N+1}`, i.e. the orbit read at
/// the resolution `2^{-(N+1)}` of the quantum grid. In truncated mode the window
/// already contains every nonzero digit, so the values are the exact orbit and
/// `q₀ = r₀`. In extended mode `q₀ = r₀` as well, and later values are the
/// random real orbit rounded down to that grid.
pub fn classical_q_orbit(xi: &BitString, n_max: usize, mode: &ClassicalOrbitMode) -> OrbitSeries {
    let n = xi.len();
    let width = n + 1;
    let mut stream = Vec::with_capacity(n_max + width);
    stream.extend_from_slice(xi.as_slice());
    stream.push(1);
    // The last window starts at n_max, so the stream needs n_max more digits.
    match mode {
        ClassicalOrbitMode::Truncated => stream.resize(n_max + width, 0),
        ClassicalOrbitMode::Extended(source) => {
            let mut source = source.clone();
            stream.extend(source.bits(n_max));
        }
    }
    let values = (0..=n_max)
        .map(|step| {
            DyadicRational::new(digits_to_biguint(&stream[step..step + width]), width as u64)
        })
        .collect();
    OrbitSeries::new(mode.provenance(), values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d(n: u64, e: u64) -> DyadicRational {
        DyadicRational::from_u64(n, e)
    }

    fn pt(q: DyadicRational, p: DyadicRational) -> ClassicalPoint {
        ClassicalPoint::new(q, p).unwrap()
    }

    #[test]
    fn baker_step_examples() {
        assert_eq!(baker_step(&pt(d(1, 2), d(1, 1))), pt(d(1, 1), d(1, 2)));
        assert_eq!(baker_step(&pt(d(3, 2), d(0, 0))), pt(d(1, 1), d(1, 1)));
        let origin = pt(DyadicRational::zero(), DyadicRational::zero());
        assert_eq!(baker_step(&origin), origin);
    }

    #[test]
    fn point_outside_square_rejected() {
        assert!(ClassicalPoint::new(d(3, 1), d(0, 0)).is_err());
    }

    #[test]
    fn shift_moves_dot() {
        let s = SymbolicString::new(vec![0], vec![1, 0, 1]).unwrap();
        let shifted = symbolic_shift(&s).unwrap();
        assert_eq!(shifted.past(), &[1, 0]);
        assert_eq!(shifted.future(), &[0, 1]);
    }

    #[test]
    fn shift_exhausts() {
        let mut s = SymbolicString::new(vec![1, 1], vec![0, 1, 1]).unwrap();
        for _ in 0..3 {
            s = symbolic_shift(&s).unwrap();
        }
        assert!(matches!(symbolic_shift(&s), Err(Error::ExhaustedExpansion)));
    }

    #[test]
    fn truncated_orbit_examples() {
        let xi: BitString = "10".parse().unwrap();
        let orbit = classical_q_orbit(&xi, 5, &ClassicalOrbitMode::Truncated);
        assert_eq!(orbit.get(0), Some(&d(5, 3)));
        assert_eq!(orbit.get(1), Some(&d(1, 2)));
        assert_eq!(orbit.get(2), Some(&DyadicRational::half()));
        assert_eq!(orbit.get(3), Some(&DyadicRational::zero()));
        assert_eq!(orbit.get(4), Some(&DyadicRational::zero()));
        assert_eq!(orbit.provenance(), Provenance::ClassicalTruncated);
    }

    #[test]
    fn truncated_orbit_collapses_after_n_plus_one() {
        let xi: BitString = "1101110010101".parse().unwrap();
        let n = xi.len();
        let orbit = classical_q_orbit(&xi, 3 * n, &ClassicalOrbitMode::Truncated);
        assert_eq!(orbit.get(0), Some(&xi.initial_value()));
        assert_eq!(orbit.get(n), Some(&DyadicRational::half()));
        assert!(orbit.values()[n + 1..].iter().all(DyadicRational::is_zero));
    }

    #[test]
    fn extended_orbit_starts_at_initial_value_and_is_reproducible() {
        let xi: BitString = "0110".parse().unwrap();
        let mode = ClassicalOrbitMode::Extended(RandomBitSource::with_stream(9, 1));
        let a = classical_q_orbit(&xi, 200, &mode);
        let b = classical_q_orbit(&xi, 200, &mode);
        assert_eq!(a, b);
        assert_eq!(a.get(0), Some(&xi.initial_value()));
        assert_eq!(a.len(), 201);
        assert!(a.values().iter().skip(10).any(|v| !v.is_zero()));
    }

    #[test]
    fn extended_orbit_is_the_doubling_map_on_the_grid() {
        // Consecutive values differ by a doubling mod 1 up to the new last digit.
        let xi: BitString = "1011".parse().unwrap();
        let mode = ClassicalOrbitMode::Extended(RandomBitSource::with_stream(3, 1));
        let orbit = classical_q_orbit(&xi, 100, &mode);
        let grid = DyadicRational::pow2_inv(xi.len() as u64 + 1);
        for w in orbit.values().windows(2) {
            let doubled = w[0].mul_pow2(1);
            let wrapped = doubled
                .checked_sub(&DyadicRational::one())
                .unwrap_or(doubled);
            let diff = w[1].checked_sub(&wrapped).expect("new digit only adds");
            assert!(diff == DyadicRational::zero() || diff == grid);
        }
    }

    fn digits(max: usize) -> impl Strategy<Value = Vec<u8>> {
        proptest::collection::vec(0u8..2, 0..max)
    }

    proptest! {
        #[test]
        fn shift_commutes_with_baker_step(past in digits(30), future in digits(30)) {
            prop_assume!(!future.is_empty());
            // 0.1000… is the one representation where the two conventions split.
            prop_assume!(!(future[0] == 1 && future[1..].iter().all(|&b| b == 0)));
            let s = SymbolicString::new(past, future).unwrap();
            let lhs = symbolic_shift(&s).unwrap().decode();
            let rhs = baker_step(&s.decode());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn inverse_undoes_step(qn in 0u64..1 << 30, pn in 0u64..1 << 30) {
            let p = pt(d(qn, 30), d(pn, 30));
            prop_assert_eq!(inverse_baker_step(&baker_step(&p)), p);
        }

        #[test]
        fn step_undoes_inverse(qn in 1u64..=1 << 30, pn in 0u64..1 << 30) {
            let p = pt(d(qn, 30), d(pn, 30));
            prop_assert_eq!(baker_step(&inverse_baker_step(&p)), p);
        }
    }
}
