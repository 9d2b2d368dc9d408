use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A non-negative rational `numerator / 2^exponent` with an arbitrary-precision
/// numerator.
///
/// Values are kept canonical: either the exponent is zero or the numerator is
/// odd. Zero is `0/2^0`. Because of this, structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DyadicRational {
    numerator: BigUint,
    exponent: u64,
}

impl DyadicRational {
    pub fn new(numerator: BigUint, exponent: u64) -> Self {
        let mut value = Self {
            numerator,
            exponent,
        };
        value.canonicalize();
        value
    }

    pub fn zero() -> Self {
        Self {
            numerator: BigUint::zero(),
            exponent: 0,
        }
    }

    pub fn one() -> Self {
        Self {
            numerator: BigUint::one(),
            exponent: 0,
        }
    }

    pub fn half() -> Self {
        Self::pow2_inv(1)
    }

    /// `2^-e`. The effective Planck constant of an `N`-qubit system is `pow2_inv(N)`.
    pub fn pow2_inv(exponent: u64) -> Self {
        Self {
            numerator: BigUint::one(),
            exponent,
        }
    }

    pub fn from_u64(numerator: u64, exponent: u64) -> Self {
        Self::new(BigUint::from(numerator), exponent)
    }

    /// Exact conversion of a finite, non-negative double. Every such double is
    /// dyadic, so no rounding happens.
    pub fn from_f64(x: f64) -> Option<Self> {
        if !x.is_finite() || x < 0.0 {
            return None;
        }
        if x == 0.0 {
            return Some(Self::zero());
        }
        let bits = x.to_bits();
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mantissa, exp2) = if raw_exp == 0 {
            (frac, -1074i64)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        let numerator = BigUint::from(mantissa);
        Some(if exp2 >= 0 {
            Self::new(numerator << exp2 as usize, 0)
        } else {
            Self::new(numerator, (-exp2) as u64)
        })
    }

    pub fn numerator(&self) -> &BigUint {
        &self.numerator
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Multiplies by `2^k` (negative `k` divides).
    pub fn mul_pow2(&self, k: i64) -> Self {
        if k >= 0 {
            let k = k as u64;
            if k <= self.exponent {
                Self::new(self.numerator.clone(), self.exponent - k)
            } else {
                Self::new(&self.numerator << (k - self.exponent) as usize, 0)
            }
        } else {
            Self::new(self.numerator.clone(), self.exponent + k.unsigned_abs())
        }
    }

    pub fn checked_sub(&self, rhs: &Self) -> Option<Self> {
        let (a, b, e) = Self::align(self, rhs);
        if a < b {
            None
        } else {
            Some(Self::new(a - b, e))
        }
    }

    /// `⌊factor · self⌋` as an integer.
    pub fn floor_scaled(&self, factor: &BigUint) -> BigUint {
        (&self.numerator * factor) >> self.exponent as usize
    }

    pub fn is_in_unit_interval(&self) -> bool {
        *self <= Self::one()
    }

    /// Nearest double. Exponents beyond the double range underflow to zero, but
    /// unit-interval values keep full 53-bit precision.
    pub fn to_f64(&self) -> f64 {
        let bits = self.numerator.bits();
        let (mantissa, exponent) = if bits > 64 {
            let drop = bits - 64;
            (
                (&self.numerator >> drop as usize)
                    .to_u64()
                    .unwrap_or(u64::MAX),
                self.exponent as i64 - drop as i64,
            )
        } else {
            (self.numerator.to_u64().unwrap_or(0), self.exponent as i64)
        };
        scale_pow2(mantissa as f64, -exponent)
    }

    fn canonicalize(&mut self) {
        if self.numerator.is_zero() {
            self.exponent = 0;
            return;
        }
        if self.exponent == 0 || self.numerator.is_odd() {
            return;
        }
        let twos = self.numerator.trailing_zeros().unwrap_or(0);
        let shift = twos.min(self.exponent);
        self.numerator >>= shift as usize;
        self.exponent -= shift;
    }

    /// Numerators of both operands over the common denominator `2^e`.
    fn align(a: &Self, b: &Self) -> (BigUint, BigUint, u64) {
        match a.exponent.cmp(&b.exponent) {
            Ordering::Equal => (a.numerator.clone(), b.numerator.clone(), a.exponent),
            Ordering::Less => (
                &a.numerator << (b.exponent - a.exponent) as usize,
                b.numerator.clone(),
                b.exponent,
            ),
            Ordering::Greater => (
                a.numerator.clone(),
                &b.numerator << (a.exponent - b.exponent) as usize,
                a.exponent,
            ),
        }
    }
}

fn scale_pow2(m: f64, k: i64) -> f64 {
    // powi saturates long before i64 range; step in chunks the double range allows.
    let mut value = m;
    let mut k = k;
    while k > 1000 {
        value *= 2f64.powi(1000);
        k -= 1000;
    }
    while k < -1000 {
        value *= 2f64.powi(-1000);
        k += 1000;
    }
    value * 2f64.powi(k as i32)
}

impl Add for &DyadicRational {
    type Output = DyadicRational;

    fn add(self, rhs: &DyadicRational) -> DyadicRational {
        let (a, b, e) = DyadicRational::align(self, rhs);
        DyadicRational::new(a + b, e)
    }
}

impl Add for DyadicRational {
    type Output = DyadicRational;

    fn add(self, rhs: DyadicRational) -> DyadicRational {
        &self + &rhs
    }
}

/// Panics when the result would be negative; use [`DyadicRational::checked_sub`]
/// when that is possible.
impl Sub for &DyadicRational {
    type Output = DyadicRational;

    fn sub(self, rhs: &DyadicRational) -> DyadicRational {
        self.checked_sub(rhs)
            .expect("dyadic subtraction underflowed below zero")
    }
}

impl Ord for DyadicRational {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = Self::align(self, other);
        a.cmp(&b)
    }
}

impl PartialOrd for DyadicRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.numerator, self.exponent)
    }
}

impl fmt::Debug for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for DyadicRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::ParseDyadic(s.to_owned());
        let (num, den) = s.trim().split_once('/').ok_or_else(bad)?;
        let exp = den.trim().strip_prefix("2^").ok_or_else(bad)?;
        let numerator = BigUint::from_str(num.trim()).map_err(|_| bad())?;
        let exponent = exp.parse::<u64>().map_err(|_| bad())?;
        Ok(Self::new(numerator, exponent))
    }
}

impl Serialize for DyadicRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DyadicRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d(n: u64, e: u64) -> DyadicRational {
        DyadicRational::from_u64(n, e)
    }

    fn is_canonical(x: &DyadicRational) -> bool {
        if x.numerator().is_zero() {
            x.exponent() == 0
        } else {
            x.exponent() == 0 || x.numerator().is_odd()
        }
    }

    #[test]
    fn addition_examples() {
        assert_eq!(&d(1, 1) + &d(1, 2), d(3, 2));
        let one = &d(1, 1) + &d(1, 1);
        assert_eq!(one.numerator(), &BigUint::one());
        assert_eq!(one.exponent(), 0);
        let half = &d(3, 3) + &d(1, 3);
        assert_eq!(
            (half.numerator().to_u64().unwrap(), half.exponent()),
            (1, 1)
        );
    }

    #[test]
    fn zero_is_canonical() {
        let z = d(0, 17);
        assert_eq!(z.exponent(), 0);
        assert_eq!(z, DyadicRational::zero());
    }

    #[test]
    fn display_and_parse() {
        let x = d(5, 3);
        assert_eq!(x.to_string(), "5/2^3");
        assert_eq!("5/2^3".parse::<DyadicRational>().unwrap(), x);
        assert_eq!("10/2^4".parse::<DyadicRational>().unwrap(), x);
        assert!("5/3".parse::<DyadicRational>().is_err());
        assert!("x/2^3".parse::<DyadicRational>().is_err());
    }

    #[test]
    fn checked_sub_refuses_negative() {
        assert_eq!(d(3, 2).checked_sub(&d(1, 1)), Some(d(1, 2)));
        assert_eq!(d(1, 2).checked_sub(&d(1, 1)), None);
    }

    #[test]
    fn huge_exponent_to_f64() {
        // 0.1 followed by 1100 zero digits then a 1: still rounds to 1/2.
        let x = &DyadicRational::half() + &DyadicRational::pow2_inv(1102);
        assert_eq!(x.to_f64(), 0.5);
        assert_eq!(DyadicRational::pow2_inv(2000).to_f64(), 0.0);
    }

    #[test]
    fn from_f64_is_exact() {
        assert_eq!(DyadicRational::from_f64(0.625).unwrap(), d(5, 3));
        assert_eq!(DyadicRational::from_f64(3.0).unwrap(), d(3, 0));
        assert!(DyadicRational::from_f64(-1.0).is_none());
        let tiny = f64::from_bits(1);
        assert_eq!(
            DyadicRational::from_f64(tiny).unwrap(),
            DyadicRational::pow2_inv(1074)
        );
    }

    #[test]
    fn mul_pow2_both_directions() {
        assert_eq!(d(3, 2).mul_pow2(1), d(3, 1));
        assert_eq!(d(3, 2).mul_pow2(3), d(6, 0));
        assert_eq!(d(3, 2).mul_pow2(-2), d(3, 4));
    }

    proptest! {
        #[test]
        fn arithmetic_stays_canonical(a in 0u64..1 << 40, ea in 0u64..60,
                                      b in 0u64..1 << 40, eb in 0u64..60) {
            let x = d(a, ea);
            let y = d(b, eb);
            let sum = &x + &y;
            prop_assert!(is_canonical(&x));
            prop_assert!(is_canonical(&sum));
            if let Some(diff) = sum.checked_sub(&y) {
                prop_assert!(is_canonical(&diff));
                prop_assert_eq!(diff, x);
            }
        }

        #[test]
        fn float_order_agrees_with_exact_order(a in 0u64..1 << 50, ea in 0u64..=50,
                                               b in 0u64..1 << 50, eb in 0u64..=50) {
            let x = d(a, ea);
            let y = d(b, eb);
            // Numerators below 2^50 convert without rounding.
            prop_assert_eq!(x.to_f64().partial_cmp(&y.to_f64()), Some(x.cmp(&y)));
        }

        #[test]
        fn f64_round_trip(x in 0.0f64..1.0) {
            let exact = DyadicRational::from_f64(x).unwrap();
            prop_assert_eq!(exact.to_f64(), x);
        }
    }
}
