//! Arbitrary-precision integers with an inline fast path.
//!
//! Coefficients of Burau entries stay word-sized for short braids and grow
//! combinatorially for long ones, so we keep an `i64` representation until an
//! operation overflows and only then promote to a heap [`BigInt`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{Signed, ToPrimitive, Zero};

/// Exact integer, inline when it fits in an `i64`.
///
/// Invariant: the `Big` variant never holds a value representable as `i64`,
/// so derived equality and hashing agree with numeric equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Int {
    Small(i64),
    Big(BigInt),
}

impl Int {
    pub const ZERO: Int = Int::Small(0);
    pub const ONE: Int = Int::Small(1);

    pub fn from_bigint(v: BigInt) -> Int {
        match v.to_i64() {
            Some(s) => Int::Small(s),
            None => Int::Big(v),
        }
    }

    pub fn to_bigint(&self) -> BigInt {
        match self {
            Int::Small(s) => BigInt::from(*s),
            Int::Big(b) => b.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Int::Small(1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Int::Small(s) => *s < 0,
            Int::Big(b) => b.is_negative(),
        }
    }

    /// Sign as -1, 0, or +1.
    pub fn signum(&self) -> i8 {
        match self {
            Int::Small(s) => s.signum() as i8,
            Int::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn abs(&self) -> Int {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn gcd(&self, other: &Int) -> Int {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => Int::Small(gcd_i64(*a, *b)),
            _ => Int::from_bigint(self.to_bigint().gcd(&other.to_bigint())),
        }
    }

    /// Exact quotient; `None` when `other` does not divide `self`.
    pub fn div_exact(&self, other: &Int) -> Option<Int> {
        if other.is_zero() {
            return None;
        }
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => {
                if a % b == 0 {
                    // i64::MIN / -1 is the single overflowing case.
                    a.checked_div(*b)
                        .map(Int::Small)
                        .or_else(|| Some(Int::from_bigint(BigInt::from(*a) / BigInt::from(*b))))
                } else {
                    None
                }
            }
            _ => {
                let (q, r) = self.to_bigint().div_rem(&other.to_bigint());
                if r.is_zero() {
                    Some(Int::from_bigint(q))
                } else {
                    None
                }
            }
        }
    }

    pub fn pow(&self, exp: u32) -> Int {
        match self {
            Int::Small(s) => match s.checked_pow(exp) {
                Some(v) => Int::Small(v),
                None => Int::from_bigint(BigInt::from(*s).pow(exp)),
            },
            Int::Big(b) => Int::from_bigint(b.pow(exp)),
        }
    }

    /// Closest `f64`; huge values saturate to the correctly signed infinity.
    pub fn to_f64(&self) -> f64 {
        match self {
            Int::Small(s) => *s as f64,
            Int::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    /// `(m, e)` with `self ≈ m * 2^e` and `|m|` in `[0.5, 1)` (0 maps to (0,0)).
    ///
    /// Exact enough for root finding on polynomials whose coefficients exceed
    /// the `f64` range.
    pub fn to_f64_exp(&self) -> (f64, i64) {
        if self.is_zero() {
            return (0.0, 0);
        }
        let b = self.to_bigint();
        let bits = b.bits() as i64;
        if bits <= 1000 {
            let v = self.to_f64();
            if v.is_finite() {
                let (m, e) = frexp(v);
                return (m, e);
            }
        }
        // Keep the top 64 bits and remember the shift.
        let shift = bits - 64;
        let top = (b >> shift).to_f64().unwrap_or(0.0);
        let (m, e) = frexp(top);
        (m, e + shift)
    }

    pub fn bits(&self) -> u64 {
        match self {
            Int::Small(s) => 64 - s.unsigned_abs().leading_zeros() as u64,
            Int::Big(b) => b.bits(),
        }
    }
}

fn frexp(v: f64) -> (f64, i64) {
    if v == 0.0 || !v.is_finite() {
        return (v, 0);
    }
    let e = v.abs().log2().floor() as i64 + 1;
    (v / (2.0f64).powi(e as i32), e)
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    // gcd of two i64 fits in i64 except gcd(i64::MIN, 0); clamp that edge.
    i64::try_from(a).unwrap_or(i64::MAX)
}

impl Default for Int {
    fn default() -> Self {
        Int::ZERO
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int::Small(v)
    }
}

impl From<i32> for Int {
    fn from(v: i32) -> Self {
        Int::Small(v as i64)
    }
}

impl From<BigInt> for Int {
    fn from(v: BigInt) -> Self {
        Int::from_bigint(v)
    }
}

impl FromStr for Int {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.parse::<i64>() {
            Ok(v) => Ok(Int::Small(v)),
            Err(_) => Ok(Int::from_bigint(s.parse::<BigInt>()?)),
        }
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(s) => write!(f, "{s}"),
            Int::Big(b) => write!(f, "{b}"),
        }
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.cmp(b),
            _ => self.to_bigint().cmp(&other.to_bigint()),
        }
    }
}

impl Neg for Int {
    type Output = Int;
    fn neg(self) -> Int {
        match self {
            Int::Small(s) => match s.checked_neg() {
                Some(v) => Int::Small(v),
                None => Int::from_bigint(-BigInt::from(s)),
            },
            Int::Big(b) => Int::from_bigint(-b),
        }
    }
}

impl Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        -self.clone()
    }
}

impl Add<&Int> for &Int {
    type Output = Int;
    fn add(self, rhs: &Int) -> Int {
        match (self, rhs) {
            (Int::Small(a), Int::Small(b)) => match a.checked_add(*b) {
                Some(v) => Int::Small(v),
                None => Int::from_bigint(BigInt::from(*a) + BigInt::from(*b)),
            },
            _ => Int::from_bigint(self.to_bigint() + rhs.to_bigint()),
        }
    }
}

impl Sub<&Int> for &Int {
    type Output = Int;
    fn sub(self, rhs: &Int) -> Int {
        match (self, rhs) {
            (Int::Small(a), Int::Small(b)) => match a.checked_sub(*b) {
                Some(v) => Int::Small(v),
                None => Int::from_bigint(BigInt::from(*a) - BigInt::from(*b)),
            },
            _ => Int::from_bigint(self.to_bigint() - rhs.to_bigint()),
        }
    }
}

impl Mul<&Int> for &Int {
    type Output = Int;
    fn mul(self, rhs: &Int) -> Int {
        match (self, rhs) {
            (Int::Small(a), Int::Small(b)) => match a.checked_mul(*b) {
                Some(v) => Int::Small(v),
                None => Int::from_bigint(BigInt::from(*a) * BigInt::from(*b)),
            },
            _ => Int::from_bigint(self.to_bigint() * rhs.to_bigint()),
        }
    }
}

macro_rules! forward_value_ops {
    ($($trait:ident, $method:ident);*) => {$(
        impl $trait<Int> for Int {
            type Output = Int;
            fn $method(self, rhs: Int) -> Int {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Int> for Int {
            type Output = Int;
            fn $method(self, rhs: &Int) -> Int {
                (&self).$method(rhs)
            }
        }
        impl $trait<Int> for &Int {
            type Output = Int;
            fn $method(self, rhs: Int) -> Int {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_value_ops!(Add, add; Sub, sub; Mul, mul);

impl AddAssign<&Int> for Int {
    fn add_assign(&mut self, rhs: &Int) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Int> for Int {
    fn sub_assign(&mut self, rhs: &Int) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Int> for Int {
    fn mul_assign(&mut self, rhs: &Int) {
        *self = &*self * rhs;
    }
}

impl serde::Serialize for Int {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Int {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_promotes_and_round_trips() {
        let big = Int::Small(i64::MAX) + Int::Small(i64::MAX);
        assert!(matches!(big, Int::Big(_)));
        let back = &big - &Int::Small(i64::MAX);
        assert_eq!(back, Int::Small(i64::MAX));
    }

    #[test]
    fn big_values_demote_when_small() {
        let v = Int::from_bigint(BigInt::from(42));
        assert_eq!(v, Int::Small(42));
    }

    #[test]
    fn mul_promotes() {
        let v = Int::Small(1 << 40) * Int::Small(1 << 40);
        assert_eq!(v.to_bigint(), BigInt::from(1u128 << 80));
    }

    #[test]
    fn div_exact_detects_remainders() {
        assert_eq!(Int::Small(12).div_exact(&Int::Small(4)), Some(Int::Small(3)));
        assert_eq!(Int::Small(12).div_exact(&Int::Small(5)), None);
        let huge = Int::Small(3).pow(100);
        assert_eq!(
            huge.div_exact(&Int::Small(3).pow(99)),
            Some(Int::Small(3))
        );
    }

    #[test]
    fn f64_exp_of_huge_values() {
        let huge = Int::Small(2).pow(2000);
        let (m, e) = huge.to_f64_exp();
        assert!((m - 0.5).abs() < 1e-12);
        assert_eq!(e, 2001);
    }

    #[test]
    fn gcd_mixed() {
        assert_eq!(Int::Small(12).gcd(&Int::Small(-18)), Int::Small(6));
        let a = Int::Small(2).pow(100) * Int::Small(9);
        let b = Int::Small(2).pow(90) * Int::Small(6);
        // gcd(2^10 * 9, 6) = 6
        assert_eq!(a.gcd(&b), Int::Small(2).pow(90) * Int::Small(6));
    }
}
