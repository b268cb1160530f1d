//! Coefficient rings for the linear algebra in [`crate::algtop`] and
//! [`crate::toda`].
//!
//! Everything downstream only needs a Euclidean domain: integer types
//! (`i64`, `i128`, [`BigInt`]) and the two-element field [`Gf2`]. The
//! [`Scalar`] trait layers the few extra operations normal-form
//! computations need (magnitude comparison for pivoting, canonical
//! associates) on top of `num_traits::Num`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_bigint::BigInt;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

/// A Euclidean coefficient ring.
///
/// `a % b` must satisfy `magnitude(a % b) < magnitude(b)` for nonzero `b`,
/// and `a - (a / b) * b == a % b`.
pub trait Scalar: Num + Clone + Neg<Output = Self> + fmt::Debug + fmt::Display + Send + Sync {
    /// Compares Euclidean sizes (absolute values for integers).
    fn magnitude_cmp(&self, other: &Self) -> Ordering;

    /// The canonical associate of `self` (non-negative for integers).
    fn canonical(&self) -> Self;

    fn is_unit(&self) -> bool;

    fn from_i64(v: i64) -> Self;

    fn to_i64(&self) -> Option<i64>;

    /// Characteristic of the ring, `0` for the integers.
    fn characteristic() -> u64;
}

macro_rules! prim_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn magnitude_cmp(&self, other: &Self) -> Ordering {
                self.unsigned_abs().cmp(&other.unsigned_abs())
            }
            fn canonical(&self) -> Self {
                self.abs()
            }
            fn is_unit(&self) -> bool {
                *self == 1 || *self == -1
            }
            fn from_i64(v: i64) -> Self {
                v as $t
            }
            fn to_i64(&self) -> Option<i64> {
                i64::try_from(*self).ok()
            }
            fn characteristic() -> u64 {
                0
            }
        }
    };
}

prim_scalar!(i64);
prim_scalar!(i128);

impl Scalar for BigInt {
    fn magnitude_cmp(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn canonical(&self) -> Self {
        self.abs()
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn to_i64(&self) -> Option<i64> {
        ToPrimitive::to_i64(self)
    }
    fn characteristic() -> u64 {
        0
    }
}

/// The field with two elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug)]
pub struct Gf2(pub bool);

impl fmt::Display for Gf2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(self.0))
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for Gf2 {
    type Output = Gf2;
    fn add(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Sub for Gf2 {
    type Output = Gf2;
    fn sub(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for Gf2 {
    type Output = Gf2;
    fn mul(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 & rhs.0)
    }
}

impl Div for Gf2 {
    type Output = Gf2;
    fn div(self, rhs: Gf2) -> Gf2 {
        assert!(rhs.0, "division by zero in GF(2)");
        self
    }
}

impl Rem for Gf2 {
    type Output = Gf2;
    fn rem(self, rhs: Gf2) -> Gf2 {
        assert!(rhs.0, "division by zero in GF(2)");
        Gf2(false)
    }
}

impl Neg for Gf2 {
    type Output = Gf2;
    fn neg(self) -> Gf2 {
        self
    }
}

impl Zero for Gf2 {
    fn zero() -> Self {
        Gf2(false)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
}

impl One for Gf2 {
    fn one() -> Self {
        Gf2(true)
    }
}

impl Num for Gf2 {
    type FromStrRadixErr = std::num::ParseIntError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        i64::from_str_radix(s, radix).map(|v| Gf2(v.rem_euclid(2) == 1))
    }
}

impl Scalar for Gf2 {
    fn magnitude_cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
    fn canonical(&self) -> Self {
        *self
    }
    fn is_unit(&self) -> bool {
        self.0
    }
    fn from_i64(v: i64) -> Self {
        Gf2(v.rem_euclid(2) == 1)
    }
    fn to_i64(&self) -> Option<i64> {
        Some(i64::from(self.0))
    }
    fn characteristic() -> u64 {
        2
    }
}
