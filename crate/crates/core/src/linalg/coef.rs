//! Coefficient rings for elimination: a checked machine-word fast path and an
//! arbitrary-precision fallback. Every fast-path operation reports overflow as
//! `None`, at which point callers redo the computation over `BigInt`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub trait Coef: Clone + PartialEq + std::fmt::Debug {
    fn nil() -> Self;
    fn unit() -> Self;
    fn from_big(v: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn is_nil(&self) -> bool;
    fn is_negative(&self) -> bool;
    /// Magnitude used for pivot ranking (saturating).
    fn magnitude(&self) -> u64;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    /// Floor division with remainder of the same sign as the divisor.
    fn div_floor(&self, o: &Self) -> Option<Self>;
    fn rem_floor(&self, o: &Self) -> Option<Self>;

    fn is_unit(&self) -> bool {
        self.magnitude() == 1
    }

    fn from_i64(v: i64) -> Option<Self> {
        Self::from_big(&BigInt::from(v))
    }

    /// `self - q * o`
    fn sub_mul(&self, q: &Self, o: &Self) -> Option<Self> {
        self.sub(&q.mul(o)?)
    }
}

impl Coef for i64 {
    fn nil() -> Self {
        0
    }
    fn unit() -> Self {
        1
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i64()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn magnitude(&self) -> u64 {
        self.unsigned_abs()
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn div_floor(&self, o: &Self) -> Option<Self> {
        if *o == -1 && *self == i64::MIN {
            return None;
        }
        Some(Integer::div_floor(self, o))
    }
    fn rem_floor(&self, o: &Self) -> Option<Self> {
        if *o == -1 {
            return Some(0);
        }
        Some(Integer::mod_floor(self, o))
    }
}

impl Coef for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn magnitude(&self) -> u64 {
        self.abs().to_u64().unwrap_or(u64::MAX)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn div_floor(&self, o: &Self) -> Option<Self> {
        Some(Integer::div_floor(self, o))
    }
    fn rem_floor(&self, o: &Self) -> Option<Self> {
        Some(Integer::mod_floor(self, o))
    }
}
