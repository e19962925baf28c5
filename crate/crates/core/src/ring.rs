//! Minimal commutative-ring interface shared by the matrix and minor code.
//!
//! Elements carry their own context (a p-adic precision, a truncation order),
//! so constants are produced from an existing element rather than from thin air.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt::Debug;

pub trait Ring: Clone + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn ring_is_zero(&self) -> bool;
    fn ring_add(&self, rhs: &Self) -> Self;
    fn ring_sub(&self, rhs: &Self) -> Self;
    fn ring_mul(&self, rhs: &Self) -> Self;
    fn ring_neg(&self) -> Self;

    fn from_i64_like(&self, n: i64) -> Self {
        let one = self.one_like();
        let mut acc = self.zero_like();
        let mut base = one;
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.ring_add(&base);
            }
            base = base.ring_add(&base);
            k >>= 1;
        }
        if n < 0 {
            acc.ring_neg()
        } else {
            acc
        }
    }
}

impl Ring for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn ring_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn ring_sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn from_i64_like(&self, n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

impl Ring for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn ring_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn ring_sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn from_i64_like(&self, n: i64) -> Self {
        BigInt::from(n)
    }
}

/// Shorthand for building exact rationals in tests and tables.
pub fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
