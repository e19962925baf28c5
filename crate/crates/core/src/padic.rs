//! Fixed-precision arithmetic in Z_p and Q_p.
//!
//! An element is stored as `p^v * u` with `u` a unit. Integral elements
//! (`v >= 0`) are known modulo `p^N`, so their unit part is canonical modulo
//! `p^(N - v)`. Elements with negative valuation keep `N` relative digits.
//! Anything indistinguishable from zero modulo `p^N` is the distinguished
//! zero-at-precision state; it is never confused with `p^N * unit`.

use crate::error::{Error, Result};
use crate::ring::Ring;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

pub const DEFAULT_PRECISION: u32 = 32;

#[derive(Clone)]
pub struct PadicContext {
    p: u64,
    precision: u32,
    modulus: Arc<BigInt>,
}

impl PartialEq for PadicContext {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.precision == other.precision
    }
}
impl Eq for PadicContext {}

impl fmt::Debug for PadicContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PadicContext(p={}, N={})", self.p, self.precision)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PadicContext {
    pub fn new(p: u64, precision: u32) -> Result<Self> {
        if !is_prime(p) || p < 3 {
            return Err(Error::InvalidContext(format!("p = {p} must be an odd prime")));
        }
        if precision == 0 {
            return Err(Error::InvalidContext("precision must be at least 1".into()));
        }
        Ok(PadicContext {
            p,
            precision,
            modulus: Arc::new(BigInt::from(p).pow(precision)),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// `p^N`.
    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn prime(&self) -> BigInt {
        BigInt::from(self.p)
    }

    pub fn p_pow(&self, e: u32) -> BigInt {
        BigInt::from(self.p).pow(e)
    }

    /// Same prime, different precision.
    pub fn with_precision(&self, precision: u32) -> Result<Self> {
        PadicContext::new(self.p, precision)
    }

    /// Canonical representative of `x mod p^N` in `[0, p^N)`.
    pub fn reduce(&self, x: &BigInt) -> BigInt {
        x.mod_floor(&self.modulus)
    }

    /// Valuation of a residue modulo `p^N`; `None` when it is zero.
    pub fn residue_valuation(&self, x: &BigInt) -> Option<u32> {
        let r = self.reduce(x);
        if r.is_zero() {
            return None;
        }
        Some(split_p(&r, self.p).0)
    }

    pub fn zero(&self) -> PadicNumber {
        PadicNumber::zero_in(self)
    }

    pub fn one(&self) -> PadicNumber {
        PadicNumber::from_i64(self, 1)
    }

    pub fn int(&self, n: i64) -> PadicNumber {
        PadicNumber::from_i64(self, n)
    }
}

/// Splits `x = p^v * w` with `p ∤ w`. `x` must be nonzero.
pub(crate) fn split_p(x: &BigInt, p: u64) -> (u32, BigInt) {
    debug_assert!(!x.is_zero());
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut w = x.clone();
    loop {
        let (q, r) = w.div_rem(&pb);
        if !r.is_zero() {
            break;
        }
        w = q;
        v += 1;
    }
    (v, w)
}

/// Inverse of a unit modulo `m`.
pub(crate) fn mod_inverse(u: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = u.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

#[derive(Clone)]
pub struct PadicNumber {
    ctx: PadicContext,
    /// `None` is zero at precision.
    valuation: Option<i64>,
    unit: BigInt,
}

impl fmt::Debug for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.valuation {
            None => write!(f, "O({}^{})", self.ctx.p, self.ctx.precision),
            Some(v) => write!(f, "{}^{}*{}", self.ctx.p, v, self.unit),
        }
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.valuation {
            None => write!(f, "0"),
            Some(v) if v >= 0 => write!(f, "{}", self.residue().expect("integral")),
            Some(v) => write!(f, "{}/{}^{}", self.unit, self.ctx.p, -v),
        }
    }
}

impl PadicNumber {
    fn zero_in(ctx: &PadicContext) -> Self {
        PadicNumber { ctx: ctx.clone(), valuation: None, unit: BigInt::zero() }
    }

    /// Builds `p^v * u` from an integer `u` of any valuation, normalising.
    fn normalised(ctx: &PadicContext, v: i64, u: BigInt) -> Self {
        if u.is_zero() {
            return Self::zero_in(ctx);
        }
        let (s, w) = split_p(&u, ctx.p);
        let v = v + s as i64;
        if v >= ctx.precision as i64 {
            return Self::zero_in(ctx);
        }
        let digits = if v >= 0 { ctx.precision - v as u32 } else { ctx.precision };
        let unit = w.mod_floor(&ctx.p_pow(digits));
        PadicNumber { ctx: ctx.clone(), valuation: Some(v), unit }
    }

    pub fn from_bigint(ctx: &PadicContext, n: &BigInt) -> Self {
        Self::normalised(ctx, 0, ctx.reduce(n))
    }

    pub fn from_i64(ctx: &PadicContext, n: i64) -> Self {
        Self::from_bigint(ctx, &BigInt::from(n))
    }

    /// Embeds a rational; a denominator divisible by p yields negative valuation.
    pub fn from_rational(ctx: &PadicContext, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero_in(ctx);
        }
        let (vn, un) = split_p(r.numer(), ctx.p);
        let (vd, ud) = split_p(r.denom(), ctx.p);
        let m = ctx.modulus();
        let inv = mod_inverse(&ud, m).expect("p-free denominator is a unit");
        Self::normalised(ctx, vn as i64 - vd as i64, (un * inv).mod_floor(m))
    }

    /// Builds `p^valuation * unit` directly.
    pub fn from_parts(ctx: &PadicContext, valuation: i64, unit: &BigInt) -> Result<Self> {
        if unit.is_multiple_of(&ctx.prime()) {
            return Err(Error::Parse(format!("unit part {unit} is divisible by p")));
        }
        Ok(Self::normalised(ctx, valuation, unit.clone()))
    }

    pub fn context(&self) -> &PadicContext {
        &self.ctx
    }

    pub fn valuation(&self) -> Option<i64> {
        self.valuation
    }

    pub fn unit_part(&self) -> &BigInt {
        &self.unit
    }

    pub fn is_zero(&self) -> bool {
        self.valuation.is_none()
    }

    pub fn is_unit(&self) -> bool {
        self.valuation == Some(0)
    }

    pub fn is_integral(&self) -> bool {
        self.valuation.map_or(true, |v| v >= 0)
    }

    /// The integer in `[0, p^N)` congruent to this element; `None` for
    /// elements of negative valuation.
    pub fn residue(&self) -> Option<BigInt> {
        match self.valuation {
            None => Some(BigInt::zero()),
            Some(v) if v >= 0 => Some(self.ctx.reduce(&(&self.unit * self.ctx.p_pow(v as u32)))),
            Some(_) => None,
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let (va, vb) = match (self.valuation, other.valuation) {
            (None, _) => return Ok(other.clone()),
            (_, None) => return Ok(self.clone()),
            (Some(a), Some(b)) => (a, b),
        };
        let m = va.min(vb);
        let p = self.ctx.prime();
        let inner = &self.unit * p.pow((va - m) as u32) + &other.unit * p.pow((vb - m) as u32);
        let digits = if m >= 0 { self.ctx.precision - m as u32 } else { self.ctx.precision };
        Ok(Self::normalised(&self.ctx, m, inner.mod_floor(&self.ctx.p_pow(digits))))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        match (self.valuation, other.valuation) {
            (Some(a), Some(b)) => Ok(Self::normalised(&self.ctx, a + b, &self.unit * &other.unit)),
            _ => Ok(Self::zero_in(&self.ctx)),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        let v = self.valuation.ok_or(Error::DivisionByZeroAtPrecision)?;
        let m = self.ctx.modulus();
        let inv = mod_inverse(&self.unit, m).expect("unit part is a unit");
        Ok(Self::normalised(&self.ctx, -v, inv))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inv()?)
    }

    fn neg_ref(&self) -> Self {
        match self.valuation {
            None => self.clone(),
            Some(v) => Self::normalised(&self.ctx, v, -&self.unit),
        }
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = self.ctx.one();
        let mut base = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// Lowers the precision (reduction modulo a smaller power of p).
    pub fn reduce_precision(&self, ctx: &PadicContext) -> Result<Self> {
        if ctx.p != self.ctx.p || ctx.precision > self.ctx.precision {
            return Err(Error::ContextMismatch);
        }
        Ok(match self.valuation {
            None => Self::zero_in(ctx),
            Some(v) => Self::normalised(ctx, v, self.unit.clone()),
        })
    }

    /// Rational representative: `p^v * u` with `u` the stored unit part.
    pub fn to_rational(&self) -> BigRational {
        match self.valuation {
            None => BigRational::zero(),
            Some(v) if v >= 0 => BigRational::from_integer(self.residue().unwrap()),
            Some(v) => BigRational::new(self.unit.clone(), self.ctx.p_pow((-v) as u32)),
        }
    }

    /// Signed residue in `(-p^N/2, p^N/2]`, handy for display of small integers.
    pub fn signed_residue(&self) -> Option<BigInt> {
        let r = self.residue()?;
        let m = self.ctx.modulus();
        if &r * 2 > *m {
            Some(r - m)
        } else {
            Some(r)
        }
    }
}

impl PartialEq for PadicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.ctx != other.ctx {
            return false;
        }
        match (self.valuation, other.valuation) {
            (None, None) => true,
            (Some(a), Some(b)) if a == b => {
                let digits = if a >= 0 { self.ctx.precision - a as u32 } else { self.ctx.precision };
                let m = self.ctx.p_pow(digits);
                self.unit.mod_floor(&m) == other.unit.mod_floor(&m)
            }
            _ => false,
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a PadicNumber> for &'a PadicNumber {
            type Output = PadicNumber;
            /// Panics when the operands come from different contexts; use the
            /// `try_` methods to get `Error::ContextMismatch` instead.
            fn $method(self, rhs: &'a PadicNumber) -> PadicNumber {
                self.$checked(rhs).expect("p-adic context mismatch")
            }
        }
        impl $trait<PadicNumber> for PadicNumber {
            type Output = PadicNumber;
            fn $method(self, rhs: PadicNumber) -> PadicNumber {
                (&self).$checked(&rhs).expect("p-adic context mismatch")
            }
        }
    };
}
forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &PadicNumber {
    type Output = PadicNumber;
    fn neg(self) -> PadicNumber {
        self.neg_ref()
    }
}

impl Neg for PadicNumber {
    type Output = PadicNumber;
    fn neg(self) -> PadicNumber {
        self.neg_ref()
    }
}

impl Ring for PadicNumber {
    fn zero_like(&self) -> Self {
        Self::zero_in(&self.ctx)
    }
    fn one_like(&self) -> Self {
        self.ctx.one()
    }
    fn ring_is_zero(&self) -> bool {
        self.valuation.is_none()
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
        self.neg_ref()
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Self::from_i64(&self.ctx, n)
    }
}

/// The (p-1)-st root of unity congruent to `a` modulo p, to working precision.
pub fn teichmuller(ctx: &PadicContext, a: i64) -> Result<PadicNumber> {
    let p = ctx.p() as i64;
    if a.rem_euclid(p) == 0 {
        return Err(Error::ZeroResidue);
    }
    // x -> x^p is a contraction on the residue class of a; N steps reach the fixed point.
    let m = ctx.modulus();
    let mut x = BigInt::from(a).mod_floor(m);
    let pb = ctx.prime();
    for _ in 0..ctx.precision() {
        x = x.modpow(&pb, m);
    }
    Ok(PadicNumber::from_bigint(ctx, &x))
}

/// Valuation of a nonzero rational at p (exact, no precision involved).
pub fn rational_valuation(r: &BigRational, p: u64) -> Option<i64> {
    if r.is_zero() {
        return None;
    }
    let (a, _) = split_p(&r.numer().abs(), p);
    let (b, _) = split_p(&r.denom().abs(), p);
    Some(a as i64 - b as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, n: u32) -> PadicContext {
        PadicContext::new(p, n).unwrap()
    }

    #[test]
    fn two_plus_three_is_five() {
        let c = ctx(5, 4);
        let s = &c.int(2) + &c.int(3);
        assert_eq!(s.valuation(), Some(1));
        assert_eq!(s.unit_part(), &BigInt::from(1));
    }

    #[test]
    fn inverse_of_two_mod_625() {
        let c = ctx(5, 4);
        let inv = c.int(2).inv().unwrap();
        assert_eq!(inv.residue().unwrap(), BigInt::from(313));
        assert_eq!(&inv * &c.int(2), c.one());
    }

    #[test]
    fn valuation_of_fifty() {
        let c = ctx(5, 8);
        let x = c.int(50);
        assert_eq!(x.valuation(), Some(2));
        assert_eq!(x.unit_part(), &BigInt::from(2));
    }

    #[test]
    fn teichmuller_examples() {
        let c = ctx(5, 3);
        assert_eq!(teichmuller(&c, 1).unwrap(), c.one());
        let t = teichmuller(&c, 2).unwrap();
        assert_eq!(t.residue().unwrap(), BigInt::from(57));
        let c3 = ctx(3, 20);
        assert_eq!(teichmuller(&c3, 2).unwrap(), c3.int(-1));
        assert_eq!(teichmuller(&c, 10), Err(Error::ZeroResidue));
    }

    #[test]
    fn context_validation() {
        assert!(PadicContext::new(2, 4).is_err());
        assert!(PadicContext::new(9, 4).is_err());
        assert!(PadicContext::new(7, 0).is_err());
    }

    #[test]
    fn zero_at_precision_is_distinguished() {
        let c = ctx(3, 4);
        let z = c.int(81);
        assert!(z.is_zero());
        assert_eq!(z.inv(), Err(Error::DivisionByZeroAtPrecision));
        // p^3 is not zero at N = 4
        assert_eq!(c.int(27).valuation(), Some(3));
    }

    #[test]
    fn mismatched_contexts() {
        let a = ctx(3, 4).int(1);
        let b = ctx(5, 4).int(1);
        assert_eq!(a.try_add(&b), Err(Error::ContextMismatch));
        assert_eq!(a.try_mul(&b), Err(Error::ContextMismatch));
    }

    #[test]
    fn negative_valuation_from_rational() {
        let c = ctx(5, 6);
        let x = PadicNumber::from_rational(&c, &BigRational::new(7.into(), 25.into()));
        assert_eq!(x.valuation(), Some(-2));
        let back = &x * &c.int(25);
        assert_eq!(back, c.int(7));
    }
}
