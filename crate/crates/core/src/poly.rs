//! Dense univariate polynomials: over `Z/p^N` (stand-ins for elements of
//! `Z_p[S]`) and over the rationals.

use crate::error::{Error, Result};
use crate::padic::{mod_inverse, PadicContext, PadicNumber};
use crate::ring::Ring;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Polynomial in `S` with `Z_p` coefficients known modulo `p^N`.
#[derive(Clone)]
pub struct ZpPoly {
    ctx: PadicContext,
    /// Residues in `[0, p^N)`, no trailing zeros.
    coeffs: Vec<BigInt>,
}

impl PartialEq for ZpPoly {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.coeffs == other.coeffs
    }
}

impl ZpPoly {
    pub fn from_residues(ctx: &PadicContext, coeffs: Vec<BigInt>) -> Self {
        let mut coeffs: Vec<BigInt> = coeffs.iter().map(|c| ctx.reduce(c)).collect();
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ZpPoly { ctx: ctx.clone(), coeffs }
    }

    pub fn from_i64s(ctx: &PadicContext, coeffs: &[i64]) -> Self {
        Self::from_residues(ctx, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Coefficients must be `p`-integral.
    pub fn from_rationals(ctx: &PadicContext, coeffs: &[BigRational]) -> Result<Self> {
        let mut out = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            let x = PadicNumber::from_rational(ctx, c);
            out.push(x.residue().ok_or_else(|| {
                Error::Parse(format!("coefficient {c} is not p-integral"))
            })?);
        }
        Ok(Self::from_residues(ctx, out))
    }

    pub fn zero(ctx: &PadicContext) -> Self {
        ZpPoly { ctx: ctx.clone(), coeffs: vec![] }
    }

    pub fn one(ctx: &PadicContext) -> Self {
        Self::constant(ctx, &BigInt::one())
    }

    pub fn constant(ctx: &PadicContext, c: &BigInt) -> Self {
        Self::from_residues(ctx, vec![c.clone()])
    }

    /// `c * S^k`.
    pub fn monomial(ctx: &PadicContext, c: &BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c.clone();
        Self::from_residues(ctx, v)
    }

    /// `(1+S)^e - 1`.
    pub fn omega(ctx: &PadicContext, e: usize) -> Self {
        let mut v = vec![BigInt::zero(); e + 1];
        let mut b = BigInt::one();
        for (i, slot) in v.iter_mut().enumerate() {
            if i > 0 {
                *slot = b.clone();
            }
            b = b * (e - i) / (i + 1);
        }
        Self::from_residues(ctx, v)
    }

    pub fn context(&self) -> &PadicContext {
        &self.ctx
    }

    pub fn residues(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn residue(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn coeff(&self, i: usize) -> PadicNumber {
        PadicNumber::from_bigint(&self.ctx, &self.residue(i))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    /// Minimal coefficient valuation; `None` for the zero polynomial.
    pub fn content_valuation(&self) -> Option<u32> {
        self.coeffs.iter().filter_map(|c| self.ctx.residue_valuation(c)).min()
    }

    /// Distinguished: monic with every lower coefficient divisible by p.
    pub fn is_distinguished(&self) -> bool {
        let Some(d) = self.degree() else { return false };
        self.is_monic() && self.coeffs[..d].iter().all(|c| c.is_multiple_of(&self.ctx.prime()))
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::from_residues(&self.ctx, (0..n).map(|i| self.residue(i) + o.residue(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::from_residues(&self.ctx, (0..n).map(|i| self.residue(i) - o.residue(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::from_residues(&self.ctx, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(&self.ctx);
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::from_residues(&self.ctx, v)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_residues(&self.ctx, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// `S^k * self`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        ZpPoly { ctx: self.ctx.clone(), coeffs: v }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one(&self.ctx);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Division by a polynomial with unit leading coefficient.
    pub fn div_rem(&self, m: &Self) -> Result<(Self, Self)> {
        let d = m.degree().ok_or(Error::DivisionByZeroAtPrecision)?;
        let lead = &m.coeffs[d];
        let inv = mod_inverse(lead, self.ctx.modulus()).ok_or(Error::NotMonic)?;
        let mut r = self.coeffs.clone();
        if r.len() <= d {
            return Ok((Self::zero(&self.ctx), self.clone()));
        }
        let mut q = vec![BigInt::zero(); r.len() - d];
        for i in (d..r.len()).rev() {
            let c = self.ctx.reduce(&(&r[i] * &inv));
            if c.is_zero() {
                continue;
            }
            for (j, mc) in m.coeffs.iter().enumerate() {
                r[i - d + j] -= &c * mc;
            }
            q[i - d] = c;
        }
        r.truncate(d);
        Ok((Self::from_residues(&self.ctx, q), Self::from_residues(&self.ctx, r)))
    }

    pub fn rem(&self, m: &Self) -> Result<Self> {
        Ok(self.div_rem(m)?.1)
    }

    /// Exact division by `p^v`; the result is known modulo `p^(N-v)`.
    pub fn div_p_pow(&self, v: u32, target: &PadicContext) -> Self {
        let pv = self.ctx.p_pow(v);
        Self::from_residues(target, self.coeffs.iter().map(|c| c / &pv).collect())
    }

    /// Coefficient vector of fixed length `d` (for lattice work).
    pub fn to_vec(&self, d: usize) -> Vec<BigInt> {
        (0..d).map(|i| self.residue(i)).collect()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = self.ctx.reduce(&(acc * x + c));
        }
        acc
    }

    pub fn with_context(&self, ctx: &PadicContext) -> Self {
        Self::from_residues(ctx, self.coeffs.clone())
    }
}

fn signed(ctx: &PadicContext, c: &BigInt) -> BigInt {
    if c * 2 > *ctx.modulus() {
        c - ctx.modulus()
    } else {
        c.clone()
    }
}

impl fmt::Debug for ZpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (mod {}^{})", self.ctx.p(), self.ctx.precision())
    }
}

/// Prints with balanced residues, e.g. `S^2 - 9`.
impl fmt::Display for ZpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<BigRational> =
            self.coeffs.iter().map(|c| BigRational::from_integer(signed(&self.ctx, c))).collect();
        write_poly(f, &cs, "S")
    }
}

impl Ring for ZpPoly {
    fn zero_like(&self) -> Self {
        Self::zero(&self.ctx)
    }
    fn one_like(&self) -> Self {
        Self::one(&self.ctx)
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn ring_sub(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn ring_neg(&self) -> Self {
        self.neg()
    }
}

// ---------------------------------------------------------------------------

/// Polynomial over the rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn one() -> Self {
        Self::new(vec![BigRational::one()])
    }

    /// `prod (X - r)`.
    pub fn from_roots(roots: &[BigRational]) -> Self {
        let mut p = Self::one();
        for r in roots {
            p = p.mul(&Self::new(vec![-r.clone(), BigRational::one()]));
        }
        p
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Self::new(vec![]);
        }
        let mut v = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::new(v)
    }

    pub fn derivative(&self) -> Self {
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Text format: degree on the first line, then one `num/den` per line, low to high.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.degree().map_or(-1, |d| d as i64));
        for c in &self.coeffs {
            s.push_str(&format!("{}/{}\n", c.numer(), c.denom()));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let head = lines.next().ok_or_else(|| Error::Parse("empty polynomial file".into()))?;
        let deg: i64 = head.parse().map_err(|_| Error::Parse(format!("bad degree `{head}`")))?;
        let coeffs = lines.map(parse_rational).collect::<Result<Vec<_>>>()?;
        if coeffs.len() as i64 != deg + 1 {
            return Err(Error::Parse(format!(
                "degree {deg} needs {} coefficients, found {}",
                deg + 1,
                coeffs.len()
            )));
        }
        Ok(Self::new(coeffs))
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.coeffs, "X")
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, cs: &[BigRational], var: &str) -> fmt::Result {
    let mut first = true;
    for (i, c) in cs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        let body = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if body.is_empty() {
            write!(f, "{a}")?;
        } else if a.is_one() {
            write!(f, "{body}")?;
        } else if a.is_integer() {
            write!(f, "{a}{body}")?;
        } else {
            write!(f, "({a}){body}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Parses a polynomial literal in one variable, low-to-high coefficients.
///
/// Accepts terms like `3`, `-5x`, `x2` (= `x^2`), `2*S^3`, `1/2X`. Any single
/// ASCII letter is taken as the variable.
pub fn parse_poly_literal(s: &str) -> Result<Vec<BigRational>> {
    let src: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = |m: &str| Error::Parse(format!("polynomial literal `{s}`: {m}"));
    if src.is_empty() {
        return Err(bad("empty"));
    }
    let mut coeffs: Vec<BigRational> = Vec::new();
    let mut var: Option<char> = None;
    let mut i = 0;
    while i < src.len() {
        let mut sign = BigRational::one();
        while i < src.len() && (src[i] == '+' || src[i] == '-') {
            if src[i] == '-' {
                sign = -sign;
            }
            i += 1;
        }
        let start = i;
        while i < src.len() && (src[i].is_ascii_digit() || src[i] == '/') {
            i += 1;
        }
        let num: String = src[start..i].iter().collect();
        let mut c = if num.is_empty() { BigRational::one() } else { parse_rational(&num)? };
        if i < src.len() && src[i] == '*' {
            i += 1;
        }
        let mut exp = 0usize;
        if i < src.len() && src[i].is_ascii_alphabetic() {
            let v = src[i].to_ascii_lowercase();
            if var.is_some_and(|w| w != v) {
                return Err(bad("more than one variable"));
            }
            var = Some(v);
            i += 1;
            if i < src.len() && src[i] == '^' {
                i += 1;
            }
            let es = i;
            while i < src.len() && src[i].is_ascii_digit() {
                i += 1;
            }
            exp = if es == i {
                1
            } else {
                src[es..i].iter().collect::<String>().parse().map_err(|_| bad("exponent"))?
            };
        } else if num.is_empty() {
            return Err(bad("empty term"));
        }
        if i < src.len() && src[i] != '+' && src[i] != '-' {
            return Err(bad(&format!("unexpected `{}`", src[i])));
        }
        c *= sign;
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, BigRational::zero());
        }
        coeffs[exp] += c;
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    Ok(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{q, qi};

    #[test]
    fn literal_forms() {
        assert_eq!(parse_poly_literal("x2-5x+6").unwrap(), vec![qi(6), qi(-5), qi(1)]);
        assert_eq!(parse_poly_literal("S^2 - 9").unwrap(), vec![qi(-9), qi(0), qi(1)]);
        assert_eq!(parse_poly_literal("1/2*S+3").unwrap(), vec![qi(3), q(1, 2)]);
        assert_eq!(parse_poly_literal("-S").unwrap(), vec![qi(0), qi(-1)]);
        assert!(parse_poly_literal("x+y").is_err());
        assert!(parse_poly_literal("3)").is_err());
    }

    #[test]
    fn display_matches_cli_form() {
        let p = RatPoly::from_i64s(&[36, -13, 1]);
        assert_eq!(p.to_string(), "X^2 - 13X + 36");
        assert_eq!(RatPoly::new(vec![q(1, 2), qi(-1)]).to_string(), "-X + 1/2");
        let ctx = PadicContext::new(3, 5).unwrap();
        assert_eq!(ZpPoly::from_i64s(&ctx, &[-9, 0, 1]).to_string(), "S^2 - 9");
    }

    #[test]
    fn division_by_omega() {
        let ctx = PadicContext::new(3, 8).unwrap();
        let w = ZpPoly::omega(&ctx, 3);
        assert_eq!(w, ZpPoly::from_i64s(&ctx, &[0, 3, 3, 1]));
        let f = ZpPoly::from_i64s(&ctx, &[0, 0, 1]);
        assert_eq!(f.rem(&w).unwrap(), f);
        let g = w.mul(&ZpPoly::from_i64s(&ctx, &[2, 1, 7]));
        assert!(g.rem(&w).unwrap().is_zero());
    }

    #[test]
    fn text_round_trip() {
        let p = RatPoly::new(vec![q(-3, 4), qi(0), qi(5)]);
        assert_eq!(RatPoly::from_text(&p.to_text()).unwrap(), p);
    }
}
