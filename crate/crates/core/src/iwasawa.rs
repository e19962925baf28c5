//! Truncated power series over `Z_p` (the one-variable Iwasawa algebra),
//! Weierstrass preparation, and reduction to finite layers.

use crate::error::{Error, Result};
use crate::padic::{mod_inverse, PadicContext, PadicNumber};
use crate::poly::ZpPoly;
use crate::ring::Ring;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;

/// Element of `Z_p[[S]]` known modulo `(p^N, S^M)`.
#[derive(Clone)]
pub struct IwasawaSeries {
    ctx: PadicContext,
    /// Residues in `[0, p^N)`, always of length `M`.
    coeffs: Vec<BigInt>,
}

impl PartialEq for IwasawaSeries {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for IwasawaSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(S^{})", self.to_poly(), self.coeffs.len())
    }
}

// series helpers on raw residue vectors

fn ser_mul(a: &[BigInt], b: &[BigInt], len: usize, ctx: &PadicContext) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out.iter().map(|c| ctx.reduce(c)).collect()
}

fn ser_inv(a: &[BigInt], len: usize, ctx: &PadicContext) -> Result<Vec<BigInt>> {
    let a0 = a.first().cloned().unwrap_or_default();
    let inv0 = mod_inverse(&a0, ctx.modulus()).ok_or(Error::DivisionByZeroAtPrecision)?;
    let mut out = vec![BigInt::zero(); len];
    for n in 0..len {
        let mut acc = if n == 0 { BigInt::one() } else { BigInt::zero() };
        for k in 1..=n.min(a.len().saturating_sub(1)) {
            acc -= &a[k] * &out[n - k];
        }
        out[n] = ctx.reduce(&(acc * &inv0));
    }
    Ok(out)
}

impl IwasawaSeries {
    /// Pads or truncates `residues` to length `m`.
    pub fn from_residues(ctx: &PadicContext, m: usize, residues: &[BigInt]) -> Self {
        let coeffs = (0..m)
            .map(|i| residues.get(i).map_or_else(BigInt::zero, |c| ctx.reduce(c)))
            .collect();
        IwasawaSeries { ctx: ctx.clone(), coeffs }
    }

    pub fn from_i64s(ctx: &PadicContext, m: usize, coeffs: &[i64]) -> Self {
        let v: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        Self::from_residues(ctx, m, &v)
    }

    pub fn from_poly(p: &ZpPoly, m: usize) -> Self {
        Self::from_residues(p.context(), m, p.residues())
    }

    /// Coefficients must be integral.
    pub fn from_padics(ctx: &PadicContext, m: usize, coeffs: &[PadicNumber]) -> Result<Self> {
        let mut v = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            if c.context() != ctx {
                return Err(Error::ContextMismatch);
            }
            v.push(c.residue().ok_or(Error::DimensionMismatch(
                "series coefficients must be p-adic integers".into(),
            ))?);
        }
        Ok(Self::from_residues(ctx, m, &v))
    }

    pub fn zero(ctx: &PadicContext, m: usize) -> Self {
        Self::from_residues(ctx, m, &[])
    }

    pub fn one(ctx: &PadicContext, m: usize) -> Self {
        Self::from_residues(ctx, m, &[BigInt::one()])
    }

    pub fn context(&self) -> &PadicContext {
        &self.ctx
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len()
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

    pub fn coeffs(&self) -> Vec<PadicNumber> {
        (0..self.coeffs.len()).map(|i| self.coeff(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Constant term is a unit.
    pub fn is_unit(&self) -> bool {
        self.ctx.residue_valuation(&self.residue(0)) == Some(0)
    }

    /// Minimal coefficient valuation, `None` when zero at precision.
    pub fn mu(&self) -> Option<u32> {
        self.coeffs.iter().filter_map(|c| self.ctx.residue_valuation(c)).min()
    }

    /// The polynomial of degree `< M` with the stored coefficients.
    pub fn to_poly(&self) -> ZpPoly {
        ZpPoly::from_residues(&self.ctx, self.coeffs.clone())
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.ctx != o.ctx {
            return Err(Error::ContextMismatch);
        }
        if self.coeffs.len() != o.coeffs.len() {
            return Err(Error::DimensionMismatch("series truncations differ".into()));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let v: Vec<BigInt> = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self::from_residues(&self.ctx, self.coeffs.len(), &v))
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let v: Vec<BigInt> = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect();
        Ok(Self::from_residues(&self.ctx, self.coeffs.len(), &v))
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(IwasawaSeries {
            ctx: self.ctx.clone(),
            coeffs: ser_mul(&self.coeffs, &o.coeffs, self.coeffs.len(), &self.ctx),
        })
    }

    pub fn neg(&self) -> Self {
        let v: Vec<BigInt> = self.coeffs.iter().map(|c| -c).collect();
        Self::from_residues(&self.ctx, self.coeffs.len(), &v)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let v: Vec<BigInt> = self.coeffs.iter().map(|x| x * c).collect();
        Self::from_residues(&self.ctx, self.coeffs.len(), &v)
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(IwasawaSeries {
            ctx: self.ctx.clone(),
            coeffs: ser_inv(&self.coeffs, self.coeffs.len(), &self.ctx)?,
        })
    }

    /// Value at `S = 0`.
    pub fn constant_term(&self) -> PadicNumber {
        self.coeff(0)
    }

    /// Series text format: `p N M`, then `index valuation unit_part` per coefficient
    /// (`inf 0` marks a coefficient that is zero at precision).
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.ctx.p(), self.ctx.precision(), self.coeffs.len());
        for (i, c) in self.coeffs().iter().enumerate() {
            match c.valuation() {
                None => s.push_str(&format!("{i} inf 0\n")),
                Some(v) => s.push_str(&format!("{i} {v} {}\n", c.unit_part())),
            }
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let head = lines.next().ok_or_else(|| Error::Parse("empty series file".into()))?;
        let h: Vec<&str> = head.split_whitespace().collect();
        if h.len() != 3 {
            return Err(Error::Parse(format!("series header `{head}` must be `p N M`")));
        }
        let num = |s: &str| s.parse::<u64>().map_err(|_| Error::Parse(format!("bad integer `{s}`")));
        let ctx = PadicContext::new(num(h[0])?, num(h[1])? as u32)?;
        let m = num(h[2])? as usize;
        let mut coeffs = vec![BigInt::zero(); m];
        let mut seen = vec![false; m];
        for line in lines {
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 3 {
                return Err(Error::Parse(format!("coefficient line `{line}`")));
            }
            let i = num(f[0])? as usize;
            if i >= m {
                return Err(Error::IndexOutOfRange(format!("coefficient index {i} >= M = {m}")));
            }
            if f[1] != "inf" {
                let v: i64 = f[1].parse().map_err(|_| Error::Parse(format!("valuation `{}`", f[1])))?;
                let u: BigInt = f[2].parse().map_err(|_| Error::Parse(format!("unit `{}`", f[2])))?;
                if v < 0 {
                    return Err(Error::Parse("series coefficients must be integral".into()));
                }
                let x = PadicNumber::from_parts(&ctx, v, &u)?;
                coeffs[i] = x.residue().expect("integral");
            }
            seen[i] = true;
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::Parse(format!("missing coefficient {i}")));
        }
        Ok(IwasawaSeries { ctx, coeffs })
    }

    /// Weierstrass preparation `f = p^mu * P * U`.
    ///
    /// The series is prepared as the polynomial its stored coefficients
    /// define; `P` and `U` are exact modulo `p^(N - mu)`, which is all that
    /// `p^mu * P * U mod p^N` depends on.
    pub fn weierstrass_prepare(&self) -> Result<DistinguishedFactorization> {
        let mu = self.mu().ok_or(Error::AllCoefficientsNonUnit)?;
        let m = self.coeffs.len();
        let wctx = self.ctx.with_precision(self.ctx.precision() - mu)?;
        let pm = self.ctx.p_pow(mu);
        let g: Vec<BigInt> = self.coeffs.iter().map(|c| wctx.reduce(&(c / &pm))).collect();
        let lambda = g
            .iter()
            .position(|c| wctx.residue_valuation(c) == Some(0))
            .expect("some coefficient has valuation mu");
        if lambda == 0 {
            return Ok(DistinguishedFactorization {
                mu,
                poly: ZpPoly::one(&self.ctx),
                unit: Self::from_residues(&self.ctx, m, &g),
            });
        }
        let steps = wctx.precision() as usize;
        let width = m + steps * lambda;
        let g_low = &g[..lambda];
        let g_high = &g[lambda..];
        let h = ser_inv(g_high, width, &wctx)?;
        // Fixed point of q = h * (1 - tau(g_low * q)); tau drops the first
        // lambda coefficients. Each pass gains one p-adic digit and loses
        // lambda trustworthy S-coefficients at the top.
        let mut q = h.clone();
        let mut len = width;
        for _ in 0..steps {
            let t = ser_mul(g_low, &q, len, &wctx);
            let next = len - lambda;
            let mut rhs: Vec<BigInt> = (0..next).map(|i| -&t[i + lambda]).collect();
            rhs[0] += 1;
            q = ser_mul(&h[..next], &rhs, next, &wctx);
            len = next;
        }
        debug_assert_eq!(len, m);
        let low = ser_mul(g_low, &q, lambda, &wctx);
        let mut pc = low;
        pc.push(BigInt::one());
        let unit = ser_inv(&q, m, &wctx)?;
        Ok(DistinguishedFactorization {
            mu,
            poly: ZpPoly::from_residues(&self.ctx, pc),
            unit: Self::from_residues(&self.ctx, m, &unit),
        })
    }
}

impl Ring for IwasawaSeries {
    fn zero_like(&self) -> Self {
        Self::zero(&self.ctx, self.coeffs.len())
    }
    fn one_like(&self) -> Self {
        Self::one(&self.ctx, self.coeffs.len())
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        self.try_add(rhs).expect("series shapes agree")
    }
    fn ring_sub(&self, rhs: &Self) -> Self {
        self.try_sub(rhs).expect("series shapes agree")
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self.try_mul(rhs).expect("series shapes agree")
    }
    fn ring_neg(&self) -> Self {
        self.neg()
    }
}

/// `p^mu * poly * unit`, `poly` distinguished, `unit` invertible.
#[derive(Clone, Debug, PartialEq)]
pub struct DistinguishedFactorization {
    pub mu: u32,
    pub poly: ZpPoly,
    pub unit: IwasawaSeries,
}

impl DistinguishedFactorization {
    pub fn lambda(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }

    pub fn reconstruct(&self) -> IwasawaSeries {
        let m = self.unit.truncation();
        let p = IwasawaSeries::from_poly(&self.poly, m);
        p.try_mul(&self.unit).expect("same shape").scale(&self.unit.context().p_pow(self.mu))
    }
}

/// The finite layer `B_k = Z_p[[S]] / ((1+S)^(p^k) - 1)`.
#[derive(Clone, Debug)]
pub struct LayerRing {
    k: u32,
    modulus: ZpPoly,
}

impl LayerRing {
    pub fn new(ctx: &PadicContext, k: u32) -> Self {
        let e = (ctx.p() as usize).pow(k);
        LayerRing { k, modulus: ZpPoly::omega(ctx, e) }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `p^k`, the `Z_p`-rank of the layer.
    pub fn rank(&self) -> usize {
        self.modulus.degree().expect("nonzero modulus")
    }

    pub fn modulus(&self) -> &ZpPoly {
        &self.modulus
    }

    pub fn reduce(&self, f: &ZpPoly) -> ZpPoly {
        f.rem(&self.modulus).expect("monic modulus")
    }

    pub fn mul(&self, a: &ZpPoly, b: &ZpPoly) -> ZpPoly {
        self.reduce(&a.mul(b))
    }

    pub fn reduce_series(&self, f: &IwasawaSeries) -> Result<ZpPoly> {
        let need = self.rank();
        if f.truncation() < need {
            return Err(Error::TruncationTooSmall { have: f.truncation(), need });
        }
        Ok(self.reduce(&f.to_poly()))
    }
}

/// Image of `f` in `B_k`, as a polynomial of degree `< p^k`.
pub fn layer_reduce(f: &IwasawaSeries, k: u32) -> Result<ZpPoly> {
    LayerRing::new(f.context(), k).reduce_series(f)
}
