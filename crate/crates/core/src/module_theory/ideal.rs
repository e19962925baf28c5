//! Ideals of the two desk rings: the discrete valuation ring `Z_p` and the
//! Iwasawa algebra `Z_p[[S]]` (generated by polynomials).

use crate::error::{Error, Result};
use crate::iwasawa::IwasawaSeries;
use crate::linalg::{Matrix, ZpLattice};
use crate::padic::{PadicContext, PadicNumber};
use crate::poly::ZpPoly;
use num_bigint::BigInt;
use num_traits::Zero;
use std::fmt;

/// Fractional ideal `(p^v)` of `Z_p`, or the zero ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DvrIdeal {
    p: u64,
    valuation: Option<i64>,
}

impl DvrIdeal {
    pub fn from_valuation(p: u64, valuation: Option<i64>) -> Self {
        DvrIdeal { p, valuation }
    }

    pub fn unit(p: u64) -> Self {
        Self::from_valuation(p, Some(0))
    }

    pub fn zero(p: u64) -> Self {
        Self::from_valuation(p, None)
    }

    pub fn generated_by(p: u64, gens: &[PadicNumber]) -> Self {
        Self::from_valuation(p, gens.iter().filter_map(|g| g.valuation()).min())
    }

    pub fn valuation(&self) -> Option<i64> {
        self.valuation
    }

    pub fn is_zero(&self) -> bool {
        self.valuation.is_none()
    }

    pub fn is_unit(&self) -> bool {
        self.valuation == Some(0)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let v = match (self.valuation, o.valuation) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        Self::from_valuation(self.p, v)
    }

    pub fn add(&self, o: &Self) -> Self {
        let v = match (self.valuation, o.valuation) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, None) => a,
            (None, b) => b,
        };
        Self::from_valuation(self.p, v)
    }

    /// `self ⊇ o`.
    pub fn contains(&self, o: &Self) -> bool {
        match (self.valuation, o.valuation) {
            (_, None) => true,
            (None, Some(_)) => false,
            (Some(a), Some(b)) => a <= b,
        }
    }

    /// Image in `Z/p^e`, recorded as a valuation capped at `e`.
    pub fn reduce_mod_power(&self, e: i64) -> i64 {
        self.valuation.map_or(e, |v| v.min(e))
    }
}

impl fmt::Display for DvrIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.valuation {
            None => write!(f, "(0)"),
            Some(0) => write!(f, "(1)"),
            Some(1) => write!(f, "({})", self.p),
            Some(v) => write!(f, "({}^{v})", self.p),
        }
    }
}

/// Principal ideal of `Z_p[[S]]` in Weierstrass normal form `(p^mu * P)`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassIdeal {
    pub mu: u32,
    pub poly: ZpPoly,
}

impl WeierstrassIdeal {
    pub fn lambda(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }

    /// Same `mu` and same distinguished polynomial at the common precision.
    pub fn agrees_with(&self, o: &Self) -> bool {
        let (a, b) = (self.poly.context(), o.poly.context());
        let ctx = if a.precision() <= b.precision() { a } else { b };
        self.mu == o.mu && self.poly.with_context(ctx) == o.poly.with_context(ctx)
    }

    /// Valuation of the generator at `S = 0`; `None` when `S` divides it.
    pub fn valuation_at_zero(&self) -> Option<i64> {
        let c = self.poly.context().residue_valuation(&self.poly.residue(0))?;
        Some(self.mu as i64 + c as i64)
    }
}

impl fmt::Display for WeierstrassIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.poly.context().p();
        match self.mu {
            0 => write!(f, "({})", self.poly),
            1 => write!(f, "({p}*({}))", self.poly),
            m => write!(f, "({p}^{m}*({}))", self.poly),
        }
    }
}

/// Weierstrass data of a nonzero polynomial, viewed in `Z_p[[S]]`.
pub fn prepare_poly(g: &ZpPoly) -> Result<WeierstrassIdeal> {
    let m = g.degree().ok_or(Error::AllCoefficientsNonUnit)? + 1;
    let w = IwasawaSeries::from_poly(g, m).weierstrass_prepare()?;
    let ctx = g.context();
    let known = ctx.with_precision(ctx.precision() - w.mu)?;
    Ok(WeierstrassIdeal { mu: w.mu, poly: w.poly.with_context(&known) })
}

/// Ideal of `Z_p[[S]]` generated by finitely many polynomials.
///
/// Membership is decided exactly: after dividing out the common `p`-power,
/// some generator `h` is `P_h` times a unit, so the question lives in the
/// free `Z_p`-module `Z_p[S]/(P_h)` of rank `deg P_h`.
#[derive(Clone, Debug)]
pub struct IwasawaIdeal {
    ctx: PadicContext,
    gens: Vec<ZpPoly>,
}

/// The image of an ideal in `Z_p[S]/(P)`, `P` distinguished.
struct Reduction {
    ctx: PadicContext,
    mu0: u32,
    poly: ZpPoly,
    lattice_gens: Vec<Vec<BigInt>>,
}

impl Reduction {
    fn lambda(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }

    fn image(&self, g: &ZpPoly) -> Vec<BigInt> {
        g.rem(&self.poly).expect("monic").to_vec(self.lambda())
    }
}

impl IwasawaIdeal {
    pub fn new(ctx: &PadicContext, gens: Vec<ZpPoly>) -> Self {
        IwasawaIdeal { ctx: ctx.clone(), gens: gens.into_iter().filter(|g| !g.is_zero()).collect() }
    }

    pub fn from_series(ctx: &PadicContext, gens: &[IwasawaSeries]) -> Self {
        Self::new(ctx, gens.iter().map(IwasawaSeries::to_poly).collect())
    }

    pub fn unit(ctx: &PadicContext) -> Self {
        Self::new(ctx, vec![ZpPoly::one(ctx)])
    }

    pub fn zero(ctx: &PadicContext) -> Self {
        Self::new(ctx, vec![])
    }

    pub fn context(&self) -> &PadicContext {
        &self.ctx
    }

    pub fn generators(&self) -> &[ZpPoly] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut g = self.gens.clone();
        g.extend(o.gens.iter().cloned());
        Self::new(&self.ctx, g)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut g = Vec::with_capacity(self.gens.len() * o.gens.len());
        for a in &self.gens {
            for b in &o.gens {
                g.push(a.mul(b));
            }
        }
        Self::new(&self.ctx, g)
    }

    /// Minimal `mu`: the order of the ideal at the height-one prime `(p)`.
    pub fn ord_p(&self) -> Option<u32> {
        self.gens.iter().filter_map(ZpPoly::content_valuation).min()
    }

    /// Order at the height-one prime `(q)`, `q` distinguished and irreducible.
    pub fn ord_at(&self, q: &ZpPoly) -> Result<Option<usize>> {
        if !q.is_distinguished() {
            return Err(Error::NotMonic);
        }
        let mut best: Option<usize> = None;
        for g in &self.gens {
            let w = prepare_poly(g)?;
            let q_here = q.with_context(w.poly.context());
            let mut e = 0;
            let mut rest = w.poly.clone();
            while rest.degree().unwrap_or(0) >= q_here.degree().unwrap_or(0) {
                let (quo, rem) = rest.div_rem(&q_here)?;
                if !rem.is_zero() {
                    break;
                }
                rest = quo;
                e += 1;
            }
            best = Some(best.map_or(e, |b: usize| b.min(e)));
        }
        Ok(best)
    }

    /// Image under `S -> 0`, an ideal of `Z_p`.
    pub fn at_s_zero(&self) -> DvrIdeal {
        let gens: Vec<PadicNumber> = self.gens.iter().map(|g| g.coeff(0)).collect();
        DvrIdeal::generated_by(self.ctx.p(), &gens)
    }

    /// Image in `F_p[[S]]`, a power of `S`; `None` for the zero ideal.
    pub fn mod_p_order(&self) -> Option<usize> {
        let p = self.ctx.prime();
        self.gens
            .iter()
            .filter_map(|g| g.residues().iter().position(|c| !(c % &p).is_zero()))
            .min()
    }

    fn reduction(&self) -> Result<Option<Reduction>> {
        let Some(mu0) = self.ord_p() else { return Ok(None) };
        let ctx = self.ctx.with_precision(self.ctx.precision() - mu0)?;
        let scaled: Vec<ZpPoly> = self.gens.iter().map(|g| g.div_p_pow(mu0, &ctx)).collect();
        let mut best: Option<WeierstrassIdeal> = None;
        for g in scaled.iter().filter(|g| g.content_valuation() == Some(0)) {
            let w = prepare_poly(g)?;
            if best.as_ref().map_or(true, |b| w.lambda() < b.lambda()) {
                best = Some(w);
            }
        }
        let poly = best.expect("some generator has content zero").poly;
        let lambda = poly.degree().unwrap_or(0);
        let s = ZpPoly::monomial(&ctx, &BigInt::from(1), 1);
        let mut lattice_gens = Vec::new();
        for g in &scaled {
            let mut r = g.rem(&poly)?;
            for _ in 0..lambda {
                lattice_gens.push(r.to_vec(lambda));
                r = s.mul(&r).rem(&poly)?;
            }
        }
        Ok(Some(Reduction { ctx, mu0, poly, lattice_gens }))
    }

    pub fn contains_element(&self, g: &ZpPoly) -> Result<bool> {
        if g.is_zero() {
            return Ok(true);
        }
        let Some(red) = self.reduction()? else { return Ok(false) };
        let mu_g = g.content_valuation().expect("nonzero");
        if mu_g < red.mu0 {
            return Ok(false);
        }
        if red.lambda() == 0 {
            return Ok(true);
        }
        let image = red.image(&g.div_p_pow(red.mu0, &red.ctx));
        Ok(ZpLattice::span(&red.ctx, red.lambda(), &red.lattice_gens).contains(&image))
    }

    /// `self ⊇ o`.
    pub fn contains(&self, o: &Self) -> Result<bool> {
        for g in &o.gens {
            if !self.contains_element(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, o: &Self) -> Result<bool> {
        Ok(self.contains(o)? && o.contains(self)?)
    }

    /// Membership after inverting `p`. The saturation test accepts `g` when
    /// `p^(N'/2) g` lies in the image lattice, `N'` the working precision.
    pub fn contains_after_inverting_p(&self, g: &ZpPoly) -> Result<bool> {
        if g.is_zero() {
            return Ok(true);
        }
        let Some(red) = self.reduction()? else { return Ok(false) };
        if red.lambda() == 0 {
            return Ok(true);
        }
        let mu_g = g.content_valuation().expect("nonzero");
        let top = red.mu0.max(mu_g);
        let ctx = self.ctx.with_precision(self.ctx.precision() - top)?;
        let lattice_gens: Vec<Vec<BigInt>> = red
            .lattice_gens
            .iter()
            .map(|v| v.iter().map(|x| ctx.reduce(x)).collect())
            .collect();
        let poly = red.poly.with_context(&ctx);
        let image = g.div_p_pow(mu_g, &ctx).rem(&poly)?.to_vec(red.lambda());
        let k = ctx.precision() / 2;
        let shifted: Vec<BigInt> = image.iter().map(|x| x * ctx.p_pow(k)).collect();
        Ok(ZpLattice::span(&ctx, red.lambda(), &lattice_gens).contains(&shifted))
    }

    pub fn equals_after_inverting_p(&self, o: &Self) -> Result<bool> {
        for g in &o.gens {
            if !self.contains_after_inverting_p(g)? {
                return Ok(false);
            }
        }
        for g in &self.gens {
            if !o.contains_after_inverting_p(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The reflexive envelope `p^mu * D`, `D` the greatest common
    /// distinguished divisor of the generators. `D` is the monic element of
    /// least degree in the image of the ideal in `Q_p[S]/(P_h)`; it comes back
    /// at the precision that survives the elimination.
    pub fn reflexive_envelope(&self) -> Result<WeierstrassIdeal> {
        let red = self.reduction()?.ok_or(Error::NotTorsion)?;
        let lambda = red.lambda();
        if lambda == 0 {
            return Ok(WeierstrassIdeal { mu: red.mu0, poly: ZpPoly::one(&self.ctx) });
        }
        // Columns ordered from the top degree down so the last pivot row is D.
        let rows: Vec<Vec<PadicNumber>> = red
            .lattice_gens
            .iter()
            .map(|v| (0..lambda).rev().map(|d| PadicNumber::from_bigint(&red.ctx, &v[d])).collect())
            .collect();
        let m = Matrix::from_rows(rows)?;
        let (echelon, loss) = crate::linalg::padic_row_echelon(&m);
        let dim = echelon.len();
        let d = lambda - dim;
        if dim == 0 {
            return Ok(WeierstrassIdeal { mu: red.mu0, poly: red.poly });
        }
        let digits = red.ctx.precision() as i64 - loss;
        if digits < 1 {
            return Err(Error::DivisionByZeroAtPrecision);
        }
        let out_ctx = red.ctx.with_precision(digits as u32)?;
        let row = echelon.last().expect("nonempty");
        let mut coeffs = vec![BigInt::zero(); d + 1];
        for (col, x) in row.iter().enumerate() {
            let deg = lambda - 1 - col;
            if deg <= d {
                coeffs[deg] = x.residue().ok_or(Error::DivisionByZeroAtPrecision)?;
            }
        }
        Ok(WeierstrassIdeal { mu: red.mu0, poly: ZpPoly::from_residues(&out_ctx, coeffs) })
    }
}

impl fmt::Display for IwasawaIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "(0)");
        }
        let parts: Vec<String> = self.gens.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PadicContext {
        PadicContext::new(3, 20).unwrap()
    }

    fn poly(c: &[i64]) -> ZpPoly {
        ZpPoly::from_i64s(&ctx(), c)
    }

    #[test]
    fn maximal_ideal_membership() {
        let m = IwasawaIdeal::new(&ctx(), vec![poly(&[3]), poly(&[0, 1])]);
        assert!(m.contains_element(&poly(&[3, 1, 5])).unwrap());
        assert!(!m.contains_element(&poly(&[1, 1])).unwrap());
        assert!(m.contains_element(&poly(&[0, 0, 0, 0, 1, 0, 1])).unwrap());
    }

    #[test]
    fn principal_ideal_membership() {
        let i = IwasawaIdeal::new(&ctx(), vec![poly(&[-9, 0, 1])]);
        assert!(i.contains_element(&poly(&[-9, 0, 1]).mul(&poly(&[2, 7, 1]))).unwrap());
        assert!(!i.contains_element(&poly(&[3, 1])).unwrap());
        // unit multiples generate the same ideal
        let j = IwasawaIdeal::new(&ctx(), vec![poly(&[-9, 0, 1]).mul(&poly(&[1, 3]))]);
        assert!(i.equals(&j).unwrap());
    }

    #[test]
    fn localization_at_p() {
        let i = IwasawaIdeal::new(&ctx(), vec![poly(&[9]), poly(&[3, 1])]);
        // (9, S+3) is m-primary, so inverting p makes it the unit ideal
        assert!(i.contains_after_inverting_p(&poly(&[1])).unwrap());
        assert!(!i.contains_element(&poly(&[1])).unwrap());
        let j = IwasawaIdeal::new(&ctx(), vec![poly(&[3, 1]).scale(&BigInt::from(9))]);
        let k = IwasawaIdeal::new(&ctx(), vec![poly(&[3, 1])]);
        assert!(j.equals_after_inverting_p(&k).unwrap());
        assert!(!j.equals(&k).unwrap());
    }

    #[test]
    fn envelope_is_gcd() {
        let a = poly(&[3, 1]).mul(&poly(&[6, 1]));
        let b = poly(&[3, 1]).mul(&poly(&[-3, 1]));
        let i = IwasawaIdeal::new(&ctx(), vec![a.scale(&BigInt::from(3)), b.scale(&BigInt::from(9))]);
        let env = i.reflexive_envelope().unwrap();
        let expected = WeierstrassIdeal { mu: 1, poly: poly(&[3, 1]) };
        assert!(env.agrees_with(&expected), "{env}");
        assert!(env.poly.context().precision() >= 10);
        assert_eq!(i.ord_at(&poly(&[3, 1])).unwrap(), Some(1));
        assert_eq!(i.ord_at(&poly(&[6, 1])).unwrap(), Some(0));
        assert_eq!(i.ord_p(), Some(1));
    }

    #[test]
    fn images() {
        let i = IwasawaIdeal::new(&ctx(), vec![poly(&[9, 1]), poly(&[3, 3, 1])]);
        assert_eq!(i.at_s_zero().valuation(), Some(1));
        assert_eq!(i.mod_p_order(), Some(1));
    }
}
