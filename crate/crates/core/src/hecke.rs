//! Hecke and Frobenius polynomials under symmetric-power transfer and
//! cyclic base change.

use crate::error::{Error, Result};
use crate::poly::RatPoly;
use crate::report::{Report, Tally};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn qint(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn alt(i: usize) -> BigRational {
    if i % 2 == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// `X^n - T_1 X^{n-1} + ... + (-1)^i N^{i(i-1)/2} T_i X^{n-i} + ... + (-1)^n N^{n(n-1)/2} T_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct HeckeCharPoly {
    pub n: usize,
    pub norm: BigInt,
    /// `T_1, ..., T_n`
    pub t: Vec<BigRational>,
}

fn norm_power(norm: &BigInt, i: usize) -> BigRational {
    qint(norm.pow((i * i.saturating_sub(1) / 2) as u32))
}

impl HeckeCharPoly {
    pub fn to_poly(&self) -> RatPoly {
        let mut c = vec![BigRational::zero(); self.n + 1];
        c[self.n] = BigRational::one();
        for (i, ti) in self.t.iter().enumerate().map(|(i, t)| (i + 1, t)) {
            c[self.n - i] = alt(i) * norm_power(&self.norm, i) * ti;
        }
        RatPoly::new(c)
    }

    pub fn from_poly(p: &RatPoly, norm: &BigInt) -> Result<Self> {
        let n = p.degree().ok_or(Error::NotMonic)?;
        if !p.is_monic() {
            return Err(Error::NotMonic);
        }
        let t = (1..=n).map(|i| alt(i) * p.coeff(n - i) / norm_power(norm, i)).collect();
        Ok(HeckeCharPoly { n, norm: norm.clone(), t })
    }

    /// Base change along a cyclic extension of residue degree `f`: roots are
    /// raised to the `f`-th power and the norm becomes `N^f`.
    pub fn base_change(&self, f: usize) -> Result<Self> {
        Self::from_poly(&base_change_adams(&self.to_poly(), f)?, &self.norm.pow(f as u32))
    }
}

/// Elementary symmetric polynomials `e_0..e_n` of `roots`.
pub fn elementary_symmetric(roots: &[BigRational]) -> Vec<BigRational> {
    let mut e = vec![BigRational::one()];
    for r in roots {
        let mut next = e.clone();
        next.push(BigRational::zero());
        for i in 1..next.len() {
            next[i] += r * &e[i - 1];
        }
        e = next;
    }
    e
}

/// Characteristic polynomial of `Sym^{n-1}` of `diag(alpha, beta)`, with
/// `T_i = e_i({alpha^{n-1-j} beta^j}) / N^{i(i-1)/2}`.
pub fn sym_transfer(alpha: &BigRational, beta: &BigRational, n: usize, norm: &BigInt) -> Result<HeckeCharPoly> {
    if n == 0 {
        return Err(Error::IndexOutOfRange("n must be at least 1".into()));
    }
    if norm < &BigInt::from(2) {
        return Err(Error::IndexOutOfRange(format!("norm {norm} < 2")));
    }
    let e = elementary_symmetric(&sym_roots(alpha, beta, n));
    let t = (1..=n).map(|i| &e[i] / norm_power(norm, i)).collect();
    Ok(HeckeCharPoly { n, norm: norm.clone(), t })
}

/// `alpha^{n-1-j} beta^j`, `j = 0..n-1`.
pub fn sym_roots(alpha: &BigRational, beta: &BigRational, n: usize) -> Vec<BigRational> {
    (0..n).map(|j| num_traits::pow(alpha.clone(), n - 1 - j) * num_traits::pow(beta.clone(), j)).collect()
}

/// Power sums `p_1..p_m` of the roots of a monic polynomial (Newton).
fn power_sums(e: &[BigRational], m: usize) -> Vec<BigRational> {
    let n = e.len() - 1;
    let ek = |i: usize| if i <= n { e[i].clone() } else { BigRational::zero() };
    let mut p = vec![BigRational::zero(); m + 1];
    for k in 1..=m {
        let mut s = alt(k - 1) * qint(k) * ek(k);
        for i in 1..k {
            s += alt(i - 1) * ek(i) * &p[k - i];
        }
        p[k] = s;
    }
    p
}

/// The monic polynomial whose roots are the `f`-th powers of the roots of `p`,
/// through power sums, without factoring.
pub fn base_change_adams(p: &RatPoly, f: usize) -> Result<RatPoly> {
    let n = p.degree().ok_or(Error::NotMonic)?;
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    if f == 0 {
        return Err(Error::IndexOutOfRange("residue degree must be at least 1".into()));
    }
    let e: Vec<BigRational> = (0..=n).map(|i| alt(i) * p.coeff(n - i)).collect();
    let ps = power_sums(&e, n * f);
    let q: Vec<BigRational> = (0..=n).map(|k| ps[k * f].clone()).collect();
    let mut e2 = vec![BigRational::one()];
    for m in 1..=n {
        let mut s = BigRational::zero();
        for i in 1..=m {
            s += alt(i - 1) * &e2[m - i] * &q[i];
        }
        e2.push(s / qint(m));
    }
    Ok(RatPoly::new((0..=n).map(|k| alt(n - k) * &e2[n - k]).collect()))
}

/// Frobenius data at `p` for an ordinary representation, single embedding.
#[derive(Clone, Debug, PartialEq)]
pub struct OrdinaryFrobData {
    /// `u_1, ..., u_n`; `u_0 = 1`.
    pub u: Vec<BigRational>,
    /// `lambda_1, ..., lambda_n`
    pub lambda: Vec<i64>,
    pub norm: BigInt,
    pub varpi: BigRational,
}

impl OrdinaryFrobData {
    /// With the normalizations `u_n = 1` and `lambda_n = 0`, from
    /// `u_1..u_{n-1}` and `lambda_1..lambda_{n-1}`.
    pub fn normalized(u: &[BigRational], lambda: &[i64], norm: &BigInt, varpi: &BigRational) -> Result<Self> {
        if u.len() != lambda.len() {
            return Err(Error::DimensionMismatch("u and lambda lengths differ".into()));
        }
        let mut u = u.to_vec();
        u.push(BigRational::one());
        let mut lambda = lambda.to_vec();
        lambda.push(0);
        Ok(OrdinaryFrobData { u, lambda, norm: norm.clone(), varpi: varpi.clone() })
    }

    pub fn n(&self) -> usize {
        self.u.len()
    }

    /// `N^{j-1} (u_j / u_{j-1}) varpi^{lambda_{n+1-j}}`, `j = 1..n`.
    pub fn roots(&self) -> Result<Vec<BigRational>> {
        let n = self.n();
        if self.lambda.len() != n || n == 0 {
            return Err(Error::DimensionMismatch(format!("{} u-values, {} weights", n, self.lambda.len())));
        }
        if self.u.iter().any(|u| u.is_zero()) || self.varpi.is_zero() {
            return Err(Error::ZeroEigenvalue);
        }
        let mut prev = BigRational::one();
        let mut out = Vec::with_capacity(n);
        for j in 1..=n {
            let w = self.lambda[n - j];
            let vp = num_traits::pow(self.varpi.clone(), w.unsigned_abs() as usize);
            let vp = if w < 0 { vp.recip() } else { vp };
            out.push(qint(self.norm.pow(j as u32 - 1)) * &self.u[j - 1] / &prev * vp);
            prev = self.u[j - 1].clone();
        }
        Ok(out)
    }

    /// `prod_j u_j / u_{j-1} = u_n / u_0`.
    pub fn u_telescope(&self) -> BigRational {
        let mut prev = BigRational::one();
        let mut acc = BigRational::one();
        for u in &self.u {
            acc *= u / &prev;
            prev = u.clone();
        }
        acc
    }
}

pub fn frob_charpoly_at_p(d: &OrdinaryFrobData) -> Result<RatPoly> {
    Ok(RatPoly::from_roots(&d.roots()?))
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        let mut e = 0;
        while (&n % &d).is_zero() {
            n /= &d;
            e += 1;
        }
        if e > 0 {
            primes.push((d.clone(), e));
        }
        d += 1;
    }
    if n > BigInt::one() {
        primes.push((n, 1));
    }
    let mut out = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for x in &out {
            let mut pw = BigInt::one();
            for _ in 0..=e {
                next.push(x * &pw);
                pw *= &p;
            }
        }
        out = next;
    }
    out
}

/// Rational roots with multiplicity, by the rational root test.
pub fn rational_roots(p: &RatPoly) -> Vec<BigRational> {
    let mut coeffs = p.coeffs().to_vec();
    let mut roots = Vec::new();
    while coeffs.first().is_some_and(|c| c.is_zero()) && coeffs.len() > 1 {
        coeffs.remove(0);
        roots.push(BigRational::zero());
    }
    if coeffs.len() <= 1 {
        return roots;
    }
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * qint(lcm.clone())).to_integer()).collect();
    let (lead, constant) = (ints.last().expect("nonempty").clone(), ints[0].clone());
    let mut rest = RatPoly::new(coeffs);
    for num in divisors(&constant) {
        for den in divisors(&lead) {
            for s in [1, -1] {
                let r = BigRational::new(&num * s, den.clone());
                loop {
                    if rest.degree().unwrap_or(0) == 0 || !rest.eval(&r).is_zero() {
                        break;
                    }
                    rest = synthetic_division(&rest, &r);
                    roots.push(r.clone());
                }
            }
        }
    }
    roots.sort();
    roots
}

fn synthetic_division(p: &RatPoly, r: &BigRational) -> RatPoly {
    let c = p.coeffs();
    let n = c.len() - 1;
    let mut q = vec![BigRational::zero(); n];
    let mut acc = BigRational::zero();
    for k in (1..=n).rev() {
        acc = &acc * r + &c[k];
        q[k - 1] = acc.clone();
    }
    RatPoly::new(q)
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    loop {
        let x = BigRational::new(rng.gen_range(-9..=9).into(), rng.gen_range(1..=4).into());
        if !x.is_zero() {
            return x;
        }
    }
}

pub const FUNCTORIALITY_CASES: usize = 30;

/// Functoriality square, Adams composition and root recovery on random data.
pub fn hecke_suite(seed: u64) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new(seed);
    let mut square = Tally::default();
    let mut compose = Tally::default();
    let mut recover = Tally::default();
    for _ in 0..FUNCTORIALITY_CASES {
        let (alpha, beta) = (random_rational(&mut rng), random_rational(&mut rng));
        let n = rng.gen_range(1..=6);
        let f = rng.gen_range(1..=4);
        let g = rng.gen_range(1..=3);
        let norm = BigInt::from(rng.gen_range(2..=7));
        let h = sym_transfer(&alpha, &beta, n, &norm)?;
        let lhs = h.base_change(f)?;
        let af = num_traits::pow(alpha.clone(), f);
        let bf = num_traits::pow(beta.clone(), f);
        let rhs = sym_transfer(&af, &bf, n, &norm.pow(f as u32))?;
        square.record(lhs == rhs, || format!("alpha={alpha},beta={beta},n={n},f={f}"));
        let p = h.to_poly();
        let fg = base_change_adams(&p, f * g)?;
        let twice = base_change_adams(&base_change_adams(&p, f)?, g)?;
        compose.record(fg == twice, || format!("f={f},g={g},P={p}"));
        let mut expected = sym_roots(&alpha, &beta, n);
        expected.sort();
        let small = n <= 4 && alpha.numer().abs() <= BigInt::from(5) && beta.numer().abs() <= BigInt::from(5);
        if small {
            recover.record(rational_roots(&p) == expected, || format!("P={p}"));
        }
    }
    report.push(square.line("hecke.functoriality", ""));
    report.push(compose.line("hecke.adams_composition", ""));
    report.push(recover.line("hecke.root_recovery", ""));
    Ok(report)
}
