//! Multivariate truncated power series with integer coefficients, used for
//! the weight algebras `Z_p[[V_1..V_n]] / (prod (1+V_j) = 1)` and the norm
//! maps between their layers.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

/// Series in named variables, truncated at total degree `trunc` (exclusive).
#[derive(Clone, PartialEq, Eq)]
pub struct MultiSeries {
    vars: Vec<String>,
    trunc: u32,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl fmt::Debug for MultiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (v, &k) in self.vars.iter().zip(e) {
                match k {
                    0 => {}
                    1 => write!(f, "*{v}")?,
                    _ => write!(f, "*{v}^{k}")?,
                }
            }
        }
        Ok(())
    }
}

impl MultiSeries {
    pub fn zero(vars: &[String], trunc: u32) -> Self {
        MultiSeries { vars: vars.to_vec(), trunc, terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[String], trunc: u32, c: BigInt) -> Self {
        let mut s = Self::zero(vars, trunc);
        s.insert(vec![0; vars.len()], c);
        s
    }

    pub fn one(vars: &[String], trunc: u32) -> Self {
        Self::constant(vars, trunc, BigInt::one())
    }

    /// The `i`-th variable.
    pub fn var(vars: &[String], trunc: u32, i: usize) -> Self {
        let mut s = Self::zero(vars, trunc);
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        s.insert(e, BigInt::one());
        s
    }

    pub fn by_name(vars: &[String], trunc: u32, name: &str) -> Result<Self> {
        let i = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::var(vars, trunc, i))
    }

    fn insert(&mut self, e: Vec<u32>, c: BigInt) {
        if c.is_zero() || e.iter().sum::<u32>() >= self.trunc {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn truncation(&self) -> u32 {
        self.trunc
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }

    pub fn coeff(&self, e: &[u32]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&vec![0; self.vars.len()])
    }

    fn same_shape(&self, o: &Self) -> Result<()> {
        if self.vars != o.vars || self.trunc != o.trunc {
            return Err(Error::DimensionMismatch("series over different variables".into()));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        let mut s = self.clone();
        for (e, c) in &o.terms {
            s.insert(e.clone(), c.clone());
        }
        Ok(s)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        let mut s = self.clone();
        for c in s.terms.values_mut() {
            *c = -&*c;
        }
        s
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut s = Self::zero(&self.vars, self.trunc);
        for (e, c) in &self.terms {
            s.insert(e.clone(), c * k);
        }
        s
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        let mut s = Self::zero(&self.vars, self.trunc);
        for (ea, ca) in &self.terms {
            let da: u32 = ea.iter().sum();
            for (eb, cb) in &o.terms {
                if da + eb.iter().sum::<u32>() >= self.trunc {
                    continue;
                }
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                s.insert(e, ca * cb);
            }
        }
        Ok(s)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(&self.vars, self.trunc);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same shape");
            }
            base = base.mul(&base).expect("same shape");
            e >>= 1;
        }
        acc
    }

    /// `(1 + h)^{-1}` for `self = 1 + h` with `h` of positive order.
    pub fn inverse_one_plus(&self) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(Error::DivisionByZeroAtPrecision);
        }
        let h = self.sub(&Self::one(&self.vars, self.trunc))?;
        let mut acc = Self::one(&self.vars, self.trunc);
        let mut term = acc.clone();
        let minus_h = h.neg();
        for _ in 1..self.trunc {
            term = term.mul(&minus_h)?;
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Partial derivative in the `i`-th variable (truncation drops by one
    /// in principle; we keep the same `trunc` and the top degree is simply absent).
    pub fn derivative(&self, i: usize) -> Self {
        let mut s = Self::zero(&self.vars, self.trunc);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[i] -= 1;
            s.insert(f, c * e[i]);
        }
        s
    }

    /// Substitutes series `subs[i]` (all sharing a target variable set and
    /// without constant term) for the `i`-th variable.
    pub fn compose(&self, subs: &[MultiSeries]) -> Result<Self> {
        if subs.len() != self.vars.len() {
            return Err(Error::DimensionMismatch("one substitution per variable".into()));
        }
        let Some(first) = subs.first() else {
            return Ok(self.clone());
        };
        let (tv, tt) = (first.vars.clone(), first.trunc);
        if subs.iter().any(|s| !s.constant_term().is_zero()) {
            return Err(Error::DimensionMismatch("substitution with constant term".into()));
        }
        let mut out = Self::zero(&tv, tt);
        let mut powers: Vec<Vec<MultiSeries>> = subs.iter().map(|s| vec![Self::one(&tv, tt), s.clone()]).collect();
        for (e, c) in &self.terms {
            let mut t = Self::constant(&tv, tt, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().mul(&subs[i])?;
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][k as usize])?;
            }
            out = out.add(&t)?;
        }
        Ok(out)
    }

    pub fn rename(&self, vars: Vec<String>) -> Self {
        MultiSeries { vars, trunc: self.trunc, terms: self.terms.clone() }
    }
}

/// Which family of weight variables a presentation uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightVariable {
    X,
    T,
}

impl WeightVariable {
    fn letter(self) -> char {
        match self {
            WeightVariable::X => 'X',
            WeightVariable::T => 'T',
        }
    }
}

pub fn var_name(kind: WeightVariable, k: u32, i: usize) -> String {
    format!("{}_{{{k},{i}}}", kind.letter())
}

/// Parses `X_{k,i}` / `T_{k,i}`.
pub fn parse_var_name(name: &str) -> Option<(WeightVariable, u32, usize)> {
    let kind = match name.chars().next()? {
        'X' => WeightVariable::X,
        'T' => WeightVariable::T,
        _ => return None,
    };
    let inner = name.get(1..)?.strip_prefix("_{")?.strip_suffix('}')?;
    let (k, i) = inner.split_once(',')?;
    Some((kind, k.trim().parse().ok()?, i.trim().parse().ok()?))
}

/// `Z_p[[V_1..V_n]] / (prod (1+V_j) = 1)` at layer `k`, with `V_n` eliminated.
#[derive(Clone, Debug)]
pub struct WeightAlgebraPresentation {
    pub n: usize,
    pub k: u32,
    pub kind: WeightVariable,
    pub trunc: u32,
}

impl WeightAlgebraPresentation {
    pub fn new(n: usize, k: u32, kind: WeightVariable, trunc: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::DimensionMismatch("weight algebra needs n >= 1".into()));
        }
        Ok(WeightAlgebraPresentation { n, k, kind, trunc })
    }

    pub fn generator_names(&self) -> Vec<String> {
        (1..=self.n).map(|i| var_name(self.kind, self.k, i)).collect()
    }

    /// The free variables `V_1..V_{n-1}` after elimination.
    pub fn free_names(&self) -> Vec<String> {
        let mut v = self.generator_names();
        v.pop();
        v
    }

    /// `V_n = prod_{j<n} (1+V_j)^{-1} - 1`.
    pub fn eliminated_last(&self) -> Result<MultiSeries> {
        let names = self.free_names();
        let one = MultiSeries::one(&names, self.trunc);
        let mut prod = one.clone();
        for i in 0..names.len() {
            prod = prod.mul(&one.add(&MultiSeries::var(&names, self.trunc, i))?)?;
        }
        prod.inverse_one_plus()?.sub(&one)
    }

    /// Re-substitutes the eliminated variable into `prod (1+V_j)` and checks it is 1.
    pub fn relation_holds(&self) -> Result<bool> {
        let names = self.free_names();
        let one = MultiSeries::one(&names, self.trunc);
        let mut prod = one.add(&self.eliminated_last()?)?;
        for i in 0..names.len() {
            prod = prod.mul(&one.add(&MultiSeries::var(&names, self.trunc, i))?)?;
        }
        Ok(prod == one)
    }
}

/// The norm map from layer `k` down to layer 0: `1+X_{k,i} -> (1+X_{0,i})^(p^k)`
/// and `1+T_{k,j} -> 1+T_{0,j}`.
pub fn norm_substitute(g: &MultiSeries, k: u32, p: u64) -> Result<MultiSeries> {
    let mut targets = Vec::with_capacity(g.vars.len());
    for v in &g.vars {
        match parse_var_name(v) {
            Some((kind, layer, i)) if layer == k => targets.push((kind, var_name(kind, 0, i))),
            _ => return Err(Error::UnknownVariable(v.clone())),
        }
    }
    let names: Vec<String> = targets.iter().map(|(_, n)| n.clone()).collect();
    let e = p.pow(k);
    let subs = targets
        .iter()
        .enumerate()
        .map(|(i, (kind, _))| {
            let x = MultiSeries::var(&names, g.trunc, i);
            match kind {
                WeightVariable::T => x,
                WeightVariable::X => {
                    let one = MultiSeries::one(&names, g.trunc);
                    let lifted = one.add(&x).expect("same shape").pow(e);
                    lifted.sub(&one).expect("same shape")
                }
            }
        })
        .collect::<Vec<_>>();
    g.compose(&subs)
}

/// The constant `c` with `d log(1 + u) / d log(1 + X_{0,1}) = c` where `u` is
/// the norm image of `X_{k,1}`; `None` if the log-derivative is not constant.
pub fn norm_log_derivative(p: u64, k: u32, trunc: u32) -> Result<Option<BigInt>> {
    let src = [var_name(WeightVariable::X, k, 1)];
    let u = norm_substitute(&MultiSeries::var(&src, trunc, 0), k, p)?;
    let names = u.vars.clone();
    let one = MultiSeries::one(&names, trunc);
    let x = MultiSeries::var(&names, trunc, 0);
    // (1+X) u' = c (1+u), compared below the top degree where u' is incomplete.
    let lhs = one.add(&x)?.mul(&u.derivative(0))?;
    let rhs_unit = one.add(&u)?;
    let c = lhs.constant_term();
    let rhs = rhs_unit.scale(&c);
    let ok = (0..trunc.saturating_sub(1)).all(|d| lhs.coeff(&[d]) == rhs.coeff(&[d]));
    Ok(ok.then_some(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_of_x_at_layer_one() {
        let src = [var_name(WeightVariable::X, 1, 1)];
        let g = MultiSeries::var(&src, 8, 0);
        let out = norm_substitute(&g, 1, 3).unwrap();
        assert_eq!(out.vars(), &[String::from("X_{0,1}")]);
        assert_eq!(out.coeff(&[1]), BigInt::from(3));
        assert_eq!(out.coeff(&[2]), BigInt::from(3));
        assert_eq!(out.coeff(&[3]), BigInt::from(1));
        assert_eq!(out.terms().len(), 3);
    }

    #[test]
    fn norm_of_t_is_rename() {
        let src = [var_name(WeightVariable::T, 2, 1)];
        let g = MultiSeries::var(&src, 6, 0);
        let out = norm_substitute(&g, 2, 5).unwrap();
        assert_eq!(out, MultiSeries::var(&[String::from("T_{0,1}")], 6, 0));
    }

    #[test]
    fn norm_rejects_wrong_layer() {
        let src = [var_name(WeightVariable::X, 1, 1)];
        let g = MultiSeries::var(&src, 6, 0);
        assert_eq!(norm_substitute(&g, 2, 3).unwrap_err().name(), "UnknownVariable");
        let bad = [String::from("Y")];
        assert!(norm_substitute(&MultiSeries::var(&bad, 6, 0), 0, 3).is_err());
    }

    #[test]
    fn elimination_relation() {
        for n in 1..=4 {
            let w = WeightAlgebraPresentation::new(n, 1, WeightVariable::T, 6).unwrap();
            assert!(w.relation_holds().unwrap());
        }
    }

    #[test]
    fn log_derivative_is_p_power() {
        assert_eq!(norm_log_derivative(3, 2, 12).unwrap(), Some(BigInt::from(9)));
        assert_eq!(norm_log_derivative(5, 0, 6).unwrap(), Some(BigInt::from(1)));
    }
}
