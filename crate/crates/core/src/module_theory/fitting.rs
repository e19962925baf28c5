use super::ideal::{prepare_poly, DvrIdeal, IwasawaIdeal, WeierstrassIdeal};
use crate::error::{Error, Result};
use crate::iwasawa::IwasawaSeries;
use crate::linalg::{dvr_smith, q_rank, Matrix, QMatrix};
use crate::padic::{PadicContext, PadicNumber};
use crate::poly::{parse_poly_literal, ZpPoly};
use crate::ring::Ring;
use num_rational::BigRational;
use std::fmt;

/// Coefficient ring of a presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingTag {
    Rational,
    Zp,
    Iwasawa,
}

impl RingTag {
    pub fn as_str(self) -> &'static str {
        match self {
            RingTag::Rational => "q",
            RingTag::Zp => "zp",
            RingTag::Iwasawa => "iwasawa",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "q" | "rational" => Ok(RingTag::Rational),
            "zp" | "dvr" => Ok(RingTag::Zp),
            "iwasawa" | "binf" => Ok(RingTag::Iwasawa),
            _ => Err(Error::Parse(format!("unknown ring `{s}`"))),
        }
    }
}

/// An `r x s` matrix whose cokernel `ring^r / (columns)` is the module.
#[derive(Clone, Debug)]
pub enum Presentation {
    Rational(QMatrix),
    Zp { ctx: PadicContext, matrix: Matrix<PadicNumber> },
    Iwasawa { ctx: PadicContext, matrix: Matrix<IwasawaSeries> },
}

/// An ideal in one of the presentation rings.
#[derive(Clone, Debug)]
pub enum Ideal {
    /// Over a field an ideal is zero or everything.
    Rational { zero: bool },
    Zp(DvrIdeal),
    Iwasawa(IwasawaIdeal),
}

impl Ideal {
    /// `self ⊇ o`.
    pub fn contains(&self, o: &Ideal) -> Result<bool> {
        match (self, o) {
            (Ideal::Rational { zero: a }, Ideal::Rational { zero: b }) => Ok(!*a || *b),
            (Ideal::Zp(a), Ideal::Zp(b)) => Ok(a.contains(b)),
            (Ideal::Iwasawa(a), Ideal::Iwasawa(b)) => a.contains(b),
            _ => Err(Error::DimensionMismatch("ideals of different rings".into())),
        }
    }

    pub fn equals(&self, o: &Ideal) -> Result<bool> {
        Ok(self.contains(o)? && o.contains(self)?)
    }

    pub fn add(&self, o: &Ideal) -> Result<Ideal> {
        match (self, o) {
            (Ideal::Rational { zero: a }, Ideal::Rational { zero: b }) => {
                Ok(Ideal::Rational { zero: *a && *b })
            }
            (Ideal::Zp(a), Ideal::Zp(b)) => Ok(Ideal::Zp(a.add(b))),
            (Ideal::Iwasawa(a), Ideal::Iwasawa(b)) => Ok(Ideal::Iwasawa(a.add(b))),
            _ => Err(Error::DimensionMismatch("ideals of different rings".into())),
        }
    }

    pub fn mul(&self, o: &Ideal) -> Result<Ideal> {
        match (self, o) {
            (Ideal::Rational { zero: a }, Ideal::Rational { zero: b }) => {
                Ok(Ideal::Rational { zero: *a || *b })
            }
            (Ideal::Zp(a), Ideal::Zp(b)) => Ok(Ideal::Zp(a.mul(b))),
            (Ideal::Iwasawa(a), Ideal::Iwasawa(b)) => Ok(Ideal::Iwasawa(a.mul(b))),
            _ => Err(Error::DimensionMismatch("ideals of different rings".into())),
        }
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ideal::Rational { zero: true } => write!(f, "(0)"),
            Ideal::Rational { zero: false } => write!(f, "(1)"),
            Ideal::Zp(i) => write!(f, "{i}"),
            Ideal::Iwasawa(i) => write!(f, "{i}"),
        }
    }
}

/// Characteristic ideal: a valuation over `Z_p`, Weierstrass data over `Z_p[[S]]`.
#[derive(Clone, Debug)]
pub enum CharIdeal {
    Rational,
    Zp(DvrIdeal),
    Iwasawa(WeierstrassIdeal),
}

impl fmt::Display for CharIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharIdeal::Rational => write!(f, "(1)"),
            CharIdeal::Zp(i) => write!(f, "{i}"),
            CharIdeal::Iwasawa(w) => write!(f, "{w}"),
        }
    }
}

/// The `(r-i) x (r-i)` minors, or `None` when the convention assigns the
/// unit ideal (`r <= i` or `s < r`).
pub fn fitting_minors<R: Ring>(h: &Matrix<R>, i: usize) -> Option<Vec<R>> {
    let (r, s) = (h.rows(), h.cols());
    if r <= i || s < r {
        return None;
    }
    Some(h.minors(r - i))
}

impl Presentation {
    pub fn zp(ctx: &PadicContext, matrix: Matrix<PadicNumber>) -> Self {
        Presentation::Zp { ctx: ctx.clone(), matrix }
    }

    pub fn iwasawa(ctx: &PadicContext, matrix: Matrix<IwasawaSeries>) -> Self {
        Presentation::Iwasawa { ctx: ctx.clone(), matrix }
    }

    /// Presentation over `Z_p[[S]]` from polynomials, stored to truncation `m`.
    pub fn iwasawa_from_polys(ctx: &PadicContext, m: usize, rows: &[Vec<ZpPoly>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|p| IwasawaSeries::from_poly(p, m)).collect())
            .collect();
        Ok(Self::iwasawa(ctx, Matrix::from_rows(rows)?))
    }

    pub fn ring_tag(&self) -> RingTag {
        match self {
            Presentation::Rational(_) => RingTag::Rational,
            Presentation::Zp { .. } => RingTag::Zp,
            Presentation::Iwasawa { .. } => RingTag::Iwasawa,
        }
    }

    pub fn rows(&self) -> usize {
        match self {
            Presentation::Rational(m) => m.rows(),
            Presentation::Zp { matrix, .. } => matrix.rows(),
            Presentation::Iwasawa { matrix, .. } => matrix.rows(),
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            Presentation::Rational(m) => m.cols(),
            Presentation::Zp { matrix, .. } => matrix.cols(),
            Presentation::Iwasawa { matrix, .. } => matrix.cols(),
        }
    }

    /// The `i`-th Fitting ideal.
    pub fn fitting_ideal(&self, i: usize) -> Ideal {
        match self {
            Presentation::Rational(m) => {
                let zero = fitting_minors(m, i)
                    .is_some_and(|g| g.iter().all(|x| x.ring_is_zero()));
                Ideal::Rational { zero }
            }
            Presentation::Zp { ctx, matrix } => Ideal::Zp(match fitting_minors(matrix, i) {
                None => DvrIdeal::unit(ctx.p()),
                Some(g) => DvrIdeal::generated_by(ctx.p(), &g),
            }),
            Presentation::Iwasawa { ctx, matrix } => Ideal::Iwasawa(match fitting_minors(matrix, i) {
                None => IwasawaIdeal::unit(ctx),
                Some(g) => IwasawaIdeal::from_series(ctx, &g),
            }),
        }
    }

    /// Characteristic ideal of a torsion cokernel: the determinant for square
    /// presentations, the reflexive envelope of `F^(0)` otherwise.
    pub fn char_ideal(&self) -> Result<CharIdeal> {
        let (r, s) = (self.rows(), self.cols());
        if s < r {
            return Err(Error::NotTorsion);
        }
        match self {
            Presentation::Rational(m) => {
                if q_rank(m) < r {
                    return Err(Error::NotTorsion);
                }
                Ok(CharIdeal::Rational)
            }
            Presentation::Zp { ctx, matrix } => {
                // Over a DVR the module is a sum of cyclic pieces read off the Smith form.
                let sm = dvr_smith(matrix, ctx);
                if sm.rank() < r {
                    return Err(Error::NotTorsion);
                }
                let v = sm.invariant_valuations.iter().sum();
                Ok(CharIdeal::Zp(DvrIdeal::from_valuation(ctx.p(), Some(v))))
            }
            Presentation::Iwasawa { ctx, matrix } => {
                if r == 0 {
                    return Ok(CharIdeal::Iwasawa(WeierstrassIdeal { mu: 0, poly: ZpPoly::one(ctx) }));
                }
                if r == s {
                    let det = matrix.det_cofactor()?;
                    if det.is_zero() {
                        return Err(Error::NotTorsion);
                    }
                    return Ok(CharIdeal::Iwasawa(prepare_poly(&det.to_poly())?));
                }
                let Ideal::Iwasawa(f0) = self.fitting_ideal(0) else { unreachable!() };
                if f0.is_zero() {
                    return Err(Error::NotTorsion);
                }
                Ok(CharIdeal::Iwasawa(f0.reflexive_envelope()?))
            }
        }
    }

    /// Reduction `S -> 0` of a presentation over `Z_p[[S]]`.
    pub fn at_s_zero(&self) -> Result<Presentation> {
        match self {
            Presentation::Iwasawa { ctx, matrix } => {
                Ok(Presentation::zp(ctx, matrix.map(IwasawaSeries::constant_term)))
            }
            _ => Err(Error::DimensionMismatch("S = 0 reduction needs an Iwasawa presentation".into())),
        }
    }

    /// Text form: `ring p N M rows cols`, then one row per line, entries
    /// separated by whitespace (literals such as `S^2-9`, `3`, `1/2`).
    pub fn to_text(&self) -> String {
        let (p, n, m) = match self {
            Presentation::Rational(_) => (0, 0, 0),
            Presentation::Zp { ctx, .. } => (ctx.p(), ctx.precision(), 1),
            Presentation::Iwasawa { ctx, matrix } => {
                (ctx.p(), ctx.precision(), matrix.entries().first().map_or(1, |e| e.truncation()))
            }
        };
        let mut out = format!("{} {p} {n} {m} {} {}\n", self.ring_tag().as_str(), self.rows(), self.cols());
        let compact = |s: String| s.replace(' ', "");
        for i in 0..self.rows() {
            let row: Vec<String> = (0..self.cols())
                .map(|j| match self {
                    Presentation::Rational(mx) => mx.get(i, j).to_string(),
                    Presentation::Zp { matrix, .. } => {
                        let x = matrix.get(i, j);
                        match x.signed_residue() {
                            Some(r) => r.to_string(),
                            None => x.to_rational().to_string(),
                        }
                    }
                    Presentation::Iwasawa { matrix, .. } => compact(matrix.get(i, j).to_poly().to_string()),
                })
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let head = lines.next().ok_or_else(|| Error::Parse("empty presentation file".into()))?;
        let h: Vec<&str> = head.split_whitespace().collect();
        if h.len() != 6 {
            return Err(Error::Parse(format!("presentation header `{head}` must be `ring p N M rows cols`")));
        }
        let tag = RingTag::parse(h[0])?;
        let num = |s: &str| s.parse::<u64>().map_err(|_| Error::Parse(format!("bad integer `{s}`")));
        let (p, n, m, r, s) = (num(h[1])?, num(h[2])?, num(h[3])? as usize, num(h[4])? as usize, num(h[5])? as usize);
        let entries: Vec<Vec<BigRational>> = lines
            .flat_map(|l| l.split_whitespace())
            .map(parse_poly_literal)
            .collect::<Result<_>>()?;
        if entries.len() != r * s {
            return Err(Error::Parse(format!("expected {} entries, found {}", r * s, entries.len())));
        }
        match tag {
            RingTag::Rational => {
                let data = entries
                    .into_iter()
                    .map(|e| constant_of(&e))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Presentation::Rational(Matrix::new(r, s, data)?))
            }
            RingTag::Zp => {
                let ctx = PadicContext::new(p, n as u32)?;
                let data = entries
                    .into_iter()
                    .map(|e| constant_of(&e).map(|c| PadicNumber::from_rational(&ctx, &c)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Presentation::zp(&ctx, Matrix::new(r, s, data)?))
            }
            RingTag::Iwasawa => {
                let ctx = PadicContext::new(p, n as u32)?;
                let data = entries
                    .iter()
                    .map(|e| {
                        if e.len() > m {
                            return Err(Error::TruncationTooSmall { have: m, need: e.len() });
                        }
                        ZpPoly::from_rationals(&ctx, e).map(|q| IwasawaSeries::from_poly(&q, m))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Presentation::iwasawa(&ctx, Matrix::new(r, s, data)?))
            }
        }
    }
}

fn constant_of(e: &[BigRational]) -> Result<BigRational> {
    if e.len() > 1 {
        return Err(Error::Parse("entry must be a constant for this ring".into()));
    }
    Ok(e[0].clone())
}

/// Compares the characteristic ideal at `S = 0` with the characteristic
/// ideal of the `S = 0` reduction (equal `p`-valuations).
pub fn char_mod_s_check(p: &Presentation) -> Result<bool> {
    if !matches!(p, Presentation::Iwasawa { .. }) || p.rows() != p.cols() {
        return Err(Error::DimensionMismatch("expected a square Iwasawa presentation".into()));
    }
    let CharIdeal::Iwasawa(w) = p.char_ideal()? else { unreachable!() };
    let CharIdeal::Zp(base) = p.at_s_zero()?.char_ideal()? else { unreachable!() };
    Ok(w.valuation_at_zero() == base.valuation())
}
