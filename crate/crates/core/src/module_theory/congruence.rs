//! Congruence ideals of reduced finite flat algebras over the DVR `Z_p`.
//!
//! Algebras are given by structure constants in a `Z_p`-basis. All linear
//! algebra is exact over `Q`, with `p`-integrality read off valuations, so the
//! coefficients are taken in `Z_(p)`, a dense subring of `Z_p`.

use super::fitting::{Ideal, Presentation};
use super::ideal::DvrIdeal;
use crate::error::{Error, Result};
use crate::linalg::{q_det, q_nullspace, q_solve, Matrix, QMatrix};
use crate::padic::{rational_valuation, PadicContext, PadicNumber};
use crate::poly::RatPoly;
use crate::report::{Report, Tally};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

type QVec = Vec<BigRational>;

/// A finite free `Z_p`-algebra with a `Z_p`-algebra section `phi: R -> Z_p`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteFlatAlgebra {
    p: u64,
    /// `table[i][j][k]`: coefficient of `e_k` in `e_i e_j`.
    table: Vec<Vec<QVec>>,
    one: QVec,
    section: QVec,
}

fn integral(x: &BigRational, p: u64) -> bool {
    rational_valuation(x, p).is_none_or(|v| v >= 0)
}

impl FiniteFlatAlgebra {
    pub fn new(p: u64, table: Vec<Vec<QVec>>, one: QVec, section: QVec) -> Result<Self> {
        let m = one.len();
        let bad = |s: &str| Err(Error::InvalidAlgebra(s.to_string()));
        if m == 0 || section.len() != m || table.len() != m {
            return Err(Error::DimensionMismatch(format!("rank {m} algebra data")));
        }
        if table.iter().any(|r| r.len() != m || r.iter().any(|c| c.len() != m)) {
            return Err(Error::DimensionMismatch("structure table".into()));
        }
        let all = table.iter().flatten().flatten().chain(&one).chain(&section);
        if all.into_iter().any(|x| !integral(x, p)) {
            return bad("data is not p-integral");
        }
        let r = FiniteFlatAlgebra { p, table, one, section };
        let basis: Vec<QVec> = (0..m).map(|i| r.basis(i)).collect();
        for (i, x) in basis.iter().enumerate() {
            if r.mul(&r.one, x) != *x {
                return bad("unit element does not act as identity");
            }
            for y in &basis[i..] {
                if r.mul(x, y) != r.mul(y, x) {
                    return bad("multiplication is not commutative");
                }
                if r.phi(&r.mul(x, y)) != r.phi(x) * r.phi(y) {
                    return bad("section is not multiplicative");
                }
                for z in &basis {
                    if r.mul(&r.mul(x, y), z) != r.mul(x, &r.mul(y, z)) {
                        return bad("multiplication is not associative");
                    }
                }
            }
        }
        if !r.phi(&r.one).is_one() {
            return bad("section does not send 1 to 1");
        }
        Ok(r)
    }

    /// `Z_p[X]/(f)` in the basis `1, X, ..., X^{m-1}`, with section `X -> root`.
    pub fn monogenic(p: u64, f: &RatPoly, root: &BigRational) -> Result<Self> {
        let m = f.degree().filter(|&d| d > 0).ok_or(Error::InvalidAlgebra("constant polynomial".into()))?;
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
        if !f.eval(root).is_zero() {
            return Err(Error::InvalidAlgebra(format!("{root} is not a root")));
        }
        // X^k mod f for k < 2m - 1
        let mut powers: Vec<QVec> = Vec::with_capacity(2 * m - 1);
        let mut cur = vec![BigRational::zero(); m];
        cur[0] = BigRational::one();
        for _ in 0..2 * m - 1 {
            powers.push(cur.clone());
            let top = cur[m - 1].clone();
            let mut next = vec![BigRational::zero(); m];
            for k in 1..m {
                next[k] = cur[k - 1].clone();
            }
            for (k, slot) in next.iter_mut().enumerate() {
                *slot -= &top * f.coeff(k);
            }
            cur = next;
        }
        let table = (0..m).map(|i| (0..m).map(|j| powers[i + j].clone()).collect()).collect();
        let mut section = Vec::with_capacity(m);
        let mut pw = BigRational::one();
        for _ in 0..m {
            section.push(pw.clone());
            pw *= root;
        }
        Self::new(p, table, powers[0].clone(), section)
    }

    /// `Z_p[X]/prod (X - r_i)` with section `X -> r_0`.
    pub fn from_roots(p: u64, roots: &[BigRational]) -> Result<Self> {
        let first = roots.first().ok_or(Error::InvalidAlgebra("no roots".into()))?;
        Self::monogenic(p, &RatPoly::from_roots(roots), first)
    }

    /// The order `Z_p 1 + p Z_p^m` of `Z_p^m` (basis `1, p f_1, ..., p f_{m-1}`
    /// with `f_i` the coordinate idempotents), sectioned by the last factor.
    /// Reduced but not Gorenstein once `m >= 3`.
    pub fn thin_order(p: u64, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::DimensionMismatch("rank 0".into()));
        }
        let pq = BigRational::from_integer(BigInt::from(p));
        let unit = |k: usize, c: BigRational| {
            let mut v = vec![BigRational::zero(); m];
            v[k] = c;
            v
        };
        let table = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| match (i, j) {
                        (0, j) => unit(j, BigRational::one()),
                        (i, 0) => unit(i, BigRational::one()),
                        (i, j) if i == j => unit(i, pq.clone()),
                        _ => vec![BigRational::zero(); m],
                    })
                    .collect()
            })
            .collect();
        let mut section = vec![BigRational::zero(); m];
        section[0] = BigRational::one();
        Self::new(p, table, unit(0, BigRational::one()), section)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.one.len()
    }

    pub fn one(&self) -> &[BigRational] {
        &self.one
    }

    pub fn section(&self) -> &[BigRational] {
        &self.section
    }

    pub fn basis(&self, i: usize) -> QVec {
        let mut v = vec![BigRational::zero(); self.rank()];
        v[i] = BigRational::one();
        v
    }

    pub fn mul(&self, x: &[BigRational], y: &[BigRational]) -> QVec {
        let m = self.rank();
        let mut out = vec![BigRational::zero(); m];
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let c = xi * yj;
                for (k, t) in self.table[i][j].iter().enumerate() {
                    if !t.is_zero() {
                        out[k] += &c * t;
                    }
                }
            }
        }
        out
    }

    pub fn phi(&self, x: &[BigRational]) -> BigRational {
        x.iter().zip(&self.section).map(|(a, b)| a * b).sum()
    }

    /// Matrix of multiplication by `x` (column `j` is `x e_j`).
    fn mult_matrix(&self, x: &[BigRational]) -> QMatrix {
        let cols: Vec<QVec> = (0..self.rank()).map(|j| self.mul(x, &self.basis(j))).collect();
        Matrix::from_fn(self.rank(), self.rank(), |i, j| cols[j][i].clone())
    }

    fn trace(&self, x: &[BigRational]) -> BigRational {
        let l = self.mult_matrix(x);
        (0..self.rank()).map(|i| l.get(i, i).clone()).sum()
    }

    /// Reduced iff the trace form is nondegenerate (characteristic zero).
    pub fn is_reduced(&self) -> bool {
        let m = self.rank();
        let gram = Matrix::from_fn(m, m, |i, j| self.trace(&self.mul(&self.basis(i), &self.basis(j))));
        !q_det(&gram).expect("square").is_zero()
    }

    /// A functional `lambda` (given mod p on the basis) with `(x, y) -> lambda(xy)`
    /// perfect, i.e. a generator of `Hom(R, Z_p)` as an `R`-module.
    ///
    /// The Gram determinant is a polynomial of degree `m` in the values of
    /// `lambda`, so a grid with `min(p, m + 1)` points per coordinate is exhaustive.
    pub fn gorenstein_witness(&self) -> Option<Vec<u64>> {
        let m = self.rank();
        let q = self.p.min(m as u64 + 1);
        let mut lam = vec![0u64; m];
        loop {
            let gram = Matrix::from_fn(m, m, |i, j| {
                self.table[i][j]
                    .iter()
                    .zip(&lam)
                    .map(|(c, &l)| c * BigRational::from_integer(l.into()))
                    .sum::<BigRational>()
            });
            if rational_valuation(&q_det(&gram).expect("square"), self.p) == Some(0) {
                return Some(lam);
            }
            let mut k = 0;
            while k < m && lam[k] + 1 == q {
                lam[k] = 0;
                k += 1;
            }
            if k == m {
                return None;
            }
            lam[k] += 1;
        }
    }

    pub fn is_gorenstein(&self) -> bool {
        self.gorenstein_witness().is_some()
    }

    /// The idempotent of `R ⊗ Q_p` cutting out the factor through which the
    /// section factors: `x e = phi(x) e` for all `x`, `phi(e) = 1`.
    pub fn section_idempotent(&self) -> Result<QVec> {
        if !self.is_reduced() {
            return Err(Error::NotReduced);
        }
        let m = self.rank();
        let mut rows: Vec<QVec> = Vec::new();
        for i in 0..m {
            let mut l = self.mult_matrix(&self.basis(i));
            for d in 0..m {
                let v = l.get(d, d) - &self.section[i];
                l.set(d, d, v);
            }
            rows.extend(l.row_vecs());
        }
        rows.push(self.section.clone());
        let mut rhs = vec![BigRational::zero(); rows.len()];
        *rhs.last_mut().expect("nonempty") = BigRational::one();
        let a = Matrix::from_rows(rows)?;
        q_solve(&a, &rhs).ok_or(Error::NoSectionComponent)
    }
}

fn min_valuation(v: &[BigRational], p: u64) -> Option<i64> {
    v.iter().filter_map(|x| rational_valuation(x, p)).min()
}

/// `c_phi = phi(I)` with `I = R ∩ e (R ⊗ Q_p)`. Since that factor has rank one,
/// `I = {t e : t e ∈ R}` and `phi(t e) = t`.
pub fn congruence_ideal(r: &FiniteFlatAlgebra) -> Result<DvrIdeal> {
    let e = r.section_idempotent()?;
    let v = min_valuation(&e, r.p).expect("phi(e) = 1");
    Ok(DvrIdeal::from_valuation(r.p, Some((-v).max(0))))
}

/// Full-pivot elimination over `Z_(p)`: returns the pivot valuations and a
/// `Z_(p)`-unimodular `V` with `U A = D V`, `D` diagonal.
fn zp_smith(a: &QMatrix, p: u64) -> (Vec<i64>, QMatrix) {
    let mut a = a.clone();
    let n = a.cols();
    let mut v = Matrix::from_fn(n, n, |i, j| if i == j { BigRational::one() } else { BigRational::zero() });
    let mut vals = Vec::new();
    let mut t = 0;
    while t < a.rows().min(n) {
        let mut best: Option<(usize, usize, i64)> = None;
        for i in t..a.rows() {
            for j in t..n {
                if let Some(val) = rational_valuation(a.get(i, j), p) {
                    if best.is_none_or(|(_, _, b)| val < b) {
                        best = Some((i, j, val));
                    }
                }
            }
        }
        let Some((pi, pj, val)) = best else { break };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_rows(t, pj);
        let piv = a.get(t, t).clone();
        for i in t + 1..a.rows() {
            let f = a.get(i, t) / &piv;
            for j in t..n {
                let x = a.get(i, j) - &f * a.get(t, j);
                a.set(i, j, x);
            }
        }
        for j in t + 1..n {
            let f = a.get(t, j) / &piv;
            if f.is_zero() {
                continue;
            }
            for i in t..a.rows() {
                let x = a.get(i, j) - &f * a.get(i, t);
                a.set(i, j, x);
            }
            for c in 0..n {
                let x = v.get(t, c) + &f * v.get(j, c);
                v.set(t, c, x);
            }
        }
        vals.push(val);
        t += 1;
    }
    (vals, v)
}

/// A `Z_(p)`-basis of `Z_(p)^m ∩ span_Q(rows)`.
fn saturation(rows: &[QVec], m: usize, p: u64) -> Vec<QVec> {
    if rows.is_empty() {
        return vec![];
    }
    let a = Matrix::from_fn(rows.len(), m, |i, j| rows[i][j].clone());
    let (vals, v) = zp_smith(&a, p);
    (0..vals.len()).map(|t| v.row(t).to_vec()).collect()
}

/// Checks that `alpha` (column `i` = image of `e_i` of `R` in the basis of `S`)
/// is a surjective algebra map compatible with the sections.
fn check_surjection(r: &FiniteFlatAlgebra, s: &FiniteFlatAlgebra, alpha: &QMatrix) -> Result<()> {
    let (mr, ms) = (r.rank(), s.rank());
    if alpha.rows() != ms || alpha.cols() != mr || r.p != s.p {
        return Err(Error::DimensionMismatch(format!("map {}x{} from rank {mr} to rank {ms}", alpha.rows(), alpha.cols())));
    }
    let img = |x: &[BigRational]| alpha.apply(x).expect("dimensions checked");
    let bad = |s: &str| Err(Error::InvalidAlgebra(s.to_string()));
    if alpha.entries().iter().any(|x| !integral(x, r.p)) {
        return bad("map is not p-integral");
    }
    if img(&r.one) != s.one {
        return bad("map does not preserve 1");
    }
    for i in 0..mr {
        for j in i..mr {
            let (x, y) = (r.basis(i), r.basis(j));
            if img(&r.mul(&x, &y)) != s.mul(&img(&x), &img(&y)) {
                return bad("map is not multiplicative");
            }
        }
        if r.section[i] != s.phi(&img(&r.basis(i))) {
            return bad("sections are not compatible");
        }
    }
    let (vals, _) = zp_smith(alpha, r.p);
    if vals.len() != ms || vals.iter().any(|&v| v != 0) {
        return bad("map is not surjective");
    }
    Ok(())
}

/// `beta(c_alpha)` for a surjection `alpha: R -> S`, where `beta` is the
/// section of `S`: with `e_S` the idempotent of the `S`-factor of `R ⊗ Q_p`,
/// `I_alpha = R ∩ e_S (R ⊗ Q_p)` and `beta(alpha(I_alpha)) = lambda(I_alpha)`.
pub fn transferred_congruence_ideal(
    r: &FiniteFlatAlgebra,
    s: &FiniteFlatAlgebra,
    alpha: &QMatrix,
) -> Result<DvrIdeal> {
    check_surjection(r, s, alpha)?;
    if !r.is_reduced() || !s.is_reduced() {
        return Err(Error::NotReduced);
    }
    let m = r.rank();
    let kernel = q_nullspace(alpha);
    // e_S k = 0 for all k in the kernel, alpha(e_S) = 1_S.
    let mut rows: Vec<QVec> = Vec::new();
    for k in &kernel {
        rows.extend(r.mult_matrix(k).row_vecs());
    }
    rows.extend(alpha.row_vecs());
    let mut rhs = vec![BigRational::zero(); rows.len() - s.rank()];
    rhs.extend(s.one.iter().cloned());
    let e_s = q_solve(&Matrix::from_rows(rows)?, &rhs).ok_or(Error::NoSectionComponent)?;
    let span: Vec<QVec> = (0..m).map(|i| r.mul(&e_s, &r.basis(i))).collect();
    let basis = saturation(&span, m, r.p);
    let lambda: Vec<BigRational> = basis.iter().map(|b| r.phi(b)).collect();
    Ok(DvrIdeal::from_valuation(r.p, min_valuation(&lambda, r.p)))
}

/// The three ideals of a chain `R -> S -> Z_p`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecompositionCheck {
    pub c_lambda: Option<i64>,
    pub c_beta: Option<i64>,
    pub beta_c_alpha: Option<i64>,
    pub holds: bool,
}

/// Verifies `c_lambda = c_beta beta(c_alpha)` for `R -(alpha)-> S -(beta)-> Z_p`,
/// `lambda = beta alpha` being the section of `R`.
pub fn congruence_decomposition_check(
    r: &FiniteFlatAlgebra,
    s: &FiniteFlatAlgebra,
    alpha: &QMatrix,
) -> Result<DecompositionCheck> {
    if !r.is_gorenstein() || !s.is_gorenstein() {
        return Err(Error::NotGorenstein);
    }
    let c_lambda = congruence_ideal(r)?;
    let c_beta = congruence_ideal(s)?;
    let beta_c_alpha = transferred_congruence_ideal(r, s, alpha)?;
    Ok(DecompositionCheck {
        c_lambda: c_lambda.valuation(),
        c_beta: c_beta.valuation(),
        beta_c_alpha: beta_c_alpha.valuation(),
        holds: c_lambda == c_beta.mul(&beta_c_alpha),
    })
}

/// The chain `B[X]/((X-a)(X-b)(X-c)) -> B[X]/((X-a)(X-b)) -> B`, `X -> a`.
pub fn cubic_chain(p: u64, a: &BigRational, b: &BigRational, c: &BigRational) -> Result<(FiniteFlatAlgebra, FiniteFlatAlgebra, QMatrix)> {
    let r = FiniteFlatAlgebra::from_roots(p, &[a.clone(), b.clone(), c.clone()])?;
    let s = FiniteFlatAlgebra::from_roots(p, &[a.clone(), b.clone()])?;
    // X^2 = (a + b) X - ab in S
    let alpha = Matrix::from_rows(vec![
        vec![BigRational::one(), BigRational::zero(), -(a * b)],
        vec![BigRational::zero(), BigRational::one(), a + b],
    ])?;
    Ok((r, s, alpha))
}

/// Presentation `B dF -> B dX -> Omega_{R/B} ⊗ B -> 0` of the Kähler
/// differentials of `B[X]/(f)` along the section `X -> root`.
pub fn kahler_presentation(f: &RatPoly, root: &BigRational, ctx: &PadicContext) -> Result<Presentation> {
    let d = PadicNumber::from_rational(ctx, &f.derivative().eval(root));
    Ok(Presentation::zp(ctx, Matrix::from_rows(vec![vec![d]])?))
}

/// `F_B(Omega_{R/B} ⊗ B)` for `R = B[X]/(f)`.
pub fn kahler_fitting_ideal(f: &RatPoly, root: &BigRational, ctx: &PadicContext) -> Result<DvrIdeal> {
    match kahler_presentation(f, root, ctx)?.fitting_ideal(0) {
        Ideal::Zp(i) => Ok(i),
        _ => unreachable!("presentation over Z_p"),
    }
}

fn close_root(rng: &mut ChaCha8Rng, p: u64, a: i64) -> i64 {
    loop {
        let e = rng.gen_range(0..=3u32);
        let u = rng.gen_range(1..=(p as i64 * 4));
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        let x = a + sign * u * (p as i64).pow(e);
        if x != a {
            return x;
        }
    }
}

/// Distinct roots `a, b, c` with `b, c` p-adically close to `a`.
pub fn random_cubic_roots(rng: &mut ChaCha8Rng, p: u64) -> [BigRational; 3] {
    loop {
        let a = rng.gen_range(-50..=50);
        let (b, c) = (close_root(rng, p, a), close_root(rng, p, a));
        if b != c {
            return [a, b, c].map(|x| BigRational::from_integer(x.into()));
        }
    }
}

pub const CUBIC_CHAIN_CASES: usize = 20;

/// Quadratic congruence ideals with the Kähler cross-check, and the
/// decomposition on random cubic chains.
pub fn congruence_suite(seed: u64) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new(seed);
    let mut quad = Tally::default();
    let mut tate = Tally::default();
    for case in 0..20 {
        let p = [3u64, 5, 7][case % 3];
        let [a, b, _] = random_cubic_roots(&mut rng, p);
        let r = FiniteFlatAlgebra::from_roots(p, &[a.clone(), b.clone()])?;
        let c = congruence_ideal(&r)?;
        let expected = DvrIdeal::from_valuation(p, rational_valuation(&(&a - &b), p));
        quad.record(c == expected, || format!("p={p},a={a},b={b},c={c}"));
        let ctx = PadicContext::new(p, 40)?;
        let f = RatPoly::from_roots(&[a.clone(), b.clone()]);
        let k = kahler_fitting_ideal(&f, &a, &ctx)?;
        tate.record(k == c, || format!("p={p},a={a},b={b},F={k},c={c}"));
    }
    report.push(quad.line("congruence.quadratic", ""));
    report.push(tate.line("congruence.kahler", ""));
    let mut chain = Tally::default();
    for case in 0..CUBIC_CHAIN_CASES {
        let p = [3u64, 5][case % 2];
        let [a, b, c] = random_cubic_roots(&mut rng, p);
        let (r, s, alpha) = cubic_chain(p, &a, &b, &c)?;
        let d = congruence_decomposition_check(&r, &s, &alpha)?;
        let vab = rational_valuation(&(&a - &b), p);
        let vac = rational_valuation(&(&a - &c), p);
        let ok = d.holds && d.c_beta == vab && d.beta_c_alpha == vac;
        chain.record(ok, || format!("p={p},roots={a}/{b}/{c},{d:?}"));
    }
    report.push(chain.line("congruence.decomposition", ""));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::qi;

    #[test]
    fn quadratic() {
        let r = FiniteFlatAlgebra::from_roots(3, &[qi(1), qi(10)]).unwrap();
        assert!(r.is_reduced() && r.is_gorenstein());
        assert_eq!(congruence_ideal(&r).unwrap(), DvrIdeal::from_valuation(3, Some(2)));
        let e = r.section_idempotent().unwrap();
        // (X - 10)/(1 - 10)
        assert_eq!(e, vec![BigRational::new(10.into(), 9.into()), BigRational::new((-1).into(), 9.into())]);
    }

    #[test]
    fn identity_section() {
        let b = FiniteFlatAlgebra::from_roots(5, &[qi(7)]).unwrap();
        assert!(congruence_ideal(&b).unwrap().is_unit());
    }

    #[test]
    fn non_reduced() {
        let r = FiniteFlatAlgebra::monogenic(3, &RatPoly::from_i64s(&[0, 0, 1]), &qi(0)).unwrap();
        assert_eq!(congruence_ideal(&r), Err(Error::NotReduced));
    }

    #[test]
    fn thin_order_is_not_gorenstein() {
        let r = FiniteFlatAlgebra::thin_order(3, 3).unwrap();
        assert!(r.is_reduced());
        assert!(!r.is_gorenstein());
        assert!(FiniteFlatAlgebra::thin_order(3, 2).unwrap().is_gorenstein());
        let (_, s, _) = cubic_chain(3, &qi(0), &qi(3), &qi(9)).unwrap();
        let alpha = Matrix::from_rows(vec![vec![qi(1), qi(0), qi(0)], vec![qi(0), qi(0), qi(0)]]).unwrap();
        assert_eq!(congruence_decomposition_check(&r, &s, &alpha), Err(Error::NotGorenstein));
    }

    #[test]
    fn cubic_example() {
        let (a, b, c) = (qi(0), qi(3), qi(18));
        let (r, s, alpha) = cubic_chain(3, &a, &b, &c).unwrap();
        let d = congruence_decomposition_check(&r, &s, &alpha).unwrap();
        assert_eq!((d.c_lambda, d.c_beta, d.beta_c_alpha), (Some(3), Some(1), Some(2)));
        assert!(d.holds);
    }

    #[test]
    fn identity_chain() {
        let b = FiniteFlatAlgebra::from_roots(5, &[qi(2)]).unwrap();
        let id = Matrix::from_rows(vec![vec![qi(1)]]).unwrap();
        let d = congruence_decomposition_check(&b, &b, &id).unwrap();
        assert_eq!((d.c_lambda, d.c_beta, d.beta_c_alpha), (Some(0), Some(0), Some(0)));
    }

    #[test]
    fn rejects_bad_maps() {
        let (r, s, _) = cubic_chain(3, &qi(0), &qi(3), &qi(9)).unwrap();
        let not_mult = Matrix::from_rows(vec![vec![qi(1), qi(0), qi(0)], vec![qi(0), qi(1), qi(0)]]).unwrap();
        assert!(matches!(congruence_decomposition_check(&r, &s, &not_mult), Err(Error::InvalidAlgebra(_))));
    }

    #[test]
    fn kahler_matches() {
        let ctx = PadicContext::new(5, 20).unwrap();
        let f = RatPoly::from_roots(&[qi(2), qi(27)]);
        assert_eq!(kahler_fitting_ideal(&f, &qi(2), &ctx).unwrap(), DvrIdeal::from_valuation(5, Some(2)));
    }

    #[test]
    fn suite_passes() {
        let r = congruence_suite(7).unwrap();
        assert!(r.all_pass(), "{}", r.render());
    }
}
