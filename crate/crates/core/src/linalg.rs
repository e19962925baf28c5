//! Dense matrices over the crate's rings, plus the exact elimination routines
//! the rest of the crate leans on.

use crate::error::{Error, Result};
use crate::padic::{PadicContext, PadicNumber};
use crate::ring::Ring;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

#[derive(Clone, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: fmt::Debug> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<R: Clone> Matrix<R> {
    pub fn new(rows: usize, cols: usize, data: Vec<R>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn row_vecs(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<S: Clone>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<S: Clone>(&self, f: impl Fn(&R) -> Result<S>) -> Result<Matrix<S>> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hconcat row counts differ".into()));
        }
        Ok(Matrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }
}

impl<R: Ring> Matrix<R> {
    pub fn filled(rows: usize, cols: usize, v: &R) -> Self {
        Matrix::from_fn(rows, cols, |_, _| v.clone())
    }

    pub fn identity_like(n: usize, template: &R) -> Self {
        let zero = template.zero_like();
        let one = template.one_like();
        Matrix::from_fn(n, n, |i, j| if i == j { one.clone() } else { zero.clone() })
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let template = self.data.first().or(rhs.data.first()).cloned();
        let Some(t) = template else {
            return Ok(Matrix { rows: self.rows, cols: rhs.cols, data: vec![] });
        };
        let zero = t.zero_like();
        Ok(Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = zero.clone();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.ring_is_zero() {
                    continue;
                }
                acc = acc.ring_add(&a.ring_mul(rhs.get(k, j)));
            }
            acc
        }))
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch("matrix sum".into()));
        }
        Ok(Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).ring_add(rhs.get(i, j))))
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|x| x.ring_mul(c))
    }

    pub fn apply(&self, v: &[R]) -> Result<Vec<R>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch("matrix-vector product".into()));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = v.first().map_or_else(|| self.get(i, 0).zero_like(), |x| x.zero_like());
                for (j, x) in v.iter().enumerate() {
                    acc = acc.ring_add(&self.get(i, j).ring_mul(x));
                }
                acc
            })
            .collect())
    }

    /// Block diagonal `diag(self, other)`; needs a template element for zeros.
    pub fn block_diag(&self, other: &Self, template: &R) -> Self {
        let zero = template.zero_like();
        Matrix::from_fn(self.rows + other.rows, self.cols + other.cols, |i, j| {
            match (i < self.rows, j < self.cols) {
                (true, true) => self.get(i, j).clone(),
                (false, false) => other.get(i - self.rows, j - self.cols).clone(),
                _ => zero.clone(),
            }
        })
    }

    /// Determinant by cofactor expansion. Suitable for the small matrices over
    /// non-field rings (series, polynomials) where elimination is unavailable.
    pub fn det_cofactor(&self) -> Result<R> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        if self.rows == 0 {
            return Err(Error::DimensionMismatch("empty determinant has no ring context".into()));
        }
        let cols: Vec<usize> = (0..self.cols).collect();
        Ok(self.cofactor_rec(0, &cols))
    }

    fn cofactor_rec(&self, row: usize, cols: &[usize]) -> R {
        if cols.len() == 1 {
            return self.get(row, cols[0]).clone();
        }
        let mut acc = self.get(row, cols[0]).zero_like();
        for (pos, &c) in cols.iter().enumerate() {
            let a = self.get(row, c);
            if a.ring_is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = a.ring_mul(&self.cofactor_rec(row + 1, &rest));
            acc = if pos % 2 == 0 { acc.ring_add(&term) } else { acc.ring_sub(&term) };
        }
        acc
    }

    /// All `k x k` minors, in lexicographic order of (row set, column set).
    pub fn minors(&self, k: usize) -> Vec<R> {
        let rs = combinations(self.rows, k);
        let cs = combinations(self.cols, k);
        let mut out = Vec::with_capacity(rs.len() * cs.len());
        for r in &rs {
            for c in &cs {
                let sub = self.submatrix(r, c);
                out.push(sub.cofactor_rec(0, &(0..k).collect::<Vec<_>>()));
            }
        }
        out
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 && idx[0] == n - k {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

// ---------------------------------------------------------------------------
// exact rational linear algebra

pub type QMatrix = Matrix<BigRational>;

pub fn q_zero(rows: usize, cols: usize) -> QMatrix {
    Matrix::from_fn(rows, cols, |_, _| BigRational::zero())
}

pub fn q_identity(n: usize) -> QMatrix {
    Matrix::from_fn(n, n, |i, j| if i == j { BigRational::one() } else { BigRational::zero() })
}

/// Row-reduces in place, returning the pivot columns and the determinant
/// factor accumulated from swaps and pivots.
fn rref(m: &mut QMatrix) -> (Vec<usize>, BigRational) {
    let mut pivots = Vec::new();
    let mut det = BigRational::one();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
            det = BigRational::zero();
            continue;
        };
        if pr != r {
            m.swap_rows(pr, r);
            det = -det;
        }
        let piv = m.get(r, c).clone();
        det *= &piv;
        let inv = piv.recip();
        for j in 0..m.cols {
            let v = m.get(r, j) * &inv;
            m.set(r, j, v);
        }
        for i in 0..m.rows {
            if i == r {
                continue;
            }
            let f = m.get(i, c).clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..m.cols {
                let v = m.get(i, j) - &f * m.get(r, j);
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (pivots, det)
}

pub fn q_det(m: &QMatrix) -> Result<BigRational> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
    }
    let mut w = m.clone();
    let (pivots, det) = rref(&mut w);
    Ok(if pivots.len() == m.rows { det } else { BigRational::zero() })
}

pub fn q_rank(m: &QMatrix) -> usize {
    let mut w = m.clone();
    rref(&mut w).0.len()
}

pub fn q_inverse(m: &QMatrix) -> Result<QMatrix> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
    }
    let n = m.rows;
    let mut aug = m.hconcat(&q_identity(n))?;
    let (pivots, _) = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return Err(Error::SingularInput);
    }
    Ok(Matrix::from_fn(n, n, |i, j| aug.get(i, n + j).clone()))
}

/// Basis of the right kernel `{x : m x = 0}`.
pub fn q_nullspace(m: &QMatrix) -> Vec<Vec<BigRational>> {
    let mut w = m.clone();
    let (pivots, _) = rref(&mut w);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); m.cols];
            v[f] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -w.get(r, f).clone();
            }
            v
        })
        .collect()
}

/// Solves `m x = b` for one solution, if any.
pub fn q_solve(m: &QMatrix, b: &[BigRational]) -> Option<Vec<BigRational>> {
    let bm = Matrix::from_fn(m.rows, 1, |i, _| b[i].clone());
    let mut aug = m.hconcat(&bm).ok()?;
    let (pivots, _) = rref(&mut aug);
    if pivots.contains(&m.cols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); m.cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug.get(r, m.cols).clone();
    }
    Some(x)
}

/// Fraction-free (Bareiss) determinant of an integer matrix.
pub fn int_det(m: &Matrix<BigInt>) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            let Some(s) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                return Ok(BigInt::zero());
            };
            a.swap_rows(k, s);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                a.set(i, j, v);
            }
        }
        prev = a.get(k, k).clone();
    }
    Ok(sign * a.get(n - 1, n - 1))
}

// ---------------------------------------------------------------------------
// linear algebra over Q_p

/// Row reduction over `Q_p`, choosing the pivot of least valuation in each
/// column. Returns pivot columns and the sum of pivot valuations.
fn padic_rref(m: &mut Matrix<PadicNumber>) -> (Vec<usize>, i64) {
    let mut pivots = Vec::new();
    let mut loss = 0;
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let best = (r..m.rows)
            .filter_map(|i| m.get(i, c).valuation().map(|v| (i, v)))
            .min_by_key(|&(_, v)| v);
        let Some((pr, v)) = best else { continue };
        loss += v.max(0);
        m.swap_rows(pr, r);
        let inv = m.get(r, c).inv().expect("nonzero pivot");
        for j in 0..m.cols {
            let v = m.get(r, j) * &inv;
            m.set(r, j, v);
        }
        for i in 0..m.rows {
            if i == r || m.get(i, c).is_zero() {
                continue;
            }
            let f = m.get(i, c).clone();
            for j in 0..m.cols {
                let v = m.get(i, j) - &(&f * m.get(r, j));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (pivots, loss)
}

/// Rank over `Q_p`, by full-pivot elimination with integral multipliers so
/// that no precision beyond `p^N` is lost.
pub fn padic_rank(m: &Matrix<PadicNumber>) -> usize {
    let Some(ctx) = m.data.first().map(|x| x.context().clone()) else { return 0 };
    let low = m.data.iter().filter_map(|x| x.valuation()).min().unwrap_or(0);
    if low >= 0 {
        return dvr_smith(m, &ctx).rank();
    }
    let shift = PadicNumber::from_parts(&ctx, -low, &BigInt::from(1u8)).expect("unit");
    dvr_smith(&m.map(|x| x * &shift), &ctx).rank()
}

/// Nonzero rows of the reduced row echelon form over `Q_p`, with the sum of
/// the pivot valuations (a bound on the absolute precision lost).
pub fn padic_row_echelon(m: &Matrix<PadicNumber>) -> (Vec<Vec<PadicNumber>>, i64) {
    let mut w = m.clone();
    let (pivots, loss) = padic_rref(&mut w);
    ((0..pivots.len()).map(|i| w.row(i).to_vec()).collect(), loss)
}

/// One solution of `m x = b` over `Q_p`, if the system is consistent.
pub fn padic_solve(m: &Matrix<PadicNumber>, b: &[PadicNumber]) -> Option<Vec<PadicNumber>> {
    let ctx = b.first().map(|x| x.context().clone())?;
    let bm = Matrix::from_fn(m.rows, 1, |i, _| b[i].clone());
    let mut aug = m.hconcat(&bm).ok()?;
    let (pivots, _) = padic_rref(&mut aug);
    if pivots.contains(&m.cols) {
        return None;
    }
    let mut x = vec![ctx.zero(); m.cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug.get(r, m.cols).clone();
    }
    Some(x)
}

/// Basis of the right kernel over `Q_p`.
pub fn padic_nullspace(m: &Matrix<PadicNumber>, ctx: &PadicContext) -> Vec<Vec<PadicNumber>> {
    let mut w = m.clone();
    let (pivots, _) = padic_rref(&mut w);
    (0..m.cols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![ctx.zero(); m.cols];
            v[f] = ctx.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -w.get(r, f);
            }
            v
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Smith form over the discrete valuation ring Z_p

/// Smith normal form data over `Z_p` (entries may have negative valuation;
/// elimination only ever multiplies by elements of valuation >= 0).
#[derive(Clone, Debug)]
pub struct DvrSmith {
    /// Valuations of the nonzero invariant factors, ascending.
    pub invariant_valuations: Vec<i64>,
    /// `V` with `A = U * D * V`, `U` and `V` unimodular over `Z_p`.
    /// The first `rank` rows of `V` span the saturation of the row space.
    pub col_transform: Matrix<PadicNumber>,
}

impl DvrSmith {
    pub fn rank(&self) -> usize {
        self.invariant_valuations.len()
    }
}

pub fn dvr_smith(m: &Matrix<PadicNumber>, ctx: &PadicContext) -> DvrSmith {
    let mut a = m.clone();
    let mut v = Matrix::identity_like(m.cols, &ctx.one());
    let mut invariants = Vec::new();
    let mut t = 0;
    while t < a.rows.min(a.cols) {
        let mut best: Option<(usize, usize, i64)> = None;
        for i in t..a.rows {
            for j in t..a.cols {
                if let Some(val) = a.get(i, j).valuation() {
                    if best.map_or(true, |(_, _, b)| val < b) {
                        best = Some((i, j, val));
                    }
                }
            }
        }
        let Some((pi, pj, val)) = best else { break };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_rows(t, pj);
        let piv_inv = a.get(t, t).inv().expect("pivot is nonzero");
        for i in t + 1..a.rows {
            let f = a.get(i, t) * &piv_inv;
            if f.is_zero() {
                continue;
            }
            for j in t..a.cols {
                let x = a.get(i, j) - &(&f * a.get(t, j));
                a.set(i, j, x);
            }
        }
        for j in t + 1..a.cols {
            let f = a.get(t, j) * &piv_inv;
            if f.is_zero() {
                continue;
            }
            // column j -= f * column t  <=>  row t of V += f * row j
            for i in t..a.rows {
                let x = a.get(i, j) - &(&f * a.get(i, t));
                a.set(i, j, x);
            }
            for c in 0..v.cols {
                let x = v.get(t, c) + &(&f * v.get(j, c));
                v.set(t, c, x);
            }
        }
        invariants.push(val);
        t += 1;
    }
    invariants.sort_unstable();
    DvrSmith { invariant_valuations: invariants, col_transform: v }
}

// ---------------------------------------------------------------------------
// Z_p-lattices modulo p^N

/// A `Z_p`-submodule of `Z_p^d`, known modulo `p^N Z_p^d`, kept in Howell
/// echelon form so that membership is decided by plain reduction.
#[derive(Clone, Debug)]
pub struct ZpLattice {
    ctx: PadicContext,
    dim: usize,
    /// (pivot column, pivot valuation, row residues)
    rows: Vec<(usize, u32, Vec<BigInt>)>,
}

impl ZpLattice {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn echelon_len(&self) -> usize {
        self.rows.len()
    }

    /// Spans the given residue vectors (entries reduced mod `p^N` internally).
    pub fn span(ctx: &PadicContext, dim: usize, gens: &[Vec<BigInt>]) -> Self {
        let m = ctx.modulus();
        let mut pending: Vec<Vec<BigInt>> =
            gens.iter().map(|g| g.iter().map(|x| x.mod_floor(m)).collect()).collect();
        let mut rows = Vec::new();
        for c in 0..dim {
            let mut best: Option<(usize, u32)> = None;
            for (i, r) in pending.iter().enumerate() {
                if let Some(val) = ctx.residue_valuation(&r[c]) {
                    if best.map_or(true, |(_, b)| val < b) {
                        best = Some((i, val));
                    }
                }
            }
            let Some((bi, val)) = best else { continue };
            let piv = pending.swap_remove(bi);
            let pe = ctx.p_pow(val);
            let unit = &piv[c] / &pe;
            let uinv = crate::padic::mod_inverse(&unit, m).expect("unit");
            let piv: Vec<BigInt> = piv.iter().map(|x| (x * &uinv).mod_floor(m)).collect();
            for r in pending.iter_mut() {
                if r[c].is_zero() {
                    continue;
                }
                let f = &r[c] / &pe;
                for j in c..dim {
                    r[j] = (&r[j] - &f * &piv[j]).mod_floor(m);
                }
            }
            // Howell closure: p^(N - val) * pivot row has a zero pivot entry.
            if val > 0 {
                let s = ctx.p_pow(ctx.precision() - val);
                let extra: Vec<BigInt> = piv.iter().map(|x| (x * &s).mod_floor(m)).collect();
                if extra.iter().any(|x| !x.is_zero()) {
                    pending.push(extra);
                }
            }
            pending.retain(|r| r.iter().any(|x| !x.is_zero()));
            rows.push((c, val, piv));
        }
        ZpLattice { ctx: ctx.clone(), dim, rows }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        let m = self.ctx.modulus();
        let mut w: Vec<BigInt> = v.iter().map(|x| x.mod_floor(m)).collect();
        for (c, val, row) in &self.rows {
            if w[*c].is_zero() {
                continue;
            }
            let wv = self.ctx.residue_valuation(&w[*c]).expect("nonzero");
            if wv < *val {
                return false;
            }
            let f = &w[*c] / self.ctx.p_pow(*val);
            for j in *c..self.dim {
                w[j] = (&w[j] - &f * &row[j]).mod_floor(m);
            }
        }
        w.iter().all(|x| x.is_zero())
    }

    pub fn contains_lattice(&self, other: &ZpLattice) -> bool {
        other.rows.iter().all(|(_, _, r)| self.contains(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{q, qi};

    #[test]
    fn combinations_enumerate() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert!(combinations(2, 3).is_empty());
    }

    #[test]
    fn cofactor_matches_gauss() {
        let m = Matrix::from_rows(vec![
            vec![qi(2), qi(-1), qi(0)],
            vec![qi(1), qi(3), q(1, 2)],
            vec![qi(4), qi(0), qi(5)],
        ])
        .unwrap();
        assert_eq!(m.det_cofactor().unwrap(), q_det(&m).unwrap());
        let inv = q_inverse(&m).unwrap();
        assert_eq!(m.mul(&inv).unwrap(), q_identity(3));
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let m = Matrix::from_rows(vec![
            vec![BigInt::from(0), BigInt::from(2), BigInt::from(1)],
            vec![BigInt::from(3), BigInt::from(-1), BigInt::from(4)],
            vec![BigInt::from(5), BigInt::from(9), BigInt::from(-2)],
        ])
        .unwrap();
        assert_eq!(int_det(&m).unwrap(), m.det_cofactor().unwrap());
    }

    #[test]
    fn nullspace_of_rank_one() {
        let m = Matrix::from_rows(vec![vec![qi(1), qi(2)], vec![qi(2), qi(4)]]).unwrap();
        let ns = q_nullspace(&m);
        assert_eq!(ns.len(), 1);
        assert!(m.apply(&ns[0]).unwrap().iter().all(|x| x.is_zero()));
    }

    #[test]
    fn smith_over_z3() {
        let ctx = PadicContext::new(3, 10).unwrap();
        let m = Matrix::from_rows(vec![vec![ctx.int(3), ctx.int(6)], vec![ctx.int(9), ctx.int(27)]])
            .unwrap();
        let s = dvr_smith(&m, &ctx);
        // det = 81 - 54 = 27, first invariant 3
        assert_eq!(s.invariant_valuations, vec![1, 2]);
    }

    #[test]
    fn lattice_membership() {
        let ctx = PadicContext::new(5, 6).unwrap();
        let g = vec![vec![BigInt::from(5), BigInt::from(1)], vec![BigInt::from(0), BigInt::from(25)]];
        let l = ZpLattice::span(&ctx, 2, &g);
        assert!(l.contains(&[BigInt::from(10), BigInt::from(2)]));
        assert!(l.contains(&[BigInt::from(0), BigInt::from(50)]));
        assert!(!l.contains(&[BigInt::from(0), BigInt::from(5)]));
        assert!(!l.contains(&[BigInt::from(1), BigInt::from(0)]));
    }
}
