//! Symmetric powers of the standard representation of `GL_2`, Clebsch-Gordan
//! projections and the coefficients `C` and `M` built from them.
//!
//! Everything here is exact over `Q`. `Sym^n V` has basis
//! `g_{n,l} = e_1^{n-l} e_2^l`, `l = 0..n` (`e_2` is also written `e_{-1}`).

use crate::error::{Error, Result};
use crate::linalg::{q_det, q_identity, q_inverse, Matrix, QMatrix};
use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fact(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn qint(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn sign(e: usize) -> BigRational {
    if e % 2 == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

fn check_2x2(g: &QMatrix) -> Result<()> {
    if g.rows() != 2 || g.cols() != 2 {
        return Err(Error::DimensionMismatch(format!("expected a 2x2 matrix, got {}x{}", g.rows(), g.cols())));
    }
    Ok(())
}

/// Coefficients of `(u0 e_1 + u1 e_2)^m` on `e_1^{m-l} e_2^l`.
fn linear_power(u0: &BigRational, u1: &BigRational, m: usize) -> Vec<BigRational> {
    (0..=m)
        .map(|l| qint(binomial(m, l)) * num_traits::pow(u0.clone(), m - l) * num_traits::pow(u1.clone(), l))
        .collect()
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// The matrix of `Sym^n g` on the basis `g_{n,l}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymPowerMap {
    pub n: usize,
    pub matrix: QMatrix,
}

/// `Sym^n g`, with `g e_1 = g_00 e_1 + g_10 e_2` and `g e_2 = g_01 e_1 + g_11 e_2`.
pub fn sym_power(g: &QMatrix, n: usize) -> Result<SymPowerMap> {
    check_2x2(g)?;
    let cols: Vec<Vec<BigRational>> = (0..=n)
        .map(|l| {
            poly_mul(
                &linear_power(g.get(0, 0), g.get(1, 0), n - l),
                &linear_power(g.get(0, 1), g.get(1, 1), l),
            )
        })
        .collect();
    Ok(SymPowerMap { n, matrix: Matrix::from_fn(n + 1, n + 1, |i, j| cols[j][i].clone()) })
}

/// `Sym^{2j}(g) det(g)^{-j}`.
pub fn a_twist(g: &QMatrix, j: usize) -> Result<QMatrix> {
    check_2x2(g)?;
    let d = q_det(g)?;
    if d.is_zero() {
        return Err(Error::SingularInput);
    }
    let s = sym_power(g, 2 * j)?.matrix;
    Ok(s.scale(&num_traits::pow(d.recip(), j)))
}

/// `M_{m,k,i} = sum_a (-1)^a m!(m-i+a)!(i+k-a)! / (a!(i-a)!(k-a)!(m-i-k+a)!)`,
/// `max(0, i+k-m) <= a <= min(i, k)`.
pub fn m_coeff(m: usize, k: usize, i: usize) -> Result<BigInt> {
    if k > m || i > m {
        return Err(Error::IndexOutOfRange(format!("M_{{{m},{k},{i}}}")));
    }
    let mut total = BigInt::zero();
    for a in (i + k).saturating_sub(m)..=i.min(k) {
        let num = fact(m) * fact(m - i + a) * fact(i + k - a);
        let den = fact(a) * fact(i - a) * fact(k - a) * fact(m + a - i - k);
        let term = num / den;
        if a % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

/// All `M_{m,k,i}`, `0 <= k, i <= m`.
#[derive(Clone, Debug, PartialEq)]
pub struct MCoeffTable {
    pub m: usize,
    /// `entries[k][i]`
    pub entries: Vec<Vec<BigInt>>,
}

impl MCoeffTable {
    pub fn new(m: usize) -> Self {
        let entries = (0..=m).map(|k| (0..=m).map(|i| m_coeff(m, k, i).expect("in range")).collect()).collect();
        MCoeffTable { m, entries }
    }

    pub fn get(&self, k: usize, i: usize) -> &BigInt {
        &self.entries[k][i]
    }

    /// `m k i value` rows.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (k, row) in self.entries.iter().enumerate() {
            for (i, v) in row.iter().enumerate() {
                s.push_str(&format!("{} {k} {i} {v}\n", self.m));
            }
        }
        s
    }

    /// The square matrix `(M_{n,k,i})_{k,i}`.
    pub fn matrix(&self) -> Matrix<BigInt> {
        Matrix::from_fn(self.m + 1, self.m + 1, |k, i| self.entries[k][i].clone())
    }

    /// `M'_{j,i} = M_{n,j,i} - M_{n,j,n}`, `1 <= j <= n`, `0 <= i < n`.
    pub fn reduced_matrix(&self) -> Matrix<BigInt> {
        let n = self.m;
        Matrix::from_fn(n, n, |j, i| &self.entries[j + 1][i] - &self.entries[j + 1][n])
    }
}

/// `phi_n : Sym^n V -> Sym^n V*`, `e_1^{n-i} e_2^i -> (-1)^{n-i} (e_1*)^i (e_2*)^{n-i}`,
/// with `Sym^n V*` in its own monomial basis indexed by the power of `e_2*`.
pub fn phi_n_dual(n: usize) -> QMatrix {
    Matrix::from_fn(n + 1, n + 1, |row, col| if row + col == n { sign(n - col) } else { BigRational::zero() })
}

/// The equivariant projection `Sym^a V ⊗ Sym^b V -> Sym^r V`, `r = a + b - 2t`.
#[derive(Clone, Debug, PartialEq)]
pub struct CGProjection {
    pub a: usize,
    pub b: usize,
    pub r: usize,
    /// `tensor[l1][l2][w]`: coefficient of `g_{r,w}` in the image of `g_{a,l1} ⊗ g_{b,l2}`.
    pub tensor: Vec<Vec<Vec<BigRational>>>,
}

/// `d^{s} / dx^{i} dy^{s-i}` of `x^alpha y^beta`: coefficient and exponents.
fn partial(alpha: usize, beta: usize, dx: usize, dy: usize) -> Option<(BigInt, usize, usize)> {
    if dx > alpha || dy > beta {
        return None;
    }
    Some((fact(alpha) / fact(alpha - dx) * fact(beta) / fact(beta - dy), alpha - dx, beta - dy))
}

/// The `t`-th transvectant, scaled by `(-1)^t (a-t)!(b-t)!/(a!b!)` so that
/// `e_2^a ⊗ e_1^b` maps to `e_1^{b-t} e_2^{a-t}` with coefficient one.
pub fn cg_projection(a: usize, b: usize, r: usize) -> Result<CGProjection> {
    if r > a + b || r < a.abs_diff(b) || (a + b - r) % 2 != 0 {
        return Err(Error::RangeParityError { a, b, r });
    }
    let t = (a + b - r) / 2;
    let scale = sign(t) * qint(fact(a - t) * fact(b - t)) / qint(fact(a) * fact(b));
    let mut tensor = vec![vec![vec![BigRational::zero(); r + 1]; b + 1]; a + 1];
    for (l1, plane) in tensor.iter_mut().enumerate() {
        for (l2, out) in plane.iter_mut().enumerate() {
            // f = x^{a-l1} y^{l1}, g = x^{b-l2} y^{l2}
            for h in 0..=t {
                let Some((cf, fx, fy)) = partial(a - l1, l1, t - h, h) else { continue };
                let Some((cg, gx, gy)) = partial(b - l2, l2, h, t - h) else { continue };
                debug_assert_eq!(fx + gx, r - (fy + gy));
                let c = sign(h) * qint(binomial(BigInt::from(t), BigInt::from(h)) * cf * cg) * &scale;
                out[fy + gy] += c;
            }
        }
    }
    Ok(CGProjection { a, b, r, tensor })
}

/// `A ⊗ B` with row/column index `i (rows of B) + k`.
pub fn kron(a: &QMatrix, b: &QMatrix) -> QMatrix {
    Matrix::from_fn(a.rows() * b.rows(), a.cols() * b.cols(), |i, j| {
        a.get(i / b.rows(), j / b.cols()) * b.get(i % b.rows(), j % b.cols())
    })
}

impl CGProjection {
    pub fn apply(&self, v: &[BigRational], w: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.r + 1];
        for (l1, x) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (l2, y) in w.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let c = x * y;
                for (o, t) in out.iter_mut().zip(&self.tensor[l1][l2]) {
                    *o += &c * t;
                }
            }
        }
        out
    }

    /// `(r+1) x (a+1)(b+1)` matrix; column `l1 (b+1) + l2`.
    pub fn matrix(&self) -> QMatrix {
        Matrix::from_fn(self.r + 1, (self.a + 1) * (self.b + 1), |w, c| {
            self.tensor[c / (self.b + 1)][c % (self.b + 1)][w].clone()
        })
    }

    pub fn is_nonzero(&self) -> bool {
        self.tensor.iter().flatten().flatten().any(|x| !x.is_zero())
    }

    /// `Xi (Sym^a g ⊗ Sym^b g) = Sym^r g Xi`.
    pub fn is_equivariant_at(&self, g: &QMatrix) -> Result<bool> {
        let lhs = self.matrix().mul(&kron(&sym_power(g, self.a)?.matrix, &sym_power(g, self.b)?.matrix))?;
        let rhs = sym_power(g, self.r)?.matrix.mul(&self.matrix())?;
        Ok(lhs == rhs)
    }
}

/// `phi_{n,n,2k} = (-1)^{n-k} n!n!/(n-k)! Xi_{n,n,2k} (1 ⊗ phi_n^{-1})` on
/// `End(Sym^n V) = Sym^n V ⊗ Sym^n V*`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiComposite {
    pub n: usize,
    pub k: usize,
    /// `tensor[i][j][w]`: coefficient of `e_1^{2k-w} e_2^w` in the image of
    /// `e_1^{n-i} e_2^i ⊗ (e_1*)^{n-j} (e_2*)^j`.
    pub tensor: Vec<Vec<Vec<BigRational>>>,
}

pub fn phi_composite(n: usize, k: usize) -> Result<PhiComposite> {
    if k > n {
        return Err(Error::IndexOutOfRange(format!("k={k} > n={n}")));
    }
    let xi = cg_projection(n, n, 2 * k)?;
    let scale = sign(n - k) * qint(fact(n) * fact(n)) / qint(fact(n - k));
    // phi_n^{-1}((e_1*)^{n-j} (e_2*)^j) = (-1)^j g_{n,n-j}
    let tensor = (0..=n)
        .map(|i| {
            (0..=n)
                .map(|j| xi.tensor[i][n - j].iter().map(|c| c * &scale * sign(j)).collect())
                .collect()
        })
        .collect();
    Ok(PhiComposite { n, k, tensor })
}

impl PhiComposite {
    /// `C^{i, n-j, w}_{n,n,2k}`, defined by `phi(.) = (-1)^j sum_w C^{i,n-j,w} e_1^{2k-w} e_2^w`.
    pub fn c_coeff(&self, i: usize, j: usize, w: usize) -> BigRational {
        &self.tensor[i][j][w] * sign(j)
    }

    /// Coordinates of weight `2(j - i)` tensors land only on weight `2(k - w)`.
    pub fn preserves_weights(&self) -> bool {
        (0..=self.n).all(|i| {
            (0..=self.n).all(|j| {
                (0..=2 * self.k).all(|w| self.tensor[i][j][w].is_zero() || self.k + i == w + j)
            })
        })
    }
}

/// `(C^{i,n-i,k}_{n,n,2k})_{i,k}`.
pub fn c_matrix(n: usize) -> Result<QMatrix> {
    let phis = (0..=n).map(|k| phi_composite(n, k)).collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_fn(n + 1, n + 1, |i, k| phis[k].c_coeff(i, i, k)))
}

/// `M_{n,k,i} = (-1)^i binom(n,i) C^{i,n-i,k}` for all `k, i`.
pub fn m_from_c_holds(n: usize) -> Result<bool> {
    let c = c_matrix(n)?;
    let table = MCoeffTable::new(n);
    Ok((0..=n).all(|k| {
        (0..=n).all(|i| sign(i) * qint(binomial(n, i)) * c.get(i, k) == qint(table.get(k, i).clone()))
    }))
}

/// A random element of `SL_2(Q)` as a product of elementary matrices.
pub fn random_sl2(rng: &mut ChaCha8Rng) -> QMatrix {
    let mut g = q_identity(2);
    for _ in 0..rng.gen_range(2..=4) {
        let x = BigRational::new(rng.gen_range(-5..=5).into(), rng.gen_range(1..=3).into());
        let e = if rng.gen_bool(0.5) {
            Matrix::from_rows(vec![vec![BigRational::one(), x], vec![BigRational::zero(), BigRational::one()]])
        } else {
            Matrix::from_rows(vec![vec![BigRational::one(), BigRational::zero()], vec![x, BigRational::one()]])
        };
        g = g.mul(&e.expect("2x2")).expect("2x2");
    }
    let t = BigRational::new(rng.gen_range(1..=4).into(), rng.gen_range(1..=4).into());
    let d = Matrix::from_rows(vec![vec![t.clone(), BigRational::zero()], vec![BigRational::zero(), t.recip()]]);
    g.mul(&d.expect("2x2")).expect("2x2")
}

fn sym_trace(g: &QMatrix, n: usize) -> Result<BigRational> {
    let s = sym_power(g, n)?.matrix;
    Ok((0..=n).map(|i| s.get(i, i).clone()).sum())
}

/// `chi_{n-1}(g) chi_{n-1}(g^{-1}) = sum_{j<n} chi_{2j}(g)` and
/// `chi_{n-1}(g) chi_n(g) = sum_{odd m < 2n} chi_m(g)` on random `g`.
pub fn decomposition_check(n: usize, sample_count: usize, seed: u64) -> Result<bool> {
    if n < 2 {
        return Err(Error::IndexOutOfRange(format!("n={n} < 2")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..sample_count {
        let g = random_sl2(&mut rng);
        let gi = q_inverse(&g)?;
        let adjoint = sym_trace(&g, n - 1)? * sym_trace(&gi, n - 1)?;
        let mut sum = BigRational::zero();
        for j in 0..n {
            sum += sym_trace(&g, 2 * j)?;
        }
        if adjoint != sum {
            return Ok(false);
        }
        let mixed = sym_trace(&g, n - 1)? * sym_trace(&g, n)?;
        let mut odd = BigRational::zero();
        for m in (1..2 * n).step_by(2) {
            odd += sym_trace(&g, m)?;
        }
        if mixed != odd {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `det M` and `det M'`, checking `det M = (-1)^n M_{n,0,n} det M'`.
#[derive(Clone, Debug, PartialEq)]
pub struct MDeterminants {
    pub n: usize,
    pub det_m: BigInt,
    pub det_m_prime: BigInt,
    pub relation_holds: bool,
}

pub fn m_determinants(n: usize) -> Result<MDeterminants> {
    let t = MCoeffTable::new(n);
    let det_m = crate::linalg::int_det(&t.matrix())?;
    let det_m_prime = if n == 0 { BigInt::one() } else { crate::linalg::int_det(&t.reduced_matrix())? };
    let sgn = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    let relation_holds = det_m == sgn * t.get(0, n) * &det_m_prime;
    Ok(MDeterminants { n, det_m, det_m_prime, relation_holds })
}

/// `|det M'|` is nonzero; convenience for reports.
pub fn m_prime_is_invertible(n: usize) -> Result<bool> {
    Ok(!m_determinants(n)?.det_m_prime.abs().is_zero())
}
