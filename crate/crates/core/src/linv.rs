//! L-invariant matrices, the ideals `I_k`, Greenberg's formula and the
//! comparison between the product of Greenberg L-invariants and `det L`.
//!
//! A log-Jacobian `G` has rows indexed by the `T_i` and columns by the `X_j`:
//! `G_{ij} = d log(1 + T_i) / d log(1 + X_j)`.

use crate::error::{Error, Result};
use crate::linalg::{q_det, q_inverse, Matrix, QMatrix, ZpLattice};
use crate::iwasawa::LayerRing;
use crate::module_theory::fitting_minors;
use crate::padic::{PadicContext, PadicNumber};
use crate::poly::{parse_rational, ZpPoly};
use crate::report::{Report, Tally};
use crate::sl2::MCoeffTable;
use crate::weight::norm_log_derivative;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn qint(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Full log-Jacobian of size `(n+1) x (n+1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogJacobian {
    pub n: usize,
    pub entries: QMatrix,
}

impl LogJacobian {
    pub fn new(entries: QMatrix) -> Result<Self> {
        if !entries.is_square() || entries.rows() < 2 {
            return Err(Error::DimensionMismatch(format!(
                "log-Jacobian must be square of size n+1 >= 2, got {}x{}",
                entries.rows(),
                entries.cols()
            )));
        }
        Ok(LogJacobian { n: entries.rows() - 1, entries })
    }

    /// `prod (1 + T_i)` is constant: every column of `G` sums to zero.
    pub fn is_constrained(&self) -> bool {
        (0..=self.n).all(|j| (0..=self.n).map(|i| self.entries.get(i, j).clone()).sum::<BigRational>().is_zero())
    }

    /// The `n x (n+1)` reduced form: the last `T` is dropped, being determined
    /// by the others through the constraint.
    pub fn reduced(&self) -> QMatrix {
        let rows: Vec<usize> = (0..self.n).collect();
        let cols: Vec<usize> = (0..=self.n).collect();
        self.entries.submatrix(&rows, &cols)
    }

    pub fn l_matrix(&self) -> Result<LMatrix> {
        l_matrix(&self.reduced())
    }

    /// `n` on the first line, then `n+1` rows of `num/den` entries.
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for i in 0..=self.n {
            let row: Vec<String> = self.entries.row(i).iter().map(|x| x.to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut tokens = text.split_whitespace();
        let n: usize = tokens
            .next()
            .ok_or(Error::Parse("empty Jacobian file".into()))?
            .parse()
            .map_err(|_| Error::Parse("bad header".into()))?;
        let vals = tokens.map(parse_rational).collect::<Result<Vec<_>>>()?;
        if vals.len() != (n + 1) * (n + 1) {
            return Err(Error::DimensionMismatch(format!("{} entries for n={n}", vals.len())));
        }
        Self::new(Matrix::new(n + 1, n + 1, vals)?)
    }
}

/// D-vector files: one rational per line.
pub fn parse_d_vector(text: &str) -> Result<Vec<BigRational>> {
    text.split_whitespace().map(parse_rational).collect()
}

/// `L_{ij} = J_{i,last} - J_{ij}` and its determinant.
#[derive(Clone, Debug, PartialEq)]
pub struct LMatrix {
    pub matrix: QMatrix,
    pub det: BigRational,
}

/// From a reduced Jacobian of shape `r x (r+1)`.
pub fn l_matrix(j: &QMatrix) -> Result<LMatrix> {
    let r = j.rows();
    if j.cols() != r + 1 || r == 0 {
        return Err(Error::DimensionMismatch(format!("reduced Jacobian must be r x (r+1), got {}x{}", r, j.cols())));
    }
    let matrix = Matrix::from_fn(r, r, |i, c| j.get(i, r) - j.get(i, c));
    let det = q_det(&matrix)?;
    Ok(LMatrix { matrix, det })
}

/// `I_k` in `B_k`, computed from the minors of `(S 1 | L)` and from
/// `sum_i S^i F^(i)(L)`.
#[derive(Clone, Debug)]
pub struct LInvariantIdeal {
    pub k: u32,
    pub minor_generators: Vec<ZpPoly>,
    pub expansion_generators: Vec<ZpPoly>,
    layer: LayerRing,
    lattice: ZpLattice,
}

fn ideal_lattice(layer: &LayerRing, ctx: &PadicContext, gens: &[ZpPoly]) -> ZpLattice {
    let d = layer.rank();
    let mut vecs = Vec::new();
    for g in gens {
        let mut cur = layer.reduce(g);
        for _ in 0..d {
            vecs.push(cur.to_vec(d));
            cur = layer.reduce(&cur.shift(1));
        }
    }
    ZpLattice::span(ctx, d, &vecs)
}

impl LInvariantIdeal {
    pub fn layer(&self) -> &LayerRing {
        &self.layer
    }

    /// Do the two generator sets span the same ideal of `B_k`?
    pub fn routes_agree(&self, ctx: &PadicContext) -> bool {
        let other = ideal_lattice(&self.layer, ctx, &self.expansion_generators);
        self.lattice.contains_lattice(&other) && other.contains_lattice(&self.lattice)
    }

    pub fn contains(&self, f: &ZpPoly) -> bool {
        self.lattice.contains(&self.layer.reduce(f).to_vec(self.layer.rank()))
    }

    /// Generators reduced into `B_k`, zeros dropped.
    pub fn generators(&self) -> Vec<ZpPoly> {
        self.minor_generators.iter().map(|g| self.layer.reduce(g)).filter(|g| !g.is_zero()).collect()
    }
}

pub fn i_k_ideal(l: &Matrix<PadicNumber>, ctx: &PadicContext, k: u32) -> Result<LInvariantIdeal> {
    let r = l.rows();
    if !l.is_square() || r == 0 {
        return Err(Error::DimensionMismatch(format!("L must be square, got {}x{}", r, l.cols())));
    }
    let entries = l.try_map(|x| {
        x.residue()
            .map(|c| ZpPoly::constant(ctx, &c))
            .ok_or(Error::InvalidContext("L must have integral entries".into()))
    })?;
    let s = ZpPoly::monomial(ctx, &BigInt::one(), 1);
    let zero = ZpPoly::zero(ctx);
    let aug = Matrix::from_fn(r, 2 * r, |i, j| {
        if j < r {
            if i == j { s.clone() } else { zero.clone() }
        } else {
            entries.get(i, j - r).clone()
        }
    });
    let minor_generators = fitting_minors(&aug, 0).expect("r <= 2r");
    let mut expansion_generators = Vec::new();
    for i in 0..=r {
        let si = s.pow(i);
        match fitting_minors(&entries, i) {
            Some(ms) => expansion_generators.extend(ms.iter().map(|m| m.mul(&si))),
            None => expansion_generators.push(si),
        }
    }
    let layer = LayerRing::new(ctx, k);
    let lattice = ideal_lattice(&layer, ctx, &minor_generators);
    Ok(LInvariantIdeal { k, minor_generators, expansion_generators, layer, lattice })
}

/// Outcome of the layer-`k` rescaling of `det L`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalingCheck {
    /// `None` when `det L = 0`.
    pub factor: Option<BigRational>,
    pub expected: BigRational,
    pub holds: bool,
}

/// Rewrites the reduced Jacobian at layer `k` through the norm substitution,
/// `d / d log(1 + X_{k,j}) = c^{-1} d / d log(1 + X_{0,j})` with `c` the
/// log-derivative of the norm map, and compares `det L` with `p^{-k r} det L_0`.
pub fn scaling_check(j: &QMatrix, p: u64, k: u32) -> Result<ScalingCheck> {
    let c = norm_log_derivative(p, k, 6)?.ok_or(Error::InvalidContext("norm map is not a power map".into()))?;
    let base = l_matrix(j)?;
    let layered = l_matrix(&j.scale(&qint(c).recip()))?;
    let r = j.rows() as u32;
    let expected = qint(BigInt::from(p).pow(k * r)).recip();
    let factor = (!base.det.is_zero()).then(|| &layered.det / &base.det);
    let holds = layered.det == &base.det * &expected;
    Ok(ScalingCheck { factor, expected, holds })
}

fn check_direction(n: usize, y: &[BigRational]) -> Result<()> {
    if y.len() != n + 1 {
        return Err(Error::DimensionMismatch(format!("direction of length {} for n={n}", y.len())));
    }
    if !y.iter().sum::<BigRational>().is_zero() {
        return Err(Error::DegenerateDirection);
    }
    Ok(())
}

/// `L^Gr_j = -(sum_i M_{n,j,i-1} (G y)_i) / (sum_i M_{n,j,i-1} y_i)`.
pub fn greenberg_l(j: usize, table: &MCoeffTable, g: &LogJacobian, y: &[BigRational]) -> Result<BigRational> {
    let n = g.n;
    if table.m != n {
        return Err(Error::DimensionMismatch(format!("M table of degree {} for n={n}", table.m)));
    }
    if j == 0 || j > n {
        return Err(Error::IndexOutOfRange(format!("j={j} not in 1..={n}")));
    }
    check_direction(n, y)?;
    let gy = g.entries.apply(y)?;
    let mut num = BigRational::zero();
    let mut den = BigRational::zero();
    for i in 0..=n {
        let m = qint(table.get(j, i).clone());
        num += &m * &gy[i];
        den += &m * &y[i];
    }
    if den.is_zero() {
        return Err(Error::DegenerateDirection);
    }
    Ok(-num / den)
}

/// Values of `L^Gr_j` over a sample of directions (`None` where the formula
/// degenerates), plus whether all defined values agree.
#[derive(Clone, Debug, PartialEq)]
pub struct GreenbergProfile {
    pub values: Vec<Option<BigRational>>,
    pub direction_independent: bool,
}

pub fn greenberg_profile(
    j: usize,
    table: &MCoeffTable,
    g: &LogJacobian,
    directions: &[Vec<BigRational>],
) -> Result<GreenbergProfile> {
    let mut values = Vec::with_capacity(directions.len());
    for y in directions {
        match greenberg_l(j, table, g, y) {
            Ok(v) => values.push(Some(v)),
            Err(Error::DegenerateDirection) => values.push(None),
            Err(e) => return Err(e),
        }
    }
    let mut defined = values.iter().flatten();
    let first = defined.next();
    let direction_independent = defined.all(|v| Some(v) == first);
    Ok(GreenbergProfile { values, direction_independent })
}

/// A random direction with integer coordinates summing to zero.
pub fn random_direction(rng: &mut ChaCha8Rng, n: usize) -> Vec<BigRational> {
    let mut y: Vec<BigRational> = (0..n).map(|_| qint(rng.gen_range(-9..=9))).collect();
    let s: BigRational = y.iter().sum();
    y.push(-s);
    y
}

/// `F' = -M'^{-1} diag(D) M'`, embedded as the top-left block of `G` with a
/// zero last column and a last row making every column sum to zero.
pub fn build_consistent_jacobian(d: &[BigRational]) -> Result<LogJacobian> {
    let n = d.len();
    if n == 0 {
        return Err(Error::DimensionMismatch("empty D".into()));
    }
    let f = f_prime(d)?;
    let g = Matrix::from_fn(n + 1, n + 1, |r, c| {
        if c == n {
            BigRational::zero()
        } else if r < n {
            f.get(r, c).clone()
        } else {
            -(0..n).map(|i| f.get(i, c).clone()).sum::<BigRational>()
        }
    });
    LogJacobian::new(g)
}

/// `F' = -M'^{-1} diag(D) M'` for `n = len(D)`.
pub fn f_prime(d: &[BigRational]) -> Result<QMatrix> {
    let n = d.len();
    let mp = MCoeffTable::new(n).reduced_matrix().map(|x| qint(x.clone()));
    let diag = Matrix::from_fn(n, n, |i, j| if i == j { -d[i].clone() } else { BigRational::zero() });
    q_inverse(&mp)?.mul(&diag)?.mul(&mp)
}

/// A direction on which no `j` degenerates: `y' = (1, t, t^2, ...)`, `y_{n+1} = -sum y'`.
pub fn admissible_direction(table: &MCoeffTable) -> Vec<BigRational> {
    let n = table.m;
    let mp = table.reduced_matrix();
    for t in 2i64.. {
        let yp: Vec<BigInt> = (0..n).map(|i| BigInt::from(t).pow(i as u32)).collect();
        let ok = (0..n).all(|j| !(0..n).map(|i| mp.get(j, i) * &yp[i]).sum::<BigInt>().is_zero());
        if ok {
            let mut y: Vec<BigRational> = yp.into_iter().map(qint).collect();
            let s: BigRational = y.iter().sum();
            y.push(-s);
            return y;
        }
    }
    unreachable!()
}

/// Both sides of the comparison for a target vector `D`.
#[derive(Clone, Debug, PartialEq)]
pub struct CompareCheck {
    pub greenberg: Vec<BigRational>,
    pub product: BigRational,
    pub det_l: BigRational,
    pub det_f_prime: BigRational,
    /// `prod L^Gr_j = det L`
    pub holds: bool,
    /// `prod D_j = (-1)^n det F'`
    pub intermediate_holds: bool,
}

pub fn compare_check(d: &[BigRational]) -> Result<CompareCheck> {
    let n = d.len();
    let g = build_consistent_jacobian(d)?;
    let table = MCoeffTable::new(n);
    let y = admissible_direction(&table);
    let greenberg = (1..=n).map(|j| greenberg_l(j, &table, &g, &y)).collect::<Result<Vec<_>>>()?;
    let product: BigRational = greenberg.iter().product();
    let det_l = g.l_matrix()?.det;
    let det_f_prime = q_det(&f_prime(d)?)?;
    let prod_d: BigRational = d.iter().product();
    let sign = if n % 2 == 0 { BigRational::one() } else { -BigRational::one() };
    Ok(CompareCheck {
        holds: product == det_l && greenberg.as_slice() == d,
        intermediate_holds: prod_d == sign * &det_f_prime,
        greenberg,
        product,
        det_l,
        det_f_prime,
    })
}

pub const COMPARE_CASES_PER_N: usize = 100;
pub const IK_CASES_PER_SHAPE: usize = 20;

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(rng.gen_range(-20..=20).into(), rng.gen_range(1..=7).into())
}

/// Randomized comparison, direction independence, scaling and `I_k` checks.
pub fn l_invariant_suite(seed: u64) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new(seed);

    let mut cmp = Tally::default();
    let mut inter = Tally::default();
    let mut dirs = Tally::default();
    for case in 0..5 * COMPARE_CASES_PER_N {
        let n = 1 + case / COMPARE_CASES_PER_N;
        let d: Vec<BigRational> = (0..n).map(|_| random_rational(&mut rng)).collect();
        let c = compare_check(&d)?;
        cmp.record(c.holds, || format!("n={n},product={},det={}", c.product, c.det_l));
        inter.record(c.intermediate_holds, || format!("n={n},detF'={}", c.det_f_prime));
        let g = build_consistent_jacobian(&d)?;
        let table = MCoeffTable::new(n);
        let ys: Vec<Vec<BigRational>> = (0..10).map(|_| random_direction(&mut rng, n)).collect();
        let mut ok = g.is_constrained();
        for j in 1..=n {
            let prof = greenberg_profile(j, &table, &g, &ys)?;
            ok &= prof.direction_independent && prof.values.iter().flatten().all(|v| *v == d[j - 1]);
        }
        dirs.record(ok, || format!("n={n}"));
    }
    report.push(cmp.line("linv.compare", ""));
    report.push(inter.line("linv.det_f_prime", ""));
    report.push(dirs.line("linv.direction_independence", ""));

    let mut scale = Tally::default();
    for n in 2..=5usize {
        for k in 0..=3u32 {
            for p in [3u64, 5] {
                let j = loop {
                    let j = Matrix::from_fn(n - 1, n, |_, _| qint(rng.gen_range(-9..=9)));
                    if !l_matrix(&j)?.det.is_zero() {
                        break j;
                    }
                };
                let s = scaling_check(&j, p, k)?;
                scale.record(s.holds, || format!("n={n},k={k},p={p}"));
            }
        }
    }
    report.push(scale.line("linv.scaling", ""));

    let mut ik = Tally::default();
    let mut i0 = Tally::default();
    for n in 2..=5usize {
        for k in 0..=2u32 {
            for case in 0..IK_CASES_PER_SHAPE {
                let p = if case % 2 == 0 { 3 } else { 5 };
                let ctx = PadicContext::new(p, 20)?;
                let l = Matrix::from_fn(n - 1, n - 1, |_, _| ctx.int(rng.gen_range(-9..=9)));
                let ideal = i_k_ideal(&l, &ctx, k)?;
                ik.record(ideal.routes_agree(&ctx), || format!("n={n},k={k},p={p}"));
                if k == 0 {
                    let det = l.det_cofactor()?;
                    let principal = ideal_lattice(ideal.layer(), &ctx, &[ZpPoly::constant(&ctx, &det.residue().expect("integral"))]);
                    let ok = principal.contains_lattice(&ideal.lattice) && ideal.lattice.contains_lattice(&principal);
                    i0.record(ok, || format!("n={n},p={p},det={:?}", det.signed_residue()));
                }
            }
        }
    }
    report.push(ik.line("linv.i_k_expansion", ""));
    report.push(i0.line("linv.i_0_det", ""));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::qi;

    fn qm(rows: &[&[i64]]) -> QMatrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn l_matrix_examples() {
        assert_eq!(l_matrix(&qm(&[&[0, 7]])).unwrap().det, qi(7));
        assert_eq!(l_matrix(&qm(&[&[1, 1, 5], &[2, 2, 3]])).unwrap().det, qi(0));
        assert!(matches!(l_matrix(&qm(&[&[1, 2]]).transpose()), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn greenberg_scalar() {
        let l = qi(5);
        let g = LogJacobian::new(Matrix::from_rows(vec![vec![-l.clone(), qi(0)], vec![l.clone(), qi(0)]]).unwrap()).unwrap();
        let t = MCoeffTable::new(1);
        assert_eq!(greenberg_l(1, &t, &g, &[qi(1), qi(-1)]).unwrap(), l);
        assert_eq!(greenberg_l(1, &t, &g, &[qi(3), qi(-3)]).unwrap(), l);
        assert_eq!(build_consistent_jacobian(&[l.clone()]).unwrap(), g);
        assert_eq!(greenberg_l(1, &t, &g, &[qi(0), qi(0)]), Err(Error::DegenerateDirection));
    }

    #[test]
    fn compare_ones() {
        for n in 1..=5 {
            let c = compare_check(&vec![qi(1); n]).unwrap();
            assert!(c.holds && c.intermediate_holds);
            assert_eq!(c.det_l, qi(1));
        }
        assert!(f_prime(&[qi(0), qi(0)]).unwrap().entries().iter().all(|x| x.is_zero()));
    }

    #[test]
    fn scaling_factor() {
        let s = scaling_check(&qm(&[&[2, 9]]), 3, 1).unwrap();
        assert!(s.holds);
        assert_eq!(s.factor, Some(BigRational::new(1.into(), 3.into())));
        let j = qm(&[&[1, 2, 3, 4], &[0, 1, 5, 2], &[7, 1, 1, 1]]);
        let s = scaling_check(&j, 5, 2).unwrap();
        assert!(s.holds);
        assert_eq!(s.factor, Some(BigRational::new(1.into(), BigInt::from(5).pow(6))));
    }

    #[test]
    fn i_k_examples() {
        let ctx = PadicContext::new(3, 12).unwrap();
        let l = Matrix::from_rows(vec![vec![ctx.int(2), ctx.int(3)], vec![ctx.int(4), ctx.int(9)]]).unwrap();
        let s = |c: i64, e: usize| ZpPoly::monomial(&ctx, &BigInt::from(c), e);
        for k in 0..=2 {
            let i = i_k_ideal(&l, &ctx, k).unwrap();
            assert!(i.routes_agree(&ctx));
            assert!(i.contains(&s(6, 0)) && i.contains(&s(2, 1)) && i.contains(&s(1, 2)));
            if k == 0 {
                assert!(!i.contains(&s(1, 0)) && !i.contains(&s(2, 0)));
            }
        }
        let zero = Matrix::from_fn(2, 2, |_, _| ctx.zero());
        let i = i_k_ideal(&zero, &ctx, 1).unwrap();
        assert!(i.contains(&s(1, 2)) && !i.contains(&s(1, 1)));
    }

    #[test]
    fn jacobian_text() {
        let g = build_consistent_jacobian(&[qi(2), BigRational::new(1.into(), 3.into())]).unwrap();
        assert_eq!(LogJacobian::from_text(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn suite_passes() {
        let r = l_invariant_suite(5).unwrap();
        assert!(r.all_pass(), "{}", r.render());
    }
}
