//! Randomized verification of the standard Fitting-ideal properties over the
//! desk rings `Z_p` and `Z_p[[S]]`.

use super::fitting::{char_mod_s_check, CharIdeal, Ideal, Presentation};
use super::ideal::{prepare_poly, IwasawaIdeal};
use crate::error::Result;
use crate::iwasawa::IwasawaSeries;
use crate::linalg::{padic_rank, Matrix};
use crate::padic::{PadicContext, PadicNumber};
use crate::poly::ZpPoly;
use crate::report::{Report, Tally};
use crate::ring::Ring;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PRECISION: u32 = 24;
const TRUNCATION: usize = 32;

fn ctx_for(case: usize) -> PadicContext {
    PadicContext::new(if case % 2 == 0 { 3 } else { 5 }, PRECISION).expect("valid")
}

fn rand_zp(rng: &mut ChaCha8Rng, ctx: &PadicContext) -> PadicNumber {
    if rng.gen_bool(0.15) {
        return ctx.zero();
    }
    let u = ctx.int(rng.gen_range(-12..=12));
    u * ctx.int(ctx.p() as i64).pow(rng.gen_range(0..3))
}

fn rand_poly(rng: &mut ChaCha8Rng, ctx: &PadicContext, max_deg: usize) -> ZpPoly {
    if rng.gen_bool(0.12) {
        return ZpPoly::zero(ctx);
    }
    let d = rng.gen_range(0..=max_deg);
    let c: Vec<i64> = (0..=d).map(|_| rng.gen_range(-6..=6)).collect();
    let p = ZpPoly::from_i64s(ctx, &c);
    if rng.gen_bool(0.3) {
        p.scale(&ctx.prime())
    } else {
        p
    }
}

fn rand_matrix<R: Clone>(r: usize, s: usize, mut f: impl FnMut() -> R) -> Matrix<R> {
    Matrix::from_fn(r, s, |_, _| f())
}

/// Random elementary row and column operations (plus swaps and sign changes).
fn scramble<R: Ring>(
    m: &Matrix<R>,
    rng: &mut ChaCha8Rng,
    ops: usize,
    mut coeff: impl FnMut(&mut ChaCha8Rng) -> R,
) -> Matrix<R> {
    let mut a = m.clone();
    let pick_two = |rng: &mut ChaCha8Rng, n: usize| {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        (i, j)
    };
    for _ in 0..ops {
        if a.rows() > 1 {
            let (i, j) = pick_two(rng, a.rows());
            let c = coeff(rng);
            for k in 0..a.cols() {
                let v = a.get(i, k).ring_add(&c.ring_mul(a.get(j, k)));
                a.set(i, k, v);
            }
            if rng.gen_bool(0.3) {
                a.swap_rows(i, j);
            }
        }
        if a.cols() > 1 {
            let (i, j) = pick_two(rng, a.cols());
            let c = coeff(rng);
            for k in 0..a.rows() {
                let v = a.get(k, i).ring_add(&c.ring_mul(a.get(k, j)));
                a.set(k, i, v);
            }
            if rng.gen_bool(0.3) {
                let k = rng.gen_range(0..a.rows());
                for c in 0..a.cols() {
                    let v = a.get(k, c).ring_neg();
                    a.set(k, c, v);
                }
            }
        }
    }
    a
}

fn iw(ctx: &PadicContext, m: &Matrix<ZpPoly>) -> Presentation {
    Presentation::iwasawa(ctx, m.map(|p| IwasawaSeries::from_poly(p, TRUNCATION)))
}

fn zp(ctx: &PadicContext, m: &Matrix<PadicNumber>) -> Presentation {
    Presentation::zp(ctx, m.clone())
}

fn block<R: Ring>(a: &Matrix<R>, x: &Matrix<R>, c: &Matrix<R>, template: &R) -> Matrix<R> {
    let zero = template.zero_like();
    let (r1, s1) = (a.rows(), a.cols());
    Matrix::from_fn(r1 + c.rows(), s1 + c.cols(), |i, j| match (i < r1, j < s1) {
        (true, true) => a.get(i, j).clone(),
        (true, false) => x.get(i, j - s1).clone(),
        (false, true) => zero.clone(),
        (false, false) => c.get(i - r1, j - s1).clone(),
    })
}

/// `sum_{j+l=i} F^(j)(M1) F^(l)(M3)`.
fn convolution(a: &Presentation, c: &Presentation, i: usize) -> Result<Ideal> {
    let mut acc = a.fitting_ideal(0).mul(&c.fitting_ideal(i))?;
    for j in 1..=i {
        acc = acc.add(&a.fitting_ideal(j).mul(&c.fitting_ideal(i - j))?)?;
    }
    Ok(acc)
}

fn dims(p: &Presentation) -> String {
    format!("{}:{}x{}", p.ring_tag().as_str(), p.rows(), p.cols())
}

fn item1(rng: &mut ChaCha8Rng, cases: usize) -> Result<Tally> {
    let mut t = Tally::default();
    for case in 0..cases {
        let ctx = ctx_for(case);
        let r = rng.gen_range(1..=4);
        let s = rng.gen_range(r..=4);
        match case % 3 {
            0 => {
                // I = (p^e) in the DVR: minors computed after reduction.
                let h = rand_matrix(r, s, || rand_zp(rng, &ctx));
                let e = rng.gen_range(1..=4u32);
                let small = ctx.with_precision(e)?;
                let hr = h.try_map(|x| x.reduce_precision(&small))?;
                let (full, red) = (zp(&ctx, &h), zp(&small, &hr));
                let ok = (0..=r).all(|i| match (full.fitting_ideal(i), red.fitting_ideal(i)) {
                    (Ideal::Zp(a), Ideal::Zp(b)) => a.reduce_mod_power(e as i64) == b.reduce_mod_power(e as i64),
                    _ => false,
                });
                t.record(ok, || format!("{}mod{}^{e}", dims(&full), ctx.p()));
            }
            1 => {
                // I = (S): the quotient ring is Z_p.
                let h = rand_matrix(r, s, || rand_poly(rng, &ctx, 2));
                let pres = iw(&ctx, &h);
                let red = pres.at_s_zero()?;
                let mut ok = true;
                for i in 0..=r {
                    let (Ideal::Iwasawa(a), Ideal::Zp(b)) = (pres.fitting_ideal(i), red.fitting_ideal(i)) else {
                        ok = false;
                        break;
                    };
                    ok &= a.at_s_zero() == b;
                }
                t.record(ok, || format!("{}modS", dims(&pres)));
            }
            _ => {
                // I = (p): the quotient ring is the DVR F_p[[S]].
                let h = rand_matrix(r, s, || rand_poly(rng, &ctx, 2));
                let fp = ctx.with_precision(1)?;
                let hr = h.map(|p| p.with_context(&fp));
                let (pres, red) = (iw(&ctx, &h), iw(&fp, &hr));
                let mut ok = true;
                for i in 0..=r {
                    let (Ideal::Iwasawa(a), Ideal::Iwasawa(b)) = (pres.fitting_ideal(i), red.fitting_ideal(i)) else {
                        ok = false;
                        break;
                    };
                    ok &= a.mod_p_order() == b.mod_p_order();
                }
                t.record(ok, || format!("{}modp", dims(&pres)));
            }
        }
    }
    Ok(t)
}

fn item2(rng: &mut ChaCha8Rng, cases: usize) -> Result<Tally> {
    let mut t = Tally::default();
    for case in 0..cases {
        let ctx = ctx_for(case);
        let r1 = rng.gen_range(1..=2);
        let s1 = rng.gen_range(r1..=2);
        let r2 = rng.gen_range(1..=2);
        let s2 = rng.gen_range(r2..=2);
        let (m1, m2, sum) = if case % 2 == 0 {
            let a = rand_matrix(r1, s1, || rand_zp(rng, &ctx));
            let b = rand_matrix(r2, s2, || rand_zp(rng, &ctx));
            let d = a.block_diag(&b, &ctx.zero());
            (zp(&ctx, &a), zp(&ctx, &b), zp(&ctx, &d))
        } else {
            let a = rand_matrix(r1, s1, || rand_poly(rng, &ctx, 2));
            let b = rand_matrix(r2, s2, || rand_poly(rng, &ctx, 2));
            let d = a.block_diag(&b, &ZpPoly::zero(&ctx));
            (iw(&ctx, &a), iw(&ctx, &b), iw(&ctx, &d))
        };
        let mut ok = true;
        for i in 0..=r1 + r2 {
            ok &= sum.fitting_ideal(i).equals(&convolution(&m1, &m2, i)?)?;
        }
        t.record(ok, || dims(&sum));
    }
    Ok(t)
}

fn nonsingular_zp(rng: &mut ChaCha8Rng, ctx: &PadicContext, n: usize) -> Matrix<PadicNumber> {
    loop {
        let m = rand_matrix(n, n, || rand_zp(rng, ctx));
        if !m.det_cofactor().expect("square").is_zero() {
            return m;
        }
    }
}

fn nonsingular_poly(rng: &mut ChaCha8Rng, ctx: &PadicContext, n: usize) -> Matrix<ZpPoly> {
    loop {
        let m = rand_matrix(n, n, || rand_poly(rng, ctx, 2));
        if !m.det_cofactor().expect("square").is_zero() {
            return m;
        }
    }
}

fn item3(rng: &mut ChaCha8Rng, cases: usize) -> Result<Tally> {
    let mut t = Tally::default();
    for case in 0..cases {
        let ctx = ctx_for(case);
        let r1 = rng.gen_range(1..=2);
        let s1 = rng.gen_range(r1..=2);
        let r3 = rng.gen_range(1..=2);
        let (m1, m3, m2) = if case % 2 == 0 {
            let a = rand_matrix(r1, s1, || rand_zp(rng, &ctx));
            let c = nonsingular_zp(rng, &ctx, r3);
            let x = rand_matrix(r1, r3, || rand_zp(rng, &ctx));
            let h = block(&a, &x, &c, &ctx.zero());
            (zp(&ctx, &a), zp(&ctx, &c), zp(&ctx, &h))
        } else {
            let a = rand_matrix(r1, s1, || rand_poly(rng, &ctx, 2));
            let c = nonsingular_poly(rng, &ctx, r3);
            let x = rand_matrix(r1, r3, || rand_poly(rng, &ctx, 2));
            let h = block(&a, &x, &c, &ZpPoly::zero(&ctx));
            (iw(&ctx, &a), iw(&ctx, &c), iw(&ctx, &h))
        };
        let mut ok = true;
        for i in 0..=r1 + r3 {
            ok &= m2.fitting_ideal(i).contains(&convolution(&m1, &m3, i)?)?;
        }
        // M3 has a square presentation, so F(M2) = F(M1) F(M3).
        ok &= m2.fitting_ideal(0).equals(&m1.fitting_ideal(0).mul(&m3.fitting_ideal(0))?)?;
        t.record(ok, || dims(&m2));
    }
    Ok(t)
}

fn item4(rng: &mut ChaCha8Rng, cases: usize) -> Result<Tally> {
    let mut t = Tally::default();
    for case in 0..cases {
        let ctx = ctx_for(case);
        let r = rng.gen_range(1..=4);
        let s = rng.gen_range(r..=4);
        if case % 2 == 0 {
            // Inverting p turns Z_p into Q_p: F^(i) becomes (1) or (0) by rank.
            let mut h = rand_matrix(r, s, || rand_zp(rng, &ctx));
            if r > 1 && rng.gen_bool(0.4) {
                let k = ctx.int(rng.gen_range(-4..=4));
                for j in 0..s {
                    let v = h.get(0, j) * &k;
                    h.set(r - 1, j, v);
                }
            }
            let pres = zp(&ctx, &h);
            let rank = padic_rank(&h);
            let ok = (0..=r).all(|i| {
                let Ideal::Zp(f) = pres.fitting_ideal(i) else { return false };
                let by_rank = r <= i || s < r || rank >= r - i;
                !f.is_zero() == by_rank
            });
            t.record(ok, || format!("{}rank{rank}", dims(&pres)));
        } else {
            // Rows and columns carry p-power factors that are units after localization.
            let base = rand_matrix(r, s, || rand_poly(rng, &ctx, 2));
            let row_e: Vec<u32> = (0..r).map(|_| rng.gen_range(0..3)).collect();
            let col_e: Vec<u32> = (0..s).map(|_| rng.gen_range(0..3)).collect();
            let h = Matrix::from_fn(r, s, |i, j| base.get(i, j).scale(&ctx.p_pow(row_e[i] + col_e[j])));
            let (pres, cleared) = (iw(&ctx, &h), iw(&ctx, &content_cleared(&h, &ctx)));
            let mut ok = true;
            for i in 0..=r {
                let (Ideal::Iwasawa(a), Ideal::Iwasawa(b)) = (pres.fitting_ideal(i), cleared.fitting_ideal(i)) else {
                    ok = false;
                    break;
                };
                ok &= a.equals_after_inverting_p(&b)?;
            }
            t.record(ok, || dims(&pres));
        }
    }
    Ok(t)
}

/// Divides each row, then each column, by the largest power of p dividing it.
fn content_cleared(h: &Matrix<ZpPoly>, ctx: &PadicContext) -> Matrix<ZpPoly> {
    let content = |v: Vec<&ZpPoly>| v.iter().filter_map(|p| p.content_valuation()).min().unwrap_or(0);
    let mut m = h.clone();
    for i in 0..m.rows() {
        let c = content((0..m.cols()).map(|j| m.get(i, j)).collect());
        for j in 0..m.cols() {
            let v = m.get(i, j).div_p_pow(c, ctx);
            m.set(i, j, v);
        }
    }
    for j in 0..m.cols() {
        let c = content((0..m.rows()).map(|i| m.get(i, j)).collect());
        for i in 0..m.rows() {
            let v = m.get(i, j).div_p_pow(c, ctx);
            m.set(i, j, v);
        }
    }
    m
}

fn item5(rng: &mut ChaCha8Rng, cases: usize) -> Result<Tally> {
    let mut t = Tally::default();
    for case in 0..cases {
        let ctx = ctx_for(case);
        let r = rng.gen_range(1..=3);
        let s = rng.gen_range(r..=4);
        let h = loop {
            let h = rand_matrix(r, s, || rand_zp(rng, &ctx));
            if padic_rank(&h) == r {
                break h;
            }
        };
        let pres = zp(&ctx, &h);
        let (Ideal::Zp(f), CharIdeal::Zp(ch)) = (pres.fitting_ideal(0), pres.char_ideal()?) else {
            unreachable!()
        };
        let mut ok = f == ch;
        // Short exact sequence of torsion modules: valuations add.
        let (r1, r3) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
        let a = nonsingular_zp(rng, &ctx, r1);
        let c = nonsingular_zp(rng, &ctx, r3);
        let x = rand_matrix(r1, r3, || rand_zp(rng, &ctx));
        let m2 = zp(&ctx, &block(&a, &x, &c, &ctx.zero()));
        let (Ideal::Zp(fa), Ideal::Zp(fc), Ideal::Zp(fm)) =
            (zp(&ctx, &a).fitting_ideal(0), zp(&ctx, &c).fitting_ideal(0), m2.fitting_ideal(0))
        else {
            unreachable!()
        };
        ok &= fa.mul(&fc) == fm;
        t.record(ok, || format!("{}F={f}char={ch}", dims(&pres)));
    }
    Ok(t)
}

/// Height-one primes used by item 6: `(S + p)`, `(S - p)`, `(S + 2p)` and an
/// Eisenstein quadratic.
pub fn prime_pool(ctx: &PadicContext) -> Vec<ZpPoly> {
    let p = ctx.p() as i64;
    vec![
        ZpPoly::from_i64s(ctx, &[p, 1]),
        ZpPoly::from_i64s(ctx, &[-p, 1]),
        ZpPoly::from_i64s(ctx, &[2 * p, 1]),
        ZpPoly::from_i64s(ctx, &[p, p, 1]),
    ]
}

fn pool_product(rng: &mut ChaCha8Rng, ctx: &PadicContext, pool: &[ZpPoly]) -> ZpPoly {
    let mut f = ZpPoly::one(ctx);
    for _ in 0..rng.gen_range(0..=2) {
        f = f.mul(&pool[rng.gen_range(0..pool.len())]);
    }
    let e = rng.gen_range(0..=1);
    let unit = ZpPoly::from_i64s(ctx, &[[1, 2, -1][rng.gen_range(0..3)], rng.gen_range(-3..=3)]);
    f.mul(&unit).scale(&ctx.p_pow(e))
}

fn item6(rng: &mut ChaCha8Rng, cases: usize) -> Result<Tally> {
    let mut t = Tally::default();
    // (torsion block sizes, pseudo-null 1x2 blocks)
    let layouts: [(&[usize], usize); 8] = [
        (&[1], 0),
        (&[2], 0),
        (&[1, 1], 0),
        (&[2, 1], 0),
        (&[1], 1),
        (&[2], 1),
        (&[1, 1], 1),
        (&[2, 2], 0),
    ];
    for case in 0..cases {
        let ctx = ctx_for(case);
        let pool = prime_pool(&ctx);
        let zero = ZpPoly::zero(&ctx);
        let (sizes, nulls) = layouts[case % layouts.len()];
        let mut h = Matrix::from_fn(0, 0, |_, _| zero.clone());
        let mut expected = ZpPoly::one(&ctx);
        for &n in sizes {
            let b = if n == 1 {
                Matrix::from_fn(1, 1, |_, _| pool_product(rng, &ctx, &pool))
            } else {
                let (q1, q2) = (pool_product(rng, &ctx, &pool), pool_product(rng, &ctx, &pool));
                let x = rand_poly(rng, &ctx, 1);
                Matrix::from_rows(vec![vec![q1, x], vec![zero.clone(), q2]]).expect("2x2")
            };
            expected = expected.mul(&b.det_cofactor()?);
            h = h.block_diag(&b, &zero);
        }
        for _ in 0..nulls {
            // (a, b) coprime: B/(a, b) is finite, hence pseudo-null.
            let i = rng.gen_range(0..pool.len() - 1);
            let a = if rng.gen_bool(0.5) { ZpPoly::constant(&ctx, &ctx.prime()) } else { pool[i].clone() };
            let b = pool[i + 1].clone();
            h = h.block_diag(&Matrix::from_rows(vec![vec![a, b]])?, &zero);
        }
        let h = scramble(&h, rng, 3, |rng| rand_poly(rng, &ctx, 1));
        let pres = iw(&ctx, &h);
        let Ideal::Iwasawa(f0) = pres.fitting_ideal(0) else { unreachable!() };
        let exp_ideal = IwasawaIdeal::new(&ctx, vec![expected.clone()]);
        let exp_w = prepare_poly(&expected)?;
        let mut ok = f0.ord_p() == Some(exp_w.mu);
        for q in &pool {
            ok &= f0.ord_at(q)? == exp_ideal.ord_at(q)?;
        }
        let CharIdeal::Iwasawa(ch) = pres.char_ideal()? else { unreachable!() };
        ok &= ch.agrees_with(&exp_w);
        t.record(ok, || format!("{}char={ch}expected={exp_w}", dims(&pres)));
    }
    Ok(t)
}

fn char_mod_s(rng: &mut ChaCha8Rng, cases: usize) -> Result<Tally> {
    let mut t = Tally::default();
    for case in 0..cases {
        let ctx = ctx_for(case);
        let n = rng.gen_range(1..=4);
        let h = loop {
            let h = nonsingular_poly(rng, &ctx, n);
            let at0 = h.map(|p| p.coeff(0));
            if !at0.det_cofactor()?.is_zero() {
                break h;
            }
        };
        let pres = iw(&ctx, &h);
        let ok = char_mod_s_check(&pres)?;
        t.record(ok, || dims(&pres));
    }
    Ok(t)
}

fn invariance(rng: &mut ChaCha8Rng, cases: usize) -> Result<Tally> {
    let mut t = Tally::default();
    for case in 0..cases {
        let ctx = ctx_for(case);
        let r = rng.gen_range(1..=3);
        let s = rng.gen_range(r..=4);
        let (a, b) = if case % 2 == 0 {
            let h = rand_matrix(r, s, || rand_zp(rng, &ctx));
            let g = scramble(&h, rng, 4, |rng| rand_zp(rng, &ctx));
            (zp(&ctx, &h), zp(&ctx, &g))
        } else {
            let h = rand_matrix(r, s, || rand_poly(rng, &ctx, 2));
            let g = scramble(&h, rng, 3, |rng| rand_poly(rng, &ctx, 1));
            (iw(&ctx, &h), iw(&ctx, &g))
        };
        let mut ok = true;
        for i in 0..=r {
            ok &= a.fitting_ideal(i).equals(&b.fitting_ideal(i))?;
        }
        t.record(ok, || dims(&a));
    }
    Ok(t)
}

/// Cases per item; items 1-6 together use 200 presentations.
pub const ITEM_CASES: [usize; 6] = [34, 34, 34, 34, 34, 30];
pub const CHAR_MOD_S_CASES: usize = 50;

/// Runs items (1)-(6), the char-mod-S lemma and presentation invariance.
pub fn fitting_property_suite(seed: u64) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new(seed);
    let items: [(&str, fn(&mut ChaCha8Rng, usize) -> Result<Tally>); 6] = [
        ("fitting.1_quotient", item1),
        ("fitting.2_direct_sum", item2),
        ("fitting.3_extension", item3),
        ("fitting.4_localization", item4),
        ("fitting.5_dvr_char", item5),
        ("fitting.6_reflexive_char", item6),
    ];
    for ((name, f), cases) in items.iter().zip(ITEM_CASES) {
        report.push(f(&mut rng, cases)?.line(*name, ""));
    }
    report.push(char_mod_s(&mut rng, CHAR_MOD_S_CASES)?.line("fitting.char_mod_S", ""));
    report.push(invariance(&mut rng, 20)?.line("fitting.invariance", ""));
    Ok(report)
}
