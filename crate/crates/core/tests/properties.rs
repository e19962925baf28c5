use iwk_core::hecke::{base_change_adams, sym_roots, sym_transfer};
use iwk_core::iwasawa::layer_reduce;
use iwk_core::linalg::{q_det, Matrix, QMatrix};
use iwk_core::module_theory::{Ideal, Presentation};
use iwk_core::padic::teichmuller;
use iwk_core::sl2::{cg_projection, sym_power};
use iwk_core::{IwasawaSeries, PadicContext, PadicNumber, RatPoly, ZpPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn qmat(v: &[(i64, i64)], r: usize, c: usize) -> QMatrix {
    Matrix::new(r, c, v.iter().map(|&(n, d)| q(n, d)).collect()).unwrap()
}

fn prime() -> impl Strategy<Value = u64> {
    prop_oneof![Just(3u64), Just(5), Just(7)]
}

fn nonzero() -> impl Strategy<Value = i64> {
    (-10_000i64..10_000).prop_filter("nonzero", |x| *x != 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn valuation_is_additive(p in prime(), a in nonzero(), b in nonzero()) {
        let ctx = PadicContext::new(p, 20).unwrap();
        let (x, y) = (ctx.int(a), ctx.int(b));
        let xy = x.try_mul(&y).unwrap();
        prop_assert_eq!(xy.valuation(), Some(x.valuation().unwrap() + y.valuation().unwrap()));
    }

    #[test]
    fn valuation_is_ultrametric(p in prime(), a in nonzero(), b in nonzero()) {
        let ctx = PadicContext::new(p, 20).unwrap();
        let (x, y) = (ctx.int(a), ctx.int(b));
        let s = x.try_add(&y).unwrap();
        let (vx, vy) = (x.valuation().unwrap(), y.valuation().unwrap());
        if let Some(vs) = s.valuation() {
            prop_assert!(vs >= vx.min(vy));
            if vx != vy {
                prop_assert_eq!(vs, vx.min(vy));
            }
        }
    }

    #[test]
    fn inverse_is_two_sided(p in prime(), n in nonzero(), d in nonzero()) {
        let ctx = PadicContext::new(p, 16).unwrap();
        let x = PadicNumber::from_rational(&ctx, &q(n, d));
        let y = x.inv().unwrap();
        let v = x.valuation().unwrap();
        // the inverse of p^v u with v < 0 keeps only N + v digits
        let kept = if v >= 0 { ctx.clone() } else { ctx.with_precision((16 + v) as u32).unwrap() };
        let one = PadicNumber::from_i64(&kept, 1);
        prop_assert_eq!(x.try_mul(&y).unwrap().reduce_precision(&kept).unwrap(), one.clone());
        prop_assert_eq!(y.try_mul(&x).unwrap().reduce_precision(&kept).unwrap(), one);
    }

    #[test]
    fn inverse_of_integral_is_exact(p in prime(), n in nonzero()) {
        let ctx = PadicContext::new(p, 16).unwrap();
        let x = ctx.int(n);
        prop_assert_eq!(x.try_mul(&x.inv().unwrap()).unwrap(), ctx.one());
    }

    #[test]
    fn teichmuller_is_root_of_unity(p in prime(), a in 1i64..7, n in 1u32..24) {
        prop_assume!(a % p as i64 != 0);
        let ctx = PadicContext::new(p, n).unwrap();
        let w = teichmuller(&ctx, a).unwrap();
        prop_assert_eq!(w.pow(p - 1), ctx.one());
        let r = w.residue().unwrap();
        prop_assert_eq!(r % p, BigInt::from(a) % p);
    }

    #[test]
    fn weierstrass_uniqueness_under_p_powers(
        p in prop_oneof![Just(3u64), Just(5)],
        coeffs in prop::collection::vec(-50i64..50, 1..8),
        lead in 1i64..50,
        a in 0u32..4,
    ) {
        prop_assume!(lead % p as i64 != 0);
        let ctx = PadicContext::new(p, 24).unwrap();
        let mut c: Vec<i64> = coeffs.iter().map(|x| x * p as i64).collect();
        c.push(lead);
        c.extend(coeffs.iter().rev());
        let f = IwasawaSeries::from_i64s(&ctx, 24, &c);
        let base = f.weierstrass_prepare().unwrap();
        prop_assert_eq!(base.reconstruct(), f.clone());
        let g = f.scale(&ctx.p_pow(a));
        let scaled = g.weierstrass_prepare().unwrap();
        prop_assert_eq!(scaled.mu, base.mu + a);
        prop_assert_eq!(scaled.lambda(), base.lambda());
        // P and U are only determined to precision N - mu
        let low = ctx.with_precision(24 - a).unwrap();
        prop_assert_eq!(scaled.poly.with_context(&low), base.poly.with_context(&low));
        prop_assert_eq!(scaled.reconstruct(), g);
    }

    #[test]
    fn weierstrass_mu_and_lambda_add(
        p in prop_oneof![Just(3u64), Just(5)],
        f0 in prop::collection::vec(-20i64..20, 3),
        g0 in prop::collection::vec(-20i64..20, 3),
    ) {
        let ctx = PadicContext::new(p, 24).unwrap();
        let build = |v: &[i64]| {
            // a unit at index 1, non-units below
            let c = vec![v[0] * p as i64, 1 + v[1] * p as i64, v[2]];
            IwasawaSeries::from_i64s(&ctx, 32, &c)
        };
        let (f, g) = (build(&f0), build(&g0));
        let fg = f.try_mul(&g).unwrap();
        let (wf, wg, wfg) = (
            f.weierstrass_prepare().unwrap(),
            g.weierstrass_prepare().unwrap(),
            fg.weierstrass_prepare().unwrap(),
        );
        prop_assert_eq!(wfg.mu, wf.mu + wg.mu);
        prop_assert_eq!(wfg.lambda(), wf.lambda() + wg.lambda());
        prop_assert_eq!(wfg.poly, wf.poly.mul(&wg.poly));
    }

    #[test]
    fn layer_reduction_is_multiplicative(
        p in prop_oneof![Just(3u64), Just(5)],
        k in 0u32..3,
        a in prop::collection::vec(-30i64..30, 1..10),
        b in prop::collection::vec(-30i64..30, 1..10),
    ) {
        let ctx = PadicContext::new(p, 12).unwrap();
        let (f, g) = (IwasawaSeries::from_i64s(&ctx, 64, &a), IwasawaSeries::from_i64s(&ctx, 64, &b));
        let lhs = layer_reduce(&f.try_mul(&g).unwrap(), k).unwrap();
        let modulus = ZpPoly::omega(&ctx, p.pow(k) as usize);
        let rhs = layer_reduce(&f, k).unwrap().mul(&layer_reduce(&g, k).unwrap()).rem(&modulus).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn series_text_round_trip(p in prime(), c in prop::collection::vec(-1000i64..1000, 1..20)) {
        let ctx = PadicContext::new(p, 10).unwrap();
        let f = IwasawaSeries::from_i64s(&ctx, 20, &c);
        prop_assert_eq!(IwasawaSeries::from_text(&f.to_text()).unwrap(), f);
    }

    #[test]
    fn sym_power_is_functorial(
        g in prop::collection::vec((-6i64..6, 1i64..4), 4),
        h in prop::collection::vec((-6i64..6, 1i64..4), 4),
        n in 0usize..6,
    ) {
        let (g, h) = (qmat(&g, 2, 2), qmat(&h, 2, 2));
        let lhs = sym_power(&g.mul(&h).unwrap(), n).unwrap().matrix;
        let rhs = sym_power(&g, n).unwrap().matrix.mul(&sym_power(&h, n).unwrap().matrix).unwrap();
        prop_assert_eq!(lhs, rhs);
        let det = q_det(&sym_power(&g, n).unwrap().matrix).unwrap();
        prop_assert_eq!(det, num_traits::pow(q_det(&g).unwrap(), n * (n + 1) / 2));
    }

    #[test]
    fn clebsch_gordan_is_equivariant(
        x in -5i64..5, y in -5i64..5, t in 1i64..4,
        a in 0usize..4, b in 0usize..4, drop in 0usize..4,
    ) {
        prop_assume!(drop <= a.min(b));
        let r = a + b - 2 * drop;
        // upper and lower unipotents times a torus element lie in SL_2
        let u = qmat(&[(1, 1), (x, 1), (0, 1), (1, 1)], 2, 2);
        let l = qmat(&[(1, 1), (0, 1), (y, 1), (1, 1)], 2, 2);
        let d = qmat(&[(t, 1), (0, 1), (0, 1), (1, t)], 2, 2);
        let g = u.mul(&l).unwrap().mul(&d).unwrap();
        let cg = cg_projection(a, b, r).unwrap();
        prop_assert!(cg.is_nonzero());
        prop_assert!(cg.is_equivariant_at(&g).unwrap());
    }

    #[test]
    fn adams_composes(roots in prop::collection::vec((-6i64..6, 1i64..3), 1..5), f in 1usize..4, g in 1usize..4) {
        let rs: Vec<BigRational> = roots.iter().map(|&(n, d)| q(n, d)).collect();
        let p = RatPoly::from_roots(&rs);
        let fg = base_change_adams(&p, f * g).unwrap();
        prop_assert_eq!(&fg, &base_change_adams(&base_change_adams(&p, f).unwrap(), g).unwrap());
        let powered: Vec<BigRational> = rs.iter().map(|r| num_traits::pow(r.clone(), f * g)).collect();
        prop_assert_eq!(fg, RatPoly::from_roots(&powered));
    }

    #[test]
    fn sym_transfer_roots(a in nonzero(), b in nonzero(), n in 1usize..6, norm in 2u64..9) {
        let (alpha, beta) = (q(a, 1), q(b, 1));
        let h = sym_transfer(&alpha, &beta, n, &BigInt::from(norm)).unwrap();
        prop_assert_eq!(h.to_poly(), RatPoly::from_roots(&sym_roots(&alpha, &beta, n)));
    }

    #[test]
    fn fitting_ideals_ignore_change_of_basis(
        p in prop_oneof![Just(3u64), Just(5)],
        entries in prop::collection::vec(-12i64..12, 6),
        mult in -4i64..4,
    ) {
        let ctx = PadicContext::new(p, 16).unwrap();
        let m = Matrix::new(2, 3, entries.iter().map(|&x| ctx.int(x)).collect()).unwrap();
        // row_1 += mult * row_0, then swap the first two columns
        let e = Matrix::from_fn(2, 3, |i, j| {
            let jj = [1, 0, 2][j];
            let base = m.get(i, jj).clone();
            if i == 1 {
                base.try_add(&m.get(0, jj).try_mul(&ctx.int(mult)).unwrap()).unwrap()
            } else {
                base
            }
        });
        let (a, b) = (Presentation::zp(&ctx, m), Presentation::zp(&ctx, e));
        for i in 0..3 {
            let (fa, fb): (Ideal, Ideal) = (a.fitting_ideal(i), b.fitting_ideal(i));
            prop_assert!(fa.equals(&fb).unwrap());
        }
    }
}
