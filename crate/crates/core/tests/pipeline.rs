use iwk_core::hecke::{frob_charpoly_at_p, rational_roots, HeckeCharPoly, OrdinaryFrobData};
use iwk_core::linalg::Matrix;
use iwk_core::module_theory::{
    char_mod_s_check, congruence_decomposition_check, congruence_ideal, cubic_chain, kahler_fitting_ideal,
    CharIdeal, FiniteFlatAlgebra, Ideal, Presentation,
};
use iwk_core::sl2::{cg_projection, m_coeff, MCoeffTable};
use iwk_core::{
    base_change_adams, compare_check, run_all, sym_transfer, Error, IwasawaSeries, PadicContext, RatPoly, ZpPoly,
};
use num_bigint::BigInt;
use num_rational::BigRational;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn poly(ctx: &PadicContext, c: &[i64]) -> ZpPoly {
    ZpPoly::from_i64s(ctx, c)
}

#[test]
fn full_report_is_deterministic_and_passes() {
    let a = run_all(0).unwrap();
    let b = run_all(0).unwrap();
    assert_eq!(a.render(), b.render());
    assert!(a.all_pass(), "{}", a.render());
    for line in a.render().lines().skip(1) {
        assert!(line.starts_with("item=") && line.contains(" status=pass witness="), "{line}");
    }
    assert_eq!(a.lines.last().unwrap().item, "suite.summary");
}

#[test]
fn different_seeds_change_witnesses_not_verdicts() {
    let r = run_all(9).unwrap();
    assert!(r.all_pass(), "{}", r.render());
}

#[test]
fn block_presentation_at_s_zero_gives_det() {
    // (S*1 | L) for a 2x2 integer L, then S = 0
    let ctx = PadicContext::new(3, 16).unwrap();
    let l = [[3, 1], [0, 6]];
    let rows: Vec<Vec<ZpPoly>> = (0..2)
        .map(|i| {
            let mut r: Vec<ZpPoly> = (0..2).map(|j| poly(&ctx, &[0, i64::from(i == j)])).collect();
            r.extend((0..2).map(|j| poly(&ctx, &[l[i][j]])));
            r
        })
        .collect();
    let pres = Presentation::iwasawa_from_polys(&ctx, 16, &rows).unwrap();
    let at0 = pres.at_s_zero().unwrap();
    let Ideal::Zp(f0) = at0.fitting_ideal(0) else { panic!("over Z_p") };
    // det L = 18 = 2 * 3^2
    assert_eq!(f0.valuation(), Some(2));
}

#[test]
fn characteristic_ideal_examples() {
    let ctx = PadicContext::new(3, 20).unwrap();
    let diag = Presentation::iwasawa_from_polys(
        &ctx,
        32,
        &[vec![poly(&ctx, &[3, 1]), poly(&ctx, &[0])], vec![poly(&ctx, &[0]), poly(&ctx, &[-3, 1])]],
    )
    .unwrap();
    match diag.char_ideal().unwrap() {
        CharIdeal::Iwasawa(w) => {
            assert_eq!((w.mu, w.lambda()), (0, 2));
            assert_eq!(w.poly.to_string(), "S^2 - 9");
        }
        other => panic!("{other}"),
    }
    assert!(char_mod_s_check(&diag).unwrap());

    let unit = Presentation::iwasawa_from_polys(&ctx, 32, &[vec![poly(&ctx, &[2, 5])]]).unwrap();
    assert!(char_mod_s_check(&unit).unwrap());

    let s_only = Presentation::iwasawa_from_polys(&ctx, 32, &[vec![poly(&ctx, &[0, 1])]]).unwrap();
    assert_eq!(char_mod_s_check(&s_only).unwrap_err(), Error::NotTorsion);

    let free = Presentation::zp(&ctx, Matrix::from_rows(vec![vec![ctx.zero()]]).unwrap());
    assert_eq!(free.char_ideal().unwrap_err(), Error::NotTorsion);
}

#[test]
fn presentation_text_round_trip() {
    let text = "iwasawa 5 12 16 2 2\nS+5 1\n0 S^2-25\n";
    let p = Presentation::from_text(text).unwrap();
    let again = Presentation::from_text(&p.to_text()).unwrap();
    for i in 0..3 {
        assert!(p.fitting_ideal(i).equals(&again.fitting_ideal(i)).unwrap());
    }
}

#[test]
fn congruence_chain_by_hand() {
    // a = 1, b = 4, c = 10 over Z_3: (a-b)(a-c) = 27
    let (a, b, c) = (q(1, 1), q(4, 1), q(10, 1));
    let (r, s, alpha) = cubic_chain(3, &a, &b, &c).unwrap();
    let d = congruence_decomposition_check(&r, &s, &alpha).unwrap();
    assert_eq!((d.c_lambda, d.c_beta, d.beta_c_alpha), (Some(3), Some(1), Some(2)));
    assert!(d.holds);
    let f = RatPoly::from_roots(&[a.clone(), b, c]);
    let ctx = PadicContext::new(3, 20).unwrap();
    assert_eq!(kahler_fitting_ideal(&f, &a, &ctx).unwrap(), congruence_ideal(&r).unwrap());
}

#[test]
fn thin_order_rejected_for_decomposition() {
    let r = FiniteFlatAlgebra::thin_order(3, 3).unwrap();
    assert!(!r.is_gorenstein());
    let s = FiniteFlatAlgebra::from_roots(3, &[q(0, 1), q(3, 1)]).unwrap();
    let alpha = Matrix::from_rows(vec![vec![q(1, 1), q(0, 1), q(0, 1)], vec![q(0, 1), q(1, 1), q(0, 1)]]).unwrap();
    assert_eq!(congruence_decomposition_check(&r, &s, &alpha).unwrap_err(), Error::NotGorenstein);
}

#[test]
fn m_table_matches_hand_values() {
    let t = MCoeffTable::new(2);
    let rows: Vec<Vec<i64>> =
        (0..=2).map(|k| (0..=2).map(|i| i64::try_from(t.get(k, i).clone()).unwrap()).collect()).collect();
    assert_eq!(rows, vec![vec![2, 2, 2], vec![4, 0, -4], vec![4, -8, 4]]);
    assert_eq!(m_coeff(1, 1, 0).unwrap(), BigInt::from(1));
    assert_eq!(m_coeff(1, 1, 1).unwrap(), BigInt::from(-1));
    assert!(m_coeff(2, 3, 0).is_err());
    assert_eq!(cg_projection(2, 1, 2).unwrap_err().name(), "RangeParityError");
}

#[test]
fn hecke_round_trips() {
    let h = sym_transfer(&q(2, 1), &q(3, 1), 3, &BigInt::from(5)).unwrap();
    assert_eq!(h.t, vec![q(19, 1), q(114, 5), q(216, 125)]);
    let back = HeckeCharPoly::from_poly(&h.to_poly(), &BigInt::from(5)).unwrap();
    assert_eq!(back, h);
    assert_eq!(rational_roots(&h.to_poly()), vec![q(4, 1), q(6, 1), q(9, 1)]);
    let sq = base_change_adams(&h.to_poly(), 2).unwrap();
    assert_eq!(rational_roots(&sq), vec![q(16, 1), q(36, 1), q(81, 1)]);

    // all weights zero: prod (X - N^{j-1} u_j / u_{j-1})
    let d = OrdinaryFrobData {
        u: vec![q(2, 1), q(6, 1), q(3, 1)],
        lambda: vec![0, 0, 0],
        norm: BigInt::from(7),
        varpi: q(5, 1),
    };
    let expect = RatPoly::from_roots(&[q(2, 1), q(21, 1), q(49, 2)]);
    assert_eq!(frob_charpoly_at_p(&d).unwrap(), expect);
    assert_eq!(d.u_telescope(), q(3, 1));
}

#[test]
fn comparison_scalar_case() {
    let c = compare_check(&[q(-7, 3)]).unwrap();
    assert_eq!(c.det_l, q(-7, 3));
    assert!(c.holds && c.intermediate_holds);
}

#[test]
fn weierstrass_on_text_series() {
    let ctx = PadicContext::new(5, 8).unwrap();
    let f = IwasawaSeries::from_poly(&poly(&ctx, &[25, 10, 1]), 12);
    let g = IwasawaSeries::from_text(&f.to_text()).unwrap();
    let w = g.weierstrass_prepare().unwrap();
    assert_eq!((w.mu, w.lambda()), (0, 2));
    assert_eq!(w.reconstruct(), f);
}
