use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use iwk_core::module_theory::Presentation;
use iwk_core::{base_change_adams, compare_check, IwasawaSeries, MCoeffTable, PadicContext, RatPoly};
use num_rational::BigRational;
use std::hint::black_box;

fn weierstrass(c: &mut Criterion) {
    let ctx = PadicContext::new(3, 32).unwrap();
    let mut g = c.benchmark_group("weierstrass_prepare");
    for lambda in [2usize, 6, 12] {
        let mut coeffs: Vec<i64> = (0..lambda as i64).map(|i| 3 * (i + 1)).collect();
        coeffs.push(2);
        coeffs.extend((1..20).map(|i| i * 7 - 40));
        let f = IwasawaSeries::from_i64s(&ctx, 64, &coeffs);
        g.bench_with_input(BenchmarkId::from_parameter(lambda), &f, |b, f| {
            b.iter(|| black_box(f.weierstrass_prepare().unwrap()))
        });
    }
    g.finish();
}

fn m_table(c: &mut Criterion) {
    let mut g = c.benchmark_group("m_coeff_table");
    for m in [8usize, 16, 32] {
        g.bench_with_input(BenchmarkId::from_parameter(m), &m, |b, &m| b.iter(|| black_box(MCoeffTable::new(m))));
    }
    g.finish();
}

fn comparison(c: &mut Criterion) {
    let mut g = c.benchmark_group("compare_check");
    for n in [2i64, 4, 6] {
        let d: Vec<BigRational> = (1..=n).map(|i| BigRational::new((2 * i + 1).into(), i.into())).collect();
        g.bench_with_input(BenchmarkId::from_parameter(n), &d, |b, d| b.iter(|| black_box(compare_check(d).unwrap())));
    }
    g.finish();
}

fn fitting(c: &mut Criterion) {
    let pres = Presentation::from_text("iwasawa 3 24 32 3 3\nS+3 1 0\n0 S^2-9 S\n3 0 S-6\n").unwrap();
    c.bench_function("fitting_ideal_3x3", |b| b.iter(|| black_box((0..4).map(|i| pres.fitting_ideal(i)).count())));
}

fn adams(c: &mut Criterion) {
    let p = RatPoly::from_i64s(&[24, -50, 35, -10, 1]);
    c.bench_function("base_change_adams_deg4_f5", |b| b.iter(|| black_box(base_change_adams(&p, 5).unwrap())));
}

criterion_group!(benches, weierstrass, m_table, comparison, fitting, adams);
criterion_main!(benches);
