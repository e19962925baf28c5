//! Acceptance battery: one pass/fail line per criterion, nonzero exit on any failure.

use iwk_core::hecke::hecke_suite;
use iwk_core::linalg::{q_det, Matrix, QMatrix};
use iwk_core::linv::{
    build_consistent_jacobian, compare_check, greenberg_profile, i_k_ideal, l_matrix, random_direction, scaling_check,
};
use iwk_core::module_theory::{congruence_suite, fitting_property_suite, CHAR_MOD_S_CASES, ITEM_CASES};
use iwk_core::padic::rational_valuation;
use iwk_core::report::Report;
use iwk_core::sl2::{c_matrix, decomposition_check, m_coeff, m_determinants, MCoeffTable};
use iwk_core::suite::weierstrass_suite;
use iwk_core::{PadicContext, ZpPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::process::Command;
use std::time::{Duration, Instant};

const SEED: u64 = 0;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn qi(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * k)
}

fn binomial(n: usize, k: usize) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

// Bareiss elimination, kept separate from the library determinant.
fn bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn line_cases(report: &Report, item: &str) -> Option<(bool, usize)> {
    let l = report.lines.iter().find(|l| l.item == item)?;
    let cases = l.witness.split(',').find_map(|f| f.strip_prefix("cases="))?.parse().ok()?;
    Some((l.pass, cases))
}

fn require_lines(report: &Report, items: &[(&str, usize)]) -> Outcome {
    let mut bad = Vec::new();
    let mut total = 0;
    for (item, want) in items {
        match line_cases(report, item) {
            Some((true, got)) if got >= *want => total += got,
            other => bad.push(format!("{item}:{other:?}")),
        }
    }
    if bad.is_empty() {
        outcome(true, format!("cases={total}"))
    } else {
        outcome(false, bad.join(" "))
    }
}

fn m_anchors() -> Outcome {
    for n in 1..=12 {
        for i in 0..=n {
            let v = m_coeff(n, 0, i).unwrap();
            if v != factorial(n) {
                return outcome(false, format!("M_{{{n},0,{i}}}={v}"));
            }
        }
    }
    outcome(true, "n<=12")
}

fn det_relation() -> Outcome {
    for n in 1..=10 {
        let t = MCoeffTable::new(n);
        let full: Vec<Vec<BigInt>> = (0..=n).map(|k| (0..=n).map(|i| t.get(k, i).clone()).collect()).collect();
        let reduced: Vec<Vec<BigInt>> = (1..=n).map(|k| (0..n).map(|i| t.get(k, i) - t.get(k, n)).collect()).collect();
        let (dm, dmp) = (bareiss(full), bareiss(reduced));
        let sign = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        let lib = m_determinants(n).unwrap();
        if dmp.is_zero() || dm != sign * factorial(n) * &dmp || lib.det_m != dm || lib.det_m_prime != dmp {
            return outcome(false, format!("n={n}"));
        }
    }
    outcome(true, "n<=10")
}

fn c_m_relation() -> Outcome {
    for n in 0..=6 {
        let c = c_matrix(n).unwrap();
        for k in 0..=n {
            for i in 0..=n {
                let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                let lhs = BigRational::from_integer(m_coeff(n, k, i).unwrap());
                let rhs = BigRational::from_integer(sign * binomial(n, i)) * c.get(i, k);
                if lhs != rhs {
                    return outcome(false, format!("n={n},k={k},i={i}"));
                }
            }
        }
    }
    outcome(true, "0<=k<=n<=6")
}

fn decomposition() -> Outcome {
    for n in 2..=8 {
        if !decomposition_check(n, 50, SEED + n as u64).unwrap() {
            return outcome(false, format!("n={n}"));
        }
    }
    outcome(true, "n=2..8,samples=50")
}

fn comparison() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0xC0);
    let mut cases = 0;
    for n in 1..=5 {
        let table = MCoeffTable::new(n);
        for _ in 0..100 {
            let d: Vec<BigRational> =
                (0..n).map(|_| BigRational::new(rng.gen_range(-30..=30).into(), rng.gen_range(1..=9).into())).collect();
            let c = compare_check(&d).unwrap();
            let prod: BigRational = d.iter().product();
            let sign = if n % 2 == 0 { qi(1) } else { qi(-1) };
            if !(c.holds && c.intermediate_holds && prod == sign * &c.det_f_prime && c.product == c.det_l) {
                return outcome(false, format!("n={n},D={d:?}"));
            }
            let g = build_consistent_jacobian(&d).unwrap();
            let ys: Vec<Vec<BigRational>> = (0..10).map(|_| random_direction(&mut rng, n)).collect();
            for j in 1..=n {
                let prof = greenberg_profile(j, &table, &g, &ys).unwrap();
                if !prof.direction_independent || prof.values.iter().flatten().any(|v| *v != d[j - 1]) {
                    return outcome(false, format!("direction n={n},j={j}"));
                }
            }
            cases += 1;
        }
    }
    outcome(true, format!("cases={cases},directions=10"))
}

fn scaling() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x5C);
    let mut cases = 0;
    // L has size n-1
    for n in 2..=5usize {
        for k in 0..=3u32 {
            for p in [3u64, 5] {
                let j: QMatrix = loop {
                    let j = Matrix::from_fn(n - 1, n, |_, _| qi(rng.gen_range(-9..=9)));
                    if !l_matrix(&j).unwrap().det.is_zero() {
                        break j;
                    }
                };
                let s = scaling_check(&j, p, k).unwrap();
                let want = BigRational::new(BigInt::one(), BigInt::from(p).pow(k * (n as u32 - 1)));
                if !s.holds || s.factor.as_ref() != Some(&want) {
                    return outcome(false, format!("n={n},k={k},p={p}"));
                }
                cases += 1;
            }
        }
    }
    outcome(true, format!("cases={cases}"))
}

fn i_k_consistency() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x1C);
    let mut cases = 0;
    for n in 1..=5usize {
        for k in 0..=2u32 {
            for case in 0..20 {
                let p = if case % 2 == 0 { 3 } else { 5 };
                let ctx = PadicContext::new(p, 20).unwrap();
                let ints: Vec<i64> = (0..n * n).map(|_| rng.gen_range(-9..=9)).collect();
                let l = Matrix::new(n, n, ints.iter().map(|&x| ctx.int(x)).collect()).unwrap();
                let ideal = i_k_ideal(&l, &ctx, k).unwrap();
                if !ideal.routes_agree(&ctx) {
                    return outcome(false, format!("routes n={n},k={k},p={p},L={ints:?}"));
                }
                if k == 0 {
                    let det = q_det(&Matrix::new(n, n, ints.iter().map(|&x| qi(x)).collect()).unwrap()).unwrap();
                    let vdet = rational_valuation(&det, p);
                    let vgens = ideal
                        .generators()
                        .iter()
                        .filter_map(|g| ctx.residue_valuation(&g.residue(0)).map(i64::from))
                        .min();
                    let det_poly = ZpPoly::constant(&ctx, &det.numer().abs());
                    if vgens != vdet || !ideal.contains(&det_poly) {
                        return outcome(false, format!("I_0 n={n},p={p},det={det}"));
                    }
                }
                cases += 1;
            }
        }
    }
    outcome(true, format!("cases={cases}"))
}

fn fitting() -> Outcome {
    let r = fitting_property_suite(SEED).unwrap();
    let names = [
        "fitting.1_quotient",
        "fitting.2_direct_sum",
        "fitting.3_extension",
        "fitting.4_localization",
        "fitting.5_dvr_char",
        "fitting.6_reflexive_char",
    ];
    let mut items: Vec<(&str, usize)> = names.iter().copied().zip(ITEM_CASES).collect();
    items.push(("fitting.char_mod_S", CHAR_MOD_S_CASES));
    let total: usize = ITEM_CASES.iter().sum();
    let mut o = require_lines(&r, &items);
    if total < 200 {
        o = outcome(false, format!("only {total} presentations"));
    }
    o
}

fn congruence() -> Outcome {
    let r = congruence_suite(SEED).unwrap();
    require_lines(&r, &[("congruence.quadratic", 1), ("congruence.kahler", 1), ("congruence.decomposition", 20)])
}

fn weierstrass() -> Outcome {
    let r = weierstrass_suite(SEED).unwrap();
    require_lines(&r, &[("weierstrass.round_trip", 100)])
}

fn hecke() -> Outcome {
    let r = hecke_suite(SEED).unwrap();
    require_lines(&r, &[("hecke.functoriality", 30), ("hecke.adams_composition", 30)])
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_iwk"))
            .args(["suite", "--seed", "0"])
            .env_remove("IWK_PRECISION")
            .output()
            .expect("run iwk")
    };
    let (a, b) = (run(), run());
    let text = String::from_utf8_lossy(&a.stdout);
    let same = a.stdout == b.stdout;
    let all_pass = a.status.success() && text.trim_end().ends_with("ALL PASS");
    outcome(same && all_pass, format!("identical={same},bytes={},all_pass={all_pass}", a.stdout.len()))
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);
    let criteria: [Criterion; 12] = [
        ("m_coefficient_anchors", m_anchors, Some(Duration::from_secs(1))),
        ("m_determinant_relation", det_relation, Some(Duration::from_secs(5))),
        ("c_m_relation", c_m_relation, Some(Duration::from_secs(30))),
        ("decomposition_characters", decomposition, Some(Duration::from_secs(30))),
        ("comparison_theorem", comparison, Some(Duration::from_secs(60))),
        ("scaling_lemma", scaling, None),
        ("i_k_consistency", i_k_consistency, None),
        ("fitting_property_suite", fitting, None),
        ("congruence_ideals", congruence, None),
        ("weierstrass_round_trip", weierstrass, None),
        ("hecke_functoriality", hecke, None),
        ("suite_determinism", determinism, None),
    ];
    let mut failed = 0;
    for (idx, (name, run, limit)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let mut o = run();
        let dt = t.elapsed();
        if let Some(limit) = limit {
            if dt > *limit {
                o.pass = false;
                o.detail.push_str(&format!(",over_time_limit={limit:?}"));
            }
        }
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {:<26} {} {} ({:.2?})",
            idx + 1,
            name,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            dt
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
