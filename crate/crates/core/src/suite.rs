//! The full randomized check battery, assembled from the per-module suites.

use crate::error::Result;
use crate::hecke::hecke_suite;
use crate::iwasawa::IwasawaSeries;
use crate::linv::l_invariant_suite;
use crate::module_theory::{congruence_suite, fitting_property_suite};
use crate::padic::PadicContext;
use crate::report::{Report, ReportLine, Tally};
use crate::sl2::{decomposition_check, m_coeff, m_determinants, m_from_c_holds};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const WEIERSTRASS_CASES: usize = 100;
pub const WEIERSTRASS_PRECISION: u32 = 32;
pub const WEIERSTRASS_TRUNCATION: usize = 64;

/// `M_{n,0,i} = n!` for `n <= 12`, the determinant relation for `n <= 10`,
/// the C-M relation for `n <= 6` and the character identities for `n <= 8`.
pub fn sl2_suite(seed: u64) -> Result<Report> {
    let mut report = Report::new(seed);
    let mut anchors = Tally::default();
    let mut fact = BigInt::one();
    for n in 1..=12usize {
        fact *= n;
        for i in 0..=n {
            let v = m_coeff(n, 0, i)?;
            anchors.record(v == fact, || format!("n={n},i={i},got={v}"));
        }
    }
    report.push(anchors.line("sl2.m_anchor", ""));

    let mut dets = Tally::default();
    for n in 1..=10 {
        let d = m_determinants(n)?;
        dets.record(d.relation_holds && !d.det_m_prime.is_zero(), || format!("n={n}"));
    }
    report.push(dets.line("sl2.det_relation", ""));

    let mut cm = Tally::default();
    for n in 0..=6 {
        cm.record(m_from_c_holds(n)?, || format!("n={n}"));
    }
    report.push(cm.line("sl2.c_m_relation", ""));

    let mut dec = Tally::default();
    for n in 2..=8usize {
        let s = seed.wrapping_mul(31).wrapping_add(n as u64);
        dec.record(decomposition_check(n, 50, s)?, || format!("n={n}"));
    }
    report.push(dec.line("sl2.decomposition", "samples=50"));
    Ok(report)
}

fn convolve(a: &[BigInt], b: &[BigInt], len: usize, modulus: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out.into_iter().map(|c| c.mod_floor(modulus)).collect()
}

/// Round trip `f = p^mu P U mod (p^N, S^M)` on random series with a unit
/// coefficient, plus a smaller batch with `mu > 0`.
pub fn weierstrass_suite(seed: u64) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5745_4945);
    let mut report = Report::new(seed);
    let mut unit_case = Tally::default();
    let mut with_mu = Tally::default();
    let m = WEIERSTRASS_TRUNCATION;
    for case in 0..WEIERSTRASS_CASES + 20 {
        let p = if case % 2 == 0 { 3 } else { 5 };
        let ctx = PadicContext::new(p, WEIERSTRASS_PRECISION)?;
        let pb = BigInt::from(p);
        let lambda = rng.gen_range(0..=8usize);
        let mu = if case < WEIERSTRASS_CASES { 0 } else { rng.gen_range(1..=4u32) };
        let modulus = ctx.modulus().clone();
        let mut res: Vec<BigInt> = (0..m)
            .map(|i| {
                let c = BigInt::from(rng.gen::<u64>()) * BigInt::from(rng.gen::<u64>());
                let c = c.mod_floor(&modulus);
                if i < lambda {
                    // non-unit below lambda
                    (c * &pb).mod_floor(&modulus)
                } else {
                    c
                }
            })
            .collect();
        if res[lambda].is_multiple_of(&pb) {
            res[lambda] += 1;
        }
        let pm = pb.pow(mu);
        let res: Vec<BigInt> = res.into_iter().map(|c| (c * &pm).mod_floor(&modulus)).collect();
        let f = IwasawaSeries::from_residues(&ctx, m, &res);
        let fac = f.weierstrass_prepare()?;
        let poly = fac.poly.to_vec(m);
        let unit = fac.unit.residues().to_vec();
        let back: Vec<BigInt> =
            convolve(&poly, &unit, m, &modulus).into_iter().map(|c| (c * &pm).mod_floor(&modulus)).collect();
        let shape = fac.mu == mu && fac.lambda() == lambda && fac.poly.is_distinguished() && fac.unit.is_unit();
        let ok = shape && back == res;
        let t = if case < WEIERSTRASS_CASES { &mut unit_case } else { &mut with_mu };
        t.record(ok, || format!("p={p},lambda={lambda},mu={mu},got_lambda={},got_mu={}", fac.lambda(), fac.mu));
    }
    report.push(unit_case.line("weierstrass.round_trip", "N=32,M=64"));
    report.push(with_mu.line("weierstrass.round_trip_mu", "N=32,M=64"));
    Ok(report)
}

/// Every suite in a fixed order; the report is a function of `seed` alone.
pub fn run_all(seed: u64) -> Result<Report> {
    let parts: [fn(u64) -> Result<Report>; 6] =
        [sl2_suite, l_invariant_suite, fitting_property_suite, congruence_suite, weierstrass_suite, hecke_suite];
    // independent parts run concurrently; joining in order keeps the output fixed
    let results: Vec<Result<Report>> = std::thread::scope(|scope| {
        let handles: Vec<_> = parts.iter().map(|part| scope.spawn(move || part(seed))).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    });
    let mut report = Report::new(seed);
    for r in results {
        report.extend(r?);
    }
    report.push(ReportLine::new(
        "suite.summary",
        report.all_pass(),
        format!("lines={},failures={}", report.lines.len(), report.failures()),
    ));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weierstrass_batch_passes() {
        let r = weierstrass_suite(4).unwrap();
        assert!(r.all_pass(), "{}", r.render());
    }

    #[test]
    fn sl2_batch_passes() {
        let r = sl2_suite(0).unwrap();
        assert!(r.all_pass(), "{}", r.render());
    }
}
