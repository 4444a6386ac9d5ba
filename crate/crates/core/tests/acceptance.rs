//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any fails.
//!
//! Expected values come from oracles written here (plain integer formulas,
//! hand-rolled sums), never from the library path under test.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use lhcalc_core::bigraded::BigradedPolynomial;
use lhcalc_core::fixtures::{self, FixtureSet};
use lhcalc_core::models::{
    gl_poincare, inversion_involution, sphere_fibration_check, transposition_involution, GlCohomology,
};
use lhcalc_core::rational::Rational;
use lhcalc_core::spectral::soundness_sweep;
use lhcalc_core::verifier::{self, ModuliInstance};
use lhcalc_core::Execution;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn big_pow(base: i64, exp: u32) -> BigInt {
    (0..exp).fold(BigInt::one(), |acc, _| acc * base)
}

fn inst(n: u32, d: u32) -> ModuliInstance {
    ModuliInstance::new(n, d).expect("valid instance")
}

fn ac1_discriminant_degrees() -> Check {
    let mut count = 0;
    for n in 1..=10u32 {
        for d in 2..=10u32 {
            let oracle = (n as u128 + 1) * (d as u128 - 1).pow(n);
            let got = verifier::discriminant_degree(&inst(n, d));
            ensure(got == BigInt::from(oracle), || format!("(n={n}, d={d}): {got} != {oracle}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} instances"))
}

fn ac2_chern_certificate() -> Check {
    let mut count = 0;
    for n in 1..=20u32 {
        for d in 2..=20u32 {
            let i = inst(n, d);
            let series = verifier::gauss_chern_total(&i).coeff(n as usize - 1);
            let geometric: BigInt = (0..n).map(|k| big_pow(1 - d as i64, k)).sum();
            let numer = BigInt::one() - big_pow(1 - d as i64, n);
            let closed = Rational::new(numer.clone(), BigInt::from(d));
            ensure(series == Rational::from_integer(geometric.clone()), || {
                format!("(n={n}, d={d}): series {series} vs geometric {geometric}")
            })?;
            ensure(series == closed, || format!("(n={n}, d={d}): series {series} vs closed {closed}"))?;
            ensure(series.is_integer(), || format!("(n={n}, d={d}): {series} not integral"))?;
            ensure(&numer % BigInt::from(d) == BigInt::zero(), || format!("(n={n}, d={d}): d ∤ {numer}"))?;
            ensure(verifier::chern_top_coefficient(&i).is_ok(), || format!("(n={n}, d={d}): cross-check"))?;
            count += 1;
        }
    }
    Ok(format!("{count} instances, three routes agree"))
}

fn ac3_nonvanishing() -> Check {
    let mut zeros = 0;
    for n in 1..=50u32 {
        for d in 2..=50u32 {
            let sign = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            let lhs = big_pow(d as i64 - 1, n + 1) + &sign;
            let rhs = BigInt::from(d) * big_pow(d as i64 - 1, n)
                + &sign * (BigInt::one() - big_pow(1 - d as i64, n));
            ensure(lhs == rhs, || format!("(n={n}, d={d}): identity {lhs} != {rhs}"))?;
            let got = verifier::pullback_coefficient(&inst(n, d)).map_err(|e| e.to_string())?;
            ensure(got == lhs, || format!("(n={n}, d={d}): library {got} != {lhs}"))?;
            let expect_zero = d == 2 && n % 2 == 1;
            ensure(lhs.is_zero() == expect_zero, || {
                format!("(n={n}, d={d}): value {lhs}, expected zero = {expect_zero}")
            })?;
            if d >= 3 {
                ensure(!got.is_zero(), || format!("(n={n}, d={d}): vanishes"))?;
            }
            zeros += lhs.is_zero() as u32;
        }
    }
    Ok(format!("2401 instances, {zeros} zeros (all d = 2, n odd)"))
}

fn ac4_m24() -> Check {
    let fixtures = FixtureSet::checked_in().map_err(|e| e.to_string())?;
    let total = fixtures.ps_u(2, 4).ok_or("missing ps_u_2_4")?;
    let divisor = fixtures.ps_gl(3).ok_or("missing ps_gl_3")?;
    let q = total.exact_divide(divisor).map_err(|e| e.to_string())?;
    let expected = BigradedPolynomial::from_int_terms(&[(0, 0, 1), (6, 12, 1)]);
    ensure(q == expected, || format!("quotient {q}"))?;
    let betti = q.betti_numbers().ok_or("not Poincaré–Serre data")?;
    let want: Vec<BigInt> = [1, 0, 0, 0, 0, 0, 1].into_iter().map(BigInt::from).collect();
    ensure(betti == want, || format!("betti {betti:?}"))?;
    ensure(q.coeff(6, 12) == Rational::one(), || "weight 12 missing in degree 6".into())?;
    Ok(format!("quotient {q}"))
}

fn ac5_point_moduli() -> Check {
    let fixtures = FixtureSet::checked_in().map_err(|e| e.to_string())?;
    for (n, d) in fixtures::POINT_MODULI {
        let total = fixtures.ps_u(n, d).ok_or(format!("missing ps_u_{n}_{d}"))?;
        let divisor = fixtures.ps_gl(n + 1).ok_or(format!("missing ps_gl_{}", n + 1))?;
        let q = total.exact_divide(divisor).map_err(|e| e.to_string())?;
        ensure(q == BigradedPolynomial::one(), || format!("(n={n}, d={d}): quotient {q}"))?;
    }
    Ok("(2,3) (3,3) (4,3) (2,5) all give 1".into())
}

fn ac6_gl_tower() -> Check {
    for n in 0..=10u32 {
        let gl = GlCohomology::new(n).map_err(|e| e.to_string())?;
        let basis = gl.algebra().basis();
        ensure(basis.len() == 1 << n, || format!("n={n}: basis size {}", basis.len()))?;
        let top = basis.last().map(|b| b.1).unwrap_or(0);
        ensure(top == n * n, || format!("n={n}: top degree {top}"))?;
        let p = gl_poincare(n);
        ensure(p.total() == Rational::from_integer(BigInt::from(1u64 << n)), || format!("n={n}: P(1)"))?;
        ensure(p.max_t() == Some(n * n), || format!("n={n}: top exponent"))?;
    }
    for n in 2..=10 {
        ensure(sphere_fibration_check(n), || format!("fibration fails at n={n}"))?;
    }
    for n in 1..=8u32 {
        let gl = GlCohomology::new(n).map_err(|e| e.to_string())?;
        for ell in 1..=n {
            let eta = gl.eta(ell).map_err(|e| e.to_string())?;
            let sign = |k: u32| Rational::from_integer(BigInt::from(if k.is_multiple_of(2) { 1 } else { -1 }));
            let tau = transposition_involution(&eta).map_err(|e| e.to_string())?;
            ensure(tau == eta.scale(&sign(ell - 1)), || format!("τ* on η_{ell}, n={n}"))?;
            let inv = inversion_involution(&eta).map_err(|e| e.to_string())?;
            ensure(inv == eta.scale(&sign(2 * ell - 1)), || format!("inversion on η_{ell}, n={n}"))?;
            let sigma = inversion_involution(&tau).map_err(|e| e.to_string())?;
            ensure(sigma == eta.scale(&sign(ell)), || format!("σ* on η_{ell}, n={n}"))?;
        }
    }
    Ok("n <= 10 basis/top degree, fibration 2..=10, signs n <= 8".into())
}

fn ac7_spectral_soundness() -> Check {
    let s = soundness_sweep(3, 2, 6, 3, Execution::Parallel);
    ensure(s.failures.is_empty(), || format!("{} failures, first: {}", s.failures.len(), s.failures[0]))?;
    Ok(format!("{} grids, {} differential sequences", s.grids, s.paths))
}

fn random_poly(rng: &mut ChaCha8Rng, nonzero: bool) -> BigradedPolynomial {
    loop {
        let terms = rng.random_range(0..=8);
        let p = BigradedPolynomial::from_terms((0..terms).map(|_| {
            let t = rng.random_range(0..8);
            let u = rng.random_range(0..8);
            let num = rng.random_range(-20i64..=20);
            let den = rng.random_range(1i64..=6);
            (t, u, Rational::new(num.into(), den.into()))
        }));
        if !nonzero || !p.is_zero() {
            return p;
        }
    }
}

fn ac8_division_fuzz() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1e7a7);
    for i in 0..1000 {
        let q = random_poly(&mut rng, false);
        let d = random_poly(&mut rng, true);
        let total = &q * &d;
        let got = total.exact_divide(&d).map_err(|e| format!("pair {i}: {e}"))?;
        ensure(got == q, || format!("pair {i}: {got} != {q}"))?;
    }
    Ok("1000 pairs".into())
}

type Criterion = (&'static str, fn() -> Check, Duration);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("AC1 discriminant degrees", ac1_discriminant_degrees, Duration::from_millis(100)),
        ("AC2 Chern certificate", ac2_chern_certificate, Duration::from_secs(1)),
        ("AC3 nonvanishing certificate", ac3_nonvanishing, Duration::from_secs(1)),
        ("AC4 M_{2,4} reproduction", ac4_m24, Duration::from_millis(100)),
        ("AC5 point-moduli cases", ac5_point_moduli, Duration::MAX),
        ("AC6 GL tower", ac6_gl_tower, Duration::MAX),
        ("AC7 spectral-sequence soundness", ac7_spectral_soundness, Duration::from_secs(30)),
        ("AC8 division round-trip fuzz", ac8_division_fuzz, Duration::from_secs(5)),
    ];
    let mut failed = 0;
    for (name, check, budget) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = result.and_then(|msg| {
            if elapsed <= budget {
                Ok(msg)
            } else {
                Err(format!("{msg}; took {elapsed:?}, budget {budget:?}"))
            }
        });
        match result {
            Ok(msg) => println!("[PASS] {name}: {msg} ({elapsed:.2?})"),
            Err(msg) => {
                failed += 1;
                println!("[FAIL] {name}: {msg} ({elapsed:.2?})");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
