//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.
//!
//! `cargo test -p pmlab-core --test acceptance`

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use pmlab_core::arith::harmonic_sum;
use pmlab_core::bounds::{one_norm_constant, optimize_b};
use pmlab_core::meanvalues::{i2_numeric, i_exact, j_exact, pseudomoment_2k_exact, QuadratureSpec};
use pmlab_core::montecarlo::{cauchy_schwarz_check, estimate_i, estimate_norm_q, NormEstimate};
use pmlab_core::products::{a_beta, a_beta_with_table, a_factor, f_factored, f_series, mertens_product};
use pmlab_core::{ComplexPoint, MathConstants, PrimeTable};

const SEED: u64 = 20_240_601;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn within_3se(e: &NormEstimate, exact: f64) -> bool {
    (e.mean - exact).abs() <= 3.0 * e.stderr
}

fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap()
}

fn exact_harmonic(n: u32) -> f64 {
    let mut sum = BigRational::from_integer(BigInt::from(0));
    for k in 1..=n {
        sum += BigRational::new(BigInt::from(1), BigInt::from(k));
    }
    let digits = BigInt::from(10).pow(30);
    let scaled = (sum * BigRational::from_integer(digits)).to_integer();
    scaled.to_string().parse::<f64>().unwrap() / 1e30
}

/// Counts quadruples `a b = c d` with all entries `<= n`, weighted by `(abcd)^{-1/2}`.
fn brute_fourth_moment(n: u64) -> f64 {
    let mut sum = 0.0;
    for a in 1..=n {
        for b in 1..=n {
            for c in 1..=n {
                for d in 1..=n {
                    if a * b == c * d {
                        sum += 1.0 / ((a * b * c * d) as f64).sqrt();
                    }
                }
            }
        }
    }
    sum
}

fn criterion_1() -> Outcome {
    let table = PrimeTable::new(1000).unwrap();
    let oracle = exact_harmonic(1000);
    let e = pool(1).install(|| estimate_norm_q(1000, &[2.0], 100_000, SEED, &table).unwrap()[0]);
    outcome(
        within_3se(&e, oracle) && (oracle - 7.485_470_860_550_345).abs() < 1e-12,
        format!("mean {:.6} ± {:.6}, exact {oracle:.12}", e.mean, e.stderr),
    )
}

fn criterion_2() -> Outcome {
    let mut ok = true;
    let mut detail = String::new();
    for n in [2, 10, 50] {
        let exact = pseudomoment_2k_exact(n, 2).unwrap().value;
        let brute = brute_fourth_moment(n);
        ok &= (exact - brute).abs() <= 1e-10;
        detail += &format!("N={n}: {exact:.10} ");
    }
    ok &= pseudomoment_2k_exact(2, 2).unwrap().value == 3.25;
    let table = PrimeTable::new(100).unwrap();
    let e = estimate_norm_q(2, &[4.0], 100_000, SEED, &table).unwrap()[0];
    ok &= within_3se(&e, 3.25);
    detail += &format!("| MC q=4 N=2: {:.4} ± {:.4}", e.mean, e.stderr);
    outcome(ok, detail)
}

fn criterion_3() -> Outcome {
    let a2 = a_beta(2.0, 100_000, 40).unwrap();
    outcome(
        (a2.value - 1.0).abs() <= a2.tail_bound && a2.tail_bound < 1e-10,
        format!("a_2 = {:.17}, tail {:.3e}", a2.value, a2.tail_bound),
    )
}

fn criterion_4() -> Outcome {
    let table = PrimeTable::new(100_000).unwrap();
    let mut ok = true;
    let mut worst: f64 = 0.0;
    for y in [2, 3, 5, 10, 30, 100, 1000, 5000, 10_000] {
        let j = j_exact(y, 2.0, 60, &table).unwrap().value;
        let m = mertens_product(y, &table).unwrap();
        worst = worst.max((j - m).abs());
    }
    ok &= worst <= 1e-12;
    let e = MathConstants::get().exp_gamma;
    let ratios: Vec<f64> = [100u64, 1000, 10_000, 100_000]
        .iter()
        .map(|&y| j_exact(y, 2.0, 60, &table).unwrap().value / (e * (y as f64).ln()))
        .collect();
    ok &= ratios.windows(2).all(|w| w[1] < w[0]);
    ok &= (ratios[3] - 1.0).abs() <= 0.02;
    outcome(
        ok,
        format!("max |J - Mertens| {worst:.2e}; ratios {ratios:.6?}"),
    )
}

fn criterion_5() -> Outcome {
    let table = PrimeTable::new(1_000_000).unwrap();
    let a1 = a_beta_with_table(1.0, 1_000_000, 40, &table).unwrap();
    let e = MathConstants::get().exp_gamma;
    let ratios: Vec<f64> = [100u64, 1000, 10_000, 100_000, 1_000_000]
        .iter()
        .map(|&y| {
            let j = j_exact(y, 1.0, 40, &table).unwrap().value;
            j / (a1.value * (e * (y as f64).ln()).powf(0.25))
        })
        .collect();
    let gaps: Vec<f64> = ratios.iter().map(|r| (r - 1.0).abs()).collect();
    let ok = gaps.windows(2).all(|w| w[1] < w[0]) && gaps[4] <= 0.10;
    outcome(ok, format!("a_1 = {:.12}; ratios {ratios:.6?}", a1.value))
}

fn criterion_6() -> Outcome {
    let table = PrimeTable::new(3000).unwrap();
    let exact = i_exact(200, 7, &table, 40).unwrap();
    let e = estimate_i(200, 7, 100_000, SEED, &table).unwrap();
    let mut ok = within_3se(&e, exact.value);
    for n in [1, 2, 10, 200, 1000, 3000] {
        ok &= i_exact(n, 1, &table, 40).unwrap().value == harmonic_sum(n);
    }
    outcome(
        ok,
        format!(
            "I(200,7) = {:.8} (cert {:.1e}), MC {:.6} ± {:.6}",
            exact.value, exact.truncation_error, e.mean, e.stderr
        ),
    )
}

fn criterion_7() -> Outcome {
    let table = PrimeTable::new(1000).unwrap();
    let mut violations = 0;
    let mut detail = String::new();
    for n in [100, 1000] {
        for y in [5, 50] {
            let c = cauchy_schwarz_check(n, y, 20_000, SEED, &table).unwrap();
            if !c.holds() {
                violations += 1;
            }
            detail += &format!("({n},{y}): {:.4} <= {:.4}  ", c.mean_abs_f, c.rhs);
        }
    }
    outcome(violations == 0, format!("{violations} violations; {detail}"))
}

fn criterion_8() -> Outcome {
    let table = PrimeTable::new(10_000).unwrap();
    let mut ok = true;
    let mut worst_im: f64 = 0.0;
    let mut worst_sym: f64 = 0.0;
    for y in [100, 1000, 10_000] {
        for t in [0.01, 0.1, 1.0, 10.0] {
            let plus = a_factor(ComplexPoint::imaginary(t), ComplexPoint::imaginary(-t), y, 40, &table)
                .unwrap()
                .value;
            let minus = a_factor(ComplexPoint::imaginary(-t), ComplexPoint::imaginary(t), y, 40, &table)
                .unwrap()
                .value;
            worst_im = worst_im.max(plus.im.abs()).max(minus.im.abs());
            worst_sym = worst_sym.max((plus - minus).norm());
            ok &= plus.re > 0.0 && minus.re > 0.0;
        }
    }
    ok &= worst_im < 1e-10 && worst_sym < 1e-10;
    let zero = ComplexPoint::real(0.0);
    let a = a_factor(zero, zero, 10_000, 40, &table).unwrap();
    let a1 = a_beta_with_table(1.0, 10_000, 40, &table).unwrap();
    let gap = (a.value.re - a1.value).abs();
    ok &= gap <= a.tail_bound + a1.tail_bound && a.value.im.abs() < 1e-10;
    outcome(
        ok,
        format!(
            "max |Im| {worst_im:.1e}, max asym {worst_sym:.1e}; |A(0,0) - a_1| {gap:.1e} <= {:.1e}",
            a.tail_bound + a1.tail_bound
        ),
    )
}

fn criterion_9() -> Outcome {
    let table = PrimeTable::new(100).unwrap();
    let mut worst: f64 = 0.0;
    for (x1, x2) in [(1.0, 1.0), (1.0, 2.0), (1.5, 1.5)] {
        let (s1, s2) = (ComplexPoint::real(x1), ComplexPoint::real(x2));
        for y in [2, 3, 5] {
            let factored = f_factored(s1, s2, y, 40, &table).unwrap();
            let series = f_series(s1, s2, y, 1_000_000, 100_000);
            worst = worst.max((factored - series).norm());
        }
    }
    outcome(worst <= 1e-6, format!("max |F_factored - F_series| {worst:.2e}"))
}

/// Golden-section search refined by parabolic steps.
fn numerical_minimizer(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    while b - a > 1e-7 {
        let c = b - r * (b - a);
        let d = a + r * (b - a);
        if f(c) < f(d) {
            b = d;
        } else {
            a = c;
        }
    }
    let mut x = 0.5 * (a + b);
    let h = 1e-5;
    for _ in 0..3 {
        let (l, m, u) = (f(x - h), f(x), f(x + h));
        x -= h * (u - l) / (2.0 * (u - 2.0 * m + l));
    }
    x
}

fn criterion_10() -> Outcome {
    let gamma = 0.577_215_664_901_532_9_f64;
    let g = |b: f64| b.sqrt() * (-gamma).exp() + 1.0 / (PI * b.sqrt());
    let oracle = numerical_minimizer(g, 0.1, 5.0);
    let opt = optimize_b();
    let a1 = a_beta(1.0, 10_000, 40).unwrap().value;
    let c = one_norm_constant(opt.b_star, a1).unwrap();
    let target = (4.0 / PI).powf(0.25) * a1;
    outcome(
        (opt.b_star - oracle).abs() <= 1e-8 && (c - target).abs() <= 1e-12 && opt.below_floor,
        format!(
            "B* {:.12}, minimizer {oracle:.12}; C {c:.15} vs {target:.15}",
            opt.b_star
        ),
    )
}

fn criterion_11() -> Outcome {
    let table = PrimeTable::new(100_000).unwrap();
    let a1 = a_beta_with_table(1.0, 100_000, 40, &table).unwrap().value;
    let spec = QuadratureSpec::new(1 << 16, 2, 1e-6).unwrap();
    let mut ok = true;
    let mut detail = String::new();
    for y in [100u64, 1000, 10_000] {
        match i2_numeric(y, &spec, &table) {
            Ok(r) => {
                ok &= (r.value - r.previous).abs() < 1e-6 && r.min_integrand > 0.0;
                let reference = a1 / PI * (y as f64).ln().ln();
                detail += &format!(
                    "Y={y}: I2 {:.8} ({} nodes, min {:.2e}) vs (a1/π)loglogY {reference:.6}; ",
                    r.value, r.nodes, r.min_integrand
                );
            }
            Err(err) => {
                ok = false;
                detail += &format!("Y={y}: {err}; ");
            }
        }
    }
    outcome(ok, detail)
}

fn criterion_12() -> Outcome {
    let table = PrimeTable::new(1000).unwrap();
    let means: Vec<f64> = [1, 4, 8]
        .iter()
        .map(|&t| pool(t).install(|| estimate_norm_q(1000, &[2.0], 100_000, SEED, &table).unwrap()[0].mean))
        .collect();
    outcome(
        means.iter().all(|m| m.to_bits() == means[0].to_bits()),
        format!("means {:?}", means),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 12] = [
        ("q=2 identity", criterion_1, Duration::from_secs(30)),
        ("fourth pseudomoment", criterion_2, Duration::from_secs(60)),
        ("a_2 = 1", criterion_3, Duration::from_secs(10)),
        ("J(Y,2) and Mertens", criterion_4, Duration::from_secs(30)),
        ("J(Y,1) trend", criterion_5, Duration::from_secs(120)),
        ("I(N,Y) cross-check", criterion_6, Duration::from_secs(120)),
        ("empirical Cauchy-Schwarz", criterion_7, Duration::from_secs(120)),
        ("arithmetic factor A", criterion_8, Duration::from_secs(60)),
        ("F factored vs series", criterion_9, Duration::from_secs(60)),
        ("B optimization", criterion_10, Duration::from_secs(1)),
        ("I2 quadrature", criterion_11, Duration::from_secs(120)),
        ("thread determinism", criterion_12, Duration::from_secs(120)),
    ];
    let mut failures = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let elapsed = start.elapsed();
        let pass = o.pass && elapsed < *limit;
        if !pass {
            failures += 1;
        }
        println!(
            "[{}] {:>2} {name} ({:.2}s, limit {}s): {}",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            elapsed.as_secs_f64(),
            limit.as_secs(),
            o.detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
