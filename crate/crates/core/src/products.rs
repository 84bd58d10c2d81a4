//! Euler products with explicit truncation certificates.
//!
//! Every [`EulerProductValue`] carries a `tail_bound` on
//! `|log(true / computed)|`. The bound has three parts: the omitted terms of
//! each local series (geometric majorant built from the first omitted term),
//! the omitted primes where applicable, and floating-point accumulation.
//! Truncation parts are inflated by a factor of two.

use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arith::{enumerate_smooth, gcd, DivisorOrder, PrimeTable};
use crate::error::{Error, Result};
use crate::summation::{ComplexNeumaier, Neumaier};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_61;

/// Local series length used when the caller has no preference.
pub const DEFAULT_SERIES_CUTOFF: u32 = 40;

const EPS: f64 = f64::EPSILON;
const CERT_INFLATION: f64 = 2.0;
// Local series are cut as soon as the certified remainder drops below this.
const NEGLIGIBLE_TAIL: f64 = 1e-18;
const MAX_SERIES_TERMS: u32 = 400;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MathConstants {
    pub euler_gamma: f64,
    pub exp_gamma: f64,
}

impl MathConstants {
    pub fn get() -> &'static MathConstants {
        static CONSTANTS: OnceLock<MathConstants> = OnceLock::new();
        CONSTANTS.get_or_init(|| MathConstants {
            euler_gamma: EULER_GAMMA,
            exp_gamma: EULER_GAMMA.exp(),
        })
    }
}

/// A point `s = σ + it`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexPoint {
    pub sigma: f64,
    pub t: f64,
}

impl ComplexPoint {
    pub fn new(sigma: f64, t: f64) -> Result<Self> {
        if sigma.is_finite() && t.is_finite() {
            Ok(Self { sigma, t })
        } else {
            Err(Error::InvalidArgument(format!(
                "non-finite point {sigma} + {t}i"
            )))
        }
    }

    pub const fn real(sigma: f64) -> Self {
        Self { sigma, t: 0.0 }
    }

    pub const fn imaginary(t: f64) -> Self {
        Self { sigma: 0.0, t }
    }

    pub fn neg(self) -> Self {
        Self {
            sigma: -self.sigma,
            t: -self.t,
        }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.sigma, self.t)
    }
}

/// `p^{-s}` computed as `p^{-σ} e^{-it log p}`.
#[inline]
pub fn prime_power_neg(p: u64, s: ComplexPoint) -> Complex64 {
    let lp = (p as f64).ln();
    let r = (-s.sigma * lp).exp();
    let (sin, cos) = (s.t * lp).sin_cos();
    Complex64::new(r * cos, -r * sin)
}

/// Principal `log(1 + z)`, accurate for small `|z|`.
#[inline]
pub fn ln_1p_complex(z: Complex64) -> Complex64 {
    let re = 0.5 * (2.0 * z.re + z.norm_sqr()).ln_1p();
    let im = z.im.atan2(1.0 + z.re);
    Complex64::new(re, im)
}

/// Result of a truncated Euler product.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EulerProductValue<V = f64> {
    pub value: V,
    /// Certified bound on `|log(true / value)|`.
    pub tail_bound: f64,
    pub prime_limit: u64,
    /// Largest local-series index actually used.
    pub series_cutoff: u32,
    /// Measured constant `K` in `|log local(p)| <= K p^{-2}`, where an
    /// omitted-prime bound was needed. Not a proven constant.
    pub k_constant: Option<f64>,
}

impl EulerProductValue<f64> {
    /// Interval `[value e^{-tail}, value e^{tail}]` (for positive values).
    pub fn bounds(&self) -> (f64, f64) {
        (
            self.value * (-self.tail_bound).exp(),
            self.value * self.tail_bound.exp(),
        )
    }

    /// Absolute error bound implied by the log-scale certificate.
    pub fn abs_error(&self) -> f64 {
        self.value.abs() * self.tail_bound.exp_m1()
    }
}

/// Truncated local series `Σ_{m≥1} d_α(p^m)^2 p^{-m}` together with a
/// certified bound on the omitted terms.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SquareSeries {
    /// Sum over `1 <= m <= cutoff` (the `m = 0` term, 1, is excluded).
    pub tail_free: f64,
    /// Bound on `Σ_{m>cutoff}`.
    pub remainder: f64,
    pub cutoff: u32,
}

/// Sums `Σ_{1≤m≤M} d_α(p^m)^2 p^{-m}` where `M >= cutoff` is extended if
/// needed so that the ratio majorant of the remainder is below 1/2.
pub(crate) fn square_series(alpha: f64, p: u64, cutoff: u32) -> SquareSeries {
    let x = 1.0 / p as f64;
    let ratio_sup = |m: u32| {
        // sup_{k >= m+1} |α + k| / (k + 1) <= max(1, (|α| + m + 1) / (m + 2))
        let r = ((alpha.abs() + m as f64 + 1.0) / (m as f64 + 2.0)).max(1.0);
        r * r * x
    };
    let mut acc = Neumaier::new();
    let mut coeff = 1.0f64;
    let mut xm = 1.0f64;
    let mut m = 0u32;
    loop {
        // Advance to index m + 1.
        coeff *= (alpha + m as f64) / (m as f64 + 1.0);
        xm *= x;
        let next = coeff * coeff * xm;
        let rho = ratio_sup(m);
        if m >= cutoff && rho <= 0.5 || m >= MAX_SERIES_TERMS {
            let remainder = if rho < 1.0 {
                next / (1.0 - rho)
            } else {
                f64::INFINITY
            };
            return SquareSeries {
                tail_free: acc.value(),
                remainder,
                cutoff: m,
            };
        }
        acc.add(next);
        m += 1;
    }
}

/// `∏_{p≤Y} (1 − 1/p)^{-1}`.
pub fn mertens_product(y: u64, table: &PrimeTable) -> Result<f64> {
    if y < 2 {
        return Err(Error::InvalidArgument(format!(
            "Mertens product needs Y >= 2, got {y}"
        )));
    }
    table.check_bound("Y", y)?;
    let log: Neumaier = table
        .primes_up_to(y)
        .iter()
        .map(|&p| -(-1.0 / p as f64).ln_1p())
        .collect();
    Ok(log.value().exp())
}

/// The constant `a_β = ∏_p (1 − 1/p)^{β²/4} Σ_m d_{β/2}(p^m)^2 p^{-m}`,
/// truncated to `p <= prime_limit` and `m <= series_cutoff`.
pub fn a_beta(beta: f64, prime_limit: u64, series_cutoff: u32) -> Result<EulerProductValue> {
    let table = PrimeTable::new(prime_limit.max(2))?;
    a_beta_with_table(beta, prime_limit, series_cutoff, &table)
}

/// [`a_beta`] reusing an existing sieve (`prime_limit <= table.limit()`).
pub fn a_beta_with_table(
    beta: f64,
    prime_limit: u64,
    series_cutoff: u32,
    table: &PrimeTable,
) -> Result<EulerProductValue> {
    if !beta.is_finite() {
        return Err(Error::InvalidArgument(format!("β must be finite, got {beta}")));
    }
    if prime_limit < 2 {
        return Err(Error::InvalidArgument(format!(
            "prime_limit must be >= 2, got {prime_limit}"
        )));
    }
    if series_cutoff < 2 {
        return Err(Error::InvalidArgument(format!(
            "series_cutoff must be >= 2, got {series_cutoff}"
        )));
    }
    table.check_bound("prime_limit", prime_limit)?;

    let alpha = beta / 2.0;
    let exponent = beta * beta / 4.0;
    let mut log = Neumaier::new();
    let mut series_tail = Neumaier::new();
    let mut magnitude = Neumaier::new();
    let mut k_measured = 0.0f64;
    let mut cutoff_used = series_cutoff;

    for &p in table.primes_up_to(prime_limit) {
        let s = square_series(alpha, p, series_cutoff);
        cutoff_used = cutoff_used.max(s.cutoff);
        let mertens_part = exponent * (-1.0 / p as f64).ln_1p();
        let series_part = s.tail_free.ln_1p();
        let local = mertens_part + series_part;
        log.add(mertens_part);
        log.add(series_part);
        // The full local series is >= 1, so log(1 + r/S) <= r.
        series_tail.add(s.remainder);
        magnitude.add(mertens_part.abs() + series_part.abs());
        let pf = p as f64;
        k_measured = k_measured.max(local.abs() * pf * pf);
    }

    let l = log.value();
    let k_constant = CERT_INFLATION * k_measured;
    // Σ_{p>P} p^{-2} <= ∫_P^∞ x^{-2} dx.
    let omitted = k_constant / prime_limit as f64;
    let rounding = 8.0 * EPS * magnitude.value() + 4.0 * EPS * (l.abs() + 1.0);
    Ok(EulerProductValue {
        value: l.exp(),
        tail_bound: CERT_INFLATION * series_tail.value() + omitted + rounding,
        prime_limit,
        series_cutoff: cutoff_used,
        k_constant: Some(k_constant),
    })
}

const ZETA_SPLIT: u64 = 1000;

/// Riemann ζ on the real axis `s > 1`: direct sum below `M = 1000` plus the
/// Euler–Maclaurin tail through the `B_4` term. The first omitted correction
/// is below `1e-17` for every `s > 1`.
pub fn zeta_real(s: f64) -> Result<f64> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(Error::OutOfDomain(format!(
            "zeta_real needs finite s > 1, got {s}"
        )));
    }
    let m = ZETA_SPLIT as f64;
    let mut acc = Neumaier::new();
    for n in (1..ZETA_SPLIT).rev() {
        acc.add((n as f64).powf(-s));
    }
    let ms = m.powf(-s);
    acc.add(m * ms / (s - 1.0));
    acc.add(0.5 * ms);
    acc.add(s * ms / m / 12.0);
    acc.add(-s * (s + 1.0) * (s + 2.0) * ms / (m * m * m) / 720.0);
    Ok(acc.value())
}

fn reciprocal_factors(s: ComplexPoint, y: u64, table: &PrimeTable) -> Result<Complex64> {
    if y >= 2 {
        table.check_bound("Y", y)?;
    }
    let mut prod = Complex64::new(1.0, 0.0);
    for &p in table.primes_up_to(y) {
        let f = Complex64::new(1.0, 0.0) - prime_power_neg(p, s);
        if f.norm() <= 4.0 * EPS {
            return Err(Error::SingularPoint { prime: p });
        }
        prod *= f;
    }
    Ok(prod)
}

/// Truncated zeta product `ζ(s, Y) = ∏_{p≤Y} (1 − p^{-s})^{-1}`.
pub fn zeta_y(s: ComplexPoint, y: u64, table: &PrimeTable) -> Result<Complex64> {
    Ok(reciprocal_factors(s, y, table)?.inv())
}

/// `1 / ζ(s, Y) = ∏_{p≤Y} (1 − p^{-s})`.
pub fn zeta_y_reciprocal(s: ComplexPoint, y: u64, table: &PrimeTable) -> Result<Complex64> {
    reciprocal_factors(s, y, table)
}

fn check_a_region(s1: ComplexPoint, s2: ComplexPoint) -> Result<()> {
    if s1.sigma > -0.25 && s2.sigma > -0.25 {
        Ok(())
    } else {
        Err(Error::OutOfDomain(format!(
            "arithmetic factor needs Re(s1), Re(s2) > -1/4, got {} and {}",
            s1.sigma, s2.sigma
        )))
    }
}

/// Per-prime data of the arithmetic factor.
struct ALocal {
    log: Complex64,
    log_error: f64,
    magnitude: f64,
    cutoff: u32,
}

fn a_local(p: u64, s1: ComplexPoint, s2: ComplexPoint, cutoff: u32, coeffs: &[f64]) -> ALocal {
    let x = 1.0 / p as f64;
    let w1 = prime_power_neg(p, s1);
    let w2 = prime_power_neg(p, s2);
    let pre = [
        Complex64::new(0.25 * (-x).ln_1p(), 0.0),
        ln_1p_complex(-(w1 * w2) * x),
        -0.5 * ln_1p_complex(-w1 * x),
        -0.5 * ln_1p_complex(-w2 * x),
    ];

    // Degree-m part of the constrained double series factors as
    // p^{-m} h_m(w1) h_m(w2), h_m(w) = Σ_{e≤m} d_{-1/2}(p^e) w^{m-e}.
    let rho = w1.norm().max(1.0) * w2.norm().max(1.0) * x;
    let tail_after = |m: u32| {
        // Σ_{k>m} (k+1)^2 ρ^k with |h_k| <= (k+1) max(1,|w|)^k.
        let mf = m as f64;
        let step = ((mf + 3.0) / (mf + 2.0)).powi(2) * rho;
        if step < 1.0 {
            (mf + 2.0).powi(2) * rho.powi(m as i32 + 1) / (1.0 - step)
        } else {
            f64::INFINITY
        }
    };
    let mut sum = ComplexNeumaier::new();
    sum.add(Complex64::new(1.0, 0.0));
    let (mut h1, mut h2) = (Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0));
    let mut xm = 1.0;
    let mut m = 0u32;
    let mut tail = tail_after(0);
    while (m < cutoff || !tail.is_finite()) && m < MAX_SERIES_TERMS && tail > NEGLIGIBLE_TAIL {
        m += 1;
        let c = coeffs[m as usize];
        h1 = h1 * w1 + c;
        h2 = h2 * w2 + c;
        xm *= x;
        sum.add(h1 * h2 * xm);
        tail = tail_after(m);
    }
    let series = sum.value();
    let modulus = series.norm();
    let log_error = if tail < modulus {
        tail / (modulus - tail)
    } else {
        f64::INFINITY
    };
    let series_log = series.ln();
    let log = pre.iter().sum::<Complex64>() + series_log;
    let magnitude = pre.iter().map(|z| z.norm()).sum::<f64>() + series_log.norm();
    ALocal {
        log,
        log_error,
        magnitude,
        cutoff: m,
    }
}

/// Arithmetic factor `A(s1, s2, Y)` over primes `p <= Y`.
///
/// Each local factor is
/// `(1−p^{-1})^{1/4} (1−p^{-1-s1-s2}) (1−p^{-1-s1})^{-1/2} (1−p^{-1-s2})^{-1/2}`
/// times the double series over `e1+f1 = e2+f2`, grouped by degree. Square
/// roots take the principal branch. The returned `tail_bound` certifies only
/// the series truncation and rounding: the product is finite, so no primes
/// are omitted.
pub fn a_factor(
    s1: ComplexPoint,
    s2: ComplexPoint,
    y: u64,
    series_cutoff: u32,
    table: &PrimeTable,
) -> Result<EulerProductValue<Complex64>> {
    check_a_region(s1, s2)?;
    if y >= 2 {
        table.check_bound("Y", y)?;
    }
    let coeffs = DivisorOrder::new(-0.5)?.local_coefficients(MAX_SERIES_TERMS as usize + 1);
    let mut log = ComplexNeumaier::new();
    let mut err = Neumaier::new();
    let mut magnitude = Neumaier::new();
    let mut cutoff_used = 0;
    for &p in table.primes_up_to(y) {
        let local = a_local(p, s1, s2, series_cutoff, &coeffs);
        log.add(local.log);
        err.add(local.log_error);
        magnitude.add(local.magnitude);
        cutoff_used = cutoff_used.max(local.cutoff);
    }
    let l = log.value();
    let rounding = 8.0 * EPS * magnitude.value() + 4.0 * EPS * (l.norm() + 1.0);
    Ok(EulerProductValue {
        value: l.exp(),
        tail_bound: CERT_INFLATION * err.value() + rounding,
        prime_limit: y,
        series_cutoff: cutoff_used,
        k_constant: None,
    })
}

/// `F(s1, s2, Y)` in factored form:
/// `A(s1,s2,Y) ζ(1+s1+s2) ∏_{p≤Y} (1−1/p)^{-1/4} (1−p^{-1-s1})^{1/2} (1−p^{-1-s2})^{1/2}`.
///
/// ζ is evaluated on the real axis only, so `s1 + s2` must be real.
pub fn f_factored(
    s1: ComplexPoint,
    s2: ComplexPoint,
    y: u64,
    series_cutoff: u32,
    table: &PrimeTable,
) -> Result<Complex64> {
    check_a_region(s1, s2)?;
    let sum = s1.to_complex() + s2.to_complex();
    if sum.re <= 0.0 {
        return Err(Error::OutOfDomain(format!(
            "F needs Re(s1 + s2) > 0, got {}",
            sum.re
        )));
    }
    if sum.im.abs() > 1e-15 {
        return Err(Error::OutOfDomain(
            "F is only evaluated where s1 + s2 is real".into(),
        ));
    }
    let zeta = zeta_real(1.0 + sum.re)?;
    let a = a_factor(s1, s2, y, series_cutoff, table)?;
    let mut log = ComplexNeumaier::new();
    for &p in table.primes_up_to(y) {
        let x = 1.0 / p as f64;
        log.add(Complex64::new(-0.25 * (-x).ln_1p(), 0.0));
        log.add(0.5 * ln_1p_complex(-prime_power_neg(p, s1) * x));
        log.add(0.5 * ln_1p_complex(-prime_power_neg(p, s2) * x));
    }
    Ok(a.value * zeta * log.value().exp())
}

/// Brute-force truncation of the defining sum of `F(s1, s2, Y)`:
/// `m_j ∈ S(Y) ∩ [1, m_limit]`, `n_j <= n_limit`, `m1 n1 = m2 n2`.
///
/// For each `(m1, m2)` the solutions are `n1 = k m2/g`, `n2 = k m1/g` with
/// `g = gcd(m1, m2)`; the `k`-sums come from a prefix table. Accuracy is
/// whatever the truncation gives; this is a cross-check, not a certified
/// evaluator. Intended for `Re(s1), Re(s2) >= 1`.
pub fn f_series(
    s1: ComplexPoint,
    s2: ComplexPoint,
    y: u64,
    m_limit: u64,
    n_limit: u64,
) -> Complex64 {
    let smooth = enumerate_smooth(y, m_limit);
    let small_primes: Vec<u64> = if y >= 2 {
        PrimeTable::new(y.min(m_limit.max(2)))
            .map(|t| t.primes().to_vec())
            .unwrap_or_default()
    } else {
        Vec::new()
    };
    let coeffs = DivisorOrder::new(-0.5)
        .expect("finite")
        .local_coefficients(64);
    let d = |mut m: u64| -> f64 {
        let mut c = 1.0;
        for &p in &small_primes {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            c *= coeffs[e];
        }
        c
    };
    let weights: Vec<f64> = smooth.iter().map(|&m| d(m) / (m as f64).sqrt()).collect();

    let z = Complex64::new(1.0, 0.0) + s1.to_complex() + s2.to_complex();
    let mut prefix = Vec::with_capacity(n_limit as usize + 1);
    prefix.push(Complex64::new(0.0, 0.0));
    let mut acc = ComplexNeumaier::new();
    for k in 1..=n_limit {
        acc.add((-(k as f64).ln() * z).exp());
        prefix.push(acc.value());
    }

    let shift1 = Complex64::new(0.5, 0.0) + s1.to_complex();
    let shift2 = Complex64::new(0.5, 0.0) + s2.to_complex();
    let mut total = ComplexNeumaier::new();
    for (i, &m1) in smooth.iter().enumerate() {
        for (j, &m2) in smooth.iter().enumerate() {
            let g = gcd(m1, m2);
            let (a, b) = (m1 / g, m2 / g);
            let kmax = n_limit / a.max(b);
            if kmax == 0 {
                continue;
            }
            let scale = (-(b as f64).ln() * shift1 - (a as f64).ln() * shift2).exp();
            total.add(prefix[kmax as usize] * scale * (weights[i] * weights[j]));
        }
    }
    total.value()
}
