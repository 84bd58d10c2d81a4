//! Exact mean values as diagonal sums.
//!
//! Mean values over `t` of products of Dirichlet series collapse to sums over
//! the multiplicative constraint `m1 n1 = m2 n2`; everything here evaluates
//! those sums directly, with certified truncation errors where a local series
//! is cut.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{gcd, harmonic_sum, DivisorOrder, PrimeTable};
use crate::error::{Error, Result};
use crate::products::{a_factor, square_series, zeta_y_reciprocal, ComplexPoint};
use crate::quadrature::{graded_panels, integrate_panels, GaussLegendre};
use crate::summation::{block_reduce, Neumaier};

const EPS: f64 = f64::EPSILON;

/// Largest `N` accepted by [`pseudomoment_2k_exact`] with `k = 2`.
pub const FOURTH_MOMENT_MAX_N: u64 = 5000;
/// Largest `N` accepted by [`i_exact`].
pub const I_EXACT_MAX_N: u64 = 3000;

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct DiagonalParams {
    pub n: Option<u64>,
    pub y: Option<u64>,
    pub k: Option<u32>,
    pub beta: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiagonalSumResult {
    pub value: f64,
    pub terms_used: u64,
    /// Absolute error bound. Zero for sums evaluated without truncation.
    pub truncation_error: f64,
    /// False when `truncation_error` is an estimate rather than a bound.
    pub certified: bool,
    pub params: DiagonalParams,
}

/// Refinement policy for the `I₂` quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    /// Maximum number of integrand evaluations in one pass.
    pub node_budget: usize,
    /// Panel-count multiplier between passes.
    pub refinement_factor: usize,
    /// Stop when successive passes differ by less than this.
    pub tolerance: f64,
}

impl QuadratureSpec {
    pub fn new(node_budget: usize, refinement_factor: usize, tolerance: f64) -> Result<Self> {
        if node_budget < 16 {
            return Err(Error::InvalidArgument(format!(
                "node budget must be >= 16, got {node_budget}"
            )));
        }
        if refinement_factor < 2 {
            return Err(Error::InvalidArgument(format!(
                "refinement factor must be >= 2, got {refinement_factor}"
            )));
        }
        if !(tolerance > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "tolerance must be positive, got {tolerance}"
            )));
        }
        Ok(Self {
            node_budget,
            refinement_factor,
            tolerance,
        })
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            node_budget: 1 << 15,
            refinement_factor: 2,
            tolerance: 1e-8,
        }
    }
}

/// `‖f‖_{2k}^{2k}` for `f = Σ_{n≤N} n^{-1/2-it}` as the diagonal sum
/// `Σ_l w(l)^2` with `w(l) = Σ_{n1 n2 = l} (n1 n2)^{-1/2}`; only `k = 1, 2`.
pub fn pseudomoment_2k_exact(n: u64, k: u32) -> Result<DiagonalSumResult> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    let params = DiagonalParams {
        n: Some(n),
        k: Some(k),
        ..Default::default()
    };
    let (value, terms_used) = match k {
        1 => (harmonic_sum(n), n),
        2 => {
            if n > FOURTH_MOMENT_MAX_N {
                return Err(Error::Unsupported(format!(
                    "fourth moment limited to N <= {FOURTH_MOMENT_MAX_N}, got {n}"
                )));
            }
            (fourth_moment(n), n * n)
        }
        _ => {
            return Err(Error::Unsupported(format!(
                "exact pseudomoments only for k in {{1, 2}}, got {k}"
            )))
        }
    };
    Ok(DiagonalSumResult {
        value,
        terms_used,
        truncation_error: 0.0,
        certified: true,
        params,
    })
}

const PRODUCT_BLOCK: usize = 1 << 14;

/// `Σ_l τ_N(l)^2 / l` where `τ_N(l)` counts ordered `(n1, n2)`, `n_i <= N`,
/// with `n1 n2 = l`. Products are grouped block by block over `l`.
fn fourth_moment(n: u64) -> f64 {
    let top = (n * n) as usize;
    block_reduce(top, PRODUCT_BLOCK, |range, acc| {
        // Index i stands for l = i + 1.
        let lo = range.start as u64 + 1;
        let hi = range.end as u64;
        let mut counts = vec![0u32; range.len()];
        for n1 in 1..=n {
            let first = lo.div_ceil(n1).max(1);
            let last = (hi / n1).min(n);
            for n2 in first..=last {
                counts[(n1 * n2 - lo) as usize] += 1;
            }
        }
        for (i, &c) in counts.iter().enumerate() {
            if c > 0 {
                let c = c as f64;
                acc.add(c * c / (lo + i as u64) as f64);
            }
        }
    })
    .value()
}

/// `J(Y, β) = Σ_{n∈S(Y)} d_{β/2}(n)^2 / n = ∏_{p≤Y} Σ_m d_{β/2}(p^m)^2 p^{-m}`.
pub fn j_exact(y: u64, beta: f64, series_cutoff: u32, table: &PrimeTable) -> Result<DiagonalSumResult> {
    if !(beta >= 0.0) || !beta.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "β must be finite and >= 0, got {beta}"
        )));
    }
    if y >= 2 {
        table.check_bound("Y", y)?;
    }
    let alpha = beta / 2.0;
    let mut log = Neumaier::new();
    let mut remainder = Neumaier::new();
    let mut magnitude = Neumaier::new();
    let mut terms = 0u64;
    for &p in table.primes_up_to(y) {
        let s = square_series(alpha, p, series_cutoff);
        let l = s.tail_free.ln_1p();
        log.add(l);
        magnitude.add(l.abs());
        remainder.add(s.remainder);
        terms += s.cutoff as u64 + 1;
    }
    let l = log.value();
    let value = l.exp();
    let log_bound =
        2.0 * remainder.value() + 8.0 * EPS * magnitude.value() + 4.0 * EPS * (l.abs() + 1.0);
    Ok(DiagonalSumResult {
        value,
        terms_used: terms,
        truncation_error: value * log_bound.exp_m1(),
        certified: true,
        params: DiagonalParams {
            y: Some(y),
            beta: Some(beta),
            ..Default::default()
        },
    })
}

/// Local factors `L_e(p) = Σ_{k≥0} d_{-1/2}(p^{k+e}) d_{-1/2}(p^k) p^{-k}`
/// for the primes `p <= min(Y, N)`, stored as ratios `L_e / L_0`.
struct PairFactors {
    // offset[p] indexes `ratios` for prime p; usize::MAX for non-primes.
    offset: Vec<usize>,
    ratios: Vec<f64>,
}

impl PairFactors {
    #[inline]
    fn ratio(&self, p: u64, e: u32) -> f64 {
        self.ratios[self.offset[p as usize] + e as usize]
    }
}

fn local_pair_series(coeffs: &[f64], p: u64, e: u32, cutoff: u32) -> f64 {
    let x = 1.0 / p as f64;
    let mut acc = Neumaier::new();
    let mut xk = 1.0;
    for k in 0..=cutoff as usize {
        acc.add(coeffs[k + e as usize] * coeffs[k] * xk);
        xk *= x;
    }
    acc.value()
}

/// `I(N, Y)`, the mean square of `f` times the mollifier
/// `∏_{p≤Y} (1 − p^{-1/2-it})^{1/2}`, as the exact sum over
/// `m1 n1 = m2 n2`, `m_j ∈ S(Y)`, `n_j <= N`.
///
/// For each `(n1, n2)` with `g = gcd`, `u = n1/g`, `v = n2/g`, the solutions
/// are `m1 = v t`, `m2 = u t` with `t ∈ S(Y)`, which requires `u` and `v` to be
/// Y-smooth. The `t`-sum factors over primes with exponent offsets
/// `ord_p(v)`, `ord_p(u)`, at most one of them nonzero.
pub fn i_exact(n: u64, y: u64, table: &PrimeTable, series_cutoff: u32) -> Result<DiagonalSumResult> {
    i_exact_ordered(n, y, table, series_cutoff, false)
}

fn i_exact_ordered(
    n: u64,
    y: u64,
    table: &PrimeTable,
    series_cutoff: u32,
    transposed: bool,
) -> Result<DiagonalSumResult> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    if n > I_EXACT_MAX_N {
        return Err(Error::Unsupported(format!(
            "I(N, Y) pair sum limited to N <= {I_EXACT_MAX_N}, got {n}"
        )));
    }
    table.check_bound("N", n.max(2))?;
    if y >= 2 {
        table.check_bound("Y", y)?;
    }
    let max_e = 64 - n.leading_zeros();
    let coeffs = DivisorOrder::new(-0.5)?.local_coefficients((series_cutoff + max_e + 2) as usize);

    // T0 = ∏_{p≤Y} L_0(p) and the certificate for all local truncations.
    let mut log_t0 = Neumaier::new();
    let mut rel_err = Neumaier::new();
    let mut offset = vec![usize::MAX; n as usize + 1];
    let mut ratios = Vec::new();
    for &p in table.primes_up_to(y) {
        let l0 = local_pair_series(&coeffs, p, 0, series_cutoff);
        log_t0.add(l0.ln());
        // |d_{-1/2}| <= 1, so the omitted terms total at most p^{-K-1}/(1 - 1/p).
        let x = 1.0 / p as f64;
        let omitted = x.powi(series_cutoff as i32 + 1) / (1.0 - x);
        let mut smallest = l0.abs();
        if p <= n {
            offset[p as usize] = ratios.len();
            ratios.push(1.0);
            let mut pe = p;
            let mut e = 1;
            while pe <= n {
                let le = local_pair_series(&coeffs, p, e, series_cutoff);
                smallest = smallest.min(le.abs());
                ratios.push(le / l0);
                e += 1;
                pe = match pe.checked_mul(p) {
                    Some(v) => v,
                    None => break,
                };
            }
        }
        rel_err.add(omitted / (smallest - omitted).max(f64::MIN_POSITIVE));
    }
    let t0 = log_t0.value().exp();
    let factors = PairFactors { offset, ratios };

    // Smoothness of every u <= N.
    let smooth: Vec<bool> = (0..=n)
        .map(|m| m >= 1 && (m == 1 || table.largest_prime_factor(m).map_or(false, |q| q <= y)))
        .collect();

    let t_ratio = |mut m: u64| -> f64 {
        let mut r = 1.0;
        while m > 1 {
            let p = table.spf(m).expect("within table");
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            r *= factors.ratio(p, e);
        }
        r
    };

    const ROWS: usize = 8;
    let rows = n as usize;
    let partials: Vec<(Neumaier, Neumaier, u64)> = (0..rows.div_ceil(ROWS))
        .into_par_iter()
        .map(|b| {
            let mut sum = Neumaier::new();
            let mut abs = Neumaier::new();
            let mut count = 0u64;
            for r in b * ROWS..((b + 1) * ROWS).min(rows) {
                let outer = r as u64 + 1;
                for inner in 1..=n {
                    let (n1, n2) = if transposed { (inner, outer) } else { (outer, inner) };
                    let g = gcd(n1, n2);
                    let (u, v) = (n1 / g, n2 / g);
                    if !smooth[u as usize] || !smooth[v as usize] {
                        continue;
                    }
                    let c = t0 * t_ratio(u) * t_ratio(v) / (g * u * v) as f64;
                    sum.add(c);
                    abs.add(c.abs());
                    count += 1;
                }
            }
            (sum, abs, count)
        })
        .collect();
    let mut total = Neumaier::new();
    let mut total_abs = Neumaier::new();
    let mut terms = 0;
    for (s, a, c) in &partials {
        total.merge(s);
        total_abs.merge(a);
        terms += c;
    }
    let abs_sum = total_abs.value();
    let truncation_error =
        2.0 * rel_err.value().exp_m1() * abs_sum + 8.0 * EPS * abs_sum * (1.0 + max_e as f64);
    Ok(DiagonalSumResult {
        value: total.value(),
        terms_used: terms,
        truncation_error,
        certified: true,
        params: DiagonalParams {
            n: Some(n),
            y: Some(y),
            ..Default::default()
        },
    })
}

/// Outcome of the `I₂(Y)` quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct I2Result {
    pub y: u64,
    pub value: f64,
    /// Value from the previous (coarser) pass.
    pub previous: f64,
    /// Integrand evaluations in the final pass.
    pub nodes: usize,
    /// Smallest integrand value seen in any pass.
    pub min_integrand: f64,
}

const I2_RULE_ORDER: usize = 8;
const I2_INITIAL_PANELS: usize = 2;

/// The integrand `(1/π) A(it, −it, Y) |∏_{p≤Y} (1 − p^{-1-it})| / t²`.
pub fn i2_integrand(t: f64, y: u64, series_cutoff: u32, table: &PrimeTable) -> Result<f64> {
    let s = ComplexPoint::imaginary(t);
    let a = a_factor(s, s.neg(), y, series_cutoff, table)?;
    let euler = zeta_y_reciprocal(ComplexPoint::new(1.0, t)?, y, table)?;
    Ok(a.value.re * euler.norm() / (std::f64::consts::PI * t * t))
}

/// `(1/π) ∫_{1/log Y}^{log Y} A(it,−it,Y) |∏_{p≤Y}(1 − p^{-1-it})| t^{-2} dt`
/// by composite Gauss–Legendre on panels graded toward the left endpoint,
/// refined until two passes agree to `spec.tolerance`.
pub fn i2_numeric(y: u64, spec: &QuadratureSpec, table: &PrimeTable) -> Result<I2Result> {
    if y < 3 {
        return Err(Error::InvalidArgument(format!("I2 needs Y >= 3, got {y}")));
    }
    table.check_bound("Y", y)?;
    let log_y = (y as f64).ln();
    let (lo, hi) = (1.0 / log_y, log_y);
    let rule = GaussLegendre::new(I2_RULE_ORDER);
    let f = |t: f64| {
        i2_integrand(t, y, crate::products::DEFAULT_SERIES_CUTOFF, table).unwrap_or(f64::NAN)
    };

    let mut panels = I2_INITIAL_PANELS;
    let mut min_integrand = f64::INFINITY;
    let mut previous: Option<f64> = None;
    loop {
        if panels * I2_RULE_ORDER > spec.node_budget {
            let last = previous.unwrap_or(f64::NAN);
            return Err(Error::BudgetExceeded {
                budget: spec.node_budget,
                last,
                previous: last,
            });
        }
        let pass = integrate_panels(f, &graded_panels(lo, hi, panels), &rule);
        if pass.value.is_nan() {
            return Err(Error::OutOfDomain(format!("I2 integrand undefined for Y = {y}")));
        }
        min_integrand = min_integrand.min(pass.min_integrand);
        if let Some(prev) = previous {
            if (pass.value - prev).abs() < spec.tolerance {
                return Ok(I2Result {
                    y,
                    value: pass.value,
                    previous: prev,
                    nodes: pass.nodes,
                    min_integrand,
                });
            }
            if panels * spec.refinement_factor * I2_RULE_ORDER > spec.node_budget {
                return Err(Error::BudgetExceeded {
                    budget: spec.node_budget,
                    last: pass.value,
                    previous: prev,
                });
            }
        }
        previous = Some(pass.value);
        panels *= spec.refinement_factor;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{divisor_coefficient, enumerate_smooth};
    use crate::products::mertens_product;

    fn brute_fourth(n: u64) -> f64 {
        let mut acc = Neumaier::new();
        for a in 1..=n {
            for b in 1..=n {
                for c in 1..=n {
                    let ab = a * b;
                    if ab % c == 0 {
                        let d = ab / c;
                        if d <= n {
                            acc.add(1.0 / ((ab * c * d) as f64).sqrt());
                        }
                    }
                }
            }
        }
        acc.value()
    }

    #[test]
    fn fourth_moment_matches_quadruples() {
        assert_eq!(brute_fourth(2), 3.25);
        for n in [1, 2, 3, 10, 50] {
            let exact = pseudomoment_2k_exact(n, 2).unwrap();
            assert!((exact.value - brute_fourth(n)).abs() < 1e-10, "n={n}");
        }
    }

    #[test]
    fn pseudomoment_edges() {
        assert_eq!(pseudomoment_2k_exact(1, 1).unwrap().value, 1.0);
        assert_eq!(pseudomoment_2k_exact(1, 2).unwrap().value, 1.0);
        assert_eq!(pseudomoment_2k_exact(2, 2).unwrap().value, 3.25);
        assert_eq!(
            pseudomoment_2k_exact(777, 1).unwrap().value,
            harmonic_sum(777)
        );
        assert!(matches!(pseudomoment_2k_exact(5, 3), Err(Error::Unsupported(_))));
        assert!(matches!(pseudomoment_2k_exact(5001, 2), Err(Error::Unsupported(_))));
    }

    #[test]
    fn fourth_moment_spans_blocks() {
        // N^2 > PRODUCT_BLOCK forces several blocks.
        let n = 200;
        let exact = pseudomoment_2k_exact(n, 2).unwrap().value;
        let mut counts = vec![0u32; (n * n + 1) as usize];
        for a in 1..=n {
            for b in 1..=n {
                counts[(a * b) as usize] += 1;
            }
        }
        let direct: f64 = counts
            .iter()
            .enumerate()
            .skip(1)
            .map(|(l, &c)| (c as f64).powi(2) / l as f64)
            .sum();
        assert!((exact - direct).abs() < 1e-10);
    }

    #[test]
    fn j_examples() {
        let t = PrimeTable::new(10_000).unwrap();
        assert_eq!(j_exact(1000, 0.0, 40, &t).unwrap().value, 1.0);
        // The p = 2 factor truncated at 40 terms is short by 2^-40, so the
        // identities below use a longer local series.
        assert!((j_exact(2, 2.0, 60, &t).unwrap().value - 2.0).abs() < 1e-12);
        assert!((j_exact(3, 2.0, 60, &t).unwrap().value - 3.0).abs() < 1e-12);
        let short = j_exact(3, 2.0, 40, &t).unwrap();
        assert!((short.value - 3.0).abs() <= short.truncation_error);
        for y in [10, 100, 1000, 10_000] {
            let j = j_exact(y, 2.0, 60, &t).unwrap();
            let m = mertens_product(y, &t).unwrap();
            assert!((j.value - m).abs() < 1e-12, "Y={y}");
            assert!(j.truncation_error >= 0.0);
        }
        assert!(j_exact(10, -1.0, 40, &t).is_err());
    }

    #[test]
    fn j_matches_smooth_sum() {
        let t = PrimeTable::new(1000).unwrap();
        let half = DivisorOrder::new(0.5).unwrap();
        let direct: f64 = enumerate_smooth(5, 10_000_000)
            .into_iter()
            .map(|m| {
                let f = crate::arith::Factorization(
                    [2u64, 3, 5]
                        .iter()
                        .filter_map(|&p| {
                            let mut e = 0;
                            let mut r = m;
                            while r % p == 0 {
                                r /= p;
                                e += 1;
                            }
                            (e > 0).then_some((p, e))
                        })
                        .collect(),
                );
                divisor_coefficient(half, &f).powi(2) / m as f64
            })
            .sum();
        let j = j_exact(5, 1.0, 40, &t).unwrap();
        assert!((j.value - direct).abs() < 1e-5, "{} vs {direct}", j.value);
    }

    #[test]
    fn i_without_mollifier_is_harmonic() {
        let t = PrimeTable::new(1000).unwrap();
        for n in [1, 2, 17, 500] {
            let i = i_exact(n, 1, &t, 40).unwrap();
            assert_eq!(i.value, harmonic_sum(n), "N={n}");
        }
    }

    #[test]
    fn i_with_n_one_is_euler_product() {
        // Only n1 = n2 = 1: Σ_{m∈S(Y)} d_{-1/2}(m)^2 / m, checked against the
        // truncated direct sum over smooth m <= 10^6.
        let t = PrimeTable::new(1000).unwrap();
        let minus_half = DivisorOrder::new(-0.5).unwrap();
        for y in [2, 7, 10] {
            let i = i_exact(1, y, &t, 40).unwrap();
            let direct: f64 = enumerate_smooth(y, 1_000_000)
                .into_iter()
                .map(|m| divisor_coefficient(minus_half, &t_factor(m, &t)).powi(2) / m as f64)
                .sum();
            assert!((i.value - direct).abs() < 1e-4, "Y={y}: {} vs {direct}", i.value);
        }
    }

    fn t_factor(mut m: u64, t: &PrimeTable) -> crate::arith::Factorization {
        let mut out = Vec::new();
        for &p in t.primes() {
            if m == 1 {
                break;
            }
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            if e > 0 {
                out.push((p, e));
            }
        }
        crate::arith::Factorization(out)
    }

    /// Direct evaluation of the constraint sum with smooth m_j <= bound.
    fn i_direct(n: u64, y: u64, m_bound: u64, t: &PrimeTable) -> f64 {
        let minus_half = DivisorOrder::new(-0.5).unwrap();
        let smooth = enumerate_smooth(y, m_bound);
        let d: Vec<f64> = smooth
            .iter()
            .map(|&m| divisor_coefficient(minus_half, &t_factor(m, t)))
            .collect();
        let mut acc = Neumaier::new();
        for (i, &m1) in smooth.iter().enumerate() {
            for n1 in 1..=n {
                let l = m1 * n1;
                for (j, &m2) in smooth.iter().enumerate() {
                    if l % m2 == 0 && l / m2 <= n {
                        let n2 = l / m2;
                        acc.add(d[i] * d[j] / ((m1 * n1 * m2 * n2) as f64).sqrt());
                    }
                }
            }
        }
        acc.value()
    }

    #[test]
    fn i_matches_direct_constraint_sum() {
        let t = PrimeTable::new(1000).unwrap();
        for (n, y) in [(5, 3), (12, 5), (30, 2)] {
            let exact = i_exact(n, y, &t, 40).unwrap();
            let direct = i_direct(n, y, 200_000, &t);
            assert!(
                (exact.value - direct).abs() < 2e-3,
                "N={n} Y={y}: {} vs {direct}",
                exact.value
            );
        }
    }

    #[test]
    fn i_loop_order_invariant() {
        let t = PrimeTable::new(1000).unwrap();
        for (n, y) in [(200, 7), (300, 50), (150, 1000)] {
            let a = i_exact_ordered(n, y, &t, 40, false).unwrap();
            let b = i_exact_ordered(n, y, &t, 40, true).unwrap();
            assert!((a.value - b.value).abs() < 1e-12);
            assert!(a.value >= 0.0);
            assert!(a.truncation_error < 1e-8, "{} {}", a.value, a.truncation_error);
        }
    }

    #[test]
    fn i_argument_checks() {
        let t = PrimeTable::new(1000).unwrap();
        assert!(matches!(i_exact(3001, 7, &t, 40), Err(Error::Unsupported(_))));
        assert!(matches!(i_exact(10, 2000, &t, 40), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn i2_converges_and_positive() {
        let t = PrimeTable::new(1000).unwrap();
        let spec = QuadratureSpec::new(1 << 14, 2, 1e-6).unwrap();
        let r = i2_numeric(100, &spec, &t).unwrap();
        assert!((r.value - r.previous).abs() < 1e-6);
        assert!(r.min_integrand > 0.0);
        assert!(r.value.is_finite() && r.value > 0.0);
    }

    #[test]
    fn i2_budget_exceeded() {
        let t = PrimeTable::new(1000).unwrap();
        let spec = QuadratureSpec::new(16, 2, 1e-14).unwrap();
        assert!(matches!(
            i2_numeric(100, &spec, &t),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(i2_numeric(2, &spec, &t).is_err());
    }

    #[test]
    fn quadrature_spec_validation() {
        assert!(QuadratureSpec::new(15, 2, 1e-6).is_err());
        assert!(QuadratureSpec::new(16, 1, 1e-6).is_err());
        assert!(QuadratureSpec::new(16, 2, 0.0).is_err());
    }
}
