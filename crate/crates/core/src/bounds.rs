//! Exponents, envelopes and the Hölder bound for `‖f‖_q`, `0 < q <= 1`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::PrimeTable;
use crate::error::{Error, Result};
use crate::meanvalues::{i2_numeric, i_exact, j_exact, QuadratureSpec, I_EXACT_MAX_N};
use crate::montecarlo::{estimate_i, estimate_norm_q};
use crate::products::{a_beta_with_table, MathConstants, DEFAULT_SERIES_CUTOFF};

/// Smallest `N` for which `log log N >= 1`.
pub const MIN_N: u64 = 16;
/// Lower edge of the `B` range used in the one-norm argument.
pub const B_FLOOR: f64 = 5.0;

fn check_q(q: f64) -> Result<()> {
    if q > 0.0 && q <= 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfDomain(format!("q must lie in (0, 1], got {q}")))
    }
}

fn check_n(n: u64) -> Result<()> {
    if n < MIN_N {
        return Err(Error::OutOfDomain(format!("N must be >= {MIN_N}, got {n}")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundParams {
    pub q: f64,
    pub n: u64,
    pub y: Option<u64>,
    pub b: Option<f64>,
}

impl BoundParams {
    pub fn new(q: f64, n: u64, y: Option<u64>, b: Option<f64>) -> Result<Self> {
        check_q(q)?;
        check_n(n)?;
        if let Some(y) = y {
            if y < 2 {
                return Err(Error::OutOfDomain(format!("Y must be >= 2, got {y}")));
            }
        }
        if let Some(b) = b {
            if !(b > 0.0) || !b.is_finite() {
                return Err(Error::OutOfDomain(format!("B must be positive, got {b}")));
            }
        }
        Ok(Self { q, n, y, b })
    }
}

/// `(α_q, 1/2 − α_q)` with `α_q = 1/(4(2 − q))`.
pub fn alpha_exponent(q: f64) -> Result<(f64, f64)> {
    check_q(q)?;
    let alpha = 1.0 / (4.0 * (2.0 - q));
    Ok((alpha, 0.5 - alpha))
}

/// The `J` exponent `β = q/(2 − q)` paired with `q` in the Hölder step.
pub fn holder_beta(q: f64) -> Result<f64> {
    check_q(q)?;
    Ok(q / (2.0 - q))
}

/// Bound on `‖f‖_q` from `‖f‖_q^q <= I^{q/2} J^{1−q/2}`.
pub fn holder_combine(i_val: f64, j_val: f64, q: f64) -> Result<f64> {
    check_q(q)?;
    if !(i_val >= 0.0) || !(j_val >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "I and J must be nonnegative, got {i_val}, {j_val}"
        )));
    }
    if i_val == 0.0 || j_val == 0.0 {
        return Ok(0.0);
    }
    Ok(((q / 2.0) * i_val.ln() + (1.0 - q / 2.0) * j_val.ln()).exp().powf(1.0 / q))
}

/// `C (log N)^{α_q} (log log N)^{1/2−α_q}`.
pub fn theorem1_envelope(q: f64, n: u64, c: f64) -> Result<f64> {
    check_n(n)?;
    theorem1_envelope_log(q, (n as f64).ln(), c)
}

/// [`theorem1_envelope`] with `log N` given directly.
pub fn theorem1_envelope_log(q: f64, log_n: f64, c: f64) -> Result<f64> {
    let (alpha, companion) = alpha_exponent(q)?;
    if !(log_n.ln() >= 1.0 - 1e-15) {
        return Err(Error::OutOfDomain(format!(
            "need log log N >= 1, got log N = {log_n}"
        )));
    }
    if !(c > 0.0) {
        return Err(Error::InvalidArgument(format!("C must be positive, got {c}")));
    }
    Ok(c * log_n.powf(alpha) * log_n.ln().max(1.0).powf(companion))
}

/// `g(B) = √B e^{−γ} + 1/(π√B)`.
pub fn b_objective(b: f64) -> f64 {
    let e = MathConstants::get();
    b.sqrt() / e.exp_gamma + 1.0 / (PI * b.sqrt())
}

/// `a₁ e^{γ/4} g(B)^{1/2}`.
pub fn one_norm_constant(b: f64, a1: f64) -> Result<f64> {
    if !(b > 0.0) || !b.is_finite() {
        return Err(Error::OutOfDomain(format!("B must be positive, got {b}")));
    }
    let e = MathConstants::get();
    Ok(a1 * (e.euler_gamma / 4.0).exp() * b_objective(b).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BOptimum {
    /// `e^γ/π`.
    pub b_star: f64,
    /// `(4/π)^{1/4}`, the constant divided by `a₁`.
    pub constant_factor: f64,
    /// True when `b_star` lies below [`B_FLOOR`], outside the range where the
    /// one-norm argument is carried out.
    pub below_floor: bool,
}

pub fn optimize_b() -> BOptimum {
    let b_star = MathConstants::get().exp_gamma / PI;
    BOptimum {
        b_star,
        constant_factor: (4.0 / PI).powf(0.25),
        below_floor: b_star < B_FLOOR,
    }
}

/// `a₁ (e^γ log Y)^{1/4} (log N / (e^γ log Y) + (1/π) log log Y)`, principal
/// terms only.
pub fn prop2_rhs(n: u64, y: u64, a1: f64) -> Result<f64> {
    if n < 2 || y < 3 {
        return Err(Error::OutOfDomain(format!(
            "need N >= 2 and Y >= 3, got N = {n}, Y = {y}"
        )));
    }
    let e = MathConstants::get();
    let ly = e.exp_gamma * (y as f64).ln();
    Ok(a1 * ly.powf(0.25) * ((n as f64).ln() / ly + (y as f64).ln().ln() / PI))
}

/// Admissible `Y` range `exp((log log N)²) <= Y <= exp(log N / (5 log log N))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct YRange {
    pub log_lower: f64,
    pub log_upper: f64,
    pub lower: f64,
    pub upper: f64,
    pub nonempty: bool,
}

pub fn y_range_check(n: u64) -> Result<YRange> {
    check_n(n)?;
    y_range_check_log((n as f64).ln())
}

/// [`y_range_check`] for `N = e^{log_n}`, usable far beyond `u64`.
pub fn y_range_check_log(log_n: f64) -> Result<YRange> {
    if !(log_n >= (MIN_N as f64).ln()) {
        return Err(Error::OutOfDomain(format!(
            "log N must be >= log {MIN_N}, got {log_n}"
        )));
    }
    let ll = log_n.ln();
    let log_lower = ll * ll;
    let log_upper = log_n / (5.0 * ll);
    Ok(YRange {
        log_lower,
        log_upper,
        lower: log_lower.exp(),
        upper: log_upper.exp(),
        nonempty: log_lower <= log_upper,
    })
}

/// Smallest `log N` (to within `tol`) with a nonempty range, found by
/// doubling from `log 16` and then bisecting.
pub fn first_nonempty_log_n(tol: f64) -> f64 {
    let empty = |l: f64| !y_range_check_log(l).expect("above floor").nonempty;
    let mut lo = (MIN_N as f64).ln();
    let mut hi = lo;
    while empty(hi) {
        lo = hi;
        hi *= 2.0;
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if empty(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Theorem1,
    Prop1,
    Prop2,
    Holder,
    I2,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Theorem1, Suite::Prop1, Suite::Prop2, Suite::Holder, Suite::I2];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Theorem1 => "theorem1",
            Suite::Prop1 => "prop1",
            Suite::Prop2 => "prop2",
            Suite::Holder => "holder",
            Suite::I2 => "i2",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

/// Grid and budget for [`verify_suite`]. Suites ignore axes they do not use.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteGrid {
    pub qs: Vec<f64>,
    pub ns: Vec<u64>,
    pub ys: Vec<u64>,
    pub betas: Vec<f64>,
    pub samples: usize,
    pub seed: u64,
    /// Prime limit for the constants `a_β`.
    pub prime_limit: u64,
    pub quadrature: QuadratureSpec,
}

impl Default for SuiteGrid {
    fn default() -> Self {
        Self {
            qs: vec![1.0],
            ns: vec![100, 1000],
            ys: vec![5, 50],
            betas: vec![2.0],
            samples: 10_000,
            seed: 1,
            prime_limit: 100_000,
            quadrature: QuadratureSpec::default(),
        }
    }
}

/// One measured-versus-formula row. Columns a suite does not produce are `None`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub q: Option<f64>,
    pub n: Option<u64>,
    pub y: Option<u64>,
    pub beta: Option<f64>,
    /// Monte Carlo `‖f‖_q` or the exact mean value, by suite.
    pub measured: Option<f64>,
    pub stderr: Option<f64>,
    /// Envelope with `C = 1`, or the asymptotic main term.
    pub envelope: Option<f64>,
    /// Hölder bound `(I^{q/2} J^{1−q/2})^{1/q}`.
    pub bound: Option<f64>,
    pub i_value: Option<f64>,
    pub j_value: Option<f64>,
    /// `measured / envelope`, or `measured / bound` for the Hölder suite.
    pub ratio: Option<f64>,
    /// Certified error of the exact input, when there is one.
    pub certificate: Option<f64>,
    pub pass: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub suite: Suite,
    pub rows: Vec<BoundRow>,
    pub metadata: Vec<(String, String)>,
}

impl BoundReport {
    /// True when no row has failed; rows without a verdict count as passing.
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass != Some(false))
    }
}

fn cartesian<A: Copy, B: Copy>(a: &[A], b: &[B]) -> Vec<(A, B)> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| (x, y))).collect()
}

/// Monte Carlo `‖f‖_q` with a delta-method standard error.
fn mc_norm(n: u64, q: f64, grid: &SuiteGrid, table: &PrimeTable) -> Result<(f64, f64)> {
    let e = estimate_norm_q(n, &[q], grid.samples, grid.seed, table)?[0];
    let norm = e.mean.powf(1.0 / q);
    Ok((norm, norm / (q * e.mean) * e.stderr))
}

pub fn verify_suite(suite: Suite, grid: &SuiteGrid) -> Result<BoundReport> {
    let mut metadata = vec![
        ("suite".to_string(), suite.name().to_string()),
        ("samples".to_string(), grid.samples.to_string()),
        ("seed".to_string(), grid.seed.to_string()),
    ];
    let limit = grid
        .ns
        .iter()
        .chain(&grid.ys)
        .copied()
        .chain([grid.prime_limit, 2])
        .max()
        .unwrap_or(2);
    let table = PrimeTable::new(limit)?;
    let cutoff = DEFAULT_SERIES_CUTOFF;

    let rows: Vec<BoundRow> = match suite {
        Suite::Theorem1 => cartesian(&grid.qs, &grid.ns)
            .into_par_iter()
            .map(|(q, n)| {
                let (measured, stderr) = mc_norm(n, q, grid, &table)?;
                let envelope = theorem1_envelope(q, n, 1.0)?;
                Ok(BoundRow {
                    q: Some(q),
                    n: Some(n),
                    measured: Some(measured),
                    stderr: Some(stderr),
                    envelope: Some(envelope),
                    ratio: Some(measured / envelope),
                    ..Default::default()
                })
            })
            .collect::<Result<_>>()?,
        Suite::Prop1 => {
            let consts = grid
                .betas
                .iter()
                .map(|&b| a_beta_with_table(b, grid.prime_limit, cutoff, &table))
                .collect::<Result<Vec<_>>>()?;
            metadata.push(("prime_limit".to_string(), grid.prime_limit.to_string()));
            cartesian(&(0..grid.betas.len()).collect::<Vec<_>>(), &grid.ys)
                .into_par_iter()
                .map(|(bi, y)| {
                    let beta = grid.betas[bi];
                    let j = j_exact(y, beta, cutoff, &table)?;
                    let e = MathConstants::get();
                    let main = consts[bi].value
                        * (e.exp_gamma * (y as f64).ln()).powf(beta * beta / 4.0);
                    Ok(BoundRow {
                        y: Some(y),
                        beta: Some(beta),
                        measured: Some(j.value),
                        envelope: Some(main),
                        j_value: Some(j.value),
                        ratio: Some(j.value / main),
                        certificate: Some(j.truncation_error + consts[bi].abs_error()),
                        ..Default::default()
                    })
                })
                .collect::<Result<_>>()?
        }
        Suite::Prop2 => {
            let a1 = a_beta_with_table(1.0, grid.prime_limit, cutoff, &table)?;
            metadata.push(("label".to_string(), "principal terms only".to_string()));
            metadata.push(("a1".to_string(), a1.value.to_string()));
            cartesian(&grid.ns, &grid.ys)
                .into_par_iter()
                .map(|(n, y)| {
                    let rhs = prop2_rhs(n, y, a1.value)?;
                    let (value, stderr, cert) = if n <= I_EXACT_MAX_N {
                        let i = i_exact(n, y, &table, cutoff)?;
                        (i.value, None, Some(i.truncation_error))
                    } else {
                        let i = estimate_i(n, y, grid.samples, grid.seed, &table)?;
                        (i.mean, Some(i.stderr), None)
                    };
                    Ok(BoundRow {
                        n: Some(n),
                        y: Some(y),
                        measured: Some(value),
                        stderr,
                        envelope: Some(rhs),
                        i_value: Some(value),
                        ratio: Some(value / rhs),
                        certificate: cert,
                        ..Default::default()
                    })
                })
                .collect::<Result<_>>()?
        }
        Suite::Holder => cartesian(&grid.qs, &cartesian(&grid.ns, &grid.ys))
            .into_par_iter()
            .map(|(q, (n, y))| {
                let (measured, stderr) = mc_norm(n, q, grid, &table)?;
                let beta = holder_beta(q)?;
                let j = j_exact(y, beta, cutoff, &table)?;
                let (i_val, cert) = if n <= I_EXACT_MAX_N {
                    let i = i_exact(n, y, &table, cutoff)?;
                    (i.value, i.truncation_error + j.truncation_error)
                } else {
                    let i = estimate_i(n, y, grid.samples, grid.seed, &table)?;
                    (i.mean, j.truncation_error)
                };
                let bound = holder_combine(i_val, j.value, q)?;
                Ok(BoundRow {
                    q: Some(q),
                    n: Some(n),
                    y: Some(y),
                    beta: Some(beta),
                    measured: Some(measured),
                    stderr: Some(stderr),
                    bound: Some(bound),
                    i_value: Some(i_val),
                    j_value: Some(j.value),
                    ratio: Some(measured / bound),
                    certificate: Some(cert),
                    pass: Some(measured <= bound + 3.0 * stderr),
                    ..Default::default()
                })
            })
            .collect::<Result<_>>()?,
        Suite::I2 => {
            let a1 = a_beta_with_table(1.0, grid.prime_limit, cutoff, &table)?;
            metadata.push(("a1".to_string(), a1.value.to_string()));
            grid.ys
                .par_iter()
                .map(|&y| {
                    let r = i2_numeric(y, &grid.quadrature, &table)?;
                    let reference = a1.value / PI * (y as f64).ln().ln();
                    Ok(BoundRow {
                        y: Some(y),
                        measured: Some(r.value),
                        envelope: Some(reference),
                        ratio: Some(r.value / reference),
                        certificate: Some((r.value - r.previous).abs()),
                        pass: Some(r.min_integrand > 0.0),
                        ..Default::default()
                    })
                })
                .collect::<Result<_>>()?
        }
    };
    Ok(BoundReport {
        suite,
        rows,
        metadata,
    })
}
