//! Monte Carlo norms over random completely multiplicative characters.
//!
//! Time averages of `|Σ n^{-1/2-it}|^q` become expectations over Steinhaus
//! characters `X`, with `X(p)` independent and uniform on the unit circle.
//! Sample `i` under `seed` always draws the same phases, so every estimator
//! called with the same `(seed, samples)` sees the same characters.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::PrimeTable;
use crate::error::{Error, Result};
use crate::rng::PhaseGenerator;
use crate::summation::{block_reduce, REDUCTION_BLOCK};

pub const MIN_SAMPLES: usize = 100;

/// One character restricted to `n <= N`.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterSample {
    pub seed: u64,
    pub counter: u64,
    /// `values[n]` is `X(n)`; `values[0]` is unused and zero.
    pub values: Vec<Complex64>,
}

impl CharacterSample {
    pub fn len(&self) -> u64 {
        self.values.len() as u64 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn at(&self, n: u64) -> Complex64 {
        self.values[n as usize]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    pub q: f64,
    pub mean: f64,
    pub stderr: f64,
    pub samples: usize,
    pub seed: u64,
    pub n: u64,
    pub y: Option<u64>,
    /// Largest sample divided by the mean; large values flag heavy tails.
    pub max_ratio: f64,
}

/// Reusable per-worker buffers.
struct Workspace {
    phases: Vec<Complex64>,
    values: Vec<Complex64>,
}

impl Workspace {
    fn new(prime_count: usize, n: u64) -> Self {
        Self {
            phases: vec![Complex64::new(0.0, 0.0); prime_count],
            values: vec![Complex64::new(0.0, 0.0); n as usize + 1],
        }
    }

    fn draw(&mut self, seed: u64, counter: u64) {
        let mut g = PhaseGenerator::new(seed, counter);
        for z in self.phases.iter_mut() {
            *z = g.next_phase();
        }
    }

    /// Completely multiplicative extension through the smallest-prime-factor
    /// recursion. `index` maps a prime to its position in the phase list.
    fn extend(&mut self, table: &PrimeTable, index: &[u32]) {
        let v = &mut self.values;
        if v.len() < 2 {
            return;
        }
        v[1] = Complex64::new(1.0, 0.0);
        for n in 2..v.len() {
            let p = table.spf(n as u64).expect("within table") as usize;
            v[n] = if p == n {
                self.phases[index[p] as usize]
            } else {
                v[n / p] * self.phases[index[p] as usize]
            };
        }
    }
}

/// Prime list up to `bound` with a position lookup by prime.
struct PrimeIndex<'a> {
    primes: &'a [u64],
    index: Vec<u32>,
}

impl<'a> PrimeIndex<'a> {
    fn new(table: &'a PrimeTable, bound: u64, n: u64) -> Self {
        let primes = table.primes_up_to(bound);
        let mut index = vec![u32::MAX; n as usize + 1];
        for (j, &p) in primes.iter().enumerate() {
            if p <= n {
                index[p as usize] = j as u32;
            }
        }
        Self { primes, index }
    }
}

pub fn sample_character(n: u64, table: &PrimeTable, seed: u64, counter: u64) -> Result<CharacterSample> {
    if n >= 2 {
        table.check_bound("N", n)?;
    }
    let idx = PrimeIndex::new(table, n, n);
    let mut ws = Workspace::new(idx.primes.len(), n);
    ws.draw(seed, counter);
    ws.extend(table, &idx.index);
    Ok(CharacterSample {
        seed,
        counter,
        values: ws.values,
    })
}

fn check_samples(samples: usize) -> Result<()> {
    if samples < MIN_SAMPLES {
        return Err(Error::InvalidArgument(format!(
            "need at least {MIN_SAMPLES} samples, got {samples}"
        )));
    }
    Ok(())
}

/// Runs `stat` on every sample and returns one row of statistics per sample.
/// Rows are produced in sample order, so the reduction that follows does not
/// depend on the thread count.
fn collect_samples<F>(
    n: u64,
    prime_bound: u64,
    samples: usize,
    seed: u64,
    table: &PrimeTable,
    width: usize,
    stat: F,
) -> Result<Vec<f64>>
where
    F: Fn(&[Complex64], &[Complex64], &[u64], &mut [f64]) + Sync,
{
    check_samples(samples)?;
    let top = n.max(prime_bound);
    if top >= 2 {
        table.check_bound("N or Y", top)?;
    }
    let idx = PrimeIndex::new(table, top, n);
    let mut out = vec![0.0; samples * width];
    out.par_chunks_mut(width)
        .enumerate()
        .for_each_init(
            || Workspace::new(idx.primes.len(), n),
            |ws, (i, row)| {
                ws.draw(seed, i as u64);
                ws.extend(table, &idx.index);
                stat(&ws.values, &ws.phases, idx.primes, row);
            },
        );
    Ok(out)
}

/// Two-pass mean and standard error of column `col`.
fn summarize(rows: &[f64], width: usize, col: usize) -> (f64, f64, f64) {
    let samples = rows.len() / width;
    let at = |i: usize| rows[i * width + col];
    let mean = block_reduce(samples, REDUCTION_BLOCK, |r, acc| {
        for i in r {
            acc.add(at(i));
        }
    })
    .value()
        / samples as f64;
    let ss = block_reduce(samples, REDUCTION_BLOCK, |r, acc| {
        for i in r {
            let d = at(i) - mean;
            acc.add(d * d);
        }
    })
    .value();
    let stderr = (ss / (samples - 1) as f64).sqrt() / (samples as f64).sqrt();
    let max = (0..samples).map(at).fold(0.0f64, f64::max);
    let max_ratio = if mean > 0.0 { max / mean } else { 0.0 };
    (mean, stderr, max_ratio)
}

fn inverse_roots(n: u64) -> Vec<f64> {
    (0..=n)
        .map(|k| if k == 0 { 0.0 } else { 1.0 / (k as f64).sqrt() })
        .collect()
}

#[inline]
fn partial_sum(values: &[Complex64], inv_sqrt: &[f64]) -> Complex64 {
    let mut s = Complex64::new(0.0, 0.0);
    for k in 1..values.len() {
        s += values[k] * inv_sqrt[k];
    }
    s
}

/// `E|Σ_{n≤N} X(n)/√n|^q` for each `q` in `qs`, all on the same samples.
pub fn estimate_norm_q(
    n: u64,
    qs: &[f64],
    samples: usize,
    seed: u64,
    table: &PrimeTable,
) -> Result<Vec<NormEstimate>> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    if let Some(&q) = qs.iter().find(|q| !(**q > 0.0) || !q.is_finite()) {
        return Err(Error::InvalidArgument(format!("q must be positive, got {q}")));
    }
    let inv_sqrt = inverse_roots(n);
    let width = qs.len();
    let rows = collect_samples(n, 0, samples, seed, table, width, |x, _, _, row| {
        let a = partial_sum(x, &inv_sqrt).norm();
        for (slot, &q) in row.iter_mut().zip(qs) {
            *slot = if q == 2.0 { a * a } else { a.powf(q) };
        }
    })?;
    Ok(qs
        .iter()
        .enumerate()
        .map(|(c, &q)| {
            let (mean, stderr, max_ratio) = summarize(&rows, width, c);
            NormEstimate {
                q,
                mean,
                stderr,
                samples,
                seed,
                n,
                y: None,
                max_ratio,
            }
        })
        .collect())
}

/// `E|A·B|²` with `A = Σ_{n≤N} X(n)/√n`, `B = ∏_{p≤Y} (1 − X(p)/√p)^{1/2}`.
/// Only `|B|² = ∏ |1 − X(p)/√p|` enters, so the branch of the root is moot.
pub fn estimate_i(n: u64, y: u64, samples: usize, seed: u64, table: &PrimeTable) -> Result<NormEstimate> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    let inv_sqrt = inverse_roots(n);
    let rows = collect_samples(n, y, samples, seed, table, 1, |x, phases, primes, row| {
        let a = partial_sum(x, &inv_sqrt).norm_sqr();
        row[0] = a * mollifier_norm_sqr(phases, primes, y);
    })?;
    let (mean, stderr, max_ratio) = summarize(&rows, 1, 0);
    Ok(NormEstimate {
        q: 2.0,
        mean,
        stderr,
        samples,
        seed,
        n,
        y: Some(y),
        max_ratio,
    })
}

/// `∏_{p≤Y} |1 − X(p)/√p|`, computed through its logarithm.
#[inline]
fn mollifier_norm_sqr(phases: &[Complex64], primes: &[u64], y: u64) -> f64 {
    let mut log = 0.0;
    for (z, &p) in phases.iter().zip(primes) {
        if p > y {
            break;
        }
        log += log_abs_one_minus(*z, p);
    }
    log.exp()
}

/// `log |1 − z/√p|` for unit `z`.
#[inline]
fn log_abs_one_minus(z: Complex64, p: u64) -> f64 {
    let r = 1.0 / (p as f64).sqrt();
    // |1 − r z|² = 1 − 2 r Re z + r²
    0.5 * (r * (r - 2.0 * z.re)).ln_1p()
}

/// `E ∏_{p≤Y} |1 − X(p)/√p|^{−β}`.
pub fn estimate_j(y: u64, beta: f64, samples: usize, seed: u64, table: &PrimeTable) -> Result<NormEstimate> {
    if !beta.is_finite() || !(0.0..=4.0).contains(&beta) {
        return Err(Error::InvalidArgument(format!(
            "β must lie in [0, 4], got {beta}"
        )));
    }
    let rows = collect_samples(1, y, samples, seed, table, 1, |_, phases, primes, row| {
        if beta == 0.0 {
            row[0] = 1.0;
            return;
        }
        let mut log = 0.0;
        for (z, &p) in phases.iter().zip(primes) {
            if p > y {
                break;
            }
            log += log_abs_one_minus(*z, p);
        }
        row[0] = (-beta * log).exp();
    })?;
    let (mean, stderr, max_ratio) = summarize(&rows, 1, 0);
    Ok(NormEstimate {
        q: beta,
        mean,
        stderr,
        samples,
        seed,
        n: 1,
        y: Some(y),
        max_ratio,
    })
}

/// The three sample means in `E|f| <= sqrt(E|f M|² · E|M|^{-2})`, with
/// `M` the square-root mollifier, all from one set of characters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CauchySchwarzCheck {
    pub n: u64,
    pub y: u64,
    pub mean_abs_f: f64,
    pub mean_i: f64,
    pub mean_j: f64,
    pub rhs: f64,
}

impl CauchySchwarzCheck {
    pub fn holds(&self) -> bool {
        self.mean_abs_f <= self.rhs
    }
}

pub fn cauchy_schwarz_check(
    n: u64,
    y: u64,
    samples: usize,
    seed: u64,
    table: &PrimeTable,
) -> Result<CauchySchwarzCheck> {
    let f = estimate_norm_q(n, &[1.0], samples, seed, table)?[0];
    let i = estimate_i(n, y, samples, seed, table)?;
    let j = estimate_j(y, 1.0, samples, seed, table)?;
    Ok(CauchySchwarzCheck {
        n,
        y,
        mean_abs_f: f.mean,
        mean_i: i.mean,
        mean_j: j.mean,
        rhs: (i.mean * j.mean).sqrt(),
    })
}
