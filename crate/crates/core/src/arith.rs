//! Sieving, factorization, smooth numbers and generalized divisor
//! coefficients.

use crate::error::{Error, Result};
use crate::summation::Neumaier;

/// Smallest-prime-factor sieve up to a fixed limit.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
    // spf[n] for n in 0..=limit; entries 0 and 1 are unused.
    spf: Vec<u32>,
}

impl PrimeTable {
    /// Linear sieve over `2..=limit`.
    pub fn new(limit: u64) -> Result<Self> {
        if limit < 2 {
            return Err(Error::InvalidArgument(format!(
                "sieve limit must be at least 2, got {limit}"
            )));
        }
        if limit > u32::MAX as u64 {
            return Err(Error::InvalidArgument(format!(
                "sieve limit {limit} exceeds {}",
                u32::MAX
            )));
        }
        let n = limit as usize;
        let mut spf = vec![0u32; n + 1];
        let mut primes: Vec<u64> = Vec::new();
        for i in 2..=n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u64);
            }
            let si = spf[i] as u64;
            for &p in &primes {
                if p > si || p as usize * i > n {
                    break;
                }
                spf[p as usize * i] = p as u32;
            }
        }
        Ok(Self { limit, primes, spf })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// All primes up to the limit, ascending.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Primes `p <= bound` (bound may exceed the limit; the slice is then
    /// simply every prime in the table).
    pub fn primes_up_to(&self, bound: u64) -> &[u64] {
        let end = self.primes.partition_point(|&p| p <= bound);
        &self.primes[..end]
    }

    /// Number of primes `<= bound`, clamped to the table.
    pub fn prime_count(&self, bound: u64) -> usize {
        self.primes_up_to(bound).len()
    }

    /// Smallest prime factor of `n` for `2 <= n <= limit`.
    pub fn spf(&self, n: u64) -> Option<u64> {
        (n >= 2 && n <= self.limit).then(|| self.spf[n as usize] as u64)
    }

    pub fn is_prime(&self, n: u64) -> bool {
        self.spf(n) == Some(n)
    }

    pub(crate) fn check_bound(&self, what: &'static str, value: u64) -> Result<()> {
        if value > self.limit {
            Err(Error::OutOfRange {
                what,
                value,
                limit: self.limit,
            })
        } else {
            Ok(())
        }
    }

    /// Factorization of `1 <= n <= limit` by repeated smallest-prime-factor
    /// division.
    pub fn factorize(&self, n: u64) -> Result<Factorization> {
        if n == 0 {
            return Err(Error::InvalidArgument("cannot factor 0".into()));
        }
        self.check_bound("n", n)?;
        let mut out = Vec::new();
        let mut m = n;
        while m > 1 {
            let p = self.spf[m as usize] as u64;
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        Ok(Factorization(out))
    }

    /// Largest prime factor of `n` (1 for `n = 1`).
    pub fn largest_prime_factor(&self, n: u64) -> Result<u64> {
        Ok(self.factorize(n)?.0.last().map_or(1, |&(p, _)| p))
    }
}

/// Free-function form of [`PrimeTable::new`].
pub fn build_prime_table(limit: u64) -> Result<PrimeTable> {
    PrimeTable::new(limit)
}

/// Free-function form of [`PrimeTable::factorize`].
pub fn factorize(n: u64, table: &PrimeTable) -> Result<Factorization> {
    table.factorize(n)
}

/// `(prime, exponent)` pairs with strictly increasing primes and positive
/// exponents. Empty for `n = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization(pub Vec<(u64, u32)>);

impl Factorization {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.0
    }

    /// Multiplies the factorization back out.
    pub fn value(&self) -> u64 {
        self.0.iter().map(|&(p, e)| p.pow(e)).product()
    }

    /// Exponent of `p` (0 if absent).
    pub fn exponent_of(&self, p: u64) -> u32 {
        self.0
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    pub fn largest_prime(&self) -> Option<u64> {
        self.0.last().map(|&(p, _)| p)
    }
}

/// Order `α` of the generalized divisor function `d_α`, the Dirichlet
/// coefficients of `ζ(s)^α`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct DivisorOrder(f64);

impl DivisorOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_finite() {
            Ok(Self(alpha))
        } else {
            Err(Error::InvalidArgument(format!(
                "divisor order must be finite, got {alpha}"
            )))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    /// `d_α(p^m) = (α)(α+1)…(α+m−1) / m!`, independent of `p`.
    pub fn prime_power(self, m: u32) -> f64 {
        prime_power_coefficient(self.0, m)
    }

    /// The first `len` local coefficients `d_α(p^0), …, d_α(p^{len-1})`.
    pub fn local_coefficients(self, len: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(len);
        let mut c = 1.0;
        for m in 0..len {
            out.push(c);
            c *= (self.0 + m as f64) / (m as f64 + 1.0);
        }
        out
    }
}

/// Binomial-series coefficient of `x^m` in `(1 − x)^{−α}`.
pub fn prime_power_coefficient(alpha: f64, m: u32) -> f64 {
    let mut c = 1.0;
    for j in 0..m {
        c *= (alpha + j as f64) / (j as f64 + 1.0);
    }
    c
}

/// `d_α(n)` from the factorization of `n`.
pub fn divisor_coefficient(alpha: DivisorOrder, f: &Factorization) -> f64 {
    f.0.iter().map(|&(_, m)| alpha.prime_power(m)).product()
}

/// Y-smooth integers in `[1, x]`, ascending.
///
/// Generated as products of prime powers rather than by filtering a sieve,
/// so `x` is not bounded by any table; only primes up to `min(y, x)` are
/// sieved.
pub fn enumerate_smooth(y: u64, x: u64) -> Vec<u64> {
    if x == 0 {
        return Vec::new();
    }
    let bound = y.min(x);
    let primes = if bound >= 2 {
        PrimeTable::new(bound)
            .map(|t| t.primes)
            .unwrap_or_default()
    } else {
        Vec::new()
    };
    let mut out = Vec::new();
    extend_smooth(&primes, 1, x, &mut out);
    out.sort_unstable();
    out
}

fn extend_smooth(primes: &[u64], base: u64, x: u64, out: &mut Vec<u64>) {
    out.push(base);
    for (i, &p) in primes.iter().enumerate() {
        let Some(mut m) = base.checked_mul(p) else { break };
        if m > x {
            break;
        }
        // Later primes only; powers of p are generated by recursion on i.
        loop {
            extend_smooth(&primes[i + 1..], m, x, out);
            match m.checked_mul(p) {
                Some(next) if next <= x => m = next,
                _ => break,
            }
        }
    }
}

/// `Σ_{n≤N} 1/n`, accumulated from the smallest term upward.
pub fn harmonic_sum(n: u64) -> f64 {
    let mut acc = Neumaier::new();
    for k in (1..=n).rev() {
        acc.add(1.0 / k as f64);
    }
    acc.value()
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
