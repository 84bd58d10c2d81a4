//! Compensated summation and fixed-order block reduction.
//!
//! Parallel reductions in this crate split their index range into blocks of a
//! fixed size, sum each block sequentially with [`Neumaier`], and then combine
//! the block partials in block-index order. The result therefore depends only
//! on the block size, never on how rayon schedules the blocks.

use num_complex::Complex64;
use rayon::prelude::*;

/// Neumaier (improved Kahan–Babuška) running sum.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub const fn new() -> Self {
        Self { sum: 0.0, comp: 0.0 }
    }

    #[inline]
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    /// Merge another partial sum, keeping both compensation terms.
    #[inline]
    pub fn merge(&mut self, other: &Neumaier) {
        self.add(other.sum);
        self.add(other.comp);
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for Neumaier {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Neumaier::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

/// Compensated sum of a sequence, in iteration order.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<Neumaier>().value()
}

/// Complex counterpart of [`Neumaier`]; real and imaginary parts are
/// compensated independently.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ComplexNeumaier {
    re: Neumaier,
    im: Neumaier,
}

impl ComplexNeumaier {
    pub const fn new() -> Self {
        Self {
            re: Neumaier::new(),
            im: Neumaier::new(),
        }
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// Block length used by every partition-independent reduction.
pub const REDUCTION_BLOCK: usize = 256;

/// Sums `f(i)` for `i` in `0..n` in parallel with a result that is
/// bit-identical for any thread count.
///
/// Each block of [`REDUCTION_BLOCK`] consecutive indices is accumulated
/// sequentially; block partials are merged in index order.
pub fn block_sum<F>(n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    block_reduce(n, REDUCTION_BLOCK, |range, acc| {
        for i in range {
            acc.add(f(i));
        }
    })
    .value()
}

/// General form of [`block_sum`]: `fill` adds the contributions of one block
/// of indices into a fresh accumulator.
pub fn block_reduce<F>(n: usize, block: usize, fill: F) -> Neumaier
where
    F: Fn(std::ops::Range<usize>, &mut Neumaier) + Sync,
{
    assert!(block > 0, "block length must be positive");
    let blocks = n.div_ceil(block);
    let partials: Vec<Neumaier> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut acc = Neumaier::new();
            fill(b * block..((b + 1) * block).min(n), &mut acc);
            acc
        })
        .collect();
    let mut total = Neumaier::new();
    for p in &partials {
        total.merge(p);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_terms() {
        let vals = [1.0, 1e100, 1.0, -1e100];
        assert_eq!(compensated_sum(vals), 2.0);
        let naive: f64 = vals.iter().sum();
        assert_eq!(naive, 0.0);
    }

    #[test]
    fn block_sum_matches_sequential() {
        let f = |i: usize| 1.0 / (i as f64 + 1.0);
        let seq = compensated_sum((0..10_000).map(f));
        let par = block_sum(10_000, f);
        assert!((seq - par).abs() < 1e-14);
    }

    #[test]
    fn block_sum_is_thread_count_independent() {
        let f = |i: usize| ((i as f64) * 0.37).sin() / (1.0 + i as f64);
        let run = |threads: usize| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| block_sum(100_003, f))
        };
        let one = run(1);
        assert_eq!(one.to_bits(), run(3).to_bits());
        assert_eq!(one.to_bits(), run(8).to_bits());
    }

    #[test]
    fn empty_range_is_zero() {
        assert_eq!(block_sum(0, |_| 1.0), 0.0);
    }
}
