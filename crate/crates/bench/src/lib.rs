//! Shared fixtures for the criterion benches.

use pmlab_core::PrimeTable;

/// Sieve large enough for every bench input.
pub fn bench_table() -> PrimeTable {
    PrimeTable::new(100_000).expect("valid limit")
}
