//! Numerical toolkit for the mean values of `f(s) = Σ_{n≤N} n^{-1/2-s}` on
//! the imaginary axis and of its mollified and Euler-product relatives.
//!
//! * [`arith`]: sieve, factorization, smooth numbers, `d_α(n)`.
//! * [`products`]: Euler products with certified truncation bounds.
//! * [`meanvalues`]: exact diagonal mean values and the `I₂` quadrature.
//! * [`montecarlo`]: `L^q` norms as expectations over Steinhaus characters.
//! * [`bounds`]: exponents, envelopes and the Hölder bound assembly.

pub mod arith;
pub mod bounds;
pub mod error;
pub mod meanvalues;
pub mod montecarlo;
pub mod products;
pub mod quadrature;
pub mod rng;
pub mod summation;

pub use arith::{
    build_prime_table, divisor_coefficient, enumerate_smooth, factorize, harmonic_sum,
    DivisorOrder, Factorization, PrimeTable,
};
pub use bounds::{BoundParams, BoundReport, BoundRow, Suite, SuiteGrid};
pub use error::{Error, Result};
pub use meanvalues::{DiagonalSumResult, QuadratureSpec};
pub use montecarlo::{CharacterSample, NormEstimate};
pub use num_complex::Complex64;
pub use products::{ComplexPoint, EulerProductValue, MathConstants, EULER_GAMMA};
