//! Exact combinatorics for permutation codes under the Chebyshev metric.
//!
//! The crate computes ball volumes `V(d, n)` (the number of permutations of
//! `1..=n` that move no element more than `d` places), the polynomial
//! `Omega_d(x)` both as a rectangular permanent and in closed form, and the
//! volume-driven lower and upper bounds on permutation-code sizes.
//!
//! The numerical core is generic over the scalar type: matrices and
//! polynomials over any [`Semiring`], inclusion-exclusion over any [`Ring`],
//! and log-space bound evaluation over any [`num_traits::Float`]. The aliases
//! below fix the concrete types the rest of the crate and the CLI work with.

pub mod bounds;
pub mod codes;
pub mod error;
pub mod identities;
pub mod omega;
pub mod permanent;
pub mod poly;
pub mod scalar;
pub mod serde_decimal;
pub mod structmat;

pub use error::{Error, Result};
pub use poly::Polynomial;
pub use scalar::{Ring, Semiring};
pub use structmat::Matrix;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

/// Arbitrary-precision non-negative integer: volumes, permanents, `Omega_d`.
pub type BigCount = BigUint;

/// Dense integer polynomial in one indeterminate, exact coefficients.
pub type IntPolynomial = Polynomial<BigInt>;

/// Polynomial with exact rational coefficients.
pub type RatPolynomial = Polynomial<BigRational>;

/// Matrix of small non-negative machine integers (entries of the band,
/// doubled-band and `A_{d,2}` families are all in `{0, 1, 2}`).
pub type IntMatrix = Matrix<u32>;

/// Matrix whose entries are integer polynomials in `x`.
pub type PolyMatrix = Matrix<IntPolynomial>;

/// Log-space bound report in double precision.
pub type BoundReport = bounds::BoundReport<f64>;

/// Default cap on the number of non-zero terms a brute-force enumeration may
/// visit before giving up.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 100_000_000;
