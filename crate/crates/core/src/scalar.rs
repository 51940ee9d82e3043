//! Scalar traits shared by the matrix, polynomial and permanent code.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

/// Commutative semiring: what a permanent or a polynomial product needs.
pub trait Semiring: Clone + Zero + One + Add<Output = Self> + Mul<Output = Self> {}

impl<T> Semiring for T where T: Clone + Zero + One + Add<Output = Self> + Mul<Output = Self> {}

/// Commutative ring: adds subtraction for inclusion-exclusion and for
/// polynomial shifts with negative offsets.
pub trait Ring: Semiring + Sub<Output = Self> + Neg<Output = Self> {}

impl<T> Ring for T where T: Semiring + Sub<Output = Self> + Neg<Output = Self> {}

/// Exact `base^exp` by binary powering over any semiring.
pub fn pow<T: Semiring>(base: &T, mut exp: u64) -> T {
    let mut acc = T::one();
    let mut sq = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * sq.clone();
        }
        exp >>= 1;
        if exp > 0 {
            sq = sq.clone() * sq;
        }
    }
    acc
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Row `n` of Pascal's triangle, `C(n, 0) ..= C(n, n)`.
pub fn binomial_row(n: u64) -> Vec<BigUint> {
    let mut row = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(BigUint::one());
        for w in row.windows(2) {
            next.push(&w[0] + &w[1]);
        }
        next.push(BigUint::one());
        row = next;
    }
    row
}

/// `C(n, k)` by the multiplicative formula; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Natural logarithm of a positive big integer without overflowing `f64`.
///
/// The top 64 bits become the mantissa; the discarded low bits contribute
/// `shift * ln 2`.
pub fn ln_biguint(value: &BigUint) -> f64 {
    assert!(!value.is_zero(), "ln of zero");
    let bits = value.bits();
    if bits <= 64 {
        return value.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (value >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural logarithm of a positive signed big integer.
pub fn ln_bigint(value: &BigInt) -> f64 {
    let mag = value.magnitude();
    assert!(value > &BigInt::zero(), "ln of non-positive value");
    ln_biguint(mag)
}
