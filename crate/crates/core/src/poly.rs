//! Dense univariate polynomials over an arbitrary coefficient semiring.
//!
//! Coefficients are stored low-to-high; the canonical form never has a
//! trailing zero and the zero polynomial is the empty vector.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::{Ring, Semiring};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Zero> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs: Vec<T> = (0..k).map(|_| T::zero()).collect();
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Coefficient of `x^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> T
    where
        T: Clone,
    {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn map<U: Zero>(&self, f: impl FnMut(&T) -> U) -> Polynomial<U> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }
}

impl<T: Semiring> Polynomial<T> {
    /// The indeterminate `x`.
    pub fn x() -> Self {
        Self::monomial(T::one(), 1)
    }

    /// Horner evaluation in any semiring the coefficients embed into.
    pub fn eval<U>(&self, at: &U) -> U
    where
        U: Semiring + From<T>,
    {
        self.coeffs
            .iter()
            .rev()
            .fold(U::zero(), |acc, c| acc * at.clone() + U::from(c.clone()))
    }

    /// Substitute `x -> x + shift`.
    pub fn shift(&self, shift: &T) -> Self {
        let step = Polynomial::new(vec![shift.clone(), T::one()]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            acc * step.clone() + Self::constant(c.clone())
        })
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|c| c.clone() * k.clone())
    }
}

impl<T: Zero> Zero for Polynomial<T>
where
    Polynomial<T>: Add<Output = Self>,
{
    fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Semiring> One for Polynomial<T> {
    fn one() -> Self {
        Self::constant(T::one())
    }
}

impl<T: Semiring> Add for Polynomial<T> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let (mut long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self.coeffs, rhs.coeffs)
        } else {
            (rhs.coeffs, self.coeffs)
        };
        for (slot, c) in long.iter_mut().zip(short) {
            *slot = slot.clone() + c;
        }
        Self::new(long)
    }
}

impl<T: Semiring> Mul for Polynomial<T> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<T: Semiring> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn mul(self, rhs: Self) -> Polynomial<T> {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

impl<T: Ring> Neg for Polynomial<T> {
    type Output = Self;

    fn neg(self) -> Self {
        Polynomial::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl<T: Ring> Sub for Polynomial<T> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T> fmt::Display for Polynomial<T>
where
    T: Zero + One + PartialEq + fmt::Display,
{
    /// Highest power first, e.g. `x^3 + 21x^2 + 36x + 6`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let text = c.to_string();
            let (negative, magnitude) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            let unit = magnitude == "1";
            match k {
                0 => f.write_str(&magnitude)?,
                _ if !unit => write!(f, "{magnitude}")?,
                _ => {}
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Polynomial<i64> {
        Polynomial::new(c.to_vec())
    }

    #[test]
    fn canonical_form_drops_trailing_zeros() {
        assert_eq!(p(&[1, 2, 0, 0]).coeffs(), &[1, 2]);
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[]).degree(), None);
        assert_eq!(p(&[3, 0, 5]).degree(), Some(2));
    }

    #[test]
    fn arithmetic() {
        let a = p(&[-1, 1]); // x - 1
        assert_eq!((a.clone() * a.clone()).coeffs(), &[1, -2, 1]);
        assert_eq!((a.clone() + p(&[1, -1])).coeffs(), &[] as &[i64]);
        assert_eq!((p(&[1, 2, 3]) - p(&[1, 2, 3])).degree(), None);
        assert_eq!(Polynomial::<i64>::x().coeffs(), &[0, 1]);
    }

    #[test]
    fn shift_and_eval() {
        // x^2 + 6x + 2 at x -> x + 1 is x^2 + 8x + 9
        let q = p(&[2, 6, 1]).shift(&1);
        assert_eq!(q.coeffs(), &[9, 8, 1]);
        assert_eq!(p(&[2, 6, 1]).eval(&2i64), 18);
    }

    #[test]
    fn rational_evaluation_is_exact() {
        let q: Polynomial<BigInt> = Polynomial::new(vec![2.into(), 6.into(), 1.into()]);
        let half = BigRational::new(1.into(), 2.into());
        // 1/4 + 3 + 2 = 21/4
        assert_eq!(q.eval(&half), BigRational::new(21.into(), 4.into()));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[6, 36, 21, 1]).to_string(), "x^3 + 21x^2 + 36x + 6");
        assert_eq!(p(&[-1, 1]).to_string(), "x - 1");
        assert_eq!(p(&[0, -2]).to_string(), "-2x");
        assert_eq!(p(&[]).to_string(), "0");
    }

    proptest! {
        #[test]
        fn shift_round_trips(c in prop::collection::vec(-50i64..50, 0..6), s in -4i64..4) {
            let q = p(&c);
            prop_assert_eq!(q.shift(&s).shift(&-s), q.clone());
            for x in -3i64..=3 {
                prop_assert_eq!(q.shift(&s).eval(&x), q.eval(&(x + s)));
            }
        }

        #[test]
        fn product_evaluates_pointwise(
            a in prop::collection::vec(-20i64..20, 0..5),
            b in prop::collection::vec(-20i64..20, 0..5),
            x in -3i64..3,
        ) {
            let (a, b) = (p(&a), p(&b));
            prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
            prop_assert_eq!((a.clone() + b.clone()).eval(&x), a.eval(&x) + b.eval(&x));
        }
    }
}
