//! `Omega_d(x)`: the rectangular permanent of `A_{d,x}` in closed form.
//!
//! ```text
//! Omega_d(x)     = sum_{m=0}^{d} C(d,m) (m+1)^d (x-1)^(d-m)
//! Omega_d(x + 1) = sum_{m=0}^{d} C(d,m) (d-m+1)^d x^m
//! ```
//!
//! `Omega_d = Omega_d(2)` enters the refined volume bound through
//! `omega_d = Omega_d e^d / (2d+1)^d`, which is handled in log space.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Float, One};

use crate::error::{Error, Result};
use crate::scalar::{binomial_row, ln_biguint, pow};
use crate::{BigCount, IntPolynomial, Polynomial};

fn check_d(d: u32) -> Result<()> {
    if d == 0 {
        Err(Error::domain("Omega_d is defined for d >= 1"))
    } else {
        Ok(())
    }
}

/// Expanded closed form of `Omega_d(x)`, degree `d`, leading coefficient 1.
pub fn omega_closed_form(d: u32) -> Result<IntPolynomial> {
    check_d(d)?;
    let binom = binomial_row(u64::from(d));
    let x_minus_one = Polynomial::new(vec![BigInt::from(-1), BigInt::one()]);
    let mut power = IntPolynomial::one(); // (x-1)^(d-m), built from m = d down
    let mut sum = IntPolynomial::new(Vec::new());
    for m in (0..=d).rev() {
        let weight =
            BigInt::from(binom[m as usize].clone()) * pow(&BigInt::from(m + 1), u64::from(d));
        sum = sum + power.scale(&weight);
        power = &power * &x_minus_one;
    }
    Ok(sum)
}

/// `Omega_d(x + 1)` as `sum C(d,m) (d-m+1)^d x^m`, built directly from its
/// coefficients (not by shifting the closed form).
pub fn omega_shifted_form(d: u32) -> Result<IntPolynomial> {
    check_d(d)?;
    let binom = binomial_row(u64::from(d));
    Ok(Polynomial::new(
        (0..=d)
            .map(|m| {
                BigInt::from(binom[m as usize].clone())
                    * pow(&BigInt::from(d - m + 1), u64::from(d))
            })
            .collect(),
    ))
}

/// Exact `Omega_d(x0)` at a rational point.
pub fn omega_at(d: u32, x0: &BigRational) -> Result<BigRational> {
    Ok(omega_closed_form(d)?.eval(x0))
}

/// Exact `Omega_d(x0)` at an integer point.
pub fn omega_at_int(d: u32, x0: &BigInt) -> Result<BigInt> {
    Ok(omega_closed_form(d)?.eval(x0))
}

/// `Omega_d = Omega_d(2) = sum C(d,m) (m+1)^d`.
pub fn omega_value(d: u32) -> Result<BigCount> {
    check_d(d)?;
    let binom = binomial_row(u64::from(d));
    Ok((0..=d)
        .map(|m| &binom[m as usize] * pow(&BigUint::from(m + 1), u64::from(d)))
        .sum())
}

/// `ln omega_d = ln Omega_d + d - d ln(2d + 1)`.
///
/// `ln Omega_d` is taken from the exact integer, so this stays finite for `d`
/// far beyond the range where `Omega_d` itself fits in a float.
pub fn omega_factor<F: Float>(d: u32) -> Result<F> {
    let ln_big = ln_biguint(&omega_value(d)?);
    let d_f = f64::from(d);
    let ln = ln_big + d_f - d_f * (2.0 * d_f + 1.0).ln();
    F::from(ln).ok_or_else(|| Error::domain("ln omega_d not representable"))
}

/// `omega_d` itself; `None` once it overflows `F`.
pub fn omega_factor_value<F: Float>(d: u32) -> Result<Option<F>> {
    let v = omega_factor::<F>(d)?.exp();
    Ok(v.is_finite().then_some(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permanent::permanent_enumerate;
    use crate::structmat::build_omega_matrix;

    fn ints(c: &[i64]) -> IntPolynomial {
        Polynomial::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(omega_closed_form(1).unwrap(), ints(&[1, 1]));
        assert_eq!(omega_closed_form(2).unwrap(), ints(&[2, 6, 1]));
        assert_eq!(omega_closed_form(3).unwrap(), ints(&[6, 36, 21, 1]));
        assert!(omega_closed_form(0).is_err());
    }

    #[test]
    fn shifted_form_examples() {
        assert_eq!(omega_shifted_form(1).unwrap(), ints(&[2, 1]));
        assert_eq!(omega_shifted_form(2).unwrap(), ints(&[9, 8, 1]));
        assert_eq!(
            omega_shifted_form(2).unwrap().eval(&BigInt::one()),
            BigInt::from(18)
        );
    }

    #[test]
    fn listed_values_at_two() {
        let listed: [u64; 9] = [
            3,
            18,
            170,
            2200,
            36232,
            725200,
            17095248,
            463936896,
            14246942336,
        ];
        let two = BigInt::from(2);
        for (d, &v) in (1..=9).zip(&listed) {
            assert_eq!(omega_at_int(d, &two).unwrap(), BigInt::from(v), "d={d}");
            assert_eq!(omega_value(d).unwrap(), BigUint::from(v));
        }
    }

    #[test]
    fn rational_evaluation() {
        // Omega_2(1/2) = 1/4 + 3 + 2
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(
            omega_at(2, &half).unwrap(),
            BigRational::new(21.into(), 4.into())
        );
        assert_eq!(
            omega_at(4, &BigRational::from_integer(2.into())).unwrap(),
            BigRational::from_integer(2200.into())
        );
    }

    #[test]
    fn structural_properties() {
        for d in 1..=20 {
            let closed = omega_closed_form(d).unwrap();
            let shifted = omega_shifted_form(d).unwrap();
            assert_eq!(closed.degree(), Some(d as usize));
            assert!(closed.leading().unwrap().is_one());
            assert_eq!(closed.shift(&BigInt::one()), shifted, "d={d}");
            assert!(shifted.coeffs().iter().all(|c| c > &BigInt::from(0)));
            assert_eq!(shifted.coeff(0), pow(&BigInt::from(d + 1), u64::from(d)));
            assert!(shifted.leading().unwrap().is_one());
            assert_eq!(
                closed.eval(&BigInt::one()),
                pow(&BigInt::from(d + 1), u64::from(d))
            );
        }
    }

    #[test]
    fn closed_form_matches_permanent_small_d() {
        for d in 1..=6 {
            let per =
                permanent_enumerate(&build_omega_matrix(d as usize).unwrap(), 10_000_000).unwrap();
            assert_eq!(per, omega_closed_form(d).unwrap(), "d={d}");
        }
    }

    #[test]
    fn omega_factor_values() {
        let e = std::f64::consts::E;
        assert!((omega_factor_value::<f64>(1).unwrap().unwrap() - e).abs() < 1e-12);
        let w2 = 18.0 * e * e / 25.0;
        assert!((omega_factor_value::<f64>(2).unwrap().unwrap() - w2).abs() < 1e-12);
        assert!((omega_factor_value::<f64>(2).unwrap().unwrap() - 5.3201).abs() < 1e-4);
        let ln9 = 14246942336f64.ln() + 9.0 - 9.0 * 19f64.ln();
        assert!((omega_factor::<f64>(9).unwrap() - ln9).abs() < 1e-12);
        assert!((omega_factor::<f64>(9).unwrap() - 5.88).abs() < 0.01);
        // single precision agrees loosely
        assert!(
            (omega_factor::<f32>(3).unwrap() - omega_factor::<f64>(3).unwrap() as f32).abs() < 1e-6
        );
        // large d stays finite in log space
        assert!(omega_factor::<f64>(200).unwrap().is_finite());
    }
}
