//! Lower bounds on `V(d, n)` and the volume-driven bounds on code size.
//!
//! Everything factorial-sized is kept as a natural logarithm. The factor
//! `e^{-n}` never exists as a float: it is the `-1` inside
//! `n (ln(2d+1) - 1)`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{Float, FloatConst, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::omega::omega_factor;
use crate::permanent::ball_volume;
use crate::scalar::{factorial, ln_biguint};
use crate::BigCount;

fn cast<F: Float>(v: f64) -> F {
    F::from(v).expect("float cast")
}

fn check(d: u32, n: u64) -> Result<()> {
    if d == 0 || n == 0 {
        Err(Error::domain(format!(
            "bounds need d >= 1 and n >= 1 (d = {d}, n = {n})"
        )))
    } else {
        Ok(())
    }
}

/// `n (ln(2d + 1) - 1)`, the common exponential part of both bounds.
fn growth<F: Float>(d: u32, n: u64) -> F {
    let n = cast::<F>(n as f64);
    let width = cast::<F>(2.0 * f64::from(d) + 1.0);
    n * (width.ln() - F::one())
}

/// `ln( sqrt(2 pi n) / 2^{2d} * ((2d+1)/e)^n )`.
pub fn lower_bound_old<F: Float + FloatConst>(d: u32, n: u64) -> Result<F> {
    check(d, n)?;
    let two = cast::<F>(2.0);
    let half = cast::<F>(0.5);
    let n_f = cast::<F>(n as f64);
    let d_f = cast::<F>(f64::from(d));
    Ok(half * (two * F::PI() * n_f).ln() - two * d_f * F::LN_2() + growth::<F>(d, n))
}

/// `ln( sqrt(2 pi (n + 2d)) / omega_d^2 * ((2d+1)/e)^n )`.
pub fn lower_bound_new<F: Float + FloatConst>(d: u32, n: u64) -> Result<F> {
    check(d, n)?;
    let two = cast::<F>(2.0);
    let half = cast::<F>(0.5);
    let shifted = cast::<F>(n as f64 + 2.0 * f64::from(d));
    let ln_omega = omega_factor::<F>(d)?;
    Ok(half * (two * F::PI() * shifted).ln() - two * ln_omega + growth::<F>(d, n))
}

/// `ln omega_d - d ln 2`: positive when `omega_d > 2^d`, i.e. when the
/// `n`-independent part of the new bound is smaller than the old one's.
pub fn omega_excess<F: Float + FloatConst>(d: u32) -> Result<F> {
    Ok(omega_factor::<F>(d)? - cast::<F>(f64::from(d)) * F::LN_2())
}

/// `ln_new - ln_old = 1/2 ln((n+2d)/n) + 2d ln 2 - 2 ln omega_d`, which is
/// strictly decreasing in `n`.
pub fn bound_gap<F: Float + FloatConst>(d: u32, n: u64) -> Result<F> {
    check(d, n)?;
    let half = cast::<F>(0.5);
    let ratio = cast::<F>((n as f64 + 2.0 * f64::from(d)) / n as f64);
    Ok(half * ratio.ln() - cast::<F>(2.0) * omega_excess::<F>(d)?)
}

/// Smallest `n <= n_max` where the new bound is strictly larger than the
/// old one.
///
/// The gap shrinks as `n` grows, so the answer is either `1` or nothing.
pub fn bound_crossover(d: u32, n_max: u64) -> Result<Option<u64>> {
    if n_max == 0 {
        return Ok(None);
    }
    Ok((bound_gap::<f64>(d, 1)? > 0.0).then_some(1))
}

/// Where the new bound beats the old one, as a range of `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "last_n")]
pub enum Dominance {
    /// Not even at `n = 1`.
    Never,
    /// For `1 <= n <= last_n` and no larger `n`.
    Through(u64),
    /// For every `n`.
    Always,
}

/// Exact extent of the range of `n` where the new bound is the larger one.
pub fn dominance(d: u32) -> Result<Dominance> {
    let excess = omega_excess::<f64>(d)?;
    if excess <= 0.0 {
        // the constant part already favours the new bound
        return Ok(Dominance::Always);
    }
    if bound_gap::<f64>(d, 1)? <= 0.0 {
        return Ok(Dominance::Never);
    }
    // 1/2 ln(1 + 2d/n) > 2 excess  <=>  n < 2d / (e^{4 excess} - 1)
    let estimate = 2.0 * f64::from(d) / (4.0 * excess).exp_m1();
    let mut last = estimate.floor().max(1.0) as u64;
    while last > 1 && bound_gap::<f64>(d, last)? <= 0.0 {
        last -= 1;
    }
    while bound_gap::<f64>(d, last + 1)? > 0.0 {
        last += 1;
    }
    Ok(Dominance::Through(last))
}

/// Log-space evaluation of both lower bounds at one `(d, n)`.
///
/// With `exact`, `V(d, n)` is also computed and gives `ln_exact` plus the
/// two code-size bounds that use this very volume: the GV floor
/// `ceil(n!/V(d,n))` (codes of minimum distance `d + 1`) and the packing
/// ceiling `floor(n!/V(d,n))` (minimum distance `2d + 1`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport<F> {
    pub d: u32,
    pub n: u64,
    pub ln_old: F,
    pub ln_new: F,
    pub ln_omega_d: F,
    pub ln_exact: Option<F>,
    #[serde(with = "crate::serde_decimal::option", default)]
    pub gv_floor: Option<BigCount>,
    #[serde(with = "crate::serde_decimal::option", default)]
    pub packing_ceiling: Option<BigCount>,
}

impl<F: Float> BoundReport<F> {
    /// Both bounds sit strictly below the exact volume (vacuously true when
    /// the volume was not computed).
    pub fn is_valid(&self) -> bool {
        self.ln_exact
            .is_none_or(|exact| exact > self.ln_old && exact > self.ln_new)
    }
}

pub fn bound_report(d: u32, n: u64, exact: bool) -> Result<BoundReport<f64>> {
    let mut report = BoundReport {
        d,
        n,
        ln_old: lower_bound_old(d, n)?,
        ln_new: lower_bound_new(d, n)?,
        ln_omega_d: omega_factor(d)?,
        ln_exact: None,
        gv_floor: None,
        packing_ceiling: None,
    };
    if exact {
        let volume = ball_volume(d as usize, n as usize)?;
        let total = factorial(n);
        let (q, r) = total.div_rem(&volume);
        report.ln_exact = Some(ln_biguint(&volume));
        report.gv_floor = Some(if r.is_zero() { q.clone() } else { &q + 1u32 });
        report.packing_ceiling = Some(q);
    }
    Ok(report)
}

fn check_code(n: u64, dist: u64) -> Result<()> {
    if dist == 0 || dist > n {
        Err(Error::domain(format!(
            "code bounds need 1 <= D <= n (n = {n}, D = {dist})"
        )))
    } else {
        Ok(())
    }
}

/// GV: any maximal code of minimum distance `D` has at least
/// `ceil(n! / V(D - 1, n))` words.
pub fn gv_lower_bound(n: u64, dist: u64) -> Result<BigCount> {
    check_code(n, dist)?;
    let volume = ball_volume((dist - 1) as usize, n as usize)?;
    Ok(factorial(n).div_ceil(&volume))
}

/// Sphere packing: a code of minimum distance `D` has at most
/// `floor(n! / V(floor((D - 1)/2), n))` words.
pub fn sphere_packing_upper_bound(n: u64, dist: u64) -> Result<BigCount> {
    check_code(n, dist)?;
    let volume = ball_volume(((dist - 1) / 2) as usize, n as usize)?;
    Ok(factorial(n) / volume)
}

/// Both code-size bounds for one `(n, D)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeBounds {
    pub n: u64,
    pub dist: u64,
    #[serde(with = "crate::serde_decimal")]
    pub gv_floor: BigUint,
    #[serde(with = "crate::serde_decimal")]
    pub packing_ceiling: BigUint,
}

pub fn code_bounds(n: u64, dist: u64) -> Result<CodeBounds> {
    Ok(CodeBounds {
        n,
        dist,
        gv_floor: gv_lower_bound(n, dist)?,
        packing_ceiling: sphere_packing_upper_bound(n, dist)?,
    })
}
