//! Exact numerical checks of the summation identities behind the closed form
//! of `Omega_d(x)`.
//!
//! Every check returns both sides so a failure can be inspected, never just a
//! boolean.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::omega::{omega_closed_form, omega_shifted_form};
use crate::permanent::permanent_enumerate;
use crate::scalar::{binomial, pow};
use crate::structmat::build_omega_matrix;
use crate::{BigCount, IntPolynomial};

/// `Omega_1 ..= Omega_9` as tabulated in OEIS A074932.
pub const KNOWN_OMEGA_VALUES: [u64; 9] = [
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

/// Outcome of one exact identity check. Scalar identities carry one value
/// per side; polynomial identities carry coefficient lists (low to high).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub name: String,
    pub parameters: BTreeMap<String, i64>,
    #[serde(with = "crate::serde_decimal::vec")]
    pub lhs: Vec<BigInt>,
    #[serde(with = "crate::serde_decimal::vec")]
    pub rhs: Vec<BigInt>,
    pub holds: bool,
}

impl IdentityReport {
    pub fn new(name: &str, parameters: &[(&str, i64)], lhs: Vec<BigInt>, rhs: Vec<BigInt>) -> Self {
        let holds = lhs == rhs;
        IdentityReport {
            name: name.to_string(),
            parameters: parameters
                .iter()
                .map(|&(k, v)| (k.to_string(), v))
                .collect(),
            lhs,
            rhs,
            holds,
        }
    }

    fn scalar(name: &str, parameters: &[(&str, i64)], lhs: BigUint, rhs: BigUint) -> Self {
        Self::new(name, parameters, vec![lhs.into()], vec![rhs.into()])
    }

    fn polynomial(
        name: &str,
        parameters: &[(&str, i64)],
        lhs: &IntPolynomial,
        rhs: &IntPolynomial,
    ) -> Self {
        Self::new(
            name,
            parameters,
            lhs.coeffs().to_vec(),
            rhs.coeffs().to_vec(),
        )
    }
}

/// `sum over 1 <= k_1 <= ... <= k_m <= n of prod_{i=0}^{m} k_i (n+m-i)^(k_{i+1} - k_i)`
/// with `k_0 = 1` and `k_{m+1} = n`.
///
/// Chains are walked with the last index innermost, so the running product
/// only gains one factor `(n + 1)` each time `k_m` advances. `m = 0` is
/// accepted and gives `n^(n-1)`.
pub fn lemma_lhs(m: u32, n: u32, budget: u64) -> Result<BigCount> {
    if n == 0 {
        return Err(Error::domain("lemma sum needs n >= 1"));
    }
    let chains = binomial(u64::from(n + m - 1), u64::from(m));
    if chains > BigUint::from(budget) {
        return Err(Error::budget(format!("lemma sum m={m} n={n}"), budget));
    }
    let (m, n) = (m as usize, n as usize);
    // powers[i][e] = (n + m - i)^e
    let powers: Vec<Vec<BigUint>> = (0..=m)
        .map(|i| {
            let base = BigUint::from(n + m - i);
            let mut row = Vec::with_capacity(n);
            let mut acc = BigUint::one();
            for _ in 0..n {
                row.push(acc.clone());
                acc *= &base;
            }
            row
        })
        .collect();

    // position i holds k_i; the caller fixes k_0 = 1
    fn walk(
        i: usize,
        prev: usize,
        prefix: &BigUint,
        m: usize,
        n: usize,
        powers: &[Vec<BigUint>],
    ) -> BigUint {
        // prefix covers factors 0..i-1, prev = k_{i-1}
        if i == m + 1 {
            // closing factor k_m n^(n - k_m)
            return prefix * prev * &powers[m][n - prev];
        }
        let mut sum = BigUint::zero();
        let mut step = prefix * prev; // k_{i-1} (n+m-(i-1))^(k - prev)
        for k in prev..=n {
            sum += walk(i + 1, k, &step, m, n, powers);
            step *= n + m - (i - 1);
        }
        sum
    }

    if m == 0 {
        return Ok(powers[0][n - 1].clone());
    }
    // prefix before k_1 is empty; k_0 = 1 contributes its factor inside walk
    Ok(walk(1, 1, &BigUint::one(), m, n, &powers))
}

/// `C(n+m-1, m) n^(n+m-1)`.
pub fn lemma_rhs(m: u32, n: u32) -> Result<BigCount> {
    if n == 0 {
        return Err(Error::domain("lemma sum needs n >= 1"));
    }
    let top = u64::from(n + m - 1);
    Ok(binomial(top, u64::from(m)) * pow(&BigUint::from(n), top))
}

/// One inductive step of the lemma's proof, summed from `k = c`:
///
/// ```text
/// sum_{k=c}^{n} k C(n-k+i, i) (n+i+1)^(k-c) n^(n-k+i) = C(n-c+i+1, i+1) n^(n-c+i+1)
/// ```
pub fn telescoping_check(i: u32, n: u32, c: u32) -> Result<IdentityReport> {
    if n == 0 || c == 0 || c > n {
        return Err(Error::domain(format!(
            "telescoping needs 1 <= c <= n (c = {c}, n = {n})"
        )));
    }
    let (i, n, c) = (u64::from(i), u64::from(n), u64::from(c));
    let big_n = BigUint::from(n);
    let lhs: BigUint = (c..=n)
        .map(|k| {
            BigUint::from(k)
                * binomial(n - k + i, i)
                * pow(&BigUint::from(n + i + 1), k - c)
                * pow(&big_n, n - k + i)
        })
        .sum();
    let rhs = binomial(n - c + i + 1, i + 1) * pow(&big_n, n - c + i + 1);
    Ok(IdentityReport::scalar(
        "telescoping",
        &[("i", i as i64), ("n", n as i64), ("c", c as i64)],
        lhs,
        rhs,
    ))
}

/// Coefficient of `x^m` in `Omega_d(x + 1)` by the selection-pattern count:
///
/// ```text
/// sum over 1 <= i_1 < ... < i_m <= d of
///     i_1 (i_2 - 1) ... (i_m - m + 1)
///   * (d+1)^(i_1 - 1) d^(i_2 - i_1 - 1) ... (d-m+1)^(d - i_m)
/// ```
///
/// The empty selection (`m = 0`) contributes `(d+1)^d`.
pub fn bm_count(d: u32, m: u32) -> Result<BigCount> {
    if d == 0 || m > d {
        return Err(Error::domain(format!(
            "b_m needs 0 <= m <= d, d >= 1 (d = {d}, m = {m})"
        )));
    }
    let (d, m) = (d as usize, m as usize);
    fn walk(s: usize, prev: usize, prefix: BigUint, d: usize, m: usize) -> BigUint {
        // prev = i_{s-1}; weights for the gap before i_s use base d + 2 - s
        if s > m {
            return prefix * pow(&BigUint::from(d - m + 1), (d - prev) as u64);
        }
        let base = BigUint::from(d + 2 - s);
        let mut sum = BigUint::zero();
        // leave room for the remaining m - s picks
        for i_s in prev + 1..=d - (m - s) {
            let gap = (i_s - prev - 1) as u64;
            let term = &prefix * (i_s - s + 1) * pow(&base, gap);
            sum += walk(s + 1, i_s, term, d, m);
        }
        sum
    }
    Ok(walk(1, 0, BigUint::one(), d, m))
}

/// Coefficients of `per A_{d,x+1}` by brute-force enumeration, the pattern
/// count [`bm_count`] is meant to reproduce.
pub fn shifted_permanent(d: u32, budget: u64) -> Result<IntPolynomial> {
    let one = BigInt::one();
    let shifted = build_omega_matrix(d as usize)?.map(|p| p.shift(&one));
    permanent_enumerate(&shifted, budget)
}

/// Checks the closed form of `Omega_d(x)` for one `d`:
///
/// * `omega_permanent`: enumerated permanent of `A_{d,x}` vs the closed form;
/// * `omega_shift`: the closed form shifted by one vs the shifted form;
/// * `omega_bm`: [`bm_count`] for `m = 0..=d` vs the shifted-form coefficients.
pub fn verify_conjecture(d: u32, budget: u64) -> Result<Vec<IdentityReport>> {
    let closed = omega_closed_form(d)?;
    let shifted = omega_shifted_form(d)?;
    let permanent = permanent_enumerate(&build_omega_matrix(d as usize)?, budget)?;
    let params = [("d", i64::from(d))];
    let bm: Vec<BigInt> = (0..=d)
        .map(|m| bm_count(d, m).map(BigInt::from))
        .collect::<Result<_>>()?;
    Ok(vec![
        IdentityReport::polynomial("omega_permanent", &params, &permanent, &closed),
        IdentityReport::polynomial(
            "omega_shift",
            &params,
            &closed.shift(&BigInt::one()),
            &shifted,
        ),
        IdentityReport::new("omega_bm", &params, bm, shifted.coeffs().to_vec()),
    ])
}

/// `Omega_d(2)` from the closed form vs the tabulated value, `d = 1..=9`.
pub fn check_known_value(d: u32) -> Result<IdentityReport> {
    let known = KNOWN_OMEGA_VALUES
        .get((d as usize).wrapping_sub(1))
        .ok_or_else(|| Error::domain(format!("no tabulated Omega_{d}")))?;
    let value = omega_closed_form(d)?.eval(&BigInt::from(2));
    Ok(IdentityReport::new(
        "omega_known_value",
        &[("d", i64::from(d))],
        vec![value],
        vec![BigInt::from(*known)],
    ))
}

/// Conjecture checks for `d = 1..=max_d`, plus the tabulated value for
/// every `d` that has one.
pub fn sweep_conjecture(max_d: u32, budget: u64) -> Result<Vec<IdentityReport>> {
    let per_d: Vec<Vec<IdentityReport>> = (1..=max_d)
        .into_par_iter()
        .map(|d| {
            let mut reports = verify_conjecture(d, budget)?;
            if d as usize <= KNOWN_OMEGA_VALUES.len() {
                reports.push(check_known_value(d)?);
            }
            Ok(reports)
        })
        .collect::<Result<_>>()?;
    Ok(per_d.into_iter().flatten().collect())
}

/// `lemma_lhs = lemma_rhs` on `1 <= m <= max_m`, `1 <= n <= max_n`.
pub fn sweep_lemma(max_m: u32, max_n: u32, budget: u64) -> Result<Vec<IdentityReport>> {
    let grid: Vec<(u32, u32)> = (1..=max_m)
        .flat_map(|m| (1..=max_n).map(move |n| (m, n)))
        .collect();
    grid.into_par_iter()
        .map(|(m, n)| {
            Ok(IdentityReport::scalar(
                "lemma",
                &[("m", i64::from(m)), ("n", i64::from(n))],
                lemma_lhs(m, n, budget)?,
                lemma_rhs(m, n)?,
            ))
        })
        .collect()
}

/// Telescoping step on `0 <= i <= max_i`, `1 <= c <= n <= max_n`.
pub fn sweep_telescoping(max_i: u32, max_n: u32) -> Result<Vec<IdentityReport>> {
    let mut grid = Vec::new();
    for i in 0..=max_i {
        for n in 1..=max_n {
            for c in 1..=n {
                grid.push((i, n, c));
            }
        }
    }
    grid.into_par_iter()
        .map(|(i, n, c)| telescoping_check(i, n, c))
        .collect()
}

/// For `0 <= m <= d <= max_d`: `b_m = C(d,m)(d-m+1)^d` (`bm_closed`) and
/// `b_m = lemma_lhs(m, d-m+1)` (`bm_lemma`), the change of variables
/// `k_s = i_s - s + 1`.
pub fn sweep_bm(max_d: u32, budget: u64) -> Result<Vec<IdentityReport>> {
    let grid: Vec<(u32, u32)> = (1..=max_d)
        .flat_map(|d| (0..=d).map(move |m| (d, m)))
        .collect();
    let per: Vec<[IdentityReport; 2]> = grid
        .into_par_iter()
        .map(|(d, m)| {
            let b = bm_count(d, m)?;
            let closed =
                binomial(u64::from(d), u64::from(m)) * pow(&BigUint::from(d - m + 1), u64::from(d));
            let params = [("d", i64::from(d)), ("m", i64::from(m))];
            Ok([
                IdentityReport::scalar("bm_closed", &params, b.clone(), closed),
                IdentityReport::scalar("bm_lemma", &params, b, lemma_lhs(m, d - m + 1, budget)?),
            ])
        })
        .collect::<Result<_>>()?;
    Ok(per.into_iter().flatten().collect())
}

/// Numeric value of a one-element report side, for display.
pub fn scalar_value(side: &[BigInt]) -> Option<i128> {
    match side {
        [v] => v.to_i128(),
        _ => None,
    }
}
