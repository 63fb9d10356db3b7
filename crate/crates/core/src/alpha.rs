//! The asymptotic energy-per-vertex constant of minimal-energy trees:
//!
//! ```text
//! alpha_d = 2 sqrt(d) (d-1)^2 * sum_{j >= 1} d^-j (g(j) - 1)
//! g(j) = cot(pi / 2j)  (j even),   csc(pi / 2j)  (j odd)
//! ```
//!
//! summed until a closed-form tail bound certifies the requested accuracy.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::{Error, Result};

/// Smallest accuracy the double-precision summation can certify.
pub const EPS_FLOOR: f64 = 1e-12;

/// Largest branching parameter accepted by [`alpha_table`].
pub const TABLE_MAX_D: usize = 16;

const MIN_TERMS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaEstimate {
    pub d: usize,
    pub value: f64,
    /// Last summation index included.
    pub j_max: usize,
    /// Upper bound on the omitted terms `j > j_max`.
    pub tail_bound: f64,
    pub requested_eps: f64,
}

/// Term `d^-j (g(j) - 1)` without the prefactor.
pub fn term(d: usize, j: usize) -> f64 {
    let x = PI / (2.0 * j as f64);
    let g = if j.is_multiple_of(2) {
        libm::cos(x) / libm::sin(x)
    } else {
        1.0 / libm::sin(x)
    };
    // g(1) = csc(pi/2) and g(2) = cot(pi/4) are exactly 1.
    let g_minus_one = if j <= 2 { 0.0 } else { g - 1.0 };
    libm::pow(d as f64, -(j as f64)) * g_minus_one
}

fn prefactor(d: usize) -> f64 {
    let dm1 = (d - 1) as f64;
    2.0 * libm::sqrt(d as f64) * dm1 * dm1
}

/// Bound on `prefactor * sum_{j > j_max} d^-j (g(j) - 1)`.
///
/// Uses `0 <= g(j) - 1 < 2j/pi + 1` (from `cot x < 1/x` and
/// `csc x < 1/x + 1` on `(0, pi/2]`) and the closed forms of
/// `sum x^j` and `sum j x^j` over `j > J` with `x = 1/d`.
pub fn tail_bound(d: usize, j_max: usize) -> f64 {
    let x = 1.0 / d as f64;
    let big_j = j_max as f64;
    let xj1 = libm::pow(x, big_j + 1.0);
    let geometric = xj1 / (1.0 - x);
    let weighted = xj1 * ((big_j + 1.0) - big_j * x) / ((1.0 - x) * (1.0 - x));
    prefactor(d) * (2.0 / PI * weighted + geometric)
}

/// `alpha_d` to within `eps`, with the number of terms chosen minimal such
/// that the tail bound is at most `eps / 2`.
pub fn alpha(d: usize, eps: f64) -> Result<AlphaEstimate> {
    if d < 2 {
        return Err(Error::Parameter(format!("branching d = {d} must be >= 2")));
    }
    if !eps.is_finite() || eps < EPS_FLOOR {
        return Err(Error::Parameter(format!(
            "eps = {eps:e} is below the double-precision floor {EPS_FLOOR:e}"
        )));
    }
    let mut j_max = MIN_TERMS;
    while tail_bound(d, j_max) > eps / 2.0 {
        j_max += 1;
    }
    // Smallest terms first to limit rounding.
    let sum: f64 = (1..=j_max).rev().map(|j| term(d, j)).sum();
    Ok(AlphaEstimate {
        d,
        value: prefactor(d) * sum,
        j_max,
        tail_bound: tail_bound(d, j_max),
        requested_eps: eps,
    })
}

/// One row per `d` in `d_min ..= d_max`.
pub fn alpha_table(d_min: usize, d_max: usize, eps: f64) -> Result<Vec<AlphaEstimate>> {
    if d_min < 2 || d_min > d_max || d_max > TABLE_MAX_D {
        return Err(Error::Parameter(format!(
            "d range {d_min}..={d_max} must satisfy 2 <= d_min <= d_max <= {TABLE_MAX_D}"
        )));
    }
    (d_min..=d_max).map(|d| alpha(d, eps)).collect()
}
