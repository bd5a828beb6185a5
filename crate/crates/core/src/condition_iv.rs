//! Numerical certification of the off-axis decay hypothesis.
//!
//! The asymptotic theorem requires that the weighted sum
//! `g(v) = sum_{j>=1} j e^{-jv}` with `v = y + 2 pi i w` stays bounded away
//! from its real-axis value `g(y)` in the sector `|arg v| > pi/4`:
//!
//! ```text
//! Re g(v) - g(y) <= -C2 * y^{-eps}        (0 < eps <= 2, C2 > 0)
//! ```
//!
//! Since `sum j x^j = x/(1-x)^2`, both sides have closed forms; this module
//! evaluates the margin `Re g(v) - g(y)` stably, scans it over configurable
//! grids ([`scan_condition_iv`]), and verifies the Stirling-number identity
//! for the odd derivatives of `1/(e^y - 1)` that drives the small-`y`
//! re-expansion of the margin ([`boson_derivative`], [`reexpansion_check`]).

// Validation below compares as `!(x > 0.0)` on purpose: unlike `x <= 0.0`,
// the negated form also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

use crate::constants::MIN_PREC;
use crate::hp::HPReal;
use crate::{Error, Result};

/// Closed form `x/(1-x)^2` of `sum_{j>=1} j e^{-jv}`, with `x = e^{-v}`.
///
/// Requires `Re v > 0` (otherwise the defining series diverges).
pub fn g_closed_form(v: Complex64) -> Result<Complex64> {
    if !(v.re > 0.0) || !v.re.is_finite() || !v.im.is_finite() {
        return Err(Error::Domain(format!(
            "g(v) needs Re v > 0, got Re v = {}",
            v.re
        )));
    }
    let x = (-v).exp();
    let d = Complex64::new(1.0, 0.0) - x;
    Ok(x / (d * d))
}

/// `g` on the positive real axis, written to stay accurate for small `y`:
/// `e^{-y} / expm1(-y)^2`.
pub fn g_real(y: f64) -> f64 {
    assert!(y > 0.0 && y.is_finite(), "g_real needs y > 0, got {y}");
    let em = (-y).exp_m1();
    (-y).exp() / (em * em)
}

/// The certified quantity `Re g(y + 2 pi i w) - g(y)`.
///
/// Always `<= 0`: termwise it is `sum_j j e^{-jy} [cos(2 pi j w) - 1]`.  The
/// value is 1-periodic and even in `w`; `w` is reduced to `[-1/2, 1/2]`
/// first, and integer `w` returns exactly `0`.  `1 - x` is assembled from
/// `expm1` and `sin^2(theta/2)` pieces so no digits are lost when both `y`
/// and `theta` are small.
pub fn condition_iv_margin(y: f64, w: f64) -> f64 {
    assert!(y > 0.0 && y.is_finite(), "margin needs y > 0, got {y}");
    assert!(w.is_finite(), "margin needs finite w, got {w}");
    let wr = w - w.round();
    if wr == 0.0 {
        return 0.0;
    }
    let theta = TAU * wr;
    let (sin_t, cos_t) = theta.sin_cos();
    let sin_half = (theta / 2.0).sin();
    let em = (-y).exp_m1(); // e^{-y} - 1, exact to the ulp for small y
    // 1 - e^{-y} e^{-i theta} = [2 sin^2(theta/2) + cos(theta)(1 - e^{-y})]
    //                           + i e^{-y} sin(theta)
    let d = Complex64::new(2.0 * sin_half * sin_half - cos_t * em, (-y).exp() * sin_t);
    let x = Complex64::from_polar((-y).exp(), -theta);
    (x / (d * d)).re - g_real(y)
}

/// First term of the margin's expansion in powers of `(2 pi w)^2`:
///
/// ```text
/// -(2 pi w)^2 (e^y - 1)^{-4} [3 + psi_1(y)],
/// psi_1(y) = -e^y (e^y - 1)(5 e^y + 1) / 2 = O(y).
/// ```
///
/// With `2 pi w = t y` held proportional to `y`, `y^2` times this term tends
/// to `-3 t^2` as `y -> 0+`; it is the quantity behind the scan's
/// leading-constant checks.  (The full margin does not share that limit: the
/// expansion converges only for `2 pi |w| < e^y - 1`, and off that region the
/// higher terms contribute at the same order.)
pub fn margin_leading_term(y: f64, w: f64) -> f64 {
    assert!(y > 0.0 && y.is_finite(), "leading term needs y > 0, got {y}");
    let theta = TAU * w;
    let ey = y.exp();
    let em = y.exp_m1();
    let psi1 = -0.5 * ey * em * (5.0 * ey + 1.0);
    -(theta * theta) / em.powi(4) * (3.0 + psi1)
}

/// A finite grid of `(y, w)` pairs plus the inequality parameters to certify.
///
/// Every pair satisfies the sector filter `2 pi |w| > y` (that is,
/// `|arg(y + 2 pi i w)| > pi/4`), `0 < |w| <= 1/2`, and `y > 0`; the `y`
/// values are strictly decreasing.  `epsilon` is restricted to `(0, 2]`: the
/// inequality for larger exponents follows from the `epsilon = 2` case and is
/// not scanned separately.
#[derive(Debug, Clone)]
pub struct GridSpec {
    rows: Vec<(f64, Vec<f64>)>,
    epsilon: f64,
    c2: f64,
}

impl GridSpec {
    /// Grid with one shared `w` row for every `y`.
    pub fn new(ys: &[f64], ws: &[f64], epsilon: f64, c2: f64) -> Result<Self> {
        let rows = ys.iter().map(|&y| (y, ws.to_vec())).collect();
        Self::with_rows(rows, epsilon, c2)
    }

    /// Grid with an explicit `w` row per `y` value.
    pub fn with_rows(rows: Vec<(f64, Vec<f64>)>, epsilon: f64, c2: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon <= 2.0) {
            return Err(Error::InvalidParams(format!(
                "epsilon must lie in (0, 2], got {epsilon}"
            )));
        }
        if !(c2 > 0.0) || !c2.is_finite() {
            return Err(Error::InvalidParams(format!("C2 must be positive, got {c2}")));
        }
        if rows.is_empty() || rows.iter().any(|(_, ws)| ws.is_empty()) {
            return Err(Error::InvalidParams("grid must contain at least one pair".into()));
        }
        for pair in rows.windows(2) {
            if !(pair[1].0 < pair[0].0) {
                return Err(Error::InvalidParams(
                    "y values must be strictly decreasing".into(),
                ));
            }
        }
        for (y, ws) in &rows {
            if !(*y > 0.0) || !y.is_finite() {
                return Err(Error::InvalidParams(format!("y values must be positive, got {y}")));
            }
            for &w in ws {
                if !w.is_finite() || w == 0.0 || w.abs() > 0.5 {
                    return Err(Error::InvalidParams(format!(
                        "w values must lie in [-1/2, 1/2] minus 0, got {w}"
                    )));
                }
                if !(TAU * w.abs() > *y) {
                    return Err(Error::InvalidParams(format!(
                        "pair (y = {y}, w = {w}) leaves the sector |arg v| > pi/4"
                    )));
                }
            }
        }
        Ok(GridSpec { rows, epsilon, c2 })
    }

    /// Standard certification grid.
    ///
    /// `y` runs over `y_points` log-spaced values in `[y_min, y_max]`.  For
    /// each `y` the angles `theta = 2 pi w` sample a near-edge ring
    /// `{1.001 y, 1.01 y, 1.1 y}` just inside the sector boundary plus
    /// `w_points - 3` log-spaced values from `1.2 y` up to `pi` inclusive.
    pub fn log_grid(
        y_min: f64,
        y_max: f64,
        y_points: usize,
        w_points: usize,
        epsilon: f64,
        c2: f64,
    ) -> Result<Self> {
        if !(y_min > 0.0 && y_min <= y_max && y_max <= 2.6) {
            return Err(Error::InvalidParams(format!(
                "need 0 < y_min <= y_max <= 2.6, got [{y_min}, {y_max}]"
            )));
        }
        if y_points < 1 || (y_points > 1 && y_min == y_max) {
            return Err(Error::InvalidParams("inconsistent y range and point count".into()));
        }
        if w_points < 5 {
            return Err(Error::InvalidParams("need at least 5 w points".into()));
        }
        let mut rows = Vec::with_capacity(y_points);
        for i in 0..y_points {
            let y = if y_points == 1 {
                y_min
            } else {
                let t = i as f64 / (y_points - 1) as f64;
                y_max * (y_min / y_max).powf(t)
            };
            let mut thetas = vec![1.001 * y, 1.01 * y, 1.1 * y];
            let lo = 1.2 * y;
            let m = w_points - 3;
            for j in 0..m {
                let t = j as f64 / (m - 1) as f64;
                // The endpoint computes as pi up to an ulp; clamp so the
                // boundary sample stays at w = 1/2 exactly.
                thetas.push((lo * (PI / lo).powf(t)).min(PI));
            }
            let ws = thetas.into_iter().map(|t| t / TAU).collect();
            rows.push((y, ws));
        }
        Self::with_rows(rows, epsilon, c2)
    }

    /// Required decay exponent.
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Required decay constant.
    pub fn c2(&self) -> f64 {
        self.c2
    }

    /// Number of `(y, w)` pairs in the grid.
    pub fn len(&self) -> usize {
        self.rows.iter().map(|(_, ws)| ws.len()).sum()
    }

    /// True if the grid holds no pairs (unreachable for validated grids).
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Iterates over all `(y, w)` pairs, row by row.
    pub fn pairs(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.rows
            .iter()
            .flat_map(|(y, ws)| ws.iter().map(move |&w| (*y, w)))
    }
}

/// The grid point closest to violating the inequality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorstPoint {
    /// `y` coordinate of the pair.
    pub y: f64,
    /// `w` coordinate of the pair.
    pub w: f64,
    /// Margin `Re g(v) - g(y)` at the pair.
    pub margin: f64,
    /// `margin + C2 y^{-eps}`; nonpositive iff the pair satisfies the bound.
    pub excess: f64,
}

/// Outcome of a grid scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    /// Decay exponent the grid was checked against.
    pub epsilon: f64,
    /// Decay constant the grid was checked against.
    pub c2: f64,
    /// Number of pairs evaluated.
    pub points_checked: usize,
    /// True iff every pair satisfied `margin <= -C2 y^{-eps}`.
    pub pass: bool,
    /// Largest constant the grid certifies: `min (-margin) * y^eps`.
    pub certified_c2: f64,
    /// Pair with the largest excess (ties broken by larger `y`, then `w`).
    pub worst: WorstPoint,
}

/// Checks `margin(y, w) <= -C2 * y^{-eps}` over every pair of the grid.
///
/// Never panics on a violation; the report carries a `pass` flag, the worst
/// pair under the total order (excess, y, w), and the maximal constant the
/// grid would have certified.
pub fn scan_condition_iv(grid: &GridSpec) -> ScanReport {
    let mut worst: Option<WorstPoint> = None;
    let mut certified = f64::INFINITY;
    let mut points = 0usize;
    for (y, w) in grid.pairs() {
        let margin = condition_iv_margin(y, w);
        let bound = grid.c2 * y.powf(-grid.epsilon);
        let excess = margin + bound;
        certified = certified.min(-margin * y.powf(grid.epsilon));
        points += 1;
        let better = match &worst {
            None => true,
            Some(p) => {
                (excess, y, w) > (p.excess, p.y, p.w)
            }
        };
        if better {
            worst = Some(WorstPoint { y, w, margin, excess });
        }
    }
    let worst = worst.expect("validated grids are nonempty");
    ScanReport {
        epsilon: grid.epsilon,
        c2: grid.c2,
        points_checked: points,
        pass: worst.excess <= 0.0,
        certified_c2: certified,
        worst,
    }
}

/// Table of Stirling numbers of the second kind `{order brace m}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingTable {
    order: u32,
    entries: Vec<BigUint>,
}

impl StirlingTable {
    /// Row index `n` of the table.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// `{order brace m}` for `0 <= m <= order`.
    pub fn get(&self, m: u32) -> &BigUint {
        &self.entries[m as usize]
    }

    /// The full row `m = 0 ..= order`.
    pub fn row(&self) -> &[BigUint] {
        &self.entries
    }
}

/// Builds row `order` of the Stirling triangle by the recurrence
/// `S(n+1, m) = m S(n, m) + S(n, m-1)` from `S(0, 0) = 1`.
pub fn stirling2_table(order: u32) -> StirlingTable {
    let mut row = vec![BigUint::one()];
    for n in 0..order {
        let mut next = Vec::with_capacity(n as usize + 2);
        next.push(BigUint::zero());
        for m in 1..=(n as usize + 1) {
            let mut v = if m < row.len() { &row[m] * m } else { BigUint::zero() };
            v += &row[m - 1];
            next.push(v);
        }
        row = next;
    }
    StirlingTable { order, entries: row }
}

/// Odd derivative of the Bose factor by its Stirling closed form:
///
/// ```text
/// d^n/dy^n [1/(e^y - 1)] = sum_{m=0}^{n} (-1)^m m! e^{my} (e^y-1)^{-(m+1)} S(n, m)
/// ```
///
/// `order` must be odd (the identity holds for all orders, but only odd ones
/// appear in the margin expansion, so even orders are rejected as misuse).
pub fn boson_derivative(order: u32, y: &HPReal, prec: u32) -> Result<HPReal> {
    if prec < MIN_PREC {
        return Err(Error::PrecisionTooLow { got: prec, min: MIN_PREC });
    }
    if order == 0 || order.is_multiple_of(2) {
        return Err(Error::InvalidParams(format!(
            "derivative order must be odd, got {order}"
        )));
    }
    if !y.certainly_positive() {
        return Err(Error::Domain(
            "derivative of 1/(e^y - 1) needs y > 0 (pole at y = 0)".into(),
        ));
    }
    let w = prec + 64;
    let ey = y.with_scale(w).exp();
    let em1 = ey.sub(&HPReal::one(w));
    let table = stirling2_table(order);

    let mut acc = HPReal::zero(w);
    let mut e_pow = HPReal::one(w); // e^{my}
    let mut d_pow = em1.clone(); // (e^y - 1)^{m+1}
    let mut m_fact = BigInt::one();
    for m in 0..=order {
        if m > 0 {
            e_pow = e_pow.mul(&ey);
            d_pow = d_pow.mul(&em1);
            m_fact *= i64::from(m);
        }
        let sigma = table.get(m);
        if sigma.is_zero() {
            continue;
        }
        let mut coeff = &m_fact * BigInt::from(sigma.clone());
        if m % 2 == 1 {
            coeff = -coeff;
        }
        acc = acc.add(&e_pow.mul_bigint(&coeff).div(&d_pow)?);
    }
    Ok(acc.with_scale(prec))
}

/// `psi_k(y)` from its Stirling-sum definition, at working precision `prec`:
///
/// ```text
/// psi_k(y) = -(1/(2k)!) sum_{m=0}^{2k} (-1)^m m! e^{my} (e^y-1)^{2k+1-m} S(2k+1, m)
/// ```
fn psi_hp(k: u32, y: &HPReal, prec: u32) -> Result<HPReal> {
    let w = prec + 32;
    let ey = y.with_scale(w).exp();
    let em1 = ey.sub(&HPReal::one(w));
    let table = stirling2_table(2 * k + 1);

    let mut acc = HPReal::zero(w);
    let mut e_pow = HPReal::one(w); // e^{my}
    let mut m_fact = BigInt::one();
    for m in 0..=(2 * k) {
        if m > 0 {
            e_pow = e_pow.mul(&ey);
            m_fact *= i64::from(m);
        }
        let sigma = table.get(m);
        if sigma.is_zero() {
            continue;
        }
        let mut coeff = &m_fact * BigInt::from(sigma.clone());
        if m % 2 == 1 {
            coeff = -coeff;
        }
        acc = acc.add(&e_pow.mul(&em1.powi(2 * k + 1 - m)).mul_bigint(&coeff));
    }
    let two_k_fact: u64 = (1..=u64::from(2 * k)).product();
    Ok(acc.div_u64(two_k_fact).neg().with_scale(prec))
}

/// Evaluates `psi_k(y)` and returns `(psi_k(y), psi_k(y)/y)`.
///
/// The second component stays bounded as `y -> 0+` (every summand carries a
/// positive power of `e^y - 1`, so `psi_k(y) = O(y)`).  Accepts `k <= 6` and
/// `y` in `(0, 1/2]`, the range the margin re-expansion is used on.
pub fn reexpansion_check(k: u32, y: f64) -> Result<(f64, f64)> {
    if !(1..=6).contains(&k) {
        return Err(Error::InvalidParams(format!("k must lie in 1..=6, got {k}")));
    }
    if !(y > 0.0 && y <= 0.5) {
        return Err(Error::InvalidParams(format!("y must lie in (0, 1/2], got {y}")));
    }
    let y_hp = HPReal::from_f64(y, 192)?;
    let psi = psi_hp(k, &y_hp, 192)?.to_f64();
    Ok((psi, psi / y))
}
