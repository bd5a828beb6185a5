//! Mathematical constants with rigorous error bounds.
//!
//! Everything transcendental is returned as an [`HPReal`] ball whose radius
//! is a proven bound at the requested precision: `zeta_int` / [`zeta3`]
//! (Euler–Maclaurin with an adaptive cutoff), [`euler_gamma`],
//! [`zeta_prime_2`], and the integral constant
//!
//! ```text
//! c = ∫_0^∞ y ln y / (e^{2πy} − 1) dy = ζ'(−1)/2 ≈ −0.0827105718502254…
//! ```
//!
//! which enters the asymptotic prefactor through `e^{2c}`. [`constant_c`]
//! evaluates `c` by two independent routes — termwise integration of the
//! expanded integrand (a closed form in `ζ(2)`, `ζ'(2)`, `γ`, `ln 2π`) and
//! direct rigorous quadrature — and refuses to return a value unless the
//! two balls overlap.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hp;
pub use crate::hp::HPReal;

/// Smallest supported precision: the error analysis below assumes at least
/// 64 fractional bits of headroom.
pub const MIN_PREC: u32 = 64;

/// The quadrature cross-check inside [`constant_c`] runs at most at this
/// precision: its cost grows roughly quadratically with bits while the
/// series route stays cheap, and agreement at 192 bits already exceeds
/// every downstream tolerance in this crate.
pub const QUADRATURE_PREC_CAP: u32 = 192;

fn check_prec(prec: u32) -> Result<()> {
    if prec < MIN_PREC {
        return Err(Error::PrecisionTooLow { got: prec, min: MIN_PREC });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Exact rational helpers
// ---------------------------------------------------------------------------

/// Bernoulli number `B_m` (convention `B_1 = -1/2`), via the defining
/// recurrence `B_m = -1/(m+1) · Σ_{j<m} C(m+1, j) B_j`, cached globally.
pub fn bernoulli(m: usize) -> BigRational {
    static CACHE: OnceLock<Mutex<Vec<BigRational>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(vec![BigRational::one()]));
    let mut tab = cache.lock().unwrap();
    while tab.len() <= m {
        let n = tab.len();
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one();
        for (j, b) in tab.iter().enumerate() {
            acc += BigRational::from(binom.clone()) * b;
            // C(n+1, j+1) from C(n+1, j); the division is exact.
            binom = binom * BigInt::from(n + 1 - j) / BigInt::from(j + 1);
        }
        let next = -acc / BigRational::from(BigInt::from(n + 1));
        tab.push(next);
    }
    tab[m].clone()
}

pub(crate) fn factorial(n: u64) -> BigUint {
    let mut f = BigUint::one();
    for k in 2..=n {
        f *= k;
    }
    f
}

/// Harmonic number `H_n` as an exact rational, cached.
fn harmonic(n: usize) -> BigRational {
    static CACHE: OnceLock<Mutex<Vec<BigRational>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(vec![BigRational::zero()]));
    let mut tab = cache.lock().unwrap();
    while tab.len() <= n {
        let k = tab.len();
        let next = tab[k - 1].clone()
            + BigRational::new(BigInt::one(), BigInt::from(k));
        tab.push(next);
    }
    tab[n].clone()
}

/// `|r| <= 2^e`.
fn rational_abs_le_pow2(r: &BigRational, e: i64) -> bool {
    let n = r.numer().magnitude();
    let d = r.denom().magnitude();
    if e >= 0 {
        n <= &(d << (e as u64))
    } else {
        &(n << ((-e) as u64)) <= d
    }
}

/// Upper bound on `|r|` in ulps at `scale` (ceiling).
fn rational_abs_ulps(r: &BigRational, scale: u32) -> BigUint {
    let n = r.numer().magnitude() << scale;
    let d = r.denom().magnitude();
    (&n + d - BigUint::one()) / d
}

/// `2^log2_abs` in ulps at `scale`, padded by a factor of 2 (and at least
/// one ulp). `log2_abs` comes from f64 estimates whose own slop is far
/// below that pad.
fn pow2_ulps(log2_abs: f64, scale: u32) -> BigUint {
    let sh = log2_abs.ceil() as i64 + i64::from(scale) + 1;
    if sh <= 0 {
        BigUint::one()
    } else {
        BigUint::one() << (sh as u64)
    }
}

fn hp_ratio(r: &BigRational, scale: u32) -> HPReal {
    HPReal::from_ratio(r.numer(), r.denom(), scale).expect("nonzero denominator")
}

// ---------------------------------------------------------------------------
// Euler–Maclaurin evaluations
// ---------------------------------------------------------------------------

/// One Euler–Maclaurin attempt for `ζ(s)` with cutoff `n`:
///
/// ```text
/// ζ(s) = Σ_{j<=n} j^{-s} + n^{1-s}/(s-1) - n^{-s}/2
///        + Σ_k B_{2k}/(2k)! · (s)_{2k-1} · n^{-(s+2k-1)} + R
/// ```
///
/// Correction terms are added while they shrink; once one drops below the
/// tolerance the remainder is covered by twice that first omitted term
/// (the classical alternating-remainder bound, padded). Returns `None`
/// when the terms stop shrinking before reaching tolerance, i.e. `n` is
/// too small for the requested accuracy.
fn zeta_em(s: u32, w: u32, n: u64, tol_log2: i64) -> Option<HPReal> {
    let mut acc = HPReal::zero(w);
    for j in 1..=n {
        let d = BigInt::from(j).pow(s);
        acc = acc.add(&HPReal::from_ratio(&BigInt::one(), &d, w).ok()?);
    }
    let tail_den = BigInt::from(n).pow(s - 1) * BigInt::from(s - 1);
    acc = acc.add(&HPReal::from_ratio(&BigInt::one(), &tail_den, w).ok()?);
    let half_den = BigInt::from(n).pow(s) << 1;
    acc = acc.sub(&HPReal::from_ratio(&BigInt::one(), &half_den, w).ok()?);

    let mut prev: Option<BigRational> = None;
    for k in 1usize..400 {
        // B_2k / (2k)! · (s)_{2k-1} / n^{s + 2k - 1}
        let mut rising = BigInt::one();
        for i in 0..(2 * k as u32 - 1) {
            rising *= BigInt::from(s + i);
        }
        let b = bernoulli(2 * k);
        let num = b.numer() * rising;
        let den = b.denom()
            * BigInt::from(factorial(2 * k as u64))
            * BigInt::from(n).pow(s + 2 * k as u32 - 1);
        let term = BigRational::new(num, den);
        let mag = term.abs();
        if rational_abs_le_pow2(&mag, tol_log2) {
            let extra = rational_abs_ulps(&mag, w) * 2u32 + BigUint::one();
            acc.widen(extra);
            return Some(acc);
        }
        if let Some(p) = &prev {
            if mag >= *p {
                return None;
            }
        }
        acc = acc.add(&hp_ratio(&term, w));
        prev = Some(mag);
    }
    None
}

/// `ζ(s)` for integer `s >= 2` with radius at most `2^(-prec+4)`.
pub fn zeta_int(s: u32, prec: u32) -> Result<HPReal> {
    check_prec(prec)?;
    if s < 2 {
        return Err(Error::Domain(format!(
            "zeta_int requires integer s >= 2, got {s}"
        )));
    }
    let w = prec + 64;
    let tol = -(i64::from(w) - 24);
    let mut n = (4 * u64::from(prec)).max(64);
    for _ in 0..8 {
        if let Some(v) = zeta_em(s, w, n, tol) {
            let out = v.with_scale(prec);
            debug_assert!(out.error_le_pow2(-i64::from(prec) + 4));
            return Ok(out);
        }
        n *= 4;
    }
    Err(Error::Domain(format!(
        "Euler-Maclaurin for zeta({s}) failed to converge"
    )))
}

fn start_pow(prec: u32) -> u32 {
    let ceil_log2 = 32 - (prec - 1).leading_zeros();
    ceil_log2.saturating_sub(1).max(6)
}

/// One Euler–Maclaurin attempt for `γ` with cutoff `n = 2^p` (power of two
/// so that `ln n = p·ln 2` uses only the cached `ln 2`):
///
/// ```text
/// γ = H_n - ln n - 1/(2n) + Σ_k B_{2k}/(2k·n^{2k}) + R
/// ```
fn gamma_em(w: u32, p: u32, tol_log2: i64) -> Option<HPReal> {
    let n = 1u64 << p;
    let mut acc = HPReal::zero(w);
    for j in 1..=n {
        acc = acc.add(&HPReal::from_ratio(&BigInt::one(), &BigInt::from(j), w).ok()?);
    }
    acc = acc.sub(&hp::ln2(w).mul_i64(i64::from(p)));
    acc = acc.sub(&HPReal::from_ratio(&BigInt::one(), &BigInt::from(2 * n), w).ok()?);

    let mut prev: Option<BigRational> = None;
    for k in 1u32..400 {
        let b = bernoulli(2 * k as usize);
        let den = b.denom() * BigInt::from(2 * k) * (BigInt::one() << (2 * k * p));
        let term = BigRational::new(b.numer().clone(), den);
        let mag = term.abs();
        if rational_abs_le_pow2(&mag, tol_log2) {
            let extra = rational_abs_ulps(&mag, w) * 2u32 + BigUint::one();
            acc.widen(extra);
            return Some(acc);
        }
        if let Some(pm) = &prev {
            if mag >= *pm {
                return None;
            }
        }
        acc = acc.add(&hp_ratio(&term, w));
        prev = Some(mag);
    }
    None
}

/// The Euler–Mascheroni constant `γ` with radius at most `2^(-prec+4)`.
pub fn euler_gamma(prec: u32) -> Result<HPReal> {
    check_prec(prec)?;
    cached(CKey::Gamma, prec, || {
        let w = prec + 64;
        let tol = -(i64::from(w) - 24);
        let mut p = start_pow(prec);
        for _ in 0..8 {
            if let Some(v) = gamma_em(w, p, tol) {
                let out = v.with_scale(prec);
                debug_assert!(out.error_le_pow2(-i64::from(prec) + 4));
                return Ok(out);
            }
            p += 2;
        }
        Err(Error::Domain("Euler-Maclaurin for gamma failed to converge".into()))
    })
}

/// One Euler–Maclaurin attempt for `ζ'(2) = -Σ ln j / j²` with cutoff
/// `n = 2^p`. With `f(x) = ln x / x²` and
/// `f^(m)(x) = (-1)^m (m+1)! (ln x - H_{m+1} + 1) x^{-(m+2)}`:
///
/// ```text
/// ζ'(2) = -Σ_{j=2}^n ln j/j² - (ln n + 1)/n + ln n/(2n²)
///         + Σ_k B_{2k} (H_{2k} - 1 - ln n) / n^{2k+1} + R
/// ```
fn zeta_prime_2_em(w: u32, p: u32, tol_log2: i64) -> Option<HPReal> {
    let n = 1u64 << p;
    let mut acc = HPReal::zero(w);
    for j in 2..=n {
        let lnj = HPReal::from_u64(j, w).ln().ok()?;
        acc = acc.sub(&lnj.div_u64(j * j));
    }
    let ln_n = hp::ln2(w).mul_i64(i64::from(p));
    let one = HPReal::one(w);
    acc = acc.sub(&ln_n.add(&one).mul_pow2(-i64::from(p)));
    acc = acc.add(&ln_n.mul_pow2(-(2 * i64::from(p) + 1)));

    let mut prev: Option<BigRational> = None;
    for k in 1u32..400 {
        let b = bernoulli(2 * k as usize);
        // Magnitude bound for the stopping rule: |H_{2k} - 1 - ln n| with
        // ln n < p, so |..| <= H_{2k} + p.
        let h = harmonic(2 * k as usize);
        let bound = b.abs() * (h.clone() + BigRational::from(BigInt::from(p)))
            / BigRational::from(BigInt::one() << ((2 * k + 1) * p));
        if rational_abs_le_pow2(&bound, tol_log2) {
            let extra = rational_abs_ulps(&bound, w) * 2u32 + BigUint::one();
            acc.widen(extra);
            return Some(acc);
        }
        if let Some(pm) = &prev {
            if bound >= *pm {
                return None;
            }
        }
        let rat = hp_ratio(&(b.clone() * (h - BigRational::one())), w);
        let term = rat.sub(&hp_ratio(&b, w).mul(&ln_n)).mul_pow2(-i64::from((2 * k + 1) * p));
        acc = acc.add(&term);
        prev = Some(bound);
    }
    None
}

/// `ζ'(2) ≈ -0.93754825431584…` with radius at most `2^(-prec+4)`.
pub fn zeta_prime_2(prec: u32) -> Result<HPReal> {
    check_prec(prec)?;
    let w = prec + 64;
    let tol = -(i64::from(w) - 24);
    let mut p = start_pow(prec);
    for _ in 0..8 {
        if let Some(v) = zeta_prime_2_em(w, p, tol) {
            let out = v.with_scale(prec);
            debug_assert!(out.error_le_pow2(-i64::from(prec) + 4));
            return Ok(out);
        }
        p += 2;
    }
    Err(Error::Domain("Euler-Maclaurin for zeta'(2) failed to converge".into()))
}

// ---------------------------------------------------------------------------
// The constant c: series route
// ---------------------------------------------------------------------------

/// Series route for `c`. Expanding `1/(e^{2πy}-1)` in exponentials and
/// integrating termwise gives `c = Σ_k (1 - γ - ln 2πk)/(2πk)²`; the
/// partial sums alone converge like `ln K / K`, far too slowly for any
/// useful precision, but the sum regroups exactly into
///
/// ```text
/// c = [(1 - γ - ln 2π)·ζ(2) + ζ'(2)] / (4π²)
/// ```
///
/// (split `ln 2πk = ln 2π + ln k` and use `Σ ln k/k² = -ζ'(2)`), which is
/// what this function evaluates. A test brackets `c` between a literal
/// partial sum of the termwise series and its integral tail bound.
pub fn constant_c_series(prec: u32) -> Result<HPReal> {
    check_prec(prec)?;
    let w = prec + 64;
    let inner = prec + 48;
    let g = euler_gamma(inner)?.with_scale(w);
    let z2 = zeta_int(2, inner)?.with_scale(w);
    let zp2 = zeta_prime_2(inner)?.with_scale(w);
    let pi = hp::pi(w);
    let ln_2pi = hp::ln2(w).add(&pi.ln()?);
    let one = HPReal::one(w);
    let bracket = one.sub(&g).sub(&ln_2pi).mul(&z2).add(&zp2);
    let c = bracket.div(&pi.powi(2).mul_i64(4))?;
    let out = c.with_scale(prec);
    debug_assert!(out.error_le_pow2(-i64::from(prec) + 4));
    Ok(out)
}

// ---------------------------------------------------------------------------
// The constant c: quadrature route
// ---------------------------------------------------------------------------

/// Gauss–Legendre nodes and weights on [-1, 1], cached per `(n, scale)`.
///
/// Roots of `P_n` are found by Newton iteration on ball midpoints from f64
/// seeds; the final ball radius comes from a last rigorous Newton step
/// (`|x - x*| <= 2|P_n(x)/P'_n(x)|` near a simple root — the iterate is
/// far inside the quadratic basin after the midpoint phase).
fn gl_nodes(n: u32, scale: u32) -> Result<Arc<Vec<(HPReal, HPReal)>>> {
    type NodeMap = HashMap<(u32, u32), Arc<Vec<(HPReal, HPReal)>>>;
    static CACHE: OnceLock<Mutex<NodeMap>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&(n, scale)) {
        return Ok(v.clone());
    }
    debug_assert!(n.is_multiple_of(2), "node counts are bucketed to even values");
    // The recurrence for P_n loses roughly a bit of ball radius per step,
    // so solve at an inflated working scale and round the results down.
    let ws = scale + 2 * n + 32;
    let one = HPReal::one(ws);
    let two = HPReal::from_u64(2, ws);
    let mut iters = 2u32;
    let mut bits = 45.0f64;
    while bits < f64::from(ws) {
        bits *= 2.0;
        iters += 1;
    }
    let mut out: Vec<(HPReal, HPReal)> = Vec::with_capacity(n as usize);
    for i in 0..n / 2 {
        let mut xf = (std::f64::consts::PI * (f64::from(i) + 0.75)
            / (f64::from(n) + 0.5))
            .cos();
        for _ in 0..30 {
            let (p, p1) = legendre_f64(n, xf);
            let d = f64::from(n) * (xf * p - p1) / (xf * xf - 1.0);
            let step = p / d;
            xf -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
        let mut x = HPReal::from_f64(xf, ws)?;
        for _ in 0..iters {
            let (pn, pn1) = legendre_pair(n, &x);
            let deriv = x
                .mul(&pn)
                .sub(&pn1)
                .mul_i64(i64::from(n))
                .div(&x.mul(&x).sub(&one))?;
            let step = pn.div(&deriv)?;
            x = x.sub(&step).midpoint();
        }
        let (pn, pn1) = legendre_pair(n, &x);
        let deriv = x
            .mul(&pn)
            .sub(&pn1)
            .mul_i64(i64::from(n))
            .div(&x.mul(&x).sub(&one))?;
        let step = pn.div(&deriv)?;
        let mut x = x.sub(&step);
        let slack = step.abs().add(&step.abs());
        let (_, hi) = slack.bounds_at_scale(ws);
        x.widen(hi.magnitude() + BigUint::from(4u32));
        // w_i = 2 / ((1 - x²) P'_n(x)²)
        let (pn, pn1) = legendre_pair(n, &x);
        let omx2 = one.sub(&x.mul(&x));
        let deriv = x.mul(&pn).sub(&pn1).mul_i64(i64::from(n)).div(&omx2)?;
        let wt = two.div(&omx2.mul(&deriv.mul(&deriv)))?;
        let x = x.with_scale(scale);
        let wt = wt.with_scale(scale);
        out.push((x.clone(), wt.clone()));
        out.push((x.neg(), wt));
    }
    let arc = Arc::new(out);
    cache.lock().unwrap().insert((n, scale), arc.clone());
    Ok(arc)
}

/// `(P_n(x), P_{n-1}(x))` by the three-term recurrence.
fn legendre_pair(n: u32, x: &HPReal) -> (HPReal, HPReal) {
    let mut p0 = HPReal::one(x.scale());
    let mut p1 = x.clone();
    for k in 1..n {
        let next = x
            .mul(&p1)
            .mul_i64(i64::from(2 * k + 1))
            .sub(&p0.mul_i64(i64::from(k)))
            .div_u64(u64::from(k) + 1);
        p0 = p1;
        p1 = next;
    }
    (p1, p0)
}

fn legendre_f64(n: u32, x: f64) -> (f64, f64) {
    let mut p0 = 1.0f64;
    let mut p1 = x;
    for k in 1..n {
        let kf = f64::from(k);
        let next = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = next;
    }
    (p1, p0)
}

const NODE_BUCKETS: [u32; 10] = [16, 24, 32, 48, 64, 96, 128, 192, 256, 384];

/// `y ln y / (e^{2πy} - 1)` as a ball.
fn quad_integrand(y: &HPReal) -> Result<HPReal> {
    let w = y.scale();
    let two_pi_y = hp::pi(w).mul_pow2(1).mul(y);
    let den = two_pi_y.exp().sub(&HPReal::one(w));
    y.mul(&y.ln()?).div(&den)
}

/// One Gauss–Legendre panel over `[a, b]` (0 < a < b), with the
/// Bernstein-ellipse truncation bound for ρ = 2 folded into the radius:
/// `|I - I_n| <= 16 M (b-a) 2^{-2n}` where `M` bounds the integrand on the
/// ellipse. `M` itself is estimated in f64 with a 4x pad — on the ellipse
/// `Re y >= a - (b-a)/8 > 0`, so `|e^{2πy} - 1| >= e^{2π Re y} - 1` by the
/// reverse triangle inequality, `|y| <= mid + 1.25(b-a)/2`, and
/// `|ln y| <= max(|ln Re_min|, ln|y|_max) + π`.
fn gl_panel(a: &HPReal, b: &HPReal, w: u32) -> Result<HPReal> {
    let c = a.add(b).mul_pow2(-1);
    let l = b.sub(a).mul_pow2(-1);
    let af = a.to_f64();
    let bf = b.to_f64();
    let lf = (bf - af) / 2.0;
    let cf = (af + bf) / 2.0;
    let re_min = cf - 1.25 * lf;
    let y_max = cf + 1.25 * lf;
    let ln_mag = (-re_min.ln()).max(y_max.ln()).max(0.0) + std::f64::consts::PI;
    let denom = (2.0 * std::f64::consts::PI * re_min).exp_m1();
    let m_sup = 4.0 * y_max * ln_mag / denom;
    let extra_bits = (16.0 * m_sup * 2.0 * lf).log2();
    let need = (f64::from(w) + 8.0 + extra_bits.max(0.0)) / 2.0;
    let n = NODE_BUCKETS
        .iter()
        .copied()
        .find(|&cand| f64::from(cand) >= need)
        .ok_or_else(|| {
            Error::ResourceLimit(format!(
                "quadrature panel would need more than {} nodes",
                NODE_BUCKETS[NODE_BUCKETS.len() - 1]
            ))
        })?;
    let nodes = gl_nodes(n, w)?;
    let mut sum = HPReal::zero(w);
    for (x, wt) in nodes.iter() {
        let y = c.add(&l.mul(x));
        sum = sum.add(&wt.mul(&quad_integrand(&y)?));
    }
    let mut out = l.mul(&sum);
    let trunc_log2 = extra_bits - 2.0 * f64::from(n);
    out.widen(pow2_ulps(trunc_log2, w));
    Ok(out)
}

/// The piece of the integral on `(0, 1/64]`. The integrand has an
/// integrable logarithmic singularity at 0 (it behaves like `ln y / 2π`),
/// so this piece is done in closed form: with `ε = 2^-6` and
/// `1/(e^u - 1) = 1/u - 1/2 + Σ_m B_{2m} u^{2m-1}/(2m)!` (`u = 2πy`,
/// `|u| <= π/32`, well inside the 2π radius),
///
/// ```text
/// ∫_0^ε = (1/2π)·J(0) - (1/2)·J(1) + Σ_m B_{2m}(2π)^{2m-1}/(2m)! · J(2m),
/// J(k) = ∫_0^ε y^k ln y dy = ε^{k+1}(ln ε/(k+1) - 1/(k+1)²).
/// ```
///
/// The tail over m uses `|B_{2m}|/(2m)! <= 2ζ(2)/(2π)^{2m}` so that
/// `|term_m| <= (3.29/2π)·ε·(|ln ε|+1)·(2πε)^{2m}`, a geometric series
/// with ratio `(2πε)² ≈ 2^-6.7`.
fn quad_head(w: u32) -> Result<HPReal> {
    let ln_eps = hp::ln2(w).mul_i64(-6);
    let pi = hp::pi(w);
    let two_pi = pi.mul_pow2(1);
    let j_int = |k: u64| -> Result<HPReal> {
        let kk = k + 1;
        let sq = BigInt::from(kk * kk);
        let a = ln_eps
            .div_u64(kk)
            .sub(&HPReal::from_ratio(&BigInt::one(), &sq, w)?);
        Ok(a.mul_pow2(-6 * (kk as i64)))
    };
    let mut acc = j_int(0)?.div(&two_pi)?;
    acc = acc.sub(&j_int(1)?.mul_pow2(-1));
    let mut tp_pow = two_pi.clone(); // (2π)^{2m-1}
    let base_log2 = (3.29 / (2.0 * std::f64::consts::PI) * (1.0 / 64.0) * 5.16).log2();
    let ratio_log2 = 2.0 * (std::f64::consts::PI / 32.0).log2();
    for m in 1u64.. {
        let b = bernoulli(2 * m as usize);
        let den = b.denom() * BigInt::from(factorial(2 * m));
        let coef = HPReal::from_ratio(b.numer(), &den, w)?;
        acc = acc.add(&coef.mul(&tp_pow).mul(&j_int(2 * m)?));
        let tail_log2 = base_log2 + ratio_log2 * ((m + 1) as f64) + 0.1;
        if tail_log2 <= -(f64::from(w) + 8.0) {
            acc.widen(pow2_ulps(tail_log2, w));
            return Ok(acc);
        }
        tp_pow = tp_pow.mul(&two_pi).mul(&two_pi);
        if m > 300 {
            break;
        }
    }
    Err(Error::Domain("head series for the c integral did not converge".into()))
}

/// Ball `0 ± bound` covering `∫_Y^∞ y ln y/(e^{2πy}-1) dy` for `Y >= 4`:
/// `y ln y <= y²` there, `1/(e^u-1) <= 1.01 e^{-u}`, and
/// `∫_Y^∞ y² e^{-2πy} dy = e^{-2πY}(Y²/2π + 2Y/(2π)² + 2/(2π)³)` exactly.
fn quad_tail(y_end: u64, w: u32) -> HPReal {
    let yf = y_end as f64;
    let tp = 2.0 * std::f64::consts::PI;
    let poly = 1.02 * (yf * yf / tp + 2.0 * yf / (tp * tp) + 2.0 / (tp * tp * tp));
    let log2_bound = -tp * yf * std::f64::consts::LOG2_E + poly.log2();
    let mut z = HPReal::zero(w);
    z.widen(pow2_ulps(log2_bound, w));
    z
}

/// Quadrature route for `c`: rigorous evaluation of
/// `∫_0^∞ y ln y/(e^{2πy}-1) dy` as head series + Gauss–Legendre panels
/// (dyadic on `[1/64, 1]`, unit-length on `[1, Y]`) + exponential tail.
///
/// # Errors
///
/// [`Error::ResourceLimit`] above 512 bits — use the series route there;
/// this route exists as an independent cross-check, not as the producer.
pub fn constant_c_quadrature(prec: u32) -> Result<HPReal> {
    check_prec(prec)?;
    if prec > 512 {
        return Err(Error::ResourceLimit(format!(
            "quadrature route supports prec <= 512, got {prec}"
        )));
    }
    let w = prec + 48;
    let y_end = ((u64::from(prec) + 68) / 9 + 1).max(8);
    let mut acc = quad_head(w)?;
    for e in (1..=6u32).rev() {
        let a = HPReal::from_ratio(&BigInt::one(), &(BigInt::one() << e), w)?;
        let b = a.mul_pow2(1);
        acc = acc.add(&gl_panel(&a, &b, w)?);
    }
    for k in 1..y_end {
        let a = HPReal::from_u64(k, w);
        let b = HPReal::from_u64(k + 1, w);
        acc = acc.add(&gl_panel(&a, &b, w)?);
    }
    acc = acc.add(&quad_tail(y_end, w));
    let out = acc.with_scale(prec);
    debug_assert!(out.error_le_pow2(-i64::from(prec) + 4));
    Ok(out)
}

// ---------------------------------------------------------------------------
// Public constants
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum CKey {
    Zeta3,
    Gamma,
    C,
}

fn cached(key: CKey, prec: u32, f: impl FnOnce() -> Result<HPReal>) -> Result<HPReal> {
    static CACHE: OnceLock<Mutex<HashMap<(CKey, u32), HPReal>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&(key, prec)) {
        return Ok(v.clone());
    }
    // Compute outside the lock: f may recurse into other cached constants.
    let v = f()?;
    cache.lock().unwrap().insert((key, prec), v.clone());
    Ok(v)
}

/// Apéry's constant `ζ(3) ≈ 1.2020569…` with radius at most `2^(-prec+4)`,
/// cached per precision.
pub fn zeta3(prec: u32) -> Result<HPReal> {
    check_prec(prec)?;
    cached(CKey::Zeta3, prec, || zeta_int(3, prec))
}

/// The constant `c = ∫_0^∞ y ln y/(e^{2πy}-1) dy = ζ'(-1)/2`, computed by
/// the series route and cross-checked against the independent quadrature
/// route (at `min(prec, QUADRATURE_PREC_CAP)`); the two balls must
/// overlap or the call fails.
///
/// # Errors
///
/// [`Error::RouteDisagreement`] if the routes produce disjoint balls.
pub fn constant_c(prec: u32) -> Result<HPReal> {
    check_prec(prec)?;
    cached(CKey::C, prec, || {
        let series = constant_c_series(prec)?;
        let quad = constant_c_quadrature(prec.min(QUADRATURE_PREC_CAP))?;
        if !series.consistent_with(&quad) {
            return Err(Error::RouteDisagreement(format!(
                "constant c: series route {} vs quadrature route {}",
                series.to_decimal(40),
                quad.to_decimal(40)
            )));
        }
        Ok(series)
    })
}

/// `D(0)` for the plane-partition instance: the Dirichlet series is
/// `D(s) = ζ(s-1)`, so `D(0) = ζ(-1) = -1/12`, exactly.
pub fn d_zero() -> BigRational {
    BigRational::new(BigInt::from(-1), BigInt::from(12))
}

/// `ζ'(-1) = 2c ≈ -0.1654211437…` (exact doubling of [`constant_c`]).
pub fn zeta_prime_minus1(prec: u32) -> Result<HPReal> {
    Ok(constant_c(prec)?.mul_pow2(1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn bernoulli_table_matches_known_values() {
        let want = [
            (0, rat(1, 1)),
            (1, rat(-1, 2)),
            (2, rat(1, 6)),
            (4, rat(-1, 30)),
            (6, rat(1, 42)),
            (8, rat(-1, 30)),
            (10, rat(5, 66)),
            (12, rat(-691, 2730)),
        ];
        for (idx, v) in &want {
            assert_eq!(bernoulli(*idx), *v, "B_{idx}");
        }
        for odd in [3usize, 5, 7, 9, 11, 13] {
            assert!(bernoulli(odd).is_zero(), "B_{odd} should vanish");
        }
        assert_eq!(harmonic(4), rat(25, 12));
    }

    #[test]
    fn zeta2_matches_pi_squared_over_6() {
        let z = zeta_int(2, 256).unwrap();
        let pi = hp::pi(320);
        let reference = pi.powi(2).div_u64(6);
        assert!(z.consistent_with(&reference));
        assert!(z.sub(&reference).abs_upper_le_pow2(-250));
    }

    #[test]
    fn zeta4_matches_pi_fourth_over_90() {
        let z = zeta_int(4, 256).unwrap();
        let pi = hp::pi(320);
        let reference = pi.powi(4).div_u64(90);
        assert!(z.consistent_with(&reference));
        assert!(z.sub(&reference).abs_upper_le_pow2(-250));
    }

    /// Direct fixed-point summation of `Σ j^-3` plus the integral tail
    /// bracket `(1/2(J+1)², 1/2J²)`, at two different cutoffs. The
    /// production ball must lie inside both brackets.
    #[test]
    fn zeta3_agrees_with_direct_summation_brackets() {
        let z = zeta3(128).unwrap();
        let (zlo, zhi) = z.bounds_at_scale(100);
        for j_max in [500_000u64, 1_000_000] {
            let mut s: u128 = 0;
            for j in 1..=j_max {
                let cube = u128::from(j) * u128::from(j) * u128::from(j);
                s += (1u128 << 100) / cube;
            }
            // Each floor-division under-counts by < 1 ulp.
            let partial_lo = BigInt::from(s);
            let partial_hi = BigInt::from(s) + BigInt::from(j_max);
            let tail_lo = BigInt::from(
                (1u128 << 100) / (2 * u128::from(j_max + 1) * u128::from(j_max + 1)),
            );
            let tail_hi = BigInt::from(
                (1u128 << 100) / (2 * u128::from(j_max) * u128::from(j_max)) + 1,
            );
            let lo = partial_lo + tail_lo;
            let hi = partial_hi + tail_hi;
            assert!(lo <= zlo && zhi <= hi, "bracket failed at J = {j_max}");
        }
    }

    /// Independent route: Apéry's accelerated series
    /// `ζ(3) = (5/2) Σ (-1)^{k-1} (k!)² / (k³ (2k)!)`.
    #[test]
    fn zeta3_agrees_with_apery_series() {
        let w = 340u32;
        let mut acc = HPReal::zero(w);
        let mut kfac = BigUint::one();
        let mut k2fac = BigUint::one();
        let mut k = 1u64;
        loop {
            kfac *= k;
            k2fac *= (2 * k - 1) * (2 * k);
            let num = BigInt::from(&kfac * &kfac);
            let den = BigInt::from(&k2fac * (k * k * k));
            let term = HPReal::from_ratio(&num, &den, w).unwrap();
            acc = if k % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
            // Alternating with |t_{k+1}|/|t_k| -> 1/4: stop once the last
            // added term (which bounds the remainder) is negligible.
            if term.abs_upper_le_pow2(-336) {
                break;
            }
            k += 1;
            assert!(k < 400, "series did not reach the stopping bound");
        }
        let mut oracle = acc.mul(&HPReal::from_ratio(&BigInt::from(5), &BigInt::from(2), w).unwrap());
        oracle.widen(BigUint::from(1u32) << 16);
        let z = zeta3(256).unwrap();
        assert!(oracle.consistent_with(&z));
        assert!(oracle.sub(&z).abs_upper_le_pow2(-250));
    }

    /// Independent route for γ: the Sweeney/`Ein` identity
    /// `Σ_{k>=1} (-1)^{k+1} n^k/(k·k!) = γ + ln n + E1(n)` at `n = 64`
    /// (`ln 64 = 6 ln 2` needs only the cached `ln 2`), with
    /// `0 < E1(64) < e^{-64}/64 < 2^{-98}`.
    #[test]
    fn gamma_agrees_with_sweeney_series() {
        let w = 340u32;
        let mut acc = HPReal::zero(w);
        let mut npow = BigUint::one();
        let mut kfac = BigUint::one();
        let mut k = 1u64;
        loop {
            npow *= 64u32;
            kfac *= k;
            let den = BigInt::from(&kfac * k);
            let term = HPReal::from_ratio(&BigInt::from(npow.clone()), &den, w).unwrap();
            let done = k > 64 && term.abs_upper_le_pow2(-150);
            acc = if k % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
            if done {
                break;
            }
            k += 1;
            assert!(k < 500, "series did not reach the stopping bound");
        }
        let mut oracle = acc.sub(&hp::ln2(w).mul_i64(6));
        // E1(64) lies in (0, 2^-98): cover it plus the alternating tail.
        oracle.widen(BigUint::one() << (340 - 98));
        let g = euler_gamma(256).unwrap();
        assert!(oracle.consistent_with(&g));
        assert!(oracle.sub(&g).abs_upper_le_pow2(-96));
        let lo = HPReal::from_ratio(&BigInt::from(577), &BigInt::from(1000), 64).unwrap();
        let hi = HPReal::from_ratio(&BigInt::from(578), &BigInt::from(1000), 64).unwrap();
        assert!(lo.certainly_lt(&g) && g.certainly_lt(&hi));
    }

    #[test]
    fn zeta_prime_2_matches_reference_value() {
        let v = zeta_prime_2(128).unwrap().to_f64();
        assert!((v - (-0.937_548_254_315_843_8)).abs() < 1e-12, "got {v}");
    }

    #[test]
    fn constant_c_value_and_doubling() {
        let c = constant_c(128).unwrap();
        assert!((c.to_f64() - (-0.082_710_571_850_225_46)).abs() < 2e-15);
        let twice = zeta_prime_minus1(128).unwrap();
        assert_eq!(twice, c.mul_pow2(1));
        assert!((twice.to_f64() - (-0.165_421_143_700_450_9)).abs() < 4e-15);
        assert_eq!(d_zero(), rat(-1, 12));
    }

    /// The classical termwise series for c, summed literally with its
    /// integral tail bound, must bracket the production value:
    /// partial sums over-shoot (every omitted term is negative) by at most
    /// `(γ + ln 2πK)/(4π²K)`.
    #[test]
    fn constant_c_series_partial_sum_brackets() {
        let w = 200u32;
        let k_max = 800u64;
        let g = euler_gamma(160).unwrap().with_scale(w);
        let pi = hp::pi(w);
        let two_pi = pi.mul_pow2(1);
        let one = HPReal::one(w);
        let mut partial = HPReal::zero(w);
        for k in 1..=k_max {
            let tpk = two_pi.mul(&HPReal::from_u64(k, w));
            let num = one.sub(&g).sub(&tpk.ln().unwrap());
            partial = partial.add(&num.div(&tpk.powi(2)).unwrap());
        }
        let c = constant_c(128).unwrap().with_scale(w);
        assert!(c.certainly_lt(&partial), "omitted terms must be negative");
        let tp_k = two_pi.mul(&HPReal::from_u64(k_max, w));
        let bound = g
            .add(&tp_k.ln().unwrap())
            .div(&pi.powi(2).mul_i64(4).mul(&HPReal::from_u64(k_max, w)))
            .unwrap();
        assert!(partial.sub(&c).certainly_lt(&bound), "tail bound violated");
    }

    #[test]
    fn constant_c_routes_agree() {
        for prec in [64u32, 128, 256] {
            let c = constant_c(prec).unwrap();
            assert!(c.error_le_pow2(-i64::from(prec) + 4));
        }
        let q = constant_c_quadrature(96).unwrap();
        let s = constant_c_series(256).unwrap();
        assert!(q.consistent_with(&s));
        // The quadrature ball's own radius must honestly cover its distance
        // to the (much sharper) series value.
        assert!(q.sub(&s).abs_upper_le_pow2(-96 + 4));
    }

    #[test]
    fn gauss_nodes_integrate_known_functions() {
        let scale = 160u32;
        let nodes = gl_nodes(16, scale).unwrap();
        let mut sum_w = HPReal::zero(scale);
        let mut sum_x2 = HPReal::zero(scale);
        let mut sum_ex = HPReal::zero(scale);
        for (x, wt) in nodes.iter() {
            sum_w = sum_w.add(wt);
            sum_x2 = sum_x2.add(&wt.mul(&x.mul(x)));
            sum_ex = sum_ex.add(&wt.mul(&x.exp()));
        }
        assert!(sum_w.sub(&HPReal::from_u64(2, scale)).abs_upper_le_pow2(-140));
        let two_thirds = HPReal::from_ratio(&BigInt::from(2), &BigInt::from(3), scale).unwrap();
        assert!(sum_x2.sub(&two_thirds).abs_upper_le_pow2(-140));
        // ∫_{-1}^{1} e^x dx = e - 1/e; 16-node Gauss is exact to ~1e-40 here.
        let one = HPReal::one(scale);
        let reference = one.exp().sub(&one.neg().exp());
        assert!(sum_ex.sub(&reference).abs_upper_le_pow2(-100));
    }

    #[test]
    fn error_bounds_shrink_monotonically() {
        for f in [zeta3 as fn(u32) -> Result<HPReal>, euler_gamma, constant_c] {
            let mut prev: Option<i64> = None;
            for prec in [64u32, 128, 256] {
                let bound = f(prec).unwrap().error_bound_log2().unwrap();
                if let Some(p) = prev {
                    assert!(bound < p, "bound did not shrink at prec {prec}");
                }
                prev = Some(bound);
            }
        }
        // Value drift between precisions stays inside the coarser radius.
        let c128 = constant_c(128).unwrap();
        let c256 = constant_c(256).unwrap();
        assert!(c128.sub(&c256).abs_upper_le_pow2(-100));
    }

    /// Every claimed radius is honored against a reference computed at 4x
    /// the precision.
    #[test]
    fn error_bounds_honored_against_4x_reference() {
        type ConstantFn = fn(u32) -> Result<HPReal>;
        let fns: [(&str, ConstantFn); 4] = [
            ("zeta3", zeta3),
            ("gamma", euler_gamma),
            ("zeta_prime_2", zeta_prime_2),
            ("c", constant_c_series),
        ];
        for (name, f) in fns {
            for prec in [64u32, 128, 256] {
                let v = f(prec).unwrap();
                let reference = f(4 * prec).unwrap();
                assert!(v.consistent_with(&reference), "{name} at prec {prec}");
                assert!(
                    v.sub(&reference).abs_upper_le_pow2(-i64::from(prec) + 4),
                    "{name} radius vs 4x reference at prec {prec}"
                );
            }
        }
    }

    #[test]
    fn domain_and_precision_errors() {
        assert!(matches!(zeta_int(1, 128), Err(Error::Domain(_))));
        assert!(matches!(
            zeta3(32),
            Err(Error::PrecisionTooLow { got: 32, min: 64 })
        ));
        assert!(matches!(
            constant_c_quadrature(600),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn cached_constants_are_deterministic() {
        let a = zeta3(128).unwrap();
        let b = zeta3(128).unwrap();
        assert_eq!(a, b);
        let d = zeta3(128).unwrap().to_f64();
        assert!((d - 1.202_056_903_159_594).abs() < 1e-15);
        assert!(euler_gamma(128).unwrap().to_f64().to_bits()
            == euler_gamma(128).unwrap().to_f64().to_bits());
    }
}

