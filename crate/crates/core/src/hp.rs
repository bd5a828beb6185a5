//! Fixed-point ball arithmetic on big integers.
//!
//! An [`HPReal`] stores `mant * 2^(-scale)` together with an error radius
//! `err` in units of `2^(-scale)` ("ulps"). Every operation returns a ball
//! guaranteed to contain the exact real result for all inputs inside the
//! operand balls: additions are exact, multiplicative operations round the
//! mantissa and widen the radius conservatively, and the elementary
//! functions add a proven truncation bound for their series tails.
//!
//! This gives self-validating evaluation without an external
//! multiprecision dependency: if a final ball has radius `2^-k`, the ideal
//! value provably lies within `2^-k` of the returned mantissa. Operands at
//! different scales are aligned by exact upscaling, so mixing scales is
//! safe (if wasteful); callers normally pick one working scale per
//! computation and convert once at the end.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A binary fixed-point ball: `value = mant * 2^(-scale) +- err * 2^(-scale)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPReal {
    mant: BigInt,
    scale: u32,
    err: BigUint,
}

/// Rounds `a / 2^sh` to nearest (ties toward +infinity). Error <= 1/2 ulp.
fn round_shift(a: &BigInt, sh: u32) -> BigInt {
    if sh == 0 {
        return a.clone();
    }
    let half = BigInt::one() << (sh - 1);
    (a + half).div_floor(&(BigInt::one() << sh))
}

/// Rounds `a / b` (b > 0) to nearest, ties toward +infinity.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    debug_assert!(b.is_positive());
    let (q, r) = a.div_mod_floor(b);
    if &(r << 1) >= b {
        q + 1
    } else {
        q
    }
}

fn ceil_div_uint(a: &BigUint, b: &BigUint) -> BigUint {
    debug_assert!(!b.is_zero());
    (a + (b - BigUint::one())) / b
}

/// `m * 2^e` as f64, saturating to 0 / infinity outside the exponent range.
fn big_to_f64(m: &BigInt, e: i64) -> f64 {
    if m.is_zero() {
        return 0.0;
    }
    let bits = m.bits() as i64;
    let drop = (bits - 64).max(0);
    let top = (m >> drop).to_f64().unwrap_or(0.0);
    let shift = e + drop;
    if (-1000..=1000).contains(&shift) {
        top * (shift as f64).exp2()
    } else if shift < 0 {
        // Split so each factor stays representable.
        top * (-1000f64).exp2() * ((shift + 1000) as f64).exp2()
    } else {
        top * (1000f64).exp2() * ((shift - 1000) as f64).exp2()
    }
}

impl HPReal {
    // ----- constructors -----

    /// Exact zero at the given scale.
    pub fn zero(scale: u32) -> Self {
        HPReal { mant: BigInt::zero(), scale, err: BigUint::zero() }
    }

    /// Exact one at the given scale.
    pub fn one(scale: u32) -> Self {
        HPReal::from_u64(1, scale)
    }

    /// Exact integer.
    pub fn from_u64(v: u64, scale: u32) -> Self {
        HPReal { mant: BigInt::from(v) << scale, scale, err: BigUint::zero() }
    }

    /// Exact integer.
    pub fn from_i64(v: i64, scale: u32) -> Self {
        HPReal { mant: BigInt::from(v) << scale, scale, err: BigUint::zero() }
    }

    /// Exact integer.
    pub fn from_bigint(v: &BigInt, scale: u32) -> Self {
        HPReal { mant: v.clone() << scale, scale, err: BigUint::zero() }
    }

    /// `num / den` rounded to the scale; the ball is exact when the
    /// division terminates in binary, else one ulp wide.
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] when `den == 0`.
    pub fn from_ratio(num: &BigInt, den: &BigInt, scale: u32) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("division by zero in from_ratio".into()));
        }
        let (num, den) = if den.is_negative() { (-num, -den) } else { (num.clone(), den.clone()) };
        let shifted = num << scale;
        let (q, r) = shifted.div_mod_floor(&den);
        let (mant, err) = if r.is_zero() {
            (q, BigUint::zero())
        } else if (r.clone() << 1) >= den {
            (q + 1, BigUint::one())
        } else {
            (q, BigUint::one())
        };
        Ok(HPReal { mant, scale, err })
    }

    /// Ball constructed from raw parts (used by series code that tracks
    /// its own error budget).
    pub(crate) fn from_parts(mant: BigInt, scale: u32, err: BigUint) -> Self {
        HPReal { mant, scale, err }
    }

    /// Exact conversion of a finite f64 (every f64 is a dyadic rational).
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] for NaN or infinities.
    pub fn from_f64(v: f64, scale: u32) -> Result<Self> {
        if !v.is_finite() {
            return Err(Error::Domain(format!("cannot convert {v} to a ball")));
        }
        let r = num_rational::BigRational::from_float(v)
            .ok_or_else(|| Error::Domain(format!("cannot convert {v} to a ball")))?;
        HPReal::from_ratio(r.numer(), r.denom(), scale)
    }

    /// Widens the error radius by `extra` ulps (used when folding in a
    /// separately proven truncation bound).
    pub(crate) fn widen(&mut self, extra: BigUint) {
        self.err += extra;
    }

    /// The center of the ball with the radius dropped (for iterations that
    /// re-establish a rigorous bound at the end, e.g. Newton solves).
    pub(crate) fn midpoint(&self) -> HPReal {
        HPReal { mant: self.mant.clone(), scale: self.scale, err: BigUint::zero() }
    }

    // ----- accessors -----

    pub fn scale(&self) -> u32 {
        self.scale
    }

    /// Error radius in ulps of `2^(-scale)`.
    pub fn err_ulps(&self) -> &BigUint {
        &self.err
    }

    /// An exponent `e` with error radius `<= 2^e`, or `None` for exact
    /// values. Uses `err < 2^bits(err)`, so the bound is rigorous.
    pub fn error_bound_log2(&self) -> Option<i64> {
        if self.err.is_zero() {
            None
        } else {
            Some(self.err.bits() as i64 - self.scale as i64)
        }
    }

    /// True when the error radius is at most `2^e`.
    pub fn error_le_pow2(&self, e: i64) -> bool {
        let s = self.scale as i64 + e;
        if s < 0 {
            self.err.is_zero()
        } else {
            self.err <= (BigUint::one() << s as u64)
        }
    }

    /// Midpoint as f64 (diagnostics only; saturates far outside f64 range).
    pub fn to_f64(&self) -> f64 {
        big_to_f64(&self.mant, -(self.scale as i64))
    }

    /// Upper end of the ball as f64.
    pub fn upper_f64(&self) -> f64 {
        big_to_f64(&(&self.mant + BigInt::from(self.err.clone())), -(self.scale as i64))
    }

    /// Lower end of the ball as f64.
    pub fn lower_f64(&self) -> f64 {
        big_to_f64(&(&self.mant - BigInt::from(self.err.clone())), -(self.scale as i64))
    }

    /// True when the whole ball is strictly positive.
    pub fn certainly_positive(&self) -> bool {
        self.mant.is_positive() && self.mant.magnitude() > &self.err
    }

    /// True when the whole ball is strictly negative.
    pub fn certainly_negative(&self) -> bool {
        self.mant.is_negative() && self.mant.magnitude() > &self.err
    }

    /// True when every point of `self`'s ball is below every point of
    /// `other`'s.
    pub fn certainly_lt(&self, other: &HPReal) -> bool {
        let s = self.scale.max(other.scale);
        let a = self.with_scale(s);
        let b = other.with_scale(s);
        &a.mant + BigInt::from(a.err) < &b.mant - BigInt::from(b.err)
    }

    /// True when |value| + radius is certainly at most `2^e`.
    pub fn abs_upper_le_pow2(&self, e: i64) -> bool {
        let bound = self.mant.magnitude() + &self.err;
        let sh = e + i64::from(self.scale);
        if sh < 0 {
            return bound.is_zero();
        }
        bound <= (BigUint::one() << (sh as u64))
    }

    /// Integer endpoints `(lo, hi)` with `lo·2^-scale ≤ value ≤ hi·2^-scale`.
    pub fn bounds_at_scale(&self, scale: u32) -> (BigInt, BigInt) {
        let err = BigInt::from(self.err.clone());
        let lo = &self.mant - &err;
        let hi = &self.mant + &err;
        if scale >= self.scale {
            let sh = scale - self.scale;
            (lo << sh, hi << sh)
        } else {
            let d = BigInt::one() << (self.scale - scale);
            (lo.div_floor(&d), -(-hi).div_floor(&d))
        }
    }

    /// True when `other`'s midpoint lies inside `self`'s ball widened by
    /// `other`'s radius (i.e. the balls are consistent with equality).
    pub fn consistent_with(&self, other: &HPReal) -> bool {
        let s = self.scale.max(other.scale);
        let a = self.with_scale(s);
        let b = other.with_scale(s);
        (&a.mant - &b.mant).magnitude() <= &(&a.err + &b.err)
    }

    // ----- scale changes -----

    /// Same value at a new scale. Upscaling is exact; downscaling rounds
    /// and widens by at most 2 ulps of the new scale.
    pub fn with_scale(&self, scale: u32) -> Self {
        if scale == self.scale {
            self.clone()
        } else if scale > self.scale {
            let d = scale - self.scale;
            HPReal { mant: &self.mant << d, scale, err: &self.err << d }
        } else {
            let d = self.scale - scale;
            HPReal {
                mant: round_shift(&self.mant, d),
                scale,
                err: (&self.err >> d) + 2u32,
            }
        }
    }

    /// `self * 2^k` (exact in value; representation keeps the scale).
    pub fn mul_pow2(&self, k: i64) -> Self {
        if k >= 0 {
            HPReal { mant: &self.mant << k as u64, scale: self.scale, err: &self.err << k as u64 }
        } else {
            let d = (-k) as u32;
            HPReal {
                mant: round_shift(&self.mant, d),
                scale: self.scale,
                err: (&self.err >> d) + 2u32,
            }
        }
    }

    // ----- ring operations -----

    pub fn neg(&self) -> Self {
        HPReal { mant: -&self.mant, scale: self.scale, err: self.err.clone() }
    }

    pub fn abs(&self) -> Self {
        HPReal { mant: self.mant.abs(), scale: self.scale, err: self.err.clone() }
    }

    pub fn add(&self, rhs: &HPReal) -> Self {
        let s = self.scale.max(rhs.scale);
        let a = self.with_scale(s);
        let b = rhs.with_scale(s);
        HPReal { mant: a.mant + b.mant, scale: s, err: a.err + b.err }
    }

    pub fn sub(&self, rhs: &HPReal) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &HPReal) -> Self {
        let s = self.scale.max(rhs.scale);
        let a = self.with_scale(s);
        let b = rhs.with_scale(s);
        let prod = &a.mant * &b.mant;
        let mant = round_shift(&prod, s);
        // |XY - xy| <= |x| e_b + |y| e_a + e_a e_b, plus 1/2 ulp rounding.
        let cross = (a.mant.magnitude() + &a.err) * &b.err + b.mant.magnitude() * &a.err;
        let err = (cross >> s) + 2u32;
        HPReal { mant, scale: s, err }
    }

    /// Multiplication by an exact integer.
    pub fn mul_bigint(&self, k: &BigInt) -> Self {
        HPReal {
            mant: &self.mant * k,
            scale: self.scale,
            err: &self.err * k.magnitude(),
        }
    }

    /// Multiplication by an exact small integer.
    pub fn mul_i64(&self, k: i64) -> Self {
        self.mul_bigint(&BigInt::from(k))
    }

    /// Division by an exact positive integer.
    pub fn div_u64(&self, d: u64) -> Self {
        assert!(d != 0);
        let b = BigInt::from(d);
        let mant = round_div(&self.mant, &b);
        let err = ceil_div_uint(&self.err, &BigUint::from(d)) + BigUint::one();
        HPReal { mant, scale: self.scale, err }
    }

    /// # Errors
    ///
    /// [`Error::Domain`] when the divisor ball contains zero.
    pub fn div(&self, rhs: &HPReal) -> Result<Self> {
        let s = self.scale.max(rhs.scale);
        let a = self.with_scale(s);
        let b = rhs.with_scale(s);
        if b.mant.magnitude() <= &b.err {
            return Err(Error::Domain("division by a ball containing zero".into()));
        }
        let sign = if b.mant.is_negative() { -1 } else { 1 };
        let bm = b.mant.magnitude().clone();
        let num = &a.mant * sign;
        let mant = round_div(&(num << s), &BigInt::from(bm.clone()));
        // |X/Y - x/y| <= (e_a |y| + |x| e_b) / (|y| (|y| - e_b)) in value
        // units; convert to ulps by multiplying with 2^s.
        let prop_num = (&a.err * &bm + a.mant.magnitude() * &b.err) << s;
        let prop_den = &bm * (&bm - &b.err);
        let err = ceil_div_uint(&prop_num, &prop_den) + 2u32;
        Ok(HPReal { mant, scale: s, err })
    }

    /// Integer power by binary exponentiation.
    pub fn powi(&self, k: u32) -> Self {
        let mut result = HPReal::one(self.scale);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    // ----- elementary functions -----

    /// Square root.
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] when the ball midpoint is negative.
    pub fn sqrt(&self) -> Result<Self> {
        if self.mant.is_negative() {
            return Err(Error::Domain("sqrt of a negative value".into()));
        }
        let s = self.scale;
        let m = self.mant.magnitude();
        if m <= &self.err {
            // Ball touches zero: cover [0, sqrt(upper)].
            let upper = (m + &self.err) << s;
            let r = upper.sqrt();
            return Ok(HPReal { mant: BigInt::from(r.clone()), scale: s, err: r + 2u32 });
        }
        let y = (m << s).sqrt();
        // |sqrt(X) - sqrt(x)| <= e 2^-s / sqrt(x) <= e 2^-s / (y 2^-s) = e/y.
        let prop = ceil_div_uint(&(&self.err << s), &y);
        Ok(HPReal { mant: BigInt::from(y), scale: s, err: prop + 2u32 })
    }

    /// Exponential. Argument is reduced by `k = round(x / ln 2)`, the
    /// remainder summed by Taylor series with a proven tail bound, and the
    /// result rescaled by `2^k`.
    pub fn exp(&self) -> Self {
        let s = self.scale;
        let w = s + 64;
        let x = self.with_scale(w);
        let l2 = ln2(w);
        let k = (self.to_f64() / std::f64::consts::LN_2).round() as i64;
        let r = x.sub(&l2.mul_i64(k));
        debug_assert!(r.upper_f64().abs() < 0.7, "exp argument reduction drifted");
        let mut sum = HPReal::one(w);
        let mut term = HPReal::one(w);
        let mut j = 1u64;
        loop {
            term = term.mul(&r).div_u64(j);
            sum = sum.add(&term);
            let top = term.mant.magnitude() + &term.err;
            if top <= BigUint::from(4u32) {
                // |r| < 0.7 so the true tail is < 4 * last-term bound.
                sum.err += top * 4u32 + BigUint::from(4u32);
                break;
            }
            j += 1;
            assert!(j < 10_000, "exp series failed to converge");
        }
        sum.mul_pow2(k).with_scale(s)
    }

    /// Natural logarithm via `ln x = 2 atanh((y-1)/(y+1)) + k ln 2` with
    /// `y = x 2^-k` in `[1, 2)`.
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] unless the whole ball is strictly positive.
    pub fn ln(&self) -> Result<Self> {
        if !self.certainly_positive() {
            return Err(Error::Domain("ln of a ball not strictly positive".into()));
        }
        let s = self.scale;
        let w = s + 64;
        let x = self.with_scale(w);
        let k = x.mant.bits() as i64 - 1 - w as i64;
        let y = x.mul_pow2(-k);
        let num = y.sub(&HPReal::one(w));
        let den = y.add(&HPReal::one(w));
        let u = num.div(&den).expect("den >= 2");
        // atanh(u) = sum u^(2j+1)/(2j+1), |u| < 1/3 so the tail after a
        // term t is < |t|/8 * 9/8 < |t|.
        let u2 = u.mul(&u);
        let mut pow = u.clone();
        let mut sum = u.clone();
        let mut j = 1u64;
        loop {
            pow = pow.mul(&u2);
            let term = pow.div_u64(2 * j + 1);
            sum = sum.add(&term);
            let top = term.mant.magnitude() + &term.err;
            if top <= BigUint::from(4u32) {
                sum.err += top + BigUint::from(4u32);
                break;
            }
            j += 1;
            assert!(j < 100_000, "ln series failed to converge");
        }
        let result = sum.mul_i64(2).add(&ln2(w).mul_i64(k));
        Ok(result.with_scale(s))
    }

    /// `self^(num/den)` for a positive ball, via `exp((num/den) ln self)`.
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] from [`Self::ln`] or when `den == 0`.
    pub fn pow_ratio(&self, num: i64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Domain("zero denominator in pow_ratio".into()));
        }
        let l = self.ln()?;
        Ok(l.mul_i64(num).div_u64(den).exp())
    }

    // ----- rounding & formatting -----

    /// `floor(value)` when every point of the ball has the same floor.
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] when the ball straddles an integer.
    pub fn floor_checked(&self) -> Result<BigInt> {
        let lo = &self.mant - BigInt::from(self.err.clone());
        let hi = &self.mant + BigInt::from(self.err.clone());
        let f_lo = lo >> self.scale;
        let f_hi = hi >> self.scale;
        if f_lo == f_hi {
            Ok(f_lo)
        } else {
            Err(Error::Domain(format!(
                "floor is ambiguous: ball near {} spans an integer",
                self.to_f64()
            )))
        }
    }

    /// Nearest integer, ties to even, when the whole ball rounds the same
    /// way.
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] when the ball straddles a rounding boundary.
    pub fn round_half_even_checked(&self) -> Result<BigInt> {
        let den = BigInt::one() << self.scale;
        let lo = &self.mant - BigInt::from(self.err.clone());
        let hi = &self.mant + BigInt::from(self.err.clone());
        let r_lo = round_half_even_div(&lo, &den);
        let r_hi = round_half_even_div(&hi, &den);
        if r_lo == r_hi {
            Ok(r_lo)
        } else {
            Err(Error::Domain(format!(
                "rounding is ambiguous: ball near {} spans a half-integer",
                self.to_f64()
            )))
        }
    }

    /// Decimal rendering of the midpoint with `digits` fractional digits,
    /// rounded to nearest.
    pub fn to_decimal(&self, digits: usize) -> String {
        let den = BigInt::one() << self.scale;
        let scaled = &self.mant * BigInt::from(10u32).pow(digits as u32);
        let q = round_div(&(scaled << 1), &den);
        // q is now 2x the wanted value rounded at half-ulp granularity;
        // fold back with round-half-up semantics.
        let q = round_shift(&q, 1);
        let neg = q.is_negative();
        let digits_str = q.magnitude().to_string();
        let padded = if digits_str.len() <= digits {
            format!("{}{}", "0".repeat(digits + 1 - digits_str.len()), digits_str)
        } else {
            digits_str
        };
        let split = padded.len() - digits;
        let (int_part, frac_part) = padded.split_at(split);
        let body = if digits == 0 {
            int_part.to_string()
        } else {
            format!("{int_part}.{frac_part}")
        };
        if neg {
            format!("-{body}")
        } else {
            body
        }
    }
}

/// Round-half-even of `a / den` for positive `den`.
fn round_half_even_div(a: &BigInt, den: &BigInt) -> BigInt {
    let (q, r) = a.div_mod_floor(den);
    let twice = r << 1;
    if &twice < den {
        q
    } else if &twice > den {
        q + 1
    } else if q.is_even() {
        q
    } else {
        q + 1
    }
}

// ----- shared constants -----

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Key {
    Pi,
    Ln2,
    Ln10,
    HalfLn3,
}

fn cache() -> &'static Mutex<HashMap<(Key, u32), HPReal>> {
    static CACHE: OnceLock<Mutex<HashMap<(Key, u32), HPReal>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached(key: Key, scale: u32, compute: impl FnOnce() -> HPReal) -> HPReal {
    if let Some(v) = cache().lock().unwrap().get(&(key, scale)) {
        return v.clone();
    }
    let v = compute();
    cache().lock().unwrap().insert((key, scale), v.clone());
    v
}

/// `arctan(1/q)` at the given scale by the alternating reciprocal series,
/// in pure integer arithmetic. Returns (mantissa, error in ulps).
fn atan_recip_raw(q: u64, scale: u32) -> (BigInt, BigUint) {
    let q2 = BigInt::from(q) * BigInt::from(q);
    let mut pow = (BigInt::one() << scale) / BigInt::from(q);
    let mut sum = pow.clone();
    let mut k = 1u64;
    let mut terms = 1u64;
    loop {
        pow = &pow / &q2;
        let term = &pow / BigInt::from(2 * k + 1);
        if term.is_zero() {
            break;
        }
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
        terms += 1;
    }
    // Each floor division loses < 1 ulp; the dropped alternating tail is
    // below the first omitted term, itself < 1 ulp.
    (sum, BigUint::from(2 * terms + 2))
}

/// `atanh(1/q)` at the given scale (q >= 2), pure integer arithmetic.
fn atanh_recip_raw(q: u64, scale: u32) -> (BigInt, BigUint) {
    let q2 = BigInt::from(q) * BigInt::from(q);
    let mut pow = (BigInt::one() << scale) / BigInt::from(q);
    let mut sum = pow.clone();
    let mut k = 1u64;
    let mut terms = 1u64;
    loop {
        pow = &pow / &q2;
        let term = &pow / BigInt::from(2 * k + 1);
        if term.is_zero() {
            break;
        }
        sum += term;
        k += 1;
        terms += 1;
    }
    // Geometric tail with ratio 1/q^2 <= 1/4 is under 2 ulps.
    (sum, BigUint::from(2 * terms + 4))
}

/// pi from the Machin identity `pi = 16 arctan(1/5) - 4 arctan(1/239)`.
pub fn pi(scale: u32) -> HPReal {
    cached(Key::Pi, scale, || {
        let w = scale + 32;
        let (a5, e5) = atan_recip_raw(5, w);
        let (a239, e239) = atan_recip_raw(239, w);
        let mant = a5 * 16 - a239 * 4;
        let err = e5 * 16u32 + e239 * 4u32;
        HPReal::from_parts(mant, w, err).with_scale(scale)
    })
}

/// `ln 2 = 2 atanh(1/3)`.
pub fn ln2(scale: u32) -> HPReal {
    cached(Key::Ln2, scale, || {
        let w = scale + 32;
        let (a, e) = atanh_recip_raw(3, w);
        HPReal::from_parts(a * 2, w, e * 2u32).with_scale(scale)
    })
}

/// `(ln 3)/2 = atanh(1/2)`.
pub fn half_ln3(scale: u32) -> HPReal {
    cached(Key::HalfLn3, scale, || {
        let w = scale + 32;
        let (a, e) = atanh_recip_raw(2, w);
        HPReal::from_parts(a, w, e).with_scale(scale)
    })
}

/// `ln 10 = 3 ln 2 + 2 atanh(1/9)` (from `10 = 8 * 10/8`).
pub fn ln10(scale: u32) -> HPReal {
    cached(Key::Ln10, scale, || {
        let w = scale + 32;
        let l2 = ln2(w);
        let (a9, e9) = atanh_recip_raw(9, w);
        l2.mul_i64(3).add(&HPReal::from_parts(a9 * 2, w, e9 * 2u32)).with_scale(scale)
    })
}
