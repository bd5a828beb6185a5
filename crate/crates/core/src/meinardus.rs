//! Leading asymptotics for product generating functions.
//!
//! For a generating function `F(x) = prod_j (1 - x^j)^{-a_j}` whose Dirichlet
//! series `D(s) = sum_j a_j j^{-s}` has a single simple pole at `s = alpha`
//! with residue `A`, the coefficient of `x^n` grows like
//!
//! ```text
//! C * n^K * exp( n^{alpha/(alpha+1)} * (1 + 1/alpha) * [A G(alpha+1) Z(alpha+1)]^{1/(alpha+1)} )
//! ```
//!
//! where `G` is the gamma function, `Z` the Riemann zeta function, and
//!
//! ```text
//! C = e^{D'(0)} * [2 pi (1+alpha)]^{-1/2} * [A G(alpha+1) Z(alpha+1)]^{(1 - 2 D(0)) / (2 + 2 alpha)}
//! K = (D(0) - 1 - alpha/2) / (1 + alpha)
//! ```
//!
//! The error exponent is `K1 = alpha/(alpha+1) * min(C0/alpha - delta/4, 1/2 - delta)`.
//!
//! Everything here is evaluated in ball arithmetic ([`HPReal`]) except `K` and
//! `K1`, which are exact rationals.  The module also provides the specialised
//! formula for plane partitions with a selectable leading constant
//! ([`wright_ln`]) and a fixed-point renderer for huge values
//! ([`AsymptoticValue`]).

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::constants::{self, MIN_PREC};
use crate::hp::{self, HPReal};
use crate::{Error, Result};

/// Working guard bits added on top of the requested output precision.
const GUARD: u32 = 64;

/// Choice of the constant prefactor `gamma_0` in the plane-partition formula.
///
/// The original published value was `1`; the corrected value is `3^{-1/2}`.
/// Both are kept so the discrepancy can be reproduced and measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WrightGamma0 {
    /// `gamma_0 = 1` (the uncorrected published constant).
    ClaimedOne,
    /// `gamma_0 = 3^{-1/2}` (the corrected constant).
    CorrectedInvSqrt3,
}

impl WrightGamma0 {
    /// Stable lowercase name, used by the command-line interface.
    pub fn as_str(self) -> &'static str {
        match self {
            WrightGamma0::ClaimedOne => "one",
            WrightGamma0::CorrectedInvSqrt3 => "corrected",
        }
    }
}

/// Inputs of the asymptotic theorem for one generating function.
///
/// `alpha` is restricted to positive integers so that `G(alpha+1)` is an exact
/// factorial and `Z(alpha+1)` can be evaluated by the integer-argument zeta
/// routine; the two instances of interest (`alpha = 1, 2`) satisfy this.
#[derive(Debug, Clone)]
pub struct MeinardusParams {
    alpha: u32,
    a: BigRational,
    d0: BigRational,
    d0_prime: HPReal,
    c0: BigRational,
    delta: BigRational,
}

impl MeinardusParams {
    /// Builds a parameter set, validating every field.
    ///
    /// Requirements: `alpha >= 1`, `a > 0`, `0 < c0 < 1`, `0 < delta < 1/2`.
    pub fn new(
        alpha: u32,
        a: BigRational,
        d0: BigRational,
        d0_prime: HPReal,
        c0: BigRational,
        delta: BigRational,
    ) -> Result<Self> {
        if alpha == 0 {
            return Err(Error::InvalidParams("alpha must be a positive integer".into()));
        }
        if !a.is_positive() {
            return Err(Error::InvalidParams("residue A must be positive".into()));
        }
        let one = BigRational::one();
        if !c0.is_positive() || c0 >= one {
            return Err(Error::InvalidParams("C0 must lie in (0, 1)".into()));
        }
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        if !delta.is_positive() || delta >= half {
            return Err(Error::InvalidParams("delta must lie in (0, 1/2)".into()));
        }
        Ok(MeinardusParams { alpha, a, d0, d0_prime, c0, delta })
    }

    /// Replaces `delta`, keeping `C0 = 1 - delta/2` in sync.
    pub fn with_delta(mut self, delta: BigRational) -> Result<Self> {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        if !delta.is_positive() || delta >= half {
            return Err(Error::InvalidParams("delta must lie in (0, 1/2)".into()));
        }
        self.c0 = BigRational::one() - &delta / BigRational::from_integer(BigInt::from(2));
        self.delta = delta;
        Ok(self)
    }

    /// Pole location `alpha` of the Dirichlet series.
    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    /// Residue `A` at the pole.
    pub fn a(&self) -> &BigRational {
        &self.a
    }

    /// `D(0)`.
    pub fn d0(&self) -> &BigRational {
        &self.d0
    }

    /// `D'(0)` as a ball.
    pub fn d0_prime(&self) -> &HPReal {
        &self.d0_prime
    }

    /// Growth bound parameter `C0`.
    pub fn c0(&self) -> &BigRational {
        &self.c0
    }

    /// Slack parameter `delta`.
    pub fn delta(&self) -> &BigRational {
        &self.delta
    }
}

/// Parameters for plane partitions: `a_j = j`, so `D(s) = Z(s-1)`.
///
/// Here `alpha = 2`, `A = 1`, `D(0) = Z(-1) = -1/12` and `D'(0) = Z'(-1) = 2c`
/// with `c` the Glaisher-type integral constant; `d0_prime` is computed at
/// `prec` bits.  The defaults `delta = 1/100`, `C0 = 1 - delta/2` satisfy the
/// theorem's constraints with room to spare.
pub fn plane_partition_params(prec: u32) -> Result<MeinardusParams> {
    let d0_prime = constants::zeta_prime_minus1(prec)?;
    MeinardusParams::new(
        2,
        BigRational::one(),
        BigRational::new(BigInt::from(-1), BigInt::from(12)),
        d0_prime,
        BigRational::new(BigInt::from(199), BigInt::from(200)),
        BigRational::new(BigInt::one(), BigInt::from(100)),
    )
}

/// Parameters for ordinary partitions: `a_j = 1`, so `D(s) = Z(s)`.
///
/// Here `alpha = 1`, `A = 1`, `D(0) = Z(0) = -1/2` and
/// `D'(0) = Z'(0) = -ln(2 pi)/2`.
pub fn ordinary_partition_params(prec: u32) -> Result<MeinardusParams> {
    if prec < MIN_PREC {
        return Err(Error::PrecisionTooLow { got: prec, min: MIN_PREC });
    }
    let w = prec + GUARD;
    let ln_2pi = hp::pi(w).mul_pow2(1).ln()?;
    let d0_prime = ln_2pi.mul_pow2(-1).neg().with_scale(prec);
    MeinardusParams::new(
        1,
        BigRational::one(),
        BigRational::new(BigInt::from(-1), BigInt::from(2)),
        d0_prime,
        BigRational::new(BigInt::from(199), BigInt::from(200)),
        BigRational::new(BigInt::one(), BigInt::from(100)),
    )
}

/// The three constants produced by the asymptotic theorem.
#[derive(Debug, Clone)]
pub struct MeinardusConstants {
    /// Multiplicative constant `C` (a ball at the requested precision).
    pub c: HPReal,
    /// Polynomial-correction exponent `K` (exact).
    pub k: BigRational,
    /// Error-term exponent `K1` (exact).
    pub k1: BigRational,
}

fn hp_from_ratio(r: &BigRational, scale: u32) -> Result<HPReal> {
    HPReal::from_ratio(r.numer(), r.denom(), scale)
}

/// `A * G(alpha+1) * Z(alpha+1)` at working scale `w`, plus its natural log.
fn pole_base(params: &MeinardusParams, prec: u32, w: u32) -> Result<(HPReal, HPReal)> {
    let z = constants::zeta_int(params.alpha + 1, prec + 48)?.with_scale(w);
    let fact = constants::factorial(u64::from(params.alpha));
    let base = hp_from_ratio(&params.a, w)?
        .mul(&HPReal::from_bigint(&BigInt::from(fact), w))
        .mul(&z);
    let ln_base = base.ln()?;
    Ok((base, ln_base))
}

/// `ln C` for the given parameters, at working scale `w`.
fn ln_c(params: &MeinardusParams, prec: u32, w: u32) -> Result<HPReal> {
    let (_, ln_base) = pole_base(params, prec, w)?;
    let alpha = i64::from(params.alpha);
    // (1 - 2 D(0)) / (2 + 2 alpha)
    let two = BigRational::from_integer(BigInt::from(2));
    let exp_ratio = (BigRational::one() - &two * &params.d0)
        / BigRational::from_integer(BigInt::from(2 + 2 * alpha));
    let ln_2pi_a1 = hp::pi(w).mul_pow2(1).mul_i64(alpha + 1).ln()?;
    Ok(params
        .d0_prime
        .with_scale(w)
        .sub(&ln_2pi_a1.mul_pow2(-1))
        .add(&hp_from_ratio(&exp_ratio, w)?.mul(&ln_base)))
}

/// Evaluates `C`, `K` and `K1` for one parameter set.
///
/// `C` is returned as a ball at scale `prec`; `K` and `K1` are exact
/// rationals.  Fails with [`Error::InvalidParams`] if the parameters make
/// `K1` nonpositive (the theorem then gives no power saving).
pub fn meinardus_constants(params: &MeinardusParams, prec: u32) -> Result<MeinardusConstants> {
    if prec < MIN_PREC {
        return Err(Error::PrecisionTooLow { got: prec, min: MIN_PREC });
    }
    let w = prec + GUARD;
    let alpha = i64::from(params.alpha);

    // K = (D(0) - 1 - alpha/2) / (1 + alpha)
    let k = (&params.d0
        - BigRational::one()
        - BigRational::new(BigInt::from(alpha), BigInt::from(2)))
        / BigRational::from_integer(BigInt::from(1 + alpha));

    // K1 = alpha/(alpha+1) * min(C0/alpha - delta/4, 1/2 - delta)
    let m1 = &params.c0 / BigRational::from_integer(BigInt::from(alpha))
        - &params.delta / BigRational::from_integer(BigInt::from(4));
    let m2 = BigRational::new(BigInt::one(), BigInt::from(2)) - &params.delta;
    let k1 = BigRational::new(BigInt::from(alpha), BigInt::from(alpha + 1)) * m1.min(m2);
    if !k1.is_positive() {
        return Err(Error::InvalidParams(
            "parameters give a nonpositive error exponent K1".into(),
        ));
    }

    let c = ln_c(params, prec, w)?.exp().with_scale(prec);
    Ok(MeinardusConstants { c, k, k1 })
}

/// Natural log of the asymptotic main term at `n`.
///
/// ```text
/// ln C + K ln n + n^{alpha/(alpha+1)} (1 + 1/alpha) [A G(alpha+1) Z(alpha+1)]^{1/(alpha+1)}
/// ```
pub fn asymptotic_ln(params: &MeinardusParams, n: u64, prec: u32) -> Result<HPReal> {
    if prec < MIN_PREC {
        return Err(Error::PrecisionTooLow { got: prec, min: MIN_PREC });
    }
    if n == 0 {
        return Err(Error::InvalidParams("asymptotic main term needs n >= 1".into()));
    }
    let w = prec + GUARD;
    let alpha = i64::from(params.alpha);

    let k = (&params.d0
        - BigRational::one()
        - BigRational::new(BigInt::from(alpha), BigInt::from(2)))
        / BigRational::from_integer(BigInt::from(1 + alpha));

    let (base, _) = pole_base(params, prec, w)?;
    let n_hp = HPReal::from_u64(n, w);
    let n_pow = n_hp.pow_ratio(alpha, (alpha + 1) as u64)?;
    let growth = n_pow
        .mul(&hp_from_ratio(
            &BigRational::new(BigInt::from(alpha + 1), BigInt::from(alpha)),
            w,
        )?)
        .mul(&base.pow_ratio(1, (alpha + 1) as u64)?);

    Ok(ln_c(params, prec, w)?
        .add(&hp_from_ratio(&k, w)?.mul(&n_hp.ln()?))
        .add(&growth)
        .with_scale(prec))
}

/// Base-10 log of the asymptotic main term at `n`.
pub fn asymptotic_log10(params: &MeinardusParams, n: u64, prec: u32) -> Result<HPReal> {
    let w = prec + GUARD;
    asymptotic_ln(params, n, prec + 32)?
        .with_scale(w)
        .div(&hp::ln10(w))
        .map(|v| v.with_scale(prec))
}

/// Natural log of the plane-partition approximation at `n`:
///
/// ```text
/// ln gamma_0 + (7/36) ln Z(3) - (11/36) ln 2 - (1/2) ln pi - (25/36) ln n
///   + 3 Z(3)^{1/3} (n/2)^{2/3} + 2 c
/// ```
///
/// Both `gamma_0` choices share the same base sum, so the two results differ
/// by exactly `ln(3)/2` in the midpoint (useful for consistency checks).
pub fn wright_ln(n: u64, gamma0: WrightGamma0, prec: u32) -> Result<HPReal> {
    if prec < MIN_PREC {
        return Err(Error::PrecisionTooLow { got: prec, min: MIN_PREC });
    }
    if n == 0 {
        return Err(Error::InvalidParams("approximation needs n >= 1".into()));
    }
    let w = prec + GUARD;
    let z3 = constants::zeta3(prec + 48)?.with_scale(w);
    let ln_z3 = z3.ln()?;
    let n_hp = HPReal::from_u64(n, w);

    let mut base = ln_z3.mul_i64(7).div_u64(36);
    base = base.sub(&hp::ln2(w).mul_i64(11).div_u64(36));
    base = base.sub(&hp::pi(w).ln()?.mul_pow2(-1));
    base = base.sub(&n_hp.ln()?.mul_i64(25).div_u64(36));
    let growth = z3
        .pow_ratio(1, 3)?
        .mul_i64(3)
        .mul(&n_hp.mul_pow2(-1).pow_ratio(2, 3)?);
    base = base.add(&growth);
    base = base.add(&constants::zeta_prime_minus1(prec + 48)?.with_scale(w));

    // Round the shared base first, then subtract ln(3)/2 at the output scale:
    // the two gamma_0 variants then differ by that constant exactly, mantissa
    // for mantissa, instead of only up to a rounding ulp.
    let base = base.with_scale(prec);
    Ok(match gamma0 {
        WrightGamma0::ClaimedOne => base,
        WrightGamma0::CorrectedInvSqrt3 => base.sub(&hp::half_ln3(prec)),
    })
}

/// Base-10 log of the plane-partition approximation.
pub fn wright_log10(n: u64, gamma0: WrightGamma0, prec: u32) -> Result<HPReal> {
    let w = prec + GUARD;
    wright_ln(n, gamma0, prec + 32)?
        .with_scale(w)
        .div(&hp::ln10(w))
        .map(|v| v.with_scale(prec))
}

/// The plane-partition approximation at `n`, rendered as a 5-digit value.
pub fn wright_leading(n: u64, gamma0: WrightGamma0, prec: u32) -> Result<AsymptoticValue> {
    AsymptoticValue::from_log10(wright_log10(n, gamma0, prec)?)
}

/// A positive value known through its base-10 logarithm, normalised as
/// `mantissa * 10^exponent` with a 5-digit integer mantissa.
#[derive(Debug, Clone)]
pub struct AsymptoticValue {
    log10_value: HPReal,
    mantissa: u64,
    exponent: i64,
}

impl AsymptoticValue {
    /// Normalises a base-10 logarithm into a 5-digit mantissa and exponent.
    ///
    /// Fails if the ball is too wide to pin down the digits (straddles a
    /// rounding boundary) or the exponent does not fit in `i64`.
    pub fn from_log10(log10_value: HPReal) -> Result<Self> {
        let fl = log10_value.floor_checked()?;
        let mut exponent = fl
            .to_i64()
            .ok_or_else(|| Error::Domain("decimal exponent out of range".into()))?
            .checked_sub(4)
            .ok_or_else(|| Error::Domain("decimal exponent out of range".into()))?;
        let w = log10_value.scale().max(96);
        let frac = log10_value
            .with_scale(w)
            .sub(&HPReal::from_bigint(&fl, w));
        let m_real = frac
            .add(&HPReal::from_u64(4, w))
            .mul(&hp::ln10(w))
            .exp();
        let mut mantissa = m_real
            .round_half_even_checked()?
            .to_u64()
            .ok_or_else(|| Error::Domain("mantissa out of range".into()))?;
        if mantissa == 100_000 {
            mantissa = 10_000;
            exponent += 1;
        }
        if !(10_000..=99_999).contains(&mantissa) {
            return Err(Error::Domain(format!("normalised mantissa {mantissa} out of range")));
        }
        Ok(AsymptoticValue { log10_value, mantissa, exponent })
    }

    /// The underlying base-10 logarithm.
    pub fn log10_value(&self) -> &HPReal {
        &self.log10_value
    }

    /// Normalised 5-digit mantissa in `[10000, 99999]`.
    pub fn mantissa(&self) -> u64 {
        self.mantissa
    }

    /// Exponent paired with the 5-digit mantissa.
    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    /// Integer `round(value / 10^exponent)` for a caller-chosen exponent.
    ///
    /// Used to align a cell of a comparison table with the exponent of a
    /// reference column; the result then has more or fewer than 5 digits.
    pub fn mantissa_for_exponent(&self, exponent: i64) -> Result<u64> {
        let w = self.log10_value.scale().max(96);
        let d = self
            .log10_value
            .with_scale(w)
            .sub(&HPReal::from_i64(exponent, w));
        if d.upper_f64() > 18.5 {
            return Err(Error::InvalidParams(
                "aligned mantissa would exceed 18 digits".into(),
            ));
        }
        d.mul(&hp::ln10(w))
            .exp()
            .round_half_even_checked()?
            .to_u64()
            .ok_or_else(|| Error::Domain("aligned mantissa out of range".into()))
    }

    /// Renders the value the way the comparison table prints it.
    ///
    /// Positive exponents give `"dd ddd × 10^e"` (digit groups of three,
    /// separated by ASCII spaces); exponent zero gives the grouped digits
    /// alone; negative exponents give a plain decimal such as `"910.69"`.
    pub fn render(&self) -> String {
        let digits = self.mantissa.to_string();
        if self.exponent > 0 {
            format!("{} \u{d7} 10^{}", group_digits(&digits), self.exponent)
        } else if self.exponent == 0 {
            group_digits(&digits)
        } else {
            let point = 5 + self.exponent;
            if point > 0 {
                let p = point as usize;
                format!("{}.{}", &digits[..p], &digits[p..])
            } else {
                format!("0.{}{}", "0".repeat((-point) as usize), digits)
            }
        }
    }

    /// Like [`render`](Self::render) but with a caller-chosen exponent.
    pub fn render_for_exponent(&self, exponent: i64) -> Result<String> {
        let m = self.mantissa_for_exponent(exponent)?;
        if exponent > 0 {
            Ok(format!("{} \u{d7} 10^{}", group_digits(&m.to_string()), exponent))
        } else if exponent == 0 {
            Ok(group_digits(&m.to_string()))
        } else {
            let digits = m.to_string();
            let point = digits.len() as i64 + exponent;
            if point > 0 {
                let p = point as usize;
                Ok(format!("{}.{}", &digits[..p], &digits[p..]))
            } else {
                Ok(format!("0.{}{}", "0".repeat((-point) as usize), digits))
            }
        }
    }
}

/// Inserts an ASCII space between digit groups of three, from the right.
fn group_digits(digits: &str) -> String {
    let bytes = digits.as_bytes();
    let mut out = String::with_capacity(digits.len() + digits.len() / 3);
    let lead = bytes.len() % 3;
    for (i, b) in bytes.iter().enumerate() {
        if i > 0 && i % 3 == lead % 3 {
            out.push(' ');
        }
        out.push(*b as char);
    }
    out
}

/// Leading digits of an exact nonnegative integer as `(mantissa, exponent)`.
///
/// Values up to five digits are returned whole with exponent `0`; larger
/// ones are rounded (half to even) to a 5-digit mantissa.
pub fn exact_leading_parts(value: &BigUint) -> (u64, i64) {
    let s = value.to_string();
    if s.len() <= 5 {
        return (s.parse().expect("decimal digits"), 0);
    }
    let mut mantissa: u64 = s[..5].parse().expect("five decimal digits");
    let rest = &s.as_bytes()[5..];
    let mut exponent = (s.len() - 5) as i64;
    let round_up = match rest[0] {
        b'0'..=b'4' => false,
        b'6'..=b'9' => true,
        _ => {
            if rest[1..].iter().any(|&b| b != b'0') {
                true
            } else {
                mantissa % 2 == 1
            }
        }
    };
    if round_up {
        mantissa += 1;
        if mantissa == 100_000 {
            mantissa = 10_000;
            exponent += 1;
        }
    }
    (mantissa, exponent)
}

/// Renders an exact nonnegative integer the way the comparison table does.
///
/// Values up to five digits are printed in full; larger ones are rounded
/// (half to even) to a 5-digit mantissa and printed as `"dd ddd × 10^e"`.
pub fn render_exact(value: &BigUint) -> String {
    let (mantissa, exponent) = exact_leading_parts(value);
    if exponent == 0 {
        return value.to_string();
    }
    format!("{} \u{d7} 10^{}", group_digits(&mantissa.to_string()), exponent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::plane_partition_table;
    use num_traits::Zero;

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn exact_exponents_for_both_instances() {
        let plane = plane_partition_params(96).unwrap();
        let c = meinardus_constants(&plane, 96).unwrap();
        assert_eq!(c.k, ratio(-25, 36));
        assert_eq!(c.k1, ratio(49, 150));

        let ordinary = ordinary_partition_params(96).unwrap();
        let c = meinardus_constants(&ordinary, 96).unwrap();
        assert_eq!(c.k, ratio(-1, 1));
        // alpha = 1: K1 = (1/2) * min(C0 - delta/4, 1/2 - delta) = (1/2)(1/2 - 1/100)
        assert_eq!(c.k1, ratio(49, 200));
    }

    #[test]
    fn k1_approaches_one_third_as_delta_shrinks() {
        // With C0 = 1 - delta/2 and alpha = 2 the binding branch is
        // 1/2 - delta (the other is 1/2 - delta/2), so K1 = 1/3 - 2 delta/3.
        for e in [2u32, 6, 12] {
            let delta = BigRational::new(BigInt::one(), BigInt::from(10u64.pow(e)));
            let params = plane_partition_params(96).unwrap().with_delta(delta.clone()).unwrap();
            let c = meinardus_constants(&params, 96).unwrap();
            let expect = ratio(1, 3) - ratio(2, 3) * &delta;
            assert_eq!(c.k1, expect);
            assert!(c.k1 < ratio(1, 3));
        }
    }

    #[test]
    fn plane_constant_matches_closed_form() {
        // C = 2^{-11/36} (3 pi)^{-1/2} Z(3)^{7/36} e^{2c}
        let prec = 256;
        let w = prec + 64;
        let params = plane_partition_params(prec).unwrap();
        let generic = meinardus_constants(&params, prec).unwrap().c;

        let z3 = constants::zeta3(prec + 48).unwrap().with_scale(w);
        let closed = z3
            .pow_ratio(7, 36)
            .unwrap()
            .mul(&hp::ln2(w).mul_i64(-11).div_u64(36).exp())
            .mul(&hp::pi(w).mul_i64(3).pow_ratio(-1, 2).unwrap())
            .mul(&constants::zeta_prime_minus1(prec + 48).unwrap().with_scale(w).exp())
            .with_scale(prec);

        assert!(generic.consistent_with(&closed));
        assert!(generic.sub(&closed).abs_upper_le_pow2(-i64::from(prec) + 8));
        // Sanity: the plane-partition constant is about 0.23.
        let mid = generic.to_f64();
        assert!((0.22..0.24).contains(&mid), "C = {mid}");
    }

    #[test]
    fn ordinary_constant_matches_closed_form() {
        // C = 1/(4 sqrt 3) = 48^{-1/2}
        let prec = 192;
        let params = ordinary_partition_params(prec).unwrap();
        let generic = meinardus_constants(&params, prec).unwrap().c;
        let closed = HPReal::one(prec + 32)
            .div(&HPReal::from_u64(48, prec + 32).sqrt().unwrap())
            .unwrap()
            .with_scale(prec);
        assert!(generic.consistent_with(&closed));
        assert!(generic.sub(&closed).abs_upper_le_pow2(-i64::from(prec) + 8));
    }

    #[test]
    fn ordinary_main_term_is_hardy_ramanujan() {
        // ln main = pi sqrt(2n/3) - ln(4 sqrt 3) - ln n
        let prec = 128;
        let w = prec + 64;
        let params = ordinary_partition_params(prec).unwrap();
        for n in [100u64, 1000, 4096] {
            let generic = asymptotic_ln(&params, n, prec).unwrap();
            let closed = hp::pi(w)
                .mul(&HPReal::from_u64(2 * n, w).div_u64(3).sqrt().unwrap())
                .sub(&HPReal::from_u64(48, w).sqrt().unwrap().ln().unwrap())
                .sub(&HPReal::from_u64(n, w).ln().unwrap())
                .with_scale(prec);
            assert!(generic.consistent_with(&closed));
            assert!(generic.sub(&closed).abs_upper_le_pow2(-i64::from(prec) + 8));
        }
    }

    #[test]
    fn corrected_formula_equals_generic_main_term() {
        let prec = 256;
        let params = plane_partition_params(prec).unwrap();
        for n in [1u64, 10, 100, 10_000] {
            let generic = asymptotic_ln(&params, n, prec).unwrap();
            let wright = wright_ln(n, WrightGamma0::CorrectedInvSqrt3, prec).unwrap();
            assert!(generic.consistent_with(&wright));
            assert!(generic.sub(&wright).abs_upper_le_pow2(-i64::from(prec) + 8));
        }
    }

    #[test]
    fn gamma0_choices_differ_by_exactly_half_ln3() {
        let prec = 160;
        for n in [10u64, 1000] {
            let one = wright_ln(n, WrightGamma0::ClaimedOne, prec).unwrap();
            let corrected = wright_ln(n, WrightGamma0::CorrectedInvSqrt3, prec).unwrap();
            let diff = one.sub(&corrected).sub(&hp::half_ln3(prec));
            // The midpoints cancel exactly: both runs share one base sum.
            let (lo, hi) = diff.bounds_at_scale(prec);
            assert!((&lo + &hi).is_zero(), "midpoint residue {lo} .. {hi}");
        }
    }

    #[test]
    fn wright_values_match_published_table() {
        let prec = 256;
        // (n, corrected mantissa, claimed mantissa, shared exponent)
        let rows: [(u64, u64, u64, i64); 4] = [
            (10, 52_579, 91_069, -2),
            (100, 59_876, 103_709, 12),
            (1000, 35_511, 61_507, 80),
            (10_000, 45_098, 78_113, 397),
        ];
        for (n, want_corr, want_one, e) in rows {
            let corr = wright_leading(n, WrightGamma0::CorrectedInvSqrt3, prec).unwrap();
            let one = wright_leading(n, WrightGamma0::ClaimedOne, prec).unwrap();
            if e <= 0 {
                assert_eq!(corr.exponent(), e, "n = {n}");
                assert_eq!(corr.mantissa(), want_corr, "n = {n}");
                assert_eq!(one.mantissa(), want_one, "n = {n}");
            } else {
                assert_eq!(corr.exponent(), e, "n = {n}");
                assert_eq!(corr.mantissa(), want_corr, "n = {n}");
                // The uncorrected value is sqrt(3) times larger and may need
                // one more digit at the shared exponent.
                assert_eq!(one.mantissa_for_exponent(e).unwrap(), want_one, "n = {n}");
            }
        }
    }

    #[test]
    fn rendering_matches_published_style() {
        let corr10 = wright_leading(10, WrightGamma0::CorrectedInvSqrt3, 192).unwrap();
        assert_eq!(corr10.render(), "525.79");
        let one10 = wright_leading(10, WrightGamma0::ClaimedOne, 192).unwrap();
        assert_eq!(one10.render(), "910.69");
        let corr100 = wright_leading(100, WrightGamma0::CorrectedInvSqrt3, 192).unwrap();
        assert_eq!(corr100.render(), "59 876 \u{d7} 10^12");
        let one100 = wright_leading(100, WrightGamma0::ClaimedOne, 192).unwrap();
        assert_eq!(one100.render_for_exponent(12).unwrap(), "103 709 \u{d7} 10^12");
    }

    #[test]
    fn normalisation_handles_carries_and_small_values() {
        let w = 128;
        // 99999.7 rounds up to 100000 and renormalises to 10000 * 10^1.
        let v = HPReal::from_ratio(&BigInt::from(999_997), &BigInt::from(10), w)
            .unwrap()
            .ln()
            .unwrap()
            .div(&hp::ln10(w))
            .unwrap();
        let av = AsymptoticValue::from_log10(v).unwrap();
        assert_eq!((av.mantissa(), av.exponent()), (10_000, 1));
        assert_eq!(av.render(), "10 000 \u{d7} 10^1");

        // A ball that straddles a rounding tie is refused, not guessed at.
        let tie = HPReal::from_ratio(&BigInt::from(199_999), &BigInt::from(2), w)
            .unwrap()
            .ln()
            .unwrap()
            .div(&hp::ln10(w))
            .unwrap();
        assert!(matches!(AsymptoticValue::from_log10(tie), Err(Error::Domain(_))));

        // 0.0091069 = 91069 * 10^-7
        let v = HPReal::from_ratio(&BigInt::from(91_069), &BigInt::from(10_000_000u64), w)
            .unwrap()
            .ln()
            .unwrap()
            .div(&hp::ln10(w))
            .unwrap();
        let av = AsymptoticValue::from_log10(v).unwrap();
        assert_eq!((av.mantissa(), av.exponent()), (91_069, -7));
        assert_eq!(av.render(), "0.0091069");

        // 45098 exactly: exponent 0, grouped digits, no power marker.
        let v = HPReal::from_u64(45_098, w).ln().unwrap().div(&hp::ln10(w)).unwrap();
        let av = AsymptoticValue::from_log10(v).unwrap();
        assert_eq!((av.mantissa(), av.exponent()), (45_098, 0));
        assert_eq!(av.render(), "45 098");
    }

    #[test]
    fn exact_rendering_rounds_half_to_even() {
        let big = |s: &str| s.parse::<BigUint>().unwrap();
        assert_eq!(render_exact(&big("500")), "500");
        assert_eq!(render_exact(&big("99999")), "99999");
        assert_eq!(render_exact(&big("123454")), "12 345 \u{d7} 10^1");
        assert_eq!(render_exact(&big("123456")), "12 346 \u{d7} 10^1");
        // Ties go to the even mantissa.
        assert_eq!(render_exact(&big("123455")), "12 346 \u{d7} 10^1");
        assert_eq!(render_exact(&big("123445")), "12 344 \u{d7} 10^1");
        assert_eq!(render_exact(&big("1234455000")), "12 345 \u{d7} 10^5");
        assert_eq!(render_exact(&big("1234455001")), "12 345 \u{d7} 10^5");
        assert_eq!(render_exact(&big("1234460000")), "12 345 \u{d7} 10^5");
        // Tie with an even mantissa stays put.
        assert_eq!(render_exact(&big("1234650000")), "12 346 \u{d7} 10^5");
        // Carry out of the mantissa.
        assert_eq!(render_exact(&big("9999960000")), "10 000 \u{d7} 10^6");
    }

    #[test]
    fn approximation_tracks_exact_counts() {
        let table = plane_partition_table(100).unwrap();
        let q100 = table.get(100);
        let ln_q = HPReal::from_bigint(&BigInt::from(q100.clone()), 192).ln().unwrap();
        let ln_w = wright_ln(100, WrightGamma0::CorrectedInvSqrt3, 128).unwrap();
        let ratio = ln_q.with_scale(128).sub(&ln_w).to_f64().exp();
        assert!((ratio - 1.0).abs() < 0.012, "ratio {ratio}");
        // The uncorrected constant misses by about sqrt(3).
        let ln_one = wright_ln(100, WrightGamma0::ClaimedOne, 128).unwrap();
        let ratio_one = ln_q.with_scale(128).sub(&ln_one).to_f64().exp();
        assert!((ratio_one - 3f64.powf(-0.5)).abs() < 0.01, "ratio {ratio_one}");
    }

    #[test]
    fn parameter_validation() {
        let d0p = HPReal::zero(96);
        let bad = MeinardusParams::new(0, ratio(1, 1), ratio(0, 1), d0p.clone(), ratio(1, 2), ratio(1, 100));
        assert!(matches!(bad, Err(Error::InvalidParams(_))));
        let bad = MeinardusParams::new(2, ratio(-1, 1), ratio(0, 1), d0p.clone(), ratio(1, 2), ratio(1, 100));
        assert!(matches!(bad, Err(Error::InvalidParams(_))));
        let bad = MeinardusParams::new(2, ratio(1, 1), ratio(0, 1), d0p.clone(), ratio(3, 2), ratio(1, 100));
        assert!(matches!(bad, Err(Error::InvalidParams(_))));
        let bad = MeinardusParams::new(2, ratio(1, 1), ratio(0, 1), d0p.clone(), ratio(1, 2), ratio(1, 2));
        assert!(matches!(bad, Err(Error::InvalidParams(_))));
        let ok = MeinardusParams::new(2, ratio(1, 1), ratio(0, 1), d0p, ratio(1, 2), ratio(1, 100));
        assert!(ok.is_ok());

        assert!(matches!(
            wright_ln(0, WrightGamma0::ClaimedOne, 128),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            wright_ln(10, WrightGamma0::ClaimedOne, 16),
            Err(Error::PrecisionTooLow { .. })
        ));
        let plane = plane_partition_params(96).unwrap();
        assert!(matches!(
            asymptotic_ln(&plane, 0, 96),
            Err(Error::InvalidParams(_))
        ));
    }
}
