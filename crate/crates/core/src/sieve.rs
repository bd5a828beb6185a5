//! Divisor-power sums and recurrence weights.
//!
//! For the product `F(x) = prod_{j>=1} (1 - x^j)^{-a_j}` the logarithmic
//! derivative gives `x F'(x)/F(x) = sum_k b(k) x^k` with
//! `b(k) = sum_{j | k} j * a_j`, so the coefficients `r(n)` of `F` satisfy
//! `n r(n) = sum_{k=1}^{n} b(k) r(n-k)`. When `a_j = j` the weights are the
//! divisor-square sums `beta_2(k)`; when `a_j = 1` they are the ordinary
//! divisor sums `sigma(k)`.
//!
//! Everything here is exact big-integer arithmetic; tables are built by a
//! classic sieve (one pass over multiples per `j`), `O(N log N)` additions.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Divisor-power sums `beta_r(k) = sum_{d | k} d^r` for `k = 1..=N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SieveTable {
    exponent: u32,
    /// `values[k]` is `beta_r(k)`; slot 0 is an unused zero so the table
    /// indexes naturally from 1.
    values: Vec<BigUint>,
}

impl SieveTable {
    /// The divisor power `r`.
    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// Largest tabulated argument `N`.
    pub fn limit(&self) -> u64 {
        (self.values.len() - 1) as u64
    }

    /// `beta_r(k)`. Panics if `k` is 0 or beyond [`Self::limit`].
    pub fn get(&self, k: u64) -> &BigUint {
        assert!(k >= 1 && k <= self.limit(), "k = {k} outside 1..={}", self.limit());
        &self.values[k as usize]
    }

    /// All values `beta_r(1..=N)` in order.
    pub fn values(&self) -> &[BigUint] {
        &self.values[1..]
    }
}

/// Convolution weights `b(k) = sum_{j | k} j * a_j` for `k = 1..=N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightTable {
    values: Vec<BigUint>,
}

impl WeightTable {
    /// Largest tabulated argument `N`.
    pub fn limit(&self) -> u64 {
        (self.values.len() - 1) as u64
    }

    /// `b(k)`. Panics if `k` is 0 or beyond [`Self::limit`].
    pub fn get(&self, k: u64) -> &BigUint {
        assert!(k >= 1 && k <= self.limit(), "k = {k} outside 1..={}", self.limit());
        &self.values[k as usize]
    }

    /// All values `b(1..=N)` in order.
    pub fn values(&self) -> &[BigUint] {
        &self.values[1..]
    }

    /// The weights as `u64`, or `None` if any entry overflows one limb.
    /// The coefficient hot loop uses this single-limb fast path.
    pub(crate) fn as_u64(&self) -> Option<Vec<u64>> {
        self.values
            .iter()
            .map(|v| {
                let digits = v.to_u64_digits();
                match digits.len() {
                    0 => Some(0),
                    1 => Some(digits[0]),
                    _ => None,
                }
            })
            .collect()
    }
}

/// Product exponent sequences `a_j`.
///
/// `Linear` (`a_j = j`) generates plane partitions, `Unit` (`a_j = 1`)
/// ordinary partitions; `Custom` takes any non-negative integer-valued
/// function of `j`.
#[derive(Debug, Clone, Copy)]
pub enum ExponentSpec {
    /// `a_j = j`.
    Linear,
    /// `a_j = 1`.
    Unit,
    /// `a_j = f(j)`; must be non-negative for every `j` in range.
    Custom(fn(u64) -> i64),
}

impl ExponentSpec {
    /// `a_j` as a checked non-negative integer.
    pub fn exponent(&self, j: u64) -> Result<u64> {
        match self {
            ExponentSpec::Linear => Ok(j),
            ExponentSpec::Unit => Ok(1),
            ExponentSpec::Custom(f) => {
                let v = f(j);
                u64::try_from(v).map_err(|_| Error::NegativeExponent { j, value: v })
            }
        }
    }
}

/// Tabulates `beta_r(k)` for `k = 1..=limit`.
///
/// # Errors
///
/// [`Error::EmptyRange`] when `limit == 0`.
pub fn sigma_power_table(r: u32, limit: u64) -> Result<SieveTable> {
    if limit == 0 {
        return Err(Error::EmptyRange);
    }
    let n = usize::try_from(limit)
        .map_err(|_| Error::ResourceLimit(format!("sieve limit {limit} exceeds address space")))?;
    let mut values = vec![BigUint::zero(); n + 1];
    for j in 1..=n {
        let p = BigUint::from(j).pow(r);
        let mut m = j;
        while m <= n {
            values[m] += &p;
            m += j;
        }
    }
    Ok(SieveTable { exponent: r, values })
}

/// Tabulates the recurrence weights `b(k) = sum_{j | k} j * a_j` for
/// `k = 1..=limit`.
///
/// # Errors
///
/// [`Error::EmptyRange`] when `limit == 0`; [`Error::NegativeExponent`]
/// if a custom spec produces a negative value anywhere in range.
pub fn recurrence_weights(a: &ExponentSpec, limit: u64) -> Result<WeightTable> {
    if limit == 0 {
        return Err(Error::EmptyRange);
    }
    let n = usize::try_from(limit)
        .map_err(|_| Error::ResourceLimit(format!("sieve limit {limit} exceeds address space")))?;
    let mut values = vec![BigUint::zero(); n + 1];
    for j in 1..=n {
        let aj = a.exponent(j as u64)?;
        if aj == 0 {
            continue;
        }
        let term = BigUint::from(j) * BigUint::from(aj);
        let mut m = j;
        while m <= n {
            values[m] += &term;
            m += j;
        }
    }
    Ok(WeightTable { values })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Oracle: beta_r(k) by trial division, independent of the sieve's
    /// multiples pass.
    fn sigma_trial(r: u32, k: u64) -> BigUint {
        let mut s = BigUint::zero();
        for d in 1..=k {
            if k.is_multiple_of(d) {
                s += BigUint::from(d).pow(r);
            }
        }
        s
    }

    #[test]
    fn beta2_small_values() {
        let t = sigma_power_table(2, 12).unwrap();
        let expect: [u64; 12] = [1, 5, 10, 21, 26, 50, 50, 85, 91, 130, 122, 210];
        for (k, &e) in expect.iter().enumerate() {
            assert_eq!(t.get(k as u64 + 1), &BigUint::from(e), "beta_2({})", k + 1);
        }
    }

    #[test]
    fn sieve_matches_trial_division() {
        for r in 0..=3 {
            let t = sigma_power_table(r, 200).unwrap();
            for k in 1..=200 {
                assert_eq!(t.get(k), &sigma_trial(r, k), "beta_{r}({k})");
            }
        }
    }

    #[test]
    fn weights_specialize_to_divisor_sums() {
        let n = 300;
        let linear = recurrence_weights(&ExponentSpec::Linear, n).unwrap();
        let unit = recurrence_weights(&ExponentSpec::Unit, n).unwrap();
        let beta2 = sigma_power_table(2, n).unwrap();
        let sigma1 = sigma_power_table(1, n).unwrap();
        assert_eq!(linear.values(), beta2.values());
        assert_eq!(unit.values(), sigma1.values());
    }

    #[test]
    fn custom_weights_scale() {
        // a_j = 3 for all j gives b(k) = 3 sigma(k).
        let w = recurrence_weights(&ExponentSpec::Custom(|_| 3), 50).unwrap();
        let sigma1 = sigma_power_table(1, 50).unwrap();
        for k in 1..=50 {
            assert_eq!(w.get(k), &(sigma1.get(k) * 3u32));
        }
    }

    #[test]
    fn negative_custom_weight_rejected() {
        let err = recurrence_weights(&ExponentSpec::Custom(|j| 4 - j as i64), 10).unwrap_err();
        match err {
            Error::NegativeExponent { j, value } => {
                assert_eq!((j, value), (5, -1));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn empty_range_rejected() {
        assert!(matches!(sigma_power_table(2, 0), Err(Error::EmptyRange)));
        assert!(matches!(
            recurrence_weights(&ExponentSpec::Linear, 0),
            Err(Error::EmptyRange)
        ));
    }

    #[test]
    fn single_limb_extraction() {
        let w = recurrence_weights(&ExponentSpec::Linear, 100).unwrap();
        let u = w.as_u64().unwrap();
        for k in 1..=100u64 {
            assert_eq!(BigUint::from(u[k as usize]), *w.get(k));
        }
    }
}
