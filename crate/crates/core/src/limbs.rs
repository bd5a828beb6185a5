//! Minimal little-endian `u64` limb arithmetic for the coefficient
//! recurrence hot loop.
//!
//! The recurrence spends almost all its time on `acc += coeff * weight`
//! with a single-limb weight. Going through full big-integer temporaries
//! allocates per term; these helpers keep one flat accumulator instead.

use num_bigint::BigUint;

/// `acc += x * w`, carrying into higher limbs of `acc`.
///
/// `acc` must be long enough to absorb the product and carry
/// (`x.len() + 1` limbs beyond any previously occupied position suffices;
/// the callers size it once per outer step).
pub(crate) fn acc_add_mul(acc: &mut [u64], x: &[u64], w: u64) {
    let mut carry: u128 = 0;
    for (a, &xi) in acc.iter_mut().zip(x) {
        let t = (xi as u128) * (w as u128) + (*a as u128) + carry;
        *a = t as u64;
        carry = t >> 64;
    }
    let mut i = x.len();
    while carry != 0 {
        let t = (acc[i] as u128) + carry;
        acc[i] = t as u64;
        carry = t >> 64;
        i += 1;
    }
}

/// Divides `num` by a single limb, returning `(quotient, remainder)`.
/// The quotient keeps `num`'s length; callers trim.
pub(crate) fn div_rem_u64(num: &[u64], d: u64) -> (Vec<u64>, u64) {
    debug_assert!(d != 0);
    let mut q = vec![0u64; num.len()];
    let mut rem: u128 = 0;
    for i in (0..num.len()).rev() {
        let cur = (rem << 64) | num[i] as u128;
        q[i] = (cur / d as u128) as u64;
        rem = cur % d as u128;
    }
    (q, rem as u64)
}

/// Drops leading zero limbs (keeps at least one limb so zero is `[0]`).
pub(crate) fn trim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

pub(crate) fn to_biguint(limbs: &[u64]) -> BigUint {
    let mut bytes = Vec::with_capacity(limbs.len() * 8);
    for &l in limbs {
        bytes.extend_from_slice(&l.to_le_bytes());
    }
    BigUint::from_bytes_le(&bytes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn add_mul_matches_biguint() {
        let x = vec![u64::MAX, u64::MAX, 3];
        let mut acc = vec![5u64, 0, 0, 0, 0];
        acc_add_mul(&mut acc, &x, u64::MAX);
        let expect = BigUint::from(5u32) + to_biguint(&x) * BigUint::from(u64::MAX);
        assert_eq!(to_biguint(&acc), expect);
    }

    #[test]
    fn div_rem_matches_biguint() {
        let n = vec![0x0123_4567_89ab_cdefu64, u64::MAX, 0, 17];
        let (q, r) = div_rem_u64(&n, 1_000_003);
        let expect_q = to_biguint(&n) / BigUint::from(1_000_003u64);
        let expect_r = to_biguint(&n) % BigUint::from(1_000_003u64);
        assert_eq!(to_biguint(&q), expect_q);
        assert_eq!(BigUint::from(r), expect_r);
    }

    #[test]
    fn trim_keeps_zero() {
        let mut v = vec![0u64, 0, 0];
        trim(&mut v);
        assert_eq!(v, vec![0]);
        let mut w = vec![7u64, 1, 0];
        trim(&mut w);
        assert_eq!(w, vec![7, 1]);
    }
}
