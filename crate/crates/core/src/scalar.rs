//! Numeric traits the counting and polynomial code is generic over.
//!
//! Counts are exact non-negative integers. Fixed-width types (`u64`, `u128`)
//! report overflow through the checked operations; `BigUint` never overflows.
//! Polynomial coefficients live in a [`Scalar`], normally `BigRational`.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Num, ToPrimitive};

use crate::error::{Error, Result};

/// Exact count of permutations.
pub trait Count:
    Num
    + CheckedAdd
    + CheckedMul
    + CheckedSub
    + FromPrimitive
    + ToPrimitive
    + Into<BigInt>
    + FromStr
    + Clone
    + Ord
    + Debug
    + Display
    + Send
    + Sync
{
}

impl<T> Count for T where
    T: Num
        + CheckedAdd
        + CheckedMul
        + CheckedSub
        + FromPrimitive
        + ToPrimitive
        + Into<BigInt>
        + FromStr
        + Clone
        + Ord
        + Debug
        + Display
        + Send
        + Sync
{
}

/// Coefficient field for polynomials.
pub trait Scalar: Num + Clone + FromPrimitive + PartialEq + Debug {}

impl<T> Scalar for T where T: Num + Clone + FromPrimitive + PartialEq + Debug {}

pub(crate) fn from_u64<C: Count>(v: u64) -> Result<C> {
    C::from_u64(v).ok_or(Error::Overflow("count conversion"))
}

pub(crate) fn checked_add<C: Count>(a: &C, b: &C) -> Result<C> {
    a.checked_add(b).ok_or(Error::Overflow("count sum"))
}

/// Binomial coefficient `n choose k` with overflow detection.
///
/// The running product `C(n-k+i, i)` is integral after every step, so the
/// division is exact.
pub fn binomial<C: Count>(n: u64, k: u64) -> Result<C> {
    if k > n {
        return Ok(C::zero());
    }
    let k = k.min(n - k);
    let mut acc = C::one();
    for i in 1..=k {
        let factor: C = from_u64(n - k + i)?;
        acc = acc
            .checked_mul(&factor)
            .ok_or(Error::Overflow("binomial coefficient"))?;
        acc = acc / from_u64(i)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn small_binomials() {
        assert_eq!(binomial::<u64>(5, 2).unwrap(), 10);
        assert_eq!(binomial::<u64>(0, 0).unwrap(), 1);
        assert_eq!(binomial::<u64>(3, 5).unwrap(), 0);
        assert_eq!(binomial::<u128>(1000, 2).unwrap(), 499_500);
    }

    #[test]
    fn pascal_rule_holds() {
        for n in 1..40u64 {
            for k in 1..n {
                let lhs: u128 = binomial(n, k).unwrap();
                let rhs: u128 = binomial::<u128>(n - 1, k - 1).unwrap() + binomial::<u128>(n - 1, k).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn overflow_is_reported_for_fixed_width() {
        assert_eq!(
            binomial::<u64>(200, 100),
            Err(Error::Overflow("binomial coefficient"))
        );
        let big: BigUint = binomial(200, 100).unwrap();
        assert!(big.bits() > 190);
    }
}
