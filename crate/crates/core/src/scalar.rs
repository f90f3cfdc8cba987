//! Scalar types the rational-valued statistics can be evaluated in.
//!
//! Every statistic in this crate is a ratio of two nonnegative integers, so a
//! scalar only needs to be constructible from such a ratio and closed under
//! the usual field operations. [`ExactRatio`](crate::ExactRatio) gives exact
//! answers; `f64`/`f32` trade exactness for speed.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Num;

pub trait Scalar: Num + Clone + PartialOrd + Debug {
    /// `numerator / denominator`; `denominator` must be nonzero.
    fn from_ratio(numerator: u128, denominator: u128) -> Self;

    fn from_integer(value: u128) -> Self {
        Self::from_ratio(value, 1)
    }
}

impl Scalar for f64 {
    #[inline]
    fn from_ratio(numerator: u128, denominator: u128) -> Self {
        assert!(denominator != 0, "zero denominator");
        numerator as f64 / denominator as f64
    }
}

impl Scalar for f32 {
    #[inline]
    fn from_ratio(numerator: u128, denominator: u128) -> Self {
        assert!(denominator != 0, "zero denominator");
        (numerator as f64 / denominator as f64) as f32
    }
}

impl Scalar for BigRational {
    #[inline]
    fn from_ratio(numerator: u128, denominator: u128) -> Self {
        BigRational::new(BigInt::from(numerator), BigInt::from(denominator))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_ratio_is_reduced() {
        let r = BigRational::from_ratio(6, 4);
        assert_eq!(r, BigRational::new(3.into(), 2.into()));
        assert_eq!(r.denom(), &BigInt::from(2));
    }

    #[test]
    fn float_ratio() {
        assert_eq!(f64::from_ratio(3, 4), 0.75);
        assert_eq!(f32::from_integer(7), 7.0);
    }
}
