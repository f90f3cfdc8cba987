//! Exact geometric means.
//!
//! A [`ProductValue`] stands for `(numerator / denominator)^(1/root)` and is
//! never evaluated as a floating root when comparing. Values with the same
//! root compare on the products alone; values with different roots compare
//! by cross-powering, `x^(1/r) < y^(1/s)  <=>  x^s < y^r`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

#[derive(Clone, Debug)]
pub struct ProductValue {
    numerator: BigUint,
    denominator: BigUint,
    root: u32,
}

impl ProductValue {
    /// An integer product `product^(1/root)`.
    pub fn integer(product: impl Into<BigUint>, root: u32) -> Self {
        Self::ratio(product.into(), BigUint::one(), root)
    }

    /// `(numerator / denominator)^(1/root)`, reduced to lowest terms.
    pub fn ratio(numerator: BigUint, denominator: BigUint, root: u32) -> Self {
        assert!(root >= 1, "root must be positive");
        assert!(denominator != BigUint::ZERO, "zero denominator");
        let g = numerator.gcd(&denominator);
        let (numerator, denominator) = if g.is_one() || g == BigUint::ZERO {
            (numerator, denominator)
        } else {
            (numerator / &g, denominator / &g)
        };
        Self {
            numerator,
            denominator,
            root,
        }
    }

    /// The product when it is an integer.
    pub fn product(&self) -> Option<&BigUint> {
        self.denominator.is_one().then_some(&self.numerator)
    }

    pub fn numerator(&self) -> &BigUint {
        &self.numerator
    }

    pub fn denominator(&self) -> &BigUint {
        &self.denominator
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    /// The product as `"p"` or `"p/q"`.
    pub fn product_string(&self) -> String {
        if self.denominator.is_one() {
            self.numerator.to_string()
        } else {
            format!("{}/{}", self.numerator, self.denominator)
        }
    }

    /// Floating point value of the mean, for display only.
    pub fn to_f64(&self) -> f64 {
        let ln = |x: &BigUint| -> f64 {
            // ln via bit length keeps huge products finite.
            let bits = x.bits();
            if bits <= 1000 {
                x.to_f64().unwrap_or(f64::INFINITY).ln()
            } else {
                let shift = bits - 900;
                (x >> shift).to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
            }
        };
        ((ln(&self.numerator) - ln(&self.denominator)) / self.root as f64).exp()
    }
}

impl PartialEq for ProductValue {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for ProductValue {}

impl PartialOrd for ProductValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ProductValue {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.root == other.root {
            (&self.numerator * &other.denominator).cmp(&(&other.numerator * &self.denominator))
        } else {
            let lhs = self.numerator.pow(other.root) * other.denominator.pow(self.root);
            let rhs = other.numerator.pow(self.root) * self.denominator.pow(other.root);
            lhs.cmp(&rhs)
        }
    }
}

impl fmt::Display for ProductValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})^(1/{})", self.product_string(), self.root)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_root_compares_products() {
        let a = ProductValue::integer(12u32, 3);
        let b = ProductValue::integer(11u32, 3);
        assert!(a > b);
        assert_eq!(a, ProductValue::integer(12u32, 3));
    }

    #[test]
    fn cross_root_comparison() {
        // sqrt(2) < 3^(1/3): 2^3 = 8 < 9 = 3^2
        assert!(ProductValue::integer(2u32, 2) < ProductValue::integer(3u32, 3));
        // 4^(1/2) == 8^(1/3)
        assert_eq!(
            ProductValue::integer(4u32, 2),
            ProductValue::integer(8u32, 3)
        );
    }

    #[test]
    fn ratios_are_reduced() {
        let v = ProductValue::ratio(6u32.into(), 4u32.into(), 2);
        assert_eq!(v.product_string(), "3/2");
        assert!(v.product().is_none());
        assert_eq!(v, ProductValue::ratio(3u32.into(), 2u32.into(), 2));
    }

    #[test]
    fn to_f64_handles_large_products() {
        let v = ProductValue::integer(BigUint::from(2u32).pow(3000), 3000);
        assert!((v.to_f64() - 2.0).abs() < 1e-9);
        assert!((ProductValue::integer(12u32, 3).to_f64() - 12f64.cbrt()).abs() < 1e-12);
    }
}
