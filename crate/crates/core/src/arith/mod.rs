//! Arbitrary-precision integer and rational helpers: primality testing,
//! integer factorization, exact square roots, and square classes.

mod factor;
mod square_class;

pub use factor::{
    classify_prime, factor_integer, factor_integer_with, small_primes, FactorConfig, Primality,
    PrimeFactorization, TRIAL_DIVISION_LIMIT,
};
pub use square_class::{
    is_rational_square, rational_sqrt, square_class, square_class_with, SquareClass,
};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exact integer square root: `Some(s)` with `s >= 0` and `s*s == n`, else `None`.
pub fn integer_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    if &(&s * &s) == n {
        Some(s)
    } else {
        None
    }
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    integer_sqrt(n).is_some()
}

/// Inverse of `a` modulo `m > 1`, or `None` when `gcd(a, m) != 1`.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut x0, mut x1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r);
        let x = &x0 - &q * &x1;
        x0 = std::mem::replace(&mut x1, x);
    }
    if r0.is_one() {
        Some(x0.mod_floor(m))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_sqrt_basics() {
        assert_eq!(integer_sqrt(&BigInt::from(0)), Some(BigInt::from(0)));
        assert_eq!(integer_sqrt(&BigInt::from(1522756)), Some(BigInt::from(1234)));
        assert_eq!(integer_sqrt(&BigInt::from(2)), None);
        assert_eq!(integer_sqrt(&BigInt::from(-4)), None);
    }

    #[test]
    fn mod_inverse_basics() {
        let m = BigInt::from(97);
        for a in 1..97 {
            let inv = mod_inverse(&BigInt::from(a), &m).unwrap();
            assert!((BigInt::from(a) * inv).mod_floor(&m).is_one());
        }
        assert_eq!(mod_inverse(&BigInt::from(6), &BigInt::from(9)), None);
    }
}
