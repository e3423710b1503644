use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::factor::{factor_integer_with, FactorConfig};
use super::integer_sqrt;
use crate::{Error, Result};

/// Class of a nonzero rational in Q^*/(Q^*)^2, i.e. its unique square-free
/// integer representative, stored as a sign bit plus the set of primes with
/// odd exponent. Multiplication of rationals is XOR on these data.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SquareClass {
    pub negative: bool,
    pub odd_primes: BTreeSet<BigInt>,
}

impl SquareClass {
    /// The class of 1, i.e. of every nonzero rational square.
    pub fn trivial() -> Self {
        SquareClass::default()
    }

    pub fn is_trivial(&self) -> bool {
        !self.negative && self.odd_primes.is_empty()
    }

    /// Class of the product: signs and prime sets combine by XOR.
    pub fn mul(&self, other: &SquareClass) -> SquareClass {
        SquareClass {
            negative: self.negative ^ other.negative,
            odd_primes: self
                .odd_primes
                .symmetric_difference(&other.odd_primes)
                .cloned()
                .collect(),
        }
    }

    /// The square-free integer representing this class.
    pub fn representative(&self) -> BigInt {
        let mut v = if self.negative { -BigInt::one() } else { BigInt::one() };
        for p in &self.odd_primes {
            v *= p;
        }
        v
    }
}

/// Square class of a nonzero rational, default factoring configuration.
pub fn square_class(r: &BigRational) -> Result<SquareClass> {
    square_class_with(r, &FactorConfig::default()).map(|(c, _)| c)
}

/// Square class of a nonzero rational. The boolean is true when any prime
/// involved was only probabilistically certified.
pub fn square_class_with(r: &BigRational, cfg: &FactorConfig) -> Result<(SquareClass, bool)> {
    if r.is_zero() {
        return Err(Error::ZeroSquareClass);
    }
    let num = factor_integer_with(r.numer(), cfg)?;
    let mut odd_primes: BTreeSet<BigInt> = num.odd_exponent_primes().into_iter().collect();
    let mut probabilistic = num.probabilistic;
    if !r.denom().is_one() {
        // Numerator and denominator are coprime, so the prime sets are disjoint.
        let den = factor_integer_with(r.denom(), cfg)?;
        odd_primes.extend(den.odd_exponent_primes());
        probabilistic |= den.probabilistic;
    }
    Ok((SquareClass { negative: num.unit < 0, odd_primes }, probabilistic))
}

/// Exact test for being a square in Q. Zero counts as a square. Does not
/// factor anything: reduced fractions are squares iff both parts are.
pub fn is_rational_square(r: &BigRational) -> bool {
    if r.is_zero() {
        return true;
    }
    if r.is_negative() {
        return false;
    }
    integer_sqrt(r.numer()).is_some() && integer_sqrt(r.denom()).is_some()
}

/// Exact nonnegative square root in Q, when one exists.
pub fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_zero() {
        return Some(BigRational::zero());
    }
    if r.is_negative() {
        return None;
    }
    let n = integer_sqrt(r.numer())?;
    let d = integer_sqrt(r.denom())?;
    Some(BigRational::new(n, d))
}
