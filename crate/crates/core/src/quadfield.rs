//! Quadratic fields K = Q(sqrt(d)): exact square detection, fundamental
//! units, unit square classes, and the discriminant-divisor test, restricted
//! where stated to the square-free d of class number one.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{
    factor_integer_with, integer_sqrt, rational_sqrt, FactorConfig,
};
use crate::{Error, Result};

/// The square-free d (positive and negative) whose ring of integers is a
/// UFD and which the twist criterion accepts.
pub const CLASS_NUMBER_ONE_D: [i64; 17] = [
    -163, -67, -43, -19, -11, -7, -3, -2, -1, 3, 6, 7, 11, 13, 14, 17, 19,
];

/// An element `x + y*sqrt(d)` of Q(sqrt(d)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadElement {
    pub d: BigInt,
    pub x: BigRational,
    pub y: BigRational,
}

impl QuadElement {
    pub fn new(d: BigInt, x: BigRational, y: BigRational) -> Self {
        QuadElement { d, x, y }
    }

    pub fn from_parts(d: i64, xn: i64, xd: i64, yn: i64, yd: i64) -> Self {
        QuadElement {
            d: BigInt::from(d),
            x: BigRational::new(BigInt::from(xn), BigInt::from(xd)),
            y: BigRational::new(BigInt::from(yn), BigInt::from(yd)),
        }
    }

    pub fn from_rational(d: &BigInt, x: BigRational) -> Self {
        QuadElement { d: d.clone(), x, y: BigRational::zero() }
    }

    pub fn one(d: &BigInt) -> Self {
        QuadElement::from_rational(d, BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    pub fn mul(&self, rhs: &QuadElement) -> QuadElement {
        debug_assert_eq!(self.d, rhs.d);
        let d = BigRational::from_integer(self.d.clone());
        QuadElement {
            d: self.d.clone(),
            x: &self.x * &rhs.x + &(&self.y * &rhs.y) * &d,
            y: &self.x * &rhs.y + &self.y * &rhs.x,
        }
    }

    pub fn neg(&self) -> QuadElement {
        QuadElement { d: self.d.clone(), x: -self.x.clone(), y: -self.y.clone() }
    }

    pub fn conjugate(&self) -> QuadElement {
        QuadElement { d: self.d.clone(), x: self.x.clone(), y: -self.y.clone() }
    }

    /// Field norm `x^2 - d*y^2`.
    pub fn norm(&self) -> BigRational {
        &(&self.x * &self.x) - &(&(&self.y * &self.y) * &BigRational::from_integer(self.d.clone()))
    }

    /// Exact square root in K, if the element is a square there.
    ///
    /// For `y != 0`: a square root `p + q*sqrt(d)` forces
    /// `p^2 = (x + N)/2` or `(x - N)/2` with `N = sqrt(norm)` in Q, and then
    /// `q = y/(2p)`; all steps are exact rational arithmetic.
    pub fn sqrt(&self) -> Option<QuadElement> {
        if self.is_zero() {
            return Some(QuadElement::from_rational(&self.d, BigRational::zero()));
        }
        let d_rat = BigRational::from_integer(self.d.clone());
        if self.y.is_zero() {
            if let Some(r) = rational_sqrt(&self.x) {
                return Some(QuadElement::from_rational(&self.d, r));
            }
            // x = (s*sqrt(d))^2 = s^2 * d.
            if let Some(s) = rational_sqrt(&(&self.x / &d_rat)) {
                return Some(QuadElement::new(self.d.clone(), BigRational::zero(), s));
            }
            return None;
        }
        let norm = self.norm();
        let n = rational_sqrt(&norm)?;
        let two = BigRational::from_integer(BigInt::from(2));
        for candidate in [(&self.x + &n) / &two, (&self.x - &n) / &two] {
            if candidate.is_zero() {
                continue;
            }
            if let Some(p) = rational_sqrt(&candidate) {
                let q = &self.y / &(&two * &p);
                let root = QuadElement::new(self.d.clone(), p, q);
                debug_assert_eq!(root.mul(&root), *self);
                return Some(root);
            }
        }
        None
    }

    pub fn is_square(&self) -> bool {
        self.sqrt().is_some()
    }
}

impl fmt::Display for QuadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y.is_zero() {
            return write!(f, "{}", self.x);
        }
        let y_part = if self.y.is_one() {
            format!("sqrt({})", self.d)
        } else if (-self.y.clone()).is_one() {
            format!("-sqrt({})", self.d)
        } else {
            format!("{}*sqrt({})", self.y, self.d)
        };
        if self.x.is_zero() {
            write!(f, "{y_part}")
        } else if self.y.is_negative() {
            write!(f, "{} - {}", self.x, y_part.trim_start_matches('-'))
        } else {
            write!(f, "{} + {}", self.x, y_part)
        }
    }
}

/// Structural data of Q(sqrt(d)).
#[derive(Clone, Debug)]
pub struct QuadFieldInfo {
    pub d: BigInt,
    /// Field discriminant: d when d = 1 mod 4, else 4d.
    pub discriminant: BigInt,
    /// Fundamental unit > 1 for real fields, `None` for imaginary ones.
    pub fundamental_unit: Option<QuadElement>,
    /// Whether d is on the supported class-number-one list.
    pub class_number_one: bool,
}

/// Validate d (square-free, not 0 or 1) and compute the field data.
pub fn field_info(d: &BigInt) -> Result<QuadFieldInfo> {
    field_info_with(d, &FactorConfig::default())
}

pub fn field_info_with(d: &BigInt, cfg: &FactorConfig) -> Result<QuadFieldInfo> {
    if d.is_zero() || d.is_one() {
        return Err(Error::InvalidFieldD { d: d.clone() });
    }
    let fact = factor_integer_with(d, cfg)?;
    if fact.factors.values().any(|e| *e > 1) {
        return Err(Error::InvalidFieldD { d: d.clone() });
    }
    let four = BigInt::from(4);
    let discriminant = if d.mod_floor(&four).is_one() { d.clone() } else { d * &four };
    let fundamental_unit =
        if d.is_positive() { Some(fundamental_unit(d)?) } else { None };
    let class_number_one = d.to_i64().is_some_and(|v| CLASS_NUMBER_ONE_D.contains(&v));
    Ok(QuadFieldInfo { d: d.clone(), discriminant, fundamental_unit, class_number_one })
}

/// Bound on y in the search for solutions of x^2 - d*y^2 = +-4 when
/// d = 1 mod 4. Exceeding it is a hard error, never a wrong answer.
const UNIT_SEARCH_Y_BOUND: u64 = 2_000_000;

/// Iteration cap for the continued-fraction Pell solver.
const PELL_ITERATION_CAP: u64 = 1_000_000;

/// Smallest unit > 1 of the ring of integers of Q(sqrt(d)), d > 1 square-free.
///
/// For d = 2, 3 mod 4 this is the fundamental solution of x^2 - d*y^2 = +-1,
/// found on the continued-fraction expansion of sqrt(d). For d = 1 mod 4
/// half-integer coordinates are allowed, so we search x^2 - d*y^2 = +-4 by
/// increasing y (checking -4 before +4, which finds the smaller unit first).
fn fundamental_unit(d: &BigInt) -> Result<QuadElement> {
    debug_assert!(d > &BigInt::one());
    let four = BigInt::from(4);
    if d.mod_floor(&four).is_one() {
        let dy = |y: u64| d * BigInt::from(y) * BigInt::from(y);
        for y in 1..=UNIT_SEARCH_Y_BOUND {
            let base = dy(y);
            for target in [&base - &four, &base + &four] {
                if target.is_positive() {
                    if let Some(x) = integer_sqrt(&target) {
                        let two = BigInt::from(2);
                        return Ok(QuadElement::new(
                            d.clone(),
                            BigRational::new(x, two.clone()),
                            BigRational::new(BigInt::from(y), two),
                        ));
                    }
                }
            }
        }
        return Err(Error::UnitSearchExceeded { d: d.clone() });
    }

    // Continued fraction of sqrt(d); every convergent is tested, so the
    // first hit is the fundamental solution.
    let a0 = d.sqrt();
    let mut m = BigInt::zero();
    let mut q = BigInt::one();
    let mut a = a0.clone();
    let (mut p_prev, mut p_cur) = (BigInt::one(), a0.clone());
    let (mut q_prev, mut q_cur) = (BigInt::zero(), BigInt::one());
    for _ in 0..PELL_ITERATION_CAP {
        let value = &(&p_cur * &p_cur) - &(d * &(&q_cur * &q_cur));
        if value.magnitude().is_one() {
            return Ok(QuadElement::new(
                d.clone(),
                BigRational::from_integer(p_cur),
                BigRational::from_integer(q_cur),
            ));
        }
        m = &(&a * &q) - &m;
        q = (d - &(&m * &m)) / &q;
        a = (&a0 + &m).div_floor(&q);
        let p_next = &(&a * &p_cur) + &p_prev;
        let q_next = &(&a * &q_cur) + &q_prev;
        p_prev = std::mem::replace(&mut p_cur, p_next);
        q_prev = std::mem::replace(&mut q_cur, q_next);
    }
    Err(Error::UnitSearchExceeded { d: d.clone() })
}

/// Representatives of the unit group modulo squares of units.
///
/// Real fields: `{1, -1, u, -u}` for the fundamental unit u. Imaginary
/// fields have only `{1, -1}` except d = -1 (units +-1, +-i: classes
/// `{1, i}`) and d = -3 (sixth roots of unity: classes `{1, zeta}` with
/// zeta = (1 + sqrt(-3))/2); in both, -1 is already a square.
pub fn unit_square_classes(info: &QuadFieldInfo) -> Vec<QuadElement> {
    let d = &info.d;
    let one = QuadElement::one(d);
    if let Some(u) = &info.fundamental_unit {
        return vec![one.clone(), one.neg(), u.clone(), u.neg()];
    }
    if *d == BigInt::from(-1) {
        let i = QuadElement::new(d.clone(), BigRational::zero(), BigRational::one());
        return vec![one, i];
    }
    if *d == BigInt::from(-3) {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let zeta = QuadElement::new(d.clone(), half.clone(), half);
        return vec![one, zeta];
    }
    vec![one.clone(), one.neg()]
}

/// Whether `epsilon * r` is a square in K for some unit epsilon; returns a
/// witnessing pair (class representative, square root).
pub fn unit_multiple_square(
    r: &BigRational,
    info: &QuadFieldInfo,
) -> Option<(QuadElement, QuadElement)> {
    for eps in unit_square_classes(info) {
        let candidate = eps.mul(&QuadElement::from_rational(&info.d, r.clone()));
        if let Some(root) = candidate.sqrt() {
            return Some((eps, root));
        }
    }
    None
}

/// First square-free divisor d' of the field discriminant (either sign,
/// enumerated by |d'| ascending, positive first, starting at 1) such that
/// `d' * r` is a rational square. Requires a class-number-one field.
pub fn discriminant_divisor_witness(
    r: &BigRational,
    info: &QuadFieldInfo,
) -> Result<Option<BigInt>> {
    discriminant_divisor_witness_with(r, info, &FactorConfig::default())
}

pub fn discriminant_divisor_witness_with(
    r: &BigRational,
    info: &QuadFieldInfo,
    cfg: &FactorConfig,
) -> Result<Option<BigInt>> {
    if !info.class_number_one {
        return Err(Error::UnsupportedField { d: info.d.clone() });
    }
    let disc = factor_integer_with(&info.discriminant, cfg)?;
    for divisor in disc.squarefree_divisors() {
        for signed in [divisor.clone(), -divisor] {
            let value = r * BigRational::from_integer(signed.clone());
            if crate::arith::is_rational_square(&value) {
                return Ok(Some(signed));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn info(d: i64) -> QuadFieldInfo {
        field_info(&BigInt::from(d)).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn validation() {
        assert!(field_info(&BigInt::zero()).is_err());
        assert!(field_info(&BigInt::one()).is_err());
        assert!(field_info(&BigInt::from(12)).is_err());
        assert!(field_info(&BigInt::from(-4)).is_err());
        assert!(field_info(&BigInt::from(-163)).is_ok());
    }

    #[test]
    fn discriminants() {
        assert_eq!(info(-1).discriminant, BigInt::from(-4));
        assert_eq!(info(-3).discriminant, BigInt::from(-3));
        assert_eq!(info(5).discriminant, BigInt::from(5));
        assert_eq!(info(2).discriminant, BigInt::from(8));
        assert_eq!(info(14).discriminant, BigInt::from(56));
    }

    #[test]
    fn class_number_flags() {
        assert!(info(-1).class_number_one);
        assert!(info(-163).class_number_one);
        assert!(info(14).class_number_one);
        // 5 has class number one mathematically, but sits outside the
        // supported list, so the flag is false by contract.
        assert!(!info(5).class_number_one);
        assert!(!info(10).class_number_one);
    }

    #[test]
    fn fundamental_units() {
        // d = 2: 1 + sqrt(2), norm -1.
        let u = info(2).fundamental_unit.unwrap();
        assert_eq!(u, QuadElement::from_parts(2, 1, 1, 1, 1));
        assert_eq!(u.norm(), rat(-1, 1));
        // d = 5: (1 + sqrt(5))/2, norm -1.
        let u = info(5).fundamental_unit.unwrap();
        assert_eq!(u, QuadElement::from_parts(5, 1, 2, 1, 2));
        // d = 3: 2 + sqrt(3), norm +1.
        let u = info(3).fundamental_unit.unwrap();
        assert_eq!(u, QuadElement::from_parts(3, 2, 1, 1, 1));
        // d = 19: 170 + 39*sqrt(19).
        let u = info(19).fundamental_unit.unwrap();
        assert_eq!(u, QuadElement::from_parts(19, 170, 1, 39, 1));
        // d = 13: (3 + sqrt(13))/2, norm -1.
        let u = info(13).fundamental_unit.unwrap();
        assert_eq!(u, QuadElement::from_parts(13, 3, 2, 1, 2));
        // Imaginary fields have none.
        assert!(info(-7).fundamental_unit.is_none());
    }

    #[test]
    fn unit_square_class_counts() {
        assert_eq!(unit_square_classes(&info(-1)).len(), 2);
        assert_eq!(unit_square_classes(&info(-3)).len(), 2);
        assert_eq!(unit_square_classes(&info(-7)).len(), 2);
        assert_eq!(unit_square_classes(&info(3)).len(), 4);
        // In Q(i), -1 = i^2 is a square, which is why the class list for
        // d = -1 drops the -1 representative.
        let minus_one =
            QuadElement::from_rational(&BigInt::from(-1), rat(-1, 1));
        assert!(minus_one.is_square());
        // In Q(sqrt(-3)), -1 = zeta^3 is NOT a square (its square roots are
        // twelfth roots of unity), but it lands in the class of zeta:
        // -1 / zeta = zeta^2 is a square. So {1, zeta} still covers it.
        let d3 = BigInt::from(-3);
        let m1 = QuadElement::from_rational(&d3, rat(-1, 1));
        assert!(!m1.is_square());
        let zeta = &unit_square_classes(&info(-3))[1];
        assert!(zeta.mul(&m1).is_square());
    }

    #[test]
    fn squares_in_k() {
        // 2i = (1 + i)^2 in Q(i).
        let two_i = QuadElement::from_parts(-1, 0, 1, 2, 1);
        let root = two_i.sqrt().unwrap();
        assert_eq!(root, QuadElement::from_parts(-1, 1, 1, 1, 1));
        // 3 is not a square in Q(i).
        assert!(!QuadElement::from_rational(&BigInt::from(-1), rat(3, 1)).is_square());
        // 3 + 2*sqrt(2) = (1 + sqrt(2))^2.
        let v = QuadElement::from_parts(2, 3, 1, 2, 1);
        assert_eq!(v.sqrt().unwrap(), QuadElement::from_parts(2, 1, 1, 1, 1));
        // d itself is a square in K: d = sqrt(d)^2.
        let d7 = QuadElement::from_rational(&BigInt::from(7), rat(7, 1));
        assert_eq!(d7.sqrt().unwrap(), QuadElement::from_parts(7, 0, 1, 1, 1));
        // Rational squares remain squares.
        let nine = QuadElement::from_rational(&BigInt::from(7), rat(9, 4));
        assert_eq!(nine.sqrt().unwrap(), QuadElement::from_rational(&BigInt::from(7), rat(3, 2)));
        // Zero.
        assert!(QuadElement::from_rational(&BigInt::from(7), rat(0, 1)).is_square());
    }

    #[test]
    fn sqrt_round_trips() {
        use rand::{Rng, SeedableRng};
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &d in &CLASS_NUMBER_ONE_D {
            let db = BigInt::from(d);
            for _ in 0..50 {
                let x = rat((rng.next_u64() % 41) as i64 - 20, (rng.next_u64() % 7) as i64 + 1);
                let y = rat((rng.next_u64() % 41) as i64 - 20, (rng.next_u64() % 7) as i64 + 1);
                let a = QuadElement::new(db.clone(), x, y);
                let sq = a.mul(&a);
                let root = sq.sqrt().expect("square of an element is a square");
                assert!(root == a || root == a.neg(), "d = {d}, a = {a:?}");
            }
        }
    }

    #[test]
    fn discriminant_divisor_witnesses() {
        // In Q(i) (D = -4): r = -9 needs d' = -1; r = 9 takes d' = 1.
        let qi = info(-1);
        assert_eq!(
            discriminant_divisor_witness(&rat(-9, 1), &qi).unwrap(),
            Some(BigInt::from(-1))
        );
        assert_eq!(
            discriminant_divisor_witness(&rat(9, 1), &qi).unwrap(),
            Some(BigInt::from(1))
        );
        assert_eq!(
            discriminant_divisor_witness(&rat(18, 1), &qi).unwrap(),
            Some(BigInt::from(2))
        );
        assert_eq!(discriminant_divisor_witness(&rat(3, 1), &qi).unwrap(), None);
        // Unsupported field errors out.
        assert!(discriminant_divisor_witness(&rat(5, 1), &info(10)).is_err());
    }

    #[test]
    fn unit_multiple_squares() {
        // r = -2 in Q(sqrt(2)): -2 = (sqrt(2))^2 * (-1) = ... the unit
        // -1 * fundamental-unit combinations cover it iff some eps * r is a
        // square; (1+sqrt(2))^2 = 3 + 2 sqrt(2), and -2 * (-1) = 2 is the
        // square of sqrt(2). So eps = -1 works.
        let f2 = info(2);
        let hit = unit_multiple_square(&rat(-2, 1), &f2);
        assert!(hit.is_some());
        // r = 3 in Q(sqrt(2)): 3, -3, 3u, -3u all non-squares.
        assert!(unit_multiple_square(&rat(3, 1), &f2).is_none());
    }
}
