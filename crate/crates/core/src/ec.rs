//! Elliptic-curve group law over an arbitrary exact field.
//!
//! Curves are given as y² = x³ + a₂x² + a₄x + a₆. The coefficient field is
//! abstracted by [`FieldOps`], so the same chord–tangent arithmetic serves
//! ℚ (via `BigRational`) and ℚ(u) (via rational functions).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Exact field arithmetic used by the group law. Division is total away
/// from zero; `inv` returns `None` exactly on zero.
pub trait FieldOps: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn from_i64(v: i64) -> Self;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }
}

impl FieldOps for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

/// A point on a curve: the identity or an affine pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Point<F> {
    Infinity,
    Affine { x: F, y: F },
}

impl<F: FieldOps> Point<F> {
    pub fn affine(x: F, y: F) -> Self {
        Point::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn x(&self) -> Option<&F> {
        match self {
            Point::Infinity => None,
            Point::Affine { x, .. } => Some(x),
        }
    }

    pub fn y(&self) -> Option<&F> {
        match self {
            Point::Infinity => None,
            Point::Affine { y, .. } => Some(y),
        }
    }
}

/// y² = x³ + a₂x² + a₄x + a₆ over F.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve<F> {
    pub a2: F,
    pub a4: F,
    pub a6: F,
}

impl<F: FieldOps> Curve<F> {
    /// Rejects singular equations (vanishing discriminant).
    pub fn new(a2: F, a4: F, a6: F) -> Result<Self> {
        let curve = Curve { a2, a4, a6 };
        if curve.discriminant().is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(curve)
    }

    /// Short form y² = x³ + a₄x + a₆.
    pub fn new_short(a4: F, a6: F) -> Result<Self> {
        Curve::new(F::zero(), a4, a6)
    }

    /// Discriminant via the b-invariants (a₁ = a₃ = 0):
    /// b₂ = 4a₂, b₄ = 2a₄, b₆ = 4a₆, b₈ = 4a₂a₆ − a₄²,
    /// Δ = −b₂²b₈ − 8b₄³ − 27b₆² + 9b₂b₄b₆.
    pub fn discriminant(&self) -> F {
        let four = F::from_i64(4);
        let b2 = four.mul(&self.a2);
        let b4 = F::from_i64(2).mul(&self.a4);
        let b6 = four.mul(&self.a6);
        let b8 = four.mul(&self.a2.mul(&self.a6)).sub(&self.a4.mul(&self.a4));
        let t1 = b2.mul(&b2).mul(&b8).neg();
        let t2 = F::from_i64(8).mul(&b4).mul(&b4).mul(&b4).neg();
        let t3 = F::from_i64(27).mul(&b6).mul(&b6).neg();
        let t4 = F::from_i64(9).mul(&b2).mul(&b4).mul(&b6);
        t1.add(&t2).add(&t3).add(&t4)
    }

    /// Right-hand side x³ + a₂x² + a₄x + a₆.
    pub fn rhs(&self, x: &F) -> F {
        x.add(&self.a2).mul(x).add(&self.a4).mul(x).add(&self.a6)
    }

    pub fn contains(&self, p: &Point<F>) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine { x, y } => y.mul(y) == self.rhs(x),
        }
    }

    pub fn neg_point(&self, p: &Point<F>) -> Point<F> {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => Point::Affine { x: x.clone(), y: y.neg() },
        }
    }

    pub fn double_point(&self, p: &Point<F>) -> Point<F> {
        let Point::Affine { x, y } = p else {
            return Point::Infinity;
        };
        if y.is_zero() {
            return Point::Infinity;
        }
        // λ = (3x² + 2a₂x + a₄) / (2y)
        let num = F::from_i64(3)
            .mul(x)
            .add(&F::from_i64(2).mul(&self.a2))
            .mul(x)
            .add(&self.a4);
        let lambda = num.div(&F::from_i64(2).mul(y)).expect("nonzero denominator");
        self.chord_result(&lambda, x, x, y)
    }

    pub fn add_points(&self, p: &Point<F>, q: &Point<F>) -> Point<F> {
        let (Point::Affine { x: x1, y: y1 }, Point::Affine { x: x2, y: y2 }) = (p, q) else {
            return if p.is_infinity() { q.clone() } else { p.clone() };
        };
        if x1 == x2 {
            return if y1 == y2 { self.double_point(p) } else { Point::Infinity };
        }
        let lambda = y2.sub(y1).div(&x2.sub(x1)).expect("distinct x-coordinates");
        self.chord_result(&lambda, x1, x2, y1)
    }

    fn chord_result(&self, lambda: &F, x1: &F, x2: &F, y1: &F) -> Point<F> {
        let x3 = lambda.mul(lambda).sub(&self.a2).sub(x1).sub(x2);
        let y3 = lambda.mul(&x1.sub(&x3)).sub(y1);
        Point::Affine { x: x3, y: y3 }
    }

    /// n·p by double-and-add; negative n negates first.
    pub fn scalar_mul(&self, n: i64, p: &Point<F>) -> Point<F> {
        let (mut k, base) = if n < 0 {
            (n.unsigned_abs(), self.neg_point(p))
        } else {
            (n as u64, p.clone())
        };
        let mut result = Point::Infinity;
        let mut addend = base;
        while k > 0 {
            if k & 1 == 1 {
                result = self.add_points(&result, &addend);
            }
            k >>= 1;
            if k > 0 {
                addend = self.double_point(&addend);
            }
        }
        result
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn pt(x: i64, y: i64) -> Point<BigRational> {
        Point::affine(q(x), q(y))
    }

    #[test]
    fn rejects_singular_equations() {
        assert!(Curve::new_short(q(0), q(0)).is_err()); // y² = x³ (cusp)
        assert!(Curve::new_short(q(-3), q(2)).is_err()); // (x-1)²(x+2) (node)
        assert!(Curve::new_short(q(0), q(1)).is_ok());
    }

    #[test]
    fn torsion_arithmetic_on_x3_plus_1() {
        // (2,3) generates the full ℤ/6 torsion of y² = x³ + 1.
        let curve = Curve::new_short(q(0), q(1)).unwrap();
        let p = pt(2, 3);
        assert!(curve.contains(&p));
        let two_p = curve.double_point(&p);
        assert_eq!(two_p, pt(0, 1));
        let three_p = curve.add_points(&p, &two_p);
        assert_eq!(three_p, pt(-1, 0));
        assert_eq!(curve.scalar_mul(4, &p), pt(0, -1));
        assert_eq!(curve.scalar_mul(5, &p), pt(2, -3));
        assert_eq!(curve.scalar_mul(6, &p), Point::Infinity);
        assert_eq!(curve.scalar_mul(-2, &p), pt(0, -1));
        assert_eq!(curve.scalar_mul(0, &p), Point::Infinity);
    }

    #[test]
    fn two_torsion_with_x2_term() {
        // y² = x(x-1)(x+2) = x³ + x² - 2x: adding two 2-torsion points
        // lands on the third.
        let curve = Curve::new(q(1), q(-2), q(0)).unwrap();
        let sum = curve.add_points(&pt(0, 0), &pt(1, 0));
        assert_eq!(sum, pt(-2, 0));
        assert_eq!(curve.double_point(&pt(0, 0)), Point::Infinity);
    }

    #[test]
    fn group_identities() {
        // y² = x³ - 2x + 5 contains (1, 2) since 1 - 2 + 5 = 4.
        let curve = Curve::new_short(q(-2), q(5)).unwrap();
        let p = pt(1, 2);
        assert!(curve.contains(&p));
        let q_pt = curve.double_point(&p);
        assert!(curve.contains(&q_pt));
        // P + (-P) = O and P + O = P.
        assert_eq!(curve.add_points(&p, &curve.neg_point(&p)), Point::Infinity);
        assert_eq!(curve.add_points(&p, &Point::Infinity), p);
        assert_eq!(curve.add_points(&Point::Infinity, &p), p);
        // Commutativity and a small associativity instance.
        let r = curve.scalar_mul(3, &p);
        assert_eq!(curve.add_points(&p, &q_pt), curve.add_points(&q_pt, &p));
        assert_eq!(
            curve.add_points(&curve.add_points(&p, &q_pt), &r),
            curve.add_points(&p, &curve.add_points(&q_pt, &r))
        );
        // Scalar chain: 5P = 2P + 3P.
        assert_eq!(curve.scalar_mul(5, &p), curve.add_points(&q_pt, &r));
        for n in -6..=6 {
            assert!(curve.contains(&curve.scalar_mul(n, &p)), "n = {n}");
        }
    }
}
