//! Exact arithmetic in the rational function field ℚ(u) and the degree-14
//! twist family built on it.
//!
//! [`RationalFunction`] keeps a numerator/denominator pair of integer
//! polynomials in lowest terms (polynomial and content gcd both divided
//! out) with a positive-leading-coefficient denominator, so equality is
//! structural and degrees are well defined. It implements [`FieldOps`],
//! which lets the generic chord–tangent group law of [`crate::ec`] run
//! unchanged over ℚ(u).
//!
//! [`MestreFamily`] assembles, for parameters (a, b) with
//! a·b·(4a³ + 27b²) ≠ 0, the twisting polynomial
//! g(u) = −ab(u²+1)(b²(u⁴+u²+1)³ + a³u⁴(u²+1)²), the twisted curve
//! y² = x³ + a·g²·x + b·g³ and its two standard points P, Q; the on-curve
//! identities are verified at construction time.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ec::{Curve, FieldOps, Point};
use crate::poly::IntPoly;
use crate::{Error, Result};

/// A quotient of integer polynomials in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    num: IntPoly,
    den: IntPoly,
}

impl RationalFunction {
    /// Build `num/den`, reducing to canonical form. Errors on a zero
    /// denominator.
    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroPolyDivision);
        }
        Ok(RationalFunction::reduced(num, den))
    }

    /// Internal constructor: den ≠ 0.
    fn reduced(num: IntPoly, den: IntPoly) -> Self {
        if num.is_zero() {
            return RationalFunction { num: IntPoly::zero(), den: IntPoly::one() };
        }
        let common = num.gcd(&den);
        let (mut num, mut den) = if common.is_constant() {
            (num, den)
        } else {
            (
                num.div_exact(&common).expect("gcd divides numerator"),
                den.div_exact(&common).expect("gcd divides denominator"),
            )
        };
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num.divide_by_int_exact(&c).expect("content gcd divides");
            den = den.divide_by_int_exact(&c).expect("content gcd divides");
        }
        if den.leading_coeff().is_negative() {
            num = -&num;
            den = -&den;
        }
        RationalFunction { num, den }
    }

    pub fn from_poly(p: IntPoly) -> Self {
        RationalFunction { num: p, den: IntPoly::one() }
    }

    pub fn from_integer(n: BigInt) -> Self {
        RationalFunction::from_poly(IntPoly::constant(n))
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.num
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// max(deg num, deg den); 0 for the zero function.
    pub fn degree(&self) -> usize {
        self.num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0))
    }

    /// Evaluate at u₀; `None` where the denominator vanishes.
    pub fn eval(&self, u0: &BigRational) -> Option<BigRational> {
        let d = self.den.eval_rat(u0);
        if num_traits::Zero::is_zero(&d) {
            return None;
        }
        Some(self.num.eval_rat(u0) / d)
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        let (mut num, mut den) = (self.den.clone(), self.num.clone());
        if den.leading_coeff().is_negative() {
            num = -&num;
            den = -&den;
        }
        Some(RationalFunction { num, den })
    }

    pub fn mul_rf(&self, rhs: &Self) -> Self {
        if self.num.is_zero() || rhs.num.is_zero() {
            return RationalFunction::from_poly(IntPoly::zero());
        }
        // Cross-reduce first: the factors stay small and the final product
        // of two reduced, pairwise-coprime fractions is already reduced.
        let left = RationalFunction::reduced(self.num.clone(), rhs.den.clone());
        let right = RationalFunction::reduced(rhs.num.clone(), self.den.clone());
        RationalFunction { num: &left.num * &right.num, den: &left.den * &right.den }
    }

    pub fn add_rf(&self, rhs: &Self) -> Self {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        RationalFunction::reduced(num, den)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num.to_string_with_var('u'))
        } else {
            write!(
                f,
                "({}) / ({})",
                self.num.to_string_with_var('u'),
                self.den.to_string_with_var('u')
            )
        }
    }
}

impl FieldOps for RationalFunction {
    fn zero() -> Self {
        RationalFunction::from_poly(IntPoly::zero())
    }
    fn one() -> Self {
        RationalFunction::from_poly(IntPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        self.add_rf(rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add_rf(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.mul_rf(rhs)
    }
    fn neg(&self) -> Self {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
    fn inv(&self) -> Option<Self> {
        self.inverse()
    }
    fn from_i64(v: i64) -> Self {
        RationalFunction::from_poly(IntPoly::from_i64(v))
    }
}

/// The twisting polynomial g(u) = −ab(u²+1)(b²(u⁴+u²+1)³ + a³u⁴(u²+1)²).
/// Degree 14; rejects ab = 0 and singular parameters 4a³ + 27b² = 0.
pub fn mestre_g(a: &BigInt, b: &BigInt) -> Result<IntPoly> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::SingularParameters {
            what: "a*b must be nonzero",
            a: a.clone(),
            b: b.clone(),
        });
    }
    let disc = BigInt::from(4) * a * a * a + BigInt::from(27) * b * b;
    if disc.is_zero() {
        return Err(Error::SingularParameters {
            what: "4a^3 + 27b^2 must be nonzero",
            a: a.clone(),
            b: b.clone(),
        });
    }
    let u2p1 = IntPoly::from_i64_coeffs(&[1, 0, 1]);
    let s = IntPoly::from_i64_coeffs(&[1, 0, 1, 0, 1]); // u⁴ + u² + 1
    let core = &s.pow(3).scaled(&(b * b))
        + &u2p1.pow(2).scaled(&(a * a * a)).shifted_up(4);
    let g = (&u2p1 * &core).scaled(&-(a * b));
    debug_assert_eq!(g.degree(), Some(14));
    Ok(g)
}

/// The (a, b) twist family: curve y² = x³ + a·g²·x + b·g³ over ℚ(u) with
/// its two standard points.
#[derive(Clone, Debug)]
pub struct MestreFamily {
    pub a: BigInt,
    pub b: BigInt,
    pub g: IntPoly,
    pub curve: Curve<RationalFunction>,
    pub p: Point<RationalFunction>,
    pub q: Point<RationalFunction>,
}

impl MestreFamily {
    pub fn new(a: BigInt, b: BigInt) -> Result<Self> {
        let g = mestre_g(&a, &b)?;
        let g2 = &g * &g;
        let g3 = &g2 * &g;
        let curve = Curve::new_short(
            RationalFunction::from_poly(g2.scaled(&a)),
            RationalFunction::from_poly(g3.scaled(&b)),
        )?;
        let u2p1 = IntPoly::from_i64_coeffs(&[1, 0, 1]);
        let s = IntPoly::from_i64_coeffs(&[1, 0, 1, 0, 1]);
        let x_num = (&s * &g).scaled(&-&b);
        let y_num = g2.clone();
        let a2 = &a * &a;
        let p = Point::affine(
            RationalFunction::new(x_num.clone(), u2p1.scaled(&a))?,
            RationalFunction::new(y_num.clone(), u2p1.pow(2).scaled(&a2))?,
        );
        let q = Point::affine(
            RationalFunction::new(x_num, u2p1.scaled(&a).shifted_up(2))?,
            RationalFunction::new(y_num, u2p1.pow(2).scaled(&a2).shifted_up(3))?,
        );
        if !curve.contains(&p) || !curve.contains(&q) {
            return Err(Error::Construction(
                "standard family points failed the on-curve identity".to_string(),
            ));
        }
        Ok(MestreFamily { a, b, g, curve, p, q })
    }

    pub fn from_i64(a: i64, b: i64) -> Result<Self> {
        MestreFamily::new(BigInt::from(a), BigInt::from(b))
    }

    /// Coordinates of a finite point on the model g·y′² = x′³ + a·x′ + b:
    /// x′ = x/g, y′ = y/g².
    pub fn to_twisted_model(
        &self,
        t: &Point<RationalFunction>,
    ) -> Result<(RationalFunction, RationalFunction)> {
        let Point::Affine { x, y } = t else {
            return Err(Error::Construction(
                "the point at infinity has no affine twisted coordinates".to_string(),
            ));
        };
        let g_rf = RationalFunction::from_poly(self.g.clone());
        let x_t = x.div(&g_rf).expect("g is nonzero");
        let y_t = y.div(&g_rf.mul_rf(&g_rf)).expect("g is nonzero");
        debug_assert!({
            let lhs = g_rf.mul_rf(&y_t).mul_rf(&y_t);
            let rhs = x_t
                .mul_rf(&x_t)
                .mul_rf(&x_t)
                .add_rf(&x_t.mul_rf(&RationalFunction::from_integer(self.a.clone())))
                .add_rf(&RationalFunction::from_integer(self.b.clone()));
            lhs == rhs
        });
        Ok((x_t, y_t))
    }
}
