//! Evaluation of a curve over Q(u) at a rational point u = u0.
//!
//! A short-form curve y^2 = x^3 + A(u)x + B(u) specializes at u0 to a curve
//! over Q once A and B are finite there and the specialized discriminant is
//! nonzero.  We additionally clear denominators: the minimal positive integer
//! m with m^4 A(u0) and m^6 B(u0) integral gives the integer model
//! y^2 = x^3 + m^4 A(u0) x + m^6 B(u0), and points follow along via
//! (x, y) -> (m^2 x(u0), m^3 y(u0)).  A
//! coordinate with a pole at u0 sends the point to infinity, matching
//! projective evaluation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{factor_integer_with, FactorConfig};
use crate::ec::{Curve, Point};
use crate::ffcurve::RationalFunction;
use crate::report::rational_string;
use crate::{Error, Result};

/// Integer model of a specialized curve y^2 = x^3 + a4 x + a6, together with
/// the scaling factor that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecializedCurve {
    pub a4: BigInt,
    pub a6: BigInt,
    /// Minimal m >= 1 with m^4 A(u0) and m^6 B(u0) both integral.
    pub scale: BigInt,
}

impl SpecializedCurve {
    /// The curve as a group-law-capable object over Q.
    pub fn as_curve(&self) -> Curve<BigRational> {
        let a4 = BigRational::from(self.a4.clone());
        let a6 = BigRational::from(self.a6.clone());
        Curve::new_short(a4, a6).expect("specialized curve was checked nonsingular")
    }
}

/// Specializes a short-form curve over Q(u) at u = u0 with default settings.
pub fn specialize_curve(curve: &Curve<RationalFunction>, u0: &BigRational) -> Result<SpecializedCurve> {
    specialize_curve_with(curve, u0, &FactorConfig::default())
}

/// Specializes a short-form curve over Q(u) at u = u0.
///
/// Fails with [`Error::SingularSpecialization`] when a coefficient has a pole
/// at u0 or the specialized discriminant vanishes, and with
/// [`Error::Construction`] when the curve carries an x^2 term.
pub fn specialize_curve_with(
    curve: &Curve<RationalFunction>,
    u0: &BigRational,
    cfg: &FactorConfig,
) -> Result<SpecializedCurve> {
    if !crate::ec::FieldOps::is_zero(&curve.a2) {
        return Err(Error::Construction(
            "specialization expects a short-form curve (no x^2 term)".into(),
        ));
    }
    let singular = || Error::SingularSpecialization { t0: rational_string(u0) };
    let alpha = curve.a4.eval(u0).ok_or_else(singular)?;
    let beta = curve.a6.eval(u0).ok_or_else(singular)?;
    let disc = BigRational::from(BigInt::from(4)) * alpha.pow(3)
        + BigRational::from(BigInt::from(27)) * beta.pow(2);
    if disc.is_zero() {
        return Err(singular());
    }

    // Minimal clearing scale: for each prime p dividing a denominator, take
    // p^max(ceil(v_p(den A)/4), ceil(v_p(den B)/6)).
    let mut scale = BigInt::one();
    let fa = factor_integer_with(alpha.denom(), cfg)?;
    let fb = factor_integer_with(beta.denom(), cfg)?;
    let mut primes: Vec<BigInt> = fa.factors.keys().cloned().collect();
    for p in fb.factors.keys() {
        if !fa.factors.contains_key(p) {
            primes.push(p.clone());
        }
    }
    for p in &primes {
        let va = fa.factors.get(p).copied().unwrap_or(0);
        let vb = fb.factors.get(p).copied().unwrap_or(0);
        let e = std::cmp::max(va.div_ceil(4), vb.div_ceil(6));
        scale *= p.pow(e);
    }

    let m2 = &scale * &scale;
    let m4 = &m2 * &m2;
    let m6 = &m4 * &m2;
    let a4 = (alpha * BigRational::from(m4)).to_integer();
    let a6 = (beta * BigRational::from(m6)).to_integer();
    Ok(SpecializedCurve { a4, a6, scale })
}

/// Sends a point of the curve over Q(u) to the specialized integer model.
///
/// Infinity maps to infinity; so does any point with a coordinate pole at u0
/// (projective evaluation).  The caller is responsible for `t` lying on the
/// curve that produced `spec`.
pub fn specialize_point(
    spec: &SpecializedCurve,
    t: &Point<RationalFunction>,
    u0: &BigRational,
) -> Point<BigRational> {
    let Point::Affine { x, y } = t else {
        return Point::Infinity;
    };
    let (Some(xv), Some(yv)) = (x.eval(u0), y.eval(u0)) else {
        return Point::Infinity;
    };
    let m2 = BigRational::from(&spec.scale * &spec.scale);
    let m3 = &m2 * BigRational::from(spec.scale.clone());
    Point::Affine { x: xv * m2, y: yv * m3 }
}
