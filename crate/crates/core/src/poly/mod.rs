//! Exact univariate polynomial algebra over Z and Q.
//!
//! [`IntPoly`] is the workhorse: dense coefficients, exact division, content
//! and primitive part, and a primitive-PRS gcd. [`RatPoly`] adds division
//! with remainder over Q. Parsing lives in [`parse`], square-free
//! decomposition in [`squarefree`], and factorization into irreducibles in
//! [`factor`] (with the finite-field helpers in [`modp`]).

pub mod factor;
pub mod modp;
pub mod parse;
pub mod squarefree;

pub use parse::parse_poly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Polynomial in Z[t]. Coefficients are stored lowest degree first with no
/// trailing zeros; the zero polynomial is the empty list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        if c.is_zero() {
            IntPoly::zero()
        } else {
            IntPoly { coeffs: vec![c] }
        }
    }

    pub fn from_i64(c: i64) -> Self {
        IntPoly::constant(BigInt::from(c))
    }

    /// The monomial t.
    pub fn x() -> Self {
        IntPoly::monomial(BigInt::one(), 1)
    }

    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    /// Convenience for literals, lowest degree first.
    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    /// Coefficients lowest degree first, no trailing zeros.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree <= 0.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Zero for the zero polynomial.
    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_coeff(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    pub fn scaled(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiply by t^k.
    pub fn shifted_up(&self, k: usize) -> IntPoly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        let mut acc = IntPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Gcd of the coefficients, nonnegative; zero only for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut c = BigInt::zero();
        for a in &self.coeffs {
            c = c.gcd(a);
            if c.is_one() {
                break;
            }
        }
        c
    }

    /// `self` divided by its content. The sign of the leading coefficient is
    /// preserved; the zero polynomial maps to itself.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let c = self.content();
        if c.is_one() {
            self.clone()
        } else {
            self.divide_by_int_exact(&c).expect("content divides")
        }
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        let mut m = BigInt::zero();
        for c in &self.coeffs {
            let a = c.abs();
            if a > m {
                m = a;
            }
        }
        m
    }

    /// Divide every coefficient by `c`, or `None` if any division is inexact.
    pub fn divide_by_int_exact(&self, c: &BigInt) -> Option<IntPoly> {
        if c.is_zero() {
            return None;
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            let (q, r) = a.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            coeffs.push(q);
        }
        Some(IntPoly { coeffs })
    }

    /// Exact division in Z[t]: `Some(q)` with `self == q * g`, else `None`.
    pub fn div_exact(&self, g: &IntPoly) -> Option<IntPoly> {
        if g.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let dg = g.degree().expect("nonzero");
        let df = self.degree().expect("nonzero");
        if df < dg {
            return None;
        }
        let lg = g.leading_coeff();
        let mut q = vec![BigInt::zero(); df - dg + 1];
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dg {
                return None;
            }
            let (quot, rem) = r.leading_coeff().div_rem(&lg);
            if !rem.is_zero() {
                return None;
            }
            r = &r - &g.shifted_up(dr - dg).scaled(&quot);
            q[dr - dg] = quot;
        }
        Some(IntPoly::from_coeffs(q))
    }

    /// Pseudo-remainder: repeatedly cancels the leading term after scaling by
    /// the divisor's leading coefficient. Only used up to content, so the
    /// extra constant multiples are harmless.
    fn pseudo_rem(&self, g: &IntPoly) -> IntPoly {
        let dg = g.degree().expect("pseudo_rem by zero");
        let lg = g.leading_coeff();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dg {
                break;
            }
            let lead = r.leading_coeff();
            r = &r.scaled(&lg) - &g.shifted_up(dr - dg).scaled(&lead);
        }
        r
    }

    /// Gcd in Z[t] via the primitive polynomial remainder sequence. The
    /// result is primitive with positive leading coefficient (contents of the
    /// inputs are deliberately not included); gcd(0, 0) = 0.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        fn normalize(f: IntPoly) -> IntPoly {
            if f.is_zero() {
                return f;
            }
            let pp = f.primitive_part();
            if pp.leading_coeff().is_negative() {
                -&pp
            } else {
                pp
            }
        }
        let mut a = normalize(self.clone());
        let mut b = normalize(other.clone());
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = normalize(a.pseudo_rem(&b));
            a = b;
            b = r;
        }
        a
    }

    pub fn to_string_with_var(&self, var: char) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mag = c.abs();
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                s.push_str(&mag.to_string());
            }
            if k > 0 {
                if show_coeff {
                    s.push('*');
                }
                s.push(var);
                if k > 1 {
                    s.push('^');
                    s.push_str(&k.to_string());
                }
            }
        }
        s
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with_var('t'))
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({})", self.to_string_with_var('t'))
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero);
            let b = rhs.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero);
            coeffs.push(a + b);
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero);
            let b = rhs.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero);
            coeffs.push(a - b);
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

/// Polynomial in Q[t], same dense representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        let mut p = RatPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_int_poly(f: &IntPoly) -> Self {
        RatPoly {
            coeffs: f.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect(),
        }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Quotient and remainder in Q[t] with `deg r < deg g`.
    pub fn divmod(&self, g: &RatPoly) -> Result<(RatPoly, RatPoly)> {
        if g.is_zero() {
            return Err(Error::ZeroPolyDivision);
        }
        let dg = g.degree().expect("nonzero");
        let lg = g.leading_coeff();
        let mut r = self.coeffs.clone();
        let df = self.coeffs.len();
        let mut q = vec![BigRational::zero(); df.saturating_sub(dg)];
        while r.len() > dg {
            let dr = r.len() - 1;
            let factor = r.last().expect("nonempty") / &lg;
            if !factor.is_zero() {
                for (k, gc) in g.coeffs.iter().enumerate() {
                    let idx = dr - dg + k;
                    r[idx] = &r[idx] - &(&factor * gc);
                }
                q[dr - dg] = factor;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Ok((RatPoly::from_coeffs(q), RatPoly::from_coeffs(r)))
    }

    /// Smallest positive `D` with `D * self` integral, together with that
    /// integer polynomial: returns `(f, D)` with `self = f / D`.
    pub fn clear_denominators(&self) -> (IntPoly, BigInt) {
        let mut d = BigInt::one();
        for c in &self.coeffs {
            d = d.lcm(c.denom());
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let scaled = c * BigRational::from_integer(d.clone());
                debug_assert!(scaled.is_integer());
                scaled.to_integer()
            })
            .collect();
        (IntPoly::from_coeffs(coeffs), d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_poly;

    fn p(s: &str) -> IntPoly {
        parse_poly(s).unwrap().0
    }

    #[test]
    fn arithmetic_basics() {
        let f = p("t^2 - t + 10");
        let g = p("t + 1");
        assert_eq!(&f + &g, p("t^2 + 11"));
        assert_eq!(&f - &g, p("t^2 - 2*t + 9"));
        assert_eq!(&f * &g, p("t^3 + 9*t + 10"));
        assert_eq!(-&g, p("-t - 1"));
        assert_eq!(f.derivative(), p("2*t - 1"));
        assert_eq!(f.eval_int(&BigInt::from(3)), BigInt::from(16));
        assert_eq!(
            f.eval_rat(&BigRational::new(BigInt::from(1), BigInt::from(2))),
            BigRational::new(BigInt::from(39), BigInt::from(4))
        );
    }

    #[test]
    fn degree_and_edges() {
        assert_eq!(IntPoly::zero().degree(), None);
        assert_eq!(IntPoly::one().degree(), Some(0));
        assert_eq!(p("t^3").degree(), Some(3));
        assert_eq!(&p("t^2") - &p("t^2"), IntPoly::zero());
        assert!(p("5").is_constant());
        assert!(!p("t").is_constant());
    }

    #[test]
    fn content_and_primitive_part() {
        let f = p("6*t^2 + 9");
        assert_eq!(f.content(), BigInt::from(3));
        assert_eq!(f.primitive_part(), p("2*t^2 + 3"));
        let g = p("-4*t - 6");
        assert_eq!(g.content(), BigInt::from(2));
        assert_eq!(g.primitive_part(), p("-2*t - 3"));
        assert_eq!(IntPoly::zero().content(), BigInt::zero());
    }

    #[test]
    fn exact_division() {
        let f = p("t^3 - 9*t + 10");
        assert_eq!(f.div_exact(&p("t + 1")), None);
        assert_eq!(f.div_exact(&p("t + 2")), None);
        let g = &f * &p("3*t - 5");
        assert_eq!(g.div_exact(&f), Some(p("3*t - 5")));
        assert_eq!(g.div_exact(&p("3*t - 5")), Some(f.clone()));
        assert_eq!(IntPoly::zero().div_exact(&f), Some(IntPoly::zero()));
        assert_eq!(f.div_exact(&IntPoly::zero()), None);
        // 2t + 2 does not divide t^2 - 1 over Z (content obstruction).
        assert_eq!(p("t^2 - 1").div_exact(&p("2*t + 2")), None);
        assert_eq!(
            p("t^2 - 1").divide_by_int_exact(&BigInt::from(1)),
            Some(p("t^2 - 1"))
        );
        assert_eq!(p("2*t^2 - 2").divide_by_int_exact(&BigInt::from(2)), Some(p("t^2 - 1")));
        assert_eq!(p("t^2 - 1").divide_by_int_exact(&BigInt::from(2)), None);
    }

    #[test]
    fn gcd_examples() {
        let f = &p("t^2 - 1") * &p("2*t + 4");
        let g = &p("t^2 + 3*t + 2") * &p("6");
        assert_eq!(f.gcd(&g), p("t^2 + 3*t + 2"));
        assert_eq!(p("t^2 - 1").gcd(&p("t^2 + 3*t + 2")), p("t + 1"));
        // Contents are not part of the gcd, and the sign is normalized.
        let a = p("-4*t - 4");
        let b = p("6*t + 6");
        assert_eq!(a.gcd(&b), p("t + 1"));
        assert_eq!(IntPoly::zero().gcd(&p("-3*t")), p("t"));
        assert_eq!(IntPoly::zero().gcd(&IntPoly::zero()), IntPoly::zero());
    }

    #[test]
    fn ratpoly_divmod() {
        let f = RatPoly::from_int_poly(&p("t^3 + 2*t + 1"));
        let g = RatPoly::from_int_poly(&p("2*t^2 + 1"));
        let (q, r) = f.divmod(&g).unwrap();
        // t^3 + 2t + 1 = (t/2)(2t^2 + 1) + (3t/2 + 1)
        let half_t = RatPoly::from_coeffs(vec![
            BigRational::zero(),
            BigRational::new(BigInt::from(1), BigInt::from(2)),
        ]);
        assert_eq!(q, half_t);
        assert_eq!(
            r,
            RatPoly::from_coeffs(vec![
                BigRational::from_integer(BigInt::one()),
                BigRational::new(BigInt::from(3), BigInt::from(2)),
            ])
        );
        assert!(f.divmod(&RatPoly::zero()).is_err());
    }

    #[test]
    fn clear_denominators_works() {
        let f = RatPoly::from_coeffs(vec![
            BigRational::new(BigInt::from(1), BigInt::from(6)),
            BigRational::new(BigInt::from(3), BigInt::from(4)),
        ]);
        let (g, d) = f.clear_denominators();
        assert_eq!(d, BigInt::from(12));
        assert_eq!(g, p("9*t + 2"));
    }

    #[test]
    fn rendering() {
        assert_eq!(p("t^2 - t + 10").to_string_with_var('t'), "t^2 - t + 10");
        assert_eq!(p("-7*u^4 + 3").to_string_with_var('u'), "-7*u^4 + 3");
        assert_eq!(IntPoly::zero().to_string_with_var('t'), "0");
        assert_eq!(p("-t").to_string_with_var('t'), "-t");
        assert_eq!(p("2*t").to_string_with_var('t'), "2*t");
        assert_eq!(p("t^2+0*t+1").to_string_with_var('t'), "t^2 + 1");
    }
}
