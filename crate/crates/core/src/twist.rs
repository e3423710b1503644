//! Injectivity criterion for quadratic twists.
//!
//! Input: a cubic f(x) = x³ + ax² + bx + c with exactly one rational root
//! and a nonconstant square-free twisting polynomial g ∈ ℤ[t]. The twisted
//! curve is y² = x³ + a·g·x² + b·g²·x + c·g³. After translating x by the
//! root, f becomes x·(x² + ãx + b̃) with the quadratic factor irreducible;
//! its splitting field is K = ℚ(√d) where ã² − 4b̃ = e²·d, d square-free.
//! Only class-number-one K are supported.
//!
//! The specialization t ↦ t₀ (with g(t₀) ≠ 0) is certified injective when
//! both hold:
//!
//! * (A1) no nonconstant square-free divisor h of b̃·g has h(t₀) a rational
//!   square, and
//! * (A2) no nonconstant square-free divisor h of e·g and square-free
//!   divisor d′ (either sign) of the field discriminant D have d′·h(t₀) a
//!   rational square.
//!
//! Both conditions reduce to GF(2) rank computations on square classes of
//! the factor values of g at t₀, with the sign and an allowed prime set
//! projected away; a failure is returned with an explicit square witness.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{
    factor_integer_with, integer_sqrt, rational_sqrt, square_class_with, FactorConfig, SquareClass,
};
use crate::criterion::{bruteforce_witness, class_dependency};
use crate::poly::factor::{factor_over_integers_with, FactoredPolynomial};
use crate::poly::IntPoly;
use crate::quadfield::{field_info_with, QuadFieldInfo, CLASS_NUMBER_ONE_D};
use crate::report::{CriterionReport, LabeledFactorization, Method, SquareWitness, Verdict};
use crate::{Error, Result};

/// Labels used in reports for the two checked products.
pub const TWIST_PRODUCT_LABELS: [&str; 2] = ["(A1) b*g", "(A2) e*g"];

/// The raw problem data: coefficients of the cubic and the twisting
/// polynomial.
#[derive(Clone, Debug)]
pub struct TwistInput {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub g: IntPoly,
}

impl TwistInput {
    /// Validates that g is nonconstant and square-free (no repeated
    /// nonconstant factor); the cubic is validated by [`normalize_twist`].
    pub fn new(a: BigInt, b: BigInt, c: BigInt, g: IntPoly) -> Result<Self> {
        if g.degree().is_none_or(|d| d == 0) {
            return Err(Error::BadTwistPolynomial { g: g.to_string_with_var('t') });
        }
        let repeated = g.gcd(&g.derivative());
        if repeated.degree() != Some(0) {
            return Err(Error::BadTwistPolynomial { g: g.to_string_with_var('t') });
        }
        Ok(TwistInput { a, b, c, g })
    }

    pub fn from_i64(a: i64, b: i64, c: i64, g: IntPoly) -> Result<Self> {
        TwistInput::new(BigInt::from(a), BigInt::from(b), BigInt::from(c), g)
    }
}

/// The cubic after translation by its unique rational root, together with
/// the square-class decomposition of the quadratic factor's discriminant.
#[derive(Clone, Debug)]
pub struct ShiftedForm {
    /// The rational (hence integer) root of the original cubic.
    pub root: BigInt,
    /// Quadratic coefficients after the shift: f(x + root) = x(x² + ãx + b̃).
    pub a_shift: BigInt,
    pub b_shift: BigInt,
    /// ã² − 4b̃ = e²·d with d square-free, e ≥ 1.
    pub e: BigInt,
    pub d: BigInt,
    /// Field data of K = ℚ(√d).
    pub field: QuadFieldInfo,
    /// Whether any factorization along the way used probabilistic primality.
    pub probabilistic: bool,
}

/// Distinct integer roots of x³ + ax² + bx + c, ascending. Every rational
/// root of a monic integer cubic is an integer, so this is the full set of
/// rational roots.
pub(crate) fn integer_roots_monic_cubic(
    a: &BigInt,
    b: &BigInt,
    c: &BigInt,
    cfg: &FactorConfig,
) -> Result<Vec<BigInt>> {
    let eval = |x: &BigInt| ((x + a) * x + b) * x + c;
    let mut roots = BTreeSet::new();
    if c.is_zero() {
        roots.insert(BigInt::zero());
        // Remaining roots solve x² + ax + b = 0.
        let disc = a * a - BigInt::from(4) * b;
        if !disc.is_negative() {
            if let Some(s) = integer_sqrt(&disc) {
                for numer in [-a + &s, -a - &s] {
                    if numer.is_even() {
                        roots.insert(numer / BigInt::from(2));
                    }
                }
            }
        }
    } else {
        for divisor in factor_integer_with(c, cfg)?.divisors() {
            for cand in [divisor.clone(), -divisor] {
                if eval(&cand).is_zero() {
                    roots.insert(cand);
                }
            }
        }
    }
    roots.retain(|r| eval(r).is_zero());
    Ok(roots.into_iter().collect())
}

/// Translate the cubic by its unique rational root and classify the
/// quadratic factor's splitting field.
///
/// Errors: [`Error::RepeatedRoot`] for singular cubics,
/// [`Error::NoRationalRoot`] / [`Error::FullySplit`] when the root count is
/// 0 or 3 (the fully split case belongs to the three-branch-point
/// criterion), and [`Error::UnsupportedField`] when d falls outside the
/// class-number-one list.
pub fn normalize_twist(input: &TwistInput) -> Result<ShiftedForm> {
    normalize_twist_with(input, &FactorConfig::default())
}

pub fn normalize_twist_with(input: &TwistInput, cfg: &FactorConfig) -> Result<ShiftedForm> {
    let (a, b, c) = (&input.a, &input.b, &input.c);
    // Discriminant of the monic cubic; zero exactly for repeated roots.
    let (a2, b2) = (a * a, b * b);
    let disc_f = BigInt::from(18) * a * b * c - BigInt::from(4) * &a2 * a * c + &a2 * &b2
        - BigInt::from(4) * &b2 * b
        - BigInt::from(27) * c * c;
    if disc_f.is_zero() {
        return Err(Error::RepeatedRoot);
    }
    let roots = integer_roots_monic_cubic(a, b, c, cfg)?;
    let root = match roots.len() {
        0 => return Err(Error::NoRationalRoot),
        1 => roots.into_iter().next().expect("len checked"),
        // Two distinct rational roots force a rational third root, so any
        // count above one means the cubic splits completely.
        _ => return Err(Error::FullySplit),
    };
    let a_shift = a + BigInt::from(3) * &root;
    let b_shift = BigInt::from(3) * &root * &root + BigInt::from(2) * a * &root + b;
    debug_assert!(
        (((&root + a) * &root + b) * &root + c).is_zero(),
        "shift origin must be a root"
    );
    let disc_q = &a_shift * &a_shift - BigInt::from(4) * &b_shift;
    debug_assert!(!disc_q.is_zero(), "cubic discriminant already nonzero");
    let fact = factor_integer_with(&disc_q, cfg)?;
    let d = fact.squarefree_part();
    let e = integer_sqrt(&(&disc_q / &d)).expect("square-free part divided out");
    debug_assert!(!d.is_one(), "square discriminant means a split quadratic");
    if !d.to_i64().is_some_and(|v| CLASS_NUMBER_ONE_D.contains(&v)) {
        return Err(Error::UnsupportedField { d });
    }
    let field = field_info_with(&d, cfg)?;
    Ok(ShiftedForm { root, a_shift, b_shift, e, d, field, probabilistic: fact.probabilistic })
}

/// A twist instance with every factorization done once, ready for repeated
/// specialization checks.
#[derive(Clone, Debug)]
pub struct PreparedTwist {
    form: ShiftedForm,
    g: IntPoly,
    /// Distinct irreducible factors of g (all multiplicity one).
    factors: Vec<IntPoly>,
    /// b̃·g and e·g as factored objects, in report order.
    product_a1: FactoredPolynomial,
    product_a2: FactoredPolynomial,
    /// Allowed primes for (A1): those dividing b̃·content(g).
    span_a1: BTreeSet<BigInt>,
    /// Allowed primes for (A2): those dividing e·content(g) or D.
    span_a2: BTreeSet<BigInt>,
    /// The subset of span_a2 attributed to the divisor-of-e·g side when a
    /// witness is split into h and d′.
    h_side_primes: BTreeSet<BigInt>,
    /// Distinct primes of |D|, ascending.
    disc_primes: Vec<BigInt>,
    cfg: FactorConfig,
    probabilistic: bool,
    factorization_ms: u64,
}

impl PreparedTwist {
    pub fn new(input: TwistInput) -> Result<Self> {
        PreparedTwist::with_config(input, FactorConfig::default())
    }

    pub fn with_config(input: TwistInput, cfg: FactorConfig) -> Result<Self> {
        let form = normalize_twist_with(&input, &cfg)?;
        PreparedTwist::from_shifted_with(form, input.g, cfg)
    }

    /// Assemble directly from an already-shifted form. The normal entry
    /// point is [`PreparedTwist::new`]; this one serves callers that start
    /// from the c = 0 shape x(x² + ãx + b̃) with known e, d.
    pub fn from_shifted(form: ShiftedForm, g: IntPoly) -> Result<Self> {
        PreparedTwist::from_shifted_with(form, g, FactorConfig::default())
    }

    pub fn from_shifted_with(
        form: ShiftedForm,
        g: IntPoly,
        cfg: FactorConfig,
    ) -> Result<Self> {
        let start = Instant::now();
        if form.b_shift.is_zero() {
            return Err(Error::Construction(
                "quadratic factor must have a nonzero constant term".to_string(),
            ));
        }
        if !form.e.is_positive() {
            return Err(Error::Construction("e must be a positive integer".to_string()));
        }
        if form.d != form.field.d {
            return Err(Error::Construction("field data does not match d".to_string()));
        }
        if !form.field.class_number_one {
            return Err(Error::UnsupportedField { d: form.d.clone() });
        }
        let g_fact = factor_over_integers_with(&g, &cfg)?;
        if g_fact.factors.is_empty() || g_fact.factors.values().any(|m| *m > 1) {
            return Err(Error::BadTwistPolynomial { g: g.to_string_with_var('t') });
        }
        let product_a1 = g_fact.mul_integer(&form.b_shift, &cfg)?;
        let product_a2 = g_fact.mul_integer(&form.e, &cfg)?;
        let disc_fact = factor_integer_with(&form.field.discriminant, &cfg)?;
        let factors = g_fact.distinct_factors();
        let span_a1: BTreeSet<BigInt> = product_a1.distinct_constant_primes().into_iter().collect();
        let h_side_primes: BTreeSet<BigInt> =
            product_a2.distinct_constant_primes().into_iter().collect();
        let disc_primes = disc_fact.distinct_primes();
        let mut span_a2 = h_side_primes.clone();
        span_a2.extend(disc_primes.iter().cloned());
        let probabilistic = form.probabilistic
            || g_fact.probabilistic
            || product_a1.probabilistic
            || product_a2.probabilistic
            || disc_fact.probabilistic;
        Ok(PreparedTwist {
            form,
            g,
            factors,
            product_a1,
            product_a2,
            span_a1,
            span_a2,
            h_side_primes,
            disc_primes,
            cfg,
            probabilistic,
            factorization_ms: start.elapsed().as_millis() as u64,
        })
    }

    pub fn form(&self) -> &ShiftedForm {
        &self.form
    }

    pub fn twist_polynomial(&self) -> &IntPoly {
        &self.g
    }

    pub fn products(&self) -> Vec<LabeledFactorization> {
        vec![
            LabeledFactorization {
                label: TWIST_PRODUCT_LABELS[0].to_string(),
                factorization: self.product_a1.clone(),
            },
            LabeledFactorization {
                label: TWIST_PRODUCT_LABELS[1].to_string(),
                factorization: self.product_a2.clone(),
            },
        ]
    }

    /// The twisted specialization is singular exactly where g vanishes (the
    /// cubic itself is separable by construction).
    pub fn is_singular_at(&self, t0: &BigRational) -> bool {
        self.g.eval_rat(t0).is_zero()
    }

    /// Run both conditions at t₀ via the GF(2) reduction.
    pub fn check_at(&self, t0: &BigRational) -> Result<CriterionReport> {
        let start = Instant::now();
        let mut probabilistic = self.probabilistic;
        if self.is_singular_at(t0) {
            return Ok(self.report(Verdict::SingularSpecialization, t0, Method::Gf2,
                probabilistic, None, start));
        }
        let mut values = Vec::with_capacity(self.factors.len());
        let mut classes = Vec::with_capacity(self.factors.len());
        for f in &self.factors {
            let v = f.eval_rat(t0);
            if v.is_zero() {
                return Err(Error::Internal(
                    "factor vanished past the singularity guard".to_string(),
                ));
            }
            let (class, prob) = square_class_with(&v, &self.cfg)?;
            probabilistic |= prob;
            values.push(v);
            classes.push(class);
        }
        if let Some(subset) = class_dependency(&classes, &self.span_a1) {
            let witness = self.assemble_witness(0, &subset, &classes, &values)?;
            return Ok(self.report(Verdict::Fail, t0, Method::Gf2, probabilistic,
                Some(witness), start));
        }
        if let Some(subset) = class_dependency(&classes, &self.span_a2) {
            let witness = self.assemble_witness(1, &subset, &classes, &values)?;
            return Ok(self.report(Verdict::Fail, t0, Method::Gf2, probabilistic,
                Some(witness), start));
        }
        Ok(self.report(Verdict::Pass, t0, Method::Gf2, probabilistic, None, start))
    }

    /// Same contract as [`PreparedTwist::check_at`], by direct enumeration
    /// of candidate divisors h (and d′ for (A2)); exponential, used as an
    /// oracle.
    pub fn check_at_bruteforce(&self, t0: &BigRational) -> Result<CriterionReport> {
        let start = Instant::now();
        let probabilistic = self.probabilistic;
        if self.is_singular_at(t0) {
            return Ok(self.report(Verdict::SingularSpecialization, t0, Method::BruteForce,
                probabilistic, None, start));
        }
        if let Some(witness) = bruteforce_witness(
            TWIST_PRODUCT_LABELS[0],
            self.product_a1.distinct_constant_primes(),
            None,
            self.factors.clone(),
            t0,
        )? {
            return Ok(self.report(Verdict::Fail, t0, Method::BruteForce, probabilistic,
                Some(witness), start));
        }
        if let Some(witness) = bruteforce_witness(
            TWIST_PRODUCT_LABELS[1],
            self.product_a2.distinct_constant_primes(),
            Some(self.disc_primes.clone()),
            self.factors.clone(),
            t0,
        )? {
            return Ok(self.report(Verdict::Fail, t0, Method::BruteForce, probabilistic,
                Some(witness), start));
        }
        Ok(self.report(Verdict::Pass, t0, Method::BruteForce, probabilistic, None, start))
    }

    /// Turn a dependent subset into a concrete square: for (A1) the whole
    /// residual class joins h; for (A2) residual primes dividing
    /// e·content(g) stay on the h side and the rest form the positive
    /// discriminant divisor d′, with the sign kept on h.
    fn assemble_witness(
        &self,
        which: usize,
        subset: &[usize],
        classes: &[SquareClass],
        values: &[BigRational],
    ) -> Result<SquareWitness> {
        let mut class = SquareClass::trivial();
        let mut chosen = Vec::new();
        let mut value = BigRational::one();
        for &j in subset {
            class = class.mul(&classes[j]);
            chosen.push(self.factors[j].clone());
            value *= &values[j];
        }
        let mut constant_primes = Vec::new();
        let mut disc_divisor = BigInt::one();
        for p in &class.odd_primes {
            value *= BigRational::from_integer(p.clone());
            if which == 0 || self.h_side_primes.contains(p) {
                constant_primes.push(p.clone());
            } else {
                debug_assert!(self.disc_primes.contains(p), "residual prime outside the span");
                disc_divisor *= p;
            }
        }
        if class.negative {
            value = -value;
        }
        let square_root = rational_sqrt(&value)
            .ok_or_else(|| Error::Internal("dependency witness is not a square".to_string()))?;
        Ok(SquareWitness {
            product: TWIST_PRODUCT_LABELS[which].to_string(),
            negative: class.negative,
            constant_primes,
            disc_divisor: (which == 1).then_some(disc_divisor),
            factors: chosen,
            value,
            square_root,
        })
    }

    fn report(
        &self,
        verdict: Verdict,
        t0: &BigRational,
        method: Method,
        probabilistic: bool,
        witness: Option<SquareWitness>,
        start: Instant,
    ) -> CriterionReport {
        CriterionReport {
            verdict,
            t0: t0.clone(),
            method,
            probabilistic,
            products: self.products(),
            witness,
            note: None,
            factorization_ms: self.factorization_ms,
            total_ms: self.factorization_ms + start.elapsed().as_millis() as u64,
        }
    }
}

/// One-shot convenience: normalize, prepare and check a single point.
pub fn check_twist(input: &TwistInput, t0: &BigRational) -> Result<CriterionReport> {
    PreparedTwist::new(input.clone())?.check_at(t0)
}

pub fn check_twist_bruteforce(input: &TwistInput, t0: &BigRational) -> Result<CriterionReport> {
    PreparedTwist::new(input.clone())?.check_at_bruteforce(t0)
}

/// Check every integer t₀ in `lo..=hi`; data-parallel when the `parallel`
/// feature is on.
pub fn search_integer_range(
    input: &TwistInput,
    lo: i64,
    hi: i64,
) -> Result<Vec<(i64, CriterionReport)>> {
    search_integer_range_with(input, lo, hi, &FactorConfig::default())
}

/// [`search_integer_range`] with explicit factoring settings.
pub fn search_integer_range_with(
    input: &TwistInput,
    lo: i64,
    hi: i64,
    cfg: &FactorConfig,
) -> Result<Vec<(i64, CriterionReport)>> {
    let prepared = PreparedTwist::with_config(input.clone(), cfg.clone())?;
    let points: Vec<i64> = (lo..=hi).collect();
    run_points(&prepared, points)
}

#[cfg(feature = "parallel")]
fn run_points(
    prepared: &PreparedTwist,
    points: Vec<i64>,
) -> Result<Vec<(i64, CriterionReport)>> {
    use rayon::prelude::*;
    points
        .into_par_iter()
        .map(|t| {
            let report = prepared.check_at(&BigRational::from_integer(BigInt::from(t)))?;
            Ok((t, report))
        })
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn run_points(
    prepared: &PreparedTwist,
    points: Vec<i64>,
) -> Result<Vec<(i64, CriterionReport)>> {
    points
        .into_iter()
        .map(|t| {
            let report = prepared.check_at(&BigRational::from_integer(BigInt::from(t)))?;
            Ok((t, report))
        })
        .collect()
}

/// Same sweep, forced single-threaded regardless of features.
pub fn search_integer_range_sequential(
    input: &TwistInput,
    lo: i64,
    hi: i64,
) -> Result<Vec<(i64, CriterionReport)>> {
    let prepared = PreparedTwist::new(input.clone())?;
    (lo..=hi)
        .map(|t| {
            let report = prepared.check_at(&BigRational::from_integer(BigInt::from(t)))?;
            Ok((t, report))
        })
        .collect()
}
