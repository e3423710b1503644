//! The split-cubic injectivity criterion.
//!
//! For `y^2 = (x - e1)(x - e2)(x - e3)` with the `e_j` in Z[t], consider the
//! three products `F_i = (e_i - e_j)(e_i - e_k)`. Specialization at t0 is
//! injective on rational points as soon as, for each `F_i`, no nonconstant
//! square-free divisor `h` (built from the irreducible factors of `F_i` and
//! sign/constant primes of `F_i`) has `h(t0)` a rational square. In square-
//! class language: the classes of the distinct irreducible factor values at
//! t0 must be linearly independent over GF(2) modulo the span of the sign
//! and of the primes dividing the constant part of `F_i`.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{
    is_rational_square, rational_sqrt, square_class_with, FactorConfig, SquareClass,
};
use crate::gf2;
use crate::poly::factor::{factor_over_integers_with, FactoredPolynomial};
use crate::poly::IntPoly;
use crate::report::{
    CriterionReport, LabeledFactorization, Method, SquareWitness, Verdict,
};
use crate::{Error, Result};

/// The brute-force oracle enumerates `2^(pieces+1)` divisors per product;
/// beyond this many distinct pieces it refuses.
pub const BRUTE_FORCE_LIMIT: usize = 20;

pub const PRODUCT_LABELS: [&str; 3] =
    ["(e1-e2)*(e1-e3)", "(e2-e1)*(e2-e3)", "(e3-e1)*(e3-e2)"];

/// A curve `y^2 = (x - e1)(x - e2)(x - e3)` with integer-polynomial branch
/// points, not identically singular.
#[derive(Clone, Debug)]
pub struct CurveOverQt {
    e: [IntPoly; 3],
    diffs: [IntPoly; 3], // e1-e2, e2-e3, e3-e1
}

impl CurveOverQt {
    pub fn new(e1: IntPoly, e2: IntPoly, e3: IntPoly) -> Result<Self> {
        let d12 = &e1 - &e2;
        let d23 = &e2 - &e3;
        let d31 = &e3 - &e1;
        if d12.is_zero() || d23.is_zero() || d31.is_zero() {
            return Err(Error::SingularCurve);
        }
        if d12.is_constant() && d23.is_constant() && d31.is_constant() {
            return Err(Error::ConstantCurve);
        }
        Ok(CurveOverQt { e: [e1, e2, e3], diffs: [d12, d23, d31] })
    }

    pub fn branch_points(&self) -> &[IntPoly; 3] {
        &self.e
    }

    /// `(e1-e2, e2-e3, e3-e1)`.
    pub fn differences(&self) -> &[IntPoly; 3] {
        &self.diffs
    }

    /// Some difference vanishes at t0, i.e. the specialized curve is singular.
    pub fn is_singular_at(&self, t0: &BigRational) -> bool {
        self.diffs.iter().any(|d| d.eval_rat(t0).is_zero())
    }
}

/// Curve data factored once, reusable across many specialization points.
pub struct PreparedCurve {
    curve: CurveOverQt,
    products: [FactoredPolynomial; 3],
    cfg: FactorConfig,
    probabilistic: bool,
    factorization_ms: u64,
}

impl PreparedCurve {
    pub fn new(curve: CurveOverQt) -> Result<Self> {
        PreparedCurve::with_config(curve, FactorConfig::default())
    }

    pub fn with_config(curve: CurveOverQt, cfg: FactorConfig) -> Result<Self> {
        let start = Instant::now();
        // Each of the three differences is factored exactly once and the
        // products assembled from the shared pieces.
        let f12 = factor_over_integers_with(&curve.diffs[0], &cfg)?;
        let f23 = factor_over_integers_with(&curve.diffs[1], &cfg)?;
        let f31 = factor_over_integers_with(&curve.diffs[2], &cfg)?;
        // F1 = (e1-e2)(e1-e3) = -(e1-e2)(e3-e1), and cyclically.
        let products = [
            f12.mul(&f31).negated(),
            f12.mul(&f23).negated(),
            f31.mul(&f23).negated(),
        ];
        let probabilistic = products.iter().any(|p| p.probabilistic);
        Ok(PreparedCurve {
            curve,
            products,
            cfg,
            probabilistic,
            factorization_ms: start.elapsed().as_millis() as u64,
        })
    }

    pub fn curve(&self) -> &CurveOverQt {
        &self.curve
    }

    pub fn products(&self) -> Vec<LabeledFactorization> {
        PRODUCT_LABELS
            .iter()
            .zip(&self.products)
            .map(|(label, factorization)| LabeledFactorization {
                label: label.to_string(),
                factorization: factorization.clone(),
            })
            .collect()
    }

    /// Evaluate the criterion at one point via GF(2) elimination.
    pub fn check_at(&self, t0: &BigRational) -> Result<CriterionReport> {
        let start = Instant::now();
        let mut probabilistic = self.probabilistic;
        if self.curve.is_singular_at(t0) {
            return Ok(self.report(Verdict::SingularSpecialization, t0, Method::Gf2,
                probabilistic, None, None, start));
        }
        for (idx, product) in self.products.iter().enumerate() {
            if let Some(witness) =
                self.gf2_witness(idx, product, t0, &mut probabilistic)?
            {
                return Ok(self.report(Verdict::Fail, t0, Method::Gf2, probabilistic,
                    Some(witness), None, start));
            }
        }
        Ok(self.report(Verdict::Pass, t0, Method::Gf2, probabilistic, None, None, start))
    }

    /// Evaluate the criterion by directly enumerating every candidate
    /// square-free divisor. Exponential; serves as an oracle for `check_at`.
    pub fn check_at_bruteforce(&self, t0: &BigRational) -> Result<CriterionReport> {
        let start = Instant::now();
        let probabilistic = self.probabilistic;
        if self.curve.is_singular_at(t0) {
            return Ok(self.report(Verdict::SingularSpecialization, t0, Method::BruteForce,
                probabilistic, None, None, start));
        }
        for (idx, product) in self.products.iter().enumerate() {
            if let Some(witness) = bruteforce_witness(
                PRODUCT_LABELS[idx],
                product.distinct_constant_primes(),
                None,
                product.distinct_factors(),
                t0,
            )? {
                return Ok(self.report(Verdict::Fail, t0, Method::BruteForce, probabilistic,
                    Some(witness), None, start));
            }
        }
        Ok(self.report(Verdict::Pass, t0, Method::BruteForce, probabilistic, None, None, start))
    }

    fn gf2_witness(
        &self,
        idx: usize,
        product: &FactoredPolynomial,
        t0: &BigRational,
        probabilistic: &mut bool,
    ) -> Result<Option<SquareWitness>> {
        let factors = product.distinct_factors();
        if factors.is_empty() {
            // All-constant product: vacuously no nonconstant divisor.
            return Ok(None);
        }
        let mut values = Vec::with_capacity(factors.len());
        let mut classes = Vec::with_capacity(factors.len());
        for f in &factors {
            let v = f.eval_rat(t0);
            if v.is_zero() {
                return Err(Error::Internal(
                    "factor vanished past the singularity guard".to_string(),
                ));
            }
            let (class, prob) = square_class_with(&v, &self.cfg)?;
            *probabilistic |= prob;
            values.push(v);
            classes.push(class);
        }
        let span: BTreeSet<BigInt> = product.distinct_constant_primes().into_iter().collect();
        let Some(subset) = class_dependency(&classes, &span) else {
            return Ok(None);
        };

        // Assemble the witness: h = sign * allowed primes * chosen factors.
        let mut class = SquareClass::trivial();
        let mut chosen = Vec::new();
        let mut value = BigRational::one();
        for &j in &subset {
            class = class.mul(&classes[j]);
            chosen.push(factors[j].clone());
            value *= &values[j];
        }
        debug_assert!(class.odd_primes.iter().all(|p| span.contains(p)));
        for p in &class.odd_primes {
            value *= BigRational::from_integer(p.clone());
        }
        if class.negative {
            value = -value;
        }
        let square_root = rational_sqrt(&value)
            .ok_or_else(|| Error::Internal("dependency witness is not a square".to_string()))?;
        Ok(Some(SquareWitness {
            product: PRODUCT_LABELS[idx].to_string(),
            negative: class.negative,
            constant_primes: class.odd_primes.iter().cloned().collect(),
            disc_divisor: None,
            factors: chosen,
            value,
            square_root,
        }))
    }

    #[allow(clippy::too_many_arguments)]
    fn report(
        &self,
        verdict: Verdict,
        t0: &BigRational,
        method: Method,
        probabilistic: bool,
        witness: Option<SquareWitness>,
        note: Option<String>,
        start: Instant,
    ) -> CriterionReport {
        CriterionReport {
            verdict,
            t0: t0.clone(),
            method,
            probabilistic,
            products: self.products(),
            witness,
            note,
            factorization_ms: self.factorization_ms,
            total_ms: self.factorization_ms + start.elapsed().as_millis() as u64,
        }
    }
}

/// Project the allowed primes away and look for a GF(2) dependency among the
/// square classes (the sign coordinate is always allowed). Returns indices
/// of a dependent subset. Shared with the twist criterion.
pub(crate) fn class_dependency(
    classes: &[SquareClass],
    span: &BTreeSet<BigInt>,
) -> Option<Vec<usize>> {
    let mut columns: BTreeMap<&BigInt, usize> = BTreeMap::new();
    for class in classes {
        for p in &class.odd_primes {
            if !span.contains(p) {
                let next = columns.len();
                columns.entry(p).or_insert(next);
            }
        }
    }
    let vectors: Vec<Vec<usize>> = classes
        .iter()
        .map(|class| {
            class
                .odd_primes
                .iter()
                .filter_map(|p| columns.get(p).copied())
                .collect()
        })
        .collect();
    gf2::first_dependency(&vectors, columns.len())
}

/// Direct enumeration oracle shared by both criteria: search for a square
/// among `sign * (subset of allowed primes) * (nonempty subset of factor
/// values) * (square-free divisor of the extra discriminant, when present)`.
pub(crate) fn bruteforce_witness(
    label: &str,
    allowed_primes: Vec<BigInt>,
    disc_primes: Option<Vec<BigInt>>,
    factors: Vec<IntPoly>,
    t0: &BigRational,
) -> Result<Option<SquareWitness>> {
    if factors.is_empty() {
        return Ok(None);
    }
    let nd = disc_primes.as_ref().map_or(0, |d| d.len());
    let total = factors.len() + allowed_primes.len() + nd;
    if total > BRUTE_FORCE_LIMIT {
        return Err(Error::EnumerationGuard { count: total, limit: BRUTE_FORCE_LIMIT });
    }
    let values: Vec<BigRational> = factors.iter().map(|f| f.eval_rat(t0)).collect();
    for fmask in 1u64..(1 << factors.len()) {
        let mut base = BigRational::one();
        for (j, v) in values.iter().enumerate() {
            if fmask >> j & 1 == 1 {
                base *= v;
            }
        }
        for pmask in 0u64..(1 << allowed_primes.len()) {
            let mut with_primes = base.clone();
            for (j, p) in allowed_primes.iter().enumerate() {
                if pmask >> j & 1 == 1 {
                    with_primes *= BigRational::from_integer(p.clone());
                }
            }
            for dmask in 0u64..(1 << nd) {
                let mut disc = BigInt::one();
                if let Some(dp) = &disc_primes {
                    for (j, p) in dp.iter().enumerate() {
                        if dmask >> j & 1 == 1 {
                            disc = disc * p;
                        }
                    }
                }
                for negative in [false, true] {
                    let mut v = &with_primes * BigRational::from_integer(disc.clone());
                    if negative {
                        v = -v;
                    }
                    if !is_rational_square(&v) {
                        continue;
                    }
                    let square_root = rational_sqrt(&v).expect("checked square");
                    return Ok(Some(SquareWitness {
                        product: label.to_string(),
                        negative,
                        constant_primes: (0..allowed_primes.len())
                            .filter(|j| pmask >> j & 1 == 1)
                            .map(|j| allowed_primes[j].clone())
                            .collect(),
                        disc_divisor: disc_primes.as_ref().map(|_| disc.clone()),
                        factors: (0..factors.len())
                            .filter(|j| fmask >> j & 1 == 1)
                            .map(|j| factors[j].clone())
                            .collect(),
                        value: v,
                        square_root,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// One-shot convenience: prepare and check a single point.
pub fn check_specialization(curve: &CurveOverQt, t0: &BigRational) -> Result<CriterionReport> {
    PreparedCurve::new(curve.clone())?.check_at(t0)
}

/// One-shot brute-force oracle for a single point.
pub fn check_specialization_bruteforce(
    curve: &CurveOverQt,
    t0: &BigRational,
) -> Result<CriterionReport> {
    PreparedCurve::new(curve.clone())?.check_at_bruteforce(t0)
}

/// Check every integer point in `lo..=hi` (inclusive; empty when `lo > hi`),
/// factoring the curve data once. With the `parallel` feature the points are
/// fanned out across threads; the returned order is ascending either way.
pub fn search_integer_range(
    curve: &CurveOverQt,
    lo: i64,
    hi: i64,
) -> Result<Vec<(i64, CriterionReport)>> {
    search_integer_range_with(curve, lo, hi, &FactorConfig::default())
}

/// [`search_integer_range`] with explicit factoring settings.
pub fn search_integer_range_with(
    curve: &CurveOverQt,
    lo: i64,
    hi: i64,
    cfg: &FactorConfig,
) -> Result<Vec<(i64, CriterionReport)>> {
    let prepared = PreparedCurve::with_config(curve.clone(), cfg.clone())?;
    let points: Vec<i64> = (lo..=hi).collect();
    run_points(&prepared, points)
}

#[cfg(feature = "parallel")]
fn run_points(
    prepared: &PreparedCurve,
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
    prepared: &PreparedCurve,
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

/// Same sweep, forced single-threaded regardless of features (used by the
/// benchmark suite as the comparison baseline).
pub fn search_integer_range_sequential(
    curve: &CurveOverQt,
    lo: i64,
    hi: i64,
) -> Result<Vec<(i64, CriterionReport)>> {
    let prepared = PreparedCurve::new(curve.clone())?;
    (lo..=hi)
        .map(|t| {
            let report = prepared.check_at(&BigRational::from_integer(BigInt::from(t)))?;
            Ok((t, report))
        })
        .collect()
}

/// Points with a passing verdict, ascending.
pub fn passing_points(results: &[(i64, CriterionReport)]) -> Vec<i64> {
    results.iter().filter(|(_, r)| r.passed()).map(|(t, _)| *t).collect()
}

/// Points with a failing (non-singular) verdict, ascending.
pub fn failing_points(results: &[(i64, CriterionReport)]) -> Vec<i64> {
    results
        .iter()
        .filter(|(_, r)| r.verdict == Verdict::Fail)
        .map(|(t, _)| *t)
        .collect()
}

/// The older sufficient condition: take the square-free part
/// `w = +- p_1...p_m f_1...f_n` of `(e1-e2)(e2-e3)(e3-e1)`; every `f_i(t0)`
/// must keep a prime of its own, i.e. one not dividing any other `f_j(t0)`
/// and different from the `p_l`. Stricter than the GF(2) criterion: it can
/// reject points the full criterion accepts, never the other way around.
pub fn legacy_check(curve: &CurveOverQt, t0: &BigInt) -> Result<CriterionReport> {
    legacy_check_with(curve, t0, &FactorConfig::default())
}

pub fn legacy_check_with(
    curve: &CurveOverQt,
    t0: &BigInt,
    cfg: &FactorConfig,
) -> Result<CriterionReport> {
    let start = Instant::now();
    let f12 = factor_over_integers_with(&curve.diffs[0], cfg)?;
    let f23 = factor_over_integers_with(&curve.diffs[1], cfg)?;
    let f31 = factor_over_integers_with(&curve.diffs[2], cfg)?;
    let w = f12.mul(&f23).mul(&f31);
    let factorization_ms = start.elapsed().as_millis() as u64;
    let mut probabilistic = w.probabilistic;
    let products = vec![LabeledFactorization {
        label: "(e1-e2)*(e2-e3)*(e3-e1)".to_string(),
        factorization: w.clone(),
    }];
    let t0_rat = BigRational::from_integer(t0.clone());

    let report = |verdict: Verdict, probabilistic: bool, note: Option<String>| CriterionReport {
        verdict,
        t0: t0_rat.clone(),
        method: Method::Legacy,
        probabilistic,
        products: products.clone(),
        witness: None,
        note,
        factorization_ms,
        total_ms: factorization_ms + start.elapsed().as_millis() as u64,
    };

    if curve.is_singular_at(&t0_rat) {
        return Ok(report(Verdict::SingularSpecialization, probabilistic, None));
    }

    let (constant_primes, factors) = w.odd_multiplicity_parts();
    let forbidden: BTreeSet<BigInt> = constant_primes.into_iter().collect();
    let mut prime_sets: Vec<BTreeSet<BigInt>> = Vec::with_capacity(factors.len());
    for f in &factors {
        let v = BigRational::from_integer(f.eval_int(t0));
        let (class, prob) = square_class_with(&v, cfg)?;
        probabilistic |= prob;
        prime_sets.push(class.odd_primes);
    }
    for (i, set) in prime_sets.iter().enumerate() {
        let has_own_prime = set.iter().any(|p| {
            !forbidden.contains(p)
                && prime_sets
                    .iter()
                    .enumerate()
                    .all(|(j, other)| j == i || !other.contains(p))
        });
        if !has_own_prime {
            let note = format!(
                "square-free part of {} at t0 = {} has no prime of its own",
                factors[i].to_string_with_var('t'),
                t0
            );
            return Ok(report(Verdict::Fail, probabilistic, Some(note)));
        }
    }
    Ok(report(Verdict::Pass, probabilistic, None))
}
