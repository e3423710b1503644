//! Verdict and certificate documents: the typed results produced by the
//! criterion checks plus mirror structs that serialize to stable JSON (all
//! big integers as decimal strings, rationals as `"n"` or `"n/d"`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::poly::factor::FactoredPolynomial;
use crate::poly::IntPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The specialization is injective.
    Pass,
    /// A square witness exists; the criterion cannot certify injectivity.
    Fail,
    /// The specialized curve is singular at this point.
    SingularSpecialization,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::SingularSpecialization => "singular",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// GF(2) linear algebra on square classes (the default).
    Gf2,
    /// Direct enumeration of square-free divisors (oracle, small inputs).
    BruteForce,
    /// The older unique-prime sufficient condition.
    Legacy,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Gf2 => "gf2",
            Method::BruteForce => "brute_force",
            Method::Legacy => "legacy",
        }
    }
}

/// A factored product entering the criterion, tagged with what it is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledFactorization {
    pub label: String,
    pub factorization: FactoredPolynomial,
}

/// A concrete square certificate for a failure: the square-free divisor
/// `h = sign * prod(constant_primes) * prod(factors)` of the product in
/// question (times `disc_divisor` on the twist side) takes a square value at
/// the specialization point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareWitness {
    /// Label of the product this witness lives in.
    pub product: String,
    pub negative: bool,
    pub constant_primes: Vec<BigInt>,
    /// Square-free divisor of the field discriminant (twist criterion only).
    pub disc_divisor: Option<BigInt>,
    pub factors: Vec<IntPoly>,
    /// The witnessed square value `disc_divisor * h(t0)`.
    pub value: BigRational,
    pub square_root: BigRational,
}

impl SquareWitness {
    /// The polynomial part `sign * prod(constant_primes) * prod(factors)`.
    pub fn h(&self) -> IntPoly {
        let mut c = if self.negative { -BigInt::one() } else { BigInt::one() };
        for p in &self.constant_primes {
            c *= p;
        }
        let mut h = IntPoly::constant(c);
        for f in &self.factors {
            h = &h * f;
        }
        h
    }
}

/// Complete record of one criterion evaluation.
#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub verdict: Verdict,
    pub t0: BigRational,
    pub method: Method,
    /// True when any primality certificate involved was probabilistic.
    pub probabilistic: bool,
    /// The factored products the criterion inspected.
    pub products: Vec<LabeledFactorization>,
    pub witness: Option<SquareWitness>,
    pub note: Option<String>,
    /// Time spent factoring the curve data (shared across a sweep).
    pub factorization_ms: u64,
    /// Total time for this evaluation including the shared factorization.
    pub total_ms: u64,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_doc(&self, var: char) -> ReportDoc {
        ReportDoc {
            verdict: self.verdict.as_str().to_string(),
            t0: rational_string(&self.t0),
            method: self.method.as_str().to_string(),
            probabilistic: self.probabilistic,
            products: self.products.iter().map(|p| factorization_doc(p, var)).collect(),
            witness: self.witness.as_ref().map(|w| witness_doc(w, var)),
            note: self.note.clone(),
            timings: TimingsDoc {
                factorization_ms: self.factorization_ms,
                total_ms: self.total_ms,
            },
        }
    }
}

/// `"n"` for integers, `"n/d"` otherwise.
pub fn rational_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Human-readable rendering like `-1 * 2^2 * 3 * (t + 1)^2 * (t^2 + 10)`.
pub fn factorization_string(f: &FactoredPolynomial, var: char) -> String {
    let mut parts: Vec<String> = Vec::new();
    if f.unit < 0 {
        parts.push("-1".to_string());
    }
    for (p, e) in &f.constant_primes {
        parts.push(if *e == 1 { p.to_string() } else { format!("{p}^{e}") });
    }
    for (q, m) in &f.factors {
        let base = format!("({})", q.to_string_with_var(var));
        parts.push(if *m == 1 { base } else { format!("{base}^{m}") });
    }
    if parts.is_empty() {
        return "1".to_string();
    }
    parts.join(" * ")
}

// ---------------------------------------------------------------------------
// Serializable mirrors.

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub verdict: String,
    pub t0: String,
    pub method: String,
    pub probabilistic: bool,
    pub products: Vec<FactorizationDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub timings: TimingsDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationDoc {
    pub label: String,
    pub unit: i8,
    pub constant_primes: Vec<PrimePowerDoc>,
    pub factors: Vec<PolyPowerDoc>,
    pub rendered: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePowerDoc {
    pub prime: String,
    pub exponent: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyPowerDoc {
    pub poly: String,
    pub exponent: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDoc {
    pub product: String,
    pub negative: bool,
    pub constant_primes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub disc_divisor: Option<String>,
    pub factors: Vec<String>,
    pub h: String,
    pub value: String,
    pub square_root: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TimingsDoc {
    pub factorization_ms: u64,
    pub total_ms: u64,
}

pub fn factorization_doc(p: &LabeledFactorization, var: char) -> FactorizationDoc {
    let f = &p.factorization;
    FactorizationDoc {
        label: p.label.clone(),
        unit: f.unit,
        constant_primes: f
            .constant_primes
            .iter()
            .map(|(p, e)| PrimePowerDoc { prime: p.to_string(), exponent: *e })
            .collect(),
        factors: f
            .factors
            .iter()
            .map(|(q, m)| PolyPowerDoc { poly: q.to_string_with_var(var), exponent: *m })
            .collect(),
        rendered: factorization_string(f, var),
    }
}

pub fn witness_doc(w: &SquareWitness, var: char) -> WitnessDoc {
    WitnessDoc {
        product: w.product.clone(),
        negative: w.negative,
        constant_primes: w.constant_primes.iter().map(|p| p.to_string()).collect(),
        disc_divisor: w.disc_divisor.as_ref().map(|d| d.to_string()),
        factors: w.factors.iter().map(|f| f.to_string_with_var(var)).collect(),
        h: w.h().to_string_with_var(var),
        value: rational_string(&w.value),
        square_root: rational_string(&w.square_root),
    }
}
