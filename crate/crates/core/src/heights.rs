//! Canonical heights on the twist family, the height pairing, and the
//! free-generator certificate.
//!
//! On the twist of y² = x³ + ax + b by g, the function
//! h₀(T) = deg(x(T)/g) (degree of the reduced rational function, with
//! h₀(∞) = 0) is twice the canonical height. The associated pairing is
//! ⟨T, S⟩ = (h₀(T+S) − h₀(T) − h₀(S))/2. For the standard family points
//! P, Q the certificate combines:
//!
//! * an injectivity criterion verdict at the chosen u₀ (split-cubic or
//!   quadratic-twist path),
//! * the height data h₀(P) = h₀(Q) = 4, ⟨P, Q⟩ = 0,
//! * the bound (h₀(P) + h₀(Q) + 2|⟨P,Q⟩|)/4 ≤ 2 on any further
//!   generator's height,
//! * the degree-14/square-free hypothesis on g that rules heights 1 and 2
//!   out, and
//! * an externally asserted rank of the specialized curve (descent is out
//!   of scope; the assertion's provenance is recorded verbatim).
//!
//! When every ingredient is in place and the asserted rank is 2, the
//! specialized images of P and Q are certified free generators modulo
//! torsion.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::FactorConfig;
use crate::criterion::{CurveOverQt, PreparedCurve};
use crate::ec::Point;
use crate::ffcurve::{MestreFamily, RationalFunction};
use crate::poly::IntPoly;
use crate::report::{rational_string, CriterionReport, ReportDoc};
use crate::twist::{integer_roots_monic_cubic, PreparedTwist, TwistInput};
use crate::{Error, Result};

/// h₀(T) = deg(x(T)/g) in lowest terms; 0 at infinity (torsion convention).
pub fn h0(t: &Point<RationalFunction>, g: &IntPoly) -> usize {
    match t.x() {
        None => 0,
        Some(x) => {
            let g_rf = RationalFunction::from_poly(g.clone());
            let ratio = crate::ec::FieldOps::div(x, &g_rf).expect("g is nonzero");
            ratio.degree()
        }
    }
}

/// ⟨T, S⟩ = (h₀(T+S) − h₀(T) − h₀(S))/2 on the given curve.
pub fn pairing(
    curve: &crate::ec::Curve<RationalFunction>,
    t: &Point<RationalFunction>,
    s: &Point<RationalFunction>,
    g: &IntPoly,
) -> BigRational {
    let sum = curve.add_points(t, s);
    let total = h0(&sum, g) as i64 - h0(t, g) as i64 - h0(s, g) as i64;
    BigRational::new(BigInt::from(total), BigInt::from(2))
}

/// Heights of the standard points and their pairing data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightData {
    pub h0_p: usize,
    pub h0_q: usize,
    pub h0_sum: usize,
    pub h0_diff: usize,
    pub pairing: BigRational,
}

impl HeightData {
    pub fn compute(family: &MestreFamily) -> HeightData {
        let sum = family.curve.add_points(&family.p, &family.q);
        let diff = family.curve.add_points(&family.p, &family.curve.neg_point(&family.q));
        let h0_p = h0(&family.p, &family.g);
        let h0_q = h0(&family.q, &family.g);
        let h0_sum = h0(&sum, &family.g);
        let h0_diff = h0(&diff, &family.g);
        let pairing = BigRational::new(
            BigInt::from(h0_sum as i64 - h0_p as i64 - h0_q as i64),
            BigInt::from(2),
        );
        HeightData { h0_p, h0_q, h0_sum, h0_diff, pairing }
    }

    /// Parallelogram identity h₀(P+Q) + h₀(P−Q) = 2h₀(P) + 2h₀(Q),
    /// which holds because h₀/2 is a canonical height.
    pub fn parallelogram_holds(&self) -> bool {
        self.h0_sum + self.h0_diff == 2 * self.h0_p + 2 * self.h0_q
    }

    /// Gram matrix [[⟨P,P⟩, ⟨P,Q⟩], [⟨Q,P⟩, ⟨Q,Q⟩]].
    pub fn gram(&self) -> [[BigRational; 2]; 2] {
        let hp = BigRational::from_integer(BigInt::from(self.h0_p as i64));
        let hq = BigRational::from_integer(BigInt::from(self.h0_q as i64));
        [
            [hp, self.pairing.clone()],
            [self.pairing.clone(), hq],
        ]
    }
}

/// Height bound (h₀(P) + h₀(Q) + 2|⟨P,Q⟩|)/4 for a hypothetical extra
/// generator.
pub fn height_bound(h0_p: usize, h0_q: usize, pairing: &BigRational) -> BigRational {
    let numer = BigRational::from_integer(BigInt::from((h0_p + h0_q) as i64))
        + BigRational::from_integer(BigInt::from(2)) * pairing.abs();
    numer / BigRational::from_integer(BigInt::from(4))
}

/// Whether the degree argument excluding heights 1 and 2 applies: g must
/// be square-free of degree 14.
pub fn small_height_exclusion(g: &IntPoly) -> bool {
    g.degree() == Some(14) && g.gcd(&g.derivative()).degree() == Some(0)
}

/// Which injectivity criterion backs the certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CriterionPath {
    /// x³ + ax + b splits over ℚ: branch points (r₁g, r₂g, r₃g).
    SplitCubic,
    /// Exactly one rational root: quadratic-twist conditions.
    QuadraticTwist,
}

impl CriterionPath {
    pub fn as_str(&self) -> &'static str {
        match self {
            CriterionPath::SplitCubic => "split_cubic",
            CriterionPath::QuadraticTwist => "quadratic_twist",
        }
    }
}

/// Pick the path from the factorization of x³ + ax + b over ℚ.
pub fn choose_path(a: &BigInt, b: &BigInt) -> Result<CriterionPath> {
    let roots = integer_roots_monic_cubic(&BigInt::zero(), a, b, &FactorConfig::default())?;
    match roots.len() {
        3 => Ok(CriterionPath::SplitCubic),
        1 => Ok(CriterionPath::QuadraticTwist),
        _ => Err(Error::NoRationalRoot),
    }
}

/// Branch-point form (r₁g, r₂g, r₃g) of the twisted curve when
/// x³ + ax + b = (x−r₁)(x−r₂)(x−r₃) splits.
pub fn split_family_curve(a: &BigInt, b: &BigInt, g: &IntPoly) -> Result<CurveOverQt> {
    let roots = integer_roots_monic_cubic(&BigInt::zero(), a, b, &FactorConfig::default())?;
    if roots.len() != 3 {
        return Err(Error::Construction(
            "the cubic does not split over the rationals; use the quadratic-twist path"
                .to_string(),
        ));
    }
    CurveOverQt::new(g.scaled(&roots[0]), g.scaled(&roots[1]), g.scaled(&roots[2]))
}

/// An externally obtained rank statement for the specialized curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankAssertion {
    pub rank: i64,
    /// Free-text provenance, e.g. the tool that computed the rank.
    pub source: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conclusion {
    /// Criterion passed, heights and bound in place, asserted rank 2.
    Rank2GeneratorsCertified,
    /// Everything checked except that no rank assertion was supplied.
    Conditional,
    NotEstablished,
}

impl Conclusion {
    pub fn as_str(&self) -> &'static str {
        match self {
            Conclusion::Rank2GeneratorsCertified => "rank2_generators_certified",
            Conclusion::Conditional => "conditional",
            Conclusion::NotEstablished => "not_established",
        }
    }
}

/// The assembled free-generator certificate for one (a, b, u₀).
#[derive(Clone, Debug)]
pub struct GeneratorCertificate {
    pub a: BigInt,
    pub b: BigInt,
    pub u0: BigRational,
    pub path: CriterionPath,
    pub criterion_report: CriterionReport,
    pub height_data: HeightData,
    pub bound: BigRational,
    pub small_height_exclusion: bool,
    pub rank_assertion: Option<RankAssertion>,
    pub conclusion: Conclusion,
}

pub fn generator_certificate(
    a: &BigInt,
    b: &BigInt,
    u0: &BigRational,
    rank_assertion: Option<RankAssertion>,
    path: CriterionPath,
) -> Result<GeneratorCertificate> {
    generator_certificate_with(a, b, u0, rank_assertion, path, &FactorConfig::default())
}

pub fn generator_certificate_with(
    a: &BigInt,
    b: &BigInt,
    u0: &BigRational,
    rank_assertion: Option<RankAssertion>,
    path: CriterionPath,
    cfg: &FactorConfig,
) -> Result<GeneratorCertificate> {
    let family = MestreFamily::new(a.clone(), b.clone())?;
    let criterion_report = match path {
        CriterionPath::SplitCubic => {
            let curve = split_family_curve(a, b, &family.g)?;
            PreparedCurve::with_config(curve, cfg.clone())?.check_at(u0)?
        }
        CriterionPath::QuadraticTwist => {
            let input = TwistInput::new(BigInt::zero(), a.clone(), b.clone(), family.g.clone())?;
            PreparedTwist::with_config(input, cfg.clone())?.check_at(u0)?
        }
    };
    let height_data = HeightData::compute(&family);
    let bound = height_bound(height_data.h0_p, height_data.h0_q, &height_data.pairing);
    let exclusion = small_height_exclusion(&family.g);
    let two = BigRational::from_integer(BigInt::from(2));
    let checks_pass = criterion_report.passed()
        && height_data.pairing.is_zero()
        && height_data.h0_p == 4
        && height_data.h0_q == 4
        && bound <= two
        && exclusion;
    let conclusion = if !checks_pass {
        Conclusion::NotEstablished
    } else {
        match &rank_assertion {
            Some(assertion) if assertion.rank == 2 => Conclusion::Rank2GeneratorsCertified,
            Some(_) => Conclusion::NotEstablished,
            None => Conclusion::Conditional,
        }
    };
    Ok(GeneratorCertificate {
        a: a.clone(),
        b: b.clone(),
        u0: u0.clone(),
        path,
        criterion_report,
        height_data,
        bound,
        small_height_exclusion: exclusion,
        rank_assertion,
        conclusion,
    })
}

/// Serialization mirror of [`GeneratorCertificate`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub a: String,
    pub b: String,
    pub u0: String,
    pub path: String,
    pub criterion: ReportDoc,
    pub heights: HeightDoc,
    pub bound: String,
    pub small_height_exclusion: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_assertion: Option<RankAssertion>,
    pub conclusion: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HeightDoc {
    pub h0_p: u64,
    pub h0_q: u64,
    pub h0_sum: u64,
    pub h0_diff: u64,
    pub pairing: String,
    pub gram: [[String; 2]; 2],
}

impl GeneratorCertificate {
    pub fn to_doc(&self) -> CertificateDoc {
        let gram = self.height_data.gram();
        CertificateDoc {
            a: self.a.to_string(),
            b: self.b.to_string(),
            u0: rational_string(&self.u0),
            path: self.path.as_str().to_string(),
            criterion: self.criterion_report.to_doc('u'),
            heights: HeightDoc {
                h0_p: self.height_data.h0_p as u64,
                h0_q: self.height_data.h0_q as u64,
                h0_sum: self.height_data.h0_sum as u64,
                h0_diff: self.height_data.h0_diff as u64,
                pairing: rational_string(&self.height_data.pairing),
                gram: [
                    [rational_string(&gram[0][0]), rational_string(&gram[0][1])],
                    [rational_string(&gram[1][0]), rational_string(&gram[1][1])],
                ],
            },
            bound: rational_string(&self.bound),
            small_height_exclusion: self.small_height_exclusion,
            rank_assertion: self.rank_assertion.clone(),
            conclusion: self.conclusion.as_str().to_string(),
        }
    }
}
