//! End-to-end acceptance checks, one test per shipped guarantee.
//!
//! Each test prints a single `acceptance N: PASS` line (visible with
//! `--nocapture`) with its elapsed time; a failing guarantee panics with the
//! mismatching values, so the panic message doubles as the FAIL line. All
//! expectations are exact — digit strings, set equalities, and integer
//! heights — with a pinned wall-clock budget per test.

use std::collections::{BTreeMap, BTreeSet};
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use specinj_core::arith::{factor_integer, square_class, SquareClass};
use specinj_core::criterion::{
    failing_points, legacy_check, passing_points, CurveOverQt, PreparedCurve,
};
use specinj_core::ffcurve::{mestre_g, MestreFamily};
use specinj_core::heights::{h0, height_bound, small_height_exclusion, split_family_curve, HeightData};
use specinj_core::poly::factor::factor_over_integers;
use specinj_core::poly::{parse_poly, IntPoly};
use specinj_core::quadfield::{
    discriminant_divisor_witness, field_info, unit_multiple_square, CLASS_NUMBER_ONE_D,
};
use specinj_core::report::{Method, Verdict};
use specinj_core::specialize::{specialize_curve, specialize_point};
use specinj_core::twist::{self, PreparedTwist, TwistInput};

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn poly(src: &str) -> IntPoly {
    parse_poly(src).expect("test polynomial parses").0
}

/// Uniform integer in `lo..=hi` from a seeded generator.
fn draw(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> i64 {
    debug_assert!(lo <= hi);
    let span = (hi - lo + 1) as u64;
    lo + (rng.next_u64() % span) as i64
}

fn report_pass(n: u32, start: Instant, budget: Duration, summary: &str) {
    let elapsed = start.elapsed();
    println!("acceptance {n}: PASS ({elapsed:.2?}) - {summary}");
    assert!(
        elapsed <= budget,
        "acceptance {n}: FAIL - exceeded time budget ({elapsed:.2?} > {budget:?})"
    );
}

/// The demo curve used throughout: branch points (0, t, t^2 + 10).
fn demo_curve() -> CurveOverQt {
    CurveOverQt::new(poly("0"), poly("t"), poly("t^2 + 10")).expect("distinct branch points")
}

/// Bundled verification rows, `(a, b, u0, rational?)`.
fn fixture_rows() -> Vec<(i64, i64, i64, bool)> {
    let mut rows = Vec::new();
    for line in include_str!("../fixtures/table_rows.txt").lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        assert_eq!(fields.len(), 4, "fixture row `{line}` should be `a b u0 case`");
        rows.push((
            fields[0].parse().unwrap(),
            fields[1].parse().unwrap(),
            fields[2].parse().unwrap(),
            fields[3] == "rational",
        ));
    }
    rows
}

/// The single-rational-root criterion passes (1, 10): the exact inputs used
/// by the quadratic-field guarantees below.
fn quadratic_demo_input() -> TwistInput {
    let g = mestre_g(&big(1), &big(10)).expect("nonsingular parameters");
    TwistInput::new(big(0), big(1), big(10), g).expect("valid twist input")
}

/// 1. The worked example separating the two conditions: at t0 = 2 the
/// square-class dependency test passes while the older unique-prime check
/// fails, and the three square-free difference parts are exactly 2, 3, 14.
#[test]
fn criterion_1_dependency_test_beats_unique_prime_check_on_demo_curve() {
    let start = Instant::now();
    let curve = demo_curve();

    let report = PreparedCurve::new(curve.clone())
        .unwrap()
        .check_at(&rat(2))
        .unwrap();
    assert_eq!(report.verdict, Verdict::Pass, "dependency test should pass at t0 = 2");
    assert_eq!(report.method, Method::Gf2);
    assert!(report.witness.is_none());

    let legacy = legacy_check(&curve, &big(2)).unwrap();
    assert_eq!(legacy.verdict, Verdict::Fail, "unique-prime check should fail at t0 = 2");
    assert_eq!(legacy.method, Method::Legacy);

    let parts: BTreeSet<BigInt> = curve
        .differences()
        .iter()
        .map(|d| {
            let v = d.eval_rat(&rat(2));
            factor_integer(&v.to_integer()).unwrap().squarefree_part().abs()
        })
        .collect();
    let expected: BTreeSet<BigInt> = [big(2), big(3), big(14)].into_iter().collect();
    assert_eq!(parts, expected, "square-free parts of the evaluated differences");

    report_pass(
        1,
        start,
        Duration::from_secs(1),
        "demo curve: dependency test passes at t0 = 2, unique-prime check fails, parts {2, 3, 14}",
    );
}

/// 2. The degree-14 twisting polynomial for (a, b) = (-7, 6) factors into
/// exactly the seven irreducible quadratics with constant content 2 * 3 * 7.
#[test]
fn criterion_2_degree_14_twist_polynomial_factors_into_seven_quadratics() {
    let start = Instant::now();
    let g = mestre_g(&big(-7), &big(6)).unwrap();
    let factored = factor_over_integers(&g).unwrap();

    assert_eq!(factored.unit, 1);
    assert!(!factored.probabilistic);

    let expected_constants: BTreeMap<BigInt, u32> =
        [(big(2), 1), (big(3), 1), (big(7), 1)].into_iter().collect();
    assert_eq!(factored.constant_primes, expected_constants, "constant content should be 42");

    let expected_factors: BTreeMap<IntPoly, u32> = [
        "t^2 - 2",
        "t^2 + 1",
        "t^2 + 3",
        "2t^2 - 1",
        "2t^2 + 3",
        "3t^2 + 1",
        "3t^2 + 2",
    ]
    .into_iter()
    .map(|s| (poly(s), 1))
    .collect();
    assert_eq!(factored.factors, expected_factors, "the seven quadratic factors");

    report_pass(
        2,
        start,
        Duration::from_secs(5),
        "g for (-7, 6) = 2 * 3 * 7 * (seven irreducible quadratics)",
    );
}

/// 3. Fully split cubic, (a, b) = (-7, 6): the integers in [1, 80] failing
/// the dependency test are exactly the published 25-element set.
#[test]
fn criterion_3_failing_points_of_the_split_family_over_1_to_80() {
    let start = Instant::now();
    let g = mestre_g(&big(-7), &big(6)).unwrap();
    let curve = split_family_curve(&big(-7), &big(6), &g).unwrap();
    let results = specinj_core::criterion::search_integer_range(&curve, 1, 80).unwrap();

    let failing = failing_points(&results);
    let expected: Vec<i64> = vec![
        1, 2, 3, 4, 5, 6, 7, 9, 10, 11, 12, 15, 29, 37, 38, 40, 41, 45, 46, 49, 54, 56, 58, 60, 71,
    ];
    assert_eq!(failing, expected, "failing set over [1, 80]");

    let passing = passing_points(&results);
    assert_eq!(passing.len() + failing.len(), 80, "no singular specializations in range");
    assert_eq!(passing.first(), Some(&8), "smallest passing point");

    report_pass(
        3,
        start,
        Duration::from_secs(600),
        "split family (-7, 6): 25 failing points in [1, 80], smallest passing 8",
    );
}

/// 4. One rational root, (a, b) = (1, 10) over Q(sqrt(-1)): the integers in
/// [1, 80] failing the two-condition test are exactly the published set.
#[test]
fn criterion_4_failing_points_of_the_quadratic_field_family_over_1_to_80() {
    let start = Instant::now();
    let input = quadratic_demo_input();
    let results = twist::search_integer_range(&input, 1, 80).unwrap();

    let failing = failing_points(&results);
    let expected: Vec<i64> = vec![1, 2, 3, 5, 7, 8, 14, 18, 38, 41, 57];
    assert_eq!(failing, expected, "failing set over [1, 80]");

    let passing = passing_points(&results);
    assert_eq!(passing.len() + failing.len(), 80, "no singular specializations in range");
    assert_eq!(passing.first(), Some(&4), "smallest passing point");

    report_pass(
        4,
        start,
        Duration::from_secs(600),
        "quadratic-field family (1, 10): 11 failing points in [1, 80], smallest passing 4",
    );
}

/// 5. Height profile of the marked sections: for 20 pseudo-random (a, b)
/// with a*b*(4a^3 + 27b^2) != 0 and for every bundled fully-split row,
/// h0(P) = h0(Q) = 4, h0(P +/- Q) = 8, <P, Q> = 0, and the derived
/// small-multiple exclusion bound is 2.
#[test]
fn criterion_5_marked_sections_have_heights_4_4_8_8_and_bound_2() {
    let start = Instant::now();

    let mut params: Vec<(i64, i64)> = fixture_rows()
        .into_iter()
        .filter(|(_, _, _, rational)| *rational)
        .map(|(a, b, _, _)| (a, b))
        .collect();
    assert_eq!(params.len(), 34, "bundled fully-split rows");

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut random_count = 0;
    while random_count < 20 {
        let a = draw(&mut rng, -20, 20);
        let b = draw(&mut rng, -20, 20);
        if a == 0 || b == 0 || 4 * a.pow(3) + 27 * b.pow(2) == 0 {
            continue;
        }
        params.push((a, b));
        random_count += 1;
    }

    for &(a, b) in &params {
        let family = MestreFamily::from_i64(a, b).unwrap();
        let data = HeightData::compute(&family);
        assert_eq!(
            (data.h0_p, data.h0_q, data.h0_sum, data.h0_diff),
            (4, 4, 8, 8),
            "height profile for (a, b) = ({a}, {b})"
        );
        assert!(data.pairing.is_zero(), "pairing for (a, b) = ({a}, {b})");
        assert!(data.parallelogram_holds(), "parallelogram for (a, b) = ({a}, {b})");
        assert_eq!(
            height_bound(data.h0_p, data.h0_q, &data.pairing),
            rat(2),
            "exclusion bound for (a, b) = ({a}, {b})"
        );
        assert!(small_height_exclusion(&family.g), "no height-1 or height-2 sections");
    }

    report_pass(
        5,
        start,
        Duration::from_secs(120),
        "54 parameter pairs: heights 4/4/8/8, pairing 0, bound 2",
    );
}

/// 6. Specialized coefficient digit strings. The exact-arithmetic value is
/// authoritative: a mismatch against the recorded string is reported as a
/// flagged transcription discrepancy together with the computed value.
#[test]
fn criterion_6_specialized_coefficient_digit_strings_match_verbatim() {
    let start = Instant::now();
    let cases: [(i64, i64, i64, &str, &str); 2] = [
        (
            -7,
            6,
            14,
            "-2057410750080462983177474912957475480000",
            "30233310019074218054503104857297537715567578648874672000000",
        ),
        (
            1,
            10,
            21,
            "10715763113679070635989488456722194251878400",
            "-350779864964306170166930397804810220833346107858355456012779520000",
        ),
    ];

    for (a, b, u0, expected_a4, expected_a6) in cases {
        let family = MestreFamily::from_i64(a, b).unwrap();
        let spec = specialize_curve(&family.curve, &rat(u0)).unwrap();
        assert!(spec.scale.is_one(), "integral family needs no rescaling");
        for (label, got, expected) in
            [("A", spec.a4.to_string(), expected_a4), ("B", spec.a6.to_string(), expected_a6)]
        {
            if got != expected {
                panic!(
                    "acceptance 6: FAIL - flagged transcription discrepancy for \
                     {label}({a}, {b}) at u0 = {u0}: computed value {got} differs from \
                     recorded string {expected}; the computed value is authoritative"
                );
            }
        }
    }

    report_pass(
        6,
        start,
        Duration::from_secs(5),
        "specialized A and B digit strings for (-7, 6, 14) and (1, 10, 21) match verbatim",
    );
}

/// A failing report must carry a self-checking witness: the witnessed value
/// is a nonzero square with the recorded root.
fn assert_witness_is_square(report: &specinj_core::report::CriterionReport, context: &str) {
    let witness = report.witness.as_ref().unwrap_or_else(|| panic!("{context}: missing witness"));
    assert!(!witness.value.is_zero(), "{context}: zero witness value");
    assert_eq!(
        &witness.square_root * &witness.square_root,
        witness.value,
        "{context}: witness root does not square back"
    );
}

/// 7a. Random fully split cubics: branch points of degree <= 2 with single
/// digit coefficients, checked at a random |t0| <= 30.
fn random_split_instance(rng: &mut ChaCha8Rng) -> Option<(CurveOverQt, i64)> {
    let mut branch = Vec::with_capacity(3);
    for _ in 0..3 {
        let degree = draw(rng, 0, 2) as usize;
        let mut coeffs = vec![0i64; degree + 1];
        for c in coeffs.iter_mut() {
            *c = draw(rng, -9, 9);
        }
        while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
            coeffs.pop();
        }
        branch.push(IntPoly::from_i64_coeffs(&coeffs));
    }
    let curve = CurveOverQt::new(branch[0].clone(), branch[1].clone(), branch[2].clone()).ok()?;
    let t0 = draw(rng, -30, 30);
    Some((curve, t0))
}

/// 7b. Random single-root cubics (x - r)(x^2 + px + q) engineered so the
/// quadratic discriminant is e^2 * d for a supported d: pick d and e, then a
/// trace p of matching parity so q = (p^2 - e^2 d) / 4 is an integer.
fn random_quadratic_instance(rng: &mut ChaCha8Rng) -> Option<(TwistInput, i64)> {
    let d = CLASS_NUMBER_ONE_D[draw(rng, 0, CLASS_NUMBER_ONE_D.len() as i64 - 1) as usize];
    let (p, e) = if d.rem_euclid(4) == 1 {
        let p = draw(rng, -9, 9);
        let mut e = draw(rng, 1, 4);
        if e % 2 != p.rem_euclid(2) {
            e += 1;
        }
        (p, e)
    } else {
        (2 * draw(rng, -4, 4), 2 * draw(rng, 1, 2))
    };
    let q = (p * p - e * e * d) / 4;
    debug_assert_eq!(4 * q, p * p - e * e * d, "parity rule keeps q integral");
    let r = draw(rng, -4, 4);

    // (x - r)(x^2 + px + q) = x^3 + (p - r)x^2 + (q - rp)x - rq.
    let a = p - r;
    let b = q - r * p;
    let c = -r * q;

    let degree = draw(rng, 1, 2) as usize;
    let mut coeffs = vec![0i64; degree + 1];
    for coeff in coeffs.iter_mut() {
        *coeff = draw(rng, -7, 7);
    }
    if *coeffs.last().unwrap() == 0 {
        *coeffs.last_mut().unwrap() = 1;
    }
    let g = IntPoly::from_i64_coeffs(&coeffs);

    let input = TwistInput::from_i64(a, b, c, g).ok()?;
    let t0 = draw(rng, -30, 30);
    Some((input, t0))
}

/// 7. The GF(2) dependency test agrees with the exhaustive square-free
/// divisor enumeration on >= 1000 random instances per cubic shape.
#[test]
fn criterion_7_gf2_test_matches_exhaustive_enumeration_on_random_instances() {
    let start = Instant::now();
    const TARGET: u32 = 1000;

    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut split_checked = 0;
    while split_checked < TARGET {
        let Some((curve, t0)) = random_split_instance(&mut rng) else { continue };
        let prepared = PreparedCurve::new(curve).unwrap();
        let fast = prepared.check_at(&rat(t0)).unwrap();
        let slow = prepared.check_at_bruteforce(&rat(t0)).unwrap();
        assert_eq!(
            fast.verdict, slow.verdict,
            "split disagreement at t0 = {t0} (instance {split_checked})"
        );
        if fast.verdict == Verdict::Fail {
            assert_witness_is_square(&fast, "split gf2");
            assert_witness_is_square(&slow, "split enumeration");
        }
        split_checked += 1;
    }

    let mut quadratic_checked = 0;
    while quadratic_checked < TARGET {
        let Some((input, t0)) = random_quadratic_instance(&mut rng) else { continue };
        let prepared = PreparedTwist::new(input).unwrap();
        let fast = prepared.check_at(&rat(t0)).unwrap();
        let slow = prepared.check_at_bruteforce(&rat(t0)).unwrap();
        assert_eq!(
            fast.verdict, slow.verdict,
            "quadratic disagreement at t0 = {t0} (instance {quadratic_checked})"
        );
        if fast.verdict == Verdict::Fail {
            assert_witness_is_square(&fast, "quadratic gf2");
            assert_witness_is_square(&slow, "quadratic enumeration");
        }
        quadratic_checked += 1;
    }

    report_pass(
        7,
        start,
        Duration::from_secs(300),
        "1000 split + 1000 quadratic random instances: verdicts agree, witnesses square",
    );
}

/// Nonzero random rational with numerator and denominator up to 10^4.
fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let mut numer = 0;
    while numer == 0 {
        numer = draw(rng, -10_000, 10_000);
    }
    BigRational::new(big(numer), big(draw(rng, 1, 10_000)))
}

/// 8. Structural property suites: square classes form a group compatible
/// with multiplication, factorizations multiply back, heights obey the
/// parallelogram law and quadratic scaling, the three descriptions of
/// "unit-multiple square" agree over every supported field, and
/// specialization is a group homomorphism.
#[test]
fn criterion_8_property_suites_hold() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);

    // Square classes: class(r * s) = class(r) * class(s), squares act
    // trivially, and the canonical representative recovers its class.
    for _ in 0..10_000 {
        let r = random_rational(&mut rng);
        let s = random_rational(&mut rng);
        let cr = square_class(&r).unwrap();
        let cs = square_class(&s).unwrap();
        let crs = square_class(&(&r * &s)).unwrap();
        assert_eq!(crs, cr.mul(&cs), "class of a product at r = {r}, s = {s}");
        assert_eq!(
            square_class(&(&r * &r * &s)).unwrap(),
            cs,
            "square factors drop out at r = {r}, s = {s}"
        );
        assert_eq!(
            square_class(&BigRational::from_integer(cr.representative())).unwrap(),
            cr,
            "representative round-trip at r = {r}"
        );
        assert!(cr.mul(&cr).is_trivial(), "classes are 2-torsion at r = {r}");
    }
    assert!(SquareClass::trivial().is_trivial());

    // Factorizations multiply back to their input, for integers and for
    // polynomials.
    for _ in 0..2000 {
        let n = big(draw(&mut rng, -1_000_000_000, 1_000_000_000));
        if n.is_zero() {
            continue;
        }
        assert_eq!(factor_integer(&n).unwrap().value(), n, "integer round-trip");
    }
    for _ in 0..200 {
        let degree = draw(&mut rng, 0, 3) as usize;
        let mut coeffs = vec![0i64; degree + 1];
        for c in coeffs.iter_mut() {
            *c = draw(&mut rng, -30, 30);
        }
        let f = IntPoly::from_i64_coeffs(&coeffs);
        if f.is_zero() {
            continue;
        }
        let factored = factor_over_integers(&f).unwrap();
        assert_eq!(factored.value(), f, "polynomial round-trip for {f:?}");
    }

    // Heights: parallelogram law on the marked sections and quadratic
    // scaling h0(nT) = n^2 h0(T) for the doubled and tripled sections.
    for (a, b) in [(-7, 6), (1, 10)] {
        let family = MestreFamily::from_i64(a, b).unwrap();
        let data = HeightData::compute(&family);
        assert!(data.parallelogram_holds(), "parallelogram for (a, b) = ({a}, {b})");
        let double_p = family.curve.scalar_mul(2, &family.p);
        let double_q = family.curve.scalar_mul(2, &family.q);
        assert_eq!(h0(&double_p, &family.g), 16, "h0(2P) for (a, b) = ({a}, {b})");
        assert_eq!(h0(&double_q, &family.g), 16, "h0(2Q) for (a, b) = ({a}, {b})");
        let triple_p = family.curve.scalar_mul(3, &family.p);
        assert_eq!(h0(&triple_p, &family.g), 36, "h0(3P) for (a, b) = ({a}, {b})");
    }

    // Unit-multiple squares, three ways: for every supported d and random
    // nonzero rational r, (i) some unit square class makes r a square in
    // Q(sqrt(d)), (ii) every prime with odd exponent in r divides the field
    // discriminant, (iii) a square-free divisor of the discriminant times r
    // is a rational square. All three must agree.
    for d in CLASS_NUMBER_ONE_D {
        let info = field_info(&big(d)).unwrap();
        for trial in 0..1000 {
            // Mix unconstrained rationals with discriminant-divisor
            // multiples so the affirmative branch is exercised often.
            let r = if trial % 4 == 0 {
                let k = draw(&mut rng, 1, 100);
                let divisor = if d.rem_euclid(4) == 1 { d } else { 4 * d };
                BigRational::from_integer(big(divisor.signum() * k * k) * big(divisor).abs())
            } else {
                random_rational(&mut rng)
            };
            let via_units = unit_multiple_square(&r, &info).is_some();
            let class = square_class(&r).unwrap();
            let via_primes = class
                .odd_primes
                .iter()
                .all(|p| (&info.discriminant % p).is_zero());
            let via_divisor = discriminant_divisor_witness(&r, &info).unwrap().is_some();
            assert_eq!(
                via_units, via_primes,
                "unit-class vs odd-prime description at d = {d}, r = {r}"
            );
            assert_eq!(
                via_primes, via_divisor,
                "odd-prime vs discriminant-divisor description at d = {d}, r = {r}"
            );
        }
    }

    // Specialization is a homomorphism: evaluating coordinates at u0
    // commutes with the group law, including at a non-integral point.
    let family = MestreFamily::from_i64(-7, 6).unwrap();
    let sum = family.curve.add_points(&family.p, &family.q);
    let double_p = family.curve.scalar_mul(2, &family.p);
    for u0 in [rat(2), rat(3), rat(-5), BigRational::new(big(1), big(2))] {
        let spec = specialize_curve(&family.curve, &u0).unwrap();
        let curve = spec.as_curve();
        let p0 = specialize_point(&spec, &family.p, &u0);
        let q0 = specialize_point(&spec, &family.q, &u0);
        assert!(curve.contains(&p0) && curve.contains(&q0), "sections land on the curve");
        assert_eq!(
            specialize_point(&spec, &sum, &u0),
            curve.add_points(&p0, &q0),
            "sigma(P + Q) = sigma(P) + sigma(Q) at u0 = {u0}"
        );
        assert_eq!(
            specialize_point(&spec, &double_p, &u0),
            curve.scalar_mul(2, &p0),
            "sigma(2P) = 2 sigma(P) at u0 = {u0}"
        );
    }

    report_pass(
        8,
        start,
        Duration::from_secs(600),
        "square classes, factorization round-trips, height laws, field equivalences, homomorphism",
    );
}

fn run_cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_specinj"))
        .args(args)
        .output()
        .expect("binary runs")
}

/// 9. The certificate pipeline end to end, through the shipped binary: an
/// asserted rank upgrades a passing check to a full certificate, omitting it
/// yields `conditional`, and a failing point yields `not_established`.
#[test]
fn criterion_9_certificate_conclusions_follow_check_and_rank_assertion() {
    let start = Instant::now();

    for (a, b, u0) in [("-7", "6", "14"), ("1", "10", "21")] {
        let out = run_cli(&[
            "certify", "--mestre", a, b, "--u0", u0, "--asserted-rank", "2", "--source", "mwrank",
        ]);
        let stdout = String::from_utf8_lossy(&out.stdout);
        assert_eq!(out.status.code(), Some(0), "certify ({a}, {b}, {u0}): {stdout}");
        assert!(
            stdout.contains("rank2_generators_certified"),
            "certify ({a}, {b}, {u0}): {stdout}"
        );
    }

    let out = run_cli(&["certify", "--mestre", "-7", "6", "--u0", "14"]);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(1), "no rank assertion: {stdout}");
    assert!(stdout.contains("conditional"), "no rank assertion: {stdout}");

    let out = run_cli(&[
        "certify", "--mestre", "-7", "6", "--u0", "1", "--asserted-rank", "2", "--source", "mwrank",
    ]);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(1), "failing point: {stdout}");
    assert!(stdout.contains("not_established"), "failing point: {stdout}");

    let out = run_cli(&[
        "--format", "json", "certify", "--mestre", "1", "10", "--u0", "21", "--asserted-rank", "2",
        "--source", "mwrank",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    assert_eq!(doc["verdict"], "rank2_generators_certified");
    assert_eq!(doc["certificate"]["path"], "quadratic_twist");

    report_pass(
        9,
        start,
        Duration::from_secs(60),
        "certificates: certified with rank 2, conditional without, not_established at a failing point",
    );
}
