//! `specinj` — certify injectivity of specialization maps for elliptic
//! curves over Q(t), run the quadratic-twist variant of the criterion, and
//! assemble rank-2 free-generator certificates for the degree-14 twist
//! family.
//!
//! Exit codes, uniform across commands: `0` pass (search: at least one
//! passing point; certify: certified; table: every listed point passes),
//! `1` fail, `2` singular specialization, `3` usage or computation error.
//!
//! JSON schema (`--format json`; every big integer is a decimal string,
//! rationals are `"n"` or `"n/d"`, polynomials use the same grammar the
//! parser accepts):
//!
//! * `check`, `twist`: `{command, inputs, verdict, method, probabilistic,
//!   witness?, note?, factorizations, timings, version}`.  `witness` carries
//!   the square certificate `{product, negative, constant_primes,
//!   disc_divisor?, factors, h, value, square_root}`; `factorizations` lists
//!   the factored products the criterion inspected.
//! * `search`: `{command, inputs, passing, failing, singular, results,
//!   timings, version}` with `results` holding one `check`-style report per
//!   candidate, ascending.
//! * `certify`: `{command, inputs, verdict, certificate, version}` where
//!   `certificate` nests the criterion report, the height table, the
//!   small-multiple bound, and the conclusion.
//! * `table`: `{command, inputs, rows, all_listed_pass, version}`.

use std::fmt::Write as _;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use specinj_core::arith::FactorConfig;
use specinj_core::criterion::{self, CurveOverQt, PreparedCurve};
use specinj_core::ffcurve::MestreFamily;
use specinj_core::heights::{choose_path, generator_certificate_with, RankAssertion};
use specinj_core::heights::{split_family_curve, Conclusion};
use specinj_core::poly::{parse_poly, IntPoly};
use specinj_core::report::{
    factorization_string, rational_string, CriterionReport, FactorizationDoc, TimingsDoc, Verdict,
    WitnessDoc,
};
use specinj_core::twist::{self, PreparedTwist, TwistInput};

const VERSION: &str = env!("CARGO_PKG_VERSION");
const BUNDLED_ROWS: &str = include_str!("../fixtures/table_rows.txt");

#[derive(Parser)]
#[command(
    name = "specinj",
    version,
    about = "Injectivity criteria for specializations of elliptic curves over Q(t)"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Iteration cap per Pollard-rho attempt in integer factoring.
    #[arg(long, global = true, value_name = "N")]
    rho_cap: Option<u64>,
    /// Seed mixed into the randomized (but reproducible) factoring stages.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    /// Square-class dependency over GF(2) (the default).
    Gf2,
    /// Enumerate square-free divisors directly (slow; small inputs only).
    Brute,
}

#[derive(Subcommand)]
enum Command {
    /// Test a specialization point of y^2 = (x-e1)(x-e2)(x-e3) over Q(t).
    Check(CheckArgs),
    /// Sweep integer specialization points and report which pass.
    Search(SearchArgs),
    /// Test the twist criterion for a cubic with exactly one rational root.
    Twist(TwistArgs),
    /// Assemble a rank-2 free-generator certificate for the degree-14 family.
    Certify(CertifyArgs),
    /// Re-verify the bundled (a, b, u0) rows; optionally find minimal passing u0.
    Table(TableArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// First branch point, e.g. "0".
    #[arg(long, value_name = "POLY", allow_hyphen_values = true)]
    e1: String,
    /// Second branch point, e.g. "t".
    #[arg(long, value_name = "POLY", allow_hyphen_values = true)]
    e2: String,
    /// Third branch point, e.g. "t^2+10".
    #[arg(long, value_name = "POLY", allow_hyphen_values = true)]
    e3: String,
    /// Specialization point (integer or n/d).
    #[arg(long, value_name = "RAT", allow_hyphen_values = true)]
    t0: String,
    #[arg(long, value_enum, default_value = "gf2")]
    method: MethodArg,
    /// Use the older sufficient condition: every difference keeps a prime of
    /// its own (stricter; integer t0 only).
    #[arg(long, conflicts_with = "method")]
    legacy: bool,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, value_name = "POLY", allow_hyphen_values = true)]
    e1: String,
    #[arg(long, value_name = "POLY", allow_hyphen_values = true)]
    e2: String,
    #[arg(long, value_name = "POLY", allow_hyphen_values = true)]
    e3: String,
    /// First integer candidate (inclusive).
    #[arg(long, value_name = "N", allow_hyphen_values = true)]
    from: i64,
    /// Last integer candidate (inclusive).
    #[arg(long, value_name = "N", allow_hyphen_values = true)]
    to: i64,
}

#[derive(Args)]
struct TwistArgs {
    /// x^2 coefficient of the cubic (explicit mode).
    #[arg(long, value_name = "N", allow_hyphen_values = true, requires_all = ["b", "c", "g", "t0"], conflicts_with_all = ["mestre", "u0"])]
    a: Option<String>,
    /// x coefficient of the cubic (explicit mode).
    #[arg(long, value_name = "N", allow_hyphen_values = true)]
    b: Option<String>,
    /// Constant coefficient of the cubic (explicit mode).
    #[arg(long, value_name = "N", allow_hyphen_values = true)]
    c: Option<String>,
    /// Square-free twist polynomial (explicit mode).
    #[arg(long, value_name = "POLY", allow_hyphen_values = true)]
    g: Option<String>,
    /// Specialization point (explicit mode).
    #[arg(long, value_name = "RAT", allow_hyphen_values = true)]
    t0: Option<String>,
    /// Family parameters A B: cubic x^3 + Ax + B twisted by its own
    /// degree-14 polynomial.
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true, requires = "u0")]
    mestre: Option<Vec<String>>,
    /// Specialization point (family mode).
    #[arg(long, value_name = "RAT", allow_hyphen_values = true)]
    u0: Option<String>,
    #[arg(long, value_enum, default_value = "gf2")]
    method: MethodArg,
}

#[derive(Args)]
struct CertifyArgs {
    /// Family parameters A B for y^2 = x^3 + Ax + B.
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true, required = true)]
    mestre: Vec<String>,
    /// Specialization point.
    #[arg(long, value_name = "RAT", allow_hyphen_values = true)]
    u0: String,
    /// Externally computed rank of the specialized curve.
    #[arg(long, value_name = "N", requires = "source")]
    asserted_rank: Option<i64>,
    /// Provenance of the rank assertion (tool name or citation).
    #[arg(long, value_name = "STR", requires = "asserted_rank")]
    source: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Rational,
    Quadratic,
    All,
}

#[derive(Args)]
struct TableArgs {
    /// Which rows to run.
    #[arg(long, value_enum, default_value = "all")]
    suite: Suite,
    /// Also sweep `LO..HI` for the minimal passing u0 per row, e.g. "1..80".
    #[arg(long, value_name = "LO..HI", allow_hyphen_values = true)]
    range: Option<String>,
    /// Row file overriding the bundled one (lines of `a b u0 case`).
    #[arg(long, value_name = "PATH")]
    fixture: Option<std::path::PathBuf>,
}

fn main() -> ExitCode {
    // Die quietly when the reader goes away (`specinj table | head`),
    // matching ordinary Unix tool behavior instead of a panic.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{err}");
                return ExitCode::SUCCESS;
            }
            eprint!("{err}");
            return ExitCode::from(3);
        }
    };
    let mut cfg = FactorConfig::default();
    if let Some(cap) = cli.rho_cap {
        cfg.rho_iteration_cap = cap;
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    match run(&cli, &cfg) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli, cfg: &FactorConfig) -> Result<u8> {
    match &cli.command {
        Command::Check(args) => cmd_check(args, cfg, cli.format),
        Command::Search(args) => cmd_search(args, cfg, cli.format),
        Command::Twist(args) => cmd_twist(args, cfg, cli.format),
        Command::Certify(args) => cmd_certify(args, cfg, cli.format),
        Command::Table(args) => cmd_table(args, cfg, cli.format),
    }
}

// ---------------------------------------------------------------------------
// Shared parsing and rendering.

fn parse_big(s: &str) -> Result<BigInt> {
    s.trim().parse::<BigInt>().map_err(|_| anyhow!("not an integer: {s:?}"))
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (parse_big(n)?, parse_big(d)?),
        None => (parse_big(s)?, BigInt::from(1)),
    };
    if d.is_zero() {
        bail!("zero denominator in {s:?}");
    }
    Ok(BigRational::new(n, d))
}

/// Parse one polynomial argument, folding its variable letter into `var`
/// (every polynomial of one invocation must use the same letter).
fn parse_poly_arg(s: &str, var: &mut Option<char>) -> Result<IntPoly> {
    let (poly, v) = parse_poly(s).with_context(|| format!("bad polynomial {s:?}"))?;
    if let (Some(seen), Some(new)) = (&var, v) {
        if *seen != new {
            bail!("mixed variable letters: {seen} and {new}");
        }
    }
    if v.is_some() {
        *var = v;
    }
    Ok(poly)
}

fn verdict_exit(v: Verdict) -> u8 {
    match v {
        Verdict::Pass => 0,
        Verdict::Fail => 1,
        Verdict::SingularSpecialization => 2,
    }
}

fn fmt_points(points: &[i64]) -> String {
    if points.is_empty() {
        "-".to_string()
    } else {
        points.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" ")
    }
}

fn report_text(report: &CriterionReport, var: char) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "verdict: {}", report.verdict.as_str());
    let _ = writeln!(out, "t0: {}", rational_string(&report.t0));
    let _ = writeln!(out, "method: {}", report.method.as_str());
    for product in &report.products {
        let _ = writeln!(
            out,
            "  {} = {}",
            product.label,
            factorization_string(&product.factorization, var)
        );
    }
    if let Some(w) = &report.witness {
        let _ = writeln!(
            out,
            "witness in {}: h = {}",
            w.product,
            w.h().to_string_with_var(var)
        );
        if let Some(d) = &w.disc_divisor {
            let _ = writeln!(out, "  discriminant divisor d' = {d}");
        }
        let _ = writeln!(
            out,
            "  square value: {} = ({})^2",
            rational_string(&w.value),
            rational_string(&w.square_root)
        );
    }
    if let Some(note) = &report.note {
        let _ = writeln!(out, "note: {note}");
    }
    if report.probabilistic {
        let _ = writeln!(out, "probabilistic primality involved: true");
    }
    let _ = writeln!(
        out,
        "time: {} ms total ({} ms factoring curve data)",
        report.total_ms, report.factorization_ms
    );
    out
}

#[derive(Serialize)]
struct ReportEnvelope {
    command: String,
    inputs: serde_json::Value,
    verdict: String,
    method: String,
    probabilistic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
    factorizations: Vec<FactorizationDoc>,
    timings: TimingsDoc,
    version: String,
}

fn emit_report(
    command: &str,
    inputs: serde_json::Value,
    report: &CriterionReport,
    var: char,
    format: Format,
) -> Result<u8> {
    match format {
        Format::Text => print!("{}", report_text(report, var)),
        Format::Json => {
            let doc = report.to_doc(var);
            let envelope = ReportEnvelope {
                command: command.to_string(),
                inputs,
                verdict: doc.verdict,
                method: doc.method,
                probabilistic: doc.probabilistic,
                witness: doc.witness,
                note: doc.note,
                factorizations: doc.products,
                timings: doc.timings,
                version: VERSION.to_string(),
            };
            println!("{}", serde_json::to_string_pretty(&envelope)?);
        }
    }
    Ok(verdict_exit(report.verdict))
}

// ---------------------------------------------------------------------------
// check

fn cmd_check(args: &CheckArgs, cfg: &FactorConfig, format: Format) -> Result<u8> {
    let mut var = None;
    let e1 = parse_poly_arg(&args.e1, &mut var)?;
    let e2 = parse_poly_arg(&args.e2, &mut var)?;
    let e3 = parse_poly_arg(&args.e3, &mut var)?;
    let var = var.unwrap_or('t');
    let t0 = parse_rational(&args.t0)?;
    let curve = CurveOverQt::new(e1.clone(), e2.clone(), e3.clone())?;

    let report = if args.legacy {
        if !t0.is_integer() {
            bail!("--legacy needs an integer t0 (got {})", rational_string(&t0));
        }
        criterion::legacy_check_with(&curve, &t0.to_integer(), cfg)?
    } else {
        let prepared = PreparedCurve::with_config(curve, cfg.clone())?;
        match args.method {
            MethodArg::Gf2 => prepared.check_at(&t0)?,
            MethodArg::Brute => prepared.check_at_bruteforce(&t0)?,
        }
    };

    let inputs = serde_json::json!({
        "e1": e1.to_string_with_var(var),
        "e2": e2.to_string_with_var(var),
        "e3": e3.to_string_with_var(var),
        "variable": var.to_string(),
        "t0": rational_string(&t0),
        "legacy": args.legacy,
    });
    emit_report("check", inputs, &report, var, format)
}

// ---------------------------------------------------------------------------
// search

fn cmd_search(args: &SearchArgs, cfg: &FactorConfig, format: Format) -> Result<u8> {
    let mut var = None;
    let e1 = parse_poly_arg(&args.e1, &mut var)?;
    let e2 = parse_poly_arg(&args.e2, &mut var)?;
    let e3 = parse_poly_arg(&args.e3, &mut var)?;
    let var = var.unwrap_or('t');
    let curve = CurveOverQt::new(e1.clone(), e2.clone(), e3.clone())?;
    let results = criterion::search_integer_range_with(&curve, args.from, args.to, cfg)?;
    emit_search(
        serde_json::json!({
            "e1": e1.to_string_with_var(var),
            "e2": e2.to_string_with_var(var),
            "e3": e3.to_string_with_var(var),
            "variable": var.to_string(),
            "from": args.from,
            "to": args.to,
        }),
        &results,
        var,
        format,
        (args.from, args.to),
    )
}

#[derive(Serialize)]
struct SearchEnvelope {
    command: String,
    inputs: serde_json::Value,
    passing: Vec<i64>,
    failing: Vec<i64>,
    singular: Vec<i64>,
    results: Vec<specinj_core::report::ReportDoc>,
    timings: TimingsDoc,
    version: String,
}

fn emit_search(
    inputs: serde_json::Value,
    results: &[(i64, CriterionReport)],
    var: char,
    format: Format,
    range: (i64, i64),
) -> Result<u8> {
    let passing = criterion::passing_points(results);
    let failing = criterion::failing_points(results);
    let singular: Vec<i64> = results
        .iter()
        .filter(|(_, r)| r.verdict == Verdict::SingularSpecialization)
        .map(|(t, _)| *t)
        .collect();
    match format {
        Format::Text => {
            println!(
                "checked {} integer specialization points in [{}, {}]",
                results.len(),
                range.0,
                range.1
            );
            println!("passing ({}): {}", passing.len(), fmt_points(&passing));
            println!("failing ({}): {}", failing.len(), fmt_points(&failing));
            println!("singular ({}): {}", singular.len(), fmt_points(&singular));
        }
        Format::Json => {
            let envelope = SearchEnvelope {
                command: "search".to_string(),
                inputs,
                passing: passing.clone(),
                failing,
                singular,
                results: results.iter().map(|(_, r)| r.to_doc(var)).collect(),
                timings: TimingsDoc {
                    factorization_ms: results.first().map_or(0, |(_, r)| r.factorization_ms),
                    total_ms: results.iter().map(|(_, r)| r.total_ms).sum(),
                },
                version: VERSION.to_string(),
            };
            println!("{}", serde_json::to_string_pretty(&envelope)?);
        }
    }
    Ok(u8::from(passing.is_empty()))
}

// ---------------------------------------------------------------------------
// twist

fn cmd_twist(args: &TwistArgs, cfg: &FactorConfig, format: Format) -> Result<u8> {
    let (input, t0, var, mode) = match (&args.mestre, &args.a) {
        (Some(params), _) => {
            let a = parse_big(&params[0])?;
            let b = parse_big(&params[1])?;
            let u0 = args.u0.as_ref().expect("clap enforces --u0 with --mestre");
            let family = MestreFamily::new(a.clone(), b.clone())
                .context("family parameters must satisfy ab != 0 and 4a^3 + 27b^2 != 0")?;
            let input = TwistInput::new(BigInt::from(0), a, b, family.g)?;
            (input, parse_rational(u0)?, 'u', "mestre")
        }
        (None, Some(a)) => {
            let get = |name: &str, v: &Option<String>| {
                v.clone().ok_or_else(|| anyhow!("--{name} is required in explicit mode"))
            };
            let mut var = None;
            let g = parse_poly_arg(&get("g", &args.g)?, &mut var)?;
            let input = TwistInput::new(
                parse_big(a)?,
                parse_big(&get("b", &args.b)?)?,
                parse_big(&get("c", &args.c)?)?,
                g,
            )?;
            (input, parse_rational(&get("t0", &args.t0)?)?, var.unwrap_or('t'), "explicit")
        }
        (None, None) => bail!("give either --mestre A B --u0 U or --a --b --c --g --t0"),
    };

    let prepared = PreparedTwist::with_config(input.clone(), cfg.clone())?;
    let form = prepared.form();
    let inputs = serde_json::json!({
        "mode": mode,
        "a": input.a.to_string(),
        "b": input.b.to_string(),
        "c": input.c.to_string(),
        "g": input.g.to_string_with_var(var),
        "variable": var.to_string(),
        "t0": rational_string(&t0),
        "root": form.root.to_string(),
        "a_shift": form.a_shift.to_string(),
        "b_shift": form.b_shift.to_string(),
        "e": form.e.to_string(),
        "d": form.d.to_string(),
        "discriminant": form.field.discriminant.to_string(),
    });
    if format == Format::Text {
        println!(
            "cubic has rational root {}; shifted quadratic coefficients a~ = {}, b~ = {}",
            form.root, form.a_shift, form.b_shift
        );
        println!(
            "field: Q(sqrt({})), discriminant {}",
            form.d, form.field.discriminant
        );
    }
    let report = match args.method {
        MethodArg::Gf2 => prepared.check_at(&t0)?,
        MethodArg::Brute => prepared.check_at_bruteforce(&t0)?,
    };
    emit_report("twist", inputs, &report, var, format)
}

// ---------------------------------------------------------------------------
// certify

fn cmd_certify(args: &CertifyArgs, cfg: &FactorConfig, format: Format) -> Result<u8> {
    let a = parse_big(&args.mestre[0])?;
    let b = parse_big(&args.mestre[1])?;
    let u0 = parse_rational(&args.u0)?;
    let assertion = args.asserted_rank.map(|rank| RankAssertion {
        rank,
        source: args.source.clone().unwrap_or_default(),
    });
    let path = choose_path(&a, &b)
        .context("the cubic must have one or three rational roots for this certificate")?;
    let cert = generator_certificate_with(&a, &b, &u0, assertion, path, cfg)?;

    match format {
        Format::Text => {
            println!("family: a = {}, b = {}, u0 = {}", cert.a, cert.b, rational_string(&cert.u0));
            println!("criterion path: {}", cert.path.as_str());
            println!("criterion verdict: {}", cert.criterion_report.verdict.as_str());
            let h = &cert.height_data;
            println!(
                "heights: h0(P) = {}, h0(Q) = {}, h0(P+Q) = {}, h0(P-Q) = {}",
                h.h0_p, h.h0_q, h.h0_sum, h.h0_diff
            );
            println!("pairing <P,Q>: {}", rational_string(&h.pairing));
            println!("height bound for excluded smaller generators: {}", rational_string(&cert.bound));
            println!("small-height exclusion (degree 14, square-free): {}", cert.small_height_exclusion);
            match &cert.rank_assertion {
                Some(ra) => println!("asserted rank: {} (source: {})", ra.rank, ra.source),
                None => println!("asserted rank: none"),
            }
            println!("conclusion: {}", cert.conclusion.as_str());
        }
        Format::Json => {
            #[derive(Serialize)]
            struct CertifyEnvelope {
                command: String,
                inputs: serde_json::Value,
                verdict: String,
                certificate: specinj_core::heights::CertificateDoc,
                version: String,
            }
            let envelope = CertifyEnvelope {
                command: "certify".to_string(),
                inputs: serde_json::json!({
                    "a": cert.a.to_string(),
                    "b": cert.b.to_string(),
                    "u0": rational_string(&cert.u0),
                    "asserted_rank": args.asserted_rank,
                    "source": args.source,
                }),
                verdict: cert.conclusion.as_str().to_string(),
                certificate: cert.to_doc(),
                version: VERSION.to_string(),
            };
            println!("{}", serde_json::to_string_pretty(&envelope)?);
        }
    }
    Ok(u8::from(cert.conclusion != Conclusion::Rank2GeneratorsCertified))
}

// ---------------------------------------------------------------------------
// table

struct TableRow {
    a: BigInt,
    b: BigInt,
    u0: i64,
    case: Suite,
}

fn parse_rows(text: &str, origin: &str) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let bad = || anyhow!("{origin}:{}: expected `a b u0 case`, got {line:?}", idx + 1);
        if fields.len() != 4 {
            return Err(bad());
        }
        let case = match fields[3] {
            "rational" => Suite::Rational,
            "quadratic" => Suite::Quadratic,
            _ => return Err(bad()),
        };
        rows.push(TableRow {
            a: parse_big(fields[0]).map_err(|_| bad())?,
            b: parse_big(fields[1]).map_err(|_| bad())?,
            u0: fields[2].parse().map_err(|_| bad())?,
            case,
        });
    }
    Ok(rows)
}

fn parse_range(s: &str) -> Result<(i64, i64)> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| anyhow!("range must look like LO..HI, got {s:?}"))?;
    Ok((
        lo.trim().parse().map_err(|_| anyhow!("bad range bound {lo:?}"))?,
        hi.trim().parse().map_err(|_| anyhow!("bad range bound {hi:?}"))?,
    ))
}

#[derive(Serialize)]
struct TableRowDoc {
    a: String,
    b: String,
    case: String,
    listed_u0: i64,
    verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    minimal_passing_u0: Option<i64>,
}

fn cmd_table(args: &TableArgs, cfg: &FactorConfig, format: Format) -> Result<u8> {
    let (text, origin) = match &args.fixture {
        Some(path) => (
            std::fs::read_to_string(path)
                .with_context(|| format!("cannot read {}", path.display()))?,
            path.display().to_string(),
        ),
        None => (BUNDLED_ROWS.to_string(), "bundled rows".to_string()),
    };
    let range = args.range.as_deref().map(parse_range).transpose()?;
    let rows = parse_rows(&text, &origin)?;

    let mut docs = Vec::new();
    let mut all_pass = true;
    for row in &rows {
        if args.suite != Suite::All && args.suite != row.case {
            continue;
        }
        let family = MestreFamily::new(row.a.clone(), row.b.clone())?;
        let u0 = BigRational::from_integer(BigInt::from(row.u0));
        let (verdict, minimal) = match row.case {
            Suite::Rational => {
                let curve = split_family_curve(&row.a, &row.b, &family.g)?;
                let prepared = PreparedCurve::with_config(curve.clone(), cfg.clone())?;
                let verdict = prepared.check_at(&u0)?.verdict;
                let minimal = match range {
                    Some((lo, hi)) => criterion::passing_points(
                        &criterion::search_integer_range_with(&curve, lo, hi, cfg)?,
                    )
                    .first()
                    .copied(),
                    None => None,
                };
                (verdict, minimal)
            }
            Suite::Quadratic => {
                let input =
                    TwistInput::new(BigInt::from(0), row.a.clone(), row.b.clone(), family.g)?;
                let prepared = PreparedTwist::with_config(input.clone(), cfg.clone())?;
                let verdict = prepared.check_at(&u0)?.verdict;
                let minimal = match range {
                    Some((lo, hi)) => criterion::passing_points(
                        &twist::search_integer_range_with(&input, lo, hi, cfg)?,
                    )
                    .first()
                    .copied(),
                    None => None,
                };
                (verdict, minimal)
            }
            Suite::All => unreachable!("rows carry a concrete case"),
        };
        all_pass &= verdict == Verdict::Pass;
        let case = if row.case == Suite::Rational { "rational" } else { "quadratic" };
        if format == Format::Text {
            let extra = minimal
                .map(|m| format!(" minimal_passing_u0={m}"))
                .unwrap_or_else(|| match range {
                    Some(_) => " minimal_passing_u0=none".to_string(),
                    None => String::new(),
                });
            println!(
                "a={} b={} case={} listed_u0={} verdict={}{}",
                row.a,
                row.b,
                case,
                row.u0,
                verdict.as_str(),
                extra
            );
        }
        docs.push(TableRowDoc {
            a: row.a.to_string(),
            b: row.b.to_string(),
            case: case.to_string(),
            listed_u0: row.u0,
            verdict: verdict.as_str().to_string(),
            minimal_passing_u0: minimal,
        });
    }

    match format {
        Format::Text => {
            println!(
                "all listed u0 pass: {} ({} rows)",
                if all_pass { "yes" } else { "no" },
                docs.len()
            );
        }
        Format::Json => {
            #[derive(Serialize)]
            struct TableEnvelope {
                command: String,
                inputs: serde_json::Value,
                rows: Vec<TableRowDoc>,
                all_listed_pass: bool,
                version: String,
            }
            let suite = match args.suite {
                Suite::Rational => "rational",
                Suite::Quadratic => "quadratic",
                Suite::All => "all",
            };
            let envelope = TableEnvelope {
                command: "table".to_string(),
                inputs: serde_json::json!({
                    "suite": suite,
                    "range": args.range,
                    "fixture": origin,
                }),
                rows: docs,
                all_listed_pass: all_pass,
                version: VERSION.to_string(),
            };
            println!("{}", serde_json::to_string_pretty(&envelope)?);
        }
    }
    Ok(u8::from(!all_pass))
}
