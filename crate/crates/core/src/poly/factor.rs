use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modp::ModPoly;
use super::squarefree::squarefree_decompose;
use super::IntPoly;
use crate::arith::{factor_integer_with, mod_inverse, small_primes, FactorConfig, TRIAL_DIVISION_LIMIT};
use crate::{Error, Result};

/// Complete factorization over Z:
/// `f = unit * prod p^e * prod q_i^{m_i}` with the `q_i` irreducible over Q,
/// primitive, with positive leading coefficients, sorted; primes sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredPolynomial {
    /// `1` or `-1`.
    pub unit: i8,
    pub constant_primes: BTreeMap<BigInt, u32>,
    pub factors: BTreeMap<IntPoly, u32>,
    /// True when the constant part relied on probabilistic primality.
    pub probabilistic: bool,
}

impl FactoredPolynomial {
    pub fn one() -> Self {
        FactoredPolynomial {
            unit: 1,
            constant_primes: BTreeMap::new(),
            factors: BTreeMap::new(),
            probabilistic: false,
        }
    }

    /// Multiply the factorization back out.
    pub fn value(&self) -> IntPoly {
        let mut v = IntPoly::constant(self.constant_value());
        for (q, m) in &self.factors {
            v = &v * &q.pow(*m);
        }
        v
    }

    /// `unit * prod p^e`, the full constant part.
    pub fn constant_value(&self) -> BigInt {
        let mut c = BigInt::from(self.unit);
        for (p, e) in &self.constant_primes {
            for _ in 0..*e {
                c *= p;
            }
        }
        c
    }

    /// Product of two factorizations (exponents add, units multiply).
    pub fn mul(&self, other: &FactoredPolynomial) -> FactoredPolynomial {
        let mut out = self.clone();
        out.unit *= other.unit;
        out.probabilistic |= other.probabilistic;
        for (p, e) in &other.constant_primes {
            *out.constant_primes.entry(p.clone()).or_insert(0) += e;
        }
        for (q, m) in &other.factors {
            *out.factors.entry(q.clone()).or_insert(0) += m;
        }
        out
    }

    pub fn negated(&self) -> FactoredPolynomial {
        let mut out = self.clone();
        out.unit = -out.unit;
        out
    }

    /// Multiply in an integer constant, factoring it.
    pub fn mul_integer(&self, c: &BigInt, cfg: &FactorConfig) -> Result<FactoredPolynomial> {
        let f = factor_integer_with(c, cfg)?;
        let mut out = self.clone();
        out.unit *= f.unit;
        out.probabilistic |= f.probabilistic;
        for (p, e) in f.factors {
            *out.constant_primes.entry(p).or_insert(0) += e;
        }
        Ok(out)
    }

    pub fn distinct_constant_primes(&self) -> Vec<BigInt> {
        self.constant_primes.keys().cloned().collect()
    }

    pub fn distinct_factors(&self) -> Vec<IntPoly> {
        self.factors.keys().cloned().collect()
    }

    /// Primes and nonconstant factors of odd multiplicity, i.e. the data of
    /// the square-free part.
    pub fn odd_multiplicity_parts(&self) -> (Vec<BigInt>, Vec<IntPoly>) {
        let primes = self
            .constant_primes
            .iter()
            .filter(|(_, e)| **e % 2 == 1)
            .map(|(p, _)| p.clone())
            .collect();
        let polys = self
            .factors
            .iter()
            .filter(|(_, m)| **m % 2 == 1)
            .map(|(q, _)| q.clone())
            .collect();
        (primes, polys)
    }

    /// Product of each distinct prime and distinct irreducible factor once;
    /// positive leading coefficient.
    pub fn radical_poly(&self) -> IntPoly {
        let mut c = BigInt::one();
        for p in self.constant_primes.keys() {
            c *= p;
        }
        let mut v = IntPoly::constant(c);
        for q in self.factors.keys() {
            v = &v * q;
        }
        v
    }
}

/// Factor a nonzero integer polynomial completely, default configuration.
pub fn factor_over_integers(f: &IntPoly) -> Result<FactoredPolynomial> {
    factor_over_integers_with(f, &FactorConfig::default())
}

/// Factor a nonzero integer polynomial completely: content into primes,
/// primitive part by Yun then Zassenhaus per square-free piece.
pub fn factor_over_integers_with(f: &IntPoly, cfg: &FactorConfig) -> Result<FactoredPolynomial> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial { op: "factor_over_integers" });
    }
    let unit: i8 = if f.leading_coeff().is_negative() { -1 } else { 1 };
    let content = f.content();
    let mut constant_primes = BTreeMap::new();
    let mut probabilistic = false;
    if !content.is_one() {
        let cf = factor_integer_with(&content, cfg)?;
        probabilistic = cf.probabilistic;
        constant_primes = cf.factors;
    }
    let mut factors: BTreeMap<IntPoly, u32> = BTreeMap::new();
    for (piece, mult) in squarefree_decompose(f)? {
        for q in zassenhaus(&piece, cfg)? {
            *factors.entry(q).or_insert(0) += mult;
        }
    }
    Ok(FactoredPolynomial { unit, constant_primes, factors, probabilistic })
}

/// Product of the distinct primes dividing the content and the distinct
/// irreducible factors, each once.
pub fn radical(f: &IntPoly) -> Result<IntPoly> {
    Ok(factor_over_integers(f)?.radical_poly())
}

/// How many reduction primes to compare before committing to the one with
/// the fewest modular factors.
const CANDIDATE_PRIMES: usize = 3;

/// Factor a primitive square-free polynomial with positive leading
/// coefficient into irreducibles over Q (Zassenhaus: factor mod p, Hensel
/// lift past the Mignotte bound, recombine subsets).
fn zassenhaus(f: &IntPoly, cfg: &FactorConfig) -> Result<Vec<IntPoly>> {
    let n = f.degree().expect("nonzero");
    debug_assert!(f.content().is_one() && f.leading_coeff().is_positive());
    if n == 1 {
        return Ok(vec![f.clone()]);
    }
    let lc = f.leading_coeff();

    let mut best: Option<(u64, Vec<ModPoly>)> = None;
    let mut usable = 0usize;
    for &p in small_primes().iter().skip(1) {
        if lc.is_multiple_of(&BigInt::from(p)) {
            continue;
        }
        let fp = ModPoly::from_int_poly(f, p);
        if fp.degree() != Some(n) || !fp.is_squarefree() {
            continue;
        }
        let local = fp.monic().factor_squarefree_monic(cfg.seed);
        if local.len() == 1 {
            return Ok(vec![f.clone()]);
        }
        if best.as_ref().is_none_or(|(_, b)| local.len() < b.len()) {
            best = Some((p, local));
        }
        usable += 1;
        if usable >= CANDIDATE_PRIMES {
            break;
        }
    }
    let (p, mut local) = best.ok_or_else(|| Error::NoReductionPrime {
        poly: f.to_string_with_var('t'),
        bound: TRIAL_DIVISION_LIMIT,
    })?;
    local.sort();

    // Lift to p^k beyond twice the Mignotte bound so that balanced residues
    // of true factors (scaled by the leading coefficient) are exact.
    let bound = mignotte_bound(f);
    let target: BigInt = 2 * &bound + 1;
    let mut pk = BigInt::from(p);
    while pk < target {
        pk = &pk * p;
    }
    let lifted = lift_factors(f, &local, p, &pk)?;
    recombine(f, lifted, &pk)
}

/// `sqrt(n+1) * 2^n * max|coeff| * |lc|`, rounded up: bounds the coefficients
/// of `lc(f) * h` for any monic rational factor h of f.
fn mignotte_bound(f: &IntPoly) -> BigInt {
    let n = f.degree().expect("nonzero");
    let s = BigInt::from(n + 1).sqrt() + 1;
    s * (BigInt::one() << n) * f.max_abs_coeff() * f.leading_coeff().abs()
}

/// Reduce coefficients into [0, m).
fn reduce_poly(f: &IntPoly, m: &BigInt) -> IntPoly {
    IntPoly::from_coeffs(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

/// Reduce coefficients into (-m/2, m/2].
fn balanced_poly(f: &IntPoly, m: &BigInt) -> IntPoly {
    let half = m / 2;
    IntPoly::from_coeffs(
        f.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Division with remainder by a monic polynomial, coefficients mod m.
fn divrem_monic_mod(f: &IntPoly, h: &IntPoly, m: &BigInt) -> (IntPoly, IntPoly) {
    let dh = h.degree().expect("monic divisor is nonzero");
    debug_assert!(h.leading_coeff().is_one());
    let mut r = reduce_poly(f, m);
    let mut q = vec![BigInt::zero(); r.coeffs().len().saturating_sub(dh)];
    while let Some(dr) = r.degree() {
        if dr < dh {
            break;
        }
        let factor = r.leading_coeff();
        q[dr - dh] = factor.clone();
        r = reduce_poly(&(&r - &h.shifted_up(dr - dh).scaled(&factor)), m);
    }
    (IntPoly::from_coeffs(q), r)
}

/// One quadratic Hensel step: from `f = g*h (mod m)` with Bezout data
/// `s*g + t*h = 1 (mod m)` to the same data mod m^2. `h` stays monic and the
/// degrees of g and h are preserved.
#[allow(clippy::type_complexity)]
fn hensel_step(
    f: &IntPoly,
    g: &IntPoly,
    h: &IntPoly,
    s: &IntPoly,
    t: &IntPoly,
    m: &BigInt,
) -> (IntPoly, IntPoly, IntPoly, IntPoly) {
    let m2 = m * m;
    let e = reduce_poly(&(f - &(g * h)), &m2);
    let (q, r) = divrem_monic_mod(&(s * &e), h, &m2);
    let g_new = reduce_poly(&(&(g + &(t * &e)) + &(&q * g)), &m2);
    let h_new = reduce_poly(&(h + &r), &m2);
    let one = IntPoly::one();
    let b = reduce_poly(&(&(&(s * &g_new) + &(t * &h_new)) - &one), &m2);
    let (c, d) = divrem_monic_mod(&(s * &b), &h_new, &m2);
    let s_new = reduce_poly(&(s - &d), &m2);
    let t_new = reduce_poly(&(&(t - &(t * &b)) - &(&c * &g_new)), &m2);
    debug_assert_eq!(g_new.degree(), g.degree());
    debug_assert_eq!(h_new.degree(), h.degree());
    (g_new, h_new, s_new, t_new)
}

/// Bezout data in F_p for coprime g, h: `s*g + t*h = 1` with
/// `deg s < deg h`, `deg t < deg g`.
fn bezout_mod_p(g: &ModPoly, h: &ModPoly) -> Result<(ModPoly, ModPoly)> {
    let p = g.p;
    let (mut r0, mut r1) = (g.clone(), h.clone());
    let (mut s0, mut s1) = (ModPoly::one(p), ModPoly::zero(p));
    let (mut t0, mut t1) = (ModPoly::zero(p), ModPoly::one(p));
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let s = s0.sub(&q.mul(&s1));
        s0 = std::mem::replace(&mut s1, s);
        let t = t0.sub(&q.mul(&t1));
        t0 = std::mem::replace(&mut t1, t);
    }
    if r0.degree() != Some(0) {
        return Err(Error::Internal("modular factors are not coprime".to_string()));
    }
    let inv = ModPoly::constant(p, 1).divrem(&r0).0;
    Ok((s0.mul(&inv), t0.mul(&inv)))
}

/// Hensel-lift the modular factorization `f = lc(f) * prod(local) (mod p)`
/// to mod `pk`, returning monic lifts of each local factor. Recursive
/// two-way split: left half carries the leading coefficient.
fn lift_factors(f: &IntPoly, local: &[ModPoly], p: u64, pk: &BigInt) -> Result<Vec<IntPoly>> {
    if local.len() == 1 {
        // Monic associate of f mod pk.
        let lc = f.leading_coeff().mod_floor(pk);
        let inv = mod_inverse(&lc, pk)
            .ok_or_else(|| Error::Internal("leading coefficient not invertible".to_string()))?;
        return Ok(vec![reduce_poly(&f.scaled(&inv), pk)]);
    }
    let mid = local.len() / 2;
    let (ls, rs) = local.split_at(mid);

    let pb = BigInt::from(p);
    let lc_p = f.leading_coeff().mod_floor(&pb);
    let mut g0 = ModPoly::from_int_poly(&IntPoly::constant(lc_p), p);
    for q in ls {
        g0 = g0.mul(q);
    }
    let mut h0 = ModPoly::one(p);
    for q in rs {
        h0 = h0.mul(q);
    }
    let (s0, t0) = bezout_mod_p(&g0, &h0)?;

    let (mut g, mut h, mut s, mut t) = (
        g0.to_int_poly(),
        h0.to_int_poly(),
        s0.to_int_poly(),
        t0.to_int_poly(),
    );
    let mut m = pb;
    while &m < pk {
        (g, h, s, t) = hensel_step(f, &g, &h, &s, &t, &m);
        m = &m * &m;
    }
    let g = reduce_poly(&g, pk);
    let h = reduce_poly(&h, pk);

    let mut out = lift_factors(&g, ls, p, pk)?;
    out.extend(lift_factors(&h, rs, p, pk)?);
    Ok(out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k == 0 || k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        // Advance the rightmost index that can still move.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
        }
        if idx[i] == i + n - k {
            return out;
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Find the true factors among subset products of the lifted modular factors.
fn recombine(f: &IntPoly, mut lifted: Vec<IntPoly>, pk: &BigInt) -> Result<Vec<IntPoly>> {
    let mut rest = f.clone();
    let mut out = Vec::new();
    let mut size = 1usize;
    while 2 * size <= lifted.len() {
        let mut hit = true;
        while hit && 2 * size <= lifted.len() {
            hit = false;
            'combos: for combo in combinations(lifted.len(), size) {
                let mut prod = IntPoly::constant(rest.leading_coeff().mod_floor(pk));
                for &i in &combo {
                    prod = reduce_poly(&(&prod * &lifted[i]), pk);
                }
                let mut cand = balanced_poly(&prod, pk).primitive_part();
                if cand.leading_coeff().is_negative() {
                    cand = -&cand;
                }
                if let Some(q) = rest.div_exact(&cand) {
                    out.push(cand);
                    rest = q;
                    for &i in combo.iter().rev() {
                        lifted.remove(i);
                    }
                    hit = true;
                    break 'combos;
                }
            }
        }
        size += 1;
    }
    if rest.degree().is_some_and(|d| d > 0) {
        let mut last = rest.primitive_part();
        if last.leading_coeff().is_negative() {
            last = -&last;
        }
        out.push(last);
    } else if !rest.is_one() {
        return Err(Error::Internal(format!(
            "recombination left constant {rest} for primitive input"
        )));
    }
    out.sort();
    Ok(out)
}
