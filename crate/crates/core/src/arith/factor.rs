use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

/// Primes up to this bound are stripped by trial division before anything else.
pub const TRIAL_DIVISION_LIMIT: u64 = 10_000;

/// Below this bound the fixed witness set `DETERMINISTIC_WITNESSES` is known
/// to be exhaustive, so Miller-Rabin is a proof of primality.
const DETERMINISTIC_MR_BOUND: &str = "3317044064679887385961981";

const DETERMINISTIC_WITNESSES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Extra random witnesses above the deterministic bound; one-sided error
/// below 4^-64 per call, and such results are flagged `probabilistic`.
const EXTRA_RANDOM_WITNESSES: usize = 64;

/// All primes below [`TRIAL_DIVISION_LIMIT`], smallest first.
pub fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_DIVISION_LIMIT as usize;
        let mut composite = vec![false; n + 1];
        let mut out = Vec::new();
        for i in 2..=n {
            if !composite[i] {
                out.push(i as u64);
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        out
    })
}

/// Tuning knobs for integer factorization. Everything that consumes
/// randomness derives it deterministically from `seed`, so results are
/// reproducible per seed.
#[derive(Clone, Debug)]
pub struct FactorConfig {
    /// Iterations allowed per Brent-rho attempt before switching constants.
    pub rho_iteration_cap: u64,
    /// Number of rho attempts (distinct polynomial constants) before giving up.
    pub rho_attempts: u32,
    /// Mixed into every derived witness seed.
    pub seed: u64,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig { rho_iteration_cap: 4_000_000, rho_attempts: 20, seed: 0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Primality {
    Composite,
    Prime,
    /// Prime for every tested witness, but above the deterministic bound.
    ProbablePrime,
}

/// `n = unit * prod p^e` with the primes in increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeFactorization {
    /// `1` or `-1`.
    pub unit: i8,
    pub factors: BTreeMap<BigInt, u32>,
    /// True when any stated prime is only probably prime.
    pub probabilistic: bool,
}

impl PrimeFactorization {
    pub fn one() -> Self {
        PrimeFactorization { unit: 1, factors: BTreeMap::new(), probabilistic: false }
    }

    /// Multiply the factorization back out.
    pub fn value(&self) -> BigInt {
        let mut v = BigInt::from(self.unit);
        for (p, e) in &self.factors {
            v *= pow_big(p, *e);
        }
        v
    }

    /// Signed square-free part: the unit times every prime of odd exponent.
    pub fn squarefree_part(&self) -> BigInt {
        let mut v = BigInt::from(self.unit);
        for (p, e) in &self.factors {
            if e % 2 == 1 {
                v *= p;
            }
        }
        v
    }

    pub fn distinct_primes(&self) -> Vec<BigInt> {
        self.factors.keys().cloned().collect()
    }

    pub fn odd_exponent_primes(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|(_, e)| **e % 2 == 1).map(|(p, _)| p.clone()).collect()
    }

    /// All positive divisors, in increasing order.
    pub fn divisors(&self) -> Vec<BigInt> {
        let mut out = vec![BigInt::one()];
        for (p, e) in &self.factors {
            let mut next = Vec::with_capacity(out.len() * (*e as usize + 1));
            let mut pk = BigInt::one();
            for _ in 0..=*e {
                for d in &out {
                    next.push(d * &pk);
                }
                pk *= p;
            }
            out = next;
        }
        out.sort();
        out
    }

    /// All positive square-free divisors, in increasing order.
    pub fn squarefree_divisors(&self) -> Vec<BigInt> {
        let mut out = vec![BigInt::one()];
        for p in self.factors.keys() {
            let mut next = Vec::with_capacity(out.len() * 2);
            for d in &out {
                next.push(d.clone());
                next.push(d * p);
            }
            out = next;
        }
        out.sort();
        out
    }
}

fn pow_big(p: &BigInt, e: u32) -> BigInt {
    let mut v = BigInt::one();
    let mut base = p.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            v = &v * &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    v
}

fn deterministic_bound() -> &'static BigUint {
    static BOUND: OnceLock<BigUint> = OnceLock::new();
    BOUND.get_or_init(|| DETERMINISTIC_MR_BOUND.parse().expect("literal parses"))
}

/// Mix an integer and a user seed into a stream seed for witness selection.
fn derived_seed(n: &BigUint, seed: u64) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64 ^ seed.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    for d in n.to_u64_digits() {
        h = (h ^ d).wrapping_mul(0x1000_0000_01b3);
    }
    h
}

/// True when `a` proves `n` composite, with `n - 1 = d * 2^s` and `n` odd.
fn is_mr_witness(n: &BigUint, n_minus_1: &BigUint, a: &BigUint, d: &BigUint, s: u64) -> bool {
    let a = a % n;
    if a.is_zero() {
        return false;
    }
    let mut x = a.modpow(d, n);
    if x.is_one() || &x == n_minus_1 {
        return false;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if &x == n_minus_1 {
            return false;
        }
    }
    true
}

/// Miller-Rabin classification: deterministic below a published bound for the
/// first 13 prime witnesses, otherwise extended with 64 seed-derived random
/// witnesses and reported as [`Primality::ProbablePrime`] on success.
pub fn classify_prime(n: &BigUint, seed: u64) -> Primality {
    if n < &BigUint::from(2u32) {
        return Primality::Composite;
    }
    let two = BigUint::from(2u32);
    if n == &two {
        return Primality::Prime;
    }
    if (n % &two).is_zero() {
        return Primality::Composite;
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().expect("n > 1 is odd, so n-1 > 0");
    let d = &n_minus_1 >> s;

    for &w in &DETERMINISTIC_WITNESSES {
        let wb = BigUint::from(w);
        if &wb == n {
            return Primality::Prime;
        }
        if is_mr_witness(n, &n_minus_1, &wb, &d, s) {
            return Primality::Composite;
        }
    }
    if n < deterministic_bound() {
        return Primality::Prime;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(derived_seed(n, seed));
    let bits = n.bits();
    for _ in 0..EXTRA_RANDOM_WITNESSES {
        // Rejection-free: random bits reduced mod n, retried only on 0/1.
        let mut a = random_below(&mut rng, n, bits);
        while a < two {
            a = random_below(&mut rng, n, bits);
        }
        if is_mr_witness(n, &n_minus_1, &a, &d, s) {
            return Primality::Composite;
        }
    }
    Primality::ProbablePrime
}

fn random_below(rng: &mut ChaCha8Rng, n: &BigUint, bits: u64) -> BigUint {
    let words = bits.div_ceil(64) + 1;
    let mut digits = Vec::with_capacity(words as usize);
    for _ in 0..words {
        digits.push(rng.next_u64());
    }
    BigUint::from_slice(
        &digits.iter().flat_map(|d| [*d as u32, (*d >> 32) as u32]).collect::<Vec<_>>(),
    ) % n
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

fn mulmod_u64(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

/// Brent's cycle-finding variant of Pollard rho on machine words.
fn brent_rho_u64(n: u64, c: u64, cap: u64) -> Option<u64> {
    let step = |y: u64| {
        let s = mulmod_u64(y, y, n);
        let t = s + c;
        if t >= n {
            t - n
        } else {
            t
        }
    };
    let mut y: u64 = 2;
    let mut r: u64 = 1;
    let mut q: u64 = 1;
    let mut g: u64 = 1;
    let mut x: u64 = 0;
    let mut ys: u64 = 0;
    let batch = 128u64;
    let mut used = 0u64;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = step(y);
        }
        used += r;
        if used > cap {
            return None;
        }
        let mut k = 0u64;
        while k < r && g == 1 {
            ys = y;
            let lim = batch.min(r - k);
            for _ in 0..lim {
                y = step(y);
                q = mulmod_u64(q, x.abs_diff(y), n);
            }
            g = gcd_u64(q, n);
            k += lim;
        }
        used += k;
        if used > cap {
            return None;
        }
        r <<= 1;
    }
    if g == n {
        let mut back = 0u64;
        loop {
            ys = step(ys);
            g = gcd_u64(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
            back += 1;
            if back > cap {
                return None;
            }
        }
    }
    if g == n || g == 1 {
        None
    } else {
        Some(g)
    }
}

/// Brent rho on big integers, for inputs beyond 64 bits.
fn brent_rho_big(n: &BigUint, c: u64, cap: u64) -> Option<BigUint> {
    let cb = BigUint::from(c);
    let step = |y: &BigUint| (y * y + &cb) % n;
    let abs_diff = |a: &BigUint, b: &BigUint| if a >= b { a - b } else { b - a };
    let mut y = BigUint::from(2u32);
    let mut r = 1u64;
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut x = BigUint::zero();
    let mut ys = BigUint::zero();
    let batch = 128u64;
    let mut used = 0u64;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = step(&y);
        }
        used += r;
        if used > cap {
            return None;
        }
        let mut k = 0u64;
        while k < r && g.is_one() {
            ys = y.clone();
            let lim = batch.min(r - k);
            for _ in 0..lim {
                y = step(&y);
                q = &q * abs_diff(&x, &y) % n;
            }
            g = num_integer::Integer::gcd(&q, n);
            k += lim;
        }
        used += k;
        if used > cap {
            return None;
        }
        r <<= 1;
    }
    if &g == n {
        let mut back = 0u64;
        loop {
            ys = step(&ys);
            g = num_integer::Integer::gcd(&abs_diff(&x, &ys), n);
            if !g.is_one() {
                break;
            }
            back += 1;
            if back > cap {
                return None;
            }
        }
    }
    if &g == n || g.is_one() {
        None
    } else {
        Some(g)
    }
}

/// Find any nontrivial divisor of an odd composite with no small factors.
fn find_divisor(n: &BigUint, cfg: &FactorConfig) -> Option<BigUint> {
    let root = n.sqrt();
    if &(&root * &root) == n {
        return Some(root);
    }
    if let Some(n64) = n.to_u64() {
        for attempt in 0..cfg.rho_attempts {
            let c = 2 * attempt as u64 + 1;
            if let Some(d) = brent_rho_u64(n64, c, cfg.rho_iteration_cap) {
                return Some(BigUint::from(d));
            }
        }
    } else {
        for attempt in 0..cfg.rho_attempts {
            let c = 2 * attempt as u64 + 1;
            if let Some(d) = brent_rho_big(n, c, cfg.rho_iteration_cap) {
                return Some(d);
            }
        }
    }
    None
}

fn bump(factors: &mut BTreeMap<BigInt, u32>, p: BigInt) {
    *factors.entry(p).or_insert(0) += 1;
}

/// Factor a nonzero integer into primes with the default configuration.
pub fn factor_integer(n: &BigInt) -> Result<PrimeFactorization> {
    factor_integer_with(n, &FactorConfig::default())
}

/// Factor a nonzero integer into primes: trial division below
/// [`TRIAL_DIVISION_LIMIT`], then Miller-Rabin plus Brent rho on what remains.
pub fn factor_integer_with(n: &BigInt, cfg: &FactorConfig) -> Result<PrimeFactorization> {
    if n.is_zero() {
        return Err(Error::FactorZero);
    }
    let unit: i8 = if n.sign() == Sign::Minus { -1 } else { 1 };
    let mut factors = BTreeMap::new();
    let mut probabilistic = false;
    let mut rest = n.magnitude().clone();

    for &p in small_primes() {
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            break;
        }
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            bump(&mut factors, BigInt::from(p));
        }
        if rest.is_one() {
            break;
        }
    }

    if !rest.is_one() {
        let limit_sq = BigUint::from(TRIAL_DIVISION_LIMIT * TRIAL_DIVISION_LIMIT);
        if rest < limit_sq {
            // No factor below the trial bound and rest < bound^2, so prime.
            bump(&mut factors, BigInt::from(rest));
        } else {
            let mut stack = vec![rest];
            while let Some(m) = stack.pop() {
                if m.is_one() {
                    continue;
                }
                match classify_prime(&m, cfg.seed) {
                    Primality::Prime => bump(&mut factors, BigInt::from(m)),
                    Primality::ProbablePrime => {
                        probabilistic = true;
                        bump(&mut factors, BigInt::from(m));
                    }
                    Primality::Composite => {
                        let d = find_divisor(&m, cfg).ok_or_else(|| Error::FactorizationCap {
                            n: BigInt::from(m.clone()),
                            cap: cfg.rho_iteration_cap,
                        })?;
                        let q = &m / &d;
                        stack.push(d);
                        stack.push(q);
                    }
                }
            }
        }
    }

    Ok(PrimeFactorization { unit, factors, probabilistic })
}
