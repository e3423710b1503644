use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::IntPoly;

/// Dense polynomial over F_p for an odd prime `p < 2^31` (products of two
/// residues then fit in u128 without overflow).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ModPoly {
    pub p: u64,
    coeffs: Vec<u64>,
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    acc
}

fn invm(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    powm(a, p - 2, p)
}

impl ModPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        debug_assert!(p % 2 == 1 && p > 2 && p < (1 << 31));
        let mut f = ModPoly { p, coeffs: coeffs.into_iter().map(|c| c % p).collect() };
        f.trim();
        f
    }

    pub fn zero(p: u64) -> Self {
        ModPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        ModPoly { p, coeffs: vec![1] }
    }

    pub fn constant(p: u64, c: u64) -> Self {
        ModPoly::new(p, vec![c])
    }

    pub fn x(p: u64) -> Self {
        ModPoly { p, coeffs: vec![0, 1] }
    }

    pub fn from_int_poly(f: &IntPoly, p: u64) -> Self {
        let pb = BigInt::from(p);
        ModPoly::new(
            p,
            f.coeffs()
                .iter()
                .map(|c| c.mod_floor(&pb).to_u64().expect("residue fits"))
                .collect(),
        )
    }

    /// Coefficients lifted to nonnegative integers.
    pub fn to_int_poly(&self) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() || self.leading() == 1 {
            return self.clone();
        }
        self.mul_scalar(invm(self.leading(), self.p))
    }

    pub fn mul_scalar(&self, s: u64) -> Self {
        let p = self.p;
        let mut f = ModPoly { p, coeffs: self.coeffs.iter().map(|&c| mulm(c, s, p)).collect() };
        f.trim();
        f
    }

    pub fn add(&self, rhs: &ModPoly) -> Self {
        let p = self.p;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k).copied().unwrap_or(0);
            let b = rhs.coeffs.get(k).copied().unwrap_or(0);
            coeffs.push((a + b) % p);
        }
        let mut f = ModPoly { p, coeffs };
        f.trim();
        f
    }

    pub fn sub(&self, rhs: &ModPoly) -> Self {
        let p = self.p;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k).copied().unwrap_or(0);
            let b = rhs.coeffs.get(k).copied().unwrap_or(0);
            coeffs.push((a + p - b) % p);
        }
        let mut f = ModPoly { p, coeffs };
        f.trim();
        f
    }

    pub fn mul(&self, rhs: &ModPoly) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return ModPoly::zero(self.p);
        }
        let p = self.p;
        let mut coeffs = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = (coeffs[i + j] + mulm(a, b, p)) % p;
            }
        }
        let mut f = ModPoly { p, coeffs };
        f.trim();
        f
    }

    pub fn divrem(&self, g: &ModPoly) -> (ModPoly, ModPoly) {
        assert!(!g.is_zero(), "division by zero polynomial");
        let p = self.p;
        let dg = g.degree().expect("nonzero");
        let lg_inv = invm(g.leading(), p);
        let mut r = self.coeffs.clone();
        let mut q = vec![0u64; self.coeffs.len().saturating_sub(dg)];
        while r.len() > dg {
            let dr = r.len() - 1;
            let factor = mulm(*r.last().expect("nonempty"), lg_inv, p);
            if factor != 0 {
                for (k, &gc) in g.coeffs.iter().enumerate() {
                    let idx = dr - dg + k;
                    r[idx] = (r[idx] + p - mulm(factor, gc, p)) % p;
                }
                q[dr - dg] = factor;
            }
            r.pop();
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        (ModPoly { p, coeffs: q }, ModPoly { p, coeffs: r })
    }

    pub fn rem(&self, g: &ModPoly) -> ModPoly {
        self.divrem(g).1
    }

    /// Monic gcd.
    pub fn gcd(&self, rhs: &ModPoly) -> ModPoly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> ModPoly {
        if self.coeffs.len() <= 1 {
            return ModPoly::zero(self.p);
        }
        let p = self.p;
        let mut f = ModPoly {
            p,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| mulm(c, (k as u64) % p, p))
                .collect(),
        };
        f.trim();
        f
    }

    /// True when gcd(f, f') is constant. In characteristic p a vanishing
    /// derivative makes this report false, which callers treat as "skip this
    /// prime".
    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// `self^e mod m` by square and multiply.
    pub fn pow_mod(&self, e: &BigUint, m: &ModPoly) -> ModPoly {
        let mut acc = ModPoly::one(self.p);
        let base = self.rem(m);
        for bit in e.to_radix_be(2) {
            acc = acc.mul(&acc).rem(m);
            if bit == 1 {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }

    /// Factor a monic square-free polynomial into distinct monic irreducibles
    /// (distinct-degree then Cantor-Zassenhaus equal-degree splitting).
    /// Deterministic for a fixed `seed`. Result is sorted.
    pub fn factor_squarefree_monic(&self, seed: u64) -> Vec<ModPoly> {
        debug_assert!(self.leading() == 1 && self.is_squarefree());
        let p = self.p;
        let mut seed_mix = seed ^ 0x5eed_0f_ac70_44u64 ^ p.rotate_left(17);
        for &c in &self.coeffs {
            seed_mix = (seed_mix ^ c).wrapping_mul(0x9e37_79b9_7f4a_7c15);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed_mix);

        let mut out = Vec::new();
        let mut rest = self.clone();
        let mut w = ModPoly::x(p).rem(&rest);
        let mut d = 0usize;
        while rest.degree().is_some_and(|deg| deg > 0) {
            d += 1;
            if 2 * d > rest.degree().expect("nonzero") {
                out.push(rest.clone());
                break;
            }
            w = w.pow_mod(&BigUint::from(p), &rest);
            let split = w.sub(&ModPoly::x(p)).gcd(&rest);
            if split.degree().is_some_and(|deg| deg > 0) {
                equal_degree_factor(&split, d, &mut rng, &mut out);
                rest = rest.divrem(&split).0;
                w = w.rem(&rest);
            }
        }
        out.sort();
        out
    }
}

/// Split a monic square-free product of degree-`d` irreducibles.
fn equal_degree_factor(f: &ModPoly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<ModPoly>) {
    let deg = f.degree().expect("nonconstant");
    if deg == d {
        out.push(f.clone());
        return;
    }
    let p = f.p;
    let exponent = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let coeffs: Vec<u64> = (0..deg).map(|_| rng.next_u64() % p).collect();
        let a = ModPoly::new(p, coeffs);
        if a.degree().is_none() {
            continue;
        }
        let b = a.pow_mod(&exponent, f);
        let g = b.sub(&ModPoly::one(p)).gcd(f);
        if g.degree().is_some_and(|dg| dg > 0 && dg < deg) {
            let h = f.divrem(&g).0;
            equal_degree_factor(&g, d, rng, out);
            equal_degree_factor(&h, d, rng, out);
            return;
        }
    }
}
