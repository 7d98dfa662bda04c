//! Factorization over k: square-free decomposition, distinct-degree splitting,
//! then Cantor–Zassenhaus equal-degree splitting.

use std::sync::atomic::{AtomicU64, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use super::poly::Poly;
use crate::finite_field::{Field, Fq};

static SEED_SALT: AtomicU64 = AtomicU64::new(0);

/// Salt mixed into the per-input PRNG seed. Factorizations are canonical
/// regardless; the salt only changes which random splittings are tried.
pub fn set_factor_seed(seed: u64) {
    SEED_SALT.store(seed, Ordering::Relaxed);
}

/// `unit · Π factor^multiplicity`, factors monic irreducible in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Fq,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn expand(&self, k: &Field) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(self.unit), |acc, (f, m)| acc.mul(&f.pow(*m as u64, k), k))
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Complete factorization of a nonzero polynomial.
pub fn factorize(f: &Poly, k: &Field) -> Factorization {
    assert!(!f.is_zero(), "factorize of the zero polynomial");
    let unit = f.lead();
    let monic = f.monic(k);
    let mut rng = ChaCha8Rng::seed_from_u64(canonical_hash(&monic, k));
    let mut factors: Vec<(Poly, u32)> = Vec::new();
    for (sf, mult) in square_free(&monic, k) {
        for (g, d) in distinct_degree(&sf, k) {
            let mut pieces = Vec::new();
            equal_degree(&g, d, k, &mut rng, &mut pieces);
            factors.extend(pieces.into_iter().map(|p| (p, mult)));
        }
    }
    factors.sort();
    // merge equal factors (square-free parts are coprime, so this is defensive)
    let mut merged: Vec<(Poly, u32)> = Vec::new();
    for (p, m) in factors {
        match merged.last_mut() {
            Some((q, mm)) if *q == p => *mm += m,
            _ => merged.push((p, m)),
        }
    }
    Factorization { unit, factors: merged }
}

/// Only the distinct monic irreducible factors.
pub fn irreducible_factors(f: &Poly, k: &Field) -> Vec<Poly> {
    if f.is_constant() {
        return Vec::new();
    }
    factorize(f, k).factors.into_iter().map(|(p, _)| p).collect()
}

pub fn is_irreducible(f: &Poly, k: &Field) -> bool {
    f.degree().is_some_and(|d| d >= 1) && factorize(f, k).is_irreducible()
}

fn canonical_hash(f: &Poly, k: &Field) -> u64 {
    let mut h = Sha256::new();
    h.update(k.p().to_le_bytes());
    h.update((k.h() as u64).to_le_bytes());
    h.update(SEED_SALT.load(Ordering::Relaxed).to_le_bytes());
    for c in f.coeffs() {
        h.update(c.index().to_le_bytes());
    }
    let digest = h.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("8 bytes"))
}

fn pth_root_poly(f: &Poly, k: &Field) -> Poly {
    let p = k.p() as usize;
    Poly::new(f.coeffs().iter().step_by(p).map(|&c| k.pth_root(c)).collect())
}

/// Square-free decomposition of a monic polynomial: (part, multiplicity).
fn square_free(f: &Poly, k: &Field) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let df = f.derivative(k);
    let mut c = f.gcd(&df, k);
    let mut w = f.quo(&c, k);
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c, k);
        let fac = w.quo(&y, k);
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.quo(&w, k);
        i += 1;
    }
    if !c.is_one() {
        let root = pth_root_poly(&c, k);
        for (g, m) in square_free(&root, k) {
            out.push((g, m * k.p() as u32));
        }
    }
    out
}

/// Splits a square-free monic polynomial into products of equal-degree factors.
fn distinct_degree(f: &Poly, k: &Field) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let mut h = Poly::x().rem(&f, k);
    let mut d = 0usize;
    while let Some(deg) = f.degree() {
        if deg < 2 * (d + 1) {
            if deg > 0 {
                out.push((f.clone(), deg));
            }
            break;
        }
        d += 1;
        h = h.powmod(k.q(), &f, k);
        let g = f.gcd(&h.sub(&Poly::x(), k), k);
        if !g.is_one() {
            f = f.quo(&g, k);
            h = h.rem(&f, k);
            out.push((g, d));
        }
    }
    out
}

fn random_poly(deg_below: usize, k: &Field, rng: &mut ChaCha8Rng) -> Poly {
    Poly::new((0..deg_below).map(|_| k.element(rng.gen_range(0..k.q()))).collect())
}

/// Cantor–Zassenhaus: `g` is a product of distinct irreducibles of degree `d`.
fn equal_degree(g: &Poly, d: usize, k: &Field, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
    let n = g.degree().expect("nonzero");
    if n == d {
        out.push(g.clone());
        return;
    }
    loop {
        let a = random_poly(n, k, rng);
        if a.is_constant() {
            continue;
        }
        let b = if k.p() == 2 {
            // absolute trace map to F_2
            let mut acc = Poly::zero();
            let mut s = a.rem(g, k);
            for _ in 0..k.h() * d {
                acc = acc.add(&s, k);
                s = s.mulmod(&s, g, k);
            }
            acc
        } else {
            // a^((q^d - 1)/2) = Π_i (a^((q-1)/2))^(q^i)
            let base = a.powmod((k.q() - 1) / 2, g, k);
            let mut acc = base.clone();
            let mut s = base;
            for _ in 1..d {
                s = s.powmod(k.q(), g, k);
                acc = acc.mulmod(&s, g, k);
            }
            acc.sub(&Poly::one(), k)
        };
        let f1 = g.gcd(&b, k);
        if let Some(df) = f1.degree() {
            if df > 0 && df < n {
                let f2 = g.quo(&f1, k);
                equal_degree(&f1, d, k, rng, out);
                equal_degree(&f2, d, k, rng, out);
                return;
            }
        }
    }
}
