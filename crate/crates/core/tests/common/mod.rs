//! Seeded generators of random towers and field data shared by the property
//! tests and the acceptance suite.
#![allow(dead_code)]

use holodiff::finite_field::{first_irreducible, Field, FieldSpec, Fq};
use holodiff::tower::{analyze, genus_from_analysis, validate, StepKind, StepSpec, TowerDescriptor};
use holodiff::tower_algebra::AlgebraElement;
use holodiff::univariate::{is_irreducible, Poly, RatFun};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Constant fields with q ≤ 49.
pub const FIELDS: [(u64, usize); 12] =
    [(2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1), (7, 2), (11, 1), (13, 1)];

pub fn field(p: u64, h: usize) -> Field {
    let spec = if h == 1 { FieldSpec::prime(p) } else { FieldSpec::extension(p, first_irreducible(p, h)) };
    Field::new(spec).expect("valid field")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_element(k: &Field, rng: &mut impl Rng) -> Fq {
    k.element(rng.gen_range(0..k.q()))
}

pub fn random_nonzero(k: &Field, rng: &mut impl Rng) -> Fq {
    k.element(rng.gen_range(1..k.q()))
}

pub fn random_poly(k: &Field, max_deg: usize, rng: &mut impl Rng) -> Poly {
    let d = rng.gen_range(0..=max_deg);
    Poly::new((0..=d).map(|_| random_element(k, rng)).collect())
}

pub fn random_ratfun(k: &Field, max_deg: usize, rng: &mut impl Rng) -> RatFun {
    let mut den = random_poly(k, max_deg, rng);
    if den.is_zero() {
        den = Poly::one();
    }
    RatFun::new(random_poly(k, max_deg, rng), den, k).expect("nonzero denominator")
}

pub fn random_monic_irreducible(k: &Field, deg: usize, rng: &mut impl Rng) -> Poly {
    loop {
        let mut c: Vec<Fq> = (0..deg).map(|_| random_element(k, rng)).collect();
        c.push(k.one());
        let f = Poly::new(c);
        if is_irreducible(&f, k) {
            return f;
        }
    }
}

fn kummer_degrees(k: &Field) -> Vec<u64> {
    (2..=5u64).filter(|&n| n % k.p() != 0 && (k.q() - 1).is_multiple_of(n)).collect()
}

fn pick_places(pool: &[Poly], count: usize, rng: &mut impl Rng) -> Vec<Poly> {
    let mut v: Vec<Poly> = pool.to_vec();
    v.shuffle(rng);
    v.truncate(count.min(pool.len()));
    v
}

fn kummer_step(k: &Field, n: u64, pool: &[Poly], rng: &mut impl Rng) -> Option<RatFun> {
    let mut num = Poly::constant(random_nonzero(k, rng));
    let chosen = pick_places(pool, rng.gen_range(1..=3), rng);
    let mut total = 0u64;
    for f in &chosen {
        let a = rng.gen_range(1..n);
        total += a * f.deg() as u64;
        num = num.mul(&f.pow(a, k), k);
    }
    let short = (n - total % n) % n;
    if short != 0 {
        // close the degree with one more linear place so ∞ stays unramified
        let f = pool.iter().find(|f| f.deg() == 1 && !chosen.contains(f))?;
        num = num.mul(&f.pow(short, k), k);
    }
    Some(RatFun::from_poly(num))
}

fn as_step(k: &Field, pool: &[Poly], rng: &mut impl Rng) -> RatFun {
    let p = k.p();
    let mut c = RatFun::zero();
    for f in pick_places(pool, rng.gen_range(1..=2), rng) {
        let m = loop {
            let m = rng.gen_range(1..=3u64);
            if m % p != 0 {
                break m;
            }
        };
        let num = Poly::constant(random_nonzero(k, rng));
        c = c.add(&RatFun::new(num, f.pow(m, k), k).expect("nonzero"), k);
    }
    c
}

/// A candidate tower with r ≤ 3, n_i ≤ 5 and at most six places involved.
/// Coefficients lie in k(x), occasionally with one extra lower-generator term.
pub fn random_candidate(rng: &mut impl Rng) -> Option<TowerDescriptor> {
    let (p, h) = FIELDS[rng.gen_range(0..FIELDS.len())];
    let k = field(p, h);
    let mut pool: Vec<Poly> = Vec::new();
    let target = rng.gen_range(2..=6);
    for _ in 0..target * 4 {
        if pool.len() == target {
            break;
        }
        let deg = if rng.gen_bool(0.8) { 1 } else { 2 };
        let f = random_monic_irreducible(&k, deg, rng);
        if !pool.contains(&f) {
            pool.push(f);
        }
    }
    let r = *[1usize, 2, 2, 3, 3].choose(rng).unwrap();
    let degrees = kummer_degrees(&k);
    let mut steps = Vec::with_capacity(r);
    for i in 0..r {
        // Artin–Schreier steps have degree p, kept at most 5
        let use_kummer = !degrees.is_empty() && (p > 5 || rng.gen_bool(0.5));
        if !use_kummer && p > 5 {
            return None;
        }
        let step = if use_kummer {
            let n = *degrees.choose(rng).unwrap();
            StepSpec { kind: StepKind::Kummer { n }, c: AlgebraElement::from_ratfun(kummer_step(&k, n, &pool, rng)?, i) }
        } else {
            let mut c = AlgebraElement::from_ratfun(as_step(&k, &pool, rng), i);
            if i > 0 && rng.gen_bool(0.25) {
                let j = rng.gen_range(0..i);
                let mut e = vec![0u32; i];
                e[j] = 1;
                c = c.add(&AlgebraElement::monomial(e, RatFun::constant(random_nonzero(&k, rng))), &k);
            }
            StepSpec { kind: StepKind::ArtinSchreier, c }
        };
        steps.push(step);
    }
    TowerDescriptor::new(k, steps).ok()
}

/// Validated towers with genus at most `max_genus`, deterministic in `seed`.
pub fn random_validated(seed: u64, count: usize, max_genus: u64) -> Vec<TowerDescriptor> {
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count && attempts < count * 200 {
        attempts += 1;
        let Some(d) = random_candidate(&mut rng) else { continue };
        if !validate(&d).passed() {
            continue;
        }
        let Ok(a) = analyze(&d) else { continue };
        match genus_from_analysis(&d, &a) {
            Ok(g) if g <= max_genus => out.push(d),
            _ => {}
        }
    }
    out
}

/// Whether every generator is a plain K-automorphism (coefficients in k(x)).
pub fn is_abelian_plain(d: &TowerDescriptor) -> bool {
    d.steps().iter().all(|s| s.c.as_ratfun().is_some())
}
