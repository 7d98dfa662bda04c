//! Arithmetic in the constant field k = F_{p^h}.
//!
//! Elements are packed into a `u32`: for h = 1 the value is the residue mod p,
//! for h > 1 it is the base-p integer whose digits are the power-basis
//! coordinates (ascending). Multiplication for h > 1 goes through log/exp
//! tables built once per [`Field`].

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest field order supported when h > 1 (tables are O(q)).
pub const MAX_EXTENSION_ORDER: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("element does not belong to this field: {0}")]
    FieldMismatch(String),
    #[error("n = {n} is not coprime to the characteristic {p}")]
    NotCoprimeToCharacteristic { n: u64, p: u64 },
    #[error("invalid field spec: {0}")]
    InvalidSpec(String),
}

/// User-facing description of F_{p^h}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub h: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
}

impl FieldSpec {
    pub fn prime(p: u64) -> Self {
        FieldSpec { p, h: 1, modulus: None }
    }

    pub fn extension(p: u64, modulus: Vec<u64>) -> Self {
        FieldSpec { p, h: modulus.len().saturating_sub(1), modulus: Some(modulus) }
    }
}

/// An element of some [`Field`]; meaningless without its field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fq(pub(crate) u32);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Packed index in `0..q`; also the canonical ordering key.
    pub fn index(self) -> u32 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// The finite field F_{p^h} with precomputed tables.
#[derive(Debug, Clone)]
pub struct Field {
    spec: FieldSpec,
    q: u64,
    exp: Vec<u32>,
    log: Vec<u32>,
    generator: Fq,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}
impl Eq for Field {}

impl Field {
    pub fn new(spec: FieldSpec) -> Result<Self, FieldError> {
        let p = spec.p;
        if p < 2 || !is_prime(p) {
            return Err(FieldError::InvalidSpec(format!("p = {p} is not prime")));
        }
        if p >= 1 << 31 {
            return Err(FieldError::InvalidSpec(format!("p = {p} too large")));
        }
        if spec.h == 0 {
            return Err(FieldError::InvalidSpec("h must be at least 1".into()));
        }
        if spec.h == 1 {
            if let Some(m) = &spec.modulus {
                if m.len() != 2 || m[1] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(FieldError::InvalidSpec("degree-1 modulus must be monic linear".into()));
                }
            }
            let spec = FieldSpec { p, h: 1, modulus: None };
            let mut f = Field { spec, q: p, exp: Vec::new(), log: Vec::new(), generator: Fq(0) };
            f.generator = f.find_primitive();
            return Ok(f);
        }
        let modulus = spec
            .modulus
            .clone()
            .ok_or_else(|| FieldError::InvalidSpec("h > 1 requires a modulus".into()))?;
        if modulus.len() != spec.h + 1 {
            return Err(FieldError::InvalidSpec(format!(
                "modulus must have h + 1 = {} coefficients",
                spec.h + 1
            )));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(FieldError::InvalidSpec("modulus coefficients must lie in [0, p)".into()));
        }
        if modulus[spec.h] != 1 {
            return Err(FieldError::InvalidSpec("modulus must be monic".into()));
        }
        let q = (p as u128).pow(spec.h as u32);
        if q > MAX_EXTENSION_ORDER as u128 {
            return Err(FieldError::InvalidSpec(format!("q = {q} exceeds {MAX_EXTENSION_ORDER}")));
        }
        if !fp_poly_is_irreducible(&modulus, p) {
            return Err(FieldError::InvalidSpec("modulus is reducible over F_p".into()));
        }
        let mut f = Field { spec, q: q as u64, exp: Vec::new(), log: Vec::new(), generator: Fq(0) };
        f.build_tables();
        Ok(f)
    }

    /// F_p with its canonical spec.
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        Field::new(FieldSpec::prime(p))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }
    pub fn p(&self) -> u64 {
        self.spec.p
    }
    pub fn h(&self) -> usize {
        self.spec.h
    }
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn zero(&self) -> Fq {
        Fq::ZERO
    }
    pub fn one(&self) -> Fq {
        Fq::ONE
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Fq {
        Fq(n.rem_euclid(self.spec.p as i64) as u32)
    }

    /// Element from power-basis coordinates (length h, entries in `[0, p)`).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Fq, FieldError> {
        if coeffs.len() != self.spec.h {
            return Err(FieldError::FieldMismatch(format!(
                "expected {} coordinates, got {}",
                self.spec.h,
                coeffs.len()
            )));
        }
        let p = self.spec.p;
        let mut v = 0u64;
        for &c in coeffs.iter().rev() {
            if c >= p {
                return Err(FieldError::FieldMismatch(format!("coordinate {c} not below p = {p}")));
            }
            v = v * p + c;
        }
        Ok(Fq(v as u32))
    }

    pub fn coeffs(&self, a: Fq) -> Vec<u64> {
        let p = self.spec.p;
        let mut v = a.0 as u64;
        (0..self.spec.h)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }

    /// Element with packed index `i` (`i < q`).
    pub fn element(&self, i: u64) -> Fq {
        debug_assert!(i < self.q);
        Fq(i as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.q).map(|i| Fq(i as u32))
    }

    pub fn contains(&self, a: Fq) -> bool {
        (a.0 as u64) < self.q
    }

    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        let p = self.spec.p;
        if self.spec.h == 1 {
            return Fq(((a.0 as u64 + b.0 as u64) % p) as u32);
        }
        let (mut x, mut y) = (a.0 as u64, b.0 as u64);
        let (mut r, mut scale) = (0u64, 1u64);
        while x > 0 || y > 0 {
            r += ((x % p + y % p) % p) * scale;
            x /= p;
            y /= p;
            scale *= p;
        }
        Fq(r as u32)
    }

    pub fn neg(&self, a: Fq) -> Fq {
        let p = self.spec.p;
        if self.spec.h == 1 {
            return Fq(((p - a.0 as u64) % p) as u32);
        }
        let mut x = a.0 as u64;
        let (mut r, mut scale) = (0u64, 1u64);
        while x > 0 {
            r += ((p - x % p) % p) * scale;
            x /= p;
            scale *= p;
        }
        Fq(r as u32)
    }

    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a.is_zero() || b.is_zero() {
            return Fq::ZERO;
        }
        if self.spec.h == 1 {
            return Fq(((a.0 as u64 * b.0 as u64) % self.spec.p) as u32);
        }
        let n = self.q - 1;
        let l = (self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64) % n;
        Fq(self.exp[l as usize])
    }

    pub fn inv(&self, a: Fq) -> Result<Fq, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow(a, self.q - 2))
    }

    pub fn div(&self, a: Fq, b: Fq) -> Result<Fq, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fq, e: u64) -> Fq {
        if e == 0 {
            return Fq::ONE;
        }
        if a.is_zero() {
            return Fq::ZERO;
        }
        if self.spec.h > 1 {
            let n = self.q - 1;
            let l = (self.log[a.0 as usize] as u128 * (e as u128 % n as u128)) % n as u128;
            return Fq(self.exp[l as usize]);
        }
        let p = self.spec.p;
        let (mut base, mut e, mut acc) = (a.0 as u64, e, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fq(acc as u32)
    }

    /// Checked binary operation; rejects operands outside the field.
    pub fn arith(&self, a: Fq, b: Fq, op: FieldOp) -> Result<Fq, FieldError> {
        for x in [a, b] {
            if !self.contains(x) {
                return Err(FieldError::FieldMismatch(format!("index {} not below q = {}", x.0, self.q)));
            }
        }
        Ok(match op {
            FieldOp::Add => self.add(a, b),
            FieldOp::Sub => self.sub(a, b),
            FieldOp::Mul => self.mul(a, b),
            FieldOp::Div => self.div(a, b)?,
        })
    }

    /// The unique r with r^p = a, namely a^(p^(h-1)).
    pub fn pth_root(&self, a: Fq) -> Fq {
        let mut r = a;
        for _ in 1..self.spec.h {
            r = self.pow(r, self.spec.p);
        }
        r
    }

    pub fn frobenius(&self, a: Fq) -> Fq {
        self.pow(a, self.spec.p)
    }

    pub fn has_nth_roots_of_unity(&self, n: u64) -> Result<bool, FieldError> {
        if n == 0 || num_integer::gcd(n, self.spec.p) != 1 {
            return Err(FieldError::NotCoprimeToCharacteristic { n, p: self.spec.p });
        }
        Ok((self.q - 1).is_multiple_of(n))
    }

    /// Canonical generator of k^*: the primitive element of least index.
    pub fn primitive_element(&self) -> Fq {
        self.generator
    }

    /// Canonical primitive n-th root of unity g^((q-1)/n), if n | q - 1.
    pub fn root_of_unity(&self, n: u64) -> Option<Fq> {
        if n == 0 || !(self.q - 1).is_multiple_of(n) {
            return None;
        }
        Some(self.pow(self.generator, (self.q - 1) / n))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Fq) -> u64 {
        assert!(!a.is_zero(), "order of zero");
        let mut ord = self.q - 1;
        for (r, _) in factor_u64(self.q - 1) {
            while ord.is_multiple_of(r) && self.pow(a, ord / r) == Fq::ONE {
                ord /= r;
            }
        }
        ord
    }

    /// Absolute trace to F_p, as an integer in `[0, p)`.
    pub fn absolute_trace(&self, a: Fq) -> u64 {
        let mut acc = Fq::ZERO;
        let mut x = a;
        for _ in 0..self.spec.h {
            acc = self.add(acc, x);
            x = self.frobenius(x);
        }
        debug_assert!((acc.0 as u64) < self.spec.p);
        acc.0 as u64
    }

    /// True iff `a` lies in the prime field.
    pub fn in_prime_field(&self, a: Fq) -> bool {
        (a.0 as u64) < self.spec.p
    }

    fn find_primitive(&self) -> Fq {
        if self.q == 2 {
            return Fq::ONE;
        }
        let factors = factor_u64(self.q - 1);
        'outer: for i in 1..self.q {
            let g = Fq(i as u32);
            for &(r, _) in &factors {
                if self.pow(g, (self.q - 1) / r) == Fq::ONE {
                    continue 'outer;
                }
            }
            return g;
        }
        unreachable!("every finite field has a primitive element")
    }

    fn build_tables(&mut self) {
        let p = self.spec.p;
        let h = self.spec.h;
        let modulus = self.spec.modulus.clone().expect("extension modulus");
        let slow_mul = |a: u64, b: u64| -> u64 {
            let da = digits(a, p, h);
            let db = digits(b, p, h);
            let mut prod = vec![0u64; 2 * h];
            for (i, &x) in da.iter().enumerate() {
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            for d in (h..2 * h).rev() {
                let c = prod[d];
                if c != 0 {
                    for (k, &m) in modulus.iter().enumerate().take(h) {
                        let idx = d - h + k;
                        prod[idx] = (prod[idx] + (p - c) * m % p) % p;
                    }
                    prod[d] = 0;
                }
            }
            undigits(&prod[..h], p)
        };
        let n = self.q - 1;
        let factors = factor_u64(n);
        let slow_pow = |a: u64, mut e: u64| -> u64 {
            let (mut base, mut acc) = (a, 1u64);
            while e > 0 {
                if e & 1 == 1 {
                    acc = slow_mul(acc, base);
                }
                base = slow_mul(base, base);
                e >>= 1;
            }
            acc
        };
        let g = (2..self.q)
            .find(|&g| factors.iter().all(|&(r, _)| slow_pow(g, n / r) != 1))
            .unwrap_or(1);
        let mut exp = vec![0u32; n as usize];
        let mut log = vec![0u32; self.q as usize];
        let mut x = 1u64;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = x as u32;
            log[x as usize] = i as u32;
            x = slow_mul(x, g);
        }
        self.exp = exp;
        self.log = log;
        self.generator = Fq(g as u32);
    }
}

fn digits(mut v: u64, p: u64, h: usize) -> Vec<u64> {
    (0..h)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u64], p: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Trial-division factorization of a machine integer.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

// Dense F_p[t] helpers used only to validate moduli (ascending coefficients).

fn fp_trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn fp_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    let dm = m.len() - 1;
    let inv_lead = mod_pow(m[dm], p - 2, p);
    while r.len() > dm {
        let d = r.len() - 1;
        let c = r[d] * inv_lead % p;
        for (k, &mk) in m.iter().enumerate() {
            let idx = d - dm + k;
            r[idx] = (r[idx] + (p - c) * mk % p) % p;
        }
        fp_trim(&mut r);
    }
    r
}

fn fp_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    fp_rem(&prod, m, p)
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    fp_trim(&mut a);
    fp_trim(&mut b);
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Ben-Or irreducibility test for a monic polynomial over F_p.
pub fn fp_poly_is_irreducible(f: &[u64], p: u64) -> bool {
    let mut f = f.to_vec();
    fp_trim(&mut f);
    let n = match f.len() {
        0 | 1 => return false,
        l => l - 1,
    };
    let mut xp = vec![0, 1];
    for _ in 0..n / 2 {
        // xp <- xp^p mod f
        let mut acc = vec![1u64];
        let mut base = xp.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = fp_mulmod(&acc, &base, &f, p);
            }
            base = fp_mulmod(&base, &base, &f, p);
            e >>= 1;
        }
        xp = acc;
        let mut diff = xp.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        fp_trim(&mut diff);
        if fp_gcd(&f, &diff, p).len() != 1 {
            return false;
        }
    }
    true
}

/// The lexicographically least monic irreducible of degree h over F_p,
/// as an ascending coefficient list.
pub fn first_irreducible(p: u64, h: usize) -> Vec<u64> {
    let total = (p as u128).pow(h as u32);
    for idx in 0..total {
        let mut coeffs = digits(idx as u64, p, h);
        coeffs.push(1);
        if fp_poly_is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}
