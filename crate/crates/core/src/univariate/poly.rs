use std::cmp::Ordering;

use crate::finite_field::{Field, FieldError, Fq};

/// Dense polynomial over k, ascending coefficients, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Fq>,
}

/// Canonical order: by degree, then lexicographically on ascending coefficients.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Poly {
    pub fn new(mut coeffs: Vec<Fq>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![Fq::ONE] }
    }

    pub fn x() -> Self {
        Poly { coeffs: vec![Fq::ZERO, Fq::ONE] }
    }

    pub fn constant(c: Fq) -> Self {
        Poly::new(vec![c])
    }

    pub fn monomial(c: Fq, d: usize) -> Self {
        let mut v = vec![Fq::ZERO; d + 1];
        v[d] = c;
        Poly::new(v)
    }

    /// Polynomial with prime-field coefficients given as integers (ascending).
    pub fn from_ints(k: &Field, ints: &[i64]) -> Self {
        Poly::new(ints.iter().map(|&n| k.from_int(n)).collect())
    }

    /// The monic linear polynomial x - a.
    pub fn linear(k: &Field, a: Fq) -> Self {
        Poly::new(vec![k.neg(a), Fq::ONE])
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fq {
        self.coeffs.get(i).copied().unwrap_or(Fq::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Fq::ONE
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to -1.
    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn lead(&self) -> Fq {
        self.coeffs.last().copied().unwrap_or(Fq::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == Fq::ONE
    }

    pub fn add(&self, o: &Poly, k: &Field) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| k.add(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &Poly, k: &Field) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| k.sub(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn neg(&self, k: &Field) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| k.neg(c)).collect())
    }

    pub fn scale(&self, c: Fq, k: &Field) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| k.mul(a, c)).collect())
    }

    pub fn mul(&self, o: &Poly, k: &Field) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Fq::ZERO; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = k.add(out[i + j], k.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn shift(&self, d: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Fq::ZERO; d];
        v.extend_from_slice(&self.coeffs);
        Poly { coeffs: v }
    }

    pub fn pow(&self, e: u64, k: &Field) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, k);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, k);
            }
        }
        acc
    }

    pub fn divmod(&self, d: &Poly, k: &Field) -> Result<(Poly, Poly), FieldError> {
        if d.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let inv_lead = k.inv(d.lead())?;
        let mut r = self.coeffs.clone();
        let mut quot = vec![Fq::ZERO; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = k.mul(r[i], inv_lead);
            if c.is_zero() {
                continue;
            }
            quot[i - dd] = c;
            for (j, &dj) in d.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                r[idx] = k.sub(r[idx], k.mul(c, dj));
            }
        }
        r.truncate(dd);
        Ok((Poly::new(quot), Poly::new(r)))
    }

    /// Remainder; panics on a zero divisor (callers guarantee nonzero).
    pub fn rem(&self, d: &Poly, k: &Field) -> Poly {
        self.divmod(d, k).expect("nonzero divisor").1
    }

    /// Exact quotient; panics on a zero divisor.
    pub fn quo(&self, d: &Poly, k: &Field) -> Poly {
        self.divmod(d, k).expect("nonzero divisor").0
    }

    pub fn monic(&self, k: &Field) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = k.inv(self.lead()).expect("nonzero lead");
        self.scale(inv, k)
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, o: &Poly, k: &Field) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b, k);
            a = b;
            b = r;
        }
        a.monic(k)
    }

    /// Returns (g, s, t) with s·self + t·o = g, g monic.
    pub fn ext_gcd(&self, o: &Poly, k: &Field) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1, k).expect("nonzero");
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1, k), k);
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1, k), k);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = k.inv(r0.lead()).expect("nonzero lead");
        (r0.scale(inv, k), s0.scale(inv, k), t0.scale(inv, k))
    }

    /// Inverse of `self` modulo `m`, if it exists.
    pub fn inv_mod(&self, m: &Poly, k: &Field) -> Option<Poly> {
        let (g, s, _) = self.rem(m, k).ext_gcd(m, k);
        g.is_one().then(|| s.rem(m, k))
    }

    pub fn mulmod(&self, o: &Poly, m: &Poly, k: &Field) -> Poly {
        self.mul(o, k).rem(m, k)
    }

    pub fn powmod(&self, e: u64, m: &Poly, k: &Field) -> Poly {
        let mut acc = Poly::one().rem(m, k);
        let mut base = self.rem(m, k);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, m, k);
            }
            e >>= 1;
            if e > 0 {
                base = base.mulmod(&base, m, k);
            }
        }
        acc
    }

    /// self^(q^j) mod m, by j-fold Frobenius.
    pub fn frobenius_mod(&self, j: u32, m: &Poly, k: &Field) -> Poly {
        let mut r = self.rem(m, k);
        for _ in 0..j {
            r = r.powmod(k.q(), m, k);
        }
        r
    }

    pub fn eval(&self, a: Fq, k: &Field) -> Fq {
        self.coeffs.iter().rev().fold(Fq::ZERO, |acc, &c| k.add(k.mul(acc, a), c))
    }

    pub fn derivative(&self, k: &Field) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| k.mul(c, k.from_int(i as i64)))
                .collect(),
        )
    }

    /// Multiplicity of the (nonconstant) factor `pi` in `self` (nonzero).
    pub fn multiplicity(&self, pi: &Poly, k: &Field) -> u32 {
        let mut m = 0;
        let mut f = self.clone();
        loop {
            let (q, r) = f.divmod(pi, k).expect("nonzero");
            if !r.is_zero() {
                return m;
            }
            f = q;
            m += 1;
        }
    }

    /// Human-readable rendering in the variable `x`.
    pub fn display(&self, k: &Field) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = display_fq(c, k);
            let mono = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            parts.push(match (cs.as_str(), i) {
                (_, 0) => cs,
                ("1", _) => mono,
                _ => format!("{cs}*{mono}"),
            });
        }
        parts.join(" + ")
    }
}

/// Field element as an integer (h = 1) or as a polynomial in the field generator `t`.
pub fn display_fq(c: Fq, k: &Field) -> String {
    if k.h() == 1 {
        return c.index().to_string();
    }
    let co = k.coeffs(c);
    let mut parts = Vec::new();
    for (i, &d) in co.iter().enumerate() {
        if d == 0 {
            continue;
        }
        parts.push(match (i, d) {
            (0, _) => d.to_string(),
            (1, 1) => "t".into(),
            (1, _) => format!("{d}t"),
            (_, 1) => format!("t^{i}"),
            _ => format!("{d}t^{i}"),
        });
    }
    match parts.len() {
        0 => "0".into(),
        1 => parts.pop().unwrap(),
        _ => format!("({})", parts.join("+")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_and_divmod_over_f3() {
        let k = Field::prime(3).unwrap();
        let a = Poly::from_ints(&k, &[-1, 0, 1]);
        let b = Poly::from_ints(&k, &[-1, 1]);
        assert_eq!(a.gcd(&b, &k), b);
        let f = Poly::from_ints(&k, &[0, 1, 0, 1]);
        let (q, r) = f.divmod(&Poly::x(), &k).unwrap();
        assert_eq!(q, Poly::from_ints(&k, &[1, 0, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn product_over_f5() {
        let k = Field::prime(5).unwrap();
        let p = Poly::from_ints(&k, &[-1, 1]).mul(&Poly::from_ints(&k, &[-2, 1]), &k);
        assert_eq!(p, Poly::from_ints(&k, &[2, 2, 1]));
    }

    #[test]
    fn divide_by_zero() {
        let k = Field::prime(5).unwrap();
        assert_eq!(Poly::x().divmod(&Poly::zero(), &k), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn ext_gcd_identity() {
        let k = Field::prime(7).unwrap();
        let a = Poly::from_ints(&k, &[1, 2, 3, 1]);
        let b = Poly::from_ints(&k, &[5, 0, 1]);
        let (g, s, t) = a.ext_gcd(&b, &k);
        assert_eq!(s.mul(&a, &k).add(&t.mul(&b, &k), &k), g);
    }
}
