//! Places of K = k(x), residue fields F_q[x]/(π), and residues.

use crate::error::{Error, Result};
use crate::finite_field::{Field, Fq};
use crate::linalg::{self, Matrix};
use crate::univariate::{is_irreducible, Poly, RatFun};

/// A place of k(x). Finite places come first in the canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Finite(Poly),
    Infinity,
}

impl Place {
    /// Checked constructor: `pi` must be monic and irreducible.
    pub fn finite(pi: Poly, k: &Field) -> Result<Place> {
        if !pi.is_monic() || !is_irreducible(&pi, k) {
            return Err(Error::InvalidPlace(format!("{} is not monic irreducible", pi.display(k))));
        }
        Ok(Place::Finite(pi))
    }

    /// The place x = a.
    pub fn linear(k: &Field, a: Fq) -> Place {
        Place::Finite(Poly::linear(k, a))
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.degree().unwrap_or(0),
            Place::Infinity => 1,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Place::Infinity)
    }

    pub fn poly(&self) -> Option<&Poly> {
        match self {
            Place::Finite(p) => Some(p),
            Place::Infinity => None,
        }
    }

    pub fn display(&self, k: &Field) -> String {
        match self {
            Place::Finite(p) => format!("({})", p.display(k)),
            Place::Infinity => "inf".into(),
        }
    }
}

/// F_q[x]/(π) for a finite place; elements are reduced polynomials.
#[derive(Debug, Clone)]
pub struct ResidueField<'a> {
    k: &'a Field,
    modulus: Poly,
    degree: usize,
}

/// Outcome of [`artin_schreier_image_test`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AsImage {
    InImage(Poly),
    NotInImage,
}

impl<'a> ResidueField<'a> {
    pub fn new(place: &Place, k: &'a Field) -> Result<Self> {
        match place {
            Place::Infinity => Err(Error::InfinitePlaceUnsupported),
            Place::Finite(pi) => Ok(ResidueField { k, modulus: pi.clone(), degree: place.degree() }),
        }
    }

    pub fn base(&self) -> &Field {
        self.k
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// q^d, or `None` if it does not fit in 128 bits.
    pub fn order(&self) -> Option<u128> {
        (self.k.q() as u128).checked_pow(self.degree as u32)
    }

    pub fn reduce(&self, a: &Poly) -> Poly {
        a.rem(&self.modulus, self.k)
    }

    pub fn from_base(&self, c: Fq) -> Poly {
        Poly::constant(c)
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(b, self.k)
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        a.sub(b, self.k)
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mulmod(b, &self.modulus, self.k)
    }

    pub fn inv(&self, a: &Poly) -> Option<Poly> {
        a.inv_mod(&self.modulus, self.k)
    }

    pub fn pow(&self, a: &Poly, e: u128) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.reduce(a);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn pth_power(&self, a: &Poly) -> Poly {
        self.pow(a, self.k.p() as u128)
    }

    /// The unique p-th root, a^(Q/p) with Q = q^d.
    pub fn pth_root(&self, a: &Poly) -> Poly {
        let mut r = self.reduce(a);
        for _ in 1..self.k.h() * self.degree {
            r = self.pth_power(&r);
        }
        r
    }

    /// Dimension over F_p.
    pub fn prime_dim(&self) -> usize {
        self.k.h() * self.degree
    }

    /// Coordinates over F_p in the basis t^l x^j (j-major).
    pub fn prime_coords(&self, a: &Poly, fp: &Field) -> Vec<Fq> {
        let a = self.reduce(a);
        let mut out = Vec::with_capacity(self.prime_dim());
        for j in 0..self.degree {
            for d in self.k.coeffs(a.coeff(j)) {
                out.push(fp.from_int(d as i64));
            }
        }
        out
    }

    fn prime_basis(&self) -> Vec<Poly> {
        let h = self.k.h();
        let mut out = Vec::with_capacity(self.prime_dim());
        for j in 0..self.degree {
            for l in 0..h {
                let mut unit = vec![0u64; h];
                unit[l] = 1;
                let c = self.k.from_coeffs(&unit).expect("unit vector");
                out.push(Poly::monomial(c, j));
            }
        }
        out
    }

    fn poly_from_prime_coords(&self, v: &[Fq]) -> Poly {
        self.prime_basis()
            .iter()
            .zip(v)
            .fold(Poly::zero(), |acc, (b, c)| acc.add(&b.scale(self.k.from_int(c.index() as i64), self.k), self.k))
    }

    /// Decides whether w^p - w = a is solvable, by F_p-linear algebra.
    pub fn artin_schreier_solve(&self, a: &Poly) -> AsImage {
        let fp = Field::prime(self.k.p()).expect("prime field");
        let basis = self.prime_basis();
        let cols: Vec<Vec<Fq>> = basis
            .iter()
            .map(|b| self.prime_coords(&self.sub(&self.pth_power(b), b), &fp))
            .collect();
        let n = basis.len();
        let m: Matrix = (0..n).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        match linalg::solve(&m, &self.prime_coords(a, &fp), &fp) {
            Some(x) => AsImage::InImage(self.poly_from_prime_coords(&x)),
            None => AsImage::NotInImage,
        }
    }

    /// Order of the class of a nonzero `a` in F_Q^* / (F_Q^*)^n (n | q - 1).
    pub fn kummer_class_order(&self, a: &Poly, n: u64) -> Option<u64> {
        let qq = self.order()?;
        let z = self.pow(a, (qq - 1) / n as u128);
        let mut acc = z.clone();
        for f in 1..=n {
            if acc.is_one() {
                return Some(f);
            }
            acc = self.mul(&acc, &z);
        }
        None
    }

    /// All elements in canonical polynomial order, if the field is small enough.
    pub fn elements(&self, limit: u128) -> Option<Vec<Poly>> {
        let qq = self.order()?;
        if qq > limit {
            return None;
        }
        let q = self.k.q() as u128;
        let mut out: Vec<Poly> = (0..qq)
            .map(|mut idx| {
                let mut c = Vec::with_capacity(self.degree);
                for _ in 0..self.degree {
                    c.push(self.k.element((idx % q) as u64));
                    idx /= q;
                }
                Poly::new(c)
            })
            .collect();
        out.sort();
        Some(out)
    }

    /// Least root of T^n = a in canonical order, by exhaustion.
    pub fn least_nth_root(&self, a: &Poly, n: u64, limit: u128) -> Option<Poly> {
        let a = self.reduce(a);
        self.elements(limit)?.into_iter().find(|w| self.pow(w, n as u128) == a)
    }

    /// Least root of T^p - T = a in canonical order.
    pub fn least_as_root(&self, a: &Poly) -> Option<Poly> {
        match self.artin_schreier_solve(a) {
            AsImage::NotInImage => None,
            AsImage::InImage(w) => (0..self.k.p() as i64)
                .map(|j| self.add(&w, &Poly::constant(self.k.from_int(j))))
                .min(),
        }
    }
}

/// Image of r in the residue field of a finite place.
pub fn residue(r: &RatFun, place: &Place, k: &Field) -> Result<Poly> {
    let rf = ResidueField::new(place, k)?;
    if r.is_zero() {
        return Ok(Poly::zero());
    }
    if r.valuation(place, k)? < 0 {
        return Err(Error::NegativeValuation);
    }
    let pi = rf.modulus();
    let mut num = r.num().clone();
    let mut den = r.den().clone();
    // strip common powers of π so that den is a unit mod π
    let m = den.multiplicity(pi, k);
    for _ in 0..m {
        num = num.quo(pi, k);
        den = den.quo(pi, k);
    }
    let inv = rf.inv(&den).expect("unit denominator");
    Ok(rf.mul(&num, &inv))
}

/// Whether a residue-field element lies in the image of w ↦ w^p − w, with a witness.
pub fn artin_schreier_image_test(a: &Poly, rf: &ResidueField<'_>) -> AsImage {
    rf.artin_schreier_solve(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::FieldSpec;

    #[test]
    fn residues_over_f3() {
        let k = Field::prime(3).unwrap();
        let px = Place::Finite(Poly::x());
        let xp1 = Poly::from_ints(&k, &[1, 1]);
        assert_eq!(residue(&RatFun::from_poly(xp1.clone()), &px, &k).unwrap(), Poly::one());
        let inv = RatFun::from_poly(xp1).inv(&k).unwrap();
        assert_eq!(residue(&inv, &px, &k).unwrap(), Poly::one());
        let quad = Place::finite(Poly::from_ints(&k, &[1, 0, 1]), &k).unwrap();
        assert_eq!(residue(&RatFun::x(), &quad, &k).unwrap(), Poly::x());
        assert_eq!(residue(&RatFun::x().inv(&k).unwrap(), &px, &k), Err(Error::NegativeValuation));
        assert_eq!(residue(&RatFun::x(), &Place::Infinity, &k), Err(Error::InfinitePlaceUnsupported));
    }

    #[test]
    fn as_image_small_fields() {
        let k3 = Field::prime(3).unwrap();
        let rf3 = ResidueField::new(&Place::Finite(Poly::x()), &k3).unwrap();
        assert_eq!(artin_schreier_image_test(&Poly::zero(), &rf3), AsImage::InImage(Poly::zero()));
        assert_eq!(artin_schreier_image_test(&Poly::one(), &rf3), AsImage::NotInImage);

        let k9 = Field::new(FieldSpec::extension(3, vec![1, 0, 1])).unwrap();
        let rf9 = ResidueField::new(&Place::Finite(Poly::x()), &k9).unwrap();
        let t = Poly::constant(k9.from_coeffs(&[0, 1]).unwrap());
        match artin_schreier_image_test(&t, &rf9) {
            AsImage::InImage(w) => assert_eq!(rf9.sub(&rf9.pth_power(&w), &w), t),
            AsImage::NotInImage => panic!("t has trace zero in F_9"),
        }
        assert_eq!(artin_schreier_image_test(&Poly::one(), &rf9), AsImage::NotInImage);
    }

    #[test]
    fn as_image_has_q_over_p_elements() {
        let k = Field::prime(3).unwrap();
        let quad = Place::finite(Poly::from_ints(&k, &[1, 0, 1]), &k).unwrap();
        let rf = ResidueField::new(&quad, &k).unwrap();
        let all = rf.elements(1000).unwrap();
        let image: std::collections::BTreeSet<_> =
            all.iter().map(|w| rf.sub(&rf.pth_power(w), w)).collect();
        assert_eq!(image.len(), 3);
        for a in &all {
            let found = matches!(artin_schreier_image_test(a, &rf), AsImage::InImage(_));
            assert_eq!(found, image.contains(a));
        }
    }
}
