use super::poly::Poly;
use crate::error::{Error, Result};
use crate::finite_field::{Field, FieldError, Fq};
use crate::places::Place;

/// Reduced fraction num/den with den monic and gcd(num, den) = 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly, k: &Field) -> Result<Self> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero.into());
        }
        if num.is_zero() {
            return Ok(RatFun::zero());
        }
        let g = num.gcd(&den, k);
        let (mut n, mut d) = (num.quo(&g, k), den.quo(&g, k));
        let lead = d.lead();
        if lead != Fq::ONE {
            let inv = k.inv(lead)?;
            n = n.scale(inv, k);
            d = d.scale(inv, k);
        }
        Ok(RatFun { num: n, den: d })
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFun { num: p, den: Poly::one() }
    }

    pub fn zero() -> Self {
        RatFun::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        RatFun::from_poly(Poly::one())
    }

    pub fn x() -> Self {
        RatFun::from_poly(Poly::x())
    }

    pub fn constant(c: Fq) -> Self {
        RatFun::from_poly(Poly::constant(c))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The value as a constant, if it is one.
    pub fn as_constant(&self) -> Option<Fq> {
        (self.den.is_one() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    pub fn add(&self, o: &RatFun, k: &Field) -> RatFun {
        if self.den == o.den {
            return RatFun::new(self.num.add(&o.num, k), self.den.clone(), k).expect("nonzero den");
        }
        let n = self.num.mul(&o.den, k).add(&o.num.mul(&self.den, k), k);
        RatFun::new(n, self.den.mul(&o.den, k), k).expect("nonzero den")
    }

    pub fn neg(&self, k: &Field) -> RatFun {
        RatFun { num: self.num.neg(k), den: self.den.clone() }
    }

    pub fn sub(&self, o: &RatFun, k: &Field) -> RatFun {
        self.add(&o.neg(k), k)
    }

    pub fn mul(&self, o: &RatFun, k: &Field) -> RatFun {
        if self.is_zero() || o.is_zero() {
            return RatFun::zero();
        }
        let g1 = self.num.gcd(&o.den, k);
        let g2 = o.num.gcd(&self.den, k);
        let n = self.num.quo(&g1, k).mul(&o.num.quo(&g2, k), k);
        let d = self.den.quo(&g2, k).mul(&o.den.quo(&g1, k), k);
        RatFun::new(n, d, k).expect("nonzero den")
    }

    pub fn scale(&self, c: Fq, k: &Field) -> RatFun {
        if c.is_zero() {
            return RatFun::zero();
        }
        RatFun { num: self.num.scale(c, k), den: self.den.clone() }
    }

    pub fn inv(&self, k: &Field) -> Result<RatFun> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero.into());
        }
        RatFun::new(self.den.clone(), self.num.clone(), k)
    }

    pub fn div(&self, o: &RatFun, k: &Field) -> Result<RatFun> {
        Ok(self.mul(&o.inv(k)?, k))
    }

    pub fn pow(&self, e: i64, k: &Field) -> Result<RatFun> {
        let base = if e < 0 { self.inv(k)? } else { self.clone() };
        let m = e.unsigned_abs();
        Ok(RatFun { num: base.num.pow(m, k), den: base.den.pow(m, k) })
    }

    /// Valuation at a place of k(x).
    pub fn valuation(&self, place: &Place, k: &Field) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::ZeroArgument);
        }
        Ok(match place {
            Place::Infinity => self.den.deg() - self.num.deg(),
            Place::Finite(pi) => self.num.multiplicity(pi, k) as i64 - self.den.multiplicity(pi, k) as i64,
        })
    }

    pub fn display(&self, k: &Field) -> String {
        if self.den.is_one() {
            return self.num.display(k);
        }
        let wrap = |s: String, p: &Poly| if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 { format!("({s})") } else { s };
        format!("{}/{}", wrap(self.num.display(k), &self.num), wrap(self.den.display(k), &self.den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations_of_one_over_x() {
        let k = Field::prime(3).unwrap();
        let r = RatFun::x().inv(&k).unwrap();
        assert_eq!(r.valuation(&Place::Finite(Poly::x()), &k).unwrap(), -1);
        assert_eq!(r.valuation(&Place::Infinity, &k).unwrap(), 1);
        assert_eq!(RatFun::zero().valuation(&Place::Infinity, &k), Err(Error::ZeroArgument));
    }

    #[test]
    fn valuation_at_simple_pole() {
        let k = Field::prime(3).unwrap();
        let num = Poly::from_ints(&k, &[-1, 2]);
        let den = Poly::from_ints(&k, &[0, -1, 1]);
        let r = RatFun::new(num, den, &k).unwrap();
        let pl = Place::Finite(Poly::from_ints(&k, &[-1, 1]));
        assert_eq!(r.valuation(&pl, &k).unwrap(), -1);
    }
}
