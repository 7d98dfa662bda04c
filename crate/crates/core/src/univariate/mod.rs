//! Polynomials and rational functions over k, factorization, and exact weak
//! approximation over k(x).

mod factor;
mod poly;
mod ratfun;

pub use factor::{factorize, irreducible_factors, is_irreducible, set_factor_seed, Factorization};
pub use poly::{display_fq, Poly};
pub use ratfun::RatFun;

use crate::error::{Error, Result};
use crate::finite_field::{Field, Fq};
use crate::places::Place;

/// Monic polynomials of degree `d` in canonical order.
pub fn monic_polys(d: usize, k: &Field) -> impl Iterator<Item = Poly> + '_ {
    let total = (k.q() as u128).pow(d as u32);
    (0..total).map(move |mut idx| {
        let mut coeffs = Vec::with_capacity(d + 1);
        for _ in 0..d {
            coeffs.push(k.element((idx % k.q() as u128) as u64));
            idx /= k.q() as u128;
        }
        coeffs.push(Fq::ONE);
        Poly::new(coeffs)
    })
}

/// Monic irreducibles of degree `d` in canonical order.
pub fn monic_irreducibles(d: usize, k: &Field) -> impl Iterator<Item = Poly> + '_ {
    monic_polys(d, k).filter(move |p| d == 1 || is_irreducible(p, k))
}

/// A rational function with exactly the prescribed valuations at the given
/// places and nonnegative valuation at every other finite place.
///
/// Finite constraints are met by the product of prime powers; an infinite
/// constraint is met by an extra power of an unconstrained low-degree prime.
/// Fails only when the product formula forbids the request.
pub fn weak_approximant(constraints: &[(Place, i64)], k: &Field) -> Result<RatFun> {
    let mut seen = std::collections::BTreeSet::new();
    for (pl, _) in constraints {
        if !seen.insert(pl.clone()) {
            return Err(Error::InvalidPlace(format!("duplicate constraint at {}", pl.display(k))));
        }
    }
    let mut r = RatFun::one();
    let mut v_inf = 0i64;
    let mut inf_target = None;
    for (pl, t) in constraints {
        match pl {
            Place::Infinity => inf_target = Some(*t),
            Place::Finite(pi) => {
                r = r.mul(&RatFun::from_poly(pi.clone()).pow(*t, k)?, k);
                v_inf -= pi.deg() * t;
            }
        }
    }
    let Some(target) = inf_target else {
        return Ok(r);
    };
    let diff = v_inf - target;
    if diff < 0 {
        return Err(Error::InfeasibleApproximation(format!(
            "valuation {target} at infinity exceeds {v_inf}, the most the finite constraints allow"
        )));
    }
    if diff == 0 {
        return Ok(r);
    }
    let free = |p: &Poly| !seen.contains(&Place::Finite(p.clone()));
    if let Some(lin) = monic_irreducibles(1, k).find(free) {
        return Ok(r.mul(&RatFun::from_poly(lin.pow(diff as u64, k)), k));
    }
    let quad = monic_irreducibles(2, k).find(free);
    let cubic = monic_irreducibles(3, k).find(free);
    if let (Some(a), Some(b)) = (quad, cubic) {
        if diff >= 2 {
            let (na, nb) = if diff % 2 == 0 { (diff / 2, 0) } else { ((diff - 3) / 2, 1) };
            let extra = a.pow(na as u64, k).mul(&b.pow(nb as u64, k), k);
            return Ok(r.mul(&RatFun::from_poly(extra), k));
        }
    }
    Err(Error::InfeasibleApproximation(format!("no unconstrained place realizes degree {diff}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(constraints: &[(Place, i64)], k: &Field) -> RatFun {
        let r = weak_approximant(constraints, k).unwrap();
        for (pl, t) in constraints {
            assert_eq!(r.valuation(pl, k).unwrap(), *t);
        }
        for f in irreducible_factors(r.den(), k) {
            assert!(constraints.iter().any(|(pl, _)| *pl == Place::Finite(f.clone())));
        }
        r
    }

    #[test]
    fn monomial_approximant() {
        let k = Field::prime(3).unwrap();
        let r = check(&[(Place::Finite(Poly::x()), -2)], &k);
        assert_eq!(r, RatFun::x().pow(-2, &k).unwrap());
    }

    #[test]
    fn two_zeros() {
        let k = Field::prime(3).unwrap();
        let x1 = Poly::from_ints(&k, &[-1, 1]);
        let r = check(&[(Place::Finite(Poly::x()), 1), (Place::Finite(x1.clone()), 1)], &k);
        assert_eq!(r, RatFun::from_poly(Poly::x().mul(&x1, &k)));
    }

    #[test]
    fn pole_and_unit() {
        let k = Field::prime(3).unwrap();
        let x1 = Poly::from_ints(&k, &[-1, 1]);
        check(&[(Place::Finite(Poly::x()), -1), (Place::Finite(x1), 0)], &k);
    }

    #[test]
    fn infinity_constraint() {
        let k = Field::prime(3).unwrap();
        let r = check(&[(Place::Finite(Poly::x()), -1), (Place::Infinity, -2)], &k);
        assert_eq!(r.valuation(&Place::Infinity, &k).unwrap(), -2);
        assert!(weak_approximant(&[(Place::Finite(Poly::x()), 1), (Place::Infinity, 0)], &k).is_err());
    }
}
