//! Boseck invariants Δ, λ, ρ, t^μ and the basis of holomorphic differentials
//! x^ν g_μ(x)^{-1} y^μ dx of a tower in standard form.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::finite_field::Field;
use crate::places::Place;
use crate::tower::{analyze, RamificationProfile, StepKind, TowerAnalysis, TowerDescriptor};
use crate::tower_algebra::{AlgebraElement, LevelKind};
use crate::univariate::{factorize, Factorization, Poly, RatFun};

/// A differential x^ν g_μ(x)^{-1} y^μ dx with g_μ kept factored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisElement {
    pub mu: Vec<u32>,
    pub nu: u64,
    /// g_μ = Π π_P^{λ_P}, finite places in canonical order, λ > 0
    pub g: Vec<(Place, i64)>,
}

impl BasisElement {
    /// x^ν / g_μ(x).
    pub fn coefficient(&self, k: &Field) -> RatFun {
        let mut den = Poly::one();
        for (pl, lam) in &self.g {
            den = den.mul(&pl.poly().expect("finite place").pow(*lam as u64, k), k);
        }
        RatFun::new(Poly::monomial(k.one(), self.nu as usize), den, k).expect("nonzero denominator")
    }

    pub fn g_factorization(&self, k: &Field) -> Factorization {
        Factorization {
            unit: k.one(),
            factors: self.g.iter().map(|(pl, lam)| (pl.poly().expect("finite place").clone(), *lam as u32)).collect(),
        }
    }

    /// The element x^ν g_μ^{-1} y^μ of L (the factor in front of dx).
    pub fn to_element(&self, d: &TowerDescriptor) -> AlgebraElement {
        AlgebraElement::monomial(self.mu.clone(), self.coefficient(d.field()))
    }

    /// Human-readable form such as `x^2*y1*y2^2/((x)*(x + 1)^2) dx`.
    pub fn pretty(&self, k: &Field) -> String {
        let mut num: Vec<String> = Vec::new();
        match self.nu {
            0 => {}
            1 => num.push("x".into()),
            n => num.push(format!("x^{n}")),
        }
        for (i, &m) in self.mu.iter().enumerate() {
            match m {
                0 => {}
                1 => num.push(format!("y{}", i + 1)),
                m => num.push(format!("y{}^{m}", i + 1)),
            }
        }
        let num = if num.is_empty() { "1".to_string() } else { num.join("*") };
        if self.g.is_empty() {
            return format!("{num} dx");
        }
        let den: Vec<String> = self
            .g
            .iter()
            .map(|(pl, lam)| if *lam == 1 { pl.display(k) } else { format!("{}^{lam}", pl.display(k)) })
            .collect();
        format!("{num}/({}) dx", den.join("*"))
    }
}

/// Index set Γ = Π{0..n_i−1} minus μ⁰.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaIndex {
    pub bounds: Vec<u64>,
    pub excluded: Vec<u32>,
}

impl GammaIndex {
    pub fn new(d: &TowerDescriptor) -> Self {
        let p = d.field().p() as u32;
        let excluded = d
            .steps()
            .iter()
            .map(|s| match s.kind {
                StepKind::Kummer { .. } => 0,
                StepKind::ArtinSchreier => p - 1,
            })
            .collect();
        GammaIndex { bounds: d.bounds(), excluded }
    }

    pub fn len(&self) -> usize {
        self.bounds.iter().product::<u64>() as usize - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, mu: &[u32]) -> bool {
        mu.len() == self.bounds.len() && mu.iter().zip(&self.bounds).all(|(&m, &b)| (m as u64) < b) && mu != self.excluded
    }

    /// Every vector of the full box in lexicographic order (μ⁰ included).
    pub fn full_box(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new()];
        for &b in &self.bounds {
            out = out
                .into_iter()
                .flat_map(|pre: Vec<u32>| {
                    (0..b as u32).map(move |m| {
                        let mut v = pre.clone();
                        v.push(m);
                        v
                    })
                })
                .collect();
        }
        out
    }

    /// Elements of Γ in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        self.full_box().into_iter().filter(move |m| *m != self.excluded)
    }
}

/// Δ_{p_i}^{μ_i} at the profile's place.
pub fn delta(prof: &RamificationProfile, i: usize, mu_i: u32, p: u64) -> i64 {
    let l = prof.level(i);
    let mu = mu_i as i64;
    let p = p as i64;
    match l.kind {
        LevelKind::Wild => (p - 1 - mu) * (-l.v) + (p - 1),
        LevelKind::Tame => mu * l.v + (l.e_step as i64 - 1),
        LevelKind::Unramified => 0,
    }
}

/// (λ, ρ) with e_P λ + ρ = Σ_i e(P|p_i) Δ_i and 0 ≤ ρ < e_P.
pub fn lambda_rho(prof: &RamificationProfile, mu: &[u32], p: u64) -> (i64, i64) {
    let s: i64 = (1..=prof.levels.len()).map(|i| prof.level(i).e_above as i64 * delta(prof, i, mu[i - 1], p)).sum();
    let e = prof.e as i64;
    (s.div_euclid(e), s.rem_euclid(e))
}

/// Invariants of one ramified place for a fixed μ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaceInvariants {
    pub place: Place,
    pub deltas: Vec<i64>,
    pub lambda: i64,
    pub rho: i64,
}

/// All invariants for one μ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoseckInvariants {
    pub mu: Vec<u32>,
    pub places: Vec<PlaceInvariants>,
    pub t: i64,
}

/// t^μ = Σ_P d_P (λ_P − Σ_{i tame} (e(P|p_i)/e_P) v_{P,i} μ_i), asserted integral.
pub fn t_mu(a: &TowerAnalysis, mu: &[u32], p: u64) -> Result<i64> {
    let mut t = Ratio::from_integer(0i64);
    for prof in &a.profiles {
        let (lam, _) = lambda_rho(prof, mu, p);
        let mut inner = Ratio::from_integer(lam);
        for i in prof.tame_levels() {
            let l = prof.level(i);
            inner -= Ratio::new(l.e_above as i64 * l.v * mu[i - 1] as i64, prof.e as i64);
        }
        t += inner * prof.degree as i64;
    }
    if !t.is_integer() {
        return Err(Error::NonIntegralInvariant(format!("t^{mu:?} = {t}")));
    }
    Ok(t.to_integer())
}

pub fn invariants(a: &TowerAnalysis, mu: &[u32], p: u64) -> Result<BoseckInvariants> {
    let places = a
        .profiles
        .iter()
        .map(|prof| {
            let (lambda, rho) = lambda_rho(prof, mu, p);
            PlaceInvariants {
                place: prof.place.clone(),
                deltas: (1..=prof.levels.len()).map(|i| delta(prof, i, mu[i - 1], p)).collect(),
                lambda,
                rho,
            }
        })
        .collect();
    Ok(BoseckInvariants { mu: mu.to_vec(), places, t: t_mu(a, mu, p)? })
}

pub fn enumerate_basis(d: &TowerDescriptor) -> Result<Vec<BasisElement>> {
    enumerate_basis_with(d, &analyze(d)?)
}

/// Basis from a precomputed analysis, ordered by μ (lex) then ν.
pub fn enumerate_basis_with(d: &TowerDescriptor, a: &TowerAnalysis) -> Result<Vec<BasisElement>> {
    let p = d.field().p();
    let gamma = GammaIndex::new(d);
    let mut out = Vec::new();
    for mu in gamma.iter() {
        let inv = invariants(a, &mu, p)?;
        if inv.t < 0 {
            return Err(Error::NonIntegralInvariant(format!("t^{mu:?} = {} is negative", inv.t)));
        }
        let g = g_of(&inv);
        for nu in 0..(inv.t - 1).max(0) as u64 {
            out.push(BasisElement { mu: mu.clone(), nu, g: g.clone() });
        }
    }
    Ok(out)
}

/// For every μ with t^μ ≥ 1, the first excluded differential ν = t^μ − 1.
/// None of these is holomorphic; each has a pole above ∞.
pub fn boundary_candidates(d: &TowerDescriptor, a: &TowerAnalysis) -> Result<Vec<BasisElement>> {
    let p = d.field().p();
    let mut out = Vec::new();
    for mu in GammaIndex::new(d).iter() {
        let inv = invariants(a, &mu, p)?;
        if inv.t >= 1 {
            out.push(BasisElement { mu, nu: (inv.t - 1) as u64, g: g_of(&inv) });
        }
    }
    Ok(out)
}

fn g_of(inv: &BoseckInvariants) -> Vec<(Place, i64)> {
    let mut g: Vec<(Place, i64)> = inv
        .places
        .iter()
        .filter(|pi| pi.lambda > 0 && !pi.place.is_infinite())
        .map(|pi| (pi.place.clone(), pi.lambda))
        .collect();
    g.sort();
    g
}

/// Basis of y^p − y = f for a single step in standard form over K.
pub fn enumerate_basis_single_as(f: &RatFun, k: &Field) -> Result<Vec<BasisElement>> {
    let p = k.p() as i64;
    if f.valuation(&Place::Infinity, k)? < 0 {
        return Err(Error::StandardFormFailure("infinity must be unramified: v_inf(f) >= 0".into()));
    }
    let mut poles = Vec::new();
    for (pi, m) in factorize(f.den(), k).factors {
        if m as i64 % p == 0 {
            return Err(Error::StandardFormFailure(format!("pole order {m} at ({}) divisible by p", pi.display(k))));
        }
        poles.push((Place::Finite(pi), m as i64));
    }
    if poles.is_empty() {
        return Err(Error::StandardFormFailure("no ramified place".into()));
    }
    let mut out = Vec::new();
    for mu in 0..=(p - 2) {
        let mut t = 0i64;
        let mut g = Vec::new();
        for (pl, v) in &poles {
            let lam = ((p - 1 - mu) * v + p - 1).div_euclid(p);
            t += pl.degree() as i64 * lam;
            if lam > 0 {
                g.push((pl.clone(), lam));
            }
        }
        g.sort();
        for nu in 0..(t - 1).max(0) as u64 {
            out.push(BasisElement { mu: vec![mu as u32], nu, g: g.clone() });
        }
    }
    Ok(out)
}

/// Basis of y^n = f for a polynomial f with n | deg f.
pub fn enumerate_basis_single_kummer(f: &Poly, n: u64, k: &Field) -> Result<Vec<BasisElement>> {
    if f.is_zero() || f.deg() % n as i64 != 0 {
        return Err(Error::StandardFormFailure(format!("n = {n} must divide deg f = {}", f.deg())));
    }
    let fact = factorize(f, k);
    let n = n as i64;
    let g_all = fact.factors.iter().fold(n, |g, (_, v)| num_integer::gcd(g, *v as i64));
    if g_all > 1 {
        return Err(Error::NotPrimitive(format!("{g_all} divides n and every exponent")));
    }
    let mut out = Vec::new();
    for mu in 1..n {
        let mut t = Ratio::from_integer(0i64);
        let mut g = Vec::new();
        for (pi, v) in &fact.factors {
            let v = *v as i64;
            let e = n / num_integer::gcd(n, v);
            let m = e * v / n;
            let s = mu * m + e - 1;
            let (lam, rho) = (s.div_euclid(e), s.rem_euclid(e));
            t += Ratio::new(pi.deg() * (e - 1 - rho), e);
            if lam > 0 {
                g.push((Place::Finite(pi.clone()), lam));
            }
        }
        if !t.is_integer() {
            return Err(Error::NonIntegralInvariant(format!("t^{mu} = {t}")));
        }
        g.sort();
        for nu in 0..(t.to_integer() - 1).max(0) as u64 {
            out.push(BasisElement { mu: vec![mu as u32], nu, g: g.clone() });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::tower::genus;

    #[test]
    fn mixed_tower_t_table() {
        let d = fixtures::mixed_tower_e();
        let a = analyze(&d).unwrap();
        assert_eq!(t_mu(&a, &[1, 0], 3).unwrap(), 2);
        assert_eq!(t_mu(&a, &[0, 0], 3).unwrap(), 1);
        let k = d.field();
        let p = a.profile(&Place::Finite(Poly::from_ints(k, &[-2, 1]))).unwrap();
        assert_eq!(lambda_rho(p, &[1, 1], 3), (1, 0));
        let basis = enumerate_basis(&d).unwrap();
        let mus: Vec<_> = basis.iter().map(|b| b.mu.clone()).collect();
        assert_eq!(mus, vec![vec![1, 0], vec![1, 1]]);
        assert_eq!(basis[0].pretty(k), "y1/((x)*(x + 1)*(x + 2)) dx");
    }

    #[test]
    fn hermitian_delta() {
        let d = fixtures::hermitian_chart();
        let a = analyze(&d).unwrap();
        let prof = &a.profiles[0];
        assert_eq!(delta(prof, 1, 0, 3), 10);
        assert_eq!(lambda_rho(prof, &[0], 3), (3, 1));
        assert_eq!(enumerate_basis(&d).unwrap().len() as u64, genus(&d).unwrap());
    }

    #[test]
    fn elliptic_single_kummer() {
        let d = fixtures::elliptic_f5();
        let k = d.field();
        let f = d.step(1).c.as_ratfun().unwrap().num().clone();
        let single = enumerate_basis_single_kummer(&f, 2, k).unwrap();
        assert_eq!(single, enumerate_basis(&d).unwrap());
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].g.len(), 4);
    }

    #[test]
    fn as_single_matches_general() {
        let d = fixtures::as_genus_two();
        let k = d.field();
        let f = d.step(1).c.as_ratfun().unwrap();
        let single = enumerate_basis_single_as(&f, k).unwrap();
        assert_eq!(single, enumerate_basis(&d).unwrap());
        assert_eq!(single.len(), 2);
        assert_eq!(single[0].mu, vec![0]);
        assert_eq!(single[1].mu, vec![1]);
    }

    #[test]
    fn partial_ramification_count() {
        let k = Field::prime(5).unwrap();
        let lin = |a: i64| Poly::from_ints(&k, &[-a, 1]);
        let f = lin(0).mul(&lin(1).pow(2, &k), &k).mul(&lin(2).pow(5, &k), &k);
        let b = enumerate_basis_single_kummer(&f, 4, &k).unwrap();
        // e = 4, 2, 4; Riemann–Hurwitz: 2g − 2 = 4·(−2) + (4−1) + 2·(2−1) + (4−1) = 0
        assert_eq!(b.len(), 1);
    }
}
