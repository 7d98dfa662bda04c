//! Normalization of generators over K = k(x): Artin–Schreier weak standard
//! form, the zero-valuation refinement, Kummer standard form, and the
//! conversions from composita to towers.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::finite_field::{Field, Fq};
use crate::places::{residue, AsImage, Place, ResidueField};
use crate::tower::{track_place, validate, StepKind, StepSpec, TowerDescriptor};
use crate::tower_algebra::{valuation, AlgebraElement};
use crate::univariate::{factorize, irreducible_factors, monic_irreducibles, weak_approximant, Poly, RatFun};

/// One generator replacement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Replacement {
    /// y = ỹ + w, so r̃ = r − (w^p − w)
    Shift(RatFun),
    /// ỹ = α·y, so c̃ = α^n·c
    Scale(RatFun),
}

/// A replacement together with the valuations it changed, (place, before, after).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainRecord {
    pub replacement: Replacement,
    pub improvements: Vec<(Place, i64, i64)>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SubstitutionChain {
    pub records: Vec<ChainRecord>,
}

impl SubstitutionChain {
    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    /// Replays the chain on y^p − y = r (shifts only).
    pub fn replay_as(&self, r: &RatFun, k: &Field) -> Result<RatFun> {
        let mut out = r.clone();
        for rec in &self.records {
            match &rec.replacement {
                Replacement::Shift(w) => out = out.sub(&as_map(w, k), k),
                Replacement::Scale(_) => return Err(Error::InvalidTower("scale record in an Artin-Schreier chain".into())),
            }
        }
        Ok(out)
    }

    /// Replays the chain on y^n = c (scales only).
    pub fn replay_kummer(&self, c: &RatFun, n: u64, k: &Field) -> Result<RatFun> {
        let mut out = c.clone();
        for rec in &self.records {
            match &rec.replacement {
                Replacement::Scale(a) => out = out.mul(&a.pow(n as i64, k)?, k),
                Replacement::Shift(_) => return Err(Error::InvalidTower("shift record in a Kummer chain".into())),
            }
        }
        Ok(out)
    }
}

/// w^p − w.
pub fn as_map(w: &RatFun, k: &Field) -> RatFun {
    w.pow(k.p() as i64, k).expect("nonzero or positive power").sub(w, k)
}

fn valuation_or_max(r: &RatFun, pl: &Place, k: &Field) -> i64 {
    if r.is_zero() {
        i64::MAX
    } else {
        r.valuation(pl, k).expect("nonzero")
    }
}

/// Finite poles of r plus infinity.
fn pole_candidates(r: &RatFun, k: &Field) -> Vec<Place> {
    let mut v: Vec<Place> = irreducible_factors(r.den(), k).into_iter().map(Place::Finite).collect();
    v.push(Place::Infinity);
    v
}

/// Removes every pole of p-divisible order by shifts y = ỹ + u; the result
/// has at each pole a valuation coprime to p.
pub fn as_weak_standard_form(r: &RatFun, unramified_keep: &[Place], k: &Field) -> Result<(RatFun, SubstitutionChain)> {
    if r.is_zero() {
        return Err(Error::NotAnASExtension("r = 0".into()));
    }
    let p = k.p() as i64;
    let initial: i64 = pole_candidates(r, k)
        .iter()
        .map(|pl| (-valuation_or_max(r, pl, k)).max(0) * pl.degree() as i64)
        .sum();
    let cap = initial as usize + 1;
    let mut cur = r.clone();
    let mut chain = SubstitutionChain::default();
    for _ in 0..cap {
        let offending = pole_candidates(&cur, k).into_iter().find_map(|pl| {
            let v = valuation_or_max(&cur, &pl, k);
            (v < 0 && v % p == 0).then_some((pl, v))
        });
        let Some((pl, v)) = offending else {
            break;
        };
        let m = -v / p;
        let u = match &pl {
            Place::Infinity => {
                let lead = k.div(cur.num().lead(), cur.den().lead())?;
                RatFun::from_poly(Poly::monomial(k.pth_root(lead), m as usize))
            }
            Place::Finite(pi) => {
                let rf = ResidueField::new(&pl, k)?;
                let pim = RatFun::from_poly(pi.pow((p * m) as u64, k));
                let a0 = residue(&cur.mul(&pim, k), &pl, k)?;
                let a = rf.pth_root(&a0);
                RatFun::new(a, pi.pow(m as u64, k), k)?
            }
        };
        let next = cur.sub(&as_map(&u, k), k);
        let after = valuation_or_max(&next, &pl, k);
        chain.records.push(ChainRecord { replacement: Replacement::Shift(u), improvements: vec![(pl, v, after)] });
        cur = next;
    }
    let poles: Vec<(Place, i64)> = pole_candidates(&cur, k)
        .into_iter()
        .filter_map(|pl| {
            let v = valuation_or_max(&cur, &pl, k);
            (v < 0).then_some((pl, v))
        })
        .collect();
    if let Some((pl, v)) = poles.iter().find(|(_, v)| v % p == 0) {
        return Err(Error::StandardFormFailure(format!(
            "iteration cap reached with v = {v} at {}",
            pl.display(k)
        )));
    }
    if poles.is_empty() {
        return Err(Error::NotAnASExtension("no pole survives: the extension is constant or trivial".into()));
    }
    for pl in unramified_keep {
        if let Some((_, v)) = poles.iter().find(|(q, _)| q == pl) {
            return Err(Error::StandardFormFailure(format!(
                "{} is ramified (v = {v}) and cannot be kept unramified",
                pl.display(k)
            )));
        }
    }
    Ok((cur, chain))
}

/// Chinese remaindering: a with a ≡ r_i mod m_i, deg a < Σ deg m_i.
fn crt(pairs: &[(Poly, Poly)], k: &Field) -> Poly {
    let mut a = Poly::zero();
    let mut m = Poly::one();
    for (mi, ri) in pairs {
        // a + m·s ≡ ri mod mi
        let inv = m.inv_mod(mi, k).expect("coprime moduli");
        let s = ri.sub(&a, k).mulmod(&inv, mi, k);
        a = a.add(&m.mul(&s, k), k);
        m = m.mul(mi, k);
        a = a.rem(&m, k);
    }
    a
}

/// Makes v_P(r̃) = 0 at every place of `keep`, for r in weak standard form.
///
/// Places with residue in the Artin–Schreier image are first moved to residue
/// zero by a shift integral at `keep`; a constant shift by γ^p − γ with
/// γ ∉ F_p then makes every such residue nonzero. The shift's denominator
/// uses pole room at ramified places when available, otherwise an auxiliary
/// unramified place, which then acquires a pole of order divisible by p.
pub fn as_zero_normal(r: &RatFun, keep: &[Place], k: &Field) -> Result<(RatFun, SubstitutionChain)> {
    if k.h() == 1 {
        return Err(Error::ConstantFieldTooSmall);
    }
    let mut chain = SubstitutionChain::default();
    if keep.is_empty() {
        return Ok((r.clone(), chain));
    }
    if keep.iter().any(Place::is_infinite) {
        return Err(Error::InfinitePlaceUnsupported);
    }
    let p = k.p() as i64;
    // (place, target residue of w)
    let mut targets: Vec<(Poly, Poly)> = Vec::new();
    let mut needs_shift = false;
    let mut need_gamma = false;
    for pl in keep {
        let v = valuation_or_max(r, pl, k);
        if v < 0 {
            return Err(Error::StandardFormFailure(format!("{} is a pole of r (v = {v})", pl.display(k))));
        }
        let rf = ResidueField::new(pl, k)?;
        let rbar = if v > 0 { Poly::zero() } else { residue(r, pl, k)? };
        let pi = pl.poly().expect("finite").clone();
        if rbar.is_zero() {
            need_gamma = true;
            targets.push((pi, Poly::zero()));
        } else {
            match rf.artin_schreier_solve(&rbar) {
                AsImage::InImage(w) => {
                    need_gamma = true;
                    needs_shift = true;
                    targets.push((pi, w));
                }
                AsImage::NotInImage => targets.push((pi, Poly::zero())),
            }
        }
    }
    let mut cur = r.clone();
    if needs_shift {
        let m_deg: i64 = targets.iter().map(|(pi, _)| pi.deg()).sum();
        // denominator D = Π π_j^{N_j} over ramified places with p·N_j < pole order
        let mut den = Poly::one();
        let mut room = 0i64;
        for pl in pole_candidates(r, k) {
            let v = valuation_or_max(r, &pl, k);
            if v >= 0 {
                continue;
            }
            let n = (-v - 1) / p;
            match &pl {
                Place::Infinity => room += n,
                Place::Finite(pi) => {
                    den = den.mul(&pi.pow(n as u64, k), k);
                    room += n * pi.deg();
                }
            }
        }
        if room < m_deg - 1 {
            let used: BTreeSet<Place> = keep.iter().cloned().chain(pole_candidates(r, k)).collect();
            let aux = (1..)
                .flat_map(|d| monic_irreducibles(d, k).collect::<Vec<_>>())
                .find(|f| !used.contains(&Place::Finite(f.clone())))
                .expect("infinitely many places");
            let n = (m_deg - 1 - room + aux.deg() - 1) / aux.deg();
            den = den.mul(&aux.pow(n as u64, k), k);
        }
        let pairs: Vec<(Poly, Poly)> = targets
            .iter()
            .map(|(pi, w)| (pi.clone(), w.mulmod(&den, pi, k)))
            .collect();
        let a = crt(&pairs, k);
        if !a.is_zero() {
            let w = RatFun::new(a, den, k)?;
            let next = cur.sub(&as_map(&w, k), k);
            let imp = keep.iter().map(|pl| (pl.clone(), valuation_or_max(&cur, pl, k), valuation_or_max(&next, pl, k))).collect();
            chain.records.push(ChainRecord { replacement: Replacement::Shift(w), improvements: imp });
            cur = next;
        }
    }
    if need_gamma {
        let gamma = k.elements().find(|&g| !k.in_prime_field(g)).expect("k is not the prime field");
        let w = RatFun::constant(k.neg(gamma));
        let next = cur.sub(&as_map(&w, k), k);
        let imp = keep.iter().map(|pl| (pl.clone(), valuation_or_max(&cur, pl, k), valuation_or_max(&next, pl, k))).collect();
        chain.records.push(ChainRecord { replacement: Replacement::Shift(w), improvements: imp });
        cur = next;
    }
    for pl in keep {
        let v = valuation_or_max(&cur, pl, k);
        if v != 0 {
            return Err(Error::StandardFormFailure(format!("v = {v} at {} after normalization", pl.display(k))));
        }
    }
    Ok((cur, chain))
}

/// Brings y^n = c into Kummer standard form by ỹ = α·y.
pub fn kummer_standard_form(c: &RatFun, n: u64, k: &Field) -> Result<(RatFun, SubstitutionChain)> {
    if c.is_zero() {
        return Err(Error::ZeroArgument);
    }
    if n < 2 || num_integer::gcd(n, k.p()) != 1 {
        return Err(crate::finite_field::FieldError::NotCoprimeToCharacteristic { n, p: k.p() }.into());
    }
    let ni = n as i64;
    let mut exps: Vec<(Place, i64)> = Vec::new();
    for (f, m) in factorize(c.num(), k).factors {
        exps.push((Place::Finite(f), m as i64));
    }
    if !c.den().is_constant() {
        for (f, m) in factorize(c.den(), k).factors {
            exps.push((Place::Finite(f), -(m as i64)));
        }
    }
    let g = exps.iter().fold(ni, |g, (_, v)| num_integer::gcd(g, *v));
    if g > 1 {
        return Err(Error::NotPrimitive(format!("{g} divides n and every exponent of c")));
    }
    let v_inf = c.valuation(&Place::Infinity, k)?;
    if v_inf % ni != 0 {
        return Err(Error::StandardFormFailure(format!(
            "infinity ramifies: n = {n} does not divide v_inf(c) = {v_inf}"
        )));
    }
    let constraints: Vec<(Place, i64)> = exps
        .iter()
        .filter(|(_, v)| v.rem_euclid(ni) != *v)
        .map(|(pl, v)| (pl.clone(), (v.rem_euclid(ni) - v) / ni))
        .collect();
    let mut chain = SubstitutionChain::default();
    if constraints.is_empty() {
        return Ok((c.clone(), chain));
    }
    let alpha = weak_approximant(&constraints, k)?;
    let out = c.mul(&alpha.pow(ni, k)?, k);
    let improvements = constraints
        .iter()
        .map(|(pl, _)| (pl.clone(), c.valuation(pl, k).expect("nonzero"), out.valuation(pl, k).expect("nonzero")))
        .collect();
    chain.records.push(ChainRecord { replacement: Replacement::Scale(alpha), improvements });
    Ok((out, chain))
}

/// A cyclic extension of K given by one generator equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub kind: StepKind,
    pub c: RatFun,
}

/// Stacks cyclic components into a tower: Artin–Schreier components first,
/// then Kummer components, each checked against n ∤ v_P(c)·e_{i−1,P}.
pub fn compositum_to_tower(components: &[Component], k: &Field) -> Result<TowerDescriptor> {
    if components.is_empty() {
        return Err(Error::InvalidTower("no components".into()));
    }
    let mut ordered: Vec<&Component> = components.iter().filter(|c| c.kind == StepKind::ArtinSchreier).collect();
    ordered.extend(components.iter().filter(|c| c.kind != StepKind::ArtinSchreier));

    let mut seen_poles: Vec<(Place, usize)> = Vec::new();
    for (idx, comp) in ordered.iter().enumerate().filter(|(_, c)| c.kind == StepKind::ArtinSchreier) {
        for pl in pole_candidates(&comp.c, k) {
            if valuation_or_max(&comp.c, &pl, k) >= 0 {
                continue;
            }
            if seen_poles.iter().any(|(q, _)| *q == pl) {
                return Err(Error::SharedRamification(pl.display(k)));
            }
            seen_poles.push((pl, idx));
        }
    }

    let mut steps: Vec<StepSpec> = Vec::new();
    for (i, comp) in ordered.iter().enumerate() {
        if let StepKind::Kummer { n } = comp.kind {
            if i > 0 {
                let below = TowerDescriptor::new(k.clone(), steps.clone())?;
                for pl in irreducible_factors(comp.c.num(), k).into_iter().chain(irreducible_factors(comp.c.den(), k)) {
                    let pl = Place::Finite(pl);
                    let v = comp.c.valuation(&pl, k)?;
                    let e = track_place(&below, &pl).map_err(|(_, _, e)| e)?.e_total() as i64;
                    if (v * e) % n as i64 == 0 {
                        return Err(Error::DivisibilityObstruction(format!(
                            "{} with v = {v}, e = {e}, n = {n}",
                            pl.display(k)
                        )));
                    }
                }
            }
        }
        steps.push(StepSpec { kind: comp.kind, c: AlgebraElement::from_ratfun(comp.c.clone(), i) });
    }
    let d = TowerDescriptor::new(k.clone(), steps)?;
    let report = validate(&d);
    if !report.passed() {
        return Err(Error::StandardFormFailure(report.summary()));
    }
    Ok(d)
}

/// Data of the merge ỹ₁ = y₁ − α·y₂ⁿ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergeResult {
    pub alpha: Fq,
    /// y₂^p − y₂ = m₂ z alone
    pub base: TowerDescriptor,
    /// ỹ₁^p − ỹ₁ as an element of K(y₂)
    pub rhs: AlgebraElement,
    /// predicted valuation of the right-hand side above each pole
    pub predicted: Vec<(Place, i64)>,
    /// the same valuations recomputed by the valuation oracle
    pub verified: Vec<(Place, i64)>,
    /// the two-step tower y₂, ỹ₁
    pub tower: TowerDescriptor,
}

fn binomial_mod(n: u64, r: u64, k: &Field) -> Fq {
    let mut c = 1u128;
    for i in 0..r {
        c = c * (n - i) as u128 / (i + 1) as u128;
    }
    k.from_int((c % k.p() as u128) as i64)
}

/// Replaces y₁ (y₁^p − y₁ = a₁ + m₁zⁿ) by ỹ₁ = y₁ − α y₂ⁿ over y₂^p − y₂ = m₂z.
pub fn elementary_abelian_merge(a1: &RatFun, z: &RatFun, m1: Fq, m2: Fq, n: u64, k: &Field) -> Result<MergeResult> {
    let p = k.p();
    if n == 0 || num_integer::gcd(n, p) != 1 {
        return Err(crate::finite_field::FieldError::NotCoprimeToCharacteristic { n, p }.into());
    }
    if z.is_zero() || m2.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let poles = |r: &RatFun| -> Vec<Place> {
        if r.is_zero() {
            return Vec::new();
        }
        pole_candidates(r, k).into_iter().filter(|pl| valuation_or_max(r, pl, k) < 0).collect()
    };
    let z_poles = poles(z);
    let a_poles = poles(a1);
    if let Some(pl) = z_poles.iter().find(|pl| a_poles.contains(pl)) {
        return Err(Error::SharedPoles(pl.display(k)));
    }
    let m2n_inv = k.inv(k.pow(m2, n))?;
    let ap = k.mul(m1, m2n_inv); // α^p
    let alpha = k.pth_root(ap);

    let m2z = z.scale(m2, k);
    let base = TowerDescriptor::new(
        k.clone(),
        vec![StepSpec { kind: StepKind::ArtinSchreier, c: AlgebraElement::from_ratfun(m2z.clone(), 0) }],
    )?;
    let mut terms = vec![(vec![0u32], a1.clone())];
    for j in 1..n {
        let coef = m2z.pow((n - j) as i64, k)?.scale(k.mul(k.neg(ap), binomial_mod(n, j, k)), k);
        terms.push((vec![j as u32], coef));
    }
    terms.push((vec![n as u32], RatFun::constant(k.sub(alpha, ap))));
    let raw = AlgebraElement::from_terms(1, terms, k);
    let rhs = crate::tower_algebra::reduce(&base, &raw);

    let mut predicted = Vec::new();
    for pl in &z_poles {
        let vz = z.valuation(pl, k)?;
        let v = if n == 1 && alpha == ap { 0 } else { vz * (1 + p as i64 * (n as i64 - 1)) };
        predicted.push((pl.clone(), v));
    }
    for pl in &a_poles {
        predicted.push((pl.clone(), a1.valuation(pl, k)?));
    }
    let mut verified = Vec::new();
    for (pl, pv) in &predicted {
        let tp = track_place(&base, pl).map_err(|(_, _, e)| e)?;
        let v = if *pv == 0 && rhs.as_ratfun().is_some_and(|r| valuation_or_max(&r, pl, k) >= 0) {
            0
        } else {
            valuation(&rhs, &tp, k)?
        };
        verified.push((pl.clone(), v));
    }
    let tower = TowerDescriptor::new(
        k.clone(),
        vec![
            StepSpec { kind: StepKind::ArtinSchreier, c: AlgebraElement::from_ratfun(m2z, 0) },
            StepSpec { kind: StepKind::ArtinSchreier, c: rhs.clone() },
        ],
    )?;
    Ok(MergeResult { alpha, base, rhs, predicted, verified, tower })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::FieldSpec;
    use crate::tower::genus;

    fn lin(k: &Field, a: i64) -> Poly {
        Poly::from_ints(k, &[-a, 1])
    }

    #[test]
    fn weak_form_cube_pole() {
        let k = Field::prime(3).unwrap();
        let x = RatFun::x();
        let r = x.pow(-3, &k).unwrap().add(&x.inv(&k).unwrap(), &k);
        let (out, chain) = as_weak_standard_form(&r, &[], &k).unwrap();
        assert_eq!(out, x.inv(&k).unwrap().scale(k.from_int(2), &k));
        assert_eq!(chain.len(), 1);
        assert_eq!(chain.records[0].replacement, Replacement::Shift(x.inv(&k).unwrap()));
        assert_eq!(chain.replay_as(&r, &k).unwrap(), out);
    }

    #[test]
    fn weak_form_sixth_pole() {
        let k = Field::prime(3).unwrap();
        let r = RatFun::x().pow(-6, &k).unwrap().add(&RatFun::from_poly(lin(&k, 1)).inv(&k).unwrap(), &k);
        let (out, chain) = as_weak_standard_form(&r, &[], &k).unwrap();
        let vx = out.valuation(&Place::Finite(Poly::x()), &k).unwrap();
        assert!(vx < 0 && vx % 3 != 0);
        assert_eq!(out.valuation(&Place::Finite(lin(&k, 1)), &k).unwrap(), -1);
        assert_eq!(chain.replay_as(&r, &k).unwrap(), out);
    }

    #[test]
    fn weak_form_identity_and_constant() {
        let k = Field::prime(3).unwrap();
        let r = RatFun::new(Poly::from_ints(&k, &[-1, 2]), Poly::x().mul(&lin(&k, 1), &k), &k).unwrap();
        let (out, chain) = as_weak_standard_form(&r, &[], &k).unwrap();
        assert_eq!(out, r);
        assert!(chain.is_empty());
        let x3 = RatFun::x().pow(3, &k).unwrap().sub(&RatFun::x(), &k);
        assert!(matches!(as_weak_standard_form(&x3, &[], &k), Err(Error::NotAnASExtension(_))));
    }

    #[test]
    fn zero_normal_f9() {
        let k = Field::new(FieldSpec::extension(3, vec![1, 0, 1])).unwrap();
        let keep = [Place::Finite(lin(&k, 1))];
        let r = RatFun::x().inv(&k).unwrap().add(&RatFun::from_poly(Poly::x().mul(&lin(&k, 1), &k)), &k);
        let (out, chain) = as_zero_normal(&r, &keep, &k).unwrap();
        assert_eq!(out.valuation(&keep[0], &k).unwrap(), 0);
        assert_eq!(out.valuation(&Place::Finite(Poly::x()), &k).unwrap(), -1);
        assert_eq!(chain.replay_as(&r, &k).unwrap(), out);
        assert_eq!(as_zero_normal(&r, &[], &k).unwrap().0, r);
        let k3 = Field::prime(3).unwrap();
        assert_eq!(as_zero_normal(&RatFun::x(), &[], &k3), Err(Error::ConstantFieldTooSmall));
    }

    #[test]
    fn zero_normal_image_residue() {
        // residue t at (x - 1) lies in the image of w^3 − w on F_9, 1 + t at (x - 2) does not
        let k = Field::new(FieldSpec::extension(3, vec![1, 0, 1])).unwrap();
        let keep = [Place::Finite(lin(&k, 1)), Place::Finite(lin(&k, 2))];
        let t = k.from_coeffs(&[0, 1]).unwrap();
        let shift = RatFun::constant(k.sub(t, k.one()));
        let r = RatFun::x().pow(-5, &k).unwrap().add(&shift, &k);
        let (out, chain) = as_zero_normal(&r, &keep, &k).unwrap();
        for pl in &keep {
            assert_eq!(out.valuation(pl, &k).unwrap(), 0);
        }
        assert_eq!(out.valuation(&Place::Finite(Poly::x()), &k).unwrap(), -5);
        assert_eq!(chain.replay_as(&r, &k).unwrap(), out);
    }

    #[test]
    fn kummer_examples() {
        let k = Field::prime(5).unwrap();
        let c = RatFun::from_poly(Poly::x().pow(3, &k).mul(&lin(&k, 1), &k));
        let (out, chain) = kummer_standard_form(&c, 2, &k).unwrap();
        assert_eq!(out, RatFun::from_poly(Poly::x().mul(&lin(&k, 1), &k)));
        assert_eq!(chain.records[0].replacement, Replacement::Scale(RatFun::x().inv(&k).unwrap()));
        let (same, empty) = kummer_standard_form(&out, 2, &k).unwrap();
        assert_eq!(same, out);
        assert!(empty.is_empty());
        let sq = RatFun::from_poly(Poly::x().mul(&lin(&k, 1), &k).pow(2, &k));
        assert!(matches!(kummer_standard_form(&sq, 4, &k), Err(Error::NotPrimitive(_))));
    }

    #[test]
    fn compositum_cases() {
        let k3 = Field::prime(3).unwrap();
        let comps = [
            Component { kind: StepKind::Kummer { n: 2 }, c: RatFun::from_poly(Poly::x().mul(&lin(&k3, 1), &k3)) },
            Component { kind: StepKind::ArtinSchreier, c: RatFun::from_poly(lin(&k3, 2)).inv(&k3).unwrap() },
        ];
        let d = compositum_to_tower(&comps, &k3).unwrap();
        assert!(d.is_artin_schreier(1));
        assert_eq!(genus(&d).unwrap(), 2);

        let xi = RatFun::x().inv(&k3).unwrap();
        let two_as = [
            Component { kind: StepKind::ArtinSchreier, c: xi.clone() },
            Component { kind: StepKind::ArtinSchreier, c: xi.add(&RatFun::from_poly(lin(&k3, 1)).inv(&k3).unwrap(), &k3) },
        ];
        assert!(matches!(compositum_to_tower(&two_as, &k3), Err(Error::SharedRamification(_))));

        let k5 = Field::prime(5).unwrap();
        let kum = |a: i64, b: i64| Component {
            kind: StepKind::Kummer { n: 2 },
            c: RatFun::from_poly(lin(&k5, a).mul(&lin(&k5, b), &k5)),
        };
        assert!(matches!(compositum_to_tower(&[kum(0, 1), kum(0, 2)], &k5), Err(Error::DivisibilityObstruction(_))));
        assert_eq!(genus(&compositum_to_tower(&[kum(0, 1), kum(2, 3)], &k5).unwrap()).unwrap(), 1);
    }

    #[test]
    fn merge_f9() {
        let k = Field::new(FieldSpec::extension(3, vec![1, 0, 1])).unwrap();
        let a1 = RatFun::from_poly(lin(&k, 1)).inv(&k).unwrap();
        let z = RatFun::x().inv(&k).unwrap();
        let m = elementary_abelian_merge(&a1, &z, k.one(), k.one(), 2, &k).unwrap();
        assert_eq!(m.predicted, vec![(Place::Finite(Poly::x()), -4), (Place::Finite(lin(&k, 1)), -1)]);
        assert_eq!(m.predicted, m.verified);
        assert_eq!(genus(&m.tower).unwrap(), 9);

        let only_z = elementary_abelian_merge(&RatFun::zero(), &z, k.one(), k.one(), 2, &k).unwrap();
        assert_eq!(only_z.predicted, vec![(Place::Finite(Poly::x()), -4)]);

        let degenerate = elementary_abelian_merge(&a1, &z, k.one(), k.one(), 1, &k).unwrap();
        assert_eq!(degenerate.predicted[0], (Place::Finite(Poly::x()), 0));
        assert!(matches!(elementary_abelian_merge(&z, &z, k.one(), k.one(), 2, &k), Err(Error::SharedPoles(_))));
    }
}
