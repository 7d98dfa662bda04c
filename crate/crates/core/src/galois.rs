//! Galois action on the basis of holomorphic differentials, the Jordan-type
//! decomposition of cyclic towers, and the submodules U_{μ,ν}.

use std::collections::BTreeMap;

use crate::boseck::{enumerate_basis_with, t_mu, BasisElement, GammaIndex};
use crate::error::{Error, Result};
use crate::finite_field::{Field, Fq};
use crate::linalg::{self, Matrix};
use crate::tower::{analyze, genus_from_analysis, StepKind, TowerAnalysis, TowerDescriptor};
use crate::tower_algebra::{apply_automorphism, generator_action, AlgebraElement};
use crate::univariate::{Poly, RatFun};

/// The basis together with its (μ → block) index, used to read off coordinates.
#[derive(Debug, Clone)]
pub struct BasisIndex {
    pub basis: Vec<BasisElement>,
    blocks: BTreeMap<Vec<u32>, (usize, usize, Poly)>,
}

impl BasisIndex {
    pub fn new(basis: Vec<BasisElement>, k: &Field) -> Self {
        let mut blocks: BTreeMap<Vec<u32>, (usize, usize, Poly)> = BTreeMap::new();
        for (i, b) in basis.iter().enumerate() {
            let entry = blocks.entry(b.mu.clone()).or_insert_with(|| (i, 0, b.coefficient(k).den().clone()));
            entry.1 += 1;
        }
        BasisIndex { basis, blocks }
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Coordinates of a·dx in the basis, or `None` if it leaves the span.
    pub fn coordinates(&self, a: &AlgebraElement, k: &Field) -> Option<Vec<Fq>> {
        let mut out = vec![k.zero(); self.basis.len()];
        for (mu, r) in a.terms() {
            let (start, count, g) = self.blocks.get(mu)?;
            let num = r.mul(&RatFun::from_poly(g.clone()), k);
            if !num.is_polynomial() || num.num().deg() >= *count as i64 {
                return None;
            }
            for (nu, c) in num.num().coeffs().iter().enumerate() {
                out[start + nu] = *c;
            }
        }
        Some(out)
    }

    /// The element Σ coords_j · basis_j (factor in front of dx).
    pub fn element(&self, d: &TowerDescriptor, coords: &[Fq]) -> AlgebraElement {
        let k = d.field();
        let mut out = AlgebraElement::zero(d.height());
        for (b, &c) in self.basis.iter().zip(coords) {
            if !c.is_zero() {
                out = out.add(&b.to_element(d).scale_const(c, k), k);
            }
        }
        out
    }
}

/// Matrix of σ_1^{h_1}⋯σ_r^{h_r} on the basis; column j is the image of basis_j.
pub fn action_matrix(d: &TowerDescriptor, index: &BasisIndex, h: &[u64]) -> Result<Matrix> {
    let k = d.field();
    let n = index.len();
    let mut m = vec![vec![k.zero(); n]; n];
    for (j, b) in index.basis.iter().enumerate() {
        let img = apply_automorphism(d, &b.to_element(d), h)?;
        let col = index.coordinates(&img, k).ok_or_else(|| {
            Error::ClosureFailure(format!("image of {} under h = {h:?} is {}", b.pretty(k), img.display(k)))
        })?;
        for (i, c) in col.into_iter().enumerate() {
            m[i][j] = c;
        }
    }
    Ok(m)
}

/// Convenience: enumerate the basis and build its index.
pub fn basis_index(d: &TowerDescriptor) -> Result<(TowerAnalysis, BasisIndex)> {
    let a = analyze(d)?;
    let basis = enumerate_basis_with(d, &a)?;
    Ok((a, BasisIndex::new(basis, d.field())))
}

/// Outcome of the nilpotency test for the Artin–Schreier generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilpotencyReport {
    pub passed: bool,
    pub checked: usize,
    pub witness: Option<String>,
}

const NILPOTENCY_MONOMIAL_CAP: usize = 4096;

/// For every Artin–Schreier level i and monomial z^μ: (σ_i − 1)^{μ_i+1} z^μ = 0,
/// and (σ_i − 1)^{μ_i} z^μ = μ_i!·z^{μ with μ_i = 0} when σ_i fixes the
/// other generators.
pub fn nilpotency_check(d: &TowerDescriptor) -> Result<NilpotencyReport> {
    let k = d.field();
    let r = d.height();
    let gamma = GammaIndex::new(d);
    let monomials = gamma.full_box();
    let mut checked = 0;
    for i in (1..=r).filter(|&i| d.is_artin_schreier(i)) {
        let sigma = generator_action(d, i)?;
        let plain = sigma
            .images()
            .iter()
            .enumerate()
            .all(|(j, img)| j + 1 == i || *img == AlgebraElement::generator(j + 1, r));
        for mu in monomials.iter().take(NILPOTENCY_MONOMIAL_CAP) {
            let z = AlgebraElement::monomial(mu.clone(), RatFun::one());
            let mut cur = z.clone();
            let m = mu[i - 1];
            for _ in 0..m {
                cur = sigma.apply(d, &cur).sub(&cur, k);
            }
            if plain {
                let mut base = mu.clone();
                base[i - 1] = 0;
                let fact = (1..=m as i64).fold(1i64, |acc, j| acc * j % k.p() as i64);
                let expect = AlgebraElement::monomial(base, RatFun::constant(k.from_int(fact)));
                if cur != expect {
                    return Ok(NilpotencyReport {
                        passed: false,
                        checked,
                        witness: Some(format!("(s{i} - 1)^{m} y^{mu:?} = {}", cur.display(k))),
                    });
                }
            }
            let last = sigma.apply(d, &cur).sub(&cur, k);
            if !last.is_zero() {
                return Ok(NilpotencyReport {
                    passed: false,
                    checked,
                    witness: Some(format!("(s{i} - 1)^{} y^{mu:?} = {}", m + 1, last.display(k))),
                });
            }
            checked += 1;
        }
    }
    Ok(NilpotencyReport { passed: true, checked, witness: None })
}

/// One summand Δ_μ with its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaEntry {
    pub mu_p: u64,
    pub mu_tame: Vec<u32>,
    pub dim: u64,
    pub multiplicity: i64,
    /// which branch of the multiplicity formula produced the value
    pub case: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport {
    pub entries: Vec<DeltaEntry>,
    pub p_exponent: u32,
    pub tame_degree: u64,
    pub t_unr: u32,
    pub genus: u64,
    /// Whether the Jordan type of the generator's matrix agrees, when computed.
    pub jordan_agrees: Option<bool>,
}

/// (Kummer level with its degree, Artin–Schreier level), each optional.
type CyclicShape = (Option<(usize, u64)>, Option<usize>);

fn cyclic_shape(d: &TowerDescriptor) -> Result<CyclicShape> {
    let shape: Vec<StepKind> = d.steps().iter().map(|s| s.kind).collect();
    match shape.as_slice() {
        [StepKind::Kummer { n }] => Ok((Some((1, *n)), None)),
        [StepKind::ArtinSchreier] => Ok((None, Some(1))),
        [StepKind::Kummer { n }, StepKind::ArtinSchreier] => Ok((Some((1, *n)), Some(2))),
        _ => Err(Error::NotCyclic(
            "supported shapes: one Kummer step, one Artin-Schreier step, or a Kummer step followed by one Artin-Schreier step".into(),
        )),
    }
}

/// Multiplicities d_μ of the indecomposable summands for a cyclic tower of
/// order p^t·n with t ≤ 1.
///
/// Conventions at the index boundaries: μ_p = 0 gives no summand, and
/// t^{(μ_p, ·)} at μ_p = p^t is read at Artin–Schreier exponent p^t − 1.
pub fn cyclic_decomposition(d: &TowerDescriptor) -> Result<DecompositionReport> {
    let (kum, as_level) = cyclic_shape(d)?;
    let (a, index) = basis_index(d)?;
    let g = genus_from_analysis(d, &a)?;
    let p = d.field().p();
    let t = u32::from(as_level.is_some());
    let n = kum.map(|(_, n)| n).unwrap_or(1);
    let t_unr = match as_level {
        Some(l) if a.profiles.iter().all(|pr| !pr.level(l).jump.is_some()) => 1,
        _ => 0,
    };
    if t_unr != 0 {
        return Err(Error::NotCyclic("the Artin-Schreier step is unramified".into()));
    }
    let pt = p.pow(t);
    // μ vector in tower order from (AS exponent, tame exponent)
    let mu_vec = |ap: u64, beta: u32| -> Vec<u32> {
        let mut v = vec![0u32; d.height()];
        if let Some((l, _)) = kum {
            v[l - 1] = beta;
        }
        if let Some(l) = as_level {
            v[l - 1] = ap as u32;
        }
        v
    };
    let tm = |ap: u64, beta: u32| t_mu(&a, &mu_vec(ap, beta), p);
    let delta = |x: i64| i64::from(x == 0);
    let g_k = 0i64;

    let mut entries = Vec::new();
    for beta in 0..n as u32 {
        for mu_p in 1..=pt {
            let (val, case) = if mu_p < pt - 1 {
                let (t0, t1) = (tm(mu_p - 1, beta)?, tm(mu_p, beta)?);
                (t0 - t1 + delta(t0) - delta(t1), "1")
            } else if mu_p == pt - 1 {
                let t0 = tm(mu_p - 1, beta)?;
                if beta != 0 {
                    (t0 - tm(mu_p, beta)? + delta(t0), "2a")
                } else {
                    (t0 - delta(t0) - 1, "2b")
                }
            } else {
                let tt = tm(pt - 1, beta)?;
                (g_k - 1 + tt + delta(tt), "3b")
            };
            entries.push(DeltaEntry { mu_p, mu_tame: if kum.is_some() { vec![beta] } else { vec![] }, dim: mu_p, multiplicity: val, case });
        }
    }
    if let Some(bad) = entries.iter().find(|e| e.multiplicity < 0) {
        return Err(Error::DecompositionInconsistent(format!(
            "negative multiplicity {} at mu_p = {}, mu_tame = {:?}",
            bad.multiplicity, bad.mu_p, bad.mu_tame
        )));
    }
    let total: i64 = entries.iter().map(|e| e.multiplicity * e.dim as i64).sum();
    if total != g as i64 {
        return Err(Error::DecompositionInconsistent(format!("sum of d*dim = {total}, genus = {g}")));
    }
    let jordan_agrees = if index.is_empty() {
        Some(entries.iter().all(|e| e.multiplicity == 0))
    } else {
        let h = vec![1u64; d.height()];
        match action_matrix(d, &index, &h) {
            Ok(m) => Some(jordan_matches(&m, &entries, d.field(), kum.map(|(_, n)| n))),
            Err(e) if e.is_invariant_violation() => return Err(e),
            Err(_) => None,
        }
    };
    if jordan_agrees == Some(false) {
        return Err(Error::DecompositionInconsistent("Jordan type of the generator disagrees with the multiplicities".into()));
    }
    entries.retain(|e| e.multiplicity > 0);
    Ok(DecompositionReport { entries, p_exponent: t, tame_degree: n, t_unr, genus: g, jordan_agrees })
}

/// Number of Jordan blocks of each size for eigenvalue λ.
pub fn jordan_blocks(m: &Matrix, lambda: Fq, k: &Field) -> BTreeMap<usize, usize> {
    let n = m.len();
    let a = linalg::mat_sub_scalar(m, lambda, k);
    let mut ranks = vec![n];
    let mut pw = linalg::identity(n);
    for _ in 0..=n {
        pw = linalg::mat_mul(&pw, &a, k);
        ranks.push(linalg::rank(&pw, k));
        if ranks.len() >= 3 && ranks[ranks.len() - 1] == ranks[ranks.len() - 2] {
            break;
        }
    }
    let r = |j: usize| ranks.get(j).copied().unwrap_or(*ranks.last().unwrap());
    let mut out = BTreeMap::new();
    for s in 1..=n {
        let b = r(s - 1) + r(s + 1) - 2 * r(s);
        if b > 0 {
            out.insert(s, b);
        }
    }
    out
}

fn jordan_matches(m: &Matrix, entries: &[DeltaEntry], k: &Field, n: Option<u64>) -> bool {
    let n_tame = n.unwrap_or(1);
    let xi = k.root_of_unity(n_tame).unwrap_or(k.one());
    for beta in 0..n_tame as u32 {
        let lambda = k.pow(xi, beta as u64);
        let blocks = jordan_blocks(m, lambda, k);
        let expect: BTreeMap<usize, usize> = entries
            .iter()
            .filter(|e| e.mu_tame.first().copied().unwrap_or(0) == beta && e.multiplicity > 0)
            .map(|e| (e.dim as usize, e.multiplicity as usize))
            .collect();
        if blocks != expect {
            return false;
        }
    }
    true
}

/// Generators θ^{μ,ν}_{μ'} = x^ν g_μ^{-1} y^{μ'} dx of U_{μ,ν}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Submodule {
    pub generators: Vec<(Vec<u32>, AlgebraElement)>,
    pub coordinates: Vec<Vec<Fq>>,
    pub dimension: usize,
    pub expected_dimension: usize,
}

pub fn submodule_generators(d: &TowerDescriptor, mu: &[u32], nu: u64) -> Result<Submodule> {
    let k = d.field();
    let (_, index) = basis_index(d)?;
    let Some(w) = index.basis.iter().find(|b| b.mu == mu && b.nu == nu) else {
        return Err(Error::InvalidTower(format!("({mu:?}, {nu}) does not index a basis element")));
    };
    let coef = w.coefficient(k);
    let gamma = GammaIndex::new(d);
    let mut generators = Vec::new();
    let mut coordinates = Vec::new();
    for mu2 in gamma.iter() {
        let below = (1..=d.height()).all(|i| {
            if d.is_artin_schreier(i) {
                mu2[i - 1] <= mu[i - 1]
            } else {
                mu2[i - 1] == mu[i - 1]
            }
        });
        if !below {
            continue;
        }
        let theta = AlgebraElement::monomial(mu2.clone(), coef.clone());
        let c = index
            .coordinates(&theta, k)
            .ok_or_else(|| Error::ClosureFailure(format!("theta for mu' = {mu2:?} leaves the basis span")))?;
        generators.push((mu2, theta));
        coordinates.push(c);
    }
    let dimension = linalg::rank(&coordinates, k);
    let expected_dimension = (1..=d.height())
        .filter(|&i| d.is_artin_schreier(i))
        .map(|i| mu[i - 1] as usize + 1)
        .product();
    // closure under every group generator
    for i in 1..=d.height() {
        let mut h = vec![0u64; d.height()];
        h[i - 1] = 1;
        for (mu2, theta) in &generators {
            let img = apply_automorphism(d, theta, &h)?;
            let c = index
                .coordinates(&img, k)
                .ok_or_else(|| Error::ClosureFailure(format!("sigma_{i} of theta_{mu2:?} leaves the basis span")))?;
            if !linalg::in_span(&coordinates, &c, k) {
                return Err(Error::ClosureFailure(format!("sigma_{i} of theta_{mu2:?} leaves U")));
            }
        }
    }
    Ok(Submodule { generators, coordinates, dimension, expected_dimension })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn fq(k: &Field, rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| k.from_int(x)).collect()).collect()
    }

    #[test]
    fn as_genus_two_jordan_block() {
        let d = fixtures::as_genus_two();
        let k = d.field();
        let (_, idx) = basis_index(&d).unwrap();
        let m = action_matrix(&d, &idx, &[1]).unwrap();
        assert_eq!(m, fq(k, &[&[1, 1], &[0, 1]]));
        assert_eq!(action_matrix(&d, &idx, &[0]).unwrap(), linalg::identity(2));
        let rep = cyclic_decomposition(&d).unwrap();
        assert_eq!(rep.entries.len(), 1);
        assert_eq!((rep.entries[0].mu_p, rep.entries[0].multiplicity), (2, 1));
        assert_eq!(rep.jordan_agrees, Some(true));
    }

    #[test]
    fn mixed_tower_kummer_negates() {
        let d = fixtures::mixed_tower_e();
        let k = d.field();
        let (_, idx) = basis_index(&d).unwrap();
        let m = action_matrix(&d, &idx, &[1, 0]).unwrap();
        assert_eq!(m, fq(k, &[&[-1, 0], &[0, -1]]));
        let sub = submodule_generators(&d, &[1, 1], 0).unwrap();
        assert_eq!(sub.dimension, 2);
        assert_eq!(sub.expected_dimension, 2);
        let rep = cyclic_decomposition(&d).unwrap();
        assert_eq!(rep.jordan_agrees, Some(true));
    }

    #[test]
    fn elliptic_decomposition() {
        let d = fixtures::elliptic_f5();
        let rep = cyclic_decomposition(&d).unwrap();
        assert_eq!(rep.entries, vec![DeltaEntry { mu_p: 1, mu_tame: vec![1], dim: 1, multiplicity: 1, case: "3b" }]);
    }

    #[test]
    fn nilpotency_on_fixtures() {
        for d in [fixtures::as_genus_two(), fixtures::mixed_tower_e(), fixtures::artin_mumford()] {
            assert!(nilpotency_check(&d).unwrap().passed);
        }
    }
}
