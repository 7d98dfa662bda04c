//! Arithmetic in L as a free K-module on the monomials y^μ, valuations at
//! tracked places, automorphisms, and the holomorphy oracle.

mod automorphism;
mod oracle;
mod valuation;

pub use automorphism::{apply_automorphism, generator_action, Automorphism};
pub use oracle::{differential_valuation, holomorphy_check, holomorphy_check_element, HolomorphyReport};
pub use valuation::{valuation, valuation_lower_bound, LevelData, LevelKind, TrackedPlace};

use std::collections::BTreeMap;

use crate::finite_field::{Field, Fq};
use crate::tower::{StepKind, TowerDescriptor};
use crate::univariate::RatFun;

/// Σ_μ a_μ y^μ with a_μ ∈ K; exponent vectors have length `nvars`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraElement {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, RatFun>,
}

impl AlgebraElement {
    pub fn zero(nvars: usize) -> Self {
        AlgebraElement { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_ratfun(RatFun::one(), nvars)
    }

    pub fn from_ratfun(r: RatFun, nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], r)
    }

    /// y_level (1-based).
    pub fn generator(level: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[level - 1] = 1;
        Self::monomial(e, RatFun::one())
    }

    pub fn monomial(exps: Vec<u32>, coef: RatFun) -> Self {
        let nvars = exps.len();
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(exps, coef);
        }
        AlgebraElement { nvars, terms }
    }

    /// Builds from raw terms, summing repeated exponent vectors.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, RatFun)>, k: &Field) -> Self {
        let mut out = AlgebraElement::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            out.add_term(e, c, k);
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, RatFun> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of y^0 if the element lies in K.
    pub fn as_ratfun(&self) -> Option<RatFun> {
        match self.terms.len() {
            0 => Some(RatFun::zero()),
            1 => self.terms.get(&vec![0; self.nvars]).cloned(),
            _ => None,
        }
    }

    /// Highest j with a nonzero exponent of y_j (0 for elements of K).
    pub fn level(&self) -> usize {
        self.terms
            .keys()
            .filter_map(|e| e.iter().rposition(|&x| x > 0).map(|i| i + 1))
            .max()
            .unwrap_or(0)
    }

    /// Same element with `n` variables (extra ones carry exponent 0).
    pub fn extend_vars(&self, n: usize) -> Self {
        assert!(n >= self.nvars);
        AlgebraElement {
            nvars: n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.resize(n, 0);
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Drops variables beyond `n`; terms using them are discarded.
    pub fn truncate_vars(&self, n: usize) -> Self {
        if n >= self.nvars {
            return self.extend_vars(n);
        }
        AlgebraElement {
            nvars: n,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[n..].iter().all(|&x| x == 0))
                .map(|(e, c)| (e[..n].to_vec(), c.clone()))
                .collect(),
        }
    }

    fn add_term(&mut self, e: Vec<u32>, c: RatFun, k: &Field) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let s = old.add(&c, k);
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, o: &AlgebraElement, k: &Field) -> AlgebraElement {
        let n = self.nvars.max(o.nvars);
        let mut out = self.extend_vars(n);
        for (e, c) in &o.extend_vars(n).terms {
            out.add_term(e.clone(), c.clone(), k);
        }
        out
    }

    pub fn neg(&self, k: &Field) -> AlgebraElement {
        AlgebraElement {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg(k))).collect(),
        }
    }

    pub fn sub(&self, o: &AlgebraElement, k: &Field) -> AlgebraElement {
        self.add(&o.neg(k), k)
    }

    pub fn scale(&self, r: &RatFun, k: &Field) -> AlgebraElement {
        if r.is_zero() {
            return AlgebraElement::zero(self.nvars);
        }
        AlgebraElement {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.mul(r, k))).collect(),
        }
    }

    pub fn scale_const(&self, c: Fq, k: &Field) -> AlgebraElement {
        self.scale(&RatFun::constant(c), k)
    }

    /// Whether every exponent of y_j is below `bounds[j]`.
    pub fn is_reduced(&self, bounds: &[u64]) -> bool {
        self.terms
            .keys()
            .all(|e| e.iter().zip(bounds).all(|(&x, &b)| (x as u64) < b))
    }

    pub fn display(&self, k: &Field) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x > 0)
                    .map(|(i, &x)| if x == 1 { format!("y{}", i + 1) } else { format!("y{}^{}", i + 1, x) })
                    .collect();
                let cs = c.display(k);
                match (mono.is_empty(), c.is_one()) {
                    (true, _) => format!("({cs})"),
                    (false, true) => mono.join("*"),
                    (false, false) => format!("({cs})*{}", mono.join("*")),
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Rewrites every term into reduced monomial form using the tower relations.
pub fn reduce(d: &TowerDescriptor, a: &AlgebraElement) -> AlgebraElement {
    let k = d.field();
    let bounds = d.bounds();
    let n = a.nvars;
    let mut out = AlgebraElement::zero(n);
    let mut work: Vec<(Vec<u32>, RatFun)> = a.terms.iter().map(|(e, c)| (e.clone(), c.clone())).collect();
    while let Some((e, c)) = work.pop() {
        let Some(j) = (0..n).rev().find(|&j| e[j] as u64 >= bounds[j]) else {
            out.add_term(e, c, k);
            continue;
        };
        let cj = d.steps()[j].c.extend_vars(n);
        match d.steps()[j].kind {
            StepKind::Kummer { n: nj } => {
                let mut base = e.clone();
                base[j] -= nj as u32;
                push_product(&mut work, &base, &c, &cj, k);
            }
            StepKind::ArtinSchreier => {
                let p = k.p() as u32;
                let mut lin = e.clone();
                lin[j] -= p - 1;
                work.push((lin, c.clone()));
                let mut base = e.clone();
                base[j] -= p;
                push_product(&mut work, &base, &c, &cj, k);
            }
        }
    }
    out
}

fn push_product(work: &mut Vec<(Vec<u32>, RatFun)>, base: &[u32], c: &RatFun, other: &AlgebraElement, k: &Field) {
    for (e2, c2) in &other.terms {
        let e: Vec<u32> = base.iter().zip(e2).map(|(a, b)| a + b).collect();
        work.push((e, c.mul(c2, k)));
    }
}

/// Product in L, reduced.
pub fn alg_mul(d: &TowerDescriptor, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
    let k = d.field();
    let n = a.nvars.max(b.nvars);
    let (a, b) = (a.extend_vars(n), b.extend_vars(n));
    let mut raw = AlgebraElement::zero(n);
    for (e1, c1) in &a.terms {
        for (e2, c2) in &b.terms {
            let e: Vec<u32> = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
            raw.add_term(e, c1.mul(c2, k), k);
        }
    }
    reduce(d, &raw)
}

pub fn alg_pow(d: &TowerDescriptor, a: &AlgebraElement, e: u64) -> AlgebraElement {
    let mut acc = AlgebraElement::one(a.nvars);
    for _ in 0..e {
        acc = alg_mul(d, &acc, a);
    }
    acc
}

/// y^μ as an element with `nvars` variables, reduced.
pub fn monomial_element(d: &TowerDescriptor, mu: &[u32]) -> AlgebraElement {
    reduce(d, &AlgebraElement::monomial(mu.to_vec(), RatFun::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::univariate::Poly;

    #[test]
    fn mixed_tower_product() {
        let d = fixtures::mixed_tower_e();
        let k = d.field();
        let a = AlgebraElement::monomial(vec![1, 1], RatFun::one());
        let b = AlgebraElement::monomial(vec![1, 2], RatFun::one());
        let prod = alg_mul(&d, &a, &b);
        let c1 = RatFun::from_poly(Poly::from_ints(k, &[0, -1, 1]));
        let c2 = RatFun::from_poly(Poly::from_ints(k, &[-2, 1])).inv(k).unwrap();
        let expect = AlgebraElement::from_terms(2, [(vec![0, 1], c1.clone()), (vec![0, 0], c1.mul(&c2, k))], k);
        assert_eq!(prod, expect);
    }

    #[test]
    fn as_relation() {
        let d = fixtures::as_genus_two();
        let k = d.field();
        let y = AlgebraElement::generator(1, 1);
        let y2 = alg_mul(&d, &y, &y);
        let y3 = alg_mul(&d, &y2, &y);
        let expect = y.add(&AlgebraElement::from_ratfun(d.step(1).c.as_ratfun().unwrap(), 1), k);
        assert_eq!(y3, expect);
    }

    #[test]
    fn kummer_relation() {
        let d = fixtures::elliptic_f5();
        let y = AlgebraElement::generator(1, 1);
        assert_eq!(alg_mul(&d, &y, &y), d.step(1).c.extend_vars(1));
    }
}
