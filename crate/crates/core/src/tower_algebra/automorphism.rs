use super::{alg_mul, alg_pow, reduce, AlgebraElement};
use crate::error::{Error, Result};
use crate::tower::{StepKind, TowerDescriptor};
use crate::univariate::RatFun;

/// A K-automorphism of L, given by the images of y_1, ..., y_r.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automorphism {
    images: Vec<AlgebraElement>,
}

impl Automorphism {
    pub fn identity(r: usize) -> Self {
        Automorphism { images: (1..=r).map(|i| AlgebraElement::generator(i, r)).collect() }
    }

    /// Checked constructor: the images must respect every defining relation.
    pub fn new(d: &TowerDescriptor, images: Vec<AlgebraElement>) -> Result<Self> {
        let r = d.height();
        if images.len() != r {
            return Err(Error::UnsupportedAction(format!("expected {r} generator images, got {}", images.len())));
        }
        let images: Vec<_> = images.iter().map(|a| reduce(d, &a.extend_vars(r))).collect();
        let s = Automorphism { images };
        s.verify(d)?;
        Ok(s)
    }

    pub fn images(&self) -> &[AlgebraElement] {
        &self.images
    }

    /// σ(a) by substitution, reduced.
    pub fn apply(&self, d: &TowerDescriptor, a: &AlgebraElement) -> AlgebraElement {
        let k = d.field();
        let r = d.height();
        let a = a.extend_vars(r);
        let bounds = d.bounds();
        // powers[j][m] = σ(y_j)^m
        let powers: Vec<Vec<AlgebraElement>> = (0..r)
            .map(|j| {
                let mut v = vec![AlgebraElement::one(r)];
                let top = a.terms().keys().map(|e| e[j]).max().unwrap_or(0).max(bounds[j] as u32);
                for m in 1..=top as usize {
                    let next = alg_mul(d, &v[m - 1], &self.images[j]);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = AlgebraElement::zero(r);
        for (e, c) in a.terms() {
            let mut t = AlgebraElement::from_ratfun(c.clone(), r);
            for (j, &m) in e.iter().enumerate() {
                if m > 0 {
                    t = alg_mul(d, &t, &powers[j][m as usize]);
                }
            }
            out = out.add(&t, k);
        }
        out
    }

    /// self ∘ other.
    pub fn compose(&self, d: &TowerDescriptor, other: &Automorphism) -> Automorphism {
        Automorphism { images: other.images.iter().map(|img| self.apply(d, img)).collect() }
    }

    fn verify(&self, d: &TowerDescriptor) -> Result<()> {
        let k = d.field();
        let r = d.height();
        for (j, step) in d.steps().iter().enumerate() {
            let yj = &self.images[j];
            let c = self.apply(d, &step.c.extend_vars(r));
            let lhs = match step.kind {
                StepKind::Kummer { n } => alg_pow(d, yj, n),
                StepKind::ArtinSchreier => alg_pow(d, yj, k.p()).sub(yj, k),
            };
            if !lhs.sub(&c, k).is_zero() {
                return Err(Error::UnsupportedAction(format!(
                    "images do not preserve the relation of step {}",
                    j + 1
                )));
            }
        }
        Ok(())
    }
}

/// The generator σ_i: a user action table if present, else y_i ↦ y_i + 1
/// (Artin–Schreier) or y_i ↦ ζ y_i (Kummer) fixing the other generators.
pub fn generator_action(d: &TowerDescriptor, i: usize) -> Result<Automorphism> {
    let r = d.height();
    if i == 0 || i > r {
        return Err(Error::UnsupportedAction(format!("no generator {i} in a tower of height {r}")));
    }
    if let Some(t) = d.options.actions.iter().find(|t| t.generator == i) {
        return Automorphism::new(d, t.images.clone());
    }
    let k = d.field();
    let mut images: Vec<AlgebraElement> = (1..=r).map(|j| AlgebraElement::generator(j, r)).collect();
    images[i - 1] = match d.step(i).kind {
        StepKind::ArtinSchreier => images[i - 1].add(&AlgebraElement::one(r), k),
        StepKind::Kummer { n } => {
            let zeta = k
                .root_of_unity(n)
                .ok_or_else(|| Error::UnsupportedAction(format!("k has no primitive {n}-th root of unity")))?;
            images[i - 1].scale(&RatFun::constant(zeta), k)
        }
    };
    Automorphism::new(d, images)
}

/// Applies σ_1^{h_1} ⋯ σ_r^{h_r}.
pub fn apply_automorphism(d: &TowerDescriptor, a: &AlgebraElement, h: &[u64]) -> Result<AlgebraElement> {
    if h.len() != d.height() {
        return Err(Error::UnsupportedAction(format!("group element has {} entries, tower height {}", h.len(), d.height())));
    }
    let mut out = a.extend_vars(d.height());
    for (i, &hi) in h.iter().enumerate().rev() {
        let order = d.step_degree(i + 1);
        let reps = hi % order;
        if reps == 0 {
            continue;
        }
        let s = generator_action(d, i + 1)?;
        for _ in 0..reps {
            out = s.apply(d, &out);
        }
    }
    Ok(out)
}
