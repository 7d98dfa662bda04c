//! Residue-tower tracker: inertia degrees of the places above a K-place.
//!
//! When the residue of c_i depends on residues of lower generators, the least
//! root (canonical polynomial order) is pinned and the choice recorded. In a
//! Galois tower every choice gives the same degrees.

use super::{StepKind, TowerDescriptor};
use crate::error::{Error, Result};
use crate::places::{residue, AsImage, ResidueField};
use crate::tower_algebra::{LevelKind, TrackedPlace};
use crate::univariate::{Poly, RatFun};

const ROOT_SEARCH_LIMIT: u128 = 1 << 16;

/// Inertia degrees f(p_i | P) along the tracked chain, F_0 = 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplittingProfile {
    pub inertia: Vec<u64>,
    pub choices: Vec<String>,
}

impl SplittingProfile {
    pub fn inertia(&self, level: usize) -> u64 {
        self.inertia[level]
    }
}

/// Tracks residue degrees up to level `upto` (inclusive).
pub fn splitting_profile(d: &TowerDescriptor, tp: &TrackedPlace, upto: usize) -> Result<SplittingProfile> {
    let k = d.field();
    let undetermined = |msg: String| Error::SplittingUndetermined(format!("{} {msg}", tp.base.display(k)));
    let rf = ResidueField::new(&tp.base, k).map_err(|_| undetermined("is infinite".into()))?;
    let pi = tp.base.poly().expect("finite place").clone();
    let mut inertia = vec![1u64];
    let mut choices = Vec::new();
    // pins[j] = residue of y_{j+1}/π^{v_y}, when the level split completely
    let mut pins: Vec<Option<Poly>> = Vec::new();

    for l in 1..=upto {
        let f_prev = inertia[l - 1];
        let data = tp.data(l);
        let c = &d.step(l).c;
        let e_below = tp.e_between(0, l - 1);
        let mut pin = None;
        let f = match (d.step(l).kind, data.kind) {
            (_, LevelKind::Wild) => 1,
            (StepKind::Kummer { n }, LevelKind::Tame) if data.e_step == n => 1,
            (StepKind::Kummer { n }, LevelKind::Tame) => {
                if e_below != 1 {
                    return Err(undetermined(format!("level {l}: partial ramification above a ramified level")));
                }
                let g = n / data.e_step;
                let u = unit_residue(c, tp, &pins, data.v_c, f_prev, &rf, &pi, k).map_err(|m| undetermined(format!("level {l}: {m}")))?;
                class_degree(&rf, &u, g, f_prev).ok_or_else(|| undetermined(format!("level {l}: residue field too large")))?
            }
            (StepKind::ArtinSchreier, _) => {
                let a = if e_below == 1 {
                    unit_residue(c, tp, &pins, 0, f_prev, &rf, &pi, k).map_err(|m| undetermined(format!("level {l}: {m}")))?
                } else {
                    let r = c.as_ratfun().ok_or_else(|| undetermined(format!("level {l}: c involves generators above a ramified level")))?;
                    residue(&r, &tp.base, k)?
                };
                match rf.artin_schreier_solve(&a) {
                    AsImage::InImage(_) if f_prev == 1 => {
                        let w = rf.least_as_root(&a).expect("in image");
                        choices.push(format!("level {l}: y{l} pinned to {}", w.display(k)));
                        pin = Some(w);
                        1
                    }
                    AsImage::InImage(_) => 1,
                    AsImage::NotInImage if f_prev % k.p() == 0 => 1,
                    AsImage::NotInImage => k.p(),
                }
            }
            (StepKind::Kummer { n }, _) => {
                if k.q() % n != 1 {
                    return Err(undetermined(format!("level {l}: k lacks the {n}-th roots of unity")));
                }
                let u = if e_below == 1 {
                    unit_residue(c, tp, &pins, data.v_c, f_prev, &rf, &pi, k).map_err(|m| undetermined(format!("level {l}: {m}")))?
                } else {
                    let r = c.as_ratfun().ok_or_else(|| undetermined(format!("level {l}: c involves generators above a ramified level")))?;
                    let v = r.valuation(&tp.base, k)?;
                    if v % n as i64 != 0 {
                        return Err(undetermined(format!("level {l}: no uniformizer normalization for v = {v}")));
                    }
                    residue(&r.mul(&RatFun::from_poly(pi.clone()).pow(-v, k)?, k), &tp.base, k)?
                };
                let f = class_degree(&rf, &u, n, f_prev).ok_or_else(|| undetermined(format!("level {l}: residue field too large")))?;
                if f == 1 && f_prev == 1 {
                    if let Some(w) = rf.least_nth_root(&u, n, ROOT_SEARCH_LIMIT) {
                        choices.push(format!("level {l}: y{l} pinned to {}", w.display(k)));
                        pin = Some(w);
                    }
                }
                f
            }
        };
        pins.push(pin);
        inertia.push(f_prev * f);
    }
    Ok(SplittingProfile { inertia, choices })
}

/// Degree of the residue extension generated by a g-th root of ū over F_{Q^F}.
fn class_degree(rf: &ResidueField<'_>, u: &Poly, g: u64, f_prev: u64) -> Option<u64> {
    let o = rf.kummer_class_order(u, g)?;
    Some(o / num_integer::gcd(o, f_prev))
}

/// Residue of c/π^{v0} at the tracked chain, using pinned lower residues.
/// All lower levels must be unramified here (π stays a uniformizer).
#[allow(clippy::too_many_arguments)]
fn unit_residue(
    c: &crate::tower_algebra::AlgebraElement,
    tp: &TrackedPlace,
    pins: &[Option<Poly>],
    v0: i64,
    f_prev: u64,
    rf: &ResidueField<'_>,
    pi: &Poly,
    k: &crate::finite_field::Field,
) -> std::result::Result<Poly, String> {
    let mut acc = Poly::zero();
    for (exps, coef) in c.terms() {
        let vc = coef.valuation(&tp.base, k).map_err(|e| e.to_string())?;
        let w = vc + exps.iter().enumerate().map(|(j, &m)| m as i64 * tp.levels[j].v_y).sum::<i64>();
        if w > v0 {
            continue;
        }
        if w < v0 {
            return Err(format!("term {exps:?} has valuation {w} below {v0}"));
        }
        let unit = coef.mul(&RatFun::from_poly(pi.clone()).pow(-vc, k).map_err(|e| e.to_string())?, k);
        let mut r = residue(&unit, &tp.base, k).map_err(|e| e.to_string())?;
        for (j, &m) in exps.iter().enumerate() {
            if m == 0 {
                continue;
            }
            match (&pins[j], f_prev) {
                (Some(w), 1) => r = rf.mul(&r, &rf.pow(w, m as u128)),
                _ => return Err(format!("residue of y{} is not pinned", j + 1)),
            }
        }
        acc = rf.add(&acc, &r);
    }
    Ok(rf.reduce(&acc))
}
