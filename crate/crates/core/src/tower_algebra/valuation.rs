use super::AlgebraElement;
use crate::error::{Error, Result};
use crate::finite_field::Field;
use crate::places::Place;
use crate::univariate::RatFun;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LevelKind {
    Unramified,
    /// tame (Kummer) ramification, index in R_o
    Tame,
    /// wild (Artin–Schreier) ramification, index in R_p
    Wild,
}

/// Valuation data of one level along the chain above a base place.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelData {
    pub kind: LevelKind,
    /// e(p_i | p_{i-1})
    pub e_step: u64,
    /// v_{p_i}(y_i); for unramified AS levels the minimum over places above, 0
    pub v_y: i64,
    /// v_{p_{i-1}}(c_i), or a lower bound when `v_c_exact` is false
    pub v_c: i64,
    pub v_c_exact: bool,
    /// ramification jump J (0 when unramified)
    pub jump: i64,
}

impl LevelData {
    pub fn is_ramified(&self) -> bool {
        self.kind != LevelKind::Unramified
    }
}

/// A base place of K together with the level data of a representative chain
/// p_0 ⊂ p_1 ⊂ ... ⊂ p_j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrackedPlace {
    pub base: Place,
    pub levels: Vec<LevelData>,
}

impl TrackedPlace {
    pub fn new(base: Place) -> Self {
        TrackedPlace { base, levels: Vec::new() }
    }

    /// The level j of the tracked place p_j.
    pub fn level(&self) -> usize {
        self.levels.len()
    }

    pub fn degree(&self) -> usize {
        self.base.degree()
    }

    pub fn data(&self, level: usize) -> &LevelData {
        &self.levels[level - 1]
    }

    /// e(p_j | p_i) for levels 0 ≤ i ≤ j.
    pub fn e_between(&self, i: usize, j: usize) -> u64 {
        (i + 1..=j).map(|l| self.levels[l - 1].e_step).product()
    }

    /// e(p_top | P).
    pub fn e_total(&self) -> u64 {
        self.e_between(0, self.level())
    }

    /// d(p_top | P) = Σ_{i ramified} e(p_top|p_i)(e_i − 1) J_i.
    pub fn different(&self) -> i64 {
        let top = self.level();
        (1..=top)
            .filter(|&i| self.data(i).is_ramified())
            .map(|i| {
                let l = self.data(i);
                self.e_between(i, top) as i64 * (l.e_step as i64 - 1) * l.jump
            })
            .sum()
    }

    pub fn is_ramified(&self) -> bool {
        self.levels.iter().any(|l| l.is_ramified())
    }

    pub fn truncated(&self, j: usize) -> TrackedPlace {
        TrackedPlace { base: self.base.clone(), levels: self.levels[..j].to_vec() }
    }

    /// Valuation of coef·y^μ at p_top.
    pub fn term_valuation(&self, exps: &[u32], coef: &RatFun, k: &Field) -> Result<i64> {
        let top = self.level();
        let mut v = coef.valuation(&self.base, k)? * self.e_total() as i64;
        for (i, &m) in exps.iter().enumerate() {
            if m == 0 {
                continue;
            }
            if i >= top {
                return Err(Error::InvalidTower(format!(
                    "element uses y{} but the tracked place only reaches level {top}",
                    i + 1
                )));
            }
            v += m as i64 * self.levels[i].v_y * self.e_between(i + 1, top) as i64;
        }
        Ok(v)
    }
}

/// min over terms of the term valuations; always a valid lower bound.
pub fn valuation_lower_bound(a: &AlgebraElement, tp: &TrackedPlace, k: &Field) -> Result<i64> {
    if a.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let mut best = i64::MAX;
    for (e, c) in a.terms() {
        best = best.min(tp.term_valuation(e, c, k)?);
    }
    Ok(best)
}

/// Valuation of `a` at the tracked place, normalized at its top level.
///
/// Terms of equal valuation may only differ in exponents of unramified
/// levels; a tie between different exponents of ramified levels could cancel
/// and is reported as [`Error::ValuationAmbiguous`].
pub fn valuation(a: &AlgebraElement, tp: &TrackedPlace, k: &Field) -> Result<i64> {
    if a.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let mut vals = Vec::with_capacity(a.terms().len());
    for (e, c) in a.terms() {
        vals.push((tp.term_valuation(e, c, k)?, e));
    }
    let m = vals.iter().map(|(v, _)| *v).min().expect("nonempty");
    let ramified_part = |e: &Vec<u32>| -> Vec<u32> {
        e.iter()
            .enumerate()
            .map(|(i, &x)| if i < tp.level() && tp.levels[i].is_ramified() { x } else { 0 })
            .collect()
    };
    let mut minimal = vals.iter().filter(|(v, _)| *v == m).map(|(_, e)| ramified_part(e));
    let first = minimal.next().expect("nonempty");
    if minimal.all(|r| r == first) {
        return Ok(m);
    }
    let terms: Vec<String> = vals
        .iter()
        .filter(|(v, _)| *v == m)
        .map(|(_, e)| format!("{e:?}"))
        .collect();
    Err(Error::ValuationAmbiguous {
        place: tp.base.display(k),
        level: tp.level(),
        terms: terms.join(", "),
    })
}
