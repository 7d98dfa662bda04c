use std::collections::BTreeSet;

use super::{validate, StepKind, TowerDescriptor};
use crate::error::{Error, Result};
use crate::places::Place;
use crate::tower_algebra::{valuation, valuation_lower_bound, LevelData, LevelKind, TrackedPlace};
use crate::univariate::irreducible_factors;

/// Places of K at which some c_i can have a zero or a pole, plus ∞ (last).
pub fn relevant_places(d: &TowerDescriptor) -> Vec<Place> {
    let k = d.field();
    let mut set = BTreeSet::new();
    for s in d.steps() {
        for coef in s.c.terms().values() {
            for f in irreducible_factors(coef.num(), k).into_iter().chain(irreducible_factors(coef.den(), k)) {
                set.insert(Place::Finite(f));
            }
        }
    }
    for c in &d.options.valuation_certificates {
        set.insert(c.place.clone());
    }
    set.insert(Place::Infinity);
    set.into_iter().collect()
}

/// Follows a base place up the tower. On failure returns the offending level
/// together with the tracked data below it.
pub fn track_place(d: &TowerDescriptor, place: &Place) -> std::result::Result<TrackedPlace, (usize, TrackedPlace, Error)> {
    let k = d.field();
    let p = k.p() as i64;
    let mut tp = TrackedPlace::new(place.clone());
    for i in 1..=d.height() {
        let c = &d.step(i).c;
        let cert = d.certificate(place, i);
        let data = match d.step(i).kind {
            StepKind::ArtinSchreier => {
                let lb = valuation_lower_bound(c, &tp, k).map_err(|e| (i, tp.clone(), e))?;
                let (v, exact) = match cert {
                    Some(v) => (v, true),
                    None if lb >= 0 => (lb, false),
                    None => (valuation(c, &tp, k).map_err(|e| (i, tp.clone(), e))?, true),
                };
                if v >= 0 {
                    LevelData { kind: LevelKind::Unramified, e_step: 1, v_y: 0, v_c: v, v_c_exact: exact, jump: 0 }
                } else if v % p != 0 {
                    LevelData { kind: LevelKind::Wild, e_step: p as u64, v_y: v, v_c: v, v_c_exact: true, jump: 1 - v }
                } else {
                    let err = Error::StandardFormFailure(format!(
                        "Artin-Schreier step {i}: v(c) = {v} is negative and divisible by p at {}",
                        place.display(k)
                    ));
                    return Err((i, tp, err));
                }
            }
            StepKind::Kummer { n } => {
                let v = match cert {
                    Some(v) => v,
                    None => valuation(c, &tp, k).map_err(|e| (i, tp.clone(), e))?,
                };
                let n = n as i64;
                let g = num_integer::gcd(n, v);
                let e = n / g;
                if e > 1 {
                    LevelData { kind: LevelKind::Tame, e_step: e as u64, v_y: v / g, v_c: v, v_c_exact: true, jump: 1 }
                } else {
                    LevelData { kind: LevelKind::Unramified, e_step: 1, v_y: v / n, v_c: v, v_c_exact: true, jump: 0 }
                }
            }
        };
        tp.levels.push(data);
    }
    Ok(tp)
}

/// Per-level ramification record at a ramified base place.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelProfile {
    pub level: usize,
    pub kind: LevelKind,
    /// v_{P,i} = v_{p_i}(y_i)
    pub v: i64,
    /// v_{p_{i-1}}(c_i)
    pub v_c: i64,
    pub e_step: u64,
    /// e(P | p_i)
    pub e_above: u64,
    pub jump: Option<i64>,
}

/// Ramification data of a K-place ramified somewhere in the tower.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamificationProfile {
    pub place: Place,
    pub degree: usize,
    pub levels: Vec<LevelProfile>,
    /// e_P = e(P | P)
    pub e: u64,
    /// d(P | P)
    pub different: i64,
}

impl RamificationProfile {
    pub fn from_tracked(tp: &TrackedPlace) -> Self {
        let top = tp.level();
        let levels = (1..=top)
            .map(|i| {
                let l = tp.data(i);
                LevelProfile {
                    level: i,
                    kind: l.kind,
                    v: l.v_y,
                    v_c: l.v_c,
                    e_step: l.e_step,
                    e_above: tp.e_between(i, top),
                    jump: l.is_ramified().then_some(l.jump),
                }
            })
            .collect();
        RamificationProfile { place: tp.base.clone(), degree: tp.degree(), levels, e: tp.e_total(), different: tp.different() }
    }

    pub fn level(&self, i: usize) -> &LevelProfile {
        &self.levels[i - 1]
    }

    /// R_{p,P}
    pub fn wild_levels(&self) -> Vec<usize> {
        self.levels.iter().filter(|l| l.kind == LevelKind::Wild).map(|l| l.level).collect()
    }

    /// R_{o,P}
    pub fn tame_levels(&self) -> Vec<usize> {
        self.levels.iter().filter(|l| l.kind == LevelKind::Tame).map(|l| l.level).collect()
    }
}

/// Tracked data at every relevant place and the profiles of the ramified ones.
#[derive(Debug, Clone)]
pub struct TowerAnalysis {
    pub tracked: Vec<TrackedPlace>,
    pub profiles: Vec<RamificationProfile>,
}

impl TowerAnalysis {
    /// Tracked data at any place, computing it if the place is not stored.
    pub fn tracked_at(&self, d: &TowerDescriptor, place: &Place) -> Result<TrackedPlace> {
        if let Some(tp) = self.tracked.iter().find(|t| t.base == *place) {
            return Ok(tp.clone());
        }
        track_place(d, place).map_err(|(_, _, e)| e)
    }

    pub fn profile(&self, place: &Place) -> Option<&RamificationProfile> {
        self.profiles.iter().find(|p| p.place == *place)
    }

    pub fn infinity(&self) -> &TrackedPlace {
        self.tracked.iter().find(|t| t.base.is_infinite()).expect("infinity is always tracked")
    }
}

/// Ramification profile of a validated tower.
pub fn analyze(d: &TowerDescriptor) -> Result<TowerAnalysis> {
    let mut tracked = Vec::new();
    for place in relevant_places(d) {
        match track_place(d, &place) {
            Ok(tp) => tracked.push(tp),
            Err((_, _, e @ Error::ValuationAmbiguous { .. })) => return Err(e),
            Err(_) => {}
        }
    }
    let report = validate(d);
    if !report.passed() {
        return Err(Error::NotValidated(report.summary()));
    }
    let profiles = tracked.iter().filter(|t| t.is_ramified()).map(RamificationProfile::from_tracked).collect();
    Ok(TowerAnalysis { tracked, profiles })
}
