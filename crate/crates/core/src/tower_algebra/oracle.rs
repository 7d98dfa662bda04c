//! Divisor-side holomorphy test. It recomputes valuations of a·dx place by
//! place from the tracked chains and never looks at t^μ.

use std::collections::BTreeSet;

use super::{valuation, AlgebraElement, TrackedPlace};
use crate::boseck::BasisElement;
use crate::error::Result;
use crate::finite_field::Field;
use crate::places::Place;
use crate::tower::{relevant_places, track_place, TowerDescriptor};
use crate::univariate::irreducible_factors;

/// Valuation of elem·dx at the top of the tracked chain.
pub fn differential_valuation(elem: &AlgebraElement, tp: &TrackedPlace, k: &Field) -> Result<i64> {
    let v = valuation(elem, tp, k)? + tp.different();
    Ok(if tp.base.is_infinite() { v - 2 * tp.e_total() as i64 } else { v })
}

/// Differential valuations at every place where a·dx can have a zero or pole.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HolomorphyReport {
    pub holomorphic: bool,
    pub valuations: Vec<(Place, i64)>,
}

impl HolomorphyReport {
    pub fn failing(&self) -> impl Iterator<Item = &(Place, i64)> {
        self.valuations.iter().filter(|(_, v)| *v < 0)
    }
}

pub fn holomorphy_check(d: &TowerDescriptor, b: &BasisElement) -> Result<HolomorphyReport> {
    holomorphy_check_element(d, &b.to_element(d))
}

/// Checks a·dx at all ramified places, all zeros and poles of the
/// coefficients of `a`, and infinity.
pub fn holomorphy_check_element(d: &TowerDescriptor, a: &AlgebraElement) -> Result<HolomorphyReport> {
    let k = d.field();
    let mut places: BTreeSet<Place> = relevant_places(d).into_iter().collect();
    for c in a.terms().values() {
        for f in irreducible_factors(c.num(), k).into_iter().chain(irreducible_factors(c.den(), k)) {
            places.insert(Place::Finite(f));
        }
    }
    let mut valuations = Vec::with_capacity(places.len());
    for place in places {
        let tp = track_place(d, &place).map_err(|(_, _, e)| e)?;
        let v = differential_valuation(a, &tp, k)?;
        valuations.push((place, v));
    }
    Ok(HolomorphyReport { holomorphic: valuations.iter().all(|(_, v)| *v >= 0), valuations })
}
