use super::analyze::{analyze, TowerAnalysis};
use super::tracker::splitting_profile;
use super::TowerDescriptor;
use crate::error::{Error, Result};

/// Riemann–Hurwitz genus of L from the aggregate profile.
pub fn genus(d: &TowerDescriptor) -> Result<u64> {
    genus_from_analysis(d, &analyze(d)?)
}

/// g_L = 1 − N + ½ Σ_P (N/e_P)·d_P·d(P|P).
pub fn genus_from_analysis(d: &TowerDescriptor, a: &TowerAnalysis) -> Result<u64> {
    let n = d.degree() as i64;
    let mut s = 0i64;
    for prof in &a.profiles {
        if n % prof.e as i64 != 0 {
            return Err(Error::NonIntegralGenus(format!("e_P = {} does not divide [L:K] = {n}", prof.e)));
        }
        s += n / prof.e as i64 * prof.degree as i64 * prof.different;
    }
    if s % 2 != 0 {
        return Err(Error::NonIntegralGenus(format!("ramification sum {s} is odd")));
    }
    let g = 1 - n + s / 2;
    u64::try_from(g).map_err(|_| Error::NonIntegralGenus(format!("negative genus {g}")))
}

/// Genera of L_1, ..., L_r computed one step at a time from the splitting
/// data of the ramified places.
pub fn genus_stepwise(d: &TowerDescriptor) -> Result<Vec<u64>> {
    let a = analyze(d)?;
    let mut out = Vec::with_capacity(d.height());
    let mut g_prev: i64 = 0;
    for i in 1..=d.height() {
        let ni = d.step_degree(i) as i64;
        let n_prev: i64 = (1..i).map(|j| d.step_degree(j) as i64).product();
        let mut s = 0i64;
        for prof in &a.profiles {
            let l = prof.level(i);
            if l.jump.is_none() {
                continue;
            }
            let tp = a.tracked_at(d, &prof.place)?;
            let sp = splitting_profile(d, &tp, i - 1)?;
            let f_prev = sp.inertia(i - 1) as i64;
            let e_prev = tp.e_between(0, i - 1) as i64;
            let count = n_prev / (e_prev * f_prev);
            let deg = prof.degree as i64 * f_prev;
            let e = l.e_step as i64;
            // each place above P in L_{i-1} has n_i/e places above it, each with different (e−1)J
            s += count * (ni / e) * (e - 1) * l.jump.unwrap_or(0) * deg;
        }
        if s % 2 != 0 {
            return Err(Error::NonIntegralGenus(format!("step {i}: ramification sum {s} is odd")));
        }
        let g = 1 - ni + ni * g_prev + s / 2;
        if g < 0 {
            return Err(Error::NonIntegralGenus(format!("step {i}: negative genus {g}")));
        }
        out.push(g as u64);
        g_prev = g;
    }
    Ok(out)
}
