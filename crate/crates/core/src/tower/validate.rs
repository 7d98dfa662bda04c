use super::analyze::{relevant_places, track_place};
use super::{StepKind, TowerDescriptor};
use crate::error::Error;
use crate::places::Place;
use crate::tower_algebra::{LevelKind, TrackedPlace};

/// Outcome of one standing-assumption check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub id: char,
    pub description: &'static str,
    pub passed: bool,
    pub failures: Vec<String>,
}

/// Pass/fail per check (a)–(g) plus informational notes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, id: char) -> &CheckResult {
        self.checks.iter().find(|c| c.id == id).expect("known check id")
    }

    pub fn failed_ids(&self) -> Vec<char> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.id).collect()
    }

    /// One line naming the failed checks and their first failure.
    pub fn summary(&self) -> String {
        let parts: Vec<String> = self
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("({}) {}", c.id, c.failures.first().map(String::as_str).unwrap_or("failed")))
            .collect();
        if parts.is_empty() {
            "all checks passed".into()
        } else {
            parts.join("; ")
        }
    }
}

const DESCRIPTIONS: [(char, &str); 7] = [
    ('a', "roots of unity present for every Kummer degree"),
    ('b', "every c_i nonzero and in reduced monomial form"),
    ('c', "Artin-Schreier steps in global standard form"),
    ('d', "Kummer steps in global standard form"),
    ('e', "no d > 1 divides gcd(v(c_i), n_i) at all ramified places"),
    ('f', "infinity unramified at every level"),
    ('g', "every Artin-Schreier step has a ramified place"),
];

/// Checks the standing assumptions on a tower. Never fails; problems are
/// report entries.
pub fn validate(d: &TowerDescriptor) -> ValidationReport {
    let k = d.field();
    let mut fails: Vec<Vec<String>> = vec![Vec::new(); 7];
    let mut notes = Vec::new();
    let idx = |c: char| (c as u8 - b'a') as usize;

    for (i, s) in d.steps().iter().enumerate() {
        let level = i + 1;
        if let StepKind::Kummer { n } = s.kind {
            match k.has_nth_roots_of_unity(n) {
                Ok(true) => {}
                Ok(false) if d.options.assume_uniform => notes.push(format!(
                    "step {level}: k lacks the {n}-th roots of unity; accepted under assume_uniform (extension not Galois)"
                )),
                Ok(false) => fails[idx('a')].push(format!("step {level}: {n} does not divide q - 1 = {}", k.q() - 1)),
                Err(_) => fails[idx('a')].push(format!("step {level}: n = {n} is divisible by p = {}", k.p())),
            }
        }
        if s.c.is_zero() {
            fails[idx('b')].push(format!("step {level}: c is zero"));
        } else if !s.c.is_reduced(&d.bounds()[..i]) {
            fails[idx('b')].push(format!("step {level}: c is not in reduced monomial form"));
        }
        if s.c.level() > 0 && s.c.terms().len() > 1 {
            notes.push(format!(
                "step {level}: c involves lower generators; valuations certified by the minimum rule at one representative chain per place"
            ));
        }
    }

    if !fails[idx('b')].is_empty() || !fails[idx('a')].is_empty() && !d.options.assume_uniform {
        let blocked = if fails[idx('b')].is_empty() { 'a' } else { 'b' };
        for c in ['c', 'd', 'e', 'f', 'g'] {
            fails[idx(c)].push(format!("not evaluated: check ({blocked}) failed"));
        }
        return finish(fails, notes);
    }

    let places = relevant_places(d);
    let mut tracked: Vec<TrackedPlace> = Vec::new();
    for place in &places {
        match track_place(d, place) {
            Ok(tp) => tracked.push(tp),
            Err((level, partial, err)) => {
                let id = if d.is_artin_schreier(level) { 'c' } else { 'd' };
                let msg = match &err {
                    Error::ValuationAmbiguous { .. } => format!(
                        "step {level} at {}: {err} (supply a valuation certificate)",
                        place.display(k)
                    ),
                    _ => format!("step {level} at {}: {err}", place.display(k)),
                };
                fails[idx(id)].push(msg);
                if level < d.height() {
                    notes.push(format!(
                        "levels above {level} not examined at {} ({} levels tracked)",
                        place.display(k),
                        partial.level()
                    ));
                }
            }
        }
    }

    for (i, s) in d.steps().iter().enumerate() {
        let level = i + 1;
        let at_level = || tracked.iter().filter(|tp| tp.level() >= level);
        match s.kind {
            StepKind::Kummer { n } => {
                let n = n as i64;
                let mut g_all = 0i64;
                let mut any_ramified = false;
                for tp in at_level() {
                    let l = tp.data(level);
                    let v = l.v_c;
                    let at = tp.base.display(k);
                    match (&tp.base, l.kind) {
                        (Place::Infinity, _) => {
                            if v > 0 || v % n != 0 {
                                fails[idx('d')].push(format!("step {level} at inf: need v <= 0 with n | v, got v = {v}"));
                            }
                        }
                        (_, LevelKind::Tame) => {
                            any_ramified = true;
                            g_all = num_integer::gcd(g_all, num_integer::gcd(n, v));
                            if !(0 < v && v < n) {
                                fails[idx('d')].push(format!("step {level} at {at}: ramified with v = {v} outside [0, {n})"));
                            }
                        }
                        _ => {
                            if v != 0 {
                                fails[idx('d')].push(format!("step {level} at {at}: unramified with v = {v} != 0"));
                            }
                        }
                    }
                }
                if !any_ramified {
                    fails[idx('e')].push(format!("step {level}: no ramified place, so d = {n} divides every gcd"));
                } else if g_all > 1 {
                    fails[idx('e')].push(format!("step {level}: d = {g_all} divides gcd(v(c), n) at every ramified place"));
                }
            }
            StepKind::ArtinSchreier => {
                if !at_level().any(|tp| tp.data(level).kind == LevelKind::Wild) {
                    fails[idx('g')].push(format!("step {level}: no ramified place (constant extension or trivial)"));
                }
            }
        }
    }

    if let Some(inf) = tracked.iter().find(|t| t.base.is_infinite()) {
        for (i, l) in inf.levels.iter().enumerate() {
            if l.is_ramified() {
                fails[idx('f')].push(format!("step {}: infinity ramified with e = {}", i + 1, l.e_step));
            }
        }
    }
    finish(fails, notes)
}

fn finish(fails: Vec<Vec<String>>, notes: Vec<String>) -> ValidationReport {
    let checks = DESCRIPTIONS
        .iter()
        .zip(fails)
        .map(|(&(id, description), failures)| CheckResult { id, description, passed: failures.is_empty(), failures })
        .collect();
    ValidationReport { checks, notes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::Field;
    use crate::fixtures;
    use crate::tower::StepSpec;
    use crate::tower_algebra::AlgebraElement;
    use crate::univariate::{Poly, RatFun};

    fn one_step(p: u64, kind: StepKind, c: RatFun) -> TowerDescriptor {
        let k = Field::prime(p).unwrap();
        TowerDescriptor::new(k, vec![StepSpec { kind, c: AlgebraElement::from_ratfun(c, 0) }]).unwrap()
    }

    #[test]
    fn elliptic_passes() {
        assert!(validate(&fixtures::elliptic_f5()).passed());
    }

    #[test]
    fn as_pole_divisible_by_p_fails_c() {
        let k = Field::prime(3).unwrap();
        let c = RatFun::x().pow(-3, &k).unwrap();
        let r = validate(&one_step(3, StepKind::ArtinSchreier, c));
        assert_eq!(r.failed_ids(), vec!['c', 'g']);
    }

    #[test]
    fn square_kummer_fails_e() {
        let k = Field::prime(5).unwrap();
        let c = RatFun::from_poly(Poly::from_ints(&k, &[0, -1, 1]).pow(2, &k));
        let r = validate(&one_step(5, StepKind::Kummer { n: 4 }, c));
        assert!(!r.check('e').passed);
        assert!(r.check('d').passed);
    }

    #[test]
    fn missing_roots_of_unity() {
        let k = Field::prime(3).unwrap();
        let c = RatFun::from_poly(Poly::from_ints(&k, &[0, 1, 0, 0, 1]));
        let mut d = one_step(3, StepKind::Kummer { n: 4 }, c);
        assert!(!validate(&d).check('a').passed);
        d.options.assume_uniform = true;
        let r = validate(&d);
        assert!(r.check('a').passed);
        assert!(!r.notes.is_empty());
    }
}
