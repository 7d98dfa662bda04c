//! Tower descriptors, validation of the standing assumptions, ramification
//! profiles and the Riemann–Hurwitz genus.

mod analyze;
mod genus;
mod tracker;
mod validate;

pub use analyze::{analyze, relevant_places, track_place, LevelProfile, RamificationProfile, TowerAnalysis};
pub use genus::{genus, genus_from_analysis, genus_stepwise};
pub use tracker::{splitting_profile, SplittingProfile};
pub use validate::{validate, CheckResult, ValidationReport};

use crate::error::{Error, Result};
use crate::finite_field::Field;
use crate::places::Place;
use crate::tower_algebra::AlgebraElement;

/// Kind of a cyclic step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepKind {
    /// y^n = c
    Kummer { n: u64 },
    /// y^p - y = c
    ArtinSchreier,
}

/// One step L_i = L_{i-1}(y_i); `c` lives over the generators y_1..y_{i-1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepSpec {
    pub kind: StepKind,
    pub c: AlgebraElement,
}

/// Manual override for a valuation the min rule cannot certify:
/// v_{p_{level-1}}(c_level) at the places above `place`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationCertificate {
    pub place: Place,
    pub level: usize,
    pub valuation: i64,
}

/// Image of every generator under one group generator σ_generator (1-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionTable {
    pub generator: usize,
    pub images: Vec<AlgebraElement>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TowerOptions {
    pub assume_uniform: bool,
    pub valuation_certificates: Vec<ValuationCertificate>,
    pub actions: Vec<ActionTable>,
}

/// The tower L = L_r / ... / L_0 = k(x).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerDescriptor {
    field: Field,
    steps: Vec<StepSpec>,
    pub options: TowerOptions,
}

impl TowerDescriptor {
    /// Structural checks only (step count, variable counts); the standing
    /// assumptions are checked by [`validate`].
    pub fn new(field: Field, steps: Vec<StepSpec>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::InvalidTower("a tower needs at least one step".into()));
        }
        for (i, s) in steps.iter().enumerate() {
            if s.c.nvars() != i {
                return Err(Error::InvalidTower(format!(
                    "step {} coefficient must use exactly {} lower generators",
                    i + 1,
                    i
                )));
            }
            if let StepKind::Kummer { n } = s.kind {
                if n < 2 {
                    return Err(Error::InvalidTower(format!("step {}: Kummer degree must be at least 2", i + 1)));
                }
            }
        }
        Ok(TowerDescriptor { field, steps, options: TowerOptions::default() })
    }

    pub fn with_options(mut self, options: TowerOptions) -> Self {
        self.options = options;
        self
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn steps(&self) -> &[StepSpec] {
        &self.steps
    }

    pub fn step(&self, level: usize) -> &StepSpec {
        &self.steps[level - 1]
    }

    /// Number of steps r.
    pub fn height(&self) -> usize {
        self.steps.len()
    }

    /// [L_i : L_{i-1}] for a 1-based level.
    pub fn step_degree(&self, level: usize) -> u64 {
        match self.steps[level - 1].kind {
            StepKind::Kummer { n } => n,
            StepKind::ArtinSchreier => self.field.p(),
        }
    }

    /// Exponent bounds (n_1, ..., n_r).
    pub fn bounds(&self) -> Vec<u64> {
        (1..=self.height()).map(|i| self.step_degree(i)).collect()
    }

    /// [L : K] = Π n_i.
    pub fn degree(&self) -> u64 {
        self.bounds().iter().product()
    }

    /// The sub-tower L_j / K.
    pub fn truncate(&self, j: usize) -> TowerDescriptor {
        let mut t = self.clone();
        t.steps.truncate(j);
        t.options.valuation_certificates.retain(|c| c.level <= j);
        t.options.actions.retain(|a| a.generator <= j);
        for a in &mut t.options.actions {
            a.images.truncate(j);
            for img in &mut a.images {
                *img = img.truncate_vars(j);
            }
        }
        t
    }

    pub fn is_artin_schreier(&self, level: usize) -> bool {
        matches!(self.steps[level - 1].kind, StepKind::ArtinSchreier)
    }

    pub(crate) fn certificate(&self, place: &Place, level: usize) -> Option<i64> {
        self.options
            .valuation_certificates
            .iter()
            .find(|c| c.level == level && c.place == *place)
            .map(|c| c.valuation)
    }
}
