use thiserror::Error;

use crate::finite_field::FieldError;

/// Every failure the library can report. [`Error::code`] gives the stable
/// identifier used in JSON error objects.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("valuation of zero is not representable")]
    ZeroArgument,
    #[error("residue requested at a place where the valuation is negative")]
    NegativeValuation,
    #[error("residues at the infinite place are not supported")]
    InfinitePlaceUnsupported,
    #[error("no approximant exists: {0}")]
    InfeasibleApproximation(String),
    #[error("invalid place: {0}")]
    InvalidPlace(String),
    #[error("tower descriptor is invalid: {0}")]
    InvalidTower(String),
    #[error("tower failed validation: {0}")]
    NotValidated(String),
    #[error("valuation cannot be certified at {place}, level {level}: terms {terms}")]
    ValuationAmbiguous { place: String, level: usize, terms: String },
    #[error("genus halving is not exact: {0}")]
    NonIntegralGenus(String),
    #[error("non-integral invariant: {0}")]
    NonIntegralInvariant(String),
    #[error("intermediate splitting undetermined: {0}")]
    SplittingUndetermined(String),
    #[error("unsupported automorphism: {0}")]
    UnsupportedAction(String),
    #[error("not an Artin-Schreier extension: {0}")]
    NotAnASExtension(String),
    #[error("constant field is the prime field; a constant outside F_p is required")]
    ConstantFieldTooSmall,
    #[error("c is not primitive: {0}")]
    NotPrimitive(String),
    #[error("standard form cannot be reached: {0}")]
    StandardFormFailure(String),
    #[error("Artin-Schreier components share ramified place {0}")]
    SharedRamification(String),
    #[error("divisibility obstruction at {0}")]
    DivisibilityObstruction(String),
    #[error("a1 and z share the pole {0}")]
    SharedPoles(String),
    #[error("Galois image leaves the basis span: {0}")]
    ClosureFailure(String),
    #[error("decomposition inconsistent: {0}")]
    DecompositionInconsistent(String),
    #[error("tower shape not supported by the cyclic decomposition: {0}")]
    NotCyclic(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Field(FieldError::DivisionByZero) => "DivisionByZero",
            Error::Field(FieldError::FieldMismatch(_)) => "FieldMismatch",
            Error::Field(FieldError::NotCoprimeToCharacteristic { .. }) => "NotCoprimeToCharacteristic",
            Error::Field(FieldError::InvalidSpec(_)) => "InvalidFieldSpec",
            Error::ZeroArgument => "ZeroArgument",
            Error::NegativeValuation => "NegativeValuation",
            Error::InfinitePlaceUnsupported => "InfinitePlaceUnsupported",
            Error::InfeasibleApproximation(_) => "InfeasibleApproximation",
            Error::InvalidPlace(_) => "InvalidPlace",
            Error::InvalidTower(_) => "InvalidTower",
            Error::NotValidated(_) => "NotValidated",
            Error::ValuationAmbiguous { .. } => "ValuationAmbiguous",
            Error::NonIntegralGenus(_) => "NonIntegralGenus",
            Error::NonIntegralInvariant(_) => "NonIntegralInvariant",
            Error::SplittingUndetermined(_) => "SplittingUndetermined",
            Error::UnsupportedAction(_) => "UnsupportedAction",
            Error::NotAnASExtension(_) => "NotAnASExtension",
            Error::ConstantFieldTooSmall => "ConstantFieldTooSmall",
            Error::NotPrimitive(_) => "NotPrimitive",
            Error::StandardFormFailure(_) => "StandardFormFailure",
            Error::SharedRamification(_) => "SharedRamification",
            Error::DivisibilityObstruction(_) => "DivisibilityObstruction",
            Error::SharedPoles(_) => "SharedPoles",
            Error::ClosureFailure(_) => "ClosureFailure",
            Error::DecompositionInconsistent(_) => "DecompositionInconsistent",
            Error::NotCyclic(_) => "NotCyclic",
            Error::Parse(_) => "ParseError",
        }
    }

    /// True for errors that signal a broken internal invariant rather than bad input.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(
            self,
            Error::NonIntegralGenus(_)
                | Error::NonIntegralInvariant(_)
                | Error::ClosureFailure(_)
                | Error::DecompositionInconsistent(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_violations_map_to_exit_two() {
        assert!(Error::ClosureFailure(String::new()).is_invariant_violation());
        assert!(Error::DecompositionInconsistent(String::new()).is_invariant_violation());
        assert!(!Error::Parse(String::new()).is_invariant_violation());
        assert!(!Error::NotCyclic(String::new()).is_invariant_violation());
        assert_eq!(Error::Parse(String::new()).code(), "ParseError");
    }
}
