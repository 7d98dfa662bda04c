//! Holomorphic differentials on towers of Kummer and Artin–Schreier
//! extensions of k(x), k = F_{p^h}.
//!
//! The pipeline is: parse a [`tower::TowerDescriptor`], [`tower::validate`]
//! the standing assumptions, [`tower::analyze`] ramification, then compute the
//! genus, the basis ([`boseck::enumerate_basis`]) and the Galois module
//! structure ([`galois`]). [`tower_algebra::holomorphy_check`] recomputes
//! divisors independently of the basis formulas.

pub mod boseck;
pub mod error;
pub mod finite_field;
pub mod fixtures;
pub mod galois;
pub mod json;
pub mod linalg;
pub mod places;
pub mod standard_form;
pub mod tower;
pub mod tower_algebra;
pub mod univariate;

pub use error::{Error, Result};
pub use finite_field::{Field, FieldSpec, Fq};
pub use tower::TowerDescriptor;
