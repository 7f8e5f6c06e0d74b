//! Exact construction and verification of graded elementary (quasi-)Hopf
//! algebras over finite abelian groups.

pub mod abgroup;
pub mod cohomology;
pub mod cyclo;
pub mod error;
pub mod groupalg;
pub mod hopf;
pub mod linalg;
pub mod quasihopf;
pub mod quiver;
pub mod rational;
pub mod report;
pub mod rewriting;
pub mod snf;
pub mod sweep;

pub use abgroup::{AbelianGroup, GroupAutomorphism, GroupElement};
pub use cyclo::{CycloField, CycloNum, FieldExt};
pub use error::{Error, Result};
pub use rational::Rat;
