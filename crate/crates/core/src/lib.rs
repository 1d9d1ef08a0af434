//! Collision-flat universal hash families.
//!
//! Closed-form hash families over small finite fields, exhaustive
//! verification of their AU / ACFU / ASU / balanced parameters, seed-size
//! bounds, the incidence-structure (mosaic) view of a hash function, the
//! seed / point extension and concatenation constructions, and exact
//! privacy-amplification evaluation.

pub mod construct;
pub mod designs;
pub mod field;
pub mod group;
pub mod hash_family;
pub mod privacy;
pub mod rational;
pub mod verify;

pub use field::{FieldElement, FieldError, FieldOp, FieldSpec};
pub use group::AbelianGroup;
pub use hash_family::{FamilySpec, FunctionTable, HashError, HashFamily, DEFAULT_BUDGET};
pub use rational::Rational;
