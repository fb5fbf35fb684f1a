//! Exact Brauer-class arithmetic over abelian number fields.

pub mod abelian_fields;
pub mod arith;
pub mod config;
pub mod cyclic_rationals;

pub use abelian_fields::{AbelianField, Decomposition, FieldError, GaloisElement, Place};
pub use config::Limits;
pub use cyclic_rationals::CyclicRational;
pub mod brauer;
pub mod quaternion;

pub use brauer::{BrauerError, CsaClass};
pub use quaternion::{hilbert_symbol, local_solubility_oracle, quaternion_class, QuaternionSymbol, RationalPlace};
pub mod group_reps;
pub mod langlands_constraints;
