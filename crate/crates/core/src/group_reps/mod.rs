//! Characters of finite groups and the rationality questions they raise.

mod char_table;
mod cyclotomic;
mod enveloping;
mod group;
mod linalg;
mod rationality;
mod schur;

use thiserror::Error;

use crate::abelian_fields::FieldError;
use crate::quaternion::QuaternionError;

pub use char_table::{character_table, character_table_with_limits, CharacterTable, ConjugacyClass};
pub use cyclotomic::{phi as cyclotomic_degree, CyclotomicNumber};
pub use enveloping::{enveloping_center_check, CenterReport, CenterStructure, MatrixRep};
pub use group::FiniteGroup;
pub use rationality::{field_of_rationality, frobenius_schur, involution_count_from_table, rationality_stabilizer};
pub use schur::{schur_index_quaternion_case, schur_index_quaternion_case_with_limits, SchurOutcome};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("invalid group JSON: {0}")]
    Json(String),
    #[error("unknown builtin group {0:?}")]
    BadBuiltin(String),
    #[error("group order {order} exceeds the configured cap {cap}")]
    TooLarge { order: usize, cap: usize },
    #[error("no character with index {0}")]
    NoSuchCharacter(usize),
    #[error("not a representation: {0}")]
    NotARepresentation(String),
    #[error("character table does not belong to this group")]
    TableMismatch,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Quaternion(#[from] QuaternionError),
    #[error("internal consistency check failed: {0}")]
    Internal(&'static str),
}
