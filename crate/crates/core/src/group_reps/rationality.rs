//! Fields of rationality and Frobenius–Schur indicators of irreducible characters.

use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::char_table::CharacterTable;
use super::cyclotomic::CyclotomicNumber;
use super::GroupError;
use crate::abelian_fields::AbelianField;
use crate::arith;

/// Residues `b ∈ (ℤ/e)×` with `χ(g^b) = χ(g)` for every class.
pub fn rationality_stabilizer(table: &CharacterTable, idx: usize) -> Result<Vec<u64>, GroupError> {
    let chi = table.character(idx)?;
    let e = table.exponent();
    Ok(arith::units(e)
        .into_iter()
        .filter(|&b| (0..chi.len()).all(|k| chi[table.power_class(k, b)] == chi[k]))
        .collect())
}

/// `ℚ(χ)` as the subfield of `ℚ(ζ_e)` fixed by [`rationality_stabilizer`].
pub fn field_of_rationality(table: &CharacterTable, idx: usize) -> Result<AbelianField, GroupError> {
    let stab: Vec<i64> = rationality_stabilizer(table, idx)?.into_iter().map(|b| b as i64).collect();
    AbelianField::new(table.exponent(), &stab).map_err(GroupError::Field)
}

/// `(1/|G|) Σ_g χ(g²)`: `1` orthogonal, `-1` symplectic, `0` not self-dual.
pub fn frobenius_schur(table: &CharacterTable, idx: usize) -> Result<i8, GroupError> {
    let chi = table.character(idx)?;
    let mut acc = CyclotomicNumber::zero(table.exponent());
    for (k, cls) in table.classes().iter().enumerate() {
        let v = chi[table.power_class(k, 2)].scale(&BigRational::from_integer(cls.size.into()));
        acc = &acc + &v;
    }
    let total = acc.as_rational().ok_or(GroupError::Internal("indicator is not rational"))?;
    let ind = total / BigRational::from_integer(table.group_order().into());
    if !ind.is_integer() {
        return Err(GroupError::Internal("indicator is not an integer"));
    }
    match ind.to_integer().to_i8() {
        Some(v @ -1..=1) => Ok(v),
        _ => Err(GroupError::Internal("indicator out of range")),
    }
}

/// `Σ_χ FS(χ)·χ(1)`, which equals the number of `g` with `g² = 1`.
pub fn involution_count_from_table(table: &CharacterTable) -> Result<i64, GroupError> {
    let mut total = 0i64;
    for i in 0..table.len() {
        total += i64::from(frobenius_schur(table, i)?) * table.degree(i)? as i64;
    }
    Ok(total)
}
