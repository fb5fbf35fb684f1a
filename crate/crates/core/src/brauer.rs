//! Brauer classes over abelian fields as vectors of local invariants.
//!
//! A class is valid when its archimedean entries lie in `½ℤ/ℤ` (and vanish at
//! complex places) and all entries sum to zero in ℚ/ℤ. Over a number field the
//! index of the class equals its exponent, so [`CsaClass::index`] is the lcm of
//! the local orders.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian_fields::{AbelianField, FieldError, FieldSpec, Place};
use crate::cyclic_rationals::CyclicRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BrauerError {
    #[error("archimedean overflow: invariant {value} at {place} is not in 1/2 Z/Z")]
    ArchimedeanOverflow { place: Place, value: CyclicRational },
    #[error("complex place nonzero: invariant {value} at {place}")]
    ComplexPlaceNonzero { place: Place, value: CyclicRational },
    #[error("reciprocity failure: invariants sum to {0}")]
    ReciprocityFailure(CyclicRational),
    #[error("base field mismatch")]
    FieldMismatch,
    #[error("extension of scalars is only supported from Q")]
    UnsupportedBase,
    #[error("target field does not contain the base field")]
    NotAnExtension,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A class in `Br(K)` for an abelian field `K`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CsaClass {
    field: AbelianField,
    inv: BTreeMap<Place, CyclicRational>,
}

/// What happens to one nonzero local invariant after base change.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalSplitting {
    pub place: String,
    pub invariant: CyclicRational,
    pub local_degree: u64,
    pub extended: CyclicRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitReport {
    pub splits: bool,
    pub certificate: Vec<LocalSplitting>,
}

impl CsaClass {
    /// Checks the exact-sequence conditions and returns the class.
    pub fn validate(
        field: &AbelianField,
        raw: impl IntoIterator<Item = (Place, CyclicRational)>,
    ) -> Result<Self, BrauerError> {
        let mut inv = BTreeMap::new();
        for (place, value) in raw {
            if !field.has_place(&place) {
                return Err(FieldError::UnknownPlace(place.to_string()).into());
            }
            if value.is_zero() {
                continue;
            }
            match place {
                Place::Complex(_) => return Err(BrauerError::ComplexPlaceNonzero { place, value }),
                Place::Real(_) if !value.is_killed_by(2) => {
                    return Err(BrauerError::ArchimedeanOverflow { place, value })
                }
                _ => {}
            }
            inv.insert(place, value);
        }
        let total = inv.values().fold(CyclicRational::zero(), |acc, x| acc.add(x));
        if !total.is_zero() {
            return Err(BrauerError::ReciprocityFailure(total));
        }
        Ok(CsaClass { field: field.clone(), inv })
    }

    /// Like [`validate`](Self::validate) but with textual place labels.
    pub fn from_labels<'a>(
        field: &AbelianField,
        raw: impl IntoIterator<Item = (&'a str, CyclicRational)>,
    ) -> Result<Self, BrauerError> {
        let mut parsed = Vec::new();
        for (label, value) in raw {
            parsed.push((field.parse_place(label)?, value));
        }
        Self::validate(field, parsed)
    }

    pub fn trivial(field: &AbelianField) -> Self {
        CsaClass { field: field.clone(), inv: BTreeMap::new() }
    }

    pub fn field(&self) -> &AbelianField {
        &self.field
    }

    /// Nonzero local invariants.
    pub fn invariants(&self) -> &BTreeMap<Place, CyclicRational> {
        &self.inv
    }

    pub fn invariant_at(&self, v: &Place) -> CyclicRational {
        self.inv.get(v).cloned().unwrap_or_default()
    }

    pub fn is_trivial(&self) -> bool {
        self.inv.is_empty()
    }

    pub fn tensor(&self, other: &CsaClass) -> Result<CsaClass, BrauerError> {
        if self.field != other.field {
            return Err(BrauerError::FieldMismatch);
        }
        let mut inv = self.inv.clone();
        for (v, x) in &other.inv {
            let sum = inv.get(v).map(|y| y.add(x)).unwrap_or_else(|| x.clone());
            if sum.is_zero() {
                inv.remove(v);
            } else {
                inv.insert(*v, sum);
            }
        }
        Ok(CsaClass { field: self.field.clone(), inv })
    }

    pub fn opposite(&self) -> CsaClass {
        CsaClass {
            field: self.field.clone(),
            inv: self.inv.iter().map(|(v, x)| (*v, x.negate())).collect(),
        }
    }

    /// Schur index, computed as the exponent.
    pub fn index(&self) -> BigUint {
        self.inv.values().fold(BigUint::one(), |acc, x| acc.lcm(&x.order()))
    }

    /// Base change from ℚ to `target`: each place `w | v` gets `[L_w : ℚ_v]·inv_v`.
    pub fn extend_to(&self, target: &AbelianField) -> Result<CsaClass, BrauerError> {
        if !self.field.is_rationals() {
            return Err(BrauerError::UnsupportedBase);
        }
        if !self.field.is_subfield_of(target) {
            return Err(BrauerError::NotAnExtension);
        }
        let mut raw = Vec::new();
        for (v, x) in &self.inv {
            let (places, degree) = self.local_data(v, target)?;
            let extended = x.scalar_mul(degree);
            for w in places {
                raw.push((w, extended.clone()));
            }
        }
        Self::validate(target, raw)
    }

    fn local_data(&self, v: &Place, target: &AbelianField) -> Result<(Vec<Place>, u64), BrauerError> {
        Ok(match v {
            Place::Finite { p, .. } => {
                let dec = target.decompose_prime(*p)?;
                let degree = dec.local_degree();
                (dec.places, degree)
            }
            _ => {
                let places = target.archimedean_places();
                let degree = if target.is_totally_real() { 1 } else { 2 };
                (places, degree)
            }
        })
    }

    /// Whether `self ⊗ L` is split, with a per-place certificate.
    pub fn splits_over(&self, target: &AbelianField) -> Result<SplitReport, BrauerError> {
        if !self.field.is_rationals() {
            return Err(BrauerError::UnsupportedBase);
        }
        if !self.field.is_subfield_of(target) {
            return Err(BrauerError::NotAnExtension);
        }
        let mut certificate = Vec::new();
        for (v, x) in &self.inv {
            let (_, local_degree) = self.local_data(v, target)?;
            certificate.push(LocalSplitting {
                place: v.to_string(),
                invariant: x.clone(),
                local_degree,
                extended: x.scalar_mul(local_degree),
            });
        }
        let splits = certificate.iter().all(|c| c.extended.is_zero());
        Ok(SplitReport { splits, certificate })
    }
}

/// Wire form: `{"field": {...}, "inv": {"2:0": "1/2", "inf:real:0": "1/2"}}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CsaClassJson {
    pub field: FieldSpec,
    #[serde(default)]
    pub inv: BTreeMap<String, CyclicRational>,
}

impl From<&CsaClass> for CsaClassJson {
    fn from(c: &CsaClass) -> Self {
        CsaClassJson {
            field: FieldSpec::from(&c.field),
            inv: c.inv.iter().map(|(v, x)| (v.to_string(), x.clone())).collect(),
        }
    }
}

impl TryFrom<CsaClassJson> for CsaClass {
    type Error = BrauerError;
    fn try_from(j: CsaClassJson) -> Result<Self, Self::Error> {
        let field = AbelianField::try_from(j.field)?;
        CsaClass::from_labels(&field, j.inv.iter().map(|(k, v)| (k.as_str(), v.clone())))
    }
}

impl Serialize for CsaClass {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CsaClassJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CsaClass {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let j = CsaClassJson::deserialize(deserializer)?;
        CsaClass::try_from(j).map_err(serde::de::Error::custom)
    }
}
