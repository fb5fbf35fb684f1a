//! Abelian number fields presented as subfields of cyclotomic fields.
//!
//! A field `K ⊆ ℚ(ζ_m)` is given by its conductor `m` and the subgroup
//! `H ≤ (ℤ/m)×` fixing it, so `Gal(K/ℚ) ≅ (ℤ/m)×/H`. Every question about
//! places, splitting and the Galois action then becomes finite group theory
//! on residues mod `m`.
//!
//! Places over a rational prime `p` are the cosets of `D_p·H`, where `D_p` is
//! the decomposition group; archimedean places are cosets of `H` (real case)
//! or of `⟨-1⟩·H` (complex case). A place is named by the rank of its coset
//! when cosets are sorted by minimal representative.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;
use crate::config::Limits;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("conductor {conductor} exceeds the configured cap {cap}")]
    ConductorTooLarge { conductor: u64, cap: u64 },
    #[error("generator {generator} not coprime to conductor {conductor}")]
    NotCoprime { generator: i64, conductor: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a square-free integer other than 0 and 1")]
    BadQuadraticRadicand(i64),
    #[error("place {0} does not exist in this field")]
    UnknownPlace(String),
    #[error("invalid place label {0:?}")]
    BadPlaceLabel(String),
    #[error("Galois action on complex places is not defined here")]
    ComplexPlaceAction,
}

/// `K ⊆ ℚ(ζ_m)` with `m` the true conductor and `H` stored as a sorted element list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianField {
    conductor: u64,
    subgroup: Vec<u64>,
}

/// A place of an [`AbelianField`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Finite { p: u64, index: usize },
    Real(usize),
    Complex(usize),
}

impl Place {
    pub fn is_finite(&self) -> bool {
        matches!(self, Place::Finite { .. })
    }

    pub fn is_archimedean(&self) -> bool {
        !self.is_finite()
    }

    pub fn residue_char(&self) -> Option<u64> {
        match self {
            Place::Finite { p, .. } => Some(*p),
            _ => None,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite { p, index } => write!(f, "{p}:{index}"),
            Place::Real(k) => write!(f, "inf:real:{k}"),
            Place::Complex(k) => write!(f, "inf:complex:{k}"),
        }
    }
}

/// Parses `"p:k"`, `"inf:real:k"`, `"inf:complex:k"`. A bare `"p"` means `"p:0"`.
impl FromStr for Place {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FieldError::BadPlaceLabel(s.to_string());
        let parts: Vec<&str> = s.trim().split(':').collect();
        match parts.as_slice() {
            ["inf", "real", k] => Ok(Place::Real(k.parse().map_err(|_| bad())?)),
            ["inf", "complex", k] => Ok(Place::Complex(k.parse().map_err(|_| bad())?)),
            [p, k] => Ok(Place::Finite {
                p: p.parse().map_err(|_| bad())?,
                index: k.parse().map_err(|_| bad())?,
            }),
            [p] if *p != "inf" => Ok(Place::Finite { p: p.parse().map_err(|_| bad())?, index: 0 }),
            _ => Err(bad()),
        }
    }
}

/// An automorphism of `K`, i.e. a class in `(ℤ/m)×/H`, stored by its minimal representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaloisElement {
    residue: u64,
}

impl GaloisElement {
    pub fn residue(&self) -> u64 {
        self.residue
    }
}

/// Splitting data of a rational prime in `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub p: u64,
    /// Ramification index.
    pub e: u64,
    /// Inertia degree.
    pub f: u64,
    /// Number of places over `p`.
    pub g: u64,
    pub places: Vec<Place>,
    /// `D_p·H`, sorted.
    stabilizer: Vec<u64>,
    /// Minimal coset representatives, in place order.
    reps: Vec<u64>,
}

impl Decomposition {
    /// Local degree `[K_v : ℚ_p] = e·f`.
    pub fn local_degree(&self) -> u64 {
        self.e * self.f
    }
}

/// Closure of `gens` under multiplication mod `m`, sorted.
fn closure(m: u64, gens: &[u64]) -> Vec<u64> {
    let one = 1 % m;
    let mut seen = vec![false; m as usize];
    seen[one as usize] = true;
    let mut out = vec![one];
    let mut i = 0;
    while i < out.len() {
        let x = out[i];
        for &g in gens {
            let y = arith::mul_mod(x, g % m, m);
            if !seen[y as usize] {
                seen[y as usize] = true;
                out.push(y);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

/// A small generating set of a sorted subgroup, chosen greedily.
fn generating_set(m: u64, group: &[u64]) -> Vec<u64> {
    let mut gens = Vec::new();
    let mut span = closure(m, &gens);
    for &x in group {
        if span.binary_search(&x).is_err() {
            gens.push(x);
            span = closure(m, &gens);
        }
    }
    gens
}

/// Minimal element of the coset `x·S`.
fn coset_min(m: u64, x: u64, subgroup: &[u64]) -> u64 {
    subgroup.iter().map(|&s| arith::mul_mod(x, s, m)).min().unwrap_or(0)
}

/// Minimal coset representatives of `S` in `(ℤ/m)×`, increasing.
fn coset_reps(m: u64, subgroup: &[u64]) -> Vec<u64> {
    let mut assigned = vec![false; m as usize];
    let mut reps = Vec::new();
    for u in arith::units(m) {
        if assigned[u as usize] {
            continue;
        }
        reps.push(u);
        for &s in subgroup {
            assigned[arith::mul_mod(u, s, m) as usize] = true;
        }
    }
    reps
}

impl AbelianField {
    /// `make_field` with the default limits.
    pub fn new(conductor: u64, generators: &[i64]) -> Result<Self, FieldError> {
        Self::with_limits(conductor, generators, &Limits::default())
    }

    pub fn with_limits(conductor: u64, generators: &[i64], limits: &Limits) -> Result<Self, FieldError> {
        if conductor == 0 {
            return Err(FieldError::ZeroConductor);
        }
        if conductor > limits.max_conductor {
            return Err(FieldError::ConductorTooLarge { conductor, cap: limits.max_conductor });
        }
        let mut gens = Vec::with_capacity(generators.len());
        for &g in generators {
            let r = arith::residue(g, conductor);
            if arith::gcd(r, conductor) != 1 {
                return Err(FieldError::NotCoprime { generator: g, conductor });
            }
            gens.push(r);
        }
        let subgroup = closure(conductor, &gens);
        Ok(Self::canonicalize(conductor, subgroup))
    }

    /// Reduces to the least `m' | m` such that `H` contains `ker((ℤ/m)× → (ℤ/m')×)`.
    fn canonicalize(m: u64, subgroup: Vec<u64>) -> Self {
        let units = arith::units(m);
        for d in arith::divisors(m) {
            let kernel_inside = units
                .iter()
                .filter(|&&u| u % d == 1 % d)
                .all(|u| subgroup.binary_search(u).is_ok());
            if kernel_inside {
                let mut reduced: Vec<u64> = subgroup.iter().map(|h| h % d).collect();
                reduced.sort_unstable();
                reduced.dedup();
                return AbelianField { conductor: d, subgroup: reduced };
            }
        }
        unreachable!("the full conductor always qualifies")
    }

    pub fn rationals() -> Self {
        AbelianField { conductor: 1, subgroup: vec![0] }
    }

    /// The full cyclotomic field `ℚ(ζ_m)`.
    pub fn cyclotomic(m: u64) -> Result<Self, FieldError> {
        Self::new(m, &[])
    }

    /// `ℚ(√d)` for square-free `d ∉ {0, 1}`, cut out by the Kronecker character of its discriminant.
    pub fn quadratic(d: i64) -> Result<Self, FieldError> {
        if d == 0 || d == 1 || !arith::is_squarefree(d) {
            return Err(FieldError::BadQuadraticRadicand(d));
        }
        let disc = if d.rem_euclid(4) == 1 { d } else { 4 * d };
        let m = disc.unsigned_abs();
        let kernel: Vec<u64> = arith::units(m)
            .into_iter()
            .filter(|&u| arith::kronecker(disc, u) == 1)
            .collect();
        Ok(Self::canonicalize(m, kernel))
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// `H` as a sorted list of residues mod the conductor.
    pub fn subgroup(&self) -> &[u64] {
        &self.subgroup
    }

    pub fn generators(&self) -> Vec<u64> {
        generating_set(self.conductor, &self.subgroup)
    }

    pub fn degree(&self) -> u64 {
        arith::euler_phi(self.conductor) / self.subgroup.len() as u64
    }

    pub fn is_rationals(&self) -> bool {
        self.conductor == 1
    }

    pub fn contains_residue(&self, x: u64) -> bool {
        self.subgroup.binary_search(&(x % self.conductor)).is_ok()
    }

    pub fn is_totally_real(&self) -> bool {
        self.contains_residue(self.conductor - 1)
    }

    /// True iff `self ⊆ other` inside `ℚ^ab`.
    pub fn is_subfield_of(&self, other: &AbelianField) -> bool {
        other.conductor % self.conductor == 0
            && other.subgroup.iter().all(|&h| self.contains_residue(h))
    }

    pub fn decompose_prime(&self, p: u64) -> Result<Decomposition, FieldError> {
        if !arith::is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        let m = self.conductor;
        let (a, rest) = arith::split_prime_power(m, p);
        let pa = p.pow(a);
        let units = arith::units(m);
        let inertia: Vec<u64> = units.iter().copied().filter(|&u| u % rest == 1 % rest).collect();
        let frobenius = arith::crt(1 % pa, pa, p % rest, rest);

        let h_gens = self.generators();
        let mut gens = h_gens.clone();
        gens.extend(generating_set(m, &inertia));
        let inertia_h = closure(m, &gens);
        gens.push(frobenius);
        let stabilizer = closure(m, &gens);

        let h = self.subgroup.len() as u64;
        let e = inertia_h.len() as u64 / h;
        let f = stabilizer.len() as u64 / h / e;
        let g = units.len() as u64 / stabilizer.len() as u64;
        let reps = coset_reps(m, &stabilizer);
        debug_assert_eq!(reps.len() as u64, g);
        let places = (0..reps.len()).map(|index| Place::Finite { p, index }).collect();
        Ok(Decomposition { p, e, f, g, places, stabilizer, reps })
    }

    pub fn places_over(&self, p: u64) -> Result<Vec<Place>, FieldError> {
        Ok(self.decompose_prime(p)?.places)
    }

    /// Real places if `K` is totally real, otherwise complex places.
    pub fn archimedean_places(&self) -> Vec<Place> {
        let deg = self.degree() as usize;
        if self.is_totally_real() {
            (0..deg).map(Place::Real).collect()
        } else {
            (0..deg / 2).map(Place::Complex).collect()
        }
    }

    /// Order `w` of the group of roots of unity in `K`.
    pub fn roots_of_unity_order(&self) -> u64 {
        let m = self.conductor;
        let d = arith::divisors(m)
            .into_iter()
            .filter(|&d| self.subgroup.iter().all(|&h| h % d == 1 % d))
            .max()
            .unwrap_or(1);
        if d % 2 == 0 {
            d
        } else {
            2 * d
        }
    }

    pub fn galois_group(&self) -> Vec<GaloisElement> {
        coset_reps(self.conductor, &self.subgroup)
            .into_iter()
            .map(|residue| GaloisElement { residue })
            .collect()
    }

    /// The automorphism `ζ_m ↦ ζ_m^b`.
    pub fn galois_element(&self, b: i64) -> Result<GaloisElement, FieldError> {
        let m = self.conductor;
        let r = arith::residue(b, m);
        if arith::gcd(r, m) != 1 {
            return Err(FieldError::NotCoprime { generator: b, conductor: m });
        }
        Ok(GaloisElement { residue: coset_min(m, r, &self.subgroup) })
    }

    /// The exponent `b'` with `σ(ζ) = ζ^{b'}` for `ζ` a primitive `order`-th root of unity in `K`.
    /// Returns `None` unless `order` divides [`roots_of_unity_order`](Self::roots_of_unity_order).
    pub fn cyclotomic_character(&self, sigma: &GaloisElement, order: u64) -> Option<u64> {
        if order == 0 || self.roots_of_unity_order() % order != 0 {
            return None;
        }
        let m = self.conductor;
        let mut b = sigma.residue;
        if m % 2 == 1 && b % 2 == 0 {
            // lift to an odd residue mod 2m so that ζ_2 = -1 is fixed
            b += m;
        }
        Some(b % order)
    }

    pub fn has_place(&self, v: &Place) -> bool {
        match *v {
            Place::Finite { p, index } => self
                .decompose_prime(p)
                .map(|d| (index as u64) < d.g)
                .unwrap_or(false),
            Place::Real(k) => self.is_totally_real() && (k as u64) < self.degree(),
            Place::Complex(k) => !self.is_totally_real() && (k as u64) < self.degree() / 2,
        }
    }

    /// Parses a place label and checks it exists in `K`; `"inf"` names the first archimedean place.
    pub fn parse_place(&self, label: &str) -> Result<Place, FieldError> {
        let v = if label.trim() == "inf" {
            self.archimedean_places()[0]
        } else {
            label.parse()?
        };
        if self.has_place(&v) {
            Ok(v)
        } else {
            Err(FieldError::UnknownPlace(label.to_string()))
        }
    }

    /// `σ(v)` for a finite or real place.
    pub fn galois_orbit_action(&self, sigma: &GaloisElement, v: &Place) -> Result<Place, FieldError> {
        if !self.has_place(v) {
            return Err(FieldError::UnknownPlace(v.to_string()));
        }
        let m = self.conductor;
        match *v {
            Place::Finite { p, index } => {
                let dec = self.decompose_prime(p)?;
                let image = arith::mul_mod(sigma.residue, dec.reps[index], m);
                let rep = coset_min(m, image, &dec.stabilizer);
                let index = dec.reps.binary_search(&rep).expect("coset representative");
                Ok(Place::Finite { p, index })
            }
            Place::Real(k) => {
                let reps = coset_reps(m, &self.subgroup);
                let image = arith::mul_mod(sigma.residue, reps[k], m);
                let rep = coset_min(m, image, &self.subgroup);
                Ok(Place::Real(reps.binary_search(&rep).expect("coset representative")))
            }
            Place::Complex(_) => Err(FieldError::ComplexPlaceAction),
        }
    }
}

impl fmt::Display for AbelianField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K(conductor={}, H=<", self.conductor)?;
        for (i, g) in self.generators().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">, degree={})", self.degree())
    }
}

/// Wire form: `{"conductor": m, "generators": [..]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FieldSpec {
    pub conductor: u64,
    #[serde(default)]
    pub generators: Vec<i64>,
}

impl From<&AbelianField> for FieldSpec {
    fn from(k: &AbelianField) -> Self {
        FieldSpec {
            conductor: k.conductor,
            generators: k.generators().into_iter().map(|g| g as i64).collect(),
        }
    }
}

impl TryFrom<FieldSpec> for AbelianField {
    type Error = FieldError;
    fn try_from(spec: FieldSpec) -> Result<Self, Self::Error> {
        AbelianField::new(spec.conductor, &spec.generators)
    }
}

impl Serialize for AbelianField {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        FieldSpec::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for AbelianField {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let spec = FieldSpec::deserialize(deserializer)?;
        AbelianField::try_from(spec).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qi() -> AbelianField {
        AbelianField::new(4, &[]).unwrap()
    }

    #[test]
    fn make_field_examples() {
        let q = AbelianField::new(1, &[]).unwrap();
        assert!(q.is_rationals());
        assert_eq!(q.degree(), 1);

        let k = qi();
        assert_eq!(k.conductor(), 4);
        assert_eq!(k.subgroup(), &[1]);
        assert_eq!(k.degree(), 2);

        let sqrt2 = AbelianField::new(8, &[7]).unwrap();
        assert_eq!(sqrt2.degree(), 2);
        assert!(sqrt2.is_totally_real());
        assert_eq!(sqrt2, AbelianField::quadratic(2).unwrap());
    }

    #[test]
    fn make_field_rejects_non_units() {
        assert_eq!(
            AbelianField::new(12, &[5, 4]),
            Err(FieldError::NotCoprime { generator: 4, conductor: 12 })
        );
        assert_eq!(AbelianField::new(0, &[]), Err(FieldError::ZeroConductor));
        assert!(matches!(
            AbelianField::new(2_000_000, &[]),
            Err(FieldError::ConductorTooLarge { .. })
        ));
    }

    #[test]
    fn canonicalization_drops_to_true_conductor() {
        // ℚ(ζ_6) = ℚ(ζ_3)
        assert_eq!(AbelianField::cyclotomic(6).unwrap(), AbelianField::cyclotomic(3).unwrap());
        // ℚ(ζ_2) = ℚ
        assert!(AbelianField::cyclotomic(2).unwrap().is_rationals());
        // fixed field of <5> in ℚ(ζ_12) is ℚ(i)
        assert_eq!(AbelianField::new(12, &[5]).unwrap(), qi());
        // everything fixed: ℚ
        assert!(AbelianField::new(15, &[2, 7, 11]).unwrap().is_rationals());
        assert_eq!(AbelianField::quadratic(-5).unwrap().conductor(), 20);
        assert_eq!(AbelianField::quadratic(-3).unwrap(), AbelianField::cyclotomic(3).unwrap());
    }

    #[test]
    fn decompose_examples() {
        let q = AbelianField::rationals();
        let d = q.decompose_prime(7).unwrap();
        assert_eq!((d.e, d.f, d.g), (1, 1, 1));
        assert_eq!(d.places, vec![Place::Finite { p: 7, index: 0 }]);

        let d = qi().decompose_prime(5).unwrap();
        assert_eq!((d.e, d.f, d.g), (1, 1, 2));
        let d = qi().decompose_prime(2).unwrap();
        assert_eq!((d.e, d.f, d.g), (2, 1, 1));
        let d = qi().decompose_prime(3).unwrap();
        assert_eq!((d.e, d.f, d.g), (1, 2, 1));

        // ℚ(ζ_5): 11 ≡ 1 splits completely, 2 has order 4, 5 totally ramified
        let k = AbelianField::cyclotomic(5).unwrap();
        assert_eq!(k.decompose_prime(11).unwrap().g, 4);
        assert_eq!(k.decompose_prime(2).unwrap().f, 4);
        assert_eq!(k.decompose_prime(5).unwrap().e, 4);
        assert_eq!(k.decompose_prime(19).unwrap().g, 2);

        assert_eq!(q.decompose_prime(9), Err(FieldError::NotPrime(9)));
    }

    #[test]
    fn archimedean_examples() {
        assert_eq!(AbelianField::rationals().archimedean_places(), vec![Place::Real(0)]);
        assert_eq!(qi().archimedean_places(), vec![Place::Complex(0)]);
        assert_eq!(
            AbelianField::new(8, &[7]).unwrap().archimedean_places(),
            vec![Place::Real(0), Place::Real(1)]
        );
        assert_eq!(AbelianField::cyclotomic(5).unwrap().archimedean_places().len(), 2);
    }

    #[test]
    fn roots_of_unity_examples() {
        assert_eq!(AbelianField::rationals().roots_of_unity_order(), 2);
        assert_eq!(qi().roots_of_unity_order(), 4);
        assert_eq!(AbelianField::new(8, &[7]).unwrap().roots_of_unity_order(), 2);
        assert_eq!(AbelianField::cyclotomic(3).unwrap().roots_of_unity_order(), 6);
        assert_eq!(AbelianField::cyclotomic(8).unwrap().roots_of_unity_order(), 8);
        assert_eq!(AbelianField::cyclotomic(15).unwrap().roots_of_unity_order(), 30);
    }

    #[test]
    fn galois_action_examples() {
        let q = AbelianField::rationals();
        let id = q.galois_element(1).unwrap();
        let v = Place::Finite { p: 5, index: 0 };
        assert_eq!(q.galois_orbit_action(&id, &v).unwrap(), v);

        let k = qi();
        let sigma = k.galois_element(3).unwrap();
        let v0 = Place::Finite { p: 5, index: 0 };
        let v1 = k.galois_orbit_action(&sigma, &v0).unwrap();
        assert_eq!(v1, Place::Finite { p: 5, index: 1 });
        assert_eq!(k.galois_orbit_action(&sigma, &v1).unwrap(), v0);
        assert_eq!(
            k.galois_orbit_action(&sigma, &Place::Complex(0)),
            Err(FieldError::ComplexPlaceAction)
        );

        let sqrt2 = AbelianField::new(8, &[7]).unwrap();
        let tau = sqrt2.galois_element(3).unwrap();
        assert_eq!(sqrt2.galois_orbit_action(&tau, &Place::Real(0)).unwrap(), Place::Real(1));
    }

    #[test]
    fn cyclotomic_character_respects_parity() {
        let k = AbelianField::cyclotomic(3).unwrap();
        let sigma = k.galois_element(2).unwrap();
        // ζ_6 ↦ ζ_6^5 under complex conjugation
        assert_eq!(k.cyclotomic_character(&sigma, 6), Some(5));
        assert_eq!(k.cyclotomic_character(&sigma, 2), Some(1));
        assert_eq!(k.cyclotomic_character(&sigma, 4), None);
        let q = AbelianField::rationals();
        assert_eq!(q.cyclotomic_character(&q.galois_group()[0], 2), Some(1));
    }

    #[test]
    fn place_labels() {
        for label in ["2:0", "inf:real:0", "inf:complex:3", "13:2"] {
            assert_eq!(label.parse::<Place>().unwrap().to_string(), label);
        }
        assert!("inf:imag:0".parse::<Place>().is_err());
        assert_eq!(AbelianField::rationals().parse_place("inf").unwrap(), Place::Real(0));
        assert!(qi().parse_place("5:2").is_err());
        assert!(qi().parse_place("5:1").is_ok());
    }

    #[test]
    fn json_form() {
        let k = AbelianField::new(8, &[7]).unwrap();
        let s = serde_json::to_string(&k).unwrap();
        assert_eq!(s, r#"{"conductor":8,"generators":[7]}"#);
        assert_eq!(serde_json::from_str::<AbelianField>(&s).unwrap(), k);
        assert!(serde_json::from_str::<AbelianField>(r#"{"conductor":8,"generators":[2]}"#).is_err());
    }

    #[test]
    fn subfield_relation() {
        let q = AbelianField::rationals();
        let k = AbelianField::quadratic(2).unwrap();
        let z8 = AbelianField::cyclotomic(8).unwrap();
        assert!(q.is_subfield_of(&k));
        assert!(k.is_subfield_of(&z8));
        assert!(qi().is_subfield_of(&z8));
        assert!(!qi().is_subfield_of(&k));
    }

    fn arb_field() -> impl Strategy<Value = AbelianField> {
        (1u64..80, proptest::collection::vec(1i64..80, 0..3)).prop_map(|(m, gens)| {
            let gens: Vec<i64> = gens.into_iter().filter(|&g| arith::gcd(g as u64, m) == 1).collect();
            AbelianField::new(m, &gens).unwrap()
        })
    }

    proptest! {
        #[test]
        fn efg_equals_degree(k in arb_field(), p in proptest::sample::select(arith::primes_up_to(40))) {
            let d = k.decompose_prime(p).unwrap();
            prop_assert_eq!(d.e * d.f * d.g, k.degree());
            prop_assert_eq!(d.places.len() as u64, d.g);
        }

        #[test]
        fn galois_action_is_transitive(k in arb_field(), p in proptest::sample::select(arith::primes_up_to(30))) {
            let places = k.places_over(p).unwrap();
            let orbit: std::collections::BTreeSet<Place> = k
                .galois_group()
                .iter()
                .map(|s| k.galois_orbit_action(s, &places[0]).unwrap())
                .collect();
            prop_assert_eq!(orbit.len(), places.len());
        }

        #[test]
        fn canonicalization_is_idempotent(k in arb_field()) {
            let gens: Vec<i64> = k.generators().into_iter().map(|g| g as i64).collect();
            prop_assert_eq!(AbelianField::new(k.conductor(), &gens).unwrap(), k.clone());
            prop_assert!(k.conductor() % 4 != 2);
        }

        #[test]
        fn totally_real_fields_have_two_roots_of_unity(k in arb_field()) {
            if k.is_totally_real() {
                prop_assert_eq!(k.roots_of_unity_order(), 2);
            }
            prop_assert_eq!(k.roots_of_unity_order() % 2, 0);
        }

        #[test]
        fn archimedean_count_matches_degree(k in arb_field()) {
            let arch = k.archimedean_places();
            let weight: u64 = arch.iter().map(|v| if matches!(v, Place::Real(_)) { 1 } else { 2 }).sum();
            prop_assert_eq!(weight, k.degree());
        }
    }
}
