//! Finite constraint systems on pairs of Brauer classes over an abelian field `K`.
//!
//! A scenario fixes `n`, `p`, `K`, a duality type and a finite support. The two
//! unknowns `jl` and `lp` are invariant vectors over `K`. The constraints are:
//!
//! * `arch`: at a real place the two invariants sum to `½` when self-dual and
//!   to `0` otherwise; at a complex place both vanish.
//! * `away`: at a finite place `v ∤ p` the invariants are opposite.
//! * `p-sum`: the pairwise sums over all `v | p` add up to `½[K:ℚ]`.
//! * `benard-schacher`: within one residue characteristic, all invariants of a
//!   vector share one order `m | w(K)` and satisfy `inv_𝔭 = b·inv_{σ𝔭}` where
//!   `σ(ζ_m) = ζ_m^b`.
//! * `torsion`: invariants at `v | p` are `gcd(n, p-1)`-torsion.
//! * `reciprocity`: each vector sums to zero.
//! * `conjecture` (optional): the conjectural comparison of `jl` with `lp`.
//!
//! [`enumerate`] searches a residue grid in parallel; [`check_pair`] walks the
//! same constraints with exact ℚ/ℤ arithmetic; [`enumerate_naive`] is the
//! generate-and-test oracle built on [`check_pair`].

mod search;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::abelian_fields::{AbelianField, FieldError, GaloisElement, Place};
use crate::arith;
use crate::brauer::{BrauerError, CsaClass};
use crate::cyclic_rationals::CyclicRational;

pub use search::{enumerate, enumerate_naive, enumerate_with_limits, SolutionSet, Status};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstraintError {
    #[error("dimension n must be positive")]
    ZeroDimension,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("torsion cap must be positive")]
    ZeroTorsionCap,
    #[error("extra support place {0} must be finite and prime to p")]
    BadExtraSupport(String),
    #[error("place {0} is not of the required kind")]
    WrongPlaceKind(String),
    #[error("scenario violates its own hypotheses: {0}")]
    Scenario(String),
    #[error("conjecture mode is off")]
    ConjectureOff,
    #[error("search space of {size} candidates exceeds the cap {cap}")]
    SearchTooLarge { size: u128, cap: u64 },
    #[error("invalid pair JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Brauer(#[from] BrauerError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DualityType {
    NotSelfDual,
    Orthogonal,
    Symplectic,
}

impl DualityType {
    /// From a Frobenius–Schur indicator.
    pub fn from_indicator(ind: i8) -> Option<Self> {
        match ind {
            0 => Some(DualityType::NotSelfDual),
            1 => Some(DualityType::Orthogonal),
            -1 => Some(DualityType::Symplectic),
            _ => None,
        }
    }

    pub fn is_self_dual(self) -> bool {
        self != DualityType::NotSelfDual
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConjectureMode {
    #[default]
    Off,
    On,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintScenario {
    pub n: u64,
    pub p: u64,
    pub field: AbelianField,
    pub duality_type: DualityType,
    #[serde(default)]
    pub conjecture_mode: ConjectureMode,
    /// Finite places `v ∤ p` allowed to carry nonzero invariants.
    #[serde(default)]
    pub extra_support: Vec<String>,
    /// Denominator bound on the grid; `lcm(n, p-1)` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torsion_cap: Option<u64>,
}

impl ConstraintScenario {
    pub fn new(n: u64, p: u64, field: AbelianField, duality_type: DualityType) -> Self {
        ConstraintScenario {
            n,
            p,
            field,
            duality_type,
            conjecture_mode: ConjectureMode::Off,
            extra_support: Vec::new(),
            torsion_cap: None,
        }
    }

    pub fn with_conjecture(mut self, on: bool) -> Self {
        self.conjecture_mode = if on { ConjectureMode::On } else { ConjectureMode::Off };
        self
    }

    pub fn with_extra_support(mut self, labels: &[&str]) -> Self {
        self.extra_support = labels.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn with_torsion_cap(mut self, cap: u64) -> Self {
        self.torsion_cap = Some(cap);
        self
    }

    pub fn from_json(s: &str) -> Result<Self, ConstraintError> {
        serde_json::from_str(s).map_err(|e| ConstraintError::Json(e.to_string()))
    }

    pub fn effective_torsion_cap(&self) -> u64 {
        self.torsion_cap.unwrap_or_else(|| arith::lcm(self.n, self.p.saturating_sub(1).max(1)))
    }
}

/// The constraints in reporting order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Constraint {
    Scenario,
    Arch,
    Away,
    PSum,
    BenardSchacher,
    Torsion,
    Reciprocity,
    Conjecture,
}

impl Constraint {
    pub const ALL: [Constraint; 8] = [
        Constraint::Scenario,
        Constraint::Arch,
        Constraint::Away,
        Constraint::PSum,
        Constraint::BenardSchacher,
        Constraint::Torsion,
        Constraint::Reciprocity,
        Constraint::Conjecture,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Constraint::Scenario => "scenario",
            Constraint::Arch => "arch",
            Constraint::Away => "away",
            Constraint::PSum => "p-sum",
            Constraint::BenardSchacher => "benard-schacher",
            Constraint::Torsion => "torsion",
            Constraint::Reciprocity => "reciprocity",
            Constraint::Conjecture => "conjecture",
        }
    }

    pub fn provenance(self) -> &'static str {
        match self {
            Constraint::Scenario => {
                "scenario hypotheses: a self-dual JL(π) forces ℚ(π) totally real; n = 1 forces both classes trivial"
            }
            Constraint::Arch => "index theorem at v|∞: inv_v(jl) + inv_v(lp) = 1/[ℂ:ℝ(π)]",
            Constraint::Away => "index theorem at v∤p∞: inv_v(jl) + inv_v(lp) = 0; zero outside the declared support",
            Constraint::PSum => "sum identity: Σ_{v|p} (inv_v(jl) + inv_v(lp)) = ½[ℚ(π):ℚ]",
            Constraint::BenardSchacher => {
                "Benard–Schacher theorem: uniform local order m | w(K) and inv_𝔭 = b·inv_σ(𝔭) with σ(ζ_m) = ζ_m^b"
            }
            Constraint::Torsion => "local index bound: inv_v ∈ (1/(n, p-1))ℤ/ℤ at v|p",
            Constraint::Reciprocity => "Hilbert reciprocity: the invariants of each class sum to 0",
            Constraint::Conjecture => "conjectural comparison of the two division algebras at v|p",
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Candidate invariant vectors; entries absent from a map are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct InvariantPair {
    pub jl: BTreeMap<Place, CyclicRational>,
    pub lp: BTreeMap<Place, CyclicRational>,
}

#[derive(Serialize, Deserialize)]
struct PairJson {
    #[serde(default)]
    jl: BTreeMap<String, CyclicRational>,
    #[serde(default)]
    lp: BTreeMap<String, CyclicRational>,
}

fn sparse(it: impl IntoIterator<Item = (Place, CyclicRational)>) -> BTreeMap<Place, CyclicRational> {
    let mut out = BTreeMap::new();
    for (v, x) in it {
        let slot: &mut CyclicRational = out.entry(v).or_default();
        *slot = slot.add(&x);
    }
    out.retain(|_, x| !x.is_zero());
    out
}

impl InvariantPair {
    pub fn new(
        jl: impl IntoIterator<Item = (Place, CyclicRational)>,
        lp: impl IntoIterator<Item = (Place, CyclicRational)>,
    ) -> Self {
        InvariantPair { jl: sparse(jl), lp: sparse(lp) }
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    /// Parses `{"jl": {label: "a/b"}, "lp": {...}}` against the places of `field`.
    pub fn from_json(field: &AbelianField, s: &str) -> Result<Self, ConstraintError> {
        let raw: PairJson = serde_json::from_str(s).map_err(|e| ConstraintError::Json(e.to_string()))?;
        let conv = |m: BTreeMap<String, CyclicRational>| -> Result<Vec<(Place, CyclicRational)>, ConstraintError> {
            m.into_iter().map(|(k, v)| Ok((field.parse_place(&k)?, v))).collect()
        };
        Ok(Self::new(conv(raw.jl)?, conv(raw.lp)?))
    }

    pub fn jl_at(&self, v: &Place) -> CyclicRational {
        self.jl.get(v).cloned().unwrap_or_default()
    }

    pub fn lp_at(&self, v: &Place) -> CyclicRational {
        self.lp.get(v).cloned().unwrap_or_default()
    }

    /// Both vectors as Brauer classes, when each is a valid invariant vector.
    pub fn to_classes(&self, field: &AbelianField) -> Result<(CsaClass, CsaClass), BrauerError> {
        let jl = CsaClass::validate(field, self.jl.iter().map(|(v, x)| (*v, x.clone())))?;
        let lp = CsaClass::validate(field, self.lp.iter().map(|(v, x)| (*v, x.clone())))?;
        Ok((jl, lp))
    }

    fn places(&self) -> impl Iterator<Item = &Place> {
        self.jl.keys().chain(self.lp.keys())
    }

    /// Dense comparison key over `support`.
    pub fn sort_key(&self, support: &[Place]) -> (Vec<CyclicRational>, Vec<CyclicRational>) {
        (support.iter().map(|v| self.jl_at(v)).collect(), support.iter().map(|v| self.lp_at(v)).collect())
    }
}

impl Serialize for InvariantPair {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let conv = |m: &BTreeMap<Place, CyclicRational>| m.iter().map(|(v, x)| (v.to_string(), x.clone())).collect();
        PairJson { jl: conv(&self.jl), lp: conv(&self.lp) }.serialize(serializer)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstraintResult {
    pub constraint: Constraint,
    pub passed: bool,
    pub detail: String,
}

/// Per-constraint verdicts for one pair, in reporting order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub passed: bool,
    pub results: Vec<ConstraintResult>,
}

impl CheckReport {
    pub fn first_failure(&self) -> Option<Constraint> {
        self.results.iter().find(|r| !r.passed).map(|r| r.constraint)
    }

    pub fn result(&self, c: Constraint) -> Option<&ConstraintResult> {
        self.results.iter().find(|r| r.constraint == c)
    }
}

/// A validated scenario with its places resolved.
#[derive(Clone, Debug)]
pub(crate) struct Setup {
    pub scenario: ConstraintScenario,
    pub deg: u64,
    pub over_p: Vec<Place>,
    pub real: Vec<Place>,
    pub complex: Vec<Place>,
    pub extra: Vec<Place>,
    pub cap: u64,
    /// Torsion bound at `v | p`: `gcd(n, p-1, cap)`.
    pub t: u64,
    pub w: u64,
    pub galois: Vec<GaloisElement>,
    pub violation: Option<String>,
}

impl Setup {
    pub fn new(sc: &ConstraintScenario) -> Result<Self, ConstraintError> {
        if sc.n == 0 {
            return Err(ConstraintError::ZeroDimension);
        }
        if !arith::is_prime(sc.p) {
            return Err(ConstraintError::NotPrime(sc.p));
        }
        if sc.torsion_cap == Some(0) {
            return Err(ConstraintError::ZeroTorsionCap);
        }
        let field = &sc.field;
        let over_p = field.places_over(sc.p)?;
        let arch = field.archimedean_places();
        let (real, complex): (Vec<Place>, Vec<Place>) = arch.into_iter().partition(|v| matches!(v, Place::Real(_)));
        let mut extra = Vec::new();
        for label in &sc.extra_support {
            let v = field.parse_place(label)?;
            match v.residue_char() {
                Some(q) if q != sc.p => extra.push(v),
                _ => return Err(ConstraintError::BadExtraSupport(label.clone())),
            }
        }
        extra.sort();
        extra.dedup();
        let cap = sc.effective_torsion_cap();
        let t = arith::gcd(arith::gcd(sc.n, sc.p - 1), cap);
        let violation = (sc.duality_type.is_self_dual() && !field.is_totally_real())
            .then(|| format!("{:?} type needs a totally real field, got {field}", sc.duality_type));
        Ok(Setup {
            scenario: sc.clone(),
            deg: field.degree(),
            over_p,
            real,
            complex,
            extra,
            cap,
            t,
            w: field.roots_of_unity_order(),
            galois: field.galois_group(),
            violation,
        })
    }

    pub fn field(&self) -> &AbelianField {
        &self.scenario.field
    }

    pub fn support(&self) -> Vec<Place> {
        let mut s: Vec<Place> = self
            .over_p
            .iter()
            .chain(&self.extra)
            .chain(&self.real)
            .chain(&self.complex)
            .copied()
            .collect();
        s.sort();
        s
    }

    pub fn arch_sum(&self) -> CyclicRational {
        if self.scenario.duality_type.is_self_dual() {
            CyclicRational::half()
        } else {
            CyclicRational::zero()
        }
    }

    pub fn p_sum(&self) -> CyclicRational {
        CyclicRational::from_parts(self.deg as i64, 2)
    }

    pub fn conjecture_on(&self) -> bool {
        self.scenario.conjecture_mode == ConjectureMode::On
    }

    pub fn forced(&self) -> BTreeMap<String, CyclicRational> {
        let mut out = BTreeMap::new();
        if self.scenario.n == 1 {
            for v in self.support() {
                out.insert(v.to_string(), CyclicRational::zero());
            }
            out.insert("p-sum".into(), CyclicRational::zero());
            return out;
        }
        for v in &self.real {
            out.insert(v.to_string(), self.arch_sum());
        }
        for v in self.complex.iter().chain(&self.extra) {
            out.insert(v.to_string(), CyclicRational::zero());
        }
        out.insert("p-sum".into(), self.p_sum());
        out
    }

    /// Exact verdicts for `pair`, in reporting order.
    pub fn check_exact(&self, pair: &InvariantPair) -> Result<CheckReport, ConstraintError> {
        let field = self.field();
        for v in pair.places() {
            if !field.has_place(v) {
                return Err(FieldError::UnknownPlace(v.to_string()).into());
            }
        }
        let mut results = Vec::new();
        let mut push = |c: Constraint, fail: Option<String>| {
            results.push(ConstraintResult {
                constraint: c,
                passed: fail.is_none(),
                detail: fail.unwrap_or_else(|| "ok".into()),
            });
        };

        if self.scenario.n == 1 {
            let ok = pair.jl.is_empty() && pair.lp.is_empty();
            push(Constraint::Scenario, (!ok).then(|| "n = 1 requires both classes trivial".to_string()));
            let passed = ok;
            return Ok(CheckReport { passed, results });
        }

        push(Constraint::Scenario, self.violation.clone());
        push(Constraint::Arch, self.exact_arch(pair));
        push(Constraint::Away, self.exact_away(pair));
        let psum = self.over_p.iter().fold(CyclicRational::zero(), |acc, v| &(&acc + &pair.jl_at(v)) + &pair.lp_at(v));
        push(
            Constraint::PSum,
            (psum != self.p_sum()).then(|| format!("sum over v|p is {psum}, required {}", self.p_sum())),
        );
        push(Constraint::BenardSchacher, self.exact_bs(pair));
        push(Constraint::Torsion, self.exact_torsion(pair));
        let rec = |m: &BTreeMap<Place, CyclicRational>| m.values().fold(CyclicRational::zero(), |a, x| &a + x);
        let (sj, sl) = (rec(&pair.jl), rec(&pair.lp));
        push(
            Constraint::Reciprocity,
            (!sj.is_zero() || !sl.is_zero()).then(|| format!("invariant sums are jl: {sj}, lp: {sl}")),
        );
        if self.conjecture_on() {
            push(Constraint::Conjecture, self.exact_conjecture(pair));
        }
        let passed = results.iter().all(|r| r.passed);
        Ok(CheckReport { passed, results })
    }

    fn exact_arch(&self, pair: &InvariantPair) -> Option<String> {
        let req = self.arch_sum();
        for v in &self.real {
            let (a, b) = (pair.jl_at(v), pair.lp_at(v));
            if !a.is_killed_by(2) || !b.is_killed_by(2) {
                return Some(format!("invariants at {v} must lie in ½ℤ/ℤ"));
            }
            if &a + &b != req {
                return Some(format!("sum at {v} is {}, required {req}", &a + &b));
            }
        }
        for v in &self.complex {
            if !pair.jl_at(v).is_zero() || !pair.lp_at(v).is_zero() {
                return Some(format!("invariants at complex place {v} must vanish"));
            }
        }
        None
    }

    fn exact_away(&self, pair: &InvariantPair) -> Option<String> {
        for v in pair.places() {
            let Some(q) = v.residue_char() else { continue };
            if q == self.scenario.p {
                continue;
            }
            let (a, b) = (pair.jl_at(v), pair.lp_at(v));
            if self.extra.contains(v) {
                if !(&a + &b).is_zero() {
                    return Some(format!("sum at {v} is {}, required 0", &a + &b));
                }
            } else {
                return Some(format!("{v} is outside the declared support"));
            }
        }
        None
    }

    fn exact_bs(&self, pair: &InvariantPair) -> Option<String> {
        let mut primes: Vec<u64> = vec![self.scenario.p];
        primes.extend(pair.places().filter_map(|v| v.residue_char()));
        primes.sort_unstable();
        primes.dedup();
        for q in primes {
            let places = self.field().places_over(q).expect("prime");
            for (name, vec) in [("jl", &pair.jl), ("lp", &pair.lp)] {
                if let Some(msg) = self.exact_bs_fiber(&places, vec) {
                    return Some(format!("{name} over {q}: {msg}"));
                }
            }
        }
        None
    }

    fn exact_bs_fiber(&self, places: &[Place], vec: &BTreeMap<Place, CyclicRational>) -> Option<String> {
        let at = |v: &Place| vec.get(v).cloned().unwrap_or_default();
        let m = at(&places[0]).order();
        if places.iter().any(|v| at(v).order() != m) {
            return Some("local orders differ".into());
        }
        let Some(m) = m.try_into().ok().filter(|m: &u64| self.w % m == 0) else {
            return Some(format!("local order does not divide w(K) = {}", self.w));
        };
        for sigma in &self.galois {
            let b = self.field().cyclotomic_character(sigma, m).expect("m divides w");
            for v in places {
                let image = self.field().galois_orbit_action(sigma, v).expect("finite place");
                if at(v) != at(&image).scalar_mul(b) {
                    return Some(format!("twist relation fails for sigma = {} at {v}", sigma.residue()));
                }
            }
        }
        None
    }

    fn exact_torsion(&self, pair: &InvariantPair) -> Option<String> {
        for v in &self.over_p {
            for x in [pair.jl_at(v), pair.lp_at(v)] {
                if !x.is_killed_by(self.t) {
                    return Some(format!("{x} at {v} is not {}-torsion", self.t));
                }
            }
        }
        for v in &self.extra {
            for x in [pair.jl_at(v), pair.lp_at(v)] {
                if !x.is_killed_by(self.cap) {
                    return Some(format!("{x} at {v} exceeds the torsion cap {}", self.cap));
                }
            }
        }
        None
    }

    fn exact_conjecture(&self, pair: &InvariantPair) -> Option<String> {
        let p = self.scenario.p;
        let eq_at = |v: &Place| pair.jl_at(v) == pair.lp_at(v);
        match self.scenario.duality_type {
            DualityType::NotSelfDual | DualityType::Orthogonal => {
                self.over_p.iter().find(|v| !eq_at(v)).map(|v| format!("jl and lp differ at {v}"))
            }
            DualityType::Symplectic => {
                let mut finite: Vec<Place> = self.over_p.clone();
                finite.extend(pair.places().filter(|v| v.is_finite()).copied());
                finite.sort();
                finite.dedup();
                for v in &finite {
                    let over_p = v.residue_char() == Some(p);
                    if self.deg % 2 == 1 && over_p {
                        if !(&pair.jl_at(v) - &pair.lp_at(v)).is_killed_by(2) {
                            return Some(format!("jl - lp at {v} is not in ½ℤ/ℤ"));
                        }
                    } else if !eq_at(v) {
                        return Some(format!("jl and lp differ at {v}"));
                    }
                }
                None
            }
        }
    }
}

/// Required value of `inv_v(jl) + inv_v(lp)` at a finite `v ∤ p`.
pub fn constraint_away(sc: &ConstraintScenario, v: &Place) -> Result<CyclicRational, ConstraintError> {
    match v.residue_char() {
        Some(q) if q != sc.p => Ok(CyclicRational::zero()),
        _ => Err(ConstraintError::WrongPlaceKind(v.to_string())),
    }
}

/// Required value of `inv_v(jl) + inv_v(lp)` at an archimedean `v`.
pub fn constraint_arch(sc: &ConstraintScenario, v: &Place) -> Result<CyclicRational, ConstraintError> {
    match v {
        Place::Finite { .. } => Err(ConstraintError::WrongPlaceKind(v.to_string())),
        Place::Real(_) if sc.duality_type.is_self_dual() => Ok(CyclicRational::half()),
        Place::Real(_) => Ok(CyclicRational::zero()),
        Place::Complex(_) if sc.duality_type.is_self_dual() => Err(ConstraintError::Scenario(format!(
            "{:?} type at complex place {v}: the field must be totally real",
            sc.duality_type
        ))),
        Place::Complex(_) => Ok(CyclicRational::zero()),
    }
}

/// `½·[K:ℚ]`, the required sum over `v | p`.
pub fn constraint_p_sum(sc: &ConstraintScenario) -> CyclicRational {
    CyclicRational::from_parts(sc.field.degree() as i64, 2)
}

/// Benard–Schacher conditions on a vector over the places above `p`.
pub fn benard_schacher_filter(
    sc: &ConstraintScenario,
    vector: &BTreeMap<Place, CyclicRational>,
) -> Result<bool, ConstraintError> {
    let s = Setup::new(sc)?;
    Ok(s.exact_bs_fiber(&s.over_p, vector).is_none())
}

/// Every entry at `v | p` is `gcd(n, p-1)`-torsion.
pub fn torsion_filter(sc: &ConstraintScenario, vector: &BTreeMap<Place, CyclicRational>) -> bool {
    let t = arith::gcd(sc.n, sc.p.saturating_sub(1));
    vector.iter().filter(|(v, _)| v.residue_char() == Some(sc.p)).all(|(_, x)| x.is_killed_by(t))
}

pub fn conjecture_filter(sc: &ConstraintScenario, pair: &InvariantPair) -> Result<bool, ConstraintError> {
    if sc.conjecture_mode != ConjectureMode::On {
        return Err(ConstraintError::ConjectureOff);
    }
    Ok(Setup::new(sc)?.exact_conjecture(pair).is_none())
}

/// Evaluates every active constraint on `pair` with exact arithmetic.
pub fn check_pair(sc: &ConstraintScenario, pair: &InvariantPair) -> Result<CheckReport, ConstraintError> {
    Setup::new(sc)?.check_exact(pair)
}

#[cfg(test)]
mod tests;
