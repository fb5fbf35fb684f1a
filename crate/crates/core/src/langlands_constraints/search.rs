//! Grid enumeration of invariant pairs.
//!
//! The fast search encodes every invariant as a residue mod `D = lcm(2, cap)`
//! and fixes the paired value wherever `arch` or `away` determines it, so the
//! grid has `t^{2g} · 2^r · cap^s` points for `g` places over `p`, `r` real
//! places and `s` extra places. The naive oracle scans independent values for
//! both vectors and defers everything to the exact checker.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{Constraint, ConstraintError, ConstraintScenario, DualityType, InvariantPair, Setup};
use crate::abelian_fields::Place;
use crate::arith;
use crate::config::Limits;
use crate::cyclic_rationals::CyclicRational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Status {
    Consistent,
    Inconsistent { violated: Constraint, detail: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProvenanceEntry {
    pub constraint: Constraint,
    pub statement: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolutionSet {
    pub scenario: ConstraintScenario,
    #[serde(flatten)]
    pub status: Status,
    /// Places that may carry nonzero invariants, in canonical order.
    #[serde(serialize_with = "labels")]
    pub support: Vec<Place>,
    /// Required values of `inv_v(jl) + inv_v(lp)`, keyed by place label, plus `"p-sum"`.
    pub forced: BTreeMap<String, CyclicRational>,
    pub provenance: Vec<ProvenanceEntry>,
    pub candidates_examined: u64,
    pub solutions: Vec<InvariantPair>,
}

impl SolutionSet {
    pub fn is_consistent(&self) -> bool {
        self.status == Status::Consistent
    }

    pub fn violated(&self) -> Option<Constraint> {
        match &self.status {
            Status::Consistent => None,
            Status::Inconsistent { violated, .. } => Some(*violated),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

fn labels<S: serde::Serializer>(places: &[Place], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(places.iter().map(|v| v.to_string()))
}

fn provenance(setup: &Setup) -> Vec<ProvenanceEntry> {
    Constraint::ALL
        .iter()
        .filter(|c| **c != Constraint::Conjecture || setup.conjecture_on())
        .map(|&c| ProvenanceEntry { constraint: c, statement: c.provenance() })
        .collect()
}

fn finish(setup: &Setup, mut solutions: Vec<InvariantPair>, examined: u64, worst: Option<Constraint>) -> SolutionSet {
    let support = setup.support();
    solutions.sort_by_cached_key(|p| p.sort_key(&support));
    let status = if solutions.is_empty() {
        let violated = worst.unwrap_or(Constraint::Scenario);
        let detail = match (&setup.violation, violated) {
            (Some(msg), Constraint::Scenario) => msg.clone(),
            _ => violated.provenance().to_string(),
        };
        Status::Inconsistent { violated, detail }
    } else {
        Status::Consistent
    };
    SolutionSet {
        scenario: setup.scenario.clone(),
        status,
        support,
        forced: setup.forced(),
        provenance: provenance(setup),
        candidates_examined: examined,
        solutions,
    }
}

/// Answers that need no search: `n = 1` and scenarios breaking their own hypotheses.
fn short_circuit(setup: &Setup) -> Option<SolutionSet> {
    if setup.scenario.n == 1 {
        return Some(finish(setup, vec![InvariantPair::trivial()], 1, None));
    }
    setup.violation.as_ref().map(|_| finish(setup, Vec::new(), 0, Some(Constraint::Scenario)))
}

pub fn enumerate(sc: &ConstraintScenario) -> Result<SolutionSet, ConstraintError> {
    enumerate_with_limits(sc, &Limits::default())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    OverP,
    Extra,
    Real,
    Complex,
}

/// One Benard–Schacher fiber: support indices of its places (`None` for places outside
/// the support) and, per Galois element, the permutation `𝔭 ↦ σ(𝔭)` with the twists `b` for each `m | w`.
struct Fiber {
    slots: Vec<Option<usize>>,
    twists: Vec<(Vec<usize>, Vec<(u64, u64)>)>,
}

struct Grid {
    d: u64,
    support: Vec<Place>,
    kinds: Vec<Kind>,
    radix: Vec<u64>,
    size: u128,
    fibers: Vec<Fiber>,
    w: u64,
    t: u64,
    cap: u64,
    arch_sum: u64,
    p_sum: u64,
    duality: DualityType,
    odd_degree: bool,
    conjecture: bool,
}

impl Grid {
    fn new(setup: &Setup) -> Self {
        let support = setup.support();
        let d = arith::lcm(2, setup.cap);
        let kinds: Vec<Kind> = support
            .iter()
            .map(|v| match v {
                Place::Real(_) => Kind::Real,
                Place::Complex(_) => Kind::Complex,
                Place::Finite { p, .. } if *p == setup.scenario.p => Kind::OverP,
                Place::Finite { .. } => Kind::Extra,
            })
            .collect();
        let radix: Vec<u64> = kinds
            .iter()
            .map(|k| match k {
                Kind::OverP => setup.t * setup.t,
                Kind::Extra => setup.cap,
                Kind::Real => 2,
                Kind::Complex => 1,
            })
            .collect();
        let size = radix.iter().fold(1u128, |acc, &r| acc.saturating_mul(r as u128));

        let field = setup.field();
        let mut primes: Vec<u64> = support.iter().filter_map(|v| v.residue_char()).collect();
        primes.sort_unstable();
        primes.dedup();
        let divisors_w = arith::divisors(setup.w);
        let fibers = primes
            .into_iter()
            .map(|q| {
                let places = field.places_over(q).expect("prime");
                let slots = places.iter().map(|v| support.binary_search(v).ok()).collect();
                let twists = setup
                    .galois
                    .iter()
                    .map(|sigma| {
                        let perm = places
                            .iter()
                            .map(|v| {
                                let image = field.galois_orbit_action(sigma, v).expect("finite place");
                                places.binary_search(&image).expect("same fiber")
                            })
                            .collect();
                        let bs = divisors_w
                            .iter()
                            .map(|&m| (m, field.cyclotomic_character(sigma, m).expect("m divides w")))
                            .collect();
                        (perm, bs)
                    })
                    .collect();
                Fiber { slots, twists }
            })
            .collect();

        Grid {
            d,
            support,
            kinds,
            radix,
            size,
            fibers,
            w: setup.w,
            t: setup.t,
            cap: setup.cap,
            arch_sum: if setup.scenario.duality_type.is_self_dual() { d / 2 } else { 0 },
            p_sum: (setup.deg % 2) * (d / 2),
            duality: setup.scenario.duality_type,
            odd_degree: setup.deg % 2 == 1,
            conjecture: setup.conjecture_on(),
        }
    }

    fn decode(&self, mut idx: u128, jl: &mut [u64], lp: &mut [u64]) {
        let d = self.d;
        for (i, (&kind, &r)) in self.kinds.iter().zip(&self.radix).enumerate() {
            let digit = (idx % r as u128) as u64;
            idx /= r as u128;
            let (a, b) = match kind {
                Kind::OverP => {
                    let step = d / self.t;
                    ((digit % self.t) * step, (digit / self.t) * step)
                }
                Kind::Extra => {
                    let a = digit * (d / self.cap);
                    (a, (d - a) % d)
                }
                Kind::Real => {
                    let a = digit * (d / 2);
                    (a, (self.arch_sum + d - a) % d)
                }
                Kind::Complex => (0, 0),
            };
            jl[i] = a;
            lp[i] = b;
        }
    }

    fn order(&self, x: u64) -> u64 {
        self.d / arith::gcd(x, self.d)
    }

    fn bs_ok(&self, vec: &[u64]) -> bool {
        self.fibers.iter().all(|f| {
            let vals: Vec<u64> = f.slots.iter().map(|s| s.map_or(0, |i| vec[i])).collect();
            let m = self.order(vals[0]);
            if vals.iter().any(|&x| self.order(x) != m) || self.w % m != 0 {
                return false;
            }
            f.twists.iter().all(|(perm, bs)| {
                let b = bs.iter().find(|(mm, _)| *mm == m).expect("m divides w").1;
                vals.iter().zip(perm).all(|(&x, &j)| x == arith::mul_mod(b, vals[j], self.d))
            })
        })
    }

    /// First failing constraint, `None` if all pass.
    fn first_failure(&self, jl: &[u64], lp: &[u64]) -> Option<Constraint> {
        let d = self.d;
        let half = d / 2;
        for (i, k) in self.kinds.iter().enumerate() {
            let ok = match k {
                Kind::Real => jl[i] % half == 0 && lp[i] % half == 0 && (jl[i] + lp[i]) % d == self.arch_sum,
                Kind::Complex => jl[i] == 0 && lp[i] == 0,
                _ => true,
            };
            if !ok {
                return Some(Constraint::Arch);
            }
        }
        if self.kinds.iter().enumerate().any(|(i, k)| *k == Kind::Extra && (jl[i] + lp[i]) % d != 0) {
            return Some(Constraint::Away);
        }
        let psum = self
            .kinds
            .iter()
            .enumerate()
            .filter(|(_, k)| **k == Kind::OverP)
            .fold(0, |acc, (i, _)| (acc + jl[i] + lp[i]) % d);
        if psum != self.p_sum {
            return Some(Constraint::PSum);
        }
        if !self.bs_ok(jl) || !self.bs_ok(lp) {
            return Some(Constraint::BenardSchacher);
        }
        for (i, k) in self.kinds.iter().enumerate() {
            let bound = match k {
                Kind::OverP => self.t,
                Kind::Extra => self.cap,
                _ => continue,
            };
            if bound % self.order(jl[i]) != 0 || bound % self.order(lp[i]) != 0 {
                return Some(Constraint::Torsion);
            }
        }
        if jl.iter().fold(0, |a, &x| (a + x) % d) != 0 || lp.iter().fold(0, |a, &x| (a + x) % d) != 0 {
            return Some(Constraint::Reciprocity);
        }
        if self.conjecture && !self.conjecture_ok(jl, lp) {
            return Some(Constraint::Conjecture);
        }
        None
    }

    fn conjecture_ok(&self, jl: &[u64], lp: &[u64]) -> bool {
        let half = self.d / 2;
        self.kinds.iter().enumerate().all(|(i, k)| match (self.duality, k) {
            (_, Kind::Real | Kind::Complex) => true,
            (DualityType::NotSelfDual | DualityType::Orthogonal, Kind::Extra) => true,
            (DualityType::NotSelfDual | DualityType::Orthogonal, Kind::OverP) => jl[i] == lp[i],
            (DualityType::Symplectic, Kind::OverP) if self.odd_degree => (jl[i] + self.d - lp[i]) % half == 0,
            (DualityType::Symplectic, _) => jl[i] == lp[i],
        })
    }

    fn to_pair(&self, jl: &[u64], lp: &[u64]) -> InvariantPair {
        let conv = |xs: &[u64]| -> Vec<(Place, CyclicRational)> {
            self.support.iter().zip(xs).map(|(v, &x)| (*v, CyclicRational::from_parts(x as i64, self.d))).collect()
        };
        InvariantPair::new(conv(jl), conv(lp))
    }
}

pub fn enumerate_with_limits(sc: &ConstraintScenario, limits: &Limits) -> Result<SolutionSet, ConstraintError> {
    let setup = Setup::new(sc)?;
    if let Some(done) = short_circuit(&setup) {
        return Ok(done);
    }
    let grid = Grid::new(&setup);
    if grid.size > limits.max_candidates as u128 {
        return Err(ConstraintError::SearchTooLarge { size: grid.size, cap: limits.max_candidates });
    }
    let size = grid.size as u64;
    let len = grid.support.len();
    let (hits, worst) = (0..size)
        .into_par_iter()
        .fold(
            || (Vec::new(), None::<Constraint>),
            |(mut hits, worst), idx| {
                let mut jl = vec![0; len];
                let mut lp = vec![0; len];
                grid.decode(idx as u128, &mut jl, &mut lp);
                match grid.first_failure(&jl, &lp) {
                    None => {
                        hits.push(idx);
                        (hits, worst)
                    }
                    Some(c) => (hits, worst.max(Some(c))),
                }
            },
        )
        .reduce(
            || (Vec::new(), None),
            |(mut a, wa), (b, wb)| {
                a.extend(b);
                (a, wa.max(wb))
            },
        );
    let solutions = hits
        .into_iter()
        .map(|idx| {
            let mut jl = vec![0; len];
            let mut lp = vec![0; len];
            grid.decode(idx as u128, &mut jl, &mut lp);
            grid.to_pair(&jl, &lp)
        })
        .collect();
    Ok(finish(&setup, solutions, size, worst))
}

/// Generate-and-test over independent values for both vectors, judged by the exact checker.
pub fn enumerate_naive(sc: &ConstraintScenario, limits: &Limits) -> Result<SolutionSet, ConstraintError> {
    let setup = Setup::new(sc)?;
    let support = setup.support();
    let values = |v: &Place| -> Vec<CyclicRational> {
        let den = match v {
            Place::Real(_) => 2,
            Place::Complex(_) => 1,
            Place::Finite { p, .. } if *p == sc.p => setup.t,
            Place::Finite { .. } => setup.cap,
        };
        (0..den).map(|k| CyclicRational::from_parts(k as i64, den)).collect()
    };
    let axes: Vec<Vec<CyclicRational>> = support.iter().map(values).collect();
    let size = axes.iter().fold(1u128, |acc, a| acc.saturating_mul((a.len() * a.len()) as u128));
    if size > limits.max_candidates as u128 {
        return Err(ConstraintError::SearchTooLarge { size, cap: limits.max_candidates });
    }
    let mut solutions = Vec::new();
    let mut worst = None;
    for mut idx in 0..size {
        let mut jl = Vec::with_capacity(support.len());
        let mut lp = Vec::with_capacity(support.len());
        for (v, axis) in support.iter().zip(&axes) {
            let r = axis.len() as u128;
            jl.push((*v, axis[(idx % r) as usize].clone()));
            idx /= r;
            lp.push((*v, axis[(idx % r) as usize].clone()));
            idx /= r;
        }
        let pair = InvariantPair::new(jl, lp);
        match setup.check_exact(&pair)?.first_failure() {
            None => solutions.push(pair),
            Some(c) => worst = worst.max(Some(c)),
        }
    }
    Ok(finish(&setup, solutions, size as u64, worst))
}
