//! Hilbert symbols over ℚ and the Brauer classes of quaternion algebras `(a, b)_ℚ`.
//!
//! [`hilbert_symbol`] uses the classical closed forms. [`local_solubility_oracle`]
//! decides the same question directly, by searching for a primitive solution of
//! `z² = a x² + b y²` modulo `p^k` that Hensel's lemma lifts to `ℤ_p`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::abelian_fields::{AbelianField, Place};
use crate::arith;
use crate::brauer::{BrauerError, CsaClass};
use crate::cyclic_rationals::CyclicRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuaternionError {
    #[error("Hilbert symbol arguments must be nonzero")]
    ZeroArgument,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid place {0:?}")]
    BadPlace(String),
    #[error(transparent)]
    Brauer(#[from] BrauerError),
}

/// A place of ℚ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RationalPlace {
    Prime(u64),
    Infinite,
}

impl RationalPlace {
    pub fn prime(p: u64) -> Result<Self, QuaternionError> {
        if arith::is_prime(p) {
            Ok(RationalPlace::Prime(p))
        } else {
            Err(QuaternionError::NotPrime(p))
        }
    }

    /// The matching [`Place`] of [`AbelianField::rationals`].
    pub fn as_place(&self) -> Place {
        match *self {
            RationalPlace::Prime(p) => Place::Finite { p, index: 0 },
            RationalPlace::Infinite => Place::Real(0),
        }
    }
}

impl fmt::Display for RationalPlace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RationalPlace::Prime(p) => write!(f, "{p}"),
            RationalPlace::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for RationalPlace {
    type Err = QuaternionError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "infinity" | "oo" | "inf:real:0" => Ok(RationalPlace::Infinite),
            t => {
                let p = t
                    .trim_end_matches(":0")
                    .parse::<u64>()
                    .map_err(|_| QuaternionError::BadPlace(s.to_string()))?;
                RationalPlace::prime(p)
            }
        }
    }
}

/// The pair `(a, b)` naming the quaternion algebra `i² = a, j² = b, ij = -ji`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuaternionSymbol {
    a: i64,
    b: i64,
}

impl QuaternionSymbol {
    pub fn new(a: i64, b: i64) -> Result<Self, QuaternionError> {
        if a == 0 || b == 0 {
            return Err(QuaternionError::ZeroArgument);
        }
        Ok(QuaternionSymbol { a, b })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn hilbert(&self, v: RationalPlace) -> i8 {
        hilbert_symbol(self.a, self.b, v).expect("arguments checked at construction")
    }

    pub fn class(&self) -> CsaClass {
        quaternion_class(self.a, self.b).expect("arguments checked at construction")
    }
}

fn strip(n: i64, p: u64) -> (u32, i64) {
    let v = arith::valuation(n, p);
    (v, n / (p as i64).pow(v))
}

fn legendre(u: i64, p: u64) -> i8 {
    arith::jacobi(u, p)
}

/// `(a, b)_v ∈ {±1}`.
pub fn hilbert_symbol(a: i64, b: i64, v: RationalPlace) -> Result<i8, QuaternionError> {
    if a == 0 || b == 0 {
        return Err(QuaternionError::ZeroArgument);
    }
    let p = match v {
        RationalPlace::Infinite => return Ok(if a < 0 && b < 0 { -1 } else { 1 }),
        RationalPlace::Prime(p) if !arith::is_prime(p) => return Err(QuaternionError::NotPrime(p)),
        RationalPlace::Prime(p) => p,
    };
    let (alpha, u) = strip(a, p);
    let (beta, w) = strip(b, p);
    let exponent = if p == 2 {
        let eps = |x: i64| u32::from(x.rem_euclid(4) == 3);
        let omega = |x: i64| u32::from(matches!(x.rem_euclid(8), 3 | 5));
        eps(u) * eps(w) + alpha * omega(w) + beta * omega(u)
    } else {
        let eps_p = ((p - 1) / 2) as u32;
        let mut e = alpha * beta * eps_p;
        if beta % 2 == 1 && legendre(u, p) == -1 {
            e += 1;
        }
        if alpha % 2 == 1 && legendre(w, p) == -1 {
            e += 1;
        }
        e
    };
    Ok(if exponent % 2 == 0 { 1 } else { -1 })
}

/// The class of `(a, b)_ℚ`: invariant ½ exactly where the Hilbert symbol is −1.
pub fn quaternion_class(a: i64, b: i64) -> Result<CsaClass, QuaternionError> {
    if a == 0 || b == 0 {
        return Err(QuaternionError::ZeroArgument);
    }
    let mut candidates = vec![RationalPlace::Infinite, RationalPlace::Prime(2)];
    for n in [a, b] {
        for (p, _) in arith::factorize(n.unsigned_abs()) {
            candidates.push(RationalPlace::Prime(p));
        }
    }
    candidates.sort();
    candidates.dedup();
    let mut raw = Vec::new();
    for v in candidates {
        if hilbert_symbol(a, b, v)? == -1 {
            raw.push((v.as_place(), CyclicRational::half()));
        }
    }
    Ok(CsaClass::validate(&AbelianField::rationals(), raw)?)
}

/// `4 + v_p(4ab)`, enough for Hensel lifting of the diagonal form.
pub fn default_precision(a: i64, b: i64, p: u64) -> u32 {
    let v4 = if p == 2 { 2 } else { 0 };
    4 + v4 + arith::valuation(a, p) + arith::valuation(b, p)
}

/// Decides `(a, b)_v` from the definition.
///
/// At `∞` this is the sign test. At a prime `p` it enumerates primitive
/// solutions of `a x² + b y² - z² ≡ 0 (mod p^j)` for `j = 1..=precision`,
/// lifting level by level, and returns `+1` as soon as one solution satisfies
/// Hensel's criterion `v(Q) ≥ 2·v(∂Q/∂x_i) + 1` for some coordinate. It
/// returns `-1` when the solutions die out, or when none is certified by the
/// final level.
pub fn local_solubility_oracle(
    a: i64,
    b: i64,
    v: RationalPlace,
    precision: Option<u32>,
) -> Result<i8, QuaternionError> {
    if a == 0 || b == 0 {
        return Err(QuaternionError::ZeroArgument);
    }
    let p = match v {
        RationalPlace::Infinite => return Ok(if a > 0 || b > 0 { 1 } else { -1 }),
        RationalPlace::Prime(p) if !arith::is_prime(p) => return Err(QuaternionError::NotPrime(p)),
        RationalPlace::Prime(p) => p,
    };
    let k = precision.unwrap_or_else(|| default_precision(a, b, p));
    // x ↦ x/p turns a p²-multiple coefficient into its cofactor without changing isotropy
    let reduce = |mut n: i64| {
        let pp = (p * p) as i64;
        while n % pp == 0 {
            n /= pp;
        }
        n
    };
    let coeffs = [reduce(a) as i128, reduce(b) as i128, -1i128];
    Ok(if padic_search(&coeffs, p, k) { 1 } else { -1 })
}

fn val_i128(n: i128, p: u64) -> u32 {
    let p = p as i128;
    let mut n = n;
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// True iff a primitive zero of `Σ c_i x_i²` mod `p^level` is certified liftable.
fn padic_search(coeffs: &[i128; 3], p: u64, max_level: u32) -> bool {
    let pi = p as i128;
    let v2 = u32::from(p == 2);
    let coeff_vals: Vec<u32> = coeffs.iter().map(|&c| val_i128(c, p)).collect();

    // Normalized primitive vectors: the first unit coordinate is 1, earlier ones ≡ 0 (mod p).
    let mut frontier: Vec<([i128; 3], usize)> = Vec::new();
    for pivot in 0..3 {
        let free: Vec<usize> = (pivot + 1..3).collect();
        let mut x = [0i128; 3];
        x[pivot] = 1;
        let count = pi.pow(free.len() as u32);
        for idx in 0..count {
            let mut t = idx;
            let mut y = x;
            for &i in &free {
                y[i] = t % pi;
                t /= pi;
            }
            frontier.push((y, pivot));
        }
    }

    let mut modulus = 1i128;
    for level in 1..=max_level {
        let prev = modulus;
        modulus *= pi;
        let mut next = Vec::new();
        for (x, pivot) in &frontier {
            // the pivot stays 1; every other coordinate gets lifted by a multiple of the previous modulus
            let lifts = if level == 1 { 1 } else { pi.pow(2) };
            for idx in 0..lifts {
                let mut y = *x;
                if level > 1 {
                    let mut t = idx;
                    for (i, yi) in y.iter_mut().enumerate() {
                        if i == *pivot {
                            continue;
                        }
                        *yi += (t % pi) * prev;
                        t /= pi;
                    }
                }
                let q: i128 = (0..3).map(|i| coeffs[i] * y[i] * y[i]).sum();
                if q.rem_euclid(modulus) != 0 {
                    continue;
                }
                let certified = (0..3).any(|i| {
                    let r = y[i].rem_euclid(modulus);
                    if r == 0 {
                        return false;
                    }
                    let t = v2 + coeff_vals[i] + val_i128(r, p);
                    level >= 2 * t + 1
                });
                if certified {
                    return true;
                }
                next.push((y, *pivot));
            }
        }
        if next.is_empty() {
            return false;
        }
        frontier = next;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use RationalPlace::{Infinite, Prime};

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert_symbol(-1, -1, Prime(2)).unwrap(), -1);
        assert_eq!(hilbert_symbol(-1, -1, Infinite).unwrap(), -1);
        assert_eq!(hilbert_symbol(-1, -1, Prime(3)).unwrap(), 1);
        for v in [Infinite, Prime(2), Prime(3), Prime(7)] {
            assert_eq!(hilbert_symbol(1, -7, v).unwrap(), 1);
        }
        assert_eq!(hilbert_symbol(2, 5, Prime(5)).unwrap(), -1);
        assert_eq!(hilbert_symbol(2, 5, Prime(2)).unwrap(), -1);
        assert_eq!(hilbert_symbol(0, 5, Prime(5)), Err(QuaternionError::ZeroArgument));
        assert_eq!(hilbert_symbol(2, 5, Prime(4)), Err(QuaternionError::NotPrime(4)));
    }

    #[test]
    fn class_examples() {
        let h = quaternion_class(-1, -1).unwrap();
        let labels: Vec<String> = h.invariants().keys().map(|v| v.to_string()).collect();
        assert_eq!(labels, vec!["2:0", "inf:real:0"]);
        assert!(h.invariants().values().all(|x| *x == CyclicRational::half()));
        assert!(quaternion_class(1, 7).unwrap().is_trivial());
        let c = quaternion_class(2, 5).unwrap();
        let labels: Vec<String> = c.invariants().keys().map(|v| v.to_string()).collect();
        assert_eq!(labels, vec!["2:0", "5:0"]);
        assert_eq!(quaternion_class(3, 0), Err(QuaternionError::ZeroArgument));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(local_solubility_oracle(-1, -1, Prime(2), Some(6)).unwrap(), -1);
        assert_eq!(local_solubility_oracle(1, 1, Prime(2), Some(6)).unwrap(), 1);
        assert_eq!(
            local_solubility_oracle(3, 7, Prime(3), Some(6)).unwrap(),
            hilbert_symbol(3, 7, Prime(3)).unwrap()
        );
        assert_eq!(local_solubility_oracle(2, 5, Prime(5), None).unwrap(), -1);
        assert_eq!(local_solubility_oracle(-3, -5, Infinite, None).unwrap(), -1);
        // p² factors are stripped before searching
        assert_eq!(local_solubility_oracle(18, 5, Prime(3), None).unwrap(), hilbert_symbol(2, 5, Prime(3)).unwrap());
    }

    #[test]
    fn place_parsing() {
        assert_eq!("inf".parse::<RationalPlace>().unwrap(), Infinite);
        assert_eq!("7".parse::<RationalPlace>().unwrap(), Prime(7));
        assert_eq!("7:0".parse::<RationalPlace>().unwrap(), Prime(7));
        assert!("8".parse::<RationalPlace>().is_err());
    }

    fn squarefree_values() -> Vec<i64> {
        (-30i64..=30).filter(|&n| arith::is_squarefree(n)).collect()
    }

    #[test]
    fn symmetry_and_norm_identity() {
        let places: Vec<RationalPlace> =
            std::iter::once(Infinite).chain(arith::primes_up_to(31).into_iter().map(Prime)).collect();
        for a in -30i64..=30 {
            for b in -30i64..=30 {
                if a == 0 || b == 0 {
                    continue;
                }
                for &v in &places {
                    assert_eq!(hilbert_symbol(a, b, v), hilbert_symbol(b, a, v));
                }
            }
            if a != 0 {
                for &v in &places {
                    assert_eq!(hilbert_symbol(a, -a, v).unwrap(), 1, "({a}, {})_{v}", -a);
                }
            }
        }
    }

    #[test]
    fn bilinearity_on_squarefree_triples() {
        let places: Vec<RationalPlace> =
            std::iter::once(Infinite).chain(arith::primes_up_to(31).into_iter().map(Prime)).collect();
        let vals = squarefree_values();
        for &a in &vals {
            for &b1 in &vals {
                for &b2 in vals.iter().step_by(3) {
                    for &v in &places {
                        let lhs = hilbert_symbol(a, b1 * b2, v).unwrap();
                        let rhs = hilbert_symbol(a, b1, v).unwrap() * hilbert_symbol(a, b2, v).unwrap();
                        assert_eq!(lhs, rhs, "a={a} b1={b1} b2={b2} v={v}");
                    }
                }
            }
        }
    }

    #[test]
    fn oracle_matches_closed_form_on_small_grid() {
        for a in -12i64..=12 {
            for b in -12i64..=12 {
                if a == 0 || b == 0 {
                    continue;
                }
                for p in [2u64, 3, 5, 7, 11] {
                    assert_eq!(
                        local_solubility_oracle(a, b, Prime(p), None).unwrap(),
                        hilbert_symbol(a, b, Prime(p)).unwrap(),
                        "({a},{b})_{p}"
                    );
                }
            }
        }
    }
}
