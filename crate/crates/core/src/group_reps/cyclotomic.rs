//! Exact elements of `ℚ(ζ_e)` in the power basis `1, ζ, …, ζ^{φ(e)-1}`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith;

/// Reduction data for one modulus: `ζ^k` in the power basis for every `0 <= k < e`.
#[derive(Debug)]
struct PowerTable {
    phi: usize,
    powers: Vec<Vec<BigInt>>,
}

fn cyclotomic_poly(e: u64, memo: &mut HashMap<u64, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = memo.get(&e) {
        return p.clone();
    }
    // x^e - 1, ascending coefficients
    let mut num = vec![BigInt::zero(); e as usize + 1];
    num[0] = BigInt::from(-1);
    num[e as usize] = BigInt::one();
    for d in arith::divisors(e) {
        if d == e {
            continue;
        }
        let div = cyclotomic_poly(d, memo);
        num = exact_div(&num, &div);
    }
    memo.insert(e, num.clone());
    num
}

/// Quotient of monic-divisor polynomial division (remainder must be zero).
fn exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = num.len() - 1;
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for i in (0..=nd - dd).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

fn table(e: u64) -> Arc<PowerTable> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<PowerTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&e) {
        return t.clone();
    }
    let poly = cyclotomic_poly(e, &mut HashMap::new());
    let phi = poly.len() - 1;
    let mut powers = Vec::with_capacity(e as usize);
    let mut cur = vec![BigInt::zero(); phi];
    cur[0] = BigInt::one();
    for _ in 0..e {
        powers.push(cur.clone());
        // multiply by ζ and reduce with ζ^φ = -Σ poly[i] ζ^i
        let top = cur[phi - 1].clone();
        let mut next = vec![BigInt::zero(); phi];
        for i in (1..phi).rev() {
            next[i] = cur[i - 1].clone();
        }
        for i in 0..phi {
            next[i] -= &top * &poly[i];
        }
        cur = next;
    }
    let t = Arc::new(PowerTable { phi, powers });
    cache.lock().unwrap().insert(e, t.clone());
    t
}

pub fn phi(e: u64) -> usize {
    table(e).phi
}

/// An element of `ℚ(ζ_e)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    modulus: u64,
    coeffs: Vec<BigRational>,
}

impl CyclotomicNumber {
    pub fn zero(e: u64) -> Self {
        CyclotomicNumber { modulus: e, coeffs: vec![BigRational::zero(); phi(e)] }
    }

    pub fn rational(e: u64, q: BigRational) -> Self {
        let mut z = Self::zero(e);
        z.coeffs[0] = q;
        z
    }

    pub fn from_int(e: u64, n: i64) -> Self {
        Self::rational(e, BigRational::from_integer(n.into()))
    }

    /// `ζ_e^k`.
    pub fn root_of_unity(e: u64, k: i64) -> Self {
        Self::from_exponents(e, [(k, BigRational::one())])
    }

    /// `Σ c · ζ_e^k` over the given `(k, c)` pairs.
    pub fn from_exponents(e: u64, terms: impl IntoIterator<Item = (i64, BigRational)>) -> Self {
        let t = table(e);
        let mut coeffs = vec![BigRational::zero(); t.phi];
        for (k, c) in terms {
            let k = arith::residue(k, e) as usize;
            for (slot, p) in coeffs.iter_mut().zip(&t.powers[k]) {
                if !p.is_zero() {
                    *slot += &c * BigRational::from_integer(p.clone());
                }
            }
        }
        CyclotomicNumber { modulus: e, coeffs }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Power-basis coordinates over ℚ.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn from_coeffs(e: u64, coeffs: Vec<BigRational>) -> Self {
        assert_eq!(coeffs.len(), phi(e), "coefficient vector has wrong length");
        CyclotomicNumber { modulus: e, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn terms(&self) -> impl Iterator<Item = (i64, BigRational)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i as i64, c.clone()))
    }

    /// The Galois conjugate under `ζ ↦ ζ^b`, `b` a unit mod the modulus.
    pub fn galois(&self, b: u64) -> Self {
        let e = self.modulus as i64;
        let b = b as i64;
        Self::from_exponents(self.modulus, self.terms().map(|(i, c)| ((i * b).rem_euclid(e), c)))
    }

    pub fn conj(&self) -> Self {
        self.galois(self.modulus.saturating_sub(1).max(1))
    }

    /// The same number viewed in `ℚ(ζ_f)` for a multiple `f` of the modulus.
    pub fn lift(&self, f: u64) -> Self {
        assert_eq!(f % self.modulus, 0, "target modulus must be a multiple");
        let step = (f / self.modulus) as i64;
        Self::from_exponents(f, self.terms().map(|(i, c)| (i * step, c)))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CyclotomicNumber { modulus: self.modulus, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.modulus, other.modulus, "mixed cyclotomic moduli");
    }
}

impl Add for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: Self) -> CyclotomicNumber {
        self.check(rhs);
        CyclotomicNumber {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: Self) -> CyclotomicNumber {
        self.check(rhs);
        CyclotomicNumber {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber { modulus: self.modulus, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl Mul for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: Self) -> CyclotomicNumber {
        self.check(rhs);
        let e = self.modulus as usize;
        let mut acc = vec![BigRational::zero(); e];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    acc[(i + j) % e] += a * b;
                }
            }
        }
        CyclotomicNumber::from_exponents(
            self.modulus,
            acc.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k as i64, c)),
        )
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = *c < BigRational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one();
            match (i, unit) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "z{}", if i == 1 { String::new() } else { format!("^{i}") })?,
                (_, false) => write!(f, "{mag}*z{}", if i == 1 { String::new() } else { format!("^{i}") })?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
