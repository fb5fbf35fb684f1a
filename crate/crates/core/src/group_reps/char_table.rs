//! Irreducible character tables by Dixon's modular method.
//!
//! Class-sum matrices are diagonalised simultaneously over `𝔽_ℓ` with
//! `ℓ ≡ 1 (mod e)`. The resulting central characters give the characters
//! mod ℓ, and each value `χ(g)` is recovered exactly from the multiplicities
//! of the eigenvalues of `g`, which are read off against a fixed primitive
//! `e`-th root of unity mod ℓ.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::cyclotomic::CyclotomicNumber;
use super::group::FiniteGroup;
use super::linalg;
use super::GroupError;
use crate::arith;
use crate::config::Limits;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub size: usize,
    pub representative: usize,
    pub element_order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    group_order: usize,
    exponent: u64,
    classes: Vec<ConjugacyClass>,
    /// `power_map[k][j]` is the class of `g_k^j` for `0 <= j < e`.
    power_map: Vec<Vec<usize>>,
    characters: Vec<Vec<CyclotomicNumber>>,
}

impl CharacterTable {
    pub fn group_order(&self) -> usize {
        self.group_order
    }

    /// The values live in `ℚ(ζ_e)` for this `e`.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    pub fn characters(&self) -> &[Vec<CyclotomicNumber>] {
        &self.characters
    }

    pub fn character(&self, idx: usize) -> Result<&[CyclotomicNumber], GroupError> {
        self.characters.get(idx).map(|c| c.as_slice()).ok_or(GroupError::NoSuchCharacter(idx))
    }

    pub fn degree(&self, idx: usize) -> Result<u64, GroupError> {
        let v = self.character(idx)?[0].as_rational().expect("degrees are integers");
        Ok(v.to_integer().try_into().expect("degree fits"))
    }

    /// Class of `g_k^j`.
    pub fn power_class(&self, k: usize, j: u64) -> usize {
        self.power_map[k][(j % self.exponent) as usize]
    }

    /// Class of `g_k^{-1}`.
    pub fn inverse_class(&self, k: usize) -> usize {
        self.power_class(k, self.exponent - 1)
    }

    /// `⟨χ, ψ⟩ · |G|`, that is `Σ_k h_k χ(g_k) ψ(g_k^{-1})`.
    pub fn inner_product_scaled(&self, a: &[CyclotomicNumber], b: &[CyclotomicNumber]) -> CyclotomicNumber {
        let mut acc = CyclotomicNumber::zero(self.exponent);
        for (k, cls) in self.classes.iter().enumerate() {
            let term = &a[k] * &b[self.inverse_class(k)];
            acc = &acc + &term.scale(&BigRational::from_integer(cls.size.into()));
        }
        acc
    }
}

pub fn character_table(g: &FiniteGroup) -> Result<CharacterTable, GroupError> {
    character_table_with_limits(g, &Limits::default())
}

pub fn character_table_with_limits(g: &FiniteGroup, limits: &Limits) -> Result<CharacterTable, GroupError> {
    let n = g.order();
    if n > limits.max_group_order {
        return Err(GroupError::TooLarge { order: n, cap: limits.max_group_order });
    }
    let e = g.exponent();
    let classes: Vec<ConjugacyClass> = g
        .classes()
        .iter()
        .map(|c| ConjugacyClass { size: c.len(), representative: c[0], element_order: g.element_order(c[0]) })
        .collect();
    let r = classes.len();
    let power_map: Vec<Vec<usize>> = classes
        .iter()
        .map(|c| {
            let mut x = g.identity();
            (0..e)
                .map(|_| {
                    let k = g.class_of(x);
                    x = g.mul(x, c.representative);
                    k
                })
                .collect()
        })
        .collect();

    let l = dixon_prime(n as u64, e);
    let z = primitive_root_of_unity(e, l);

    let central = central_characters(g, &classes, l)?;

    let mut characters = Vec::with_capacity(r);
    for w in central {
        // χ(1)² = |G| / Σ_k w_k w_{k*} / h_k
        let mut s = 0u64;
        for k in 0..r {
            let kstar = power_map[k][(e - 1) as usize];
            let term = arith::mul_mod(w[k], w[kstar], l);
            let hinv = arith::inv_mod(classes[k].size as u64 % l, l).expect("class size below ℓ");
            s = (s + arith::mul_mod(term, hinv, l)) % l;
        }
        let sinv = arith::inv_mod(s, l).ok_or(GroupError::Internal("degenerate central character"))?;
        let deg_sq = arith::mul_mod(n as u64 % l, sinv, l);
        let deg = (1..=n as u64)
            .take_while(|d| d * d <= n as u64)
            .find(|d| d * d % l == deg_sq)
            .ok_or(GroupError::Internal("no integer degree"))?;
        let modvals: Vec<u64> = (0..r)
            .map(|k| {
                let hinv = arith::inv_mod(classes[k].size as u64 % l, l).unwrap();
                arith::mul_mod(arith::mul_mod(deg, w[k], l), hinv, l)
            })
            .collect();
        let mut row = Vec::with_capacity(r);
        for (k, cls) in classes.iter().enumerate() {
            row.push(lift_value(&modvals, &power_map[k], cls.element_order, e, z, l, deg)?);
        }
        characters.push(row);
    }

    // trivial first, then by degree, then by value coordinates
    let key = |row: &Vec<CyclotomicNumber>| {
        let trivial = row.iter().all(|v| v.as_rational() == Some(BigRational::from_integer(1.into())));
        let deg = row[0].as_rational().unwrap();
        let coords: Vec<BigRational> = row.iter().flat_map(|v| v.coeffs().to_vec()).collect();
        (!trivial, deg, coords)
    };
    characters.sort_by_cached_key(key);

    let table = CharacterTable { group_order: n, exponent: e, classes, power_map, characters };
    verify(&table)?;
    Ok(table)
}

/// Least prime `ℓ ≡ 1 (mod e)` with `ℓ > 2·√n·n`.
fn dixon_prime(n: u64, e: u64) -> u64 {
    let bound = 2.0 * (n as f64).sqrt() * n as f64;
    let mut l = e + 1;
    while (l as f64) <= bound || !arith::is_prime(l) {
        l += e;
    }
    l
}

fn primitive_root_of_unity(e: u64, l: u64) -> u64 {
    let qs: Vec<u64> = arith::factorize(l - 1).into_iter().map(|(q, _)| q).collect();
    let gen = (2..l).find(|&a| qs.iter().all(|&q| arith::pow_mod(a, (l - 1) / q, l) != 1)).expect("prime field");
    arith::pow_mod(gen, (l - 1) / e, l)
}

/// Common eigenvectors of the class-sum matrices, normalised at the identity class.
fn central_characters(g: &FiniteGroup, classes: &[ConjugacyClass], l: u64) -> Result<Vec<Vec<u64>>, GroupError> {
    let r = classes.len();
    let identity_basis: Vec<Vec<u64>> = (0..r).map(|i| (0..r).map(|j| u64::from(i == j)).collect()).collect();
    let mut blocks = vec![identity_basis];
    for j in 1..r {
        if blocks.iter().all(|b| b.len() == 1) {
            break;
        }
        let m = class_matrix(g, classes, j, l);
        let mut next = Vec::new();
        for block in blocks {
            if block.len() == 1 {
                next.push(block);
                continue;
            }
            next.extend(split_block(&m, block, l)?);
        }
        blocks = next;
    }
    if blocks.len() != r {
        return Err(GroupError::Internal("class-sum matrices did not split"));
    }
    blocks
        .into_iter()
        .map(|b| {
            let v = &b[0];
            let inv = arith::inv_mod(v[0], l).ok_or(GroupError::Internal("eigenvector vanishes at identity"))?;
            Ok(v.iter().map(|&x| arith::mul_mod(x, inv, l)).collect())
        })
        .collect()
}

/// `(M_j)_{k,l} = #{x ∈ C_j : x^{-1} g_l ∈ C_k}`.
fn class_matrix(g: &FiniteGroup, classes: &[ConjugacyClass], j: usize, l: u64) -> Vec<Vec<u64>> {
    let r = classes.len();
    let mut m = vec![vec![0u64; r]; r];
    for (col, cls) in classes.iter().enumerate() {
        for &x in &g.classes()[j] {
            let k = g.class_of(g.mul(g.inv(x), cls.representative));
            m[k][col] += 1;
        }
    }
    for row in m.iter_mut() {
        for x in row.iter_mut() {
            *x %= l;
        }
    }
    m
}

/// Splits an `M`-invariant subspace (rows in reduced echelon form) into eigenspaces.
fn split_block(m: &[Vec<u64>], block: Vec<Vec<u64>>, l: u64) -> Result<Vec<Vec<Vec<u64>>>, GroupError> {
    let d = block.len();
    let mut rows = block;
    let pivots = linalg::rref_mod(&mut rows, l);
    // images M v expressed in the block basis via pivot coordinates
    let mut a = vec![vec![0u64; d]; d];
    for (i, v) in rows.iter().enumerate() {
        let mv: Vec<u64> = m
            .iter()
            .map(|mrow| mrow.iter().zip(v).fold(0, |acc, (&x, &y)| (acc + arith::mul_mod(x, y, l)) % l))
            .collect();
        for (row_idx, &p) in pivots.iter().enumerate() {
            a[row_idx][i] = mv[p];
        }
    }
    let cp = linalg::charpoly_mod(&a, l);
    let roots: Vec<u64> = (0..l).filter(|&x| linalg::eval_mod(&cp, x, l) == 0).collect();
    if roots.len() == 1 {
        return Ok(vec![rows]);
    }
    let mut out = Vec::new();
    let mut total = 0;
    for lam in roots {
        let shifted: Vec<Vec<u64>> = (0..d)
            .map(|i| (0..d).map(|j| if i == j { (a[i][j] + l - lam) % l } else { a[i][j] }).collect())
            .collect();
        let ns = linalg::nullspace_mod(&shifted, d, l);
        let mut vecs: Vec<Vec<u64>> = ns
            .iter()
            .map(|c| {
                let mut v = vec![0u64; rows[0].len()];
                for (coef, basis) in c.iter().zip(&rows) {
                    for (x, &b) in v.iter_mut().zip(basis) {
                        *x = (*x + arith::mul_mod(*coef, b, l)) % l;
                    }
                }
                v
            })
            .collect();
        linalg::rref_mod(&mut vecs, l);
        total += vecs.len();
        out.push(vecs);
    }
    if total != d {
        return Err(GroupError::Internal("class-sum matrix not diagonalisable"));
    }
    Ok(out)
}

/// Recovers `χ(g)` from `χ(g^j) mod ℓ` via eigenvalue multiplicities.
fn lift_value(
    modvals: &[u64],
    powers: &[usize],
    order: u64,
    e: u64,
    z: u64,
    l: u64,
    deg: u64,
) -> Result<CyclotomicNumber, GroupError> {
    let step = e / order;
    let zo = arith::pow_mod(z, step, l);
    let zo_inv = arith::inv_mod(zo, l).unwrap();
    let o_inv = arith::inv_mod(order % l, l).unwrap();
    let mut terms = Vec::new();
    for s in 0..order {
        let base = arith::pow_mod(zo_inv, s, l);
        let mut acc = 0u64;
        let mut w = 1u64;
        for j in 0..order {
            acc = (acc + arith::mul_mod(modvals[powers[j as usize]], w, l)) % l;
            w = arith::mul_mod(w, base, l);
        }
        let mult = arith::mul_mod(acc, o_inv, l);
        if mult > deg {
            return Err(GroupError::Internal("eigenvalue multiplicity out of range"));
        }
        if mult != 0 {
            terms.push(((s * step) as i64, BigRational::from_integer(BigInt::from(mult))));
        }
    }
    Ok(CyclotomicNumber::from_exponents(e, terms))
}

/// Both orthogonality relations, checked exactly.
pub(crate) fn verify(t: &CharacterTable) -> Result<(), GroupError> {
    let n = BigRational::from_integer(t.group_order.into());
    let r = t.classes.len();
    if t.characters.len() != r {
        return Err(GroupError::Internal("wrong number of characters"));
    }
    for i in 0..r {
        for j in i..r {
            let ip = t.inner_product_scaled(&t.characters[i], &t.characters[j]);
            let want = if i == j { n.clone() } else { BigRational::zero() };
            if ip.as_rational() != Some(want) {
                return Err(GroupError::Internal("row orthogonality failed"));
            }
        }
    }
    for k in 0..r {
        for m in k..r {
            let mut acc = CyclotomicNumber::zero(t.exponent);
            for chi in &t.characters {
                acc = &acc + &(&chi[k] * &chi[t.inverse_class(m)]);
            }
            let want = if k == m {
                &n / BigRational::from_integer(t.classes[k].size.into())
            } else {
                BigRational::zero()
            };
            if acc.as_rational() != Some(want) {
                return Err(GroupError::Internal("column orthogonality failed"));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(e: u64, n: i64) -> CyclotomicNumber {
        CyclotomicNumber::from_int(e, n)
    }

    #[test]
    fn dixon_prime_choice() {
        // 2·√8·8 ≈ 45.25, so the least prime ≡ 1 mod 4 above it
        assert_eq!(dixon_prime(8, 4), 53);
        assert_eq!(dixon_prime(1, 1), 3);
    }

    #[test]
    fn cyclic_four() {
        let t = character_table(&FiniteGroup::cyclic(4).unwrap()).unwrap();
        assert_eq!(t.len(), 4);
        for chi in t.characters() {
            assert_eq!(chi[0], int(4, 1));
        }
        let i = CyclotomicNumber::root_of_unity(4, 1);
        assert!(t.characters().iter().any(|chi| chi[1] == i));
        assert!(t.characters().iter().any(|chi| chi[1] == i.conj()));
    }

    #[test]
    fn quaternion_group() {
        let t = character_table(&FiniteGroup::quaternion8()).unwrap();
        let degrees: Vec<u64> = (0..t.len()).map(|i| t.degree(i).unwrap()).collect();
        assert_eq!(degrees, vec![1, 1, 1, 1, 2]);
        let two: Vec<CyclotomicNumber> = [2, -2, 0, 0, 0].iter().map(|&v| int(4, v)).collect();
        assert_eq!(t.characters()[4], two);
    }

    #[test]
    fn trivial_group() {
        let t = character_table(&FiniteGroup::trivial()).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.characters()[0], vec![int(1, 1)]);
    }

    #[test]
    fn symmetric_groups() {
        let t = character_table(&FiniteGroup::symmetric(4).unwrap()).unwrap();
        let mut degrees: Vec<u64> = (0..t.len()).map(|i| t.degree(i).unwrap()).collect();
        degrees.sort_unstable();
        assert_eq!(degrees, vec![1, 1, 2, 3, 3]);
        let t5 = character_table(&FiniteGroup::symmetric(5).unwrap()).unwrap();
        let mut d5: Vec<u64> = (0..t5.len()).map(|i| t5.degree(i).unwrap()).collect();
        d5.sort_unstable();
        assert_eq!(d5, vec![1, 1, 4, 4, 5, 5, 6]);
    }

    #[test]
    fn order_cap() {
        let limits = Limits { max_group_order: 5, ..Limits::default() };
        assert!(matches!(
            character_table_with_limits(&FiniteGroup::symmetric(3).unwrap(), &limits),
            Err(GroupError::TooLarge { .. })
        ));
    }
}
