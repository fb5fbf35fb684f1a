//! The ℚ-span of an explicit matrix representation and its center.
//!
//! For an irreducible representation the center of the span is the character
//! field. For a reducible one it can be strictly bigger: the rotation action of
//! `C₄` on ℚ² has rational character but its span is a copy of `ℚ(i)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::cyclotomic::{phi, CyclotomicNumber};
use super::group::FiniteGroup;
use super::linalg;
use super::GroupError;
use crate::abelian_fields::AbelianField;
use crate::arith;

type Matrix = Vec<Vec<CyclotomicNumber>>;

/// Matrices `ρ(g)` over `ℚ(ζ_e)`, one per group element in table order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixRep {
    modulus: u64,
    dim: usize,
    images: Vec<Matrix>,
}

fn identity(e: u64, d: usize) -> Matrix {
    (0..d).map(|i| (0..d).map(|j| CyclotomicNumber::from_int(e, i64::from(i == j))).collect()).collect()
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let d = a.len();
    let e = a[0][0].modulus();
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    (0..d).fold(CyclotomicNumber::zero(e), |acc, k| &acc + &(&a[i][k] * &b[k][j]))
                })
                .collect()
        })
        .collect()
}

fn mat_sub(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}

fn flatten(m: &Matrix) -> Vec<BigRational> {
    m.iter().flat_map(|row| row.iter().flat_map(|x| x.coeffs().to_vec())).collect()
}

fn unflatten(v: &[BigRational], e: u64, d: usize) -> Matrix {
    let f = phi(e);
    (0..d)
        .map(|i| (0..d).map(|j| CyclotomicNumber::from_coeffs(e, v[(i * d + j) * f..(i * d + j + 1) * f].to_vec())).collect())
        .collect()
}

fn combine(coeffs: &[BigRational], basis: &[Matrix]) -> Matrix {
    let e = basis[0][0][0].modulus();
    let d = basis[0].len();
    let mut acc: Matrix = (0..d).map(|_| (0..d).map(|_| CyclotomicNumber::zero(e)).collect()).collect();
    for (c, m) in coeffs.iter().zip(basis) {
        if c.is_zero() {
            continue;
        }
        for (ra, rm) in acc.iter_mut().zip(m) {
            for (x, y) in ra.iter_mut().zip(rm) {
                *x = &*x + &y.scale(c);
            }
        }
    }
    acc
}

impl MatrixRep {
    /// Checks shapes, `ρ(1) = I`, and multiplicativity on a spread of pairs.
    pub fn new(group: &FiniteGroup, modulus: u64, images: Vec<Matrix>) -> Result<Self, GroupError> {
        let bad = |msg: String| GroupError::NotARepresentation(msg);
        if images.len() != group.order() {
            return Err(bad(format!("{} matrices for a group of order {}", images.len(), group.order())));
        }
        let dim = images[0].len();
        if dim == 0 {
            return Err(bad("zero-dimensional matrices".into()));
        }
        for m in &images {
            if m.len() != dim || m.iter().any(|r| r.len() != dim) {
                return Err(bad("matrices are not all square of one size".into()));
            }
            if m.iter().flatten().any(|x| x.modulus() != modulus) {
                return Err(bad("entries over mixed cyclotomic fields".into()));
            }
        }
        if images[group.identity()] != identity(modulus, dim) {
            return Err(bad("identity does not act trivially".into()));
        }
        let n = group.order();
        let stride = n.div_ceil(16).max(1);
        for g in (0..n).step_by(stride) {
            for h in 0..n {
                if mat_mul(&images[g], &images[h]) != images[group.mul(g, h)] {
                    return Err(bad(format!("rho({g}) rho({h}) != rho({g}*{h})")));
                }
            }
        }
        Ok(MatrixRep { modulus, dim, images })
    }

    /// Matrices with integer entries.
    pub fn from_integer_matrices(group: &FiniteGroup, images: &[Vec<Vec<i64>>]) -> Result<Self, GroupError> {
        let conv = images
            .iter()
            .map(|m| m.iter().map(|r| r.iter().map(|&x| CyclotomicNumber::from_int(1, x)).collect()).collect())
            .collect();
        Self::new(group, 1, conv)
    }

    pub fn trivial(group: &FiniteGroup) -> Self {
        Self::new(group, 1, vec![identity(1, 1); group.order()]).expect("trivial action")
    }

    /// `C₄` acting on ℚ² by `((0,1),(-1,0))`.
    pub fn c4_rotation() -> (FiniteGroup, Self) {
        let g = FiniteGroup::cyclic(4).expect("C4");
        let mats = [
            vec![vec![1, 0], vec![0, 1]],
            vec![vec![0, 1], vec![-1, 0]],
            vec![vec![-1, 0], vec![0, -1]],
            vec![vec![0, -1], vec![1, 0]],
        ];
        let rep = Self::from_integer_matrices(&g, &mats).expect("rotation is a representation");
        (g, rep)
    }

    /// The two-dimensional representation of `Q₈` over `ℚ(i)`.
    pub fn q8_complex() -> (FiniteGroup, Self) {
        let g = FiniteGroup::quaternion8();
        let z = |k: i64| CyclotomicNumber::root_of_unity(4, k);
        let o = || CyclotomicNumber::zero(4);
        let one = vec![vec![z(0), o()], vec![o(), z(0)]];
        let i = vec![vec![z(1), o()], vec![o(), z(3)]];
        let j = vec![vec![o(), z(0)], vec![z(2), o()]];
        let k = vec![vec![o(), z(1)], vec![z(1), o()]];
        let neg = |m: &Matrix| -> Matrix { m.iter().map(|r| r.iter().map(|x| -x).collect()).collect() };
        let images = vec![one.clone(), neg(&one), i.clone(), neg(&i), j.clone(), neg(&j), k.clone(), neg(&k)];
        let rep = Self::new(&g, 4, images).expect("Q8 acts on ℚ(i)²");
        (g, rep)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn image(&self, g: usize) -> &Matrix {
        &self.images[g]
    }

    pub fn trace(&self, g: usize) -> CyclotomicNumber {
        (0..self.dim).fold(CyclotomicNumber::zero(self.modulus), |acc, i| &acc + &self.images[g][i][i])
    }
}

/// Structure of the center of the ℚ-span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CenterStructure {
    Field(AbelianField),
    /// A product of two or more fields.
    NotAField { dimension: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterReport {
    pub algebra_dimension: usize,
    pub center_dimension: usize,
    pub center: CenterStructure,
    /// `ℚ(π)`, generated by the character values.
    pub character_field: AbelianField,
    pub equal: bool,
}

/// Computes the center of `ℚ{ρ(g)}` and compares it with the character field.
pub fn enveloping_center_check(group: &FiniteGroup, rho: &MatrixRep) -> Result<CenterReport, GroupError> {
    if rho.images.len() != group.order() {
        return Err(GroupError::NotARepresentation("representation belongs to another group".into()));
    }
    let e = rho.modulus;
    let d = rho.dim;
    let big_e = arith::lcm(e, group.exponent());

    let mut rows: Vec<Vec<BigRational>> = rho.images.iter().map(flatten).collect();
    linalg::rref_q(&mut rows);
    let basis: Vec<Matrix> = rows.iter().map(|v| unflatten(v, e, d)).collect();
    let k = basis.len();

    // Σ c_i [B_i, B_j] = 0 for every j
    let cols: Vec<Vec<BigRational>> = basis
        .iter()
        .map(|bi| basis.iter().flat_map(|bj| flatten(&mat_sub(&mat_mul(bi, bj), &mat_mul(bj, bi)))).collect())
        .collect();
    let len = cols.first().map_or(0, |c| c.len());
    let system: Vec<Vec<BigRational>> = (0..len).map(|r| (0..k).map(|i| cols[i][r].clone()).collect()).collect();
    let center_coords = linalg::nullspace_q(&system, k);
    let center_basis: Vec<Matrix> = center_coords.iter().map(|c| combine(c, &basis)).collect();
    let c = center_basis.len();

    let center = if c == 1 {
        CenterStructure::Field(AbelianField::rationals())
    } else {
        identify_center(&center_basis, big_e)?
    };

    let traces: Vec<CyclotomicNumber> = (0..group.order()).map(|g| rho.trace(g).lift(big_e)).collect();
    let stab: Vec<i64> = arith::units(big_e)
        .into_iter()
        .filter(|&b| traces.iter().all(|t| t.galois(b) == *t))
        .map(|b| b as i64)
        .collect();
    let character_field = AbelianField::new(big_e, &stab).map_err(GroupError::Field)?;
    let equal = matches!(&center, CenterStructure::Field(f) if *f == character_field);
    Ok(CenterReport { algebra_dimension: k, center_dimension: c, center, character_field, equal })
}

/// Minimal polynomial over ℚ, monic, ascending coefficients.
fn minimal_polynomial(z: &Matrix, max_deg: usize) -> Vec<BigRational> {
    let e = z[0][0].modulus();
    let d = z.len();
    let mut powers = vec![flatten(&identity(e, d))];
    let mut cur = identity(e, d);
    for _ in 0..max_deg {
        cur = mat_mul(&cur, z);
        let v = flatten(&cur);
        if let Some(x) = linalg::solve_in_span_q(&powers, &v) {
            let mut poly: Vec<BigRational> = x.into_iter().map(|c| -c).collect();
            poly.push(BigRational::one());
            return poly;
        }
        powers.push(v);
    }
    unreachable!("an element of a {max_deg}-dimensional algebra has degree at most {max_deg}")
}

fn identify_center(center: &[Matrix], big_e: u64) -> Result<CenterStructure, GroupError> {
    let c = center.len();
    let primitive = (1..=40i64).find_map(|s| {
        let coeffs: Vec<BigRational> = (0..c as u32).map(|i| BigRational::from_integer(BigInt::from(s + 1).pow(i))).collect();
        let f = minimal_polynomial(&combine(&coeffs, center), c);
        (f.len() == c + 1).then_some(f)
    });
    let Some(f) = primitive else {
        return Ok(CenterStructure::NotAField { dimension: c });
    };
    let den = f.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = f.iter().map(|q| (q * BigRational::from_integer(den.clone())).to_integer()).collect();

    let units = arith::units(big_e);
    let mut split = Vec::new();
    for &b in &units {
        let count = split_count(&ints, b, big_e);
        if count == c {
            split.push(b);
        } else if count != 0 {
            return Ok(CenterStructure::NotAField { dimension: c });
        }
    }
    if split.len() * c != units.len() {
        return Ok(CenterStructure::NotAField { dimension: c });
    }
    let gens: Vec<i64> = split.iter().map(|&b| b as i64).collect();
    let field = AbelianField::new(big_e, &gens).map_err(GroupError::Field)?;
    if field.degree() as usize != c {
        return Ok(CenterStructure::NotAField { dimension: c });
    }
    Ok(CenterStructure::Field(field))
}

/// Number of roots of `f` mod the first good prime `ℓ ≡ b (mod E)`.
fn split_count(f: &[BigInt], b: u64, big_e: u64) -> usize {
    let mut l = b % big_e + big_e;
    loop {
        if arith::is_prime(l) {
            let red: Vec<u64> = f
                .iter()
                .map(|x| {
                    let m = BigInt::from(l);
                    let r = x.mod_floor(&m);
                    u64::try_from(r.abs()).expect("reduced")
                })
                .collect();
            if *red.last().unwrap() != 0 && squarefree_mod(&red, l) {
                return (0..l).filter(|&x| linalg::eval_mod(&red, x, l) == 0).count();
            }
        }
        l += big_e;
    }
}

fn trim(p: &mut Vec<u64>) {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
}

fn poly_rem(a: &[u64], b: &[u64], l: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = arith::inv_mod(b[db], l).expect("nonzero leading coefficient");
    while r.len() > db && !(r.len() == 1 && r[0] == 0) {
        let top = arith::mul_mod(*r.last().unwrap(), inv, l);
        let shift = r.len() - 1 - db;
        for (i, &bc) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + l - arith::mul_mod(top, bc, l)) % l;
        }
        r.pop();
        trim(&mut r);
        if r.len() <= db {
            break;
        }
    }
    if r.is_empty() {
        r.push(0);
    }
    trim(&mut r);
    r
}

fn squarefree_mod(f: &[u64], l: u64) -> bool {
    let deriv: Vec<u64> = f.iter().enumerate().skip(1).map(|(i, &c)| arith::mul_mod(c, i as u64 % l, l)).collect();
    let mut a = f.to_vec();
    let mut b = deriv;
    trim(&mut b);
    if b.iter().all(|&x| x == 0) {
        return f.len() <= 1;
    }
    while !(b.len() == 1 && b[0] == 0) {
        let r = poly_rem(&a, &b, l);
        a = b;
        b = r;
    }
    a.len() == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_of_c4() {
        let (g, rho) = MatrixRep::c4_rotation();
        let rep = enveloping_center_check(&g, &rho).unwrap();
        assert_eq!(rep.center, CenterStructure::Field(AbelianField::cyclotomic(4).unwrap()));
        assert!(rep.character_field.is_rationals());
        assert!(!rep.equal);
        assert_eq!(rep.algebra_dimension, 2);
    }

    #[test]
    fn quaternion_over_gaussian_field() {
        let (g, rho) = MatrixRep::q8_complex();
        let rep = enveloping_center_check(&g, &rho).unwrap();
        assert_eq!(rep.center, CenterStructure::Field(AbelianField::rationals()));
        assert!(rep.character_field.is_rationals());
        assert!(rep.equal);
        assert_eq!(rep.algebra_dimension, 4);
    }

    #[test]
    fn trivial_rep() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let rep = enveloping_center_check(&g, &MatrixRep::trivial(&g)).unwrap();
        assert!(rep.equal);
        assert_eq!(rep.center, CenterStructure::Field(AbelianField::rationals()));
    }

    #[test]
    fn faithful_character_of_c3() {
        let g = FiniteGroup::cyclic(3).unwrap();
        let images = (0..3).map(|k| vec![vec![CyclotomicNumber::root_of_unity(3, k)]]).collect();
        let rho = MatrixRep::new(&g, 3, images).unwrap();
        let rep = enveloping_center_check(&g, &rho).unwrap();
        assert_eq!(rep.center, CenterStructure::Field(AbelianField::cyclotomic(3).unwrap()));
        assert!(rep.equal);
    }

    #[test]
    fn regular_rep_of_c2_has_split_center() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let rho = MatrixRep::from_integer_matrices(&g, &[vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 0]]])
            .unwrap();
        let rep = enveloping_center_check(&g, &rho).unwrap();
        assert_eq!(rep.center, CenterStructure::NotAField { dimension: 2 });
        assert!(!rep.equal);
    }

    #[test]
    fn rejects_non_homomorphisms() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let mats = vec![
            vec![vec![1, 0], vec![0, 1]],
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![0, 1], vec![1, 0]],
        ];
        assert!(matches!(MatrixRep::from_integer_matrices(&g, &mats), Err(GroupError::NotARepresentation(_))));
    }
}
