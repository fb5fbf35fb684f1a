//! Rational structure of `ℚ[G]·e_χ` for rational characters of degree at most 2.
//!
//! When `χ(1) = 2` and `ℚ(χ) = ℚ` the simple component `A = ℚ[G]e_χ` is a
//! quaternion algebra. A non-scalar `c ∈ A` gives a pure quaternion `x` with
//! `x² = a`, an element `y` anticommuting with `x` gives `y² = b`, and then
//! `A ≅ (a, b)_ℚ`. A square `a` or `b` exhibits a zero divisor, hence a
//! rational model.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::char_table::CharacterTable;
use super::group::FiniteGroup;
use super::linalg;
use super::rationality::field_of_rationality;
use super::GroupError;
use crate::abelian_fields::AbelianField;
use crate::brauer::CsaClass;
use crate::config::Limits;
use crate::quaternion::quaternion_class;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SchurOutcome {
    /// `ℚ[G]e_χ ≅ (a, b)_ℚ`, a division algebra.
    Quaternion { a: i64, b: i64, class: CsaClass },
    /// The character is realised over ℚ.
    RationalModel { class: CsaClass },
    NotImplemented { reason: String },
}

impl SchurOutcome {
    pub fn class(&self) -> Option<&CsaClass> {
        match self {
            SchurOutcome::Quaternion { class, .. } | SchurOutcome::RationalModel { class } => Some(class),
            SchurOutcome::NotImplemented { .. } => None,
        }
    }
}

type Elt = Vec<BigRational>;

fn alg_mul(g: &FiniteGroup, a: &Elt, b: &Elt) -> Elt {
    let n = g.order();
    let mut out = vec![BigRational::zero(); n];
    for (x, ax) in a.iter().enumerate() {
        if ax.is_zero() {
            continue;
        }
        for (y, by) in b.iter().enumerate() {
            if !by.is_zero() {
                out[g.mul(x, y)] += ax * by;
            }
        }
    }
    out
}

fn right_translate(g: &FiniteGroup, a: &Elt, h: usize) -> Elt {
    let mut out = vec![BigRational::zero(); a.len()];
    for (x, ax) in a.iter().enumerate() {
        out[g.mul(x, h)] = ax.clone();
    }
    out
}

fn add_scaled(a: &Elt, b: &Elt, s: &BigRational) -> Elt {
    a.iter().zip(b).map(|(x, y)| x + y * s).collect()
}

fn is_rational_square(q: &BigRational) -> bool {
    if q.is_negative() {
        return false;
    }
    let sq = |n: &BigInt| {
        let r = n.sqrt();
        &r * &r == *n
    };
    sq(q.numer()) && sq(q.denom())
}

/// An integer in the same square class as `q`, with square factors removed.
fn square_class(q: &BigRational) -> Option<i64> {
    let n = (q.numer() * q.denom()).to_i64()?;
    let sign = n.signum();
    let mut m = n.abs();
    let mut out = 1i64;
    let mut p = 2i64;
    while p * p <= m {
        let mut k = 0;
        while m % p == 0 {
            m /= p;
            k += 1;
        }
        if k % 2 == 1 {
            out *= p;
        }
        p += 1;
    }
    Some(sign * out * m)
}

/// `x` with `x = t·e` for some rational `t`, if any.
fn scalar_of(x: &Elt, e: &Elt) -> Option<BigRational> {
    linalg::solve_in_span_q(&[e.clone()], x).map(|v| v[0].clone())
}

pub fn schur_index_quaternion_case(
    group: &FiniteGroup,
    table: &CharacterTable,
    idx: usize,
) -> Result<SchurOutcome, GroupError> {
    schur_index_quaternion_case_with_limits(group, table, idx, &Limits::default())
}

pub fn schur_index_quaternion_case_with_limits(
    group: &FiniteGroup,
    table: &CharacterTable,
    idx: usize,
    limits: &Limits,
) -> Result<SchurOutcome, GroupError> {
    let q = AbelianField::rationals();
    if table.group_order() != group.order() || table.classes().len() != group.classes().len() {
        return Err(GroupError::TableMismatch);
    }
    if !field_of_rationality(table, idx)?.is_rationals() {
        return Ok(SchurOutcome::NotImplemented { reason: "character field is not ℚ".into() });
    }
    let deg = table.degree(idx)?;
    if deg == 1 {
        return Ok(SchurOutcome::RationalModel { class: CsaClass::trivial(&q) });
    }
    if deg != 2 {
        return Ok(SchurOutcome::NotImplemented { reason: format!("degree {deg} is outside the quaternion case") });
    }

    let chi = table.character(idx)?;
    let n = group.order();
    let scale = BigRational::new(BigInt::from(deg), BigInt::from(n));
    let e: Elt = (0..n)
        .map(|g| chi[group.class_of(group.inv(g))].as_rational().expect("rational character") * &scale)
        .collect();

    // translates e·h, which span A
    let translates: Vec<Elt> = (0..n).map(|h| right_translate(group, &e, h)).collect();
    let mut basis: Vec<Elt> = Vec::new();
    for t in &translates {
        if basis.len() == 4 {
            break;
        }
        let mut trial = basis.clone();
        trial.push(t.clone());
        if linalg::rref_q(&mut trial.clone()).len() == trial.len() {
            basis = trial;
        }
    }

    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut tried = 0usize;
    for c in &translates {
        if tried >= limits.schur_search_budget {
            break;
        }
        tried += 1;
        if scalar_of(c, &e).is_some() {
            continue;
        }
        let c2 = alg_mul(group, c, c);
        let Some(ts) = linalg::solve_in_span_q(&[c.clone(), e.clone()], &c2) else {
            continue;
        };
        let (t, s) = (&ts[0], &ts[1]);
        let x = add_scaled(c, &e, &-(t * &half));
        let a = s + t * t / BigRational::from_integer(4.into());
        if a.is_zero() || is_rational_square(&a) {
            return Ok(SchurOutcome::RationalModel { class: CsaClass::trivial(&q) });
        }
        let anticommutes = |y: &Elt| {
            let s = add_scaled(&alg_mul(group, &x, y), &alg_mul(group, y, &x), &BigRational::one());
            s.iter().all(|v| v.is_zero())
        };
        let y = match translates.iter().find(|y| anticommutes(y)) {
            Some(y) => y.clone(),
            None => {
                // λ with x(Σλ_i B_i) + (Σλ_i B_i)x = 0
                let cols: Vec<Elt> = basis
                    .iter()
                    .map(|b| add_scaled(&alg_mul(group, &x, b), &alg_mul(group, b, &x), &BigRational::one()))
                    .collect();
                let rows: Vec<Vec<BigRational>> = (0..n).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
                let Some(lambda) = linalg::nullspace_q(&rows, basis.len()).into_iter().next() else {
                    continue;
                };
                basis.iter().zip(&lambda).fold(vec![BigRational::zero(); n], |acc, (bv, l)| add_scaled(&acc, bv, l))
            }
        };
        let Some(b) = scalar_of(&alg_mul(group, &y, &y), &e) else {
            continue;
        };
        if b.is_zero() || is_rational_square(&b) {
            return Ok(SchurOutcome::RationalModel { class: CsaClass::trivial(&q) });
        }
        let (Some(ai), Some(bi)) = (square_class(&a), square_class(&b)) else {
            continue;
        };
        let class = quaternion_class(ai, bi)?;
        if class.is_trivial() {
            return Ok(SchurOutcome::RationalModel { class });
        }
        return Ok(SchurOutcome::Quaternion { a: ai, b: bi, class });
    }
    Ok(SchurOutcome::NotImplemented { reason: "no certificate within the search budget".into() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_reps::character_table;

    #[test]
    fn quaternion_group_gives_hamilton_quaternions() {
        let g = FiniteGroup::quaternion8();
        let t = character_table(&g).unwrap();
        let out = schur_index_quaternion_case(&g, &t, 4).unwrap();
        let want = quaternion_class(-1, -1).unwrap();
        assert_eq!(out.class(), Some(&want));
        assert!(matches!(out, SchurOutcome::Quaternion { a: -1, b: -1, .. }));
    }

    #[test]
    fn s3_standard_is_rational() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let t = character_table(&g).unwrap();
        let two = (0..t.len()).find(|&i| t.degree(i).unwrap() == 2).unwrap();
        let out = schur_index_quaternion_case(&g, &t, two).unwrap();
        assert!(matches!(&out, SchurOutcome::RationalModel { class } if class.is_trivial()));
    }

    #[test]
    fn linear_and_out_of_scope() {
        let g = FiniteGroup::quaternion8();
        let t = character_table(&g).unwrap();
        for i in 0..4 {
            let out = schur_index_quaternion_case(&g, &t, i).unwrap();
            assert!(out.class().unwrap().is_trivial());
        }
        let c3 = FiniteGroup::cyclic(3).unwrap();
        let t3 = character_table(&c3).unwrap();
        assert!(matches!(schur_index_quaternion_case(&c3, &t3, 1).unwrap(), SchurOutcome::NotImplemented { .. }));
        let s4 = FiniteGroup::symmetric(4).unwrap();
        let t4 = character_table(&s4).unwrap();
        let three = (0..t4.len()).find(|&i| t4.degree(i).unwrap() == 3).unwrap();
        assert!(matches!(schur_index_quaternion_case(&s4, &t4, three).unwrap(), SchurOutcome::NotImplemented { .. }));
    }

    #[test]
    fn dihedral_and_dicyclic_degree_two() {
        // D4 is split, Q8 is not; both have a rational 2-dimensional character
        let d4 = FiniteGroup::dihedral(4).unwrap();
        let t = character_table(&d4).unwrap();
        let two = (0..t.len()).find(|&i| t.degree(i).unwrap() == 2).unwrap();
        assert!(schur_index_quaternion_case(&d4, &t, two).unwrap().class().unwrap().is_trivial());
    }
}
