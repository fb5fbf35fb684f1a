//! Exact linear algebra over ℚ and over `𝔽_ℓ`.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith;

/// Row-reduces in place; returns the pivot columns. Zero rows are dropped.
pub fn rref_q(rows: &mut Vec<Vec<BigRational>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = BigRational::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{x : A x = 0}` for `A` given by rows with `ncols` columns.
pub fn nullspace_q(a: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigRational>> {
    let mut rows = a.to_vec();
    let pivots = if rows.is_empty() { Vec::new() } else { rref_q(&mut rows) };
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); ncols];
            v[f] = BigRational::one();
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Coordinates of `target` in the span of `basis`, if it lies there.
pub fn solve_in_span_q(basis: &[Vec<BigRational>], target: &[BigRational]) -> Option<Vec<BigRational>> {
    let k = basis.len();
    // columns are basis vectors, augmented by target
    let rows: Vec<Vec<BigRational>> = (0..target.len())
        .map(|i| {
            let mut row: Vec<BigRational> = basis.iter().map(|b| b[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let mut rows = rows;
    let pivots = rref_q(&mut rows);
    if pivots.contains(&k) {
        return None;
    }
    let mut x = vec![BigRational::zero(); k];
    for (row, &pc) in rows.iter().zip(&pivots) {
        x[pc] = row[k].clone();
    }
    Some(x)
}

/// Row-reduces over `𝔽_ℓ` in place; returns pivot columns, zero rows dropped.
pub fn rref_mod(rows: &mut Vec<Vec<u64>>, l: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = arith::inv_mod(rows[r][c], l).expect("nonzero mod prime");
        for x in rows[r].iter_mut() {
            *x = arith::mul_mod(*x, inv, l);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + l - arith::mul_mod(f, y, l)) % l;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn nullspace_mod(a: &[Vec<u64>], ncols: usize, l: u64) -> Vec<Vec<u64>> {
    let mut rows = a.to_vec();
    let pivots = if rows.is_empty() { Vec::new() } else { rref_mod(&mut rows, l) };
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![0; ncols];
            v[f] = 1;
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = (l - row[f]) % l;
            }
            v
        })
        .collect()
}

/// Characteristic polynomial `det(xI - A)` over `𝔽_ℓ`, ascending coefficients,
/// via reduction to Hessenberg form.
pub fn charpoly_mod(a: &[Vec<u64>], l: u64) -> Vec<u64> {
    let n = a.len();
    let mut h: Vec<Vec<u64>> = a.to_vec();
    let sub = |x: u64, y: u64| (x + l - y) % l;
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else {
            continue;
        };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let inv = arith::inv_mod(h[m][m - 1], l).expect("nonzero mod prime");
        for i in m + 1..n {
            let u = arith::mul_mod(h[i][m - 1], inv, l);
            if u == 0 {
                continue;
            }
            for j in 0..n {
                h[i][j] = sub(h[i][j], arith::mul_mod(u, h[m][j], l));
            }
            for row in h.iter_mut() {
                row[m] = (row[m] + arith::mul_mod(u, row[i], l)) % l;
            }
        }
    }
    // p_k for the leading k×k block
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 1..=n {
        let m = k - 1;
        let prev = &polys[k - 1];
        let mut next = vec![0u64; k + 1];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = (next[d + 1] + c) % l;
            next[d] = sub(next[d], arith::mul_mod(h[m][m], c, l));
        }
        let mut t = 1u64;
        for i in (0..m).rev() {
            t = arith::mul_mod(t, h[i + 1][i], l);
            let coef = arith::mul_mod(h[i][m], t, l);
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[i].iter().enumerate() {
                next[d] = sub(next[d], arith::mul_mod(coef, c, l));
            }
        }
        polys.push(next);
    }
    polys.pop().expect("nonempty")
}

pub fn eval_mod(poly: &[u64], x: u64, l: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| (arith::mul_mod(acc, x, l) + c) % l)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn rational_nullspace() {
        let a = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]];
        let ns = nullspace_q(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let dot: BigRational = a[0].iter().zip(v).map(|(x, y)| x * y).sum();
            assert!(dot.is_zero());
        }
        let x = solve_in_span_q(&[vec![q(1), q(0), q(1)], vec![q(0), q(1), q(1)]], &[q(2), q(3), q(5)]).unwrap();
        assert_eq!(x, vec![q(2), q(3)]);
        assert!(solve_in_span_q(&[vec![q(1), q(0), q(1)]], &[q(0), q(1), q(0)]).is_none());
    }

    #[test]
    fn charpoly_matches_direct_expansion() {
        let l = 101;
        // companion matrix of x^3 - 2x^2 + 5x - 7
        let a = vec![vec![0, 0, 7], vec![1, 0, l - 5], vec![0, 1, 2]];
        assert_eq!(charpoly_mod(&a, l), vec![l - 7, 5, l - 2, 1]);
        let b = vec![vec![3, 1, 4, 1], vec![5, 9, 2, 6], vec![5, 3, 5, 8], vec![9, 7, 9, 3]];
        let p = charpoly_mod(&b, l);
        // det(B) = 98 and trace = 20
        assert_eq!(p[0], 98);
        assert_eq!(p[3], l - 20);
        assert_eq!(p[4], 1);
    }
}
