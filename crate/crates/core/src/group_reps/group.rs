//! Finite groups given by a multiplication table.

use serde::{Deserialize, Serialize};

use super::GroupError;
use crate::arith;

/// A finite group on `0..n` with a verified multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    orders: Vec<u64>,
    exponent: u64,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    order: usize,
    table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::NotAGroup("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotAGroup(format!("row {i} has length {}", row.len())));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return Err(GroupError::NotAGroup(format!("entry {x} out of range")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| GroupError::NotAGroup("no identity element".into()))?;
        let mut inverse = vec![usize::MAX; n];
        for g in 0..n {
            let h = (0..n)
                .find(|&h| table[g][h] == identity && table[h][g] == identity)
                .ok_or_else(|| GroupError::NotAGroup(format!("element {g} has no inverse")))?;
            inverse[g] = h;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAGroup(format!("({a}*{b})*{c} != {a}*({b}*{c})")));
                    }
                }
            }
        }

        let orders: Vec<u64> = (0..n)
            .map(|g| {
                let mut k = 1;
                let mut x = g;
                while x != identity {
                    x = table[x][g];
                    k += 1;
                }
                k
            })
            .collect();
        let exponent = orders.iter().fold(1, |acc, &o| arith::lcm(acc, o));

        // identity class first, the rest by least element
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        let mut seeds = vec![identity];
        seeds.extend((0..n).filter(|&g| g != identity));
        for g in seeds {
            if class_of[g] != usize::MAX {
                continue;
            }
            let k = classes.len();
            let mut class: Vec<usize> = (0..n).map(|h| table[table[h][g]][inverse[h]]).collect();
            class.sort_unstable();
            class.dedup();
            for &x in &class {
                class_of[x] = k;
            }
            classes.push(class);
        }

        Ok(FiniteGroup { table, identity, inverse, orders, exponent, classes, class_of })
    }

    pub fn from_json(s: &str) -> Result<Self, GroupError> {
        let parsed: GroupJson = serde_json::from_str(s).map_err(|e| GroupError::Json(e.to_string()))?;
        if parsed.order != parsed.table.len() {
            return Err(GroupError::NotAGroup(format!(
                "order {} does not match table size {}",
                parsed.order,
                parsed.table.len()
            )));
        }
        Self::from_table(parsed.table)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GroupJson { order: self.order(), table: self.table.clone() }).expect("serializable")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let k = k % self.orders[a];
        let mut x = self.identity;
        for _ in 0..k {
            x = self.table[x][a];
        }
        x
    }

    pub fn element_order(&self, a: usize) -> u64 {
        self.orders[a]
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Conjugacy classes; class 0 is the identity.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    /// `g ↦ g²`.
    pub fn square(&self, g: usize) -> usize {
        self.table[g][g]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    fn from_mul(n: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| f(a, b)).collect()).collect();
        Self::from_table(table).expect("builtin tables are groups")
    }

    pub fn trivial() -> Self {
        Self::from_mul(1, |_, _| 0)
    }

    /// `C_n` with element `k` standing for `g^k`.
    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::BadBuiltin("C0".into()));
        }
        Ok(Self::from_mul(n, |a, b| (a + b) % n))
    }

    /// The dihedral group of order `2n`; element `a + n·b` is `r^a s^b`.
    pub fn dihedral(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::BadBuiltin("D0".into()));
        }
        Ok(Self::from_mul(2 * n, |x, y| {
            let (a, b) = (x % n, x / n);
            let (c, d) = (y % n, y / n);
            let rot = if b == 0 { (a + c) % n } else { (a + n - c) % n };
            rot + n * ((b + d) % 2)
        }))
    }

    /// `Q₈` ordered `1, -1, i, -i, j, -j, k, -k`.
    pub fn quaternion8() -> Self {
        // basis index 0..4 = 1, i, j, k; product as (sign, basis)
        const UNIT: [[(bool, usize); 4]; 4] = [
            [(false, 0), (false, 1), (false, 2), (false, 3)],
            [(false, 1), (true, 0), (false, 3), (true, 2)],
            [(false, 2), (true, 3), (true, 0), (false, 1)],
            [(false, 3), (false, 2), (true, 1), (true, 0)],
        ];
        Self::from_mul(8, |x, y| {
            let (bx, sx) = (x / 2, x % 2 == 1);
            let (by, sy) = (y / 2, y % 2 == 1);
            let (s, b) = UNIT[bx][by];
            2 * b + usize::from(s ^ sx ^ sy)
        })
    }

    /// `S_n` for `n <= 5`, permutations in lexicographic order, `(στ)(x) = σ(τ(x))`.
    pub fn symmetric(n: usize) -> Result<Self, GroupError> {
        if n == 0 || n > 5 {
            return Err(GroupError::BadBuiltin(format!("S{n}")));
        }
        let perms = permutations(n);
        let index = |p: &Vec<usize>| perms.binary_search(p).expect("closed under composition");
        Ok(Self::from_mul(perms.len(), |a, b| {
            let c: Vec<usize> = (0..n).map(|x| perms[a][perms[b][x]]).collect();
            index(&c)
        }))
    }

    /// Parses `trivial`, `C<n>`, `D<n>`, `Q8` or `S<n>`.
    pub fn builtin(name: &str) -> Result<Self, GroupError> {
        let bad = || GroupError::BadBuiltin(name.to_string());
        let lower = name.trim();
        if lower.eq_ignore_ascii_case("trivial") {
            return Ok(Self::trivial());
        }
        if lower.eq_ignore_ascii_case("q8") {
            return Ok(Self::quaternion8());
        }
        let (head, tail) = lower.split_at(1);
        let n: usize = tail.parse().map_err(|_| bad())?;
        match head {
            "C" | "c" => Self::cyclic(n),
            "D" | "d" => Self::dihedral(n),
            "S" | "s" => Self::symmetric(n),
            _ => Err(bad()),
        }
        .map_err(|_| bad())
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                go(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_shapes() {
        let q8 = FiniteGroup::quaternion8();
        assert_eq!(q8.order(), 8);
        assert_eq!(q8.exponent(), 4);
        let sizes: Vec<usize> = q8.classes().iter().map(|c| c.len()).collect();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
        assert_eq!(q8.classes()[2], vec![2, 3]);
        // i * j = k
        assert_eq!(q8.mul(2, 4), 6);
        assert_eq!(q8.mul(4, 2), 7);

        let s5 = FiniteGroup::symmetric(5).unwrap();
        assert_eq!((s5.order(), s5.classes().len(), s5.exponent()), (120, 7, 60));
        let d4 = FiniteGroup::dihedral(4).unwrap();
        assert_eq!((d4.order(), d4.classes().len()), (8, 5));
        let c6 = FiniteGroup::cyclic(6).unwrap();
        assert_eq!((c6.classes().len(), c6.exponent()), (6, 6));
        assert_eq!(FiniteGroup::trivial().classes().len(), 1);
        assert_eq!(FiniteGroup::builtin("S3").unwrap().order(), 6);
        assert!(FiniteGroup::builtin("S6").is_err());
        assert!(FiniteGroup::builtin("X4").is_err());
    }

    #[test]
    fn rejects_non_groups() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1]]).is_err());
        assert!(FiniteGroup::from_table(vec![vec![1, 0], vec![0, 0]]).is_err());
        // a Latin square with identity that is not associative
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table(loop5), Err(GroupError::NotAGroup(_))));
    }

    #[test]
    fn json_roundtrip() {
        let g = FiniteGroup::dihedral(3).unwrap();
        let back = FiniteGroup::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
        assert!(FiniteGroup::from_json(r#"{"order": 3, "table": [[0,1],[1,0]]}"#).is_err());
    }
}
