//! Small machine-integer number theory shared by the field and symbol code.

use num_integer::Integer;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Primes `<= bound` in increasing order.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&n| is_prime(n)).collect()
}

/// Prime factorization as `(prime, exponent)` pairs, increasing primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).take_while(|d| d * d <= n).filter(|d| n % d == 0).collect();
    let mut upper: Vec<u64> = out.iter().map(|d| n / d).filter(|&q| q * q != n).collect();
    upper.reverse();
    out.extend(upper);
    out
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

/// Reduces a signed integer into `[0, m)`.
pub fn residue(a: i64, m: u64) -> u64 {
    (a as i128).rem_euclid(m as i128) as u64
}

/// Units of ℤ/m in increasing order; for `m = 1` this is `[0]`.
pub fn units(m: u64) -> Vec<u64> {
    if m == 1 {
        return vec![0];
    }
    (1..m).filter(|&u| gcd(u, m) == 1).collect()
}

pub fn euler_phi(m: u64) -> u64 {
    factorize(m)
        .into_iter()
        .fold(m, |acc, (p, _)| acc / p * (p - 1))
}

/// `(a, rest)` with `m = p^a * rest` and `p` not dividing `rest`.
pub fn split_prime_power(m: u64, p: u64) -> (u32, u64) {
    let mut a = 0;
    let mut rest = m;
    while rest % p == 0 {
        rest /= p;
        a += 1;
    }
    (a, rest)
}

/// Solves `x ≡ r1 (mod m1)`, `x ≡ r2 (mod m2)` for coprime moduli.
pub fn crt(r1: u64, m1: u64, r2: u64, m2: u64) -> u64 {
    let m = m1 * m2;
    if m1 == 1 {
        return r2 % m;
    }
    if m2 == 1 {
        return r1 % m;
    }
    let inv = inv_mod(m1 % m2, m2).expect("moduli must be coprime");
    // x = r1 + m1 * ((r2 - r1) * inv mod m2)
    let diff = (r2 + m2 - r1 % m2) % m2;
    let t = mul_mod(diff, inv, m2);
    (r1 + m1 * t) % m
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: i64, p: u64) -> u32 {
    assert!(n != 0, "valuation of zero");
    let mut n = n.unsigned_abs();
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

pub fn is_squarefree(n: i64) -> bool {
    n != 0 && factorize(n.unsigned_abs()).iter().all(|&(_, e)| e == 1)
}

/// Jacobi symbol `(a | n)` for odd positive `n`.
pub fn jacobi(a: i64, n: u64) -> i8 {
    assert!(n % 2 == 1, "jacobi symbol needs an odd modulus");
    let mut a = residue(a, n);
    let mut n = n;
    let mut sign = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Kronecker symbol `(d | n)` for positive `n`.
pub fn kronecker(d: i64, n: u64) -> i8 {
    assert!(n > 0);
    let (twos, odd) = split_prime_power(n, 2);
    let two_part: i8 = match d.rem_euclid(8) {
        0 | 2 | 4 | 6 => 0,
        1 | 7 => 1,
        _ => -1,
    };
    let mut s = if twos == 0 { 1 } else if two_part == 0 { 0 } else { two_part.pow(twos) };
    if odd > 1 {
        s *= jacobi(d, odd);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(16), vec![1, 2, 4, 8, 16]);
        assert_eq!(euler_phi(20), 8);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(units(8), vec![1, 3, 5, 7]);
        assert_eq!(inv_mod(3, 7), Some(5));
        assert_eq!(inv_mod(2, 4), None);
        assert_eq!(crt(2, 3, 3, 5), 8);
        assert_eq!(crt(0, 1, 3, 5), 3);
        assert_eq!(split_prime_power(40, 2), (3, 5));
        assert_eq!(valuation(-24, 2), 3);
        assert!(is_squarefree(-30));
        assert!(!is_squarefree(12));
        assert_eq!(residue(-1, 8), 7);
        assert_eq!(pow_mod(3, 4, 5), 1);
        assert_eq!(jacobi(2, 7), 1);
        assert_eq!(jacobi(3, 7), -1);
        assert_eq!(jacobi(6, 9), 0);
        assert_eq!(kronecker(-20, 3), 1);
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(-7, 2), 1);
        assert_eq!(kronecker(8, 3), -1);
    }
}
