//! Rational helpers, dense linear algebra over Q, and modular arithmetic
//! used by the p-adic root search.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Formats as `p` or `p/q`.
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p` or `p/q` (no decimals).
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Q::new(n, d))
        }
        None => Some(Q::from_integer(s.parse().ok()?)),
    }
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|&j| j.gcd(&n) == 1).count() as u64
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// Solves `m x = rhs` for a square or overdetermined consistent system.
/// `m` is row-major with `rows` rows. Returns `None` if inconsistent or
/// if the solution is not unique.
pub fn solve(m: &[Vec<Q>], rhs: &[Q]) -> Option<Vec<Q>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(cols);
    for c in 0..cols {
        let Some(p) = (pivot_row..rows).find(|&r| !a[r][c].is_zero()) else {
            return None;
        };
        a.swap(pivot_row, p);
        let inv = a[pivot_row][c].recip();
        for x in a[pivot_row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..rows {
            if r != pivot_row && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for k in c..=cols {
                    let t = &a[pivot_row][k] * &f;
                    a[r][k] -= t;
                }
            }
        }
        pivots.push(c);
        pivot_row += 1;
    }
    if a[pivot_row..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    Some((0..cols).map(|c| a[c][cols].clone()).collect())
}

/// Indices of a maximal linearly independent subset of `vectors`, greedy in order.
pub fn independent_subset(vectors: &[Vec<Q>]) -> Vec<usize> {
    let mut basis: Vec<(usize, Vec<Q>)> = Vec::new(); // (pivot col, reduced row)
    let mut chosen = Vec::new();
    for (idx, v) in vectors.iter().enumerate() {
        let mut v = v.clone();
        for (pc, row) in &basis {
            if !v[*pc].is_zero() {
                let f = v[*pc].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= &f * y;
                }
            }
        }
        if let Some(pc) = v.iter().position(|x| !x.is_zero()) {
            let inv = v[pc].recip();
            for x in v.iter_mut() {
                *x *= &inv;
            }
            for (_, row) in basis.iter_mut() {
                if !row[pc].is_zero() {
                    let f = row[pc].clone();
                    for (x, y) in row.iter_mut().zip(&v) {
                        *x -= &f * y;
                    }
                }
            }
            basis.push((pc, v));
            chosen.push(idx);
        }
    }
    chosen
}

pub fn mod_pow_u64(b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u128;
    let mut bb = (b % m) as u128;
    let mm = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * bb % mm;
        }
        bb = bb * bb % mm;
        e >>= 1;
    }
    r as u64
}

pub fn mod_reduce(x: &BigInt, m: &BigInt) -> BigInt {
    x.mod_floor(m)
}

pub fn mod_inv(x: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = x.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Image of a rational in Z/m, if the denominator is invertible.
pub fn q_mod(x: &Q, m: &BigInt) -> Option<BigInt> {
    let inv = mod_inv(x.denom(), m)?;
    Some((x.numer() * inv).mod_floor(m))
}

/// Rational reconstruction: finds n/d with |n|, d <= sqrt(m/2) and n/d = x mod m.
pub fn rational_reconstruct(x: &BigInt, m: &BigInt) -> Option<Q> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), x.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let qt = &r0 / &r1;
        let r2 = &r0 - &qt * &r1;
        let t2 = &t0 - &qt * &t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    Some(Q::new(r1, t1))
}

/// Inverts a square matrix over Z/m, assuming every needed pivot is a unit.
pub fn mat_inv_mod(m: &[Vec<BigInt>], modulus: &BigInt) -> Option<Vec<Vec<BigInt>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r: Vec<BigInt> = r.iter().map(|x| x.mod_floor(modulus)).collect();
            r.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| mod_inv(&a[r][c], modulus).is_some())?;
        a.swap(c, p);
        let inv = mod_inv(&a[c][c], modulus)?;
        for x in a[c].iter_mut() {
            *x = (&*x * &inv).mod_floor(modulus);
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for k in 0..2 * n {
                    let t = &a[c][k] * &f;
                    a[r][k] = (&a[r][k] - t).mod_floor(modulus);
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("-3/6").unwrap(), qf(-1, 2));
        assert_eq!(fmt_q(&qf(-1, 2)), "-1/2");
        assert_eq!(fmt_q(&q(7)), "7");
        assert!(parse_q("1.5").is_none());
        assert!(parse_q("1/0").is_none());
    }

    #[test]
    fn reconstruct_small_fraction() {
        let m = BigInt::from(1_000_000_007u64);
        let x = q_mod(&qf(-22, 7), &m).unwrap();
        assert_eq!(rational_reconstruct(&x, &m).unwrap(), qf(-22, 7));
    }

    #[test]
    fn solve_unique() {
        let m = vec![vec![q(2), q(1)], vec![q(1), q(3)]];
        let x = solve(&m, &[q(3), q(5)]).unwrap();
        assert_eq!(x, vec![qf(4, 5), qf(7, 5)]);
        let sing = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        assert!(solve(&sing, &[q(1), q(2)]).is_none());
    }

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(120), 32);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(prime_factors(60), vec![2, 3, 5]);
    }
}
