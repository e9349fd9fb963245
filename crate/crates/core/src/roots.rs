//! p-th roots inside fixed fields of Q(ζ_N).
//!
//! Non-powers are certified by a prime q ≡ 1 (mod lcm(N, p)) at which some
//! conjugate of `a` is not a p-th power residue. Otherwise the roots of every
//! conjugate are lifted q-adically, combined into coordinates over a basis of
//! the fixed field by rational reconstruction, and checked exactly.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{self, Q};
use crate::cyclo::{units, CycloError, CycloNum};

const MAX_DEGREE: usize = 20;
const PRECISION_BITS: [u64; 4] = [64, 256, 1024, 4096];

/// Orbit sums Σ_{h∈H} ζ^{jh}, pruned to a Q-basis of the fixed field of H.
pub(crate) fn fixed_field_basis(n: u32, h: &[u32]) -> Vec<CycloNum> {
    let phi = crate::cyclo::cyclotomic(n).degree();
    let cands: Vec<CycloNum> = (0..phi)
        .map(|j| {
            h.iter().fold(CycloNum::zero(n), |acc, &g| {
                &acc + &CycloNum::zeta_pow(n, (j as i64) * g as i64)
            })
        })
        .collect();
    let vecs: Vec<Vec<Q>> = cands.iter().map(|c| c.coeffs().to_vec()).collect();
    arith::independent_subset(&vecs)
        .into_iter()
        .map(|i| cands[i].clone())
        .collect()
}

fn coset_reps(n: u32, h: &[u32]) -> Vec<u32> {
    let mut covered = BTreeSet::new();
    let mut reps = Vec::new();
    for g in units(n) {
        if covered.contains(&g) {
            continue;
        }
        reps.push(g);
        for &x in h {
            covered.insert(((g as u64 * x as u64) % n.max(1) as u64) as u32);
        }
        if n <= 2 {
            break;
        }
    }
    reps
}

/// A primitive n-th root of unity modulo a prime q with n | q - 1.
fn primitive_root_mod(n: u32, q: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let ps = arith::prime_factors(n as u64);
    for x in 2..q {
        let w = arith::mod_pow_u64(x, (q - 1) / n as u64, q);
        if ps.iter().all(|&p| arith::mod_pow_u64(w, n as u64 / p, q) != 1) {
            return w;
        }
    }
    unreachable!("q - 1 divisible by n")
}

/// Evaluates σ_c(x) at ζ ↦ w (all modulo m); `wpow[k] = w^k`.
fn eval_mod(x: &CycloNum, c: u32, wpow: &[BigInt], m: &BigInt) -> Option<BigInt> {
    let n = wpow.len() as u64;
    let mut acc = BigInt::zero();
    for (k, coef) in x.coeffs().iter().enumerate() {
        if coef.is_zero() {
            continue;
        }
        let v = arith::q_mod(coef, m)?;
        acc += v * &wpow[((c as u64 * k as u64) % n) as usize];
    }
    Some(acc.mod_floor(m))
}

fn powers_mod(w: &BigInt, n: u32, m: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n as usize);
    let mut cur = BigInt::one();
    for _ in 0..n {
        out.push(cur.clone());
        cur = (&cur * w).mod_floor(m);
    }
    out
}

/// Newton lift of a simple root of f modulo q to modulo m = q^e.
fn newton_lift(
    mut r: BigInt,
    m: &BigInt,
    f: impl Fn(&BigInt) -> (BigInt, BigInt),
) -> Option<BigInt> {
    for _ in 0..64 {
        let (v, dv) = f(&r);
        let v = v.mod_floor(m);
        if v.is_zero() {
            return Some(r);
        }
        let inv = arith::mod_inv(&dv, m)?;
        r = (&r - v * inv).mod_floor(m);
    }
    None
}

/// Computes a^((q-1)/p) in F_q[x]/Φ_N. `Some(false)` certifies that a is not
/// a p-th power in any subfield in which q splits completely; `None` means
/// q divides a denominator or a is not a unit mod q.
fn residue_test(a: &CycloNum, q: u64, p: u32) -> Option<bool> {
    let qb = BigInt::from(q);
    let modulus: Vec<u64> = a
        .field()
        .modulus()
        .iter()
        .map(|c| c.mod_floor(&qb).to_u64().unwrap())
        .collect();
    let base: Vec<u64> = a
        .coeffs()
        .iter()
        .map(|c| arith::q_mod(c, &qb).map(|v| v.to_u64().unwrap()))
        .collect::<Option<_>>()?;
    let ring = PolyRing { q, modulus };
    let full = ring.pow(&base, q - 1);
    if !ring.is_one(&full) {
        return None;
    }
    Some(ring.is_one(&ring.pow(&base, (q - 1) / p as u64)))
}

struct PolyRing {
    q: u64,
    modulus: Vec<u64>,
}

impl PolyRing {
    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let q = self.q as u128;
        let phi = self.modulus.len() - 1;
        let mut prod = vec![0u128; 2 * phi - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u128 * y as u128) % q;
            }
        }
        for k in (phi..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for (i, &m) in self.modulus[..phi].iter().enumerate() {
                let idx = k - phi + i;
                prod[idx] = (prod[idx] + c * (q - m as u128)) % q;
            }
            prod[k] = 0;
        }
        prod[..phi].iter().map(|&x| x as u64).collect()
    }

    fn pow(&self, a: &[u64], mut e: u64) -> Vec<u64> {
        let phi = self.modulus.len() - 1;
        let mut acc = vec![0u64; phi];
        acc[0] = 1 % self.q;
        let mut b = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        acc
    }

    fn is_one(&self, a: &[u64]) -> bool {
        a[0] == 1 && a[1..].iter().all(|&x| x == 0)
    }
}

struct PrimeData {
    q: u64,
    w: u64,
    residues: Vec<u64>,
}

/// Finds y in the fixed field of `h` (a subgroup of units mod N) with y^p = a.
pub(crate) fn pth_root_in_fixed_field(
    a: &CycloNum,
    h: &[u32],
    p: u32,
) -> Result<Option<CycloNum>, CycloError> {
    let n = a.conductor();
    if a.is_zero() {
        return Ok(Some(a.clone()));
    }
    if p == 1 {
        return Ok(Some(a.clone()));
    }
    let basis = fixed_field_basis(n, h);
    let reps = coset_reps(n, h);
    let d = basis.len();
    debug_assert_eq!(d, reps.len());
    let modulus_step = arith::lcm_u64(n as u64, p as u64);

    let mut first: Option<PrimeData> = None;
    let mut t = 1u64;
    while first.is_none() {
        let q = modulus_step * t + 1;
        t += 1;
        if t > 100_000 {
            return Err(CycloError::Undecided("no usable prime".into()));
        }
        if !arith::is_prime(q) {
            continue;
        }
        let qb = BigInt::from(q);
        let w = primitive_root_mod(n, q);
        let wpow = powers_mod(&BigInt::from(w), n, &qb);
        let mut residues = Vec::with_capacity(d);
        for &c in &reps {
            match eval_mod(a, c, &wpow, &qb) {
                Some(v) if !v.is_zero() => residues.push(v.to_u64().unwrap()),
                _ => break,
            }
        }
        if residues.len() < d
            || basis
                .iter()
                .any(|b| b.coeffs().iter().any(|x| arith::q_mod(x, &qb).is_none()))
        {
            continue;
        }
        for &r in &residues {
            if arith::mod_pow_u64(r, (q - 1) / p as u64, q) != 1 {
                return Ok(None);
            }
        }
        let e: Vec<Vec<BigInt>> = reps
            .iter()
            .map(|&c| basis.iter().map(|b| eval_mod(b, c, &wpow, &qb).unwrap()).collect())
            .collect();
        if arith::mat_inv_mod(&e, &qb).is_some() {
            first = Some(PrimeData { q, w, residues });
        }
    }
    // primes splitting completely in the fixed field, not necessarily in Q(ζ_N)
    let hset: BTreeSet<u32> = h.iter().copied().collect();
    let mut checked = 0;
    let mut q = 2u64;
    while checked < 24 {
        q += 1;
        if q > 1_000_000 {
            break;
        }
        if !arith::is_prime(q)
            || q % p as u64 != 1
            || n as u64 % q == 0
            || (n > 2 && !hset.contains(&((q % n as u64) as u32)))
        {
            continue;
        }
        match residue_test(a, q, p) {
            Some(true) => checked += 1,
            Some(false) => return Ok(None),
            None => {}
        }
    }
    let pd = first.expect("loop exits with a prime");
    if d > MAX_DEGREE {
        return Err(CycloError::Undecided(format!("fixed field of degree {d}")));
    }
    let qb = BigInt::from(pd.q);
    let roots_mod_q: Vec<Vec<u64>> = pd
        .residues
        .iter()
        .map(|&r| {
            (1..pd.q)
                .filter(|&x| arith::mod_pow_u64(x, p as u64, pd.q) == r)
                .collect()
        })
        .collect();
    let log2q = (pd.q as f64).log2();
    for bits in PRECISION_BITS {
        let e = (bits as f64 / log2q).ceil() as u32 + 1;
        let m = qb.pow(e);
        let nn = BigInt::from(n);
        let w = newton_lift(BigInt::from(pd.w), &m, |x| {
            (x.modpow(&nn, &m) - 1u32, &nn * x.modpow(&BigInt::from(n.max(1) - 1), &m))
        })
        .ok_or_else(|| CycloError::Undecided("root of unity lift".into()))?;
        let wpow = powers_mod(&w, n, &m);
        let avals: Vec<BigInt> = reps
            .iter()
            .map(|&c| eval_mod(a, c, &wpow, &m).unwrap())
            .collect();
        let pb = BigInt::from(p);
        let pm1 = BigInt::from(p - 1);
        let lifted: Vec<Vec<BigInt>> = roots_mod_q
            .iter()
            .zip(&avals)
            .map(|(rs, av)| {
                rs.iter()
                    .filter_map(|&r| {
                        newton_lift(BigInt::from(r), &m, |x| {
                            (x.modpow(&pb, &m) - av, &pb * x.modpow(&pm1, &m))
                        })
                    })
                    .collect()
            })
            .collect();
        if lifted.iter().any(|l| l.is_empty()) {
            continue;
        }
        let emat: Vec<Vec<BigInt>> = reps
            .iter()
            .map(|&c| basis.iter().map(|b| eval_mod(b, c, &wpow, &m).unwrap()).collect())
            .collect();
        let Some(einv) = arith::mat_inv_mod(&emat, &m) else {
            continue;
        };
        if let Some(y) = search_combinations(a, p, &basis, &einv, &lifted, &m) {
            return Ok(Some(y));
        }
    }
    Err(CycloError::Undecided(format!(
        "p-th root of a residue-power in degree {d} not reconstructed"
    )))
}

fn search_combinations(
    a: &CycloNum,
    p: u32,
    basis: &[CycloNum],
    einv: &[Vec<BigInt>],
    lifted: &[Vec<BigInt>],
    m: &BigInt,
) -> Option<CycloNum> {
    let d = basis.len();
    let mut digits = vec![0usize; d];
    // coordinates c = einv · r, maintained incrementally
    let mut coords: Vec<BigInt> = (0..d)
        .map(|b| {
            (0..d)
                .map(|j| &einv[b][j] * &lifted[j][0])
                .sum::<BigInt>()
                .mod_floor(m)
        })
        .collect();
    // with p even, -y is also a root, so the first digit can stay fixed
    let first_limit = if p % 2 == 0 { 1 } else { lifted[0].len() };
    loop {
        if let Some(y) = try_coords(&coords, basis, m) {
            if y.pow(p) == *a {
                return Some(y);
            }
        }
        // odometer step
        let mut j = 0;
        loop {
            if j == d {
                return None;
            }
            let limit = if j == 0 { first_limit } else { lifted[j].len() };
            let old = digits[j];
            let new = (old + 1) % limit;
            digits[j] = new;
            if new != old {
                let delta = &lifted[j][new] - &lifted[j][old];
                for (b, c) in coords.iter_mut().enumerate() {
                    *c = (&*c + &einv[b][j] * &delta).mod_floor(m);
                }
            }
            if new != 0 {
                break;
            }
            j += 1;
        }
    }
}

fn try_coords(coords: &[BigInt], basis: &[CycloNum], m: &BigInt) -> Option<CycloNum> {
    let n = basis[0].conductor();
    let mut y = CycloNum::zero(n);
    for (c, b) in coords.iter().zip(basis) {
        let r = arith::rational_reconstruct(c, m)?;
        if !r.is_zero() {
            y = &y + &b.scale(&r);
        }
    }
    Some(y)
}

/// Subgroups of index at most 2 in the abelian group `h` (units mod n),
/// `h` itself first.
pub(crate) fn index_two_subgroups(n: u32, h: &[u32]) -> Vec<Vec<u32>> {
    let nn = n.max(1) as u64;
    let mul = |a: u32, b: u32| ((a as u64 * b as u64) % nn) as u32;
    let squares: BTreeSet<u32> = h.iter().map(|&x| mul(x, x)).collect();
    // span of a set of generators modulo squares
    let span = |gens: &[u32]| -> BTreeSet<u32> {
        let mut s = squares.clone();
        for &g in gens {
            let shifted: Vec<u32> = s.iter().map(|&x| mul(x, g)).collect();
            s.extend(shifted);
        }
        s
    };
    let mut gens: Vec<u32> = Vec::new();
    for &x in h {
        if !span(&gens).contains(&x) {
            gens.push(x);
        }
    }
    let mut out = vec![h.to_vec()];
    let r = gens.len();
    for f in 1u32..(1 << r) {
        // kernel of the functional f on the F_2-span of gens
        let mut kernel = squares.clone();
        for mask in 0u32..(1 << r) {
            if (mask & f).count_ones() % 2 == 0 {
                let g = (0..r)
                    .filter(|i| mask >> i & 1 == 1)
                    .fold(1u32 % nn as u32, |acc, i| mul(acc, gens[i]));
                let shifted: Vec<u32> = squares.iter().map(|&s| mul(s, g)).collect();
                kernel.extend(shifted);
            }
        }
        let mut k: Vec<u32> = kernel.into_iter().collect();
        k.sort();
        out.push(k);
    }
    out
}

/// Some square root of `a` in Q(ζ_N), or `None` if `a` is not a square there.
pub(crate) fn sqrt_in_ambient(a: &CycloNum) -> Result<Option<CycloNum>, CycloError> {
    let n = a.conductor();
    if a.is_zero() {
        return Ok(Some(a.clone()));
    }
    let stab: Vec<u32> = units(n)
        .into_iter()
        .filter(|&j| a.galois_unchecked(j as u64) == *a)
        .collect();
    let mut undecided = None;
    for h in index_two_subgroups(n, &stab) {
        match pth_root_in_fixed_field(a, &h, 2) {
            Ok(Some(y)) => return Ok(Some(y)),
            Ok(None) => {}
            Err(e) => undecided = Some(e),
        }
    }
    match undecided {
        Some(e) => Err(e),
        None => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;
    use crate::cyclo::{consts, FieldSpec};

    #[test]
    fn rational_squares() {
        let k = FieldSpec::rationals(1);
        let y = k.pth_root(&CycloNum::from_int(1, 49), 2).unwrap().unwrap();
        assert_eq!(y.pow(2), CycloNum::from_int(1, 49));
        assert!(k.pth_root(&CycloNum::from_int(1, 2), 2).unwrap().is_none());
        assert!(k.pth_root(&CycloNum::from_int(1, -1), 2).unwrap().is_none());
        let c = k.pth_root(&CycloNum::from_int(1, -27), 3).unwrap().unwrap();
        assert_eq!(c, CycloNum::from_int(1, -3));
    }

    #[test]
    fn minus_one_square_in_gaussian() {
        let y = sqrt(&CycloNum::from_int(4, -1)).unwrap().unwrap();
        assert_eq!(y.pow(2), CycloNum::from_int(4, -1));
        assert!(sqrt(&CycloNum::from_int(4, 3)).unwrap().is_none());
    }

    fn sqrt(x: &CycloNum) -> Result<Option<CycloNum>, CycloError> {
        sqrt_in_ambient(x)
    }

    #[test]
    fn two_is_square_in_q_zeta8() {
        let y = sqrt(&CycloNum::from_int(8, 2)).unwrap().unwrap();
        assert_eq!(y.pow(2), CycloNum::from_int(8, 2));
        assert!(sqrt(&CycloNum::from_int(8, 3)).unwrap().is_none());
        // but not in Q(i)
        let qi = FieldSpec::new(8, vec![consts::i(8).unwrap()]).unwrap();
        assert!(qi.pth_root(&CycloNum::from_int(8, 2), 2).unwrap().is_none());
    }

    #[test]
    fn five_in_q_zeta5() {
        let y = sqrt(&CycloNum::from_int(5, 5)).unwrap().unwrap();
        assert_eq!(y.pow(2), CycloNum::from_int(5, 5));
    }

    #[test]
    fn square_of_generic_element() {
        let x = CycloNum::new(12, vec![q(3), q(-2), q(1), q(5)]);
        let y = sqrt(&x.pow(2)).unwrap().unwrap();
        assert!(y == x || y == -&x);
    }

    #[test]
    fn index_two_counts() {
        // (Z/8)^* ≅ C2 × C2 has three index-2 subgroups
        assert_eq!(index_two_subgroups(8, &[1, 3, 5, 7]).len(), 4);
        // (Z/5)^* ≅ C4 has one
        assert_eq!(index_two_subgroups(5, &[1, 2, 3, 4]).len(), 2);
    }
}
