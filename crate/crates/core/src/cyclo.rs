//! Exact arithmetic in cyclotomic fields Q(ζ_N), Galois-stable subfields
//! described by generators, and one Kummer layer k(u^{1/l}).

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{self, fmt_q, Q};
use crate::roots;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycloError {
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("exponent {j} is not coprime to the conductor {n}")]
    NotCoprime { j: i64, n: u32 },
    #[error("conductor {from} does not embed into conductor {into}")]
    ConductorMismatch { from: u32, into: u32 },
    #[error("root of unity of order {m} is not representable with conductor {n}")]
    ConductorTooSmall { m: u32, n: u32 },
    #[error("radicand is not in the base field")]
    NotInField,
    #[error("base field lacks a primitive {0}-th root of unity")]
    MissingRootOfUnity(u32),
    #[error("x^l - u is reducible: {0}")]
    NotIrreducible(String),
    #[error("power test undecided: {0}")]
    Undecided(String),
}

/// The field Q(ζ_N) as Q[x]/Φ_N with a table of reduced powers of ζ.
#[derive(Debug)]
pub struct Cyclotomic {
    n: u32,
    phi: usize,
    modulus: Vec<BigInt>,
    powers: Vec<Vec<Q>>,
}

fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    // den is monic
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd].clone();
        if !c.is_zero() {
            for (k, d) in den.iter().enumerate() {
                rem[i + k] -= &c * d;
            }
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(|x| x.is_zero()));
    quot
}

fn cyclotomic_poly(n: u32, memo: &mut HashMap<u32, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = BigInt::from(-1);
    p[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let f = cyclotomic_poly(d, memo);
            p = poly_div_exact(&p, &f);
        }
    }
    memo.insert(n, p.clone());
    p
}

impl Cyclotomic {
    fn build(n: u32) -> Self {
        let modulus = cyclotomic_poly(n, &mut HashMap::new());
        let phi = modulus.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![Q::zero(); phi];
        cur[0] = Q::one();
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by x
            let top = cur[phi - 1].clone();
            for k in (1..phi).rev() {
                cur[k] = cur[k - 1].clone();
            }
            cur[0] = Q::zero();
            if !top.is_zero() {
                for k in 0..phi {
                    cur[k] -= &top * Q::from_integer(modulus[k].clone());
                }
            }
        }
        Cyclotomic { n, phi, modulus, powers }
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    /// Coefficients of Φ_N, lowest degree first.
    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    pub(crate) fn power(&self, e: u64) -> &[Q] {
        &self.powers[(e % self.n as u64) as usize]
    }

    /// Units of Z/N in increasing order (`[1]` for N = 1, 2).
    pub fn units(&self) -> Vec<u32> {
        units(self.n)
    }
}

pub fn units(n: u32) -> Vec<u32> {
    if n <= 2 {
        return vec![1];
    }
    (1..n).filter(|j| j.gcd(&n) == 1).collect()
}

/// Shared context for conductor `n`.
pub fn cyclotomic(n: u32) -> Arc<Cyclotomic> {
    assert!(n >= 1, "conductor must be positive");
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Cyclotomic>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = cache.lock().unwrap().get(&n) {
        return c.clone();
    }
    let built = Arc::new(Cyclotomic::build(n));
    cache.lock().unwrap().entry(n).or_insert(built).clone()
}

/// An element of Q(ζ_N), stored as its canonical residue modulo Φ_N.
#[derive(Clone)]
pub struct CycloNum {
    field: Arc<Cyclotomic>,
    coeffs: Vec<Q>,
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum[{}]({})", self.field.n, self)
    }
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        self.field.n == other.field.n && self.coeffs == other.coeffs
    }
}

impl Eq for CycloNum {}

impl Hash for CycloNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.n.hash(state);
        self.coeffs.hash(state);
    }
}

impl PartialOrd for CycloNum {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CycloNum {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.field
            .n
            .cmp(&other.field.n)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl CycloNum {
    /// Reduces an arbitrary polynomial in ζ_N (lowest degree first) modulo Φ_N.
    pub fn new(n: u32, coeffs: Vec<Q>) -> Self {
        Self::in_field(cyclotomic(n), &coeffs)
    }

    fn in_field(field: Arc<Cyclotomic>, poly: &[Q]) -> Self {
        let mut out = vec![Q::zero(); field.phi];
        for (e, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if e < field.phi {
                out[e] += c;
            } else {
                for (o, p) in out.iter_mut().zip(field.power(e as u64)) {
                    if !p.is_zero() {
                        *o += c * p;
                    }
                }
            }
        }
        CycloNum { field, coeffs: out }
    }

    pub fn from_rational(n: u32, x: Q) -> Self {
        let field = cyclotomic(n);
        let mut coeffs = vec![Q::zero(); field.phi];
        coeffs[0] = x;
        CycloNum { field, coeffs }
    }

    pub fn from_int(n: u32, x: i64) -> Self {
        Self::from_rational(n, arith::q(x))
    }

    pub fn zero(n: u32) -> Self {
        Self::from_rational(n, Q::zero())
    }

    pub fn one(n: u32) -> Self {
        Self::from_rational(n, Q::one())
    }

    /// ζ_N^e for any integer e.
    pub fn zeta_pow(n: u32, e: i64) -> Self {
        let field = cyclotomic(n);
        let e = e.rem_euclid(n as i64) as u64;
        let coeffs = field.power(e).to_vec();
        CycloNum { field, coeffs }
    }

    pub fn conductor(&self) -> u32 {
        self.field.n
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn field(&self) -> &Arc<Cyclotomic> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    /// The rational value, if this element lies in Q.
    pub fn as_rational(&self) -> Option<Q> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn zero_like(&self) -> Self {
        CycloNum {
            field: self.field.clone(),
            coeffs: vec![Q::zero(); self.field.phi],
        }
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(
            self.field.n, other.field.n,
            "mixed conductors; embed first"
        );
    }

    pub fn scale(&self, c: &Q) -> Self {
        CycloNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn inv(&self) -> Result<Self, CycloError> {
        if self.is_zero() {
            return Err(CycloError::ZeroInverse);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(self.field.n, r.recip()));
        }
        let phi = self.field.phi;
        // column j holds self * ζ^j
        let cols: Vec<CycloNum> = (0..phi)
            .map(|j| self * &CycloNum::zeta_pow(self.field.n, j as i64))
            .collect();
        let m: Vec<Vec<Q>> = (0..phi)
            .map(|r| cols.iter().map(|c| c.coeffs[r].clone()).collect())
            .collect();
        let mut rhs = vec![Q::zero(); phi];
        rhs[0] = Q::one();
        let x = arith::solve(&m, &rhs).ok_or(CycloError::ZeroInverse)?;
        Ok(CycloNum {
            field: self.field.clone(),
            coeffs: x,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self, CycloError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.field.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The automorphism ζ_N ↦ ζ_N^j.
    pub fn galois(&self, j: i64) -> Result<Self, CycloError> {
        let n = self.field.n;
        if j.gcd(&(n as i64)) != 1 && n > 1 {
            return Err(CycloError::NotCoprime { j, n });
        }
        let j = j.rem_euclid(n as i64) as u64;
        Ok(self.galois_unchecked(j))
    }

    pub(crate) fn galois_unchecked(&self, j: u64) -> Self {
        let mut out = self.zero_like();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, p) in out.coeffs.iter_mut().zip(self.field.power(j * k as u64)) {
                if !p.is_zero() {
                    *o += c * p;
                }
            }
        }
        out
    }

    /// Image in Q(ζ_M) for a multiple M of the conductor.
    pub fn embed(&self, m: u32) -> Result<Self, CycloError> {
        let n = self.field.n;
        if m == n {
            return Ok(self.clone());
        }
        if m % n != 0 {
            return Err(CycloError::ConductorMismatch { from: n, into: m });
        }
        let step = (m / n) as usize;
        let mut poly = vec![Q::zero(); (self.field.phi - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            poly[k * step] = c.clone();
        }
        Ok(Self::in_field(cyclotomic(m), &poly))
    }

    /// Complex conjugate, ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Self {
        let n = self.field.n as u64;
        self.galois_unchecked(n.saturating_sub(1).max(1))
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            if k == 0 {
                write!(f, "{}", fmt_q(&mag))?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", fmt_q(&mag))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &CycloNum) -> CycloNum {
        self.check_same(rhs);
        CycloNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &CycloNum) -> CycloNum {
        self.check_same(rhs);
        CycloNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &CycloNum) -> CycloNum {
        self.check_same(rhs);
        if let Some(r) = rhs.as_rational() {
            return self.scale(&r);
        }
        if let Some(r) = self.as_rational() {
            return rhs.scale(&r);
        }
        let phi = self.field.phi;
        let mut prod = vec![Q::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        CycloNum::in_field(self.field.clone(), &prod)
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: CycloNum) -> CycloNum {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: &CycloNum) -> CycloNum {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

/// ζ_m expressed in Q(ζ_n), when representable.
pub fn root_of_unity(n: u32, m: u32) -> Option<CycloNum> {
    if m == 0 {
        return None;
    }
    if n % m == 0 {
        return Some(CycloNum::zeta_pow(n, (n / m) as i64));
    }
    if n % 2 == 1 && (2 * n) % m == 0 {
        // ζ_{2n} = -ζ_n^{(n+1)/2}
        let z2n = -CycloNum::zeta_pow(n, (n as i64 + 1) / 2);
        return Some(z2n.pow(2 * n / m));
    }
    None
}

/// Named constants in Q(ζ_n); `None` when the conductor is too small.
pub mod consts {
    use super::*;

    pub fn i(n: u32) -> Option<CycloNum> {
        root_of_unity(n, 4)
    }

    pub fn sqrt2(n: u32) -> Option<CycloNum> {
        let z = root_of_unity(n, 8)?;
        Some(&z + &z.inv().ok()?)
    }

    /// i·√2 = ζ_8 + ζ_8^3.
    pub fn i_sqrt2(n: u32) -> Option<CycloNum> {
        let z = root_of_unity(n, 8)?;
        Some(&z + &z.pow(3))
    }

    /// √5 = 1 + 2(ζ_5 + ζ_5^4).
    pub fn sqrt5(n: u32) -> Option<CycloNum> {
        let z = root_of_unity(n, 5)?;
        let s = &z + &z.pow(4);
        Some(&CycloNum::one(n) + &s.scale(&arith::q(2)))
    }

    /// √-3 = 2ζ_3 + 1.
    pub fn sqrt_m3(n: u32) -> Option<CycloNum> {
        let z = root_of_unity(n, 3)?;
        Some(&z.scale(&arith::q(2)) + &CycloNum::one(n))
    }

    /// The golden ratio (1 + √5)/2.
    pub fn golden(n: u32) -> Option<CycloNum> {
        let s = sqrt5(n)?;
        Some((&s + &CycloNum::one(n)).scale(&arith::qf(1, 2)))
    }

    /// cos(2π/k) = (ζ_k + ζ_k^{-1})/2.
    pub fn cos_2pi_over(n: u32, k: u32) -> Option<CycloNum> {
        let z = root_of_unity(n, k)?;
        Some((&z + &z.inv().ok()?).scale(&arith::qf(1, 2)))
    }
}

/// A Galois-stable subfield k ⊆ Q(ζ_N): the fixed field of the automorphisms
/// ζ ↦ ζ^j fixing every generator.
#[derive(Clone, Debug)]
pub struct FieldSpec {
    conductor: u32,
    generators: Vec<CycloNum>,
    stabilizer: Vec<u32>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.conductor == other.conductor && self.stabilizer == other.stabilizer
    }
}

impl Eq for FieldSpec {}

impl FieldSpec {
    pub fn new(conductor: u32, generators: Vec<CycloNum>) -> Result<Self, CycloError> {
        let generators = generators
            .into_iter()
            .map(|g| g.embed(conductor))
            .collect::<Result<Vec<_>, _>>()?;
        let stabilizer = units(conductor)
            .into_iter()
            .filter(|&j| {
                generators
                    .iter()
                    .all(|g| g.galois_unchecked(j as u64) == *g)
            })
            .collect();
        Ok(FieldSpec {
            conductor,
            generators,
            stabilizer,
        })
    }

    /// Q inside Q(ζ_n).
    pub fn rationals(n: u32) -> Self {
        Self::new(n, vec![]).expect("no generators")
    }

    /// Q(ζ_n) itself.
    pub fn full(n: u32) -> Self {
        Self::new(n, vec![CycloNum::zeta_pow(n, 1)]).expect("same conductor")
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn generators(&self) -> &[CycloNum] {
        &self.generators
    }

    pub fn stabilizer(&self) -> &[u32] {
        &self.stabilizer
    }

    pub fn degree(&self) -> usize {
        units(self.conductor).len() / self.stabilizer.len()
    }

    /// Same field, viewed inside Q(ζ_m).
    pub fn lift(&self, m: u32) -> Result<Self, CycloError> {
        if m == self.conductor {
            return Ok(self.clone());
        }
        Self::new(m, self.generators.clone())
    }

    /// Embeds `x` into this field's ambient conductor.
    pub fn ambient(&self, x: &CycloNum) -> Result<CycloNum, CycloError> {
        x.embed(self.conductor)
    }

    pub fn contains(&self, x: &CycloNum) -> Result<bool, CycloError> {
        let x = self.ambient(x)?;
        Ok(self
            .stabilizer
            .iter()
            .all(|&j| x.galois_unchecked(j as u64) == x))
    }

    pub fn contains_root_of_unity(&self, m: u32) -> Result<bool, CycloError> {
        let z = root_of_unity(self.conductor, m).ok_or(CycloError::ConductorTooSmall {
            m,
            n: self.conductor,
        })?;
        self.contains(&z)
    }

    /// Some `y` in this field with `y^p = a`, or `None` if there is none.
    pub fn pth_root(&self, a: &CycloNum, p: u32) -> Result<Option<CycloNum>, CycloError> {
        let a = self.ambient(a)?;
        if !self.contains(&a)? {
            return Err(CycloError::NotInField);
        }
        roots::pth_root_in_fixed_field(&a, &self.stabilizer, p)
    }
}

/// Q(ζ_N) square root, searched through every subfield where one could live.
pub fn sqrt(x: &CycloNum) -> Result<Option<CycloNum>, CycloError> {
    roots::sqrt_in_ambient(x)
}

/// The extension k(s), s^l = u, with x^l - u irreducible over k.
#[derive(Clone, Debug)]
pub struct KummerExt {
    base: FieldSpec,
    radicand: CycloNum,
    exponent: u32,
    zeta: CycloNum,
}

/// An element Σ c_e s^e, e < l.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KummerElem {
    pub coeffs: Vec<CycloNum>,
}

impl KummerExt {
    pub fn new(base: FieldSpec, u: CycloNum, l: u32) -> Result<Self, CycloError> {
        assert!(l >= 1);
        let u = base.ambient(&u)?;
        if !base.contains(&u)? {
            return Err(CycloError::NotInField);
        }
        if u.is_zero() {
            return Err(CycloError::NotIrreducible("u = 0".into()));
        }
        let zeta = root_of_unity(base.conductor(), l)
            .filter(|z| base.contains(z).unwrap_or(false))
            .ok_or(CycloError::MissingRootOfUnity(l))?;
        for p in arith::prime_factors(l as u64) {
            if let Some(y) = base.pth_root(&u, p as u32)? {
                return Err(CycloError::NotIrreducible(format!("u = ({y})^{p}")));
            }
        }
        if l % 4 == 0 {
            let v = u.scale(&arith::qf(-1, 4));
            if let Some(y) = base.pth_root(&v, 4)? {
                return Err(CycloError::NotIrreducible(format!("u = -4*({y})^4")));
            }
        }
        Ok(KummerExt {
            base,
            radicand: u,
            exponent: l,
            zeta,
        })
    }

    pub fn base(&self) -> &FieldSpec {
        &self.base
    }

    pub fn radicand(&self) -> &CycloNum {
        &self.radicand
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    fn n(&self) -> u32 {
        self.base.conductor()
    }

    pub fn from_base(&self, x: &CycloNum) -> KummerElem {
        let mut coeffs = vec![CycloNum::zero(self.n()); self.exponent as usize];
        coeffs[0] = x.clone();
        KummerElem { coeffs }
    }

    /// The generator s = u^{1/l}.
    pub fn generator(&self) -> KummerElem {
        self.monomial(1)
    }

    /// s^e reduced with s^l = u.
    pub fn monomial(&self, e: u32) -> KummerElem {
        let l = self.exponent;
        let mut coeffs = vec![CycloNum::zero(self.n()); l as usize];
        coeffs[(e % l) as usize] = self.radicand.pow(e / l);
        KummerElem { coeffs }
    }

    pub fn add(&self, a: &KummerElem, b: &KummerElem) -> KummerElem {
        KummerElem {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn mul(&self, a: &KummerElem, b: &KummerElem) -> KummerElem {
        let l = self.exponent as usize;
        let mut out = vec![CycloNum::zero(self.n()); l];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let t = x * y;
                if i + j < l {
                    out[i + j] = &out[i + j] + &t;
                } else {
                    out[i + j - l] = &out[i + j - l] + &(&t * &self.radicand);
                }
            }
        }
        KummerElem { coeffs: out }
    }

    pub fn pow(&self, a: &KummerElem, e: u32) -> KummerElem {
        let mut acc = self.from_base(&CycloNum::one(self.n()));
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// γ^j with γ(s) = ζ_l^{-1} s, identity on k.
    pub fn galois(&self, j: u32, x: &KummerElem) -> KummerElem {
        let l = self.exponent as i64;
        let coeffs = x
            .coeffs
            .iter()
            .enumerate()
            .map(|(e, c)| {
                let k = (-(j as i64) * e as i64).rem_euclid(l) as u32;
                c * &self.zeta.pow(k)
            })
            .collect();
        KummerElem { coeffs }
    }
}

/// Convenience constructor matching the record syntax.
pub fn cyclo_make(n: u32, coeffs: &[Q]) -> CycloNum {
    CycloNum::new(n, coeffs.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, qf};

    #[test]
    fn i_squared_is_minus_one() {
        let i = cyclo_make(4, &[q(0), q(1)]);
        assert_eq!(&i * &i, CycloNum::from_int(4, -1));
    }

    #[test]
    fn rational_inverse() {
        let five = cyclo_make(1, &[q(5)]);
        assert_eq!(five.inv().unwrap(), CycloNum::from_rational(1, qf(1, 5)));
        assert_eq!(CycloNum::zero(7).inv(), Err(CycloError::ZeroInverse));
    }

    #[test]
    fn fifth_roots_sum_to_zero() {
        let s = (0..5).fold(CycloNum::zero(5), |acc, e| &acc + &CycloNum::zeta_pow(5, e));
        assert!(s.is_zero());
    }

    #[test]
    fn galois_examples() {
        let i = CycloNum::zeta_pow(4, 1);
        assert_eq!(i.galois(-1).unwrap(), -&i);
        assert_eq!(i.galois(1).unwrap(), i);
        let z = CycloNum::zeta_pow(5, 1);
        assert_eq!(z.galois(2).unwrap(), CycloNum::zeta_pow(5, 2));
        assert!(matches!(z.galois(5), Err(CycloError::NotCoprime { .. })));
    }

    #[test]
    fn sqrt5_squares_to_five() {
        let s = consts::sqrt5(5).unwrap();
        assert_eq!(&s * &s, CycloNum::from_int(5, 5));
        let s2 = consts::sqrt2(8).unwrap();
        assert_eq!(&s2 * &s2, CycloNum::from_int(8, 2));
        let is2 = consts::i_sqrt2(8).unwrap();
        assert_eq!(&is2 * &is2, CycloNum::from_int(8, -2));
        let g = consts::golden(60).unwrap();
        assert_eq!(&g * &g, &g + &CycloNum::one(60));
    }

    #[test]
    fn subfield_membership() {
        let q4 = FieldSpec::rationals(4);
        assert!(!q4.contains(&CycloNum::zeta_pow(4, 1)).unwrap());
        let qi = FieldSpec::full(4);
        assert!(qi.contains(&CycloNum::zeta_pow(4, 1)).unwrap());
        let qs5 = FieldSpec::new(5, vec![consts::sqrt5(5).unwrap()]).unwrap();
        assert!(!qs5.contains(&CycloNum::zeta_pow(5, 1)).unwrap());
        assert!(qs5.contains(&consts::sqrt5(5).unwrap()).unwrap());
        assert_eq!(qs5.degree(), 2);
        assert!(matches!(
            qs5.contains(&CycloNum::zeta_pow(3, 1)),
            Err(CycloError::ConductorMismatch { .. })
        ));
    }

    #[test]
    fn roots_of_unity_membership() {
        let q4 = FieldSpec::rationals(4);
        assert!(q4.contains_root_of_unity(2).unwrap());
        assert!(!q4.contains_root_of_unity(4).unwrap());
        assert!(FieldSpec::full(4).contains_root_of_unity(4).unwrap());
        assert!(matches!(
            q4.contains_root_of_unity(3),
            Err(CycloError::ConductorTooSmall { .. })
        ));
        // Q(ζ_3) = Q(ζ_6)
        assert!(FieldSpec::full(3).contains_root_of_unity(6).unwrap());
    }

    #[test]
    fn embedding_preserves_products() {
        let a = cyclo_make(12, &[q(1), qf(2, 3), q(0), q(-1)]);
        let b = cyclo_make(12, &[q(0), q(1), q(5)]);
        let lhs = (&a * &b).embed(60).unwrap();
        let rhs = &a.embed(60).unwrap() * &b.embed(60).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn kummer_examples() {
        let q8 = FieldSpec::rationals(8);
        let two = CycloNum::from_int(8, 2);
        let ext = KummerExt::new(q8.clone(), two.clone(), 2).unwrap();
        let s = ext.generator();
        let gs = ext.galois(1, &s);
        assert_eq!(gs.coeffs[1], CycloNum::from_int(8, -1));
        assert!(matches!(
            KummerExt::new(q8, CycloNum::from_int(8, 4), 2),
            Err(CycloError::NotIrreducible(_))
        ));
        let qi = FieldSpec::new(8, vec![CycloNum::zeta_pow(8, 2)]).unwrap();
        let e4 = KummerExt::new(qi, two, 4).unwrap();
        let s = e4.generator();
        for j in 0..4 {
            let once = e4.galois(j, &s);
            let back = (0..(4 - j) % 4).fold(once, |acc, _| e4.galois(1, &acc));
            assert_eq!(back, s);
        }
        // γ^{l/2} negates s
        let img = e4.galois(2, &s);
        assert_eq!(img.coeffs[1], -&s.coeffs[1]);
    }

    #[test]
    fn kummer_needs_root_of_unity() {
        let q8 = FieldSpec::rationals(8);
        assert_eq!(
            KummerExt::new(q8, CycloNum::from_int(8, 2), 4).unwrap_err(),
            CycloError::MissingRootOfUnity(4)
        );
    }

    #[test]
    fn minus_four_fourth_power_is_reducible() {
        // x^4 + 4 = (x^2+2x+2)(x^2-2x+2)
        let qi = FieldSpec::new(4, vec![CycloNum::zeta_pow(4, 1)]).unwrap();
        let err = KummerExt::new(qi, CycloNum::from_int(4, -4), 4).unwrap_err();
        assert!(matches!(err, CycloError::NotIrreducible(_)));
    }
}
