//! Points of P^1 over Q(ζ_N), projective matrices, and the finite subgroups
//! of PGL_2 generated by the standard matrices I, J, K, R_k, S.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{self, q};
use crate::cyclo::{self, consts, root_of_unity, CycloError, CycloNum, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error(transparent)]
    Field(#[from] CycloError),
    #[error("singular matrix")]
    Singular,
    #[error("point (0 : 0)")]
    ZeroPoint,
    #[error("field lacks {0}")]
    MissingConstant(String),
    #[error("closure exceeded {0} elements")]
    NotFinite(usize),
    #[error("group of order {0} matches no finite subgroup of PGL2")]
    Unclassifiable(usize),
    #[error("fixed points need the square root of {0}")]
    NeedsLargerField(String),
    #[error("unknown group kind {0:?}")]
    BadKind(String),
}

/// A point (t1 : t0), scaled so the last nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct P1Point {
    t1: CycloNum,
    t0: CycloNum,
}

impl P1Point {
    pub fn new(t1: CycloNum, t0: CycloNum) -> Result<Self, GroupError> {
        if t0.is_zero() {
            if t1.is_zero() {
                return Err(GroupError::ZeroPoint);
            }
            let n = t1.conductor();
            return Ok(P1Point {
                t1: CycloNum::one(n),
                t0,
            });
        }
        let inv = t0.inv()?;
        Ok(P1Point {
            t1: &t1 * &inv,
            t0: CycloNum::one(inv.conductor()),
        })
    }

    pub fn affine(x: CycloNum) -> Self {
        let n = x.conductor();
        P1Point {
            t1: x,
            t0: CycloNum::one(n),
        }
    }

    pub fn infinity(n: u32) -> Self {
        P1Point {
            t1: CycloNum::one(n),
            t0: CycloNum::zero(n),
        }
    }

    pub fn is_infinity(&self) -> bool {
        self.t0.is_zero()
    }

    /// The affine coordinate t1/t0, or `None` at (1 : 0).
    pub fn coordinate(&self) -> Option<&CycloNum> {
        if self.is_infinity() {
            None
        } else {
            Some(&self.t1)
        }
    }

    pub fn coords(&self) -> (&CycloNum, &CycloNum) {
        (&self.t1, &self.t0)
    }

    pub fn conductor(&self) -> u32 {
        self.t1.conductor()
    }

    pub fn embed(&self, m: u32) -> Result<Self, GroupError> {
        Ok(P1Point {
            t1: self.t1.embed(m)?,
            t0: self.t0.embed(m)?,
        })
    }

    pub fn galois(&self, j: i64) -> Result<Self, GroupError> {
        Ok(P1Point {
            t1: self.t1.galois(j)?,
            t0: self.t0.galois(j)?,
        })
    }

    pub fn defined_over(&self, k: &FieldSpec) -> Result<bool, GroupError> {
        Ok(k.contains(&self.t1)? && k.contains(&self.t0)?)
    }
}

impl fmt::Display for P1Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {})", self.t1, self.t0)
    }
}

/// A class in PGL_2, stored with its first nonzero entry equal to 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pgl2Elem {
    m: [CycloNum; 4],
}

impl Pgl2Elem {
    /// The class of [[a, b], [c, d]].
    pub fn new(a: CycloNum, b: CycloNum, c: CycloNum, d: CycloNum) -> Result<Self, GroupError> {
        let det = &(&a * &d) - &(&b * &c);
        if det.is_zero() {
            return Err(GroupError::Singular);
        }
        let m = [a, b, c, d];
        let lead = m.iter().find(|x| !x.is_zero()).expect("nonzero det");
        let inv = lead.inv()?;
        let m = m.map(|x| &x * &inv);
        Ok(Pgl2Elem { m })
    }

    pub fn from_ints(n: u32, a: i64, b: i64, c: i64, d: i64) -> Result<Self, GroupError> {
        let f = |x| CycloNum::from_int(n, x);
        Self::new(f(a), f(b), f(c), f(d))
    }

    pub fn identity(n: u32) -> Self {
        Self::from_ints(n, 1, 0, 0, 1).expect("invertible")
    }

    pub fn diag(a: CycloNum, d: CycloNum) -> Result<Self, GroupError> {
        let z = CycloNum::zero(a.conductor());
        Self::new(a, z.clone(), z, d)
    }

    pub fn entries(&self) -> &[CycloNum; 4] {
        &self.m
    }

    pub fn conductor(&self) -> u32 {
        self.m[0].conductor()
    }

    pub fn is_identity(&self) -> bool {
        self.m[1].is_zero() && self.m[2].is_zero() && self.m[0] == self.m[3]
    }

    pub fn trace(&self) -> CycloNum {
        &self.m[0] + &self.m[3]
    }

    pub fn det(&self) -> CycloNum {
        &(&self.m[0] * &self.m[3]) - &(&self.m[1] * &self.m[2])
    }

    pub fn mul(&self, o: &Self) -> Self {
        let [a, b, c, d] = &self.m;
        let [e, f, g, h] = &o.m;
        Self::new(
            &(a * e) + &(b * g),
            &(a * f) + &(b * h),
            &(c * e) + &(d * g),
            &(c * f) + &(d * h),
        )
        .expect("product of invertible classes")
    }

    pub fn inv(&self) -> Self {
        let [a, b, c, d] = &self.m;
        Self::new(d.clone(), -b, -c, a.clone()).expect("adjugate of invertible class")
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity(self.conductor());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Order in PGL_2, if at most `cap`.
    pub fn order(&self, cap: u32) -> Option<u32> {
        let mut acc = self.clone();
        for k in 1..=cap {
            if acc.is_identity() {
                return Some(k);
            }
            acc = acc.mul(self);
        }
        None
    }

    pub fn embed(&self, n: u32) -> Result<Self, GroupError> {
        let [a, b, c, d] = &self.m;
        Ok(Pgl2Elem {
            m: [a.embed(n)?, b.embed(n)?, c.embed(n)?, d.embed(n)?],
        })
    }

    pub fn galois(&self, j: i64) -> Result<Self, GroupError> {
        let [a, b, c, d] = &self.m;
        Ok(Pgl2Elem {
            m: [a.galois(j)?, b.galois(j)?, c.galois(j)?, d.galois(j)?],
        })
    }

    /// Whether the class has a representative over k.
    pub fn defined_over(&self, k: &FieldSpec) -> Result<bool, GroupError> {
        for x in &self.m {
            if !k.contains(x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn apply(&self, p: &P1Point) -> P1Point {
        let [a, b, c, d] = &self.m;
        let (t1, t0) = p.coords();
        P1Point::new(&(a * t1) + &(b * t0), &(c * t1) + &(d * t0))
            .expect("invertible map sends points to points")
    }

    /// Fixed points: `None` for the identity, otherwise one or two points.
    pub fn fixed_points(&self) -> Result<Option<Vec<P1Point>>, GroupError> {
        if self.is_identity() {
            return Ok(None);
        }
        let n = self.conductor();
        let [a, b, c, d] = &self.m;
        if c.is_zero() {
            let mut pts = vec![P1Point::infinity(n)];
            if a != d {
                pts.push(P1Point::new(b.clone(), d - a)?);
            }
            pts.sort();
            return Ok(Some(pts));
        }
        let disc = &self.trace().pow(2) - &self.det().scale(&q(4));
        if disc.is_zero() {
            return Ok(Some(vec![P1Point::new(a - d, c.scale(&q(2)))?]));
        }
        let s = match self.eigen_difference()? {
            Some(s) => s,
            None => cyclo::sqrt(&disc)?.ok_or_else(|| GroupError::NeedsLargerField(disc.to_string()))?,
        };
        let two_c = c.scale(&q(2));
        let base = a - d;
        let mut pts = vec![
            P1Point::new(&base + &s, two_c.clone())?,
            P1Point::new(&base - &s, two_c)?,
        ];
        pts.sort();
        Ok(Some(pts))
    }

    /// For finite order k > 2 with ζ_k representable, the eigenvalues are
    /// λ and λζ_k^j with λ = tr/(ζ_k^j + 1); returns their difference.
    fn eigen_difference(&self) -> Result<Option<CycloNum>, GroupError> {
        let n = self.conductor();
        let Some(k) = self.order(120) else {
            return Ok(None);
        };
        if k <= 2 {
            return Ok(None);
        }
        let Some(z) = root_of_unity(n, k) else {
            return Ok(None);
        };
        let tr = self.trace();
        let det = self.det();
        for j in 1..k {
            if arith::gcd_u64(j as u64, k as u64) != 1 {
                continue;
            }
            let zj = z.pow(j);
            let denom = &zj + &CycloNum::one(n);
            let lam = tr.div(&denom)?;
            if &(&lam * &lam) * &zj == det {
                return Ok(Some(&(&lam * &zj) - &lam));
            }
        }
        Ok(None)
    }
}

impl fmt::Display for Pgl2Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.m;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

/// Serialized by name: "C7", "D6", "A4".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum GroupKind {
    Cyclic(u32),
    Dihedral(u32),
    A4,
    S4,
    A5,
}

impl GroupKind {
    pub fn order(&self) -> usize {
        match *self {
            GroupKind::Cyclic(k) => k as usize,
            GroupKind::Dihedral(k) => 2 * k as usize,
            GroupKind::A4 => 12,
            GroupKind::S4 => 24,
            GroupKind::A5 => 60,
        }
    }

    /// Conductor in which all fixed points of the standard model live.
    pub fn conductor(&self) -> u32 {
        match *self {
            GroupKind::Cyclic(k) => arith::lcm_u64(4, k as u64) as u32,
            // reflection axes sit at angles π/k
            GroupKind::Dihedral(k) => arith::lcm_u64(4, 2 * k as u64) as u32,
            GroupKind::A4 | GroupKind::S4 => 24,
            GroupKind::A5 => 60,
        }
    }

    pub fn parse(s: &str) -> Result<Self, GroupError> {
        let s = s.trim();
        let bad = || GroupError::BadKind(s.to_string());
        match s {
            "A4" => return Ok(GroupKind::A4),
            "S4" => return Ok(GroupKind::S4),
            "A5" => return Ok(GroupKind::A5),
            _ => {}
        }
        let (head, num) = s.split_at(1.min(s.len()));
        let k: u32 = num.parse().map_err(|_| bad())?;
        match head {
            "C" if k >= 1 => Ok(GroupKind::Cyclic(k)),
            "D" if k >= 4 && k % 2 == 0 => Ok(GroupKind::Dihedral(k / 2)),
            _ => Err(bad()),
        }
    }

    /// Table of special orbit lengths (orbits with nontrivial stabilizer).
    pub fn special_orbits(&self) -> Vec<usize> {
        match *self {
            GroupKind::Cyclic(1) => vec![],
            GroupKind::Cyclic(_) => vec![1, 1],
            GroupKind::Dihedral(k) => {
                let mut v = vec![2, k as usize, k as usize];
                v.sort();
                v
            }
            GroupKind::A4 => vec![4, 4, 6],
            GroupKind::S4 => vec![6, 8, 12],
            GroupKind::A5 => vec![12, 20, 30],
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GroupKind::Cyclic(k) => write!(f, "C{k}"),
            GroupKind::Dihedral(k) => write!(f, "D{}", 2 * k),
            GroupKind::A4 => write!(f, "A4"),
            GroupKind::S4 => write!(f, "S4"),
            GroupKind::A5 => write!(f, "A5"),
        }
    }
}

impl From<GroupKind> for String {
    fn from(k: GroupKind) -> String {
        k.to_string()
    }
}

impl TryFrom<String> for GroupKind {
    type Error = GroupError;

    fn try_from(s: String) -> Result<Self, GroupError> {
        GroupKind::parse(&s)
    }
}

fn need(
    k: &FieldSpec,
    name: &str,
    x: Option<CycloNum>,
) -> Result<CycloNum, GroupError> {
    let missing = || GroupError::MissingConstant(name.to_string());
    let x = x.ok_or_else(missing)?;
    if k.contains(&x)? {
        Ok(x)
    } else {
        Err(missing())
    }
}

struct Basics {
    id: [CycloNum; 4],
    i_m: [CycloNum; 4],
    j_m: [CycloNum; 4],
    k_m: [CycloNum; 4],
}

fn basics(n: u32, i: &CycloNum) -> Basics {
    let z = CycloNum::zero(n);
    let o = CycloNum::one(n);
    Basics {
        id: [o.clone(), z.clone(), z.clone(), o.clone()],
        i_m: [-i, z.clone(), z.clone(), i.clone()],
        j_m: [z.clone(), -&o, o.clone(), z.clone()],
        k_m: [z.clone(), i.clone(), i.clone(), z],
    }
}

fn lin(terms: &[(&CycloNum, &[CycloNum; 4])]) -> [CycloNum; 4] {
    let n = terms[0].0.conductor();
    let mut out: [CycloNum; 4] = std::array::from_fn(|_| CycloNum::zero(n));
    for (c, m) in terms {
        for (o, x) in out.iter_mut().zip(m.iter()) {
            *o = &*o + &(*c * x);
        }
    }
    out
}

fn mat_mul(x: &[CycloNum; 4], y: &[CycloNum; 4]) -> [CycloNum; 4] {
    [
        &(&x[0] * &y[0]) + &(&x[1] * &y[2]),
        &(&x[0] * &y[1]) + &(&x[1] * &y[3]),
        &(&x[2] * &y[0]) + &(&x[3] * &y[2]),
        &(&x[2] * &y[1]) + &(&x[3] * &y[3]),
    ]
}

fn elem(m: [CycloNum; 4]) -> Result<Pgl2Elem, GroupError> {
    let [a, b, c, d] = m;
    Pgl2Elem::new(a, b, c, d)
}

/// The generating matrices of the standard model of `kind` over `k`.
pub fn standard_generators(kind: GroupKind, k: &FieldSpec) -> Result<Vec<Pgl2Elem>, GroupError> {
    let n = k.conductor();
    let one = CycloNum::one(n);
    match kind {
        GroupKind::Cyclic(m) => {
            if m == 1 {
                return Ok(vec![]);
            }
            let z = need(k, &format!("ξ_{m}"), root_of_unity(n, m))?;
            Ok(vec![Pgl2Elem::diag(z, one)?])
        }
        GroupKind::Dihedral(m) => {
            let s = Pgl2Elem::from_ints(n, 0, 1, 1, 0)?;
            if m == 2 {
                // the rotation matrix degenerates for k = 2
                return Ok(vec![Pgl2Elem::from_ints(n, -1, 0, 0, 1)?, s]);
            }
            let c = need(k, &format!("cos(2π/{m})"), consts::cos_2pi_over(n, m))?;
            // 4cos^2(π/k) - 1 = 2cos(2π/k) + 1
            let top = &c.scale(&q(2)) + &one;
            let r = Pgl2Elem::new(top, -&one, one.clone(), one)?;
            Ok(vec![r, s])
        }
        GroupKind::A4 | GroupKind::A5 => {
            let i = need(k, "i", consts::i(n))?;
            let b = basics(n, &i);
            let t = lin(&[(&one, &b.id), (&one, &b.i_m), (&one, &b.j_m), (&one, &b.k_m)]);
            let mut gens = vec![elem(b.i_m.clone())?, elem(t)?];
            if kind == GroupKind::A5 {
                let phi = need(k, "φ", consts::golden(n))?;
                let phi_inv = phi.inv()?;
                gens.push(elem(lin(&[(&one, &b.id), (&phi, &b.i_m), (&phi_inv, &b.j_m)]))?);
            }
            Ok(gens)
        }
        GroupKind::S4 => {
            if let Ok(i) = need(k, "i", consts::i(n)) {
                let b = basics(n, &i);
                let t = lin(&[(&one, &b.id), (&one, &b.i_m), (&one, &b.j_m), (&one, &b.k_m)]);
                let ij = lin(&[(&one, &b.i_m), (&one, &b.j_m)]);
                return Ok(vec![elem(b.i_m.clone())?, elem(t)?, elem(ij)?]);
            }
            let is2 = need(k, "i or i√2", consts::i_sqrt2(n))?;
            let z = CycloNum::zero(n);
            let it = [-&is2, one.clone(), one.clone(), is2.clone()];
            let id = [one.clone(), z.clone(), z.clone(), one.clone()];
            let j = [z.clone(), -&one, one.clone(), z];
            let itj = mat_mul(&it, &j);
            let t = lin(&[(&one, &id), (&one, &it), (&one, &j), (&one, &itj)]);
            let ipj = lin(&[(&one, &it), (&one, &j)]);
            Ok(vec![elem(it)?, elem(t)?, elem(ipj)?])
        }
    }
}

/// A finite subgroup of PGL_2(Q(ζ_N)) with its elements sorted.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    elements: Vec<Pgl2Elem>,
    kind: GroupKind,
    generators: Vec<usize>,
}

impl FiniteGroup {
    pub fn elements(&self) -> &[Pgl2Elem] {
        &self.elements
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> Vec<&Pgl2Elem> {
        self.generators.iter().map(|&i| &self.elements[i]).collect()
    }

    pub fn conductor(&self) -> u32 {
        self.elements[0].conductor()
    }

    pub fn contains(&self, g: &Pgl2Elem) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    /// The same group over a larger conductor.
    pub fn embed(&self, n: u32) -> Result<Self, GroupError> {
        let gens: Vec<Pgl2Elem> = self
            .generators()
            .iter()
            .map(|g| g.embed(n))
            .collect::<Result<_, _>>()?;
        generate_group_in(n, &gens, self.order().max(1))
    }

    /// Whether every element has a representative over k.
    pub fn defined_over(&self, k: &FieldSpec) -> Result<bool, GroupError> {
        let k = k.lift(self.conductor())?;
        for g in &self.elements {
            if !g.defined_over(&k)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn orbit(&self, p: &P1Point) -> Vec<P1Point> {
        let set: BTreeSet<P1Point> = self.elements.iter().map(|g| g.apply(p)).collect();
        set.into_iter().collect()
    }

    pub fn stabilizer(&self, p: &P1Point) -> Result<FiniteGroup, GroupError> {
        let gens: Vec<Pgl2Elem> = self
            .elements
            .iter()
            .filter(|g| g.apply(p) == *p)
            .cloned()
            .collect();
        generate_group_in(self.conductor(), &gens, self.order())
    }

    /// Orbits of points with nontrivial stabilizer, each sorted, ordered by
    /// length then first point.
    pub fn special_orbits(&self) -> Result<Vec<Vec<P1Point>>, GroupError> {
        let mut pts = BTreeSet::new();
        for g in &self.elements {
            if let Some(fp) = g.fixed_points()? {
                pts.extend(fp);
            }
        }
        let mut orbits: Vec<Vec<P1Point>> = Vec::new();
        let mut seen = BTreeSet::new();
        for p in pts {
            if seen.contains(&p) {
                continue;
            }
            let o = self.orbit(&p);
            seen.extend(o.iter().cloned());
            orbits.push(o);
        }
        orbits.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a[0].cmp(&b[0])));
        Ok(orbits)
    }

    pub fn special_orbit_table(&self) -> Result<Vec<usize>, GroupError> {
        Ok(self.special_orbits()?.iter().map(|o| o.len()).collect())
    }

    /// Element orders with multiplicities.
    pub fn order_statistics(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for g in &self.elements {
            let o = g.order(self.order() as u32).expect("finite group");
            *out.entry(o).or_insert(0) += 1;
        }
        out
    }
}

pub const DEFAULT_CAP: usize = 512;

/// Closure of `gens` under multiplication.
pub fn generate_group(gens: &[Pgl2Elem], cap: usize) -> Result<FiniteGroup, GroupError> {
    let n = gens.first().map(|g| g.conductor()).unwrap_or(1);
    generate_group_in(n, gens, cap)
}

fn generate_group_in(n: u32, gens: &[Pgl2Elem], cap: usize) -> Result<FiniteGroup, GroupError> {
    let id = Pgl2Elem::identity(n);
    let mut set: BTreeSet<Pgl2Elem> = BTreeSet::new();
    set.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.mul(g);
            if set.insert(y.clone()) {
                if set.len() > cap {
                    return Err(GroupError::NotFinite(cap));
                }
                queue.push_back(y);
            }
        }
    }
    let elements: Vec<Pgl2Elem> = set.into_iter().collect();
    let generators = gens
        .iter()
        .map(|g| elements.binary_search(g).expect("generator in closure"))
        .collect();
    let kind = classify_elements(&elements)?;
    Ok(FiniteGroup {
        elements,
        kind,
        generators,
    })
}

fn classify_elements(elements: &[Pgl2Elem]) -> Result<GroupKind, GroupError> {
    let n = elements.len();
    let orders: Vec<u32> = elements
        .iter()
        .map(|g| g.order(n as u32).ok_or(GroupError::Unclassifiable(n)))
        .collect::<Result<_, _>>()?;
    let max = orders.iter().copied().max().unwrap_or(1);
    if max as usize == n {
        return Ok(GroupKind::Cyclic(n as u32));
    }
    if n % 2 == 0 {
        let k = (n / 2) as u32;
        let involutions = orders.iter().filter(|&&o| o == 2).count();
        // D_2k: k reflections plus the involution in the rotations when k is even
        let expected = k as usize + usize::from(k % 2 == 0);
        if max == k.max(2) && involutions == expected {
            return Ok(GroupKind::Dihedral(k));
        }
    }
    match (n, max) {
        (12, 3) => Ok(GroupKind::A4),
        (24, 4) => Ok(GroupKind::S4),
        (60, 5) => Ok(GroupKind::A5),
        _ => Err(GroupError::Unclassifiable(n)),
    }
}

pub fn classify_group(g: &FiniteGroup) -> Result<GroupKind, GroupError> {
    classify_elements(&g.elements)
}

/// The standard model of `kind` over `k`, embedded in a conductor where all
/// of its fixed points are representable.
pub fn standard_group(kind: GroupKind, k: &FieldSpec) -> Result<FiniteGroup, GroupError> {
    let gens = standard_generators(kind, k)?;
    let n = arith::lcm_u64(k.conductor() as u64, kind.conductor() as u64) as u32;
    let gens: Vec<Pgl2Elem> = gens.iter().map(|g| g.embed(n)).collect::<Result<_, _>>()?;
    generate_group_in(n, &gens, DEFAULT_CAP)
}

/// The smallest field in the default model where `kind` lives: Q(ζ_k) for
/// cyclic groups, Q(cos 2π/k) for dihedral ones, Q(i) for A4 and S4, Q(i, √5)
/// for A5.
pub fn default_field(kind: GroupKind) -> FieldSpec {
    let n = kind.conductor();
    let gens = match kind {
        GroupKind::Cyclic(k) => root_of_unity(n, k).into_iter().collect(),
        GroupKind::Dihedral(k) => consts::cos_2pi_over(n, k).into_iter().collect(),
        GroupKind::A4 | GroupKind::S4 => consts::i(n).into_iter().collect(),
        GroupKind::A5 => vec![consts::i(n).unwrap(), consts::sqrt5(n).unwrap()],
    };
    FieldSpec::new(n, gens).expect("constants live in the default conductor")
}

/// Both fixed points of `g` lie over k.
pub fn fixed_points_defined_over(g: &Pgl2Elem, k: &FieldSpec) -> Result<bool, GroupError> {
    let k = k.lift(arith::lcm_u64(k.conductor() as u64, g.conductor() as u64) as u32)?;
    let Some(pts) = g.fixed_points()? else {
        return Ok(true);
    };
    for p in pts {
        if !p.embed(k.conductor())?.defined_over(&k)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order_of(kind: GroupKind) -> usize {
        let k = default_field(kind);
        standard_group(kind, &k).unwrap().order()
    }

    #[test]
    fn group_orders() {
        assert_eq!(order_of(GroupKind::A4), 12);
        assert_eq!(order_of(GroupKind::S4), 24);
        assert_eq!(order_of(GroupKind::A5), 60);
        assert_eq!(order_of(GroupKind::Dihedral(3)), 6);
        assert_eq!(order_of(GroupKind::Dihedral(2)), 4);
        assert_eq!(order_of(GroupKind::Cyclic(5)), 5);
    }

    #[test]
    fn c5_generator() {
        let k = FieldSpec::full(5);
        let g = standard_generators(GroupKind::Cyclic(5), &k).unwrap();
        assert_eq!(g.len(), 1);
        let want = Pgl2Elem::diag(CycloNum::zeta_pow(5, 1), CycloNum::one(5)).unwrap();
        assert_eq!(g[0], want);
    }

    #[test]
    fn a4_needs_i() {
        let err = standard_generators(GroupKind::A4, &FieldSpec::rationals(24)).unwrap_err();
        assert_eq!(err, GroupError::MissingConstant("i".into()));
    }

    #[test]
    fn s4_over_i_sqrt2() {
        let n = 24;
        let k = FieldSpec::new(n, vec![consts::i_sqrt2(n).unwrap()]).unwrap();
        let gens = standard_generators(GroupKind::S4, &k).unwrap();
        let is2 = consts::i_sqrt2(n).unwrap();
        let expect = Pgl2Elem::new(
            -&is2,
            CycloNum::zero(n),
            CycloNum::from_int(n, 2),
            is2.clone(),
        )
        .unwrap();
        assert_eq!(gens[2], expect);
        let mut fp = gens[2].fixed_points().unwrap().unwrap();
        fp.sort();
        let mut want = vec![
            P1Point::affine(CycloNum::zero(n)),
            P1Point::affine(-&is2),
        ];
        want.sort();
        assert_eq!(fp, want);
        let g = generate_group(&gens, DEFAULT_CAP).unwrap();
        assert_eq!(g.kind(), GroupKind::S4);
    }

    #[test]
    fn infinite_order_detected() {
        let g = Pgl2Elem::from_ints(1, 2, 0, 0, 1).unwrap();
        assert_eq!(generate_group(&[g], 64).unwrap_err(), GroupError::NotFinite(64));
    }

    #[test]
    fn reflection_fixed_points() {
        let s = Pgl2Elem::from_ints(4, 0, 1, 1, 0).unwrap();
        let fp = s.fixed_points().unwrap().unwrap();
        let mut want = vec![
            P1Point::affine(CycloNum::from_int(4, 1)),
            P1Point::affine(CycloNum::from_int(4, -1)),
        ];
        want.sort();
        assert_eq!(fp, want);
        assert!(fixed_points_defined_over(&s, &FieldSpec::rationals(4)).unwrap());
    }

    #[test]
    fn rotation_fixed_points_over_cos_field() {
        let n = 20;
        let k = FieldSpec::new(n, vec![consts::cos_2pi_over(n, 5).unwrap()]).unwrap();
        let gens = standard_generators(GroupKind::Dihedral(5), &k).unwrap();
        assert_eq!(gens[0].order(10), Some(5));
        assert!(!fixed_points_defined_over(&gens[0], &k).unwrap());
        assert!(!k.contains_root_of_unity(5).unwrap());
    }

    #[test]
    fn orbit_tables() {
        for kind in [
            GroupKind::Cyclic(3),
            GroupKind::Dihedral(2),
            GroupKind::Dihedral(4),
            GroupKind::A4,
            GroupKind::S4,
        ] {
            let g = standard_group(kind, &default_field(kind)).unwrap();
            let mut t = g.special_orbit_table().unwrap();
            t.sort();
            assert_eq!(t, kind.special_orbits(), "{kind}");
        }
    }

    #[test]
    fn kind_parse_roundtrip() {
        for s in ["C1", "C7", "D4", "D12", "A4", "S4", "A5"] {
            assert_eq!(GroupKind::parse(s).unwrap().to_string(), s);
        }
        assert!(GroupKind::parse("D5").is_err());
    }
}
