//! Equivalence of singular-fibre loci under k-defined Möbius maps, and
//! pairwise comparison of quotient loci across a family.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;
use crate::cyclo::{CycloError, CycloNum, FieldSpec};
use crate::example::BuiltExample;
use crate::forms::Form;
use crate::group::{GroupError, P1Point, Pgl2Elem};
use crate::quotient::FibreKind;
use crate::records::{MatrixRecord, PointRecord, RecordError};

/// Loci with fewer points say nothing about birational type.
pub const RIGIDITY_THRESHOLD: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompareError {
    #[error("degenerate triple: points are not pairwise distinct")]
    DegenerateTriple,
    #[error("loci live over different fields")]
    FieldMismatch,
    #[error("locus is not Galois-stable: {0}")]
    NotGaloisStable(String),
    #[error("locus needs at least 3 points")]
    TooFewPoints,
    #[error("no two base points in distinct orbits for the quotient coordinate")]
    NoQuotientCoordinate,
    #[error(transparent)]
    Field(#[from] CycloError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Record(#[from] RecordError),
}

fn common(n: u32, m: u32) -> u32 {
    arith::lcm_u64(n as u64, m as u64) as u32
}

/// Sends (0:1), (1:1), (1:0) to a1, a2, a3.
fn from_standard(a: [&P1Point; 3]) -> Result<Pgl2Elem, CompareError> {
    let (x1, x0) = a[0].coords();
    let (z1, z0) = a[2].coords();
    let (y1, y0) = a[1].coords();
    // columns are multiples of a3 and a1 with a1*c1 + a3*c3 = a2
    let det = &(x0 * z1) - &(x1 * z0);
    if det.is_zero() {
        return Err(CompareError::DegenerateTriple);
    }
    // solve c3 * (z1, z0) + c1 * (x1, x0) = (y1, y0)
    let c3 = &(&(y1 * x0) - &(y0 * x1)) * &det.inv()?;
    let c1 = &(&(y0 * z1) - &(y1 * z0)) * &det.inv()?;
    if c1.is_zero() || c3.is_zero() {
        return Err(CompareError::DegenerateTriple);
    }
    Ok(Pgl2Elem::new(&c3 * z1, &c1 * x1, &c3 * z0, &c1 * x0)?)
}

/// The unique projective map with a_i ↦ b_i.
pub fn mobius_from_triples(a: [&P1Point; 3], b: [&P1Point; 3]) -> Result<Pgl2Elem, CompareError> {
    let n = a.iter().chain(b.iter()).fold(1, |acc, p| common(acc, p.conductor()));
    let ea: Vec<P1Point> = a.iter().map(|p| p.embed(n)).collect::<Result<_, _>>()?;
    let eb: Vec<P1Point> = b.iter().map(|p| p.embed(n)).collect::<Result<_, _>>()?;
    let ma = from_standard([&ea[0], &ea[1], &ea[2]])?;
    let mb = from_standard([&eb[0], &eb[1], &eb[2]])?;
    Ok(mb.mul(&ma.inv()))
}

/// A Galois-stable finite set of points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibreLocus {
    points: Vec<P1Point>,
    field: FieldSpec,
}

impl FibreLocus {
    pub fn new(points: &[P1Point], field: &FieldSpec) -> Result<Self, CompareError> {
        let n = points.iter().fold(field.conductor(), |acc, p| common(acc, p.conductor()));
        let field = field.lift(n)?;
        let set: BTreeSet<P1Point> = points.iter().map(|p| p.embed(n)).collect::<Result<_, _>>()?;
        for p in &set {
            for &j in field.stabilizer() {
                if !set.contains(&p.galois(j as i64)?) {
                    return Err(CompareError::NotGaloisStable(p.to_string()));
                }
            }
        }
        Ok(FibreLocus {
            points: set.into_iter().collect(),
            field,
        })
    }

    pub fn points(&self) -> &[P1Point] {
        &self.points
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor()
    }

    pub fn embed(&self, n: u32) -> Result<Self, CompareError> {
        FibreLocus::new(&self.points, &self.field.lift(n)?)
    }

    pub fn map(&self, phi: &Pgl2Elem) -> Result<Self, CompareError> {
        let n = common(self.conductor(), phi.conductor());
        let phi = phi.embed(n)?;
        let pts: Vec<P1Point> = self
            .points
            .iter()
            .map(|p| Ok(phi.apply(&p.embed(n)?)))
            .collect::<Result<_, CompareError>>()?;
        FibreLocus::new(&pts, &self.field.lift(n)?)
    }

    pub fn record(&self) -> Vec<PointRecord> {
        self.points.iter().map(PointRecord::from_point).collect()
    }
}

fn same_field(a: &FieldSpec, b: &FieldSpec) -> Result<bool, CompareError> {
    let n = common(a.conductor(), b.conductor());
    Ok(a.lift(n)? == b.lift(n)?)
}

/// A k-defined φ with φ(A) = B, if any. Three points of A are fixed and
/// every ordered triple of B is tried.
pub fn loci_equivalent(a: &FibreLocus, b: &FibreLocus) -> Result<Option<Pgl2Elem>, CompareError> {
    if !same_field(&a.field, &b.field)? {
        return Err(CompareError::FieldMismatch);
    }
    if a.len() != b.len() {
        return Ok(None);
    }
    if a.len() < 3 {
        return Err(CompareError::TooFewPoints);
    }
    let n = common(a.conductor(), b.conductor());
    let (a, b) = (a.embed(n)?, b.embed(n)?);
    if a.points == b.points {
        return Ok(Some(Pgl2Elem::identity(n)));
    }
    let target: BTreeSet<&P1Point> = b.points.iter().collect();
    let src = [&a.points[0], &a.points[1], &a.points[2]];
    let bp = &b.points;
    for i in 0..bp.len() {
        for j in 0..bp.len() {
            for l in 0..bp.len() {
                if i == j || j == l || i == l {
                    continue;
                }
                let phi = mobius_from_triples(src, [&bp[i], &bp[j], &bp[l]])?;
                if !phi.defined_over(&a.field)? {
                    continue;
                }
                if a.points.iter().all(|p| target.contains(&phi.apply(p))) {
                    return Ok(Some(phi));
                }
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum PairVerdict {
    Equivalent { map: MatrixRecord },
    Inequivalent,
    NoConclusion { equivalent_loci: bool },
}

/// Coordinate on B/G: t ↦ O_p(t) / O_q(t), the ratio of the normalized orbit
/// forms of two k-points in distinct orbits.
#[derive(Clone, Debug)]
pub struct QuotientCoordinate {
    pub p: P1Point,
    pub q: P1Point,
    num: Form,
    den: Form,
}

impl QuotientCoordinate {
    /// Uses the first two points of `candidates` lying in distinct orbits.
    pub fn new(elems: &[Pgl2Elem], candidates: &[P1Point]) -> Result<Self, CompareError> {
        let n = elems[0].conductor();
        let cands: Vec<P1Point> = candidates.iter().map(|c| c.embed(n)).collect::<Result<_, _>>()?;
        for (i, p) in cands.iter().enumerate() {
            let orb: BTreeSet<P1Point> = elems.iter().map(|h| h.apply(p)).collect();
            for q in &cands[i + 1..] {
                if !orb.contains(q) {
                    let num = Form::vanishing_at(p).orbit_product(elems)?;
                    let den = Form::vanishing_at(q).orbit_product(elems)?;
                    return Ok(QuotientCoordinate {
                        p: p.clone(),
                        q: q.clone(),
                        num,
                        den,
                    });
                }
            }
        }
        Err(CompareError::NoQuotientCoordinate)
    }

    /// The default candidates (0:1), (1:0), (1:1), (2:1), (-1:1), (3:1).
    pub fn standard(elems: &[Pgl2Elem]) -> Result<Self, CompareError> {
        let n = elems[0].conductor();
        let mut c = vec![P1Point::affine(CycloNum::zero(n)), P1Point::infinity(n)];
        for t in [1, 2, -1, 3] {
            c.push(P1Point::affine(CycloNum::from_int(n, t)));
        }
        Self::new(elems, &c)
    }

    pub fn image(&self, x: &P1Point) -> Result<P1Point, CompareError> {
        let x = x.embed(self.num.conductor())?;
        Ok(P1Point::new(self.num.eval(&x), self.den.eval(&x))?)
    }
}

/// Images on B/G of the base points of the singular fibres of a model.
pub fn quotient_locus(ex: &BuiltExample, coord: &QuotientCoordinate, field: &FieldSpec) -> Result<FibreLocus, CompareError> {
    let mut pts = Vec::new();
    for o in &ex.model.orbits {
        if o.fibre_kind != FibreKind::Singular {
            continue;
        }
        let p = o.points.first().expect("orbit points recorded").to_point()?;
        pts.push(coord.image(&p)?);
    }
    FibreLocus::new(&pts, field)
}

/// The base points of all singular fibres of X.
pub fn upstairs_locus(ex: &BuiltExample, field: &FieldSpec) -> Result<FibreLocus, CompareError> {
    let mut pts = Vec::new();
    for o in &ex.model.orbits {
        if o.fibre_kind == FibreKind::Singular {
            for p in &o.points {
                pts.push(p.to_point()?);
            }
        }
    }
    FibreLocus::new(&pts, field)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictMatrix {
    pub size: usize,
    pub coordinate: [PointRecord; 2],
    /// Upper triangle, (i, j, verdict) with i < j.
    pub pairs: Vec<(usize, usize, PairVerdict)>,
}

/// Compares the quotient loci of every pair of family members.
pub fn pairwise_inequivalence(
    family: &[BuiltExample],
    field: &FieldSpec,
    elems: &[Pgl2Elem],
    jobs: usize,
) -> Result<VerdictMatrix, CompareError> {
    let coord = QuotientCoordinate::standard(elems)?;
    pairwise_with(family, field, &coord, jobs)
}

pub fn pairwise_with(
    family: &[BuiltExample],
    field: &FieldSpec,
    coord: &QuotientCoordinate,
    jobs: usize,
) -> Result<VerdictMatrix, CompareError> {
    let loci: Vec<FibreLocus> = family
        .iter()
        .map(|e| quotient_locus(e, coord, field))
        .collect::<Result<_, _>>()?;
    let idx: Vec<(usize, usize)> = (0..loci.len())
        .flat_map(|i| (i + 1..loci.len()).map(move |j| (i, j)))
        .collect();
    let jobs = jobs.max(1);
    let chunk = idx.len().div_ceil(jobs).max(1);
    let loci = &loci;
    let parts: Vec<Result<Vec<(usize, usize, PairVerdict)>, CompareError>> = std::thread::scope(|sc| {
        let hs: Vec<_> = idx
            .chunks(chunk)
            .map(|ch| {
                sc.spawn(move || {
                    ch.iter()
                        .map(|&(i, j)| Ok((i, j, verdict(&loci[i], &loci[j])?)))
                        .collect::<Result<Vec<_>, CompareError>>()
                })
            })
            .collect();
        hs.into_iter().map(|h| h.join().expect("compare worker")).collect()
    });
    let mut pairs = Vec::new();
    for p in parts {
        pairs.extend(p?);
    }
    pairs.sort_by_key(|&(i, j, _)| (i, j));
    Ok(VerdictMatrix {
        size: family.len(),
        coordinate: [PointRecord::from_point(&coord.p), PointRecord::from_point(&coord.q)],
        pairs,
    })
}

pub fn verdict(a: &FibreLocus, b: &FibreLocus) -> Result<PairVerdict, CompareError> {
    let found = if a.len() < 3 && a.len() == b.len() {
        None
    } else {
        loci_equivalent(a, b)?
    };
    if a.len().min(b.len()) < RIGIDITY_THRESHOLD {
        return Ok(PairVerdict::NoConclusion {
            equivalent_loci: found.is_some(),
        });
    }
    Ok(match found {
        Some(phi) => PairVerdict::Equivalent {
            map: MatrixRecord::from_elem(&phi),
        },
        None => PairVerdict::Inequivalent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::example::ExampleSpec;

    fn pt(n: u32, t: i64) -> P1Point {
        P1Point::affine(CycloNum::from_int(n, t))
    }

    #[test]
    fn triples() {
        let n = 1;
        let inf = P1Point::infinity(n);
        let id = mobius_from_triples([&pt(n, 0), &pt(n, 1), &inf], [&pt(n, 0), &pt(n, 1), &inf]).unwrap();
        assert!(id.is_identity());
        let half = mobius_from_triples([&pt(n, 0), &pt(n, 2), &inf], [&pt(n, 0), &pt(n, 1), &inf]).unwrap();
        assert_eq!(half, Pgl2Elem::from_ints(n, 1, 0, 0, 2).unwrap());
        let flip = mobius_from_triples([&pt(n, 0), &pt(n, 1), &inf], [&pt(n, 1), &pt(n, 0), &inf]).unwrap();
        assert_eq!(flip.apply(&pt(n, 0)), pt(n, 1));
        assert_eq!(flip.apply(&pt(n, 1)), pt(n, 0));
        assert_eq!(flip.apply(&inf), inf);
        assert_eq!(
            mobius_from_triples([&pt(n, 0), &pt(n, 0), &inf], [&pt(n, 0), &pt(n, 1), &inf]),
            Err(CompareError::DegenerateTriple)
        );
    }

    #[test]
    fn non_stable_locus_rejected() {
        let i = crate::cyclo::consts::i(4).unwrap();
        let r = FibreLocus::new(&[P1Point::affine(i)], &FieldSpec::rationals(4));
        assert!(matches!(r, Err(CompareError::NotGaloisStable(_))));
    }

    #[test]
    fn family_members_differ() {
        let a = crate::example::build_example(&ExampleSpec::c2_over_q(2, &[1, 2, 3, 4]).unwrap()).unwrap();
        let b = crate::example::build_example(&ExampleSpec::c2_over_q(2, &[1, 2, 3, 5]).unwrap()).unwrap();
        let k = FieldSpec::rationals(1);
        let la = upstairs_locus(&a, &k).unwrap();
        let lb = upstairs_locus(&b, &k).unwrap();
        assert_eq!(la.len(), 8);
        assert!(loci_equivalent(&la, &lb).unwrap().is_none());
        let phi = Pgl2Elem::from_ints(1, 1, 2, 3, 5).unwrap();
        let lc = la.map(&phi).unwrap();
        let found = loci_equivalent(&la, &lc).unwrap().unwrap();
        assert_eq!(la.map(&found).unwrap(), lc.embed(la.conductor()).unwrap());
    }

    #[test]
    fn c2_quotient_coordinate_is_t_squared() {
        let n = 4;
        let elems = vec![Pgl2Elem::identity(n), Pgl2Elem::from_ints(n, -1, 0, 0, 1).unwrap()];
        let c = QuotientCoordinate::standard(&elems).unwrap();
        assert_eq!(c.image(&pt(n, 3)).unwrap(), pt(n, 9));
        assert_eq!(c.image(&pt(n, -3)).unwrap(), pt(n, 9));
    }
}
