//! Explicit conic bundles x^2 A P_x + (B y^2 + C z^2) P_y = 0 over a
//! G-equivariant base, with singular fibres over G-orbits of (μ_i s : 1),
//! s^l = u, together with their singular fibre orbit data.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{self, q, Q};
use crate::cyclo::{CycloError, CycloNum, FieldSpec, KummerExt};
use crate::forms::Form;
use crate::group::{
    fixed_points_defined_over, generate_group, standard_group, FiniteGroup, GroupError, GroupKind,
    P1Point, Pgl2Elem, DEFAULT_CAP,
};
use crate::quotient::{
    quotient_count, EquationPayload, OrbitDatum, QuotientError, QuotientReport, Rationality,
    SurfaceModel, Swap,
};
use crate::records::{num_record, FieldRecord, MatrixRecord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExampleError {
    #[error("the x^2 or y^2 coefficient form vanishes at q")]
    VanishingAtQ,
    #[error("orbit collision: {0}")]
    OrbitCollision(String),
    #[error("point {index} has a stabilizer of order {order}")]
    StabilizerNotTrivial { index: usize, order: usize },
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("sampler exhausted after {got} of {wanted} members")]
    SamplerExhausted { wanted: usize, got: usize },
    #[error("no l-th root of u found in a cyclotomic field of conductor <= {0}")]
    NoCyclotomicRoot(u32),
    #[error(transparent)]
    Field(#[from] CycloError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExampleMode {
    /// The points (λ_i : 1) must have trivial stabilizers.
    FreeOrbits,
    /// Nontrivial stabilizers are allowed.
    Stabilized,
}

#[derive(Clone, Debug)]
pub struct ExampleSpec {
    pub field: FieldSpec,
    pub group: FiniteGroup,
    /// Diagonal element of even order l fixing (1:0) and (0:1).
    pub g: Pgl2Elem,
    pub u: CycloNum,
    pub mus: Vec<CycloNum>,
    pub b: CycloNum,
    pub c: CycloNum,
    pub q: P1Point,
    pub mode: ExampleMode,
    /// A chosen l-th root of u; searched for when absent.
    pub root: Option<CycloNum>,
}

impl ExampleSpec {
    /// G = C2 by diag(-1, 1) over Q, B = 1, C = -1/u, q = (1:1).
    pub fn c2_over_q(u: i64, mus: &[i64]) -> Result<Self, ExampleError> {
        let n = 4;
        let k = FieldSpec::rationals(n);
        let g = Pgl2Elem::from_ints(n, -1, 0, 0, 1)?;
        let group = generate_group(&[g.clone()], DEFAULT_CAP)?;
        let uq = CycloNum::from_int(n, u);
        Ok(ExampleSpec {
            field: k,
            group,
            g,
            mus: mus.iter().map(|&m| CycloNum::from_int(n, m)).collect(),
            b: CycloNum::one(n),
            c: -&uq.inv()?,
            u: uq,
            q: P1Point::affine(CycloNum::one(n)),
            mode: ExampleMode::FreeOrbits,
            root: None,
        })
    }

    pub fn with_mus(&self, mus: Vec<CycloNum>) -> Self {
        ExampleSpec {
            mus,
            ..self.clone()
        }
    }
}

/// A built example: the model plus the data it was built from.
#[derive(Clone, Debug)]
pub struct BuiltExample {
    pub model: SurfaceModel,
    pub a: CycloNum,
    pub root: CycloNum,
    pub ambient: u32,
    pub forms: [Form; 3],
    /// Base points (μ_i s : 1).
    pub points: Vec<P1Point>,
}

fn prime_roots(x: &CycloNum, l: u32) -> Result<Option<CycloNum>, CycloError> {
    let full = FieldSpec::full(x.conductor());
    let mut y = x.clone();
    for p in arith::prime_factors(l as u64) {
        let mut e = l as u64;
        while e % p == 0 {
            e /= p;
            match full.pth_root(&y, p as u32)? {
                Some(r) => y = r,
                None => return Ok(None),
            }
        }
    }
    Ok(Some(y))
}

const ROOT_SEARCH_LIMIT: u32 = 240;

/// An l-th root of u in the smallest cyclotomic field over conductor `n`
/// where one exists, searching multiples up to a fixed bound.
pub fn cyclotomic_root(u: &CycloNum, l: u32, n: u32) -> Result<CycloNum, ExampleError> {
    let mut cands = BTreeSet::new();
    if let Some(r) = u.as_rational() {
        let k = (r.numer() * r.denom()).magnitude().clone();
        let mut rad: u64 = 1;
        if let Ok(v) = u64::try_from(k) {
            for p in arith::prime_factors(v) {
                rad *= p;
            }
            cands.insert(arith::lcm_u64(n as u64, 4 * rad * l as u64));
        }
    }
    for c in 1..=60u64 {
        cands.insert(arith::lcm_u64(n as u64, c));
    }
    for m in cands {
        if m > ROOT_SEARCH_LIMIT as u64 || crate::arith::euler_phi(m) > 20 {
            continue;
        }
        if let Some(r) = prime_roots(&u.embed(m as u32)?, l)? {
            return Ok(r);
        }
    }
    Err(ExampleError::NoCyclotomicRoot(ROOT_SEARCH_LIMIT))
}

fn in_field(k: &FieldSpec, x: &CycloNum, what: &str) -> Result<(), ExampleError> {
    if !k.contains(x)? {
        return Err(ExampleError::HypothesisFailed(format!("{what} is not in k")));
    }
    Ok(())
}

/// Builds the conic bundle, its orbit data and its equation.
pub fn build_example(spec: &ExampleSpec) -> Result<BuiltExample, ExampleError> {
    let hyp = |s: &str| ExampleError::HypothesisFailed(s.to_string());
    let [ga, gb, gc, gd] = spec.g.entries().clone();
    if !gb.is_zero() || !gc.is_zero() || ga.is_zero() || gd.is_zero() {
        return Err(hyp("g must fix (1:0) and (0:1)"));
    }
    let l = spec
        .g
        .order(DEFAULT_CAP as u32)
        .ok_or_else(|| hyp("g has infinite order"))?;
    if l % 2 == 1 {
        return Err(hyp("g must have even order"));
    }
    if !spec.group.contains(&spec.g.embed(spec.group.conductor())?) {
        return Err(hyp("g is not in G"));
    }
    let n0 = arith::lcm_u64(spec.field.conductor() as u64, spec.group.conductor() as u64) as u32;
    let k0 = spec.field.lift(n0)?;
    let u0 = spec.u.embed(n0)?;
    in_field(&k0, &u0, "u")?;
    for (i, m) in spec.mus.iter().enumerate() {
        in_field(&k0, m, &format!("mu[{i}]"))?;
        if m.is_zero() {
            return Err(hyp("mu must be nonzero"));
        }
    }
    in_field(&k0, &spec.b, "B")?;
    in_field(&k0, &spec.c, "C")?;
    if spec.b.is_zero() || spec.c.is_zero() {
        return Err(hyp("B and C must be nonzero"));
    }
    if spec.b.embed(n0)? != -&(&spec.c.embed(n0)? * &u0) {
        return Err(hyp("B/C must equal -u"));
    }
    if !spec.q.embed(n0)?.defined_over(&k0)? {
        return Err(hyp("q must be a k-point"));
    }
    // Gal(k(u^{1/l})/k) = C_l
    KummerExt::new(k0.clone(), u0.clone(), l).map_err(|e| hyp(&format!("x^{l} - u: {e}")))?;

    let root = match &spec.root {
        Some(r) => r.clone(),
        None => cyclotomic_root(&u0, l, n0)?,
    };
    let m = arith::lcm_u64(n0 as u64, root.conductor() as u64) as u32;
    let root = root.embed(m)?;
    if root.pow(l) != u0.embed(m)? {
        return Err(hyp("root^l != u"));
    }
    let k = k0.lift(m)?;
    let group = spec.group.embed(m)?;
    let elems = group.elements().to_vec();

    let points: Vec<P1Point> = spec
        .mus
        .iter()
        .map(|mu| Ok(P1Point::affine(&mu.embed(m)? * &root)))
        .collect::<Result<_, ExampleError>>()?;
    let inf = P1Point::infinity(m);
    let zero = P1Point::affine(CycloNum::zero(m));
    let inf_orbit = group.orbit(&inf);
    let zero_orbit = group.orbit(&zero);
    let mut seen: Vec<Vec<P1Point>> = Vec::new();
    let mut orbits = Vec::new();
    let swap = if k.pth_root(&u0.embed(m)?, 2)?.is_none() {
        Swap::Galois
    } else {
        Swap::None
    };
    for (i, p) in points.iter().enumerate() {
        let orb = group.orbit(p);
        if orb.contains(&inf) || orb.contains(&zero) {
            return Err(ExampleError::OrbitCollision(format!(
                "point {i} lies in the orbit of a fixed point of g"
            )));
        }
        if let Some(j) = seen.iter().position(|o| o.contains(p)) {
            return Err(ExampleError::OrbitCollision(format!(
                "points {j} and {i} lie in one orbit"
            )));
        }
        let stab = elems.len() / orb.len();
        if spec.mode == ExampleMode::FreeOrbits && stab != 1 {
            return Err(ExampleError::StabilizerNotTrivial { index: i, order: stab });
        }
        orbits.push(OrbitDatum::singular(orb.len(), stab, swap).with_points(&orb));
        seen.push(orb);
    }
    let n = spec.mus.len() as u64;
    let r = elems.len() / inf_orbit.len();
    // x' = x / s^{nr/2} near (1:0), where the y^2, z^2 forms vanish to order nr
    let weight = (n * r as u64 / 2) % r as u64;
    orbits.push(OrbitDatum::smooth(inf_orbit.len(), r, Some(weight), swap).with_points(&inf_orbit));
    if !inf_orbit.contains(&zero) {
        let r0 = elems.len() / zero_orbit.len();
        orbits.push(OrbitDatum::smooth(zero_orbit.len(), r0, Some(0), swap).with_points(&zero_orbit));
    }

    let one = CycloNum::one(m);
    let mut px = Form::constant(one.clone());
    for p in &points {
        px = px.mul(&Form::vanishing_at(p).orbit_product(&elems)?).normalized()?;
    }
    let t0 = Form::linear(CycloNum::zero(m), one.clone());
    let py = t0.orbit_product(&elems)?.pow(n as u32).normalized()?;
    for (name, f) in [("P_x", &px), ("P_y", &py)] {
        for c in &f.coeffs {
            if !k.contains(c)? {
                return Err(hyp(&format!("{name} is not defined over k")));
            }
        }
    }
    let qm = spec.q.embed(m)?;
    let (vx, vy) = (px.eval(&qm), py.eval(&qm));
    if vx.is_zero() || vy.is_zero() {
        return Err(ExampleError::VanishingAtQ);
    }
    let b = spec.b.embed(m)?;
    let c = spec.c.embed(m)?;
    let a = -&(&(&b * &vy) * &vx.inv()?);
    debug_assert!((&(&a * &vx) + &(&b * &vy)).is_zero());
    let forms = [px.scale(&a), py.scale(&b), py.scale(&c)];
    let text = format!(
        "{} + {} + {} = 0",
        forms[0].to_text("x^2"),
        forms[1].to_text("y^2"),
        forms[2].to_text("z^2")
    );
    let payload = EquationPayload {
        conductor: m,
        degree: px.degree(),
        forms: [
            forms[0].coeffs.iter().map(num_record).collect(),
            forms[1].coeffs.iter().map(num_record).collect(),
            forms[2].coeffs.iter().map(num_record).collect(),
        ],
        text,
    };
    let model = SurfaceModel {
        group: group.kind(),
        field: Some(FieldRecord::from_spec(&k)),
        orbits,
        has_k_point: true,
        equation: Some(payload),
    };
    Ok(BuiltExample {
        model,
        a,
        root,
        ambient: m,
        forms,
        points,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    /// Rationality of X: every component swap is Galois-only and a k-point
    /// lies on a fibre.
    pub x_rationality: Rationality,
    pub singular_orbits: usize,
    pub quotient: QuotientReport,
    pub m_at_least_orbits: bool,
    pub nonrational_when_large: bool,
    pub family_dimension: usize,
    /// At least 8 singular fibres on the quotient, so the family dimension
    /// counts birational types.
    pub rigid: bool,
    pub failures: Vec<String>,
}

pub fn verify_example(m: &SurfaceModel) -> Result<VerifyReport, ExampleError> {
    let qr = quotient_count(m)?;
    let sing: Vec<&OrbitDatum> = m
        .orbits
        .iter()
        .filter(|o| o.fibre_kind == crate::quotient::FibreKind::Singular)
        .collect();
    let galois_only = sing.iter().all(|o| o.swap != Swap::GroupOnly);
    let x_rationality = if galois_only && m.has_k_point {
        Rationality::Rational
    } else {
        Rationality::NotRational
    };
    let n = sing.len();
    let mut failures = Vec::new();
    let m_at_least_orbits = qr.m >= n;
    if !m_at_least_orbits {
        failures.push(format!("m = {} < {} singular orbits", qr.m, n));
    }
    let nonrational_when_large = n <= 3 || qr.rationality == Rationality::NotRational;
    if !nonrational_when_large {
        failures.push(format!("{n} singular orbits but quotient verdict {:?}", qr.rationality));
    }
    if x_rationality != Rationality::Rational {
        failures.push("X is not certified rational".into());
    }
    Ok(VerifyReport {
        x_rationality,
        singular_orbits: n,
        m_at_least_orbits,
        nonrational_when_large,
        family_dimension: n.saturating_sub(3),
        rigid: qr.m >= 8,
        quotient: qr,
        failures,
    })
}

/// The pair (g, h) and the normalized group of a stabilized example.
#[derive(Clone, Debug)]
pub struct StabilizedData {
    pub built: BuiltExample,
    pub g: Pgl2Elem,
    pub h: Pgl2Elem,
    pub lambda: CycloNum,
    /// Conjugating map sending the fixed points of g to (0:1) and (1:0).
    pub normalizer: Pgl2Elem,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StabilizedRecord {
    pub g: MatrixRecord,
    pub h: MatrixRecord,
    pub h_order: u32,
    pub lambda: Vec<String>,
    pub model: SurfaceModel,
}

impl StabilizedData {
    pub fn record(&self) -> StabilizedRecord {
        StabilizedRecord {
            g: MatrixRecord::from_elem(&self.g),
            h: MatrixRecord::from_elem(&self.h),
            h_order: self.h.order(DEFAULT_CAP as u32).unwrap_or(0),
            lambda: num_record(&self.lambda),
            model: self.built.model.clone(),
        }
    }
}

/// Finds g of order 2 with k-rational fixed points and h of odd order
/// (optionally `h_order`) with non-k-rational fixed points and
/// g h g^{-1} in <h>, then builds the example with u = λ^2, λ_1 = λ.
pub fn build_stabilized_example(
    kind: GroupKind,
    field: &FieldSpec,
    h_order: Option<u32>,
) -> Result<StabilizedData, ExampleError> {
    let hyp = |s: String| ExampleError::HypothesisFailed(s);
    let field = field.lift(arith::lcm_u64(field.conductor() as u64, kind.conductor() as u64) as u32)?;
    let group = standard_group(kind, &field).map_err(|e| hyp(format!("no {kind} over k: {e}")))?;
    let n = group.conductor();
    let k = field.lift(arith::lcm_u64(field.conductor() as u64, n as u64) as u32)?;
    let cap = DEFAULT_CAP as u32;
    let mut gs = Vec::new();
    let mut hs = Vec::new();
    for x in group.elements() {
        let o = x.order(cap).unwrap_or(0);
        if o == 2 && fixed_points_defined_over(x, &k)? {
            gs.push(x.clone());
        }
        if o > 1 && o % 2 == 1 && h_order.map_or(true, |w| w == o) && !fixed_points_defined_over(x, &k)? {
            hs.push(x.clone());
        }
    }
    if gs.is_empty() {
        return Err(hyp("no involution with k-rational fixed points".into()));
    }
    if hs.is_empty() {
        return Err(hyp("no odd-order element with fixed points outside k".into()));
    }
    let mut pair = None;
    'outer: for h in &hs {
        let o = h.order(cap).unwrap();
        let cyc: Vec<Pgl2Elem> = (0..o).map(|e| h.pow(e)).collect();
        for g in &gs {
            if cyc.contains(&g.mul(h).mul(&g.inv())) {
                pair = Some((g.clone(), h.clone()));
                break 'outer;
            }
        }
    }
    let (g, h) = pair.ok_or_else(|| hyp("no pair with g h g^-1 in <h>".into()))?;

    let fx = g.fixed_points()?.ok_or_else(|| hyp("g is trivial".into()))?;
    let phi = {
        let (a1, a0) = fx[0].coords();
        let (b1, b0) = fx[1].coords();
        Pgl2Elem::new(a0.clone(), -a1, b0.clone(), -b1)?
    };
    let phi_inv = phi.inv();
    let conj = |x: &Pgl2Elem| phi.mul(x).mul(&phi_inv);
    let gens: Vec<Pgl2Elem> = group.generators().into_iter().map(conj).collect();
    let g2 = conj(&g);
    let h2 = conj(&h);
    let group2 = generate_group(&gens, DEFAULT_CAP)?;
    let fh = h2.fixed_points()?.ok_or_else(|| hyp("h is trivial".into()))?;
    let lambda = fh[0]
        .coordinate()
        .cloned()
        .ok_or_else(|| hyp("a fixed point of h is (1:0)".into()))?;
    let minus = P1Point::affine(-&lambda);
    if !fh.contains(&minus) {
        return Err(hyp("g does not exchange the fixed points of h".into()));
    }
    let u = &lambda * &lambda;
    if !k.contains(&u)? || k.contains(&lambda)? {
        return Err(hyp("need λ^2 in k and λ outside k".into()));
    }
    let mut qv = None;
    for t in 1..=12 {
        let cand = P1Point::affine(CycloNum::from_int(n, t));
        if group2.orbit(&cand).len() == group2.order() {
            qv = Some(cand);
            break;
        }
    }
    let spec = ExampleSpec {
        field: k,
        group: group2,
        g: g2,
        c: -&u.inv()?,
        b: CycloNum::one(n),
        u,
        mus: vec![CycloNum::one(n)],
        q: qv.ok_or_else(|| hyp("no free k-point for q".into()))?,
        mode: ExampleMode::Stabilized,
        root: Some(lambda.clone()),
    };
    let built = build_example(&spec)?;
    Ok(StabilizedData {
        built,
        g,
        h,
        lambda,
        normalizer: phi,
    })
}

/// A deterministic stream of μ-tuples: `len` distinct positive integers
/// drawn from 1..=range.
pub fn integer_sampler(seed: u64, len: usize, range: i64) -> impl FnMut() -> Option<Vec<Q>> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    move || {
        if (range as usize) < len {
            return None;
        }
        let mut set = BTreeSet::new();
        while set.len() < len {
            set.insert(rng.gen_range(1..=range));
        }
        Some(set.into_iter().map(q).collect())
    }
}

/// `count` models sharing (G, u, l) and differing in μ. Inadmissible and
/// repeated tuples are skipped; a sampler that stops early, or that yields
/// nothing new for many draws, is an error.
pub fn generate_family(
    base: &ExampleSpec,
    count: usize,
    mut sampler: impl FnMut() -> Option<Vec<Q>>,
    jobs: usize,
) -> Result<Vec<BuiltExample>, ExampleError> {
    const MAX_STALE: usize = 64;
    let n = base.field.conductor();
    let mut seen = BTreeSet::new();
    let mut tuples = Vec::new();
    let mut stale = 0;
    while tuples.len() < count {
        let Some(mut t) = sampler() else {
            return Err(ExampleError::SamplerExhausted {
                wanted: count,
                got: tuples.len(),
            });
        };
        t.sort();
        if !seen.insert(t.clone()) {
            stale += 1;
            if stale > MAX_STALE {
                return Err(ExampleError::SamplerExhausted {
                    wanted: count,
                    got: tuples.len(),
                });
            }
            continue;
        }
        let spec = base.with_mus(t.iter().map(|x| CycloNum::from_rational(n, x.clone())).collect());
        match spec.build_check() {
            Ok(()) => tuples.push(spec),
            Err(ExampleError::OrbitCollision(_)) | Err(ExampleError::StabilizerNotTrivial { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    let jobs = jobs.max(1);
    let chunk = tuples.len().div_ceil(jobs).max(1);
    let built: Vec<Result<Vec<BuiltExample>, ExampleError>> = std::thread::scope(|sc| {
        let hs: Vec<_> = tuples
            .chunks(chunk)
            .map(|ch| sc.spawn(move || ch.iter().map(build_example).collect::<Result<Vec<_>, _>>()))
            .collect();
        hs.into_iter().map(|h| h.join().expect("family worker")).collect()
    });
    let mut out = Vec::new();
    for b in built {
        out.extend(b?);
    }
    Ok(out)
}

impl ExampleSpec {
    /// Cheap admissibility check on the μ-tuple alone.
    fn build_check(&self) -> Result<(), ExampleError> {
        let n0 = arith::lcm_u64(self.field.conductor() as u64, self.group.conductor() as u64) as u32;
        let root = match &self.root {
            Some(r) => r.clone(),
            None => {
                let l = self.g.order(DEFAULT_CAP as u32).unwrap_or(2);
                cyclotomic_root(&self.u.embed(n0)?, l, n0)?
            }
        };
        let m = arith::lcm_u64(n0 as u64, root.conductor() as u64) as u32;
        let root = root.embed(m)?;
        let group = self.group.embed(m)?;
        let inf = P1Point::infinity(m);
        let zero = P1Point::affine(CycloNum::zero(m));
        let mut seen: Vec<Vec<P1Point>> = Vec::new();
        for (i, mu) in self.mus.iter().enumerate() {
            if mu.is_zero() {
                return Err(ExampleError::OrbitCollision(format!("mu[{i}] = 0")));
            }
            let p = P1Point::affine(&mu.embed(m)? * &root);
            let orb = group.orbit(&p);
            if orb.contains(&inf) || orb.contains(&zero) || seen.iter().any(|o| o.contains(&p)) {
                return Err(ExampleError::OrbitCollision(format!("mu[{i}]")));
            }
            if self.mode == ExampleMode::FreeOrbits && orb.len() != group.order() {
                return Err(ExampleError::StabilizerNotTrivial {
                    index: i,
                    order: group.order() / orb.len(),
                });
            }
            seen.push(orb);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hj::FibreFate;

    #[test]
    fn c2_key_example() {
        let spec = ExampleSpec::c2_over_q(2, &[1, 2, 3, 4]).unwrap();
        let b = build_example(&spec).unwrap();
        assert_eq!(b.model.n(), 8);
        let sing: Vec<_> = b.model.orbits.iter().filter(|o| o.length == 2 && o.swap == Swap::Galois).collect();
        assert!(sing.len() >= 4);
        assert_eq!(b.forms[0].degree(), 8);
        assert_eq!(b.forms[1].degree(), 8);
        let v = verify_example(&b.model).unwrap();
        assert_eq!(v.x_rationality, Rationality::Rational);
        assert_eq!(v.quotient.rationality, Rationality::NotRational);
        assert!(v.failures.is_empty(), "{:?}", v.failures);
    }

    #[test]
    fn empty_mu_is_rational() {
        let spec = ExampleSpec::c2_over_q(2, &[]).unwrap();
        let b = build_example(&spec).unwrap();
        assert_eq!(b.model.n(), 0);
        let v = verify_example(&b.model).unwrap();
        assert_eq!(v.quotient.rationality, Rationality::Rational);
    }

    #[test]
    fn collision_detected() {
        let spec = ExampleSpec::c2_over_q(2, &[1, -1]).unwrap();
        assert!(matches!(build_example(&spec), Err(ExampleError::OrbitCollision(_))));
    }

    #[test]
    fn square_u_rejected() {
        let spec = ExampleSpec::c2_over_q(4, &[1]).unwrap();
        assert!(matches!(build_example(&spec), Err(ExampleError::HypothesisFailed(_))));
    }

    #[test]
    fn d6_stabilized() {
        let d = build_stabilized_example(GroupKind::Dihedral(3), &FieldSpec::rationals(1), None).unwrap();
        let o = &d.built.model.orbits[0];
        assert_eq!(o.stabilizer_order, 3);
        let (fate, _) = crate::quotient::fibre_fate(o).unwrap();
        assert_eq!(fate, FibreFate::Singular);
    }

    #[test]
    fn family_dedups() {
        let base = ExampleSpec::c2_over_q(2, &[]).unwrap();
        let fam = generate_family(&base, 3, integer_sampler(7, 4, 30), 2).unwrap();
        assert_eq!(fam.len(), 3);
        let mut calls = 0;
        let rep = move || {
            calls += 1;
            (calls < 500).then(|| vec![q(1), q(2)])
        };
        assert!(matches!(
            generate_family(&base, 2, rep, 1),
            Err(ExampleError::SamplerExhausted { wanted: 2, got: 1 })
        ));
    }
}
