//! Fibre fates under the quotient map, singular fibre counts of the
//! relative minimal model of X/G, and the rationality verdict.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{FiniteGroup, GroupError, GroupKind, P1Point, Pgl2Elem};
use crate::hj::{self, FibreFate, HjError};
use crate::records::{FieldRecord, PointRecord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("smooth fibre with even stabilizer {0} needs a weight")]
    MissingWeight(usize),
    #[error("invalid orbit: {0}")]
    InvalidOrbit(String),
    #[error("condition violated: {0}")]
    ConditionViolated(String),
    #[error("no case of the swap classification matches: {0}")]
    NoCaseMatches(String),
    #[error(transparent)]
    Chain(#[from] HjError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FibreKind {
    Smooth,
    Singular,
}

/// What exchanges the components of the image of a fibre, if anything.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Swap {
    None,
    /// Some element of G x Gal with nontrivial Galois part.
    Galois,
    /// An element of G alone; impossible on a relatively minimal model.
    GroupOnly,
}

/// An orbit of fibres over an orbit of base points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitDatum {
    pub length: usize,
    pub stabilizer_order: usize,
    pub fibre_kind: FibreKind,
    /// For a smooth fibre with stabilizer C_k: the generator acts on the
    /// fibre near one fixed point as ζ_k^weight.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<u64>,
    pub swap: Swap,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<PointRecord>,
}

impl OrbitDatum {
    pub fn singular(length: usize, stabilizer_order: usize, swap: Swap) -> Self {
        OrbitDatum {
            length,
            stabilizer_order,
            fibre_kind: FibreKind::Singular,
            weight: None,
            swap,
            points: vec![],
        }
    }

    pub fn smooth(length: usize, stabilizer_order: usize, weight: Option<u64>, swap: Swap) -> Self {
        OrbitDatum {
            length,
            stabilizer_order,
            fibre_kind: FibreKind::Smooth,
            weight,
            swap,
            points: vec![],
        }
    }

    pub fn with_points(mut self, pts: &[P1Point]) -> Self {
        self.points = pts.iter().map(PointRecord::from_point).collect();
        self
    }
}

/// Three homogeneous forms in (t1, t0): the x^2, y^2, z^2 coefficients of
/// the conic bundle, each as coefficient vectors from t1^deg down to t0^deg.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationPayload {
    pub conductor: u32,
    pub degree: usize,
    pub forms: [Vec<Vec<String>>; 3],
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceModel {
    pub group: GroupKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldRecord>,
    pub orbits: Vec<OrbitDatum>,
    pub has_k_point: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equation: Option<EquationPayload>,
}

impl SurfaceModel {
    pub fn new(group: GroupKind, orbits: Vec<OrbitDatum>, has_k_point: bool) -> Self {
        SurfaceModel {
            group,
            field: None,
            orbits,
            has_k_point,
            equation: None,
        }
    }

    /// Number of singular fibres of X over the algebraic closure.
    pub fn n(&self) -> usize {
        self.orbits
            .iter()
            .filter(|o| o.fibre_kind == FibreKind::Singular)
            .map(|o| o.length)
            .sum()
    }

    pub fn k2(&self) -> i64 {
        8 - self.n() as i64
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub orbit: usize,
    pub rule: String,
    pub detail: String,
}

/// Checks orbit-stabilizer arithmetic, that singular fibres have odd
/// stabilizers, and that no group element alone swaps components.
pub fn validate_model(s: &SurfaceModel) -> Vec<Violation> {
    let order = s.group.order();
    let mut out = Vec::new();
    for (i, o) in s.orbits.iter().enumerate() {
        let mut push = |rule: &str, detail: String| {
            out.push(Violation {
                orbit: i,
                rule: rule.to_string(),
                detail,
            })
        };
        if o.stabilizer_order == 0 || order % o.stabilizer_order != 0 {
            push(
                "stabilizer-divides-order",
                format!("{} does not divide {}", o.stabilizer_order, order),
            );
        } else if o.length * o.stabilizer_order != order {
            push(
                "orbit-stabilizer",
                format!("{} * {} != {}", o.length, o.stabilizer_order, order),
            );
        }
        if o.fibre_kind == FibreKind::Singular && o.stabilizer_order % 2 == 0 {
            push(
                "even-invariant-fibre",
                format!("singular fibre with even stabilizer {}", o.stabilizer_order),
            );
        }
        if o.fibre_kind == FibreKind::Singular && o.swap == Swap::GroupOnly {
            push(
                "permutation",
                "a group element alone exchanges the components".to_string(),
            );
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FateRecord {
    pub orbit: usize,
    pub fate: FibreFate,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<String>,
}

fn trace_strings(t: &[Vec<i64>]) -> Vec<String> {
    t.iter()
        .map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
        .collect()
}

/// Fate of the image of one fibre of the orbit on the relative minimal model
/// of X/G.
pub fn fibre_fate(o: &OrbitDatum) -> Result<(FibreFate, Vec<String>), QuotientError> {
    let k = o.stabilizer_order;
    let swap = o.swap != Swap::None;
    match o.fibre_kind {
        FibreKind::Singular => {
            if k % 2 == 0 {
                return Err(QuotientError::InvalidOrbit(format!(
                    "singular fibre with even stabilizer {k}"
                )));
            }
            if k == 1 {
                let fate = if swap { FibreFate::Singular } else { FibreFate::Smooth };
                return Ok((fate, vec![]));
            }
            let c = hj::contract_chain(&hj::singular_fibre_chain(((k - 1) / 2) as u64))?;
            Ok((c.fate, trace_strings(&c.trace)))
        }
        FibreKind::Smooth => {
            if k == 1 {
                return Ok((FibreFate::Smooth, vec![]));
            }
            let Some(a) = o.weight else {
                if k % 2 == 1 {
                    return Ok((FibreFate::Smooth, vec![]));
                }
                return Err(QuotientError::MissingWeight(k));
            };
            let a = a % k as u64;
            let d = num_integer::gcd(a, k as u64);
            let (kk, aa) = (k as u64 / d, a / d);
            if kk <= 1 {
                return Ok((FibreFate::Smooth, vec![]));
            }
            let mut ch = hj::smooth_fibre_chain(kk, aa)?;
            ch.galois_swap = swap && ch.is_palindrome();
            let c = hj::contract_chain(&ch)?;
            Ok((c.fate, trace_strings(&c.trace)))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rationality {
    Rational,
    NotRational,
    Unknown,
}

/// Counts of orbits by row letter of the singular fibre table.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TableCounts {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientReport {
    pub group: GroupKind,
    pub n: usize,
    pub k2_x: i64,
    pub m: usize,
    pub k2_y: i64,
    pub fates: Vec<FateRecord>,
    pub rationality: Rationality,
    pub counts: TableCounts,
    pub table_n: usize,
    pub table_m: usize,
    /// Orbits whose fate could not be decided for lack of weight data.
    pub undecided: usize,
}

pub fn rationality(m: usize, has_k_point: bool) -> Rationality {
    if m <= 3 && has_k_point {
        Rationality::Rational
    } else {
        Rationality::NotRational
    }
}

/// Which table letter an orbit that may become a singular fibre counts under.
fn row_letter(kind: GroupKind, o: &OrbitDatum, counts: &TableCounts) -> Option<char> {
    use FibreKind::*;
    let s = o.stabilizer_order;
    match (kind, o.fibre_kind) {
        (GroupKind::Cyclic(r), Smooth) if r % 2 == 0 && s == r as usize => Some('a'),
        (GroupKind::Cyclic(r), Singular) if r % 2 == 1 && s == r as usize && r > 1 => Some('a'),
        (GroupKind::Cyclic(_), Singular) if s == 1 => Some('b'),
        (GroupKind::Dihedral(r), Smooth) if r % 2 == 0 && s > 1 => {
            // the rotation-fixed orbit first, then reflection orbits
            if s == r as usize && counts.a == 0 && o.length == 2 {
                Some('a')
            } else {
                Some('b')
            }
        }
        (GroupKind::Dihedral(r), Singular) if r % 2 == 1 && s == r as usize && r > 1 => Some('a'),
        (GroupKind::Dihedral(r), Smooth) if r % 2 == 1 && s == 2 => Some('b'),
        (GroupKind::Dihedral(_), Singular) if s == 1 => Some('c'),
        (GroupKind::A4, Singular) if s == 3 => Some('a'),
        (GroupKind::A4, Smooth) if s == 2 => Some('b'),
        (GroupKind::A4, Singular) if s == 1 => Some('c'),
        (GroupKind::S4, Singular) if s == 3 => Some('a'),
        (GroupKind::S4, Smooth) if s == 4 => Some('b'),
        (GroupKind::S4, Smooth) if s == 2 => Some('c'),
        (GroupKind::S4, Singular) if s == 1 => Some('d'),
        (GroupKind::A5, Singular) if s == 5 => Some('a'),
        (GroupKind::A5, Singular) if s == 3 => Some('b'),
        (GroupKind::A5, Smooth) if s == 2 => Some('c'),
        (GroupKind::A5, Singular) if s == 1 => Some('d'),
        _ => None,
    }
}

fn bump(c: &mut TableCounts, letter: char) {
    match letter {
        'a' => c.a += 1,
        'b' => c.b += 1,
        'c' => c.c += 1,
        _ => c.d += 1,
    }
}

/// Singular fibre count m of the relative minimal model of X/G.
pub fn quotient_count(s: &SurfaceModel) -> Result<QuotientReport, QuotientError> {
    if let Some(v) = validate_model(s).first() {
        return Err(QuotientError::InvalidOrbit(format!(
            "orbit {}: {} ({})",
            v.orbit, v.rule, v.detail
        )));
    }
    let mut fates = Vec::new();
    let mut m = 0;
    let mut undecided = 0;
    let mut counts = TableCounts::default();
    let mut possible = TableCounts::default();
    for (i, o) in s.orbits.iter().enumerate() {
        match fibre_fate(o) {
            Ok((fate, trace)) => {
                if fate == FibreFate::Singular {
                    m += 1;
                    if let Some(l) = row_letter(s.group, o, &counts) {
                        bump(&mut counts, l);
                    }
                }
                fates.push(FateRecord {
                    orbit: i,
                    fate,
                    trace,
                });
            }
            Err(QuotientError::MissingWeight(_)) => {
                undecided += 1;
                if let Some(l) = row_letter(s.group, o, &possible) {
                    bump(&mut possible, l);
                }
            }
            Err(e) => return Err(e),
        }
    }
    let all = TableCounts {
        a: counts.a + possible.a,
        b: counts.b + possible.b,
        c: counts.c + possible.c,
        d: counts.d + possible.d,
    };
    let (table_n, table_m) = table1_bound(s.group, all)?;
    let n = s.n();
    let verdict = if undecided == 0 {
        rationality(m, s.has_k_point)
    } else if m > 3 || !s.has_k_point {
        Rationality::NotRational
    } else if m + undecided <= 3 {
        Rationality::Rational
    } else {
        Rationality::Unknown
    };
    Ok(QuotientReport {
        group: s.group,
        n,
        k2_x: 8 - n as i64,
        m,
        k2_y: 8 - m as i64,
        fates,
        rationality: verdict,
        counts: all,
        table_n,
        table_m,
        undecided,
    })
}

/// Table row for `kind`: (n, m) from the orbit counts, after checking the
/// row's conditions.
pub fn table1_bound(kind: GroupKind, t: TableCounts) -> Result<(usize, usize), QuotientError> {
    let (a, b, c, d) = (t.a as usize, t.b as usize, t.c as usize, t.d as usize);
    let fail = |s: &str| Err(QuotientError::ConditionViolated(s.to_string()));
    let unused = |name: &str, v: usize| -> Result<(), QuotientError> {
        if v != 0 {
            Err(QuotientError::ConditionViolated(format!("{name} = 0")))
        } else {
            Ok(())
        }
    };
    match kind {
        GroupKind::Cyclic(r) => {
            let r = r as usize;
            unused("c", c)?;
            unused("d", d)?;
            if a > 2 {
                return fail("a <= 2");
            }
            if r % 2 == 0 {
                Ok((r * b, a + b))
            } else {
                Ok((a + r * b, a + b))
            }
        }
        GroupKind::Dihedral(r) => {
            let r = r as usize;
            unused("d", d)?;
            if a > 1 {
                return fail("a <= 1");
            }
            if b > 2 {
                return fail("b <= 2");
            }
            if r % 2 == 0 {
                Ok((2 * r * c, a + b + c))
            } else {
                Ok((2 * a + 2 * r * c, a + b + c))
            }
        }
        GroupKind::A4 => {
            unused("d", d)?;
            if a > 2 {
                return fail("a <= 2");
            }
            if b > 1 {
                return fail("b <= 1");
            }
            Ok((4 * a + 12 * c, a + b + c))
        }
        GroupKind::S4 | GroupKind::A5 => {
            if a > 1 {
                return fail("a <= 1");
            }
            if b > 1 {
                return fail("b <= 1");
            }
            if c > 1 {
                return fail("c <= 1");
            }
            if kind == GroupKind::S4 {
                Ok((8 * a + 24 * d, a + b + c + d))
            } else {
                Ok((12 * a + 20 * b + 60 * d, a + b + c + d))
            }
        }
    }
}

/// Every admissible count vector of the row with n <= n_max.
pub fn admissible_counts(kind: GroupKind, n_max: usize) -> Vec<TableCounts> {
    let mut out = Vec::new();
    for a in 0..=2 {
        for b in 0..=(n_max as u32 + 2) {
            for c in 0..=(n_max as u32 + 2) {
                for d in 0..=(n_max as u32 + 2) {
                    let t = TableCounts { a, b, c, d };
                    if let Ok((n, _)) = table1_bound(kind, t) {
                        if n <= n_max {
                            out.push(t);
                        }
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanInstance {
    pub group: GroupKind,
    pub counts: TableCounts,
    pub n: usize,
    pub m: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub k_max: u32,
    pub n_max: usize,
    pub instances: usize,
    pub equality_cases: Vec<ScanInstance>,
    pub violations: Vec<String>,
}

/// Kinds with parameter k <= k_max in the rows C_{2k}, C_{2k+1}, D_{4k},
/// D_{4k+2}, followed by A4, S4, A5.
pub fn scan_kinds(k_max: u32) -> Vec<GroupKind> {
    let mut kinds = Vec::new();
    for k in 1..=k_max {
        kinds.push(GroupKind::Cyclic(2 * k));
        kinds.push(GroupKind::Cyclic(2 * k + 1));
        kinds.push(GroupKind::Dihedral(2 * k));
        kinds.push(GroupKind::Dihedral(2 * k + 1));
    }
    kinds.extend([GroupKind::A4, GroupKind::S4, GroupKind::A5]);
    kinds
}

/// Checks on one row: n <= 3 gives m <= 3; n > 3 gives m <= n; m = n > 3
/// only for n = 4 with C2 or D4.
pub fn scan_kind(kind: GroupKind, n_max: usize) -> (Vec<ScanInstance>, Vec<String>) {
    let mut inst = Vec::new();
    let mut bad = Vec::new();
    for t in admissible_counts(kind, n_max) {
        let (n, m) = table1_bound(kind, t).expect("admissible");
        let i = ScanInstance {
            group: kind,
            counts: t,
            n,
            m,
        };
        if n <= 3 && m > 3 {
            bad.push(format!("{kind} {t:?}: n = {n} <= 3 but m = {m}"));
        }
        if n > 3 && m > n {
            bad.push(format!("{kind} {t:?}: m = {m} > n = {n}"));
        }
        if n > 3 && m == n {
            let small = matches!(kind, GroupKind::Cyclic(2) | GroupKind::Dihedral(2));
            if !(n == 4 && small) {
                bad.push(format!("{kind} {t:?}: m = n = {n}"));
            }
        }
        inst.push(i);
    }
    (inst, bad)
}

/// Scans every row, splitting the kinds across `jobs` threads.
pub fn check_theorem_cbundle(k_max: u32, n_max: usize, jobs: usize) -> ScanReport {
    let kinds = scan_kinds(k_max);
    let jobs = jobs.max(1);
    let chunk = kinds.len().div_ceil(jobs);
    let results: Vec<(Vec<ScanInstance>, Vec<String>)> = std::thread::scope(|sc| {
        let handles: Vec<_> = kinds
            .chunks(chunk.max(1))
            .map(|ks| {
                sc.spawn(move || {
                    let mut inst = Vec::new();
                    let mut bad = Vec::new();
                    for &k in ks {
                        let (i, b) = scan_kind(k, n_max);
                        inst.extend(i);
                        bad.extend(b);
                    }
                    (inst, bad)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("scan worker")).collect()
    });
    let mut instances = 0;
    let mut equality_cases = Vec::new();
    let mut violations = Vec::new();
    for (inst, bad) in results {
        instances += inst.len();
        equality_cases.extend(inst.into_iter().filter(|i| i.n > 3 && i.n == i.m));
        violations.extend(bad);
    }
    equality_cases.sort_by(|x, y| (x.group, x.counts).cmp(&(y.group, y.counts)));
    violations.sort();
    ScanReport {
        k_max,
        n_max,
        instances,
        equality_cases,
        violations,
    }
}

/// How γp relates to p for the g, γ exchanging the components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GammaRelation {
    /// γp = g^{-1} p
    InverseImage,
    /// γp = g p
    Image,
    Other,
}

/// The data the swap classification looks at.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwapDescription {
    pub group: GroupKind,
    /// Some Galois element alone exchanges the components.
    pub pure_galois: bool,
    pub stabilizer_order: usize,
    pub g_order: u32,
    /// g h g^{-1} lies in the stabilizer ⟨h⟩ of p.
    pub g_normalizes_stabilizer: bool,
    pub relation: GammaRelation,
}

/// Reads off a [`SwapDescription`] from a concrete group, point and element.
pub fn describe_swap(
    g_group: &FiniteGroup,
    p: &P1Point,
    g: &Pgl2Elem,
    pure_galois: bool,
    relation: GammaRelation,
) -> Result<SwapDescription, QuotientError> {
    let stab = g_group.stabilizer(p)?;
    let g_inv = g.inv();
    let normalizes = stab
        .elements()
        .iter()
        .all(|h| stab.contains(&g.mul(h).mul(&g_inv)));
    Ok(SwapDescription {
        group: g_group.kind(),
        pure_galois,
        stabilizer_order: stab.order(),
        g_order: g.order(g_group.order() as u32).unwrap_or(0),
        g_normalizes_stabilizer: normalizes,
        relation,
    })
}

/// Which of the six mechanisms produces the swap.
pub fn classify_swap_mechanism(d: &SwapDescription) -> Result<u8, QuotientError> {
    if d.pure_galois || d.g_order % 2 == 1 {
        return Ok(1);
    }
    if d.stabilizer_order == 1 && d.relation == GammaRelation::InverseImage {
        return Ok(2);
    }
    let nm = || QuotientError::NoCaseMatches(format!("{d:?}"));
    if d.g_order != 2 || !d.g_normalizes_stabilizer || d.relation != GammaRelation::Image {
        return Err(nm());
    }
    match (d.group, d.stabilizer_order) {
        (GroupKind::Dihedral(r), s) if r % 2 == 1 && r > 1 && s == r as usize => Ok(3),
        (GroupKind::S4, 3) => Ok(4),
        (GroupKind::A5, 5) => Ok(5),
        (GroupKind::A5, 3) => Ok(6),
        _ => Err(nm()),
    }
}

/// The maximal odd cyclic normal subgroup N and the kind of G/N.
pub fn reduce_group(kind: GroupKind) -> (u32, GroupKind) {
    let odd = |mut k: u32| {
        while k % 2 == 0 && k > 0 {
            k /= 2;
        }
        k
    };
    match kind {
        GroupKind::Cyclic(k) => {
            let o = odd(k);
            (o, GroupKind::Cyclic(k / o))
        }
        GroupKind::Dihedral(k) => {
            let o = odd(k);
            (o, GroupKind::Dihedral(k / o))
        }
        other => (1, other),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParityOutcome {
    /// γ^{ord g} exchanges the components exactly when this is true.
    GammaPowerSwaps(bool),
    Undetermined,
}

/// Given that gγ does (or does not) exchange the components, decides whether
/// γ^{ord g} does, by running over all homomorphisms ⟨g⟩ x ⟨γ⟩ → Z/2.
pub fn swap_parity_check(g_order: u32, g_gamma_swaps: bool) -> ParityOutcome {
    let mut outcomes = BTreeSet::new();
    for gamma_order in 1..=4 * g_order.max(1) {
        for s_g in [false, true] {
            for s_gamma in [false, true] {
                // a homomorphism to Z/2 must kill g^{ord g} and γ^{ord γ}
                if s_g && g_order % 2 == 1 {
                    continue;
                }
                if s_gamma && gamma_order % 2 == 1 {
                    continue;
                }
                if (s_g ^ s_gamma) != g_gamma_swaps {
                    continue;
                }
                let power = (0..g_order).fold(false, |acc, _| acc ^ s_gamma);
                outcomes.insert(power);
            }
        }
    }
    match outcomes.len() {
        1 => ParityOutcome::GammaPowerSwaps(*outcomes.iter().next().unwrap()),
        _ => ParityOutcome::Undetermined,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn violations() {
        let m = SurfaceModel::new(GroupKind::Cyclic(2), vec![OrbitDatum::singular(1, 2, Swap::Galois)], true);
        assert_eq!(validate_model(&m)[0].rule, "even-invariant-fibre");
        let m = SurfaceModel::new(GroupKind::Cyclic(3), vec![], true);
        assert!(validate_model(&m).is_empty());
        let m = SurfaceModel::new(GroupKind::Cyclic(3), vec![OrbitDatum::singular(1, 3, Swap::GroupOnly)], true);
        assert_eq!(validate_model(&m)[0].rule, "permutation");
    }

    #[test]
    fn fate_examples() {
        let (f, _) = fibre_fate(&OrbitDatum::singular(1, 3, Swap::Galois)).unwrap();
        assert_eq!(f, FibreFate::Singular);
        for a in 0..5 {
            let (f, _) = fibre_fate(&OrbitDatum::smooth(1, 5, Some(a), Swap::Galois)).unwrap();
            assert_eq!(f, FibreFate::Smooth);
        }
        let (f, _) = fibre_fate(&OrbitDatum::smooth(1, 2, Some(1), Swap::Galois)).unwrap();
        assert_eq!(f, FibreFate::Singular);
        assert_eq!(
            fibre_fate(&OrbitDatum::smooth(1, 2, None, Swap::Galois)).unwrap_err(),
            QuotientError::MissingWeight(2)
        );
    }

    #[test]
    fn count_examples() {
        let c2 = SurfaceModel::new(
            GroupKind::Cyclic(2),
            vec![OrbitDatum::singular(2, 1, Swap::Galois); 4],
            true,
        );
        let r = quotient_count(&c2).unwrap();
        assert_eq!((r.n, r.m, r.k2_y), (8, 4, 4));
        assert_eq!(r.rationality, Rationality::NotRational);

        let empty = SurfaceModel::new(GroupKind::Cyclic(2), vec![], true);
        let r = quotient_count(&empty).unwrap();
        assert_eq!(r.m, 0);
        assert_eq!(r.rationality, Rationality::Rational);

        let d6 = SurfaceModel::new(
            GroupKind::Dihedral(3),
            vec![
                OrbitDatum::singular(2, 3, Swap::Galois),
                OrbitDatum::singular(6, 1, Swap::Galois),
            ],
            true,
        );
        let r = quotient_count(&d6).unwrap();
        assert_eq!((r.n, r.m), (8, 2));
        assert!(r.m <= r.table_m);
    }

    #[test]
    fn table_examples() {
        let t = TableCounts { a: 2, b: 1, c: 1, d: 0 };
        assert_eq!(table1_bound(GroupKind::A4, t).unwrap(), (20, 4));
        assert_eq!(table1_bound(GroupKind::Cyclic(5), TableCounts::default()).unwrap(), (0, 0));
        let t = TableCounts { a: 2, ..Default::default() };
        assert_eq!(
            table1_bound(GroupKind::S4, t).unwrap_err(),
            QuotientError::ConditionViolated("a <= 1".into())
        );
    }

    #[test]
    fn reductions() {
        assert_eq!(reduce_group(GroupKind::Cyclic(12)), (3, GroupKind::Cyclic(4)));
        assert_eq!(reduce_group(GroupKind::Cyclic(8)), (1, GroupKind::Cyclic(8)));
        assert_eq!(reduce_group(GroupKind::Dihedral(6)), (3, GroupKind::Dihedral(2)));
    }

    #[test]
    fn parity() {
        assert_eq!(swap_parity_check(3, true), ParityOutcome::GammaPowerSwaps(true));
        assert_eq!(swap_parity_check(2, true), ParityOutcome::GammaPowerSwaps(false));
        assert_eq!(swap_parity_check(5, false), ParityOutcome::GammaPowerSwaps(false));
    }

    #[test]
    fn swap_cases() {
        let base = SwapDescription {
            group: GroupKind::Dihedral(5),
            pure_galois: false,
            stabilizer_order: 5,
            g_order: 2,
            g_normalizes_stabilizer: true,
            relation: GammaRelation::Image,
        };
        assert_eq!(classify_swap_mechanism(&base).unwrap(), 3);
        let pure = SwapDescription { pure_galois: true, ..base.clone() };
        assert_eq!(classify_swap_mechanism(&pure).unwrap(), 1);
        let a5 = SwapDescription { group: GroupKind::A5, stabilizer_order: 3, ..base.clone() };
        assert_eq!(classify_swap_mechanism(&a5).unwrap(), 6);
        let bad = SwapDescription { group: GroupKind::A4, stabilizer_order: 3, ..base };
        assert!(classify_swap_mechanism(&bad).is_err());
    }

    #[test]
    fn small_scan_is_clean() {
        let r = check_theorem_cbundle(3, 12, 2);
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        assert!(r.instances > 0);
    }
}
