//! The nine reproduction checks, each with its own oracle and time limit.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{gcd_u64, qf};
use crate::compare::{loci_equivalent, upstairs_locus};
use crate::cyclo::{consts, FieldSpec};
use crate::example::{
    build_example, build_stabilized_example, generate_family, integer_sampler, verify_example,
    ExampleError, ExampleSpec,
};
use crate::group::{default_field, fixed_points_defined_over, standard_group, FiniteGroup, GroupKind, Pgl2Elem};
use crate::hj::{
    contract_chain, contract_chain_with, hj_eval, hj_expand, singular_fibre_chain, smooth_fibre_chain, FibreFate,
};
use crate::quotient::{
    admissible_counts, check_theorem_cbundle, fibre_fate, swap_parity_check, table1_bound, ParityOutcome,
    Rationality, TableCounts,
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: String,
    pub pass: bool,
    pub seconds: f64,
    pub limit_seconds: f64,
    pub detail: String,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "{} criterion {} ({}): {} [{:.2}s / {:.0}s]",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.seconds,
            self.limit_seconds
        )
    }
}

fn timed(id: u8, name: &str, limit: f64, f: impl FnOnce() -> Result<String, String>) -> CriterionResult {
    let t = Instant::now();
    let r = f();
    let seconds = t.elapsed().as_secs_f64();
    let (ok, mut detail) = match r {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if seconds > limit {
        detail = format!("{detail}; over the time limit");
    }
    CriterionResult {
        id,
        name: name.to_string(),
        pass: ok && seconds <= limit,
        seconds,
        limit_seconds: limit,
        detail,
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Special orbit lengths written out from the classification of finite
/// subgroups of PGL_2.
fn expected_orbits(kind: GroupKind) -> Vec<usize> {
    let mut v = match kind {
        GroupKind::Cyclic(_) => vec![1, 1],
        GroupKind::Dihedral(k) => vec![2, k as usize, k as usize],
        GroupKind::A4 => vec![4, 4, 6],
        GroupKind::S4 => vec![6, 8, 12],
        GroupKind::A5 => vec![12, 20, 30],
    };
    v.sort();
    v
}

pub fn orbit_table_kinds() -> Vec<GroupKind> {
    let mut v = Vec::new();
    for k in 2..=12 {
        v.push(GroupKind::Cyclic(k));
        v.push(GroupKind::Dihedral(k));
    }
    v.extend([GroupKind::A4, GroupKind::S4, GroupKind::A5]);
    v
}

pub fn criterion_1() -> CriterionResult {
    timed(1, "orbit tables", 10.0, || {
        let mut bad = Vec::new();
        let kinds = orbit_table_kinds();
        for &kind in &kinds {
            let g = standard_group(kind, &default_field(kind)).map_err(err)?;
            let mut t = g.special_orbit_table().map_err(err)?;
            t.sort();
            if t != expected_orbits(kind) || g.order() != kind.order() {
                bad.push(format!("{kind}: {t:?}"));
            }
        }
        if bad.is_empty() {
            Ok(format!("{} groups match", kinds.len()))
        } else {
            Err(bad.join(", "))
        }
    })
}

pub fn definability_fields() -> Vec<(&'static str, FieldSpec)> {
    vec![
        ("Q", FieldSpec::rationals(1)),
        ("Q(i)", FieldSpec::new(4, vec![consts::i(4).unwrap()]).unwrap()),
        ("Q(i√2)", FieldSpec::new(8, vec![consts::i_sqrt2(8).unwrap()]).unwrap()),
        ("Q(√5)", FieldSpec::new(5, vec![consts::sqrt5(5).unwrap()]).unwrap()),
        ("Q(ζ5)", FieldSpec::full(5)),
        ("Q(ζ12)", FieldSpec::full(12)),
    ]
}

/// Standard models: every kind over its default field, plus S4 over Q(i√2).
pub fn standard_models() -> Result<Vec<FiniteGroup>, String> {
    let mut v = Vec::new();
    for kind in orbit_table_kinds() {
        v.push(standard_group(kind, &default_field(kind)).map_err(err)?);
    }
    let k = FieldSpec::new(8, vec![consts::i_sqrt2(8).unwrap()]).unwrap();
    v.push(standard_group(GroupKind::S4, &k).map_err(err)?);
    Ok(v)
}

fn lcm(a: u32, b: u32) -> u32 {
    crate::arith::lcm_u64(a as u64, b as u64) as u32
}

pub fn criterion_2() -> CriterionResult {
    timed(2, "fixed point definability", 60.0, || {
        let mut checked = 0;
        let mut bad = Vec::new();
        for g in standard_models()? {
            for (name, k) in definability_fields() {
                let k = k.lift(lcm(k.conductor(), g.conductor())).map_err(err)?;
                for e in g.elements() {
                    let o = e.order(120).unwrap_or(0);
                    if o <= 2 || !e.defined_over(&k).map_err(err)? {
                        continue;
                    }
                    let kk = k.lift(lcm(k.conductor(), if o % 2 == 1 { 2 * o } else { o })).map_err(err)?;
                    let fixed = fixed_points_defined_over(e, &kk).map_err(err)?;
                    let root = kk.contains_root_of_unity(o).map_err(err)?;
                    checked += 1;
                    if fixed != root {
                        bad.push(format!("{} over {name}: {e}", g.kind()));
                    }
                }
            }
        }
        if bad.is_empty() {
            Ok(format!("{checked} elements agree"))
        } else {
            Err(format!("{} disagreements: {}", bad.len(), bad.join("; ")))
        }
    })
}

pub fn criterion_3() -> CriterionResult {
    timed(3, "continued fractions", 5.0, || {
        let mut count = 0;
        for k in 2..=200u64 {
            for a in 1..k {
                if gcd_u64(k, a) != 1 {
                    continue;
                }
                let f = hj_expand(k, a).map_err(err)?;
                if hj_eval(&f.digits) != qf(k as i64, a as i64) || f.digits.iter().any(|&d| d < 2) {
                    return Err(format!("{k}/{a}: {:?}", f.digits));
                }
                count += 1;
            }
        }
        for a in 1..=20u64 {
            let f = hj_expand(2 * a + 1, a).map_err(err)?;
            let mut want = vec![3];
            want.extend(std::iter::repeat(2).take(a as usize - 1));
            if f.digits != want {
                return Err(format!("({})/{a}: {:?}", 2 * a + 1, f.digits));
            }
        }
        Ok(format!("{count} fractions round-trip; (2a+1)/a = [3,2,...,2] for a <= 20"))
    })
}

pub fn criterion_4() -> CriterionResult {
    timed(4, "chain fates", 30.0, || {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut chains = Vec::new();
        for a in 1..=8 {
            chains.push((singular_fibre_chain(a), FibreFate::Singular));
        }
        for k in 2..=15u64 {
            for a in 1..k {
                if gcd_u64(k, a) == 1 {
                    let mut ch = smooth_fibre_chain(k, a).map_err(err)?;
                    ch.galois_swap = false;
                    chains.push((ch, FibreFate::Smooth));
                }
            }
        }
        for (ch, want) in &chains {
            let got = contract_chain(ch).map_err(err)?.fate;
            if got != *want {
                return Err(format!("{ch}: {got:?}"));
            }
            for _ in 0..100 {
                let c = contract_chain_with(ch, |m| rng.gen_range(0..m.len())).map_err(err)?;
                if c.fate != *want {
                    return Err(format!("{ch}: {:?} under a shuffled order", c.fate));
                }
            }
        }
        Ok(format!("{} chains, 100 shuffles each", chains.len()))
    })
}

/// Table rows as (n coefficients on a, b, c, d; bounds on a, b, c, d).
fn table_row(kind: GroupKind) -> ([usize; 4], [Option<u32>; 4]) {
    match kind {
        GroupKind::Cyclic(r) if r % 2 == 0 => ([0, r as usize, 0, 0], [Some(2), None, Some(0), Some(0)]),
        GroupKind::Cyclic(r) => ([1, r as usize, 0, 0], [Some(2), None, Some(0), Some(0)]),
        GroupKind::Dihedral(r) if r % 2 == 0 => ([0, 0, 2 * r as usize, 0], [Some(1), Some(2), None, Some(0)]),
        GroupKind::Dihedral(r) => ([2, 0, 2 * r as usize, 0], [Some(1), Some(2), None, Some(0)]),
        GroupKind::A4 => ([4, 0, 12, 0], [Some(2), Some(1), None, Some(0)]),
        GroupKind::S4 => ([8, 0, 0, 24], [Some(1), Some(1), Some(1), None]),
        GroupKind::A5 => ([12, 20, 0, 60], [Some(1), Some(1), Some(1), None]),
    }
}

pub fn criterion_5(jobs: usize) -> CriterionResult {
    timed(5, "singular fibre table and bound", 60.0, || {
        let n_max = 12;
        let mut rows = 0;
        let mut kinds = Vec::new();
        for k in 1..=10 {
            kinds.extend([
                GroupKind::Cyclic(2 * k),
                GroupKind::Cyclic(2 * k + 1),
                GroupKind::Dihedral(2 * k),
                GroupKind::Dihedral(2 * k + 1),
            ]);
        }
        kinds.extend([GroupKind::A4, GroupKind::S4, GroupKind::A5]);
        for &kind in &kinds {
            let (coef, bound) = table_row(kind);
            let mut want = Vec::new();
            for a in 0..=3u32 {
                for b in 0..=14u32 {
                    for c in 0..=14u32 {
                        for d in 0..=14u32 {
                            let v = [a, b, c, d];
                            if v.iter().zip(bound).any(|(&x, bd)| bd.is_some_and(|bd| x > bd)) {
                                continue;
                            }
                            let n: usize = v.iter().zip(coef).map(|(&x, c)| x as usize * c).sum();
                            if n <= n_max {
                                want.push((TableCounts { a, b, c, d }, n, (a + b + c + d) as usize));
                            }
                        }
                    }
                }
            }
            let mut wc: Vec<TableCounts> = want.iter().map(|w| w.0).collect();
            wc.sort();
            let mut gc = admissible_counts(kind, n_max);
            gc.sort();
            if wc != gc {
                return Err(format!("{kind}: admissible sets differ ({} vs {})", wc.len(), gc.len()));
            }
            for (t, n, m) in want {
                let r = table1_bound(kind, t).map_err(err)?;
                if r != (n, m) {
                    return Err(format!("{kind} {t:?}: {r:?} != {:?}", (n, m)));
                }
                rows += 1;
            }
        }
        let scan = check_theorem_cbundle(10, n_max, jobs);
        if !scan.violations.is_empty() {
            return Err(format!("scan violations: {}", scan.violations.join("; ")));
        }
        let eq: Vec<String> = scan
            .equality_cases
            .iter()
            .map(|i| format!("{} n=m={}", i.group, i.n))
            .collect();
        if scan.equality_cases.iter().any(|i| i.n != 4 || !matches!(i.group, GroupKind::Cyclic(2) | GroupKind::Dihedral(2))) {
            return Err(format!("unexpected equality cases {eq:?}"));
        }
        Ok(format!(
            "{rows} rows match; scan of {} instances clean; equality only at {}",
            scan.instances,
            eq.join(", ")
        ))
    })
}

pub fn criterion_6() -> CriterionResult {
    timed(6, "key example end to end", 10.0, || {
        let spec = ExampleSpec::c2_over_q(2, &[1, 2, 3, 4]).map_err(err)?;
        let b = build_example(&spec).map_err(err)?;
        let v = verify_example(&b.model).map_err(err)?;
        let qr = &v.quotient;
        let mut fails = Vec::new();
        let mut check = |ok: bool, what: String| {
            if !ok {
                fails.push(what);
            }
        };
        check(b.model.n() == 8, format!("n = {}", b.model.n()));
        check(b.model.has_k_point, "no k-point".into());
        check(v.x_rationality == Rationality::Rational, "X not rational".into());
        check(qr.m == 8, format!("m = {} (expected 8)", qr.m));
        check(qr.k2_y == 0, format!("K_Y^2 = {} (expected 0)", qr.k2_y));
        check(qr.rationality == Rationality::NotRational, format!("verdict {:?}", qr.rationality));
        let summary = format!(
            "n = {}, X {:?}, m = {}, K_Y^2 = {}, {:?}",
            b.model.n(),
            v.x_rationality,
            qr.m,
            qr.k2_y,
            qr.rationality
        );
        if fails.is_empty() {
            Ok(summary)
        } else {
            Err(format!("{summary}; mismatches: {}", fails.join(", ")))
        }
    })
}

pub fn criterion_7(jobs: usize) -> CriterionResult {
    timed(7, "family inequivalence", 60.0, || {
        let base = ExampleSpec::c2_over_q(2, &[]).map_err(err)?;
        let fam = generate_family(&base, 6, integer_sampler(2024, 4, 40), jobs).map_err(err)?;
        let k = FieldSpec::rationals(1);
        let loci = fam
            .iter()
            .map(|e| upstairs_locus(e, &k))
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        for l in &loci {
            if l.len() != 8 {
                return Err(format!("locus of size {}", l.len()));
            }
        }
        for i in 0..loci.len() {
            for j in i + 1..loci.len() {
                if let Some(phi) = loci_equivalent(&loci[i], &loci[j]).map_err(err)? {
                    return Err(format!("members {i} and {j} equivalent via {phi}"));
                }
            }
        }
        let phi = Pgl2Elem::from_ints(1, 2, 1, 1, 1).map_err(err)?;
        let planted = loci[0].map(&phi).map_err(err)?;
        let found = loci_equivalent(&loci[0], &planted)
            .map_err(err)?
            .ok_or("planted pair not detected")?;
        if loci[0].map(&found).map_err(err)? != planted.embed(loci[0].conductor()).map_err(err)? {
            return Err("witness does not map the locus onto its image".into());
        }
        Ok("6 members pairwise inequivalent; planted pair equivalent".into())
    })
}

/// The four stabilized rows and their fields, plus the A4 control.
pub fn stabilized_cases() -> Vec<(&'static str, GroupKind, FieldSpec, Option<u32>)> {
    let q_i_sqrt5 = FieldSpec::new(20, vec![consts::i(20).unwrap(), consts::sqrt5(20).unwrap()]).unwrap();
    vec![
        ("D6 over Q", GroupKind::Dihedral(3), FieldSpec::rationals(1), None),
        (
            "S4 over Q(i√2)",
            GroupKind::S4,
            FieldSpec::new(8, vec![consts::i_sqrt2(8).unwrap()]).unwrap(),
            Some(3),
        ),
        ("A5 over Q(i, √5), h of order 5", GroupKind::A5, q_i_sqrt5.clone(), Some(5)),
        ("A5 over Q(i, √5), h of order 3", GroupKind::A5, q_i_sqrt5, Some(3)),
    ]
}

pub fn criterion_8() -> CriterionResult {
    timed(8, "stabilized examples", 30.0, || {
        let mut out = Vec::new();
        for (name, kind, k, h) in stabilized_cases() {
            let d = build_stabilized_example(kind, &k, h).map_err(|e| format!("{name}: {e}"))?;
            let o = &d.built.model.orbits[0];
            let (fate, _) = fibre_fate(o).map_err(err)?;
            if fate != FibreFate::Singular {
                return Err(format!("{name}: image fibre {fate:?}"));
            }
            out.push(format!("{name}: stabilizer {}", o.stabilizer_order));
        }
        let qi = FieldSpec::new(4, vec![consts::i(4).unwrap()]).unwrap();
        match build_stabilized_example(GroupKind::A4, &qi, None) {
            Err(ExampleError::HypothesisFailed(_)) => {}
            other => return Err(format!("A4 over Q(i): {:?}", other.map(|_| ()))),
        }
        out.push("A4 over Q(i) rejected".into());
        Ok(out.join("; "))
    })
}

pub fn criterion_9() -> CriterionResult {
    timed(9, "swap parity", 1.0, || {
        for o in (1..=9).step_by(2) {
            if swap_parity_check(o, true) != ParityOutcome::GammaPowerSwaps(true) {
                return Err(format!("ord g = {o}"));
            }
            if swap_parity_check(o, false) != ParityOutcome::GammaPowerSwaps(false) {
                return Err(format!("ord g = {o}, no swap"));
            }
        }
        Ok("γ^{ord g} swaps exactly when gγ does, ord g odd <= 9".into())
    })
}

pub fn run_all(jobs: usize) -> Vec<CriterionResult> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(jobs),
        criterion_6(),
        criterion_7(jobs),
        criterion_8(),
        criterion_9(),
    ]
}
