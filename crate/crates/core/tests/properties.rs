use conicq::arith::{qf, Q};
use conicq::compare::{loci_equivalent, pairwise_with, FibreLocus, PairVerdict, QuotientCoordinate};
use conicq::cyclo::{consts, units, CycloNum, FieldSpec};
use conicq::example::{build_example, ExampleSpec};
use conicq::group::{default_field, standard_group, GroupKind, P1Point, Pgl2Elem};
use conicq::hj::{contract_chain, contract_chain_with, hj_eval, hj_expand, smooth_fibre_chain};
use proptest::prelude::*;

const CONDUCTORS: [u32; 6] = [3, 4, 5, 7, 8, 12];

fn num(n: u32, c: &[(i64, i64)]) -> CycloNum {
    CycloNum::new(n, c.iter().map(|&(a, b)| qf(a, b)).collect())
}

fn coeffs() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-20i64..20, 1i64..6), 1..8)
}

fn cyclo() -> impl Strategy<Value = (u32, Vec<(i64, i64)>, Vec<(i64, i64)>, Vec<(i64, i64)>)> {
    (prop::sample::select(CONDUCTORS.to_vec()), coeffs(), coeffs(), coeffs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((n, a, b, c) in cyclo()) {
        let (x, y, z) = (num(n, &a), num(n, &b), num(n, &c));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x - &x, CycloNum::zero(n));
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn galois_is_a_homomorphism_and_composes((n, a, b, _c) in cyclo(), i in 0usize..8, j in 0usize..8) {
        let us = units(n);
        let (s, t) = (us[i % us.len()] as i64, us[j % us.len()] as i64);
        let (x, y) = (num(n, &a), num(n, &b));
        prop_assert_eq!((&x * &y).galois(s).unwrap(), &x.galois(s).unwrap() * &y.galois(s).unwrap());
        prop_assert_eq!((&x + &y).galois(s).unwrap(), &x.galois(s).unwrap() + &y.galois(s).unwrap());
        let st = (s * t).rem_euclid(n as i64);
        prop_assert_eq!(x.galois(t).unwrap().galois(s).unwrap(), x.galois(st).unwrap());
    }

    #[test]
    fn subfields_are_closed(a in coeffs(), b in coeffs(), which in 0usize..3) {
        let k = match which {
            0 => FieldSpec::new(20, vec![consts::sqrt5(20).unwrap()]).unwrap(),
            1 => FieldSpec::new(24, vec![consts::i_sqrt2(24).unwrap()]).unwrap(),
            _ => FieldSpec::new(12, vec![consts::sqrt_m3(12).unwrap()]).unwrap(),
        };
        let n = k.conductor();
        // traces down to k
        let tr = |x: CycloNum| k.stabilizer().iter().fold(CycloNum::zero(n), |acc, &j| &acc + &x.galois(j as i64).unwrap());
        let (x, y) = (tr(num(n, &a)), tr(num(n, &b)));
        prop_assert!(k.contains(&x).unwrap());
        prop_assert!(k.contains(&(&x * &y)).unwrap());
        prop_assert!(k.contains(&(&x - &y)).unwrap());
        if !x.is_zero() {
            prop_assert!(k.contains(&x.inv().unwrap()).unwrap());
        }
    }

    #[test]
    fn hj_round_trip(k in 2u64..5000, a in 1u64..5000) {
        let a = a % k;
        prop_assume!(a > 0 && num_integer::gcd(k, a) == 1);
        let f = hj_expand(k, a).unwrap();
        prop_assert_eq!(hj_eval(&f.digits), Q::new((k as i64).into(), (a as i64).into()));
        prop_assert!(f.digits.iter().all(|&d| d >= 2));
    }

    #[test]
    fn contraction_order_does_not_matter(k in 2u64..40, a in 1u64..40, seed in any::<u64>()) {
        let a = a % k;
        prop_assume!(a > 0 && num_integer::gcd(k, a) == 1);
        let ch = smooth_fibre_chain(k, a).unwrap();
        let base = contract_chain(&ch).unwrap().fate;
        let mut s = seed;
        let shuffled = contract_chain_with(&ch, |m| {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (s >> 33) as usize % m.len()
        }).unwrap().fate;
        prop_assert_eq!(base, shuffled);
    }

    #[test]
    fn group_action_composes(i in 0usize..24, j in 0usize..24, t in -30i64..30) {
        let g = standard_group(GroupKind::S4, &default_field(GroupKind::S4)).unwrap();
        let n = g.conductor();
        let (a, b) = (&g.elements()[i], &g.elements()[j]);
        let p = P1Point::affine(CycloNum::from_int(n, t));
        prop_assert_eq!(a.mul(b).apply(&p), a.apply(&b.apply(&p)));
        prop_assert_eq!(a.inv().apply(&a.apply(&p)), p);
    }
}

fn rational_locus(pts: &[i64]) -> FibreLocus {
    let v: Vec<P1Point> = pts.iter().map(|&t| P1Point::affine(CycloNum::from_int(1, t))).collect();
    FibreLocus::new(&v, &FieldSpec::rationals(1)).unwrap()
}

fn moebius() -> impl Strategy<Value = Pgl2Elem> {
    (-5i64..6, -5i64..6, -5i64..6, -5i64..6)
        .prop_filter("invertible", |(a, b, c, d)| a * d - b * c != 0)
        .prop_map(|(a, b, c, d)| Pgl2Elem::from_ints(1, a, b, c, d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn loci_equivalence_relation(
        pts in prop::collection::btree_set(-40i64..40, 5..8),
        phi in moebius(),
        psi in moebius(),
    ) {
        let pts: Vec<i64> = pts.into_iter().collect();
        let a = rational_locus(&pts);
        prop_assert!(loci_equivalent(&a, &a).unwrap().is_some());
        let b = a.map(&phi).unwrap();
        let f = loci_equivalent(&a, &b).unwrap().expect("planted");
        prop_assert_eq!(a.map(&f).unwrap(), b.clone());
        let g = loci_equivalent(&b, &a).unwrap().expect("symmetric");
        prop_assert_eq!(b.map(&g).unwrap(), a.clone());
        let c = b.map(&psi).unwrap();
        prop_assert!(loci_equivalent(&a, &c).unwrap().is_some());
        // equivariance: moving both sides keeps the verdict
        let other = rational_locus(&pts.iter().map(|x| x * x + 1).collect::<Vec<_>>());
        let before = loci_equivalent(&a, &other).unwrap().is_some();
        let after = loci_equivalent(&a.map(&psi).unwrap(), &other.map(&psi).unwrap()).unwrap().is_some();
        prop_assert_eq!(before, after);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn key_example_forms_are_over_k(mus in prop::collection::btree_set(1i64..30, 1..5), u in prop::sample::select(vec![2i64, 3, 5, 6, -1, -2])) {
        let mus: Vec<i64> = mus.into_iter().collect();
        let spec = ExampleSpec::c2_over_q(u, &mus).unwrap();
        let b = build_example(&spec).unwrap();
        let k = FieldSpec::rationals(b.ambient);
        for f in &b.forms {
            for c in &f.coeffs {
                prop_assert!(k.contains(c).unwrap());
            }
        }
        // (1:1:0) lies on the fibre over q
        let qp = spec.q.embed(b.ambient).unwrap();
        prop_assert!((&b.forms[0].eval(&qp) + &b.forms[1].eval(&qp)).is_zero());
        prop_assert_eq!(b.model.n(), 2 * mus.len());
    }
}

#[test]
fn quotient_coordinate_choice_does_not_change_verdicts() {
    let tuples: [&[i64]; 3] = [&[1, 2, 3, 4, 5, 6, 7, 8], &[1, 2, 3, 4, 5, 6, 7, 9], &[2, 4, 6, 8, 10, 12, 14, 16]];
    let fam: Vec<_> = tuples
        .iter()
        .map(|t| build_example(&ExampleSpec::c2_over_q(2, t).unwrap()).unwrap())
        .collect();
    let elems: Vec<Pgl2Elem> = {
        let n = fam[0].ambient;
        vec![Pgl2Elem::identity(n), Pgl2Elem::from_ints(n, -1, 0, 0, 1).unwrap()]
    };
    let n = elems[0].conductor();
    let k = FieldSpec::rationals(1);
    let c1 = QuotientCoordinate::standard(&elems).unwrap();
    let c2 = QuotientCoordinate::new(
        &elems,
        &[P1Point::affine(CycloNum::from_int(n, 1)), P1Point::affine(CycloNum::from_int(n, 3))],
    )
    .unwrap();
    let v1 = pairwise_with(&fam, &k, &c1, 1).unwrap();
    let v2 = pairwise_with(&fam, &k, &c2, 2).unwrap();
    let kinds = |v: &conicq::compare::VerdictMatrix| -> Vec<bool> {
        v.pairs.iter().map(|(_, _, p)| matches!(p, PairVerdict::Equivalent { .. })).collect()
    };
    assert_eq!(kinds(&v1), kinds(&v2));
    // the third tuple is the first scaled by 2: t -> 4t on the quotient
    assert!(matches!(v1.pairs[1].2, PairVerdict::Equivalent { .. }));
    assert!(matches!(v1.pairs[0].2, PairVerdict::Inequivalent));
}
