use conicq::compare::{mobius_from_triples, pairwise_inequivalence, PairVerdict};
use conicq::cyclo::{CycloNum, FieldSpec};
use conicq::example::{generate_family, integer_sampler, ExampleSpec};
use conicq::group::{P1Point, Pgl2Elem};

#[test]
fn one_minus_t() {
    let p = |t: i64| P1Point::affine(CycloNum::from_int(1, t));
    let inf = P1Point::infinity(1);
    let f = mobius_from_triples([&p(0), &p(1), &inf], [&p(1), &p(0), &inf]).unwrap();
    for t in -5..5 {
        assert_eq!(f.apply(&p(t)), p(1 - t));
    }
}

/// Random families of eight free orbits: no two quotients should share a
/// locus up to PGL_2(Q), across ten seeds.
#[test]
fn random_rigid_families_have_no_equivalent_pairs() {
    let base = ExampleSpec::c2_over_q(2, &[]).unwrap();
    let k = FieldSpec::rationals(1);
    let mut pairs = 0;
    for seed in 0..10 {
        let fam = generate_family(&base, 6, integer_sampler(seed, 8, 60), 4).unwrap();
        let n = fam[0].ambient;
        let elems = vec![Pgl2Elem::identity(n), Pgl2Elem::from_ints(n, -1, 0, 0, 1).unwrap()];
        let v = pairwise_inequivalence(&fam, &k, &elems, 4).unwrap();
        for (_, _, p) in &v.pairs {
            assert_eq!(*p, PairVerdict::Inequivalent);
            pairs += 1;
        }
    }
    assert_eq!(pairs, 150);
}

#[test]
fn small_loci_give_no_conclusion() {
    let base = ExampleSpec::c2_over_q(2, &[]).unwrap();
    let fam = generate_family(&base, 2, integer_sampler(1, 4, 20), 1).unwrap();
    let n = fam[0].ambient;
    let elems = vec![Pgl2Elem::identity(n), Pgl2Elem::from_ints(n, -1, 0, 0, 1).unwrap()];
    let v = pairwise_inequivalence(&fam, &FieldSpec::rationals(1), &elems, 1).unwrap();
    assert!(matches!(v.pairs[0].2, PairVerdict::NoConclusion { .. }));
}
