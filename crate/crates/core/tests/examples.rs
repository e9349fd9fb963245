use conicq::arith::{q, Q};
use conicq::example::{build_example, verify_example, ExampleSpec};
use conicq::group::P1Point;
use conicq::quotient::{FibreKind, Rationality, Swap};

#[test]
fn key_example_coefficient_a_matches_hand_formula() {
    let mus = [1i64, 2, 3, 4];
    let b = build_example(&ExampleSpec::c2_over_q(2, &mus).unwrap()).unwrap();
    // P_x = prod (t1^2 - 2 mu^2 t0^2), P_y = t0^8, q = (1:1), B = 1
    let px_at_q: Q = mus.iter().map(|&m| q(1) - q(2 * m * m)).product();
    let want = -(q(1) / px_at_q);
    assert_eq!(b.a.as_rational(), Some(want));
    // the x^2 form vanishes at ±mu√2 and nowhere else among the singular points
    for p in &b.points {
        assert!(b.forms[0].eval(p).is_zero());
        let minus = P1Point::affine(-p.coordinate().unwrap());
        assert!(b.forms[0].eval(&minus).is_zero());
    }
    assert!(b.forms[1].eval(&P1Point::infinity(b.ambient)).is_zero());
}

#[test]
fn key_example_components_are_swapped_by_galois() {
    // the singular conic B y^2 + C z^2 = 0 splits over k(sqrt(-C/B)) = Q(sqrt 2)
    let spec = ExampleSpec::c2_over_q(2, &[1, 2, 3, 4]).unwrap();
    let ratio = -(spec.c.as_rational().unwrap() / spec.b.as_rational().unwrap());
    assert_eq!(ratio, Q::new(1.into(), 2.into()));
    assert!(spec.field.pth_root(&spec.u, 2).unwrap().is_none());
    let b = build_example(&spec).unwrap();
    for o in &b.model.orbits {
        if o.fibre_kind == FibreKind::Singular {
            assert_eq!(o.swap, Swap::Galois);
            assert_eq!((o.length, o.stabilizer_order), (2, 1));
        }
    }
}

#[test]
fn three_free_orbits_and_odd_weight() {
    // three orbits: the fibre over (1:0) carries weight 1 under C2 and its
    // image is singular, so the quotient has one more singular fibre
    let b = build_example(&ExampleSpec::c2_over_q(2, &[1, 2, 3]).unwrap()).unwrap();
    let v = verify_example(&b.model).unwrap();
    assert_eq!(v.quotient.m, 4);
    assert_eq!(v.quotient.k2_y, 4);
    assert_eq!(v.quotient.rationality, Rationality::NotRational);
    let b = build_example(&ExampleSpec::c2_over_q(2, &[1, 2]).unwrap()).unwrap();
    let v = verify_example(&b.model).unwrap();
    assert_eq!((v.quotient.m, v.quotient.rationality), (2, Rationality::Rational));
}

#[test]
fn model_records_round_trip() {
    let b = build_example(&ExampleSpec::c2_over_q(3, &[1, 5]).unwrap()).unwrap();
    let json = serde_json::to_string(&b.model).unwrap();
    let back: conicq::quotient::SurfaceModel = serde_json::from_str(&json).unwrap();
    assert_eq!(back, b.model);
    assert!(json.contains("\"1/3\"") || json.contains("\"-1/3\""));
}
