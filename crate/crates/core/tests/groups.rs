use conicq::cyclo::FieldSpec;
use conicq::group::{
    classify_group, default_field, fixed_points_defined_over, standard_group, GroupKind,
};

#[test]
fn a5_orbit_table() {
    let g = standard_group(GroupKind::A5, &default_field(GroupKind::A5)).unwrap();
    assert_eq!(g.order(), 60);
    assert_eq!(classify_group(&g).unwrap(), GroupKind::A5);
    assert_eq!(g.special_orbit_table().unwrap(), vec![12, 20, 30]);
}

#[test]
fn orbit_tables_small_parameters() {
    for k in 2..=12u32 {
        for kind in [GroupKind::Cyclic(k), GroupKind::Dihedral(k)] {
            let g = standard_group(kind, &default_field(kind)).unwrap();
            assert_eq!(g.kind(), kind);
            let mut t = g.special_orbit_table().unwrap();
            t.sort();
            assert_eq!(t, kind.special_orbits(), "{kind}");
        }
    }
}

#[test]
fn fixed_point_definability_matches_roots_of_unity() {
    for kind in [
        GroupKind::Cyclic(5),
        GroupKind::Dihedral(5),
        GroupKind::Dihedral(6),
        GroupKind::A4,
        GroupKind::S4,
    ] {
        let k = default_field(kind);
        let g = standard_group(kind, &k).unwrap();
        let k = k.lift(g.conductor()).unwrap();
        for e in g.elements() {
            let o = e.order(60).unwrap();
            if o > 2 {
                assert_eq!(
                    fixed_points_defined_over(e, &k).unwrap(),
                    k.contains_root_of_unity(o).unwrap(),
                    "{kind} {e}"
                );
            }
        }
    }
    let _ = FieldSpec::rationals(1);
}
