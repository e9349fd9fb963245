//! Runs the nine reproduction criteria and prints one PASS/FAIL line each.
//! Time limits are pinned inside `conicq::reproduce`.

use conicq::reproduce::{self, CriterionResult};

fn report(r: CriterionResult) {
    println!("{}", r.line());
    assert!(r.pass, "{}", r.line());
}

#[test]
fn criterion_1_orbit_tables() {
    report(reproduce::criterion_1());
}

#[test]
fn criterion_2_fixed_point_definability() {
    report(reproduce::criterion_2());
}

#[test]
fn criterion_3_continued_fractions() {
    report(reproduce::criterion_3());
}

#[test]
fn criterion_4_chain_fates() {
    report(reproduce::criterion_4());
}

#[test]
fn criterion_5_table_and_bound() {
    report(reproduce::criterion_5(1));
}

#[test]
fn criterion_6_key_example() {
    report(reproduce::criterion_6());
}

#[test]
fn criterion_7_family_inequivalence() {
    report(reproduce::criterion_7(1));
}

#[test]
fn criterion_8_stabilized_examples() {
    report(reproduce::criterion_8());
}

#[test]
fn criterion_9_swap_parity() {
    report(reproduce::criterion_9());
}
