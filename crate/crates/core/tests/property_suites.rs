use voa_forge::examples::default_shifts;
use voa_forge::exactla::q;
use voa_forge::lattice::ShiftDatum;
use voa_forge::suites::{
    affine_closure, borcherds_commutator, character_check, jacobson_oracle, levi_oracle, shifted_weight_formula,
    skew_symmetry, solvable_oracle, translation_covariance, virasoro_relations,
};

fn shifts() -> Vec<ShiftDatum> {
    default_shifts().into_iter().map(|(_, s)| s).collect()
}

#[test]
fn commutator_formula_on_a1() {
    let r = borcherds_commutator(2);
    assert!(r.passed, "{r:?}");
}

#[test]
fn skew_symmetry_on_weight_one() {
    let r = skew_symmetry();
    assert!(r.passed, "{r:?}");
}

#[test]
fn translation_covariance_on_a1() {
    let r = translation_covariance(2);
    assert!(r.passed, "{r:?}");
}

#[test]
fn virasoro_relations_with_computed_central_charges() {
    let r = virasoro_relations(2);
    assert!(r.result.passed, "{r:?}");
    assert_eq!(r.standard_central_charge, q(1));
    assert_eq!(r.shifted_central_charge, q(-5));
}

#[test]
fn shifted_weight_formula_on_fifty_states() {
    let r = shifted_weight_formula(&shifts(), 50);
    assert!(r.passed, "{r:?}");
    assert_eq!(r.cases, 50);
}

#[test]
fn affine_closure_on_a1() {
    let r = affine_closure(2);
    assert!(r.passed, "{r:?}");
}

#[test]
fn algebraic_oracles() {
    for r in [jacobson_oracle(11, 100), solvable_oracle(12, 100), levi_oracle(13, 20)] {
        assert!(r.passed, "{r:?}");
    }
}

#[test]
fn characters() {
    let r = character_check(&shifts());
    assert!(r.passed, "{r:?}");
}

#[test]
fn full_report_passes_and_is_deterministic() {
    let a = voa_forge::report::full_report(5, 2, None).unwrap();
    assert!(a.passed, "{}", serde_json::to_string_pretty(&a).unwrap());
    let b = voa_forge::report::full_report(5, 2, None).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}
