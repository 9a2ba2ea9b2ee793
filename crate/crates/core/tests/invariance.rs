use hyperpoly::dataset::{p_document, PairingKind};
use hyperpoly::invariance::{
    builtin_case, builtin_case_for, builtin_case_names, check_condition_2, run_builtin, run_case,
    CaseFile, InvarianceError,
};
use hyperpoly::lorentz::{AnglePi, LorentzMap};
use hyperpoly::topology::{build_chain, ChainSpec};

#[test]
fn every_builtin_case_passes_for_both_pairings() {
    for kind in [PairingKind::Phi1, PairingKind::Phi2] {
        for name in builtin_case_names() {
            let r = run_builtin(name, kind).unwrap();
            assert!(r.passed, "{name} {kind:?}: {r:?}");
            assert!(r.embedded_hypersurface);
            assert!(r.generators.iter().all(|g| g.preserves));
            assert!(r.condition_1.verification.as_ref().unwrap().passed());
        }
    }
}

#[test]
fn restricted_polyhedra_are_three_dimensional() {
    let r = run_builtin("H-z0", PairingKind::Phi1).unwrap();
    let v = r.condition_1.verification.unwrap();
    assert_eq!(v.dimension, 3);
    assert_eq!(r.condition_1.sides.len(), 8);
    assert!(r.condition_2.sides.is_empty());
}

#[test]
fn angle_sum_along_the_bottom_plane() {
    let r = run_builtin("H-Z1", PairingKind::Phi1).unwrap();
    let z1_a1 = r
        .condition_3
        .instances
        .iter()
        .find(|i| i.l == 1 && (i.ridge == "Z1∩A1" || i.ridge == "A1∩Z1"))
        .expect("Z1 ∩ A1 lies in H");
    assert!(z1_a1.preserves);
    assert_eq!(z1_a1.angle_sum, Some(AnglePi::new(1, 1)));
    assert!(r.condition_2.passed);
    assert!(r.condition_2.sides.iter().any(|s| s.side == "Z1"));
}

#[test]
fn dropping_a4_breaks_condition_1() {
    let case = builtin_case("H-z0").unwrap().without_generator("a4");
    let compiled = p_document(PairingKind::Phi1).compile().unwrap();
    let r = run_case(&compiled, &case).unwrap();
    assert!(!r.passed);
    assert!(!r.condition_1.passed);
    assert!(!r.condition_1.mismatches.is_empty());
    assert!(r.condition_2.passed && r.condition_3.passed);
}

#[test]
fn a_pairing_fixing_its_side_breaks_condition_2() {
    let compiled = p_document(PairingKind::Phi1).compile().unwrap();
    let p = &compiled.polyhedron;
    let z1 = p.side_index("Z1").unwrap();
    let h = p.side(z1).clone();
    let phi = compiled.pairing.clone().unwrap().with_map(z1, LorentzMap::reflection(&h));
    let r = check_condition_2(p, &phi, &h);
    assert!(!r.passed);
    assert!(r.sides.iter().any(|s| s.side == "Z1" && s.preserves));
}

#[test]
fn unknown_cases_and_blocks() {
    assert!(matches!(
        run_builtin("H-q", PairingKind::Phi1),
        Err(InvarianceError::UnknownCase(_))
    ));
    let chain = ChainSpec::parse(2, "12").unwrap();
    let case = builtin_case("H-z0").unwrap();
    assert!(matches!(case.conjugated(&chain, 0), Err(InvarianceError::Block { .. })));
    assert!(matches!(case.conjugated(&chain, 3), Err(InvarianceError::Block { .. })));
}

#[test]
fn conjugated_cases_in_a_chain() {
    let chain = ChainSpec::parse(2, "12").unwrap();
    let compiled = build_chain(&chain).unwrap();
    for block in 1..=2 {
        let kind = chain.pattern[block - 1];
        let case = builtin_case_for("H-z0", kind).unwrap().conjugated(&chain, block).unwrap();
        let r = run_case(&compiled, &case).unwrap();
        assert!(r.passed, "block {block}: {r:?}");
    }
}

#[test]
fn case_files_round_trip() {
    let file = CaseFile {
        document: p_document(PairingKind::Phi1),
        case: builtin_case("H-diag2").unwrap(),
    };
    let text = serde_json::to_string(&file).unwrap();
    let back: CaseFile = serde_json::from_str(&text).unwrap();
    assert_eq!(back, file);
    let r = run_case(&back.document.compile().unwrap(), &back.case).unwrap();
    assert!(r.passed);
}
