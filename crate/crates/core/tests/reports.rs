use std::path::PathBuf;

use hyperpoly::dataset::{p_document, PairingKind};
use hyperpoly::invariance::run_builtin;
use hyperpoly::report::ReportDocument;
use hyperpoly::topology::{build_chain, invariants, ChainSpec};

/// Compares against `tests/golden/<name>`; `UPDATE_GOLDEN=1` rewrites it.
fn golden(name: &str, actual: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert!(expected == actual, "{name} differs from the golden file");
}

fn p_report(kind: PairingKind, name: &str) -> ReportDocument {
    let c = p_document(kind).compile().unwrap();
    let inv = invariants(&c.polyhedron, c.pairing.as_ref().unwrap()).unwrap();
    ReportDocument::new(name, &c.polyhedron, inv).unwrap()
}

#[test]
fn p_phi1_report() {
    let r = p_report(PairingKind::Phi1, "P-phi1");
    assert!(r.passed);
    golden("p-phi1.json", &r.to_json());
    golden("p-phi1.txt", &r.to_text());
}

#[test]
fn p_phi2_report_text() {
    golden("p-phi2.txt", &p_report(PairingKind::Phi2, "P-phi2").to_text());
}

#[test]
fn chain_report_text() {
    let spec = ChainSpec::parse(2, "12").unwrap();
    let c = build_chain(&spec).unwrap();
    let inv = invariants(&c.polyhedron, c.pairing.as_ref().unwrap()).unwrap();
    let r = ReportDocument::new(&spec.name(), &c.polyhedron, inv).unwrap().expect_ends(11);
    assert!(r.passed);
    golden("chain-2-12.txt", &r.to_text());
}

#[test]
fn timing_is_not_part_of_the_golden_output() {
    let mut r = p_report(PairingKind::Phi1, "P-phi1");
    let plain = r.to_json();
    assert!(!plain.contains("timing_ms"));
    r.timing_ms = Some(12);
    assert!(r.to_json().contains("\"timing_ms\": 12"));
}

#[test]
fn wrong_expected_ends_fail_the_report() {
    let r = p_report(PairingKind::Phi2, "P-phi2").expect_ends(7);
    assert!(!r.passed);
    assert!(r.to_text().contains("ends:               8 (expected 7)"));
}

#[test]
fn invariance_report_text() {
    golden("h-z1.txt", &run_builtin("H-Z1", PairingKind::Phi1).unwrap().to_text());
}
