use hyperpoly::dataset::{p_document, PairingKind};
use hyperpoly::document::{
    word, DocumentError, GeneratorDecl, HyperplaneDecl, PairingDecl, Primitive, SpecDocument,
    WitnessDecl, WordItem,
};
use hyperpoly::lorentz::{LorentzError, PlaneSide, SphereSide};
use hyperpoly::pairing::{validate, PairingError};
use hyperpoly::QSqrt2;
use proptest::prelude::*;

fn int(v: i64) -> QSqrt2 {
    QSqrt2::from(v)
}

fn scalar() -> impl Strategy<Value = QSqrt2> {
    (-50i64..50, 1i64..9, -50i64..50, 1i64..9).prop_map(|(a, b, c, d)| QSqrt2::from_parts(a, b, c, d))
}

fn triple() -> impl Strategy<Value = Vec<QSqrt2>> {
    prop::collection::vec(scalar(), 3)
}

fn hyperplane() -> impl Strategy<Value = HyperplaneDecl> {
    prop_oneof![
        ("[A-Z][0-9]'?", triple(), scalar(), any::<bool>()).prop_map(|(n, c, r, inside)| {
            let side = if inside { SphereSide::Interior } else { SphereSide::Exterior };
            HyperplaneDecl::sphere(&n, c, r, side)
        }),
        ("[A-Z][0-9]'?", triple(), scalar(), any::<bool>()).prop_map(|(n, v, d, pos)| {
            let side = if pos { PlaneSide::Positive } else { PlaneSide::Negative };
            HyperplaneDecl::plane(&n, v, d, side)
        }),
    ]
}

fn item() -> impl Strategy<Value = WordItem> {
    prop_oneof![
        "[a-z][0-9](\\^-1)?".prop_map(WordItem::Name),
        "[A-Z][0-9]".prop_map(|n| WordItem::Name(format!("inv:{n}"))),
        triple().prop_map(|v| WordItem::Primitive(Primitive::Translate(v))),
        (triple(), scalar()).prop_map(|(normal, offset)| {
            WordItem::Primitive(Primitive::ReflectPlane { normal, offset })
        }),
        (triple(), scalar()).prop_map(|(center, radius_sq)| {
            WordItem::Primitive(Primitive::InvertSphere { center, radius_sq })
        }),
        prop::collection::vec(triple(), 3)
            .prop_map(|rows| WordItem::Primitive(Primitive::LinearOrthogonal(rows))),
    ]
}

fn document() -> impl Strategy<Value = SpecDocument> {
    (
        prop::collection::vec(hyperplane(), 0..6),
        prop::collection::vec(("[a-z][0-9]", prop::collection::vec(item(), 0..4)), 0..4),
        prop::collection::vec(("[A-Z][0-9]", "[A-Z][0-9]", prop::collection::vec(item(), 1..3)), 0..4),
        triple(),
        scalar(),
    )
        .prop_map(|(hyperplanes, gens, pairs, point, height)| SpecDocument {
            dimension: 4,
            hyperplanes,
            generators: gens
                .into_iter()
                .map(|(name, word)| GeneratorDecl { name, word })
                .collect(),
            pairings: pairs
                .into_iter()
                .map(|(from, to, word)| PairingDecl { from, to, word })
                .collect(),
            witness: WitnessDecl { point, height },
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn spec_round_trip(doc in document()) {
        let text = doc.to_json();
        let back = SpecDocument::from_json(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.to_json(), text);
    }
}

#[test]
fn builtin_round_trip_compiles_identically() {
    let doc = p_document(PairingKind::Phi2);
    let back = SpecDocument::from_json(&doc.to_json()).unwrap();
    let (a, b) = (doc.compile().unwrap(), back.compile().unwrap());
    assert_eq!(a.polyhedron.sides(), b.polyhedron.sides());
    for (x, y) in a.pairing.unwrap().entries().iter().zip(b.pairing.unwrap().entries()) {
        assert_eq!(x.map, y.map);
    }
}

#[test]
fn unsupported_dimensions_are_rejected() {
    for dim in [0, 1, 2, 5] {
        let mut doc = p_document(PairingKind::Phi1);
        doc.dimension = dim;
        assert!(matches!(doc.compile(), Err(DocumentError::Dimension(d)) if d == dim));
    }
}

#[test]
fn malformed_documents() {
    assert!(matches!(SpecDocument::from_json("{"), Err(DocumentError::Parse(_))));

    let mut doc = p_document(PairingKind::Phi1);
    doc.pairings[0].word = word(&["nope"]);
    assert!(matches!(doc.compile(), Err(DocumentError::UnknownName(n)) if n == "nope"));

    let mut doc = p_document(PairingKind::Phi1);
    let extra = doc.hyperplanes[0].clone();
    doc.hyperplanes.push(extra);
    assert!(matches!(doc.compile(), Err(DocumentError::DuplicateName(_))));

    let mut doc = p_document(PairingKind::Phi1);
    doc.witness.height = int(0);
    assert!(matches!(doc.compile(), Err(DocumentError::NonPositiveHeight)));

    let mut doc = p_document(PairingKind::Phi1);
    doc.witness.point.pop();
    assert!(matches!(doc.compile(), Err(DocumentError::Arity(..))));

    let mut doc = p_document(PairingKind::Phi1);
    doc.pairings.pop();
    assert!(matches!(
        doc.compile(),
        Err(DocumentError::Pairing(PairingError::Unpaired(_)))
    ));
}

#[test]
fn corrupted_radius_reports_unrecognized_angles() {
    let mut doc = p_document(PairingKind::Phi1);
    assert!(doc.angle_diagnostics().is_empty());
    let b1 = doc.hyperplanes.iter_mut().find(|h| h.name == "B1").unwrap();
    let hyperpoly::document::Shape::Sphere { radius_sq, .. } = &mut b1.shape else {
        panic!("B1 is a sphere");
    };
    *radius_sq = int(3);
    assert!(matches!(
        doc.compile(),
        Err(DocumentError::Lorentz(LorentzError::RadiusNotRepresentable(_)))
    ));
    let diagnostics = doc.angle_diagnostics();
    assert!(!diagnostics.is_empty());
    assert!(diagnostics.iter().all(|d| d.first == "B1" || d.second == "B1"));
    let pair = diagnostics
        .iter()
        .find(|d| d.first == "B1" && d.second == "B1'")
        .unwrap();
    assert_eq!(pair.gamma_sq, QSqrt2::from_parts(3, 8, 0, 1));
}

#[test]
fn replacing_a_map_with_the_identity_invalidates_it() {
    let mut doc = p_document(PairingKind::Phi1);
    let b1 = doc.pairings.iter_mut().find(|p| p.from == "B1").unwrap();
    b1.word = Vec::new();
    let c = doc.compile().unwrap();
    let report = validate(&c.polyhedron, c.pairing.as_ref().unwrap()).unwrap();
    let bad: Vec<&str> = report.failures().iter().map(|f| f.side.as_str()).collect();
    assert_eq!(bad, ["B1", "B1'"]);
    assert!(report.failures().iter().all(|f| !f.hyperplane));
}
