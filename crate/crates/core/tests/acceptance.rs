//! One line per acceptance criterion, each checked exactly.

use std::collections::BTreeSet;

use hyperpoly::dataset::{p_document, PairingKind};
use hyperpoly::document::{GeneratorDecl, HyperplaneDecl, PairingDecl, SpecDocument, WitnessDecl};
use hyperpoly::invariance::{builtin_case, builtin_case_names, run_builtin, run_case};
use hyperpoly::lorentz::{
    hyperplane_from_sphere, AnglePi, LorentzMap, MinkowskiVector, PlaneSide, SphereSide,
};
use hyperpoly::pairing::verify_poincare;
use hyperpoly::polytope::Polyhedron;
use hyperpoly::topology::{end_count_table, invariants, ChainSpec};
use hyperpoly::{ExactField, QSqrt2};
use num_rational::Ratio;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn p(kind: PairingKind) -> hyperpoly::document::Compiled {
    p_document(kind).compile().unwrap()
}

fn face_census() -> Outcome {
    let c = p(PairingKind::Phi1);
    let l = c.polyhedron.face_lattice().map_err(|e| e.to_string())?;
    let got = (
        l.finite_vertex_count(),
        l.ideal_vertex_count(),
        l.counts()[1..].to_vec(),
    );
    check(
        got == (48, 36, vec![216, 168, 36, 1]),
        format!("{} finite, {} ideal, faces {:?}", got.0, got.1, got.2),
    )
}

fn ridge_angles() -> Outcome {
    let angles = p(PairingKind::Phi1).polyhedron.ridge_angles().map_err(|e| e.to_string())?;
    let count = |a: AnglePi| angles.iter().filter(|r| r.angle == a).count();
    let (q, r) = (count(AnglePi::new(1, 4)), count(AnglePi::new(1, 2)));
    check(
        q == 24 && r == 144 && angles.len() == 168,
        format!("{q} at π/4, {r} at π/2, {} ridges", angles.len()),
    )
}

fn poincare() -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for (kind, name) in [(PairingKind::Phi1, "Φ1"), (PairingKind::Phi2, "Φ2")] {
        let c = p(kind);
        let r = verify_poincare(&c.polyhedron, c.pairing.as_ref().unwrap()).map_err(|e| e.to_string())?;
        let lengths: BTreeSet<usize> = r.ridge_cycles.iter().map(|c| c.q).collect();
        let cycles_ok = r
            .ridge_cycles
            .iter()
            .all(|c| c.k == Some(1) && c.angle_sum == AnglePi::new(2, 1) && c.m == Some(1));
        let horo = r.horospheres.as_ref().is_some_and(|h| h.passed);
        ok &= r.poincare_passed()
            && cycles_ok
            && lengths.iter().all(|q| *q == 4 || *q == 8)
            && horo;
        details.push(format!(
            "{name}: {} cycles, lengths {lengths:?}, k=1 m=1 {cycles_ok}, horospheres {horo}",
            r.ridge_cycles.len()
        ));
    }
    check(ok, details.join("; "))
}

fn torsion() -> Outcome {
    let c = p(PairingKind::Phi1);
    let r = verify_poincare(&c.polyhedron, c.pairing.as_ref().unwrap()).map_err(|e| e.to_string())?;
    let t = r.torsion.ok_or("no torsion report")?;
    let summary = |dim: usize| -> Vec<(usize, Ratio<i64>, bool)> {
        let mut v: Vec<_> = t
            .cycles
            .iter()
            .filter(|c| c.dim == dim)
            .map(|c| {
                let uniform = c.omegas.iter().all(|w| *w == c.omegas[0]);
                (c.members.len(), c.omegas[0], uniform && c.passes())
            })
            .collect();
        v.sort();
        v
    };
    let one = Ratio::new;
    let vertices = summary(0);
    let edges = summary(1);
    let expected_vertices = vec![(16, one(1, 16), true), (32, one(1, 32), true)];
    let mut expected_edges = vec![
        (8, one(1, 8), true),
        (16, one(1, 16), true),
        (8, one(1, 8), true),
        (8, one(1, 8), true),
        (8, one(1, 8), true),
    ];
    expected_edges.sort();
    let fmt = |v: &[(usize, Ratio<i64>, bool)]| {
        v.iter()
            .map(|(n, w, ok)| format!("{n}×{w}{}", if *ok { "" } else { " (sum≠1)" }))
            .collect::<Vec<_>>()
            .join(", ")
    };
    check(
        t.passed && vertices == expected_vertices && edges == expected_edges,
        format!(
            "vertex cycles [{}]; eligible 1-face cycles [{}], expected [{}]",
            fmt(&vertices),
            fmt(&edges),
            fmt(&expected_edges)
        ),
    )
}

fn ends_and_volume() -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for (kind, ends) in [(PairingKind::Phi1, 7), (PairingKind::Phi2, 8)] {
        let c = p(kind);
        let inv = invariants(&c.polyhedron, c.pairing.as_ref().unwrap()).map_err(|e| e.to_string())?;
        ok &= inv.ends == ends
            && inv.census.c == [2, 22, 39, 18, 1]
            && inv.euler_characteristic == 2
            && inv.volume_units == Some(2);
        details.push(format!(
            "ends {} c {:?} χ {} volume {:?}",
            inv.ends, inv.census.c, inv.euler_characteristic, inv.volume_units
        ));
    }
    check(ok, details.join("; "))
}

fn chains() -> Outcome {
    let mut ok = true;
    let mut details = Vec::new();
    for n in 1..=4 {
        let rows = end_count_table(n).map_err(|e| e.to_string())?;
        let n2 = 2 * n as i64;
        ok &= rows.len() == n + 1
            && rows.iter().all(|r| {
                r.passed
                    && r.ends == 4 + 4 * n - r.k
                    && r.euler_characteristic == n2
                    && r.volume_units == Some(n2)
            });
        let distinct: BTreeSet<usize> = rows.iter().map(|r| r.ends).collect();
        ok &= distinct.len() > n;
        details.push(format!(
            "n={n}: ends {:?}",
            rows.iter().map(|r| r.ends).collect::<Vec<_>>()
        ));
    }
    check(ok, details.join("; "))
}

fn invariance() -> Outcome {
    let mut ok = true;
    let mut details = Vec::new();
    for name in builtin_case_names() {
        let r = run_builtin(name, PairingKind::Phi1).map_err(|e| e.to_string())?;
        ok &= r.condition_1.passed && r.condition_2.passed && r.condition_3.passed && r.passed;
        details.push(format!("{name} {}", if r.passed { "pass" } else { "FAIL" }));
    }
    let z1 = run_builtin("H-Z1", PairingKind::Phi1).map_err(|e| e.to_string())?;
    let sum = z1
        .condition_3
        .instances
        .iter()
        .find(|i| i.l == 1 && (i.ridge == "Z1∩A1" || i.ridge == "A1∩Z1"))
        .and_then(|i| i.angle_sum);
    ok &= sum == Some(AnglePi::new(1, 1));
    details.push(format!("Z1∩A1 l=1 sum {}", sum.map_or("none".into(), |a| a.to_string())));
    let weak = builtin_case("H-z0").unwrap().without_generator("a4");
    let r = run_case(&p(PairingKind::Phi1), &weak).map_err(|e| e.to_string())?;
    ok &= !r.condition_1.passed;
    details.push(format!(
        "H-z0 without a4: condition 1 {}",
        if r.condition_1.passed { "pass" } else { "fails" }
    ));
    check(ok, details.join("; "))
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

fn scalar() -> impl Strategy<Value = QSqrt2> {
    (-60i64..60, 1i64..20, -60i64..60, 1i64..20).prop_map(|(a, b, c, d)| QSqrt2::from_parts(a, b, c, d))
}

fn field_axioms() -> Result<(), String> {
    runner(10_000)
        .run(&(scalar(), scalar(), scalar()), |(x, y, z)| {
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert!((&x + &(-&x)).is_zero());
            prop_assert_eq!(&x * &QSqrt2::one(), x.clone());
            if !x.is_zero() {
                prop_assert_eq!(&x * &x.inv().unwrap(), QSqrt2::one());
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn constructed_maps_are_lorentz() -> Result<usize, String> {
    let mut maps: Vec<LorentzMap<QSqrt2>> = Vec::new();
    for kind in [PairingKind::Phi1, PairingKind::Phi2] {
        let c = p(kind);
        maps.extend(c.context.generators.values().cloned());
        maps.extend(c.pairing.unwrap().entries().iter().map(|e| e.map.clone()));
        maps.extend(c.polyhedron.sides().iter().map(LorentzMap::reflection));
    }
    let chain = ChainSpec::parse(2, "12").unwrap().document().compile().map_err(|e| e.to_string())?;
    maps.extend(chain.pairing.unwrap().entries().iter().map(|e| e.map.clone()));
    if let Some(bad) = maps.iter().find(|m| !m.is_lorentz()) {
        return Err(format!("{:?} is not Lorentz", bad.word));
    }
    let base = maps.clone();
    runner(256)
        .run(&prop::collection::vec(0..base.len(), 1..6), |word| {
            let g = word
                .iter()
                .fold(LorentzMap::identity(4), |acc, &i| base[i].compose(&acc));
            prop_assert!(g.is_lorentz());
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(maps.len())
}

fn reflections_are_involutions() -> Result<(), String> {
    let c = p(PairingKind::Phi1);
    for h in c.polyhedron.sides() {
        let r = LorentzMap::reflection(h);
        if !r.compose(&r).is_identity() {
            return Err(format!("reflection in {} is not an involution", h.name));
        }
    }
    let sphere = (prop::collection::vec(scalar(), 3), scalar());
    runner(512)
        .run(&sphere, |(centre, r)| {
            prop_assume!(!r.is_zero());
            let h = hyperplane_from_sphere("S", &centre, &(&r * &r), SphereSide::Exterior).unwrap();
            let m = LorentzMap::reflection(&h);
            prop_assert!(m.compose(&m).is_identity());
            prop_assert_eq!(m.apply(&h.e), h.e.neg());
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn vertex_keys<F: ExactField>(poly: &Polyhedron<F>) -> Vec<(String, Vec<String>)> {
    let mut out: Vec<_> = poly
        .enumerate_vertices()
        .into_iter()
        .map(|v| {
            let mut names: Vec<String> = v.incident_sides.iter().map(|&s| poly.side(s).name.clone()).collect();
            names.sort();
            (format!("{:?}", v.point.x), names)
        })
        .collect();
    out.sort();
    out
}

fn vertex_order_independence() -> Result<(), String> {
    let base = p(PairingKind::Phi1).polyhedron;
    let expected = vertex_keys(&base);
    let witness: MinkowskiVector<QSqrt2> = base.witness().x.clone();
    runner(3)
        .run(&Just(base.sides().to_vec()).prop_shuffle(), |sides| {
            let moved = Polyhedron::new(4, sides, witness.clone()).unwrap();
            prop_assert_eq!(vertex_keys(&moved), expected.clone());
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn spec_round_trip() -> Result<(), String> {
    let plane = (prop::collection::vec(scalar(), 3), scalar(), any::<bool>()).prop_map(|(n, d, pos)| {
        let side = if pos { PlaneSide::Positive } else { PlaneSide::Negative };
        HyperplaneDecl::plane("H", n, d, side)
    });
    let docs = (
        prop::collection::vec(plane, 0..5),
        prop::collection::vec(scalar(), 3),
        scalar(),
        "[a-z][0-9]",
    )
        .prop_map(|(hyperplanes, point, height, g)| SpecDocument {
            dimension: 4,
            hyperplanes,
            generators: vec![GeneratorDecl { name: g.clone(), word: hyperpoly::document::word(&["x1^-1"]) }],
            pairings: vec![PairingDecl { from: "A".into(), to: "B".into(), word: hyperpoly::document::word(&[&g]) }],
            witness: WitnessDecl { point, height },
        });
    runner(256)
        .run(&docs, |doc| {
            let back = SpecDocument::from_json(&doc.to_json()).unwrap();
            prop_assert_eq!(back, doc);
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    for kind in [PairingKind::Phi1, PairingKind::Phi2] {
        let doc = p_document(kind);
        if SpecDocument::from_json(&doc.to_json()).map_err(|e| e.to_string())? != doc {
            return Err("built-in document does not round-trip".into());
        }
    }
    Ok(())
}

fn properties() -> Outcome {
    let field = field_axioms();
    let lorentz = constructed_maps_are_lorentz();
    let involution = reflections_are_involutions();
    let order = vertex_order_independence();
    let round_trip = spec_round_trip();
    let mark = |ok: bool| if ok { "ok" } else { "FAIL" };
    let detail = format!(
        "field axioms (10⁴) {}, MᵀJM=J ({} maps + products) {}, involutions {}, vertex order {}, round-trip {}",
        mark(field.is_ok()),
        lorentz.as_ref().map_or(0, |n| *n),
        mark(lorentz.is_ok()),
        mark(involution.is_ok()),
        mark(order.is_ok()),
        mark(round_trip.is_ok()),
    );
    let errors: Vec<String> = [
        field.err(),
        lorentz.err(),
        involution.err(),
        order.err(),
        round_trip.err(),
    ]
    .into_iter()
    .flatten()
    .collect();
    if errors.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}: {}", errors.join("; ")))
    }
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        ("face census of P", face_census),
        ("ridge angle census", ridge_angles),
        ("Poincaré hypotheses for both pairings", poincare),
        ("torsion-freeness and solid angles", torsion),
        ("ends, cycle census, χ and volume", ends_and_volume),
        ("chains with n ≤ 4 blocks", chains),
        ("precisely invariant hyperplanes", invariance),
        ("property suites", properties),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let outcome = run();
        let ms = start.elapsed().as_millis();
        match &outcome {
            Ok(d) => println!("criterion {}: PASS  {name} [{d}] ({ms} ms)", i + 1),
            Err(d) => {
                println!("criterion {}: FAIL  {name} [{d}] ({ms} ms)", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
