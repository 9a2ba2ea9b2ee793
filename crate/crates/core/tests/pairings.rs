use hyperpoly::dataset::{p_document, PairingKind};
use hyperpoly::lorentz::{
    hyperplane_from_plane, hyperplane_from_sphere, interior_point, AnglePi, LorentzMap, PlaneSide,
    SphereSide,
};
use hyperpoly::pairing::{
    chase_ridges, check_horospheres, check_ridge_condition, solid_angle, verify_poincare, ChaseStep,
    CuspArc, CuspGraph, RidgeCycle, VerificationReport,
};
use hyperpoly::polytope::Polyhedron;
use hyperpoly::{QSqrt2, Rational};
use num_bigint::BigInt;
use num_rational::Ratio;

fn report(kind: PairingKind) -> VerificationReport {
    let c = p_document(kind).compile().unwrap();
    verify_poincare(&c.polyhedron, c.pairing.as_ref().unwrap()).unwrap()
}

#[test]
fn both_pairings_satisfy_the_poincare_hypotheses() {
    for kind in [PairingKind::Phi1, PairingKind::Phi2] {
        let r = report(kind);
        assert!(r.passed(), "{kind:?}");
        assert!(r.ridge_cycles.iter().all(|c| c.k == Some(1) && c.m == Some(1)));
        assert!(r.ridge_cycles.iter().all(|c| c.q == 4 || c.q == 8));
        assert!(r.horospheres.as_ref().unwrap().passed);
        assert!(r.ridge_condition.as_ref().unwrap().warnings.is_empty());
    }
}

#[test]
fn ridge_cycles_of_phi1() {
    let c = p_document(PairingKind::Phi1).compile().unwrap();
    let cycles = chase_ridges(&c.polyhedron, c.pairing.as_ref().unwrap()).unwrap();
    let quarter: Vec<&RidgeCycle> = cycles
        .iter()
        .filter(|c| c.steps[0].angle == AnglePi::new(1, 4))
        .collect();
    assert_eq!(quarter.len(), 3);
    assert!(quarter.iter().all(|c| c.q == 8));
    let right = cycles.len() - quarter.len();
    assert_eq!(right, 36);
    assert!(cycles.iter().all(|c| c.angle_sum == AnglePi::new(2, 1)));
    let covered: usize = cycles.iter().map(|c| c.ridges().len()).sum();
    assert_eq!(covered, 168);
}

#[test]
fn torsion_of_phi1() {
    let r = report(PairingKind::Phi1);
    let t = r.torsion.as_ref().unwrap();
    assert!(t.passed);
    let mut vertices: Vec<(usize, Ratio<i64>)> = t
        .cycles
        .iter()
        .filter(|c| c.dim == 0)
        .map(|c| {
            assert!(c.omegas.iter().all(|w| *w == c.omegas[0]));
            (c.members.len(), c.omegas[0])
        })
        .collect();
    vertices.sort();
    assert_eq!(vertices, [(16, Ratio::new(1, 16)), (32, Ratio::new(1, 32))]);

    let edges: Vec<(usize, Ratio<i64>)> = t
        .cycles
        .iter()
        .filter(|c| c.dim == 1)
        .map(|c| {
            assert!(c.omegas.iter().all(|w| *w == c.omegas[0]));
            (c.members.len(), c.omegas[0])
        })
        .collect();
    let mut sizes: Vec<usize> = edges.iter().map(|e| e.0).collect();
    sizes.sort_unstable();
    // five expected cycles plus the vertical edge X1 ∩ Y1 ∩ Z1 up to ∞
    assert_eq!(sizes, [8, 8, 8, 8, 8, 16]);
    for (n, w) in edges {
        assert_eq!(w * Ratio::from_integer(n as i64), Ratio::from_integer(1));
    }
    assert!(t.cycles.iter().all(|c| c.sum == Ratio::from_integer(1)));
}

#[test]
fn identity_in_place_of_b1_is_rejected() {
    let c = p_document(PairingKind::Phi1).compile().unwrap();
    let b1 = c.polyhedron.side_index("B1").unwrap();
    let phi = c.pairing.unwrap().with_map(b1, LorentzMap::identity(4));
    let r = verify_poincare(&c.polyhedron, &phi).unwrap();
    assert!(!r.validation.passed());
    assert!(!r.passed());
    assert!(r.ridge_condition.is_none());
}

fn step(ridge: usize, angle: AnglePi) -> ChaseStep {
    ChaseStep {
        ridge,
        side: 0,
        other: 1,
        label: format!("g{ridge}"),
        angle,
    }
}

fn square(angles: [AnglePi; 4]) -> RidgeCycle {
    let steps: Vec<ChaseStep> = angles.iter().enumerate().map(|(i, &a)| step(i, a)).collect();
    RidgeCycle {
        q: 4,
        k: Some(1),
        angle_sum: angles.iter().fold(AnglePi::zero(), |s, &a| s + a),
        steps,
    }
}

#[test]
fn perturbed_square_fails_the_ridge_condition() {
    let right = AnglePi::new(1, 2);
    let good = square([right; 4]);
    assert_eq!(good.m(), Some(1));
    assert!(check_ridge_condition(std::slice::from_ref(&good)).passed);

    let bad = square([right, right, right, AnglePi::new(1, 3)]);
    assert_eq!(bad.m(), None);
    let report = check_ridge_condition(&[good, bad]);
    assert!(!report.passed);
    assert_eq!(report.m, [Some(1), None]);

    let twice = RidgeCycle {
        k: Some(2),
        angle_sum: AnglePi::new(2, 1),
        ..square([AnglePi::new(1, 4); 4])
    };
    let report = check_ridge_condition(&[twice]);
    assert!(report.passed);
    assert_eq!(report.warnings, [0]);
}

#[test]
fn inconsistent_horosphere_scales() {
    let q = QSqrt2::from;
    let arc = |source, target, scale| CuspArc {
        source,
        side: 0,
        target: Some(target),
        scale,
    };
    let good = CuspGraph {
        nodes: vec![0, 1],
        arcs: vec![arc(0, 1, q(2)), arc(1, 0, QSqrt2::from_parts(1, 2, 0, 1))],
    };
    let r = good.check();
    assert!(r.passed);
    assert_eq!(r.components, 1);

    let bad = CuspGraph {
        nodes: vec![0, 1],
        arcs: vec![arc(0, 1, q(2)), arc(1, 0, q(1))],
    };
    let r = bad.check();
    assert!(!r.passed);
    assert!(!r.inconsistent_arcs.is_empty());

    let dangling = CuspGraph {
        nodes: vec![0],
        arcs: vec![CuspArc { source: 0, side: 0, target: None, scale: q(1) }],
    };
    assert_eq!(dangling.check().missing_targets, [0]);
}

#[test]
fn horospheres_of_p() {
    let c = p_document(PairingKind::Phi2).compile().unwrap();
    let r = check_horospheres(&c.polyhedron, c.pairing.as_ref().unwrap()).unwrap();
    assert!(r.passed);
    assert_eq!(r.components, 8);
}

#[test]
fn right_angled_vertex_cone_in_dimension_four() {
    let q = |n: i64| Rational::from_integer(BigInt::from(n));
    let e = |i: usize| {
        let mut v = vec![q(0); 3];
        v[i] = q(1);
        v
    };
    let mut sides = Vec::new();
    for i in 0..3 {
        let name = ["x", "y", "z"][i];
        sides.push(hyperplane_from_plane(&format!("{name}0"), &e(i), &q(0), PlaneSide::Positive).unwrap());
        sides.push(hyperplane_from_plane(&format!("{name}1"), &e(i), &q(1), PlaneSide::Negative).unwrap());
    }
    sides.push(hyperplane_from_sphere("s", &[q(0), q(0), q(0)], &q(1), SphereSide::Exterior).unwrap());
    let half = Rational::new(BigInt::from(1), BigInt::from(2));
    let p = Polyhedron::new(4, sides, interior_point(&[half.clone(), half.clone(), half], &q(2))).unwrap();
    let lattice = p.face_lattice().unwrap();
    let corner = lattice
        .vertex_by_point(&interior_point(&[q(0), q(0), q(0)], &q(1)))
        .expect("the origin at height 1 is a vertex");
    assert_eq!(lattice.vertices[corner].incident_sides.len(), 4);
    let omega = solid_angle(&p, lattice.face(0, corner), corner).unwrap();
    assert_eq!(omega, Ratio::new(1, 16));
}
