//! Built-in polyhedra, pairings and invariance cases.
//!
//! The polyhedron `P` lives in the upper half-space model of H^4 over the box
//! `|x|, |y| ≤ 2`, `|z| ≤ 2√2`, outside 30 spheres of radius `√2`:
//!
//! * `A`: centers `(±1, ±1, j·2√2)`, `j ∈ {−1, 0, 1}`;
//! * `B`: centers `(0, 0, ±√2)`;
//! * `C`: centers `(j, k, ±√2)` with exactly one of `j, k` zero, `j, k ∈ {−2, 0, 2}`;
//! * `D`: centers `(±2, ±2, ±√2)`.
//!
//! The letter, index and prime attached to each sphere is fixed by the
//! vertex incidences and edge cycles it has to reproduce; see
//! [`sphere_labels`].

use std::collections::BTreeMap;

use thiserror::Error;

use crate::document::{
    word, Compiled, DocumentError, GeneratorDecl, HyperplaneDecl, PairingDecl, Primitive,
    SpecDocument, WitnessDecl, WordItem,
};
use crate::invariance::CaseDecl;
use crate::lorentz::{PlaneSide, SphereSide};
use crate::scalar::QSqrt2;
use crate::topology::ChainSpec;

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("unknown builtin {0}")]
    UnknownName(String),
    #[error("bad chain name {0}: expected chain:<n>:<pattern of 1s and 2s>")]
    BadChain(String),
    #[error(transparent)]
    Document(#[from] DocumentError),
}

/// Which of the two side-pairings of `P`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairingKind {
    Phi1,
    Phi2,
}

impl PairingKind {
    pub fn digit(self) -> char {
        match self {
            PairingKind::Phi1 => '1',
            PairingKind::Phi2 => '2',
        }
    }

    pub fn from_digit(c: char) -> Option<Self> {
        match c {
            '1' => Some(PairingKind::Phi1),
            '2' => Some(PairingKind::Phi2),
            _ => None,
        }
    }
}

fn int(v: i64) -> QSqrt2 {
    QSqrt2::from(v)
}

/// `a + b√2` with integer parts.
fn qs(a: i64, b: i64) -> QSqrt2 {
    QSqrt2::from_parts(a, 1, b, 1)
}

fn v3(x: i64, y: i64, z: QSqrt2) -> Vec<QSqrt2> {
    vec![int(x), int(y), z]
}

/// `(name, center)` of every sphere side, radius `√2`.
///
/// Primed `A` spheres are the images `A_j′ = q_l(A_j)` with `l ≡ j (mod 2)`;
/// primed `C` spheres sit above their partners; `D_k′ = q_1 t_0 (D_k)`.
pub fn sphere_labels() -> Vec<(&'static str, Vec<QSqrt2>)> {
    let (lo, mid, hi) = (qs(0, -2), qs(0, 0), qs(0, 2));
    let (b_lo, b_hi) = (qs(0, -1), qs(0, 1));
    vec![
        ("A1", v3(-1, 1, lo.clone())),
        ("A1'", v3(1, -1, lo.clone())),
        ("A2", v3(-1, -1, lo.clone())),
        ("A2'", v3(1, 1, lo.clone())),
        ("A3", v3(-1, 1, mid.clone())),
        ("A3'", v3(1, -1, mid.clone())),
        ("A4", v3(-1, -1, mid.clone())),
        ("A4'", v3(1, 1, mid)),
        ("A5", v3(1, -1, hi.clone())),
        ("A5'", v3(-1, 1, hi.clone())),
        ("A6", v3(-1, -1, hi.clone())),
        ("A6'", v3(1, 1, hi)),
        ("B1", v3(0, 0, b_lo.clone())),
        ("B1'", v3(0, 0, b_hi.clone())),
        ("C1", v3(0, 2, b_lo.clone())),
        ("C1'", v3(0, 2, b_hi.clone())),
        ("C2", v3(2, 0, b_lo.clone())),
        ("C2'", v3(2, 0, b_hi.clone())),
        ("C3", v3(0, -2, b_lo.clone())),
        ("C3'", v3(0, -2, b_hi.clone())),
        ("C4", v3(-2, 0, b_lo.clone())),
        ("C4'", v3(-2, 0, b_hi.clone())),
        ("D1", v3(-2, 2, b_lo.clone())),
        ("D1'", v3(2, -2, b_hi.clone())),
        ("D2", v3(2, 2, b_lo.clone())),
        ("D2'", v3(2, 2, b_hi.clone())),
        ("D3", v3(2, -2, b_lo.clone())),
        ("D3'", v3(-2, 2, b_hi.clone())),
        ("D4", v3(-2, -2, b_lo)),
        ("D4'", v3(-2, -2, b_hi)),
    ]
}

/// The 36 sides of `P`: six box planes and 30 spheres.
pub fn p_hyperplanes() -> Vec<HyperplaneDecl> {
    let axis = |i: usize| {
        let mut n = vec![int(0); 3];
        n[i] = int(1);
        n
    };
    let mut out = vec![
        HyperplaneDecl::plane("X1", axis(0), int(-2), PlaneSide::Positive),
        HyperplaneDecl::plane("X1'", axis(0), int(2), PlaneSide::Negative),
        HyperplaneDecl::plane("Y1", axis(1), int(-2), PlaneSide::Positive),
        HyperplaneDecl::plane("Y1'", axis(1), int(2), PlaneSide::Negative),
        HyperplaneDecl::plane("Z1", axis(2), qs(0, -2), PlaneSide::Positive),
        HyperplaneDecl::plane("Z1'", axis(2), qs(0, 2), PlaneSide::Negative),
    ];
    for (name, c) in sphere_labels() {
        out.push(HyperplaneDecl::sphere(name, c, int(2), SphereSide::Exterior));
    }
    out
}

fn gen(name: &str, items: Vec<WordItem>) -> GeneratorDecl {
    GeneratorDecl {
        name: name.to_string(),
        word: items,
    }
}

fn prim(p: Primitive) -> Vec<WordItem> {
    vec![WordItem::Primitive(p)]
}

/// The auxiliary Euclidean maps `q0, q1, q2, s1, s2, t0`.
pub fn auxiliary_generators() -> Vec<GeneratorDecl> {
    let m = |rows: [[i64; 3]; 3]| -> Vec<Vec<QSqrt2>> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    };
    vec![
        gen(
            "q0",
            prim(Primitive::ReflectPlane {
                normal: v3(0, 0, int(1)),
                offset: int(0),
            }),
        ),
        gen(
            "q1",
            prim(Primitive::ReflectPlane {
                normal: v3(1, -1, int(0)),
                offset: int(0),
            }),
        ),
        gen(
            "q2",
            prim(Primitive::ReflectPlane {
                normal: v3(1, 1, int(0)),
                offset: int(0),
            }),
        ),
        gen(
            "s1",
            prim(Primitive::LinearOrthogonal(m([[0, -1, 0], [-1, 0, 0], [0, 0, -1]]))),
        ),
        gen(
            "s2",
            prim(Primitive::LinearOrthogonal(m([[0, 1, 0], [1, 0, 0], [0, 0, -1]]))),
        ),
        gen("t0", prim(Primitive::Translate(v3(0, 0, qs(0, 2))))),
    ]
}

/// Pairing generators shared by both pairings: `x1, y1, z1, a1..a6`.
fn shared_generators() -> Vec<GeneratorDecl> {
    let mut out = vec![
        gen("x1", prim(Primitive::Translate(v3(4, 0, int(0))))),
        gen("y1", prim(Primitive::Translate(v3(0, 4, int(0))))),
        gen("z1", word(&["t0", "t0"])),
    ];
    for j in 1..=6 {
        let q = if j % 2 == 1 { "q1" } else { "q2" };
        out.push(gen(&format!("a{j}"), word(&[q, &format!("inv:A{j}")])));
    }
    out
}

/// Generators `b1, c1..c4, d1..d4` and the sides they pair.
fn specific_generators(kind: PairingKind) -> (Vec<GeneratorDecl>, Vec<(String, String, String)>) {
    let mut gens = Vec::new();
    let mut pairs = Vec::new();
    let mut add = |g: GeneratorDecl, from: String, to: String| {
        pairs.push((from, to, g.name.clone()));
        gens.push(g);
    };
    match kind {
        PairingKind::Phi1 => {
            add(gen("b1", word(&["q1", "t0", "inv:B1"])), "B1".into(), "B1'".into());
            for k in 1..=4 {
                add(
                    gen(&format!("c{k}"), word(&["q0", &format!("inv:C{k}")])),
                    format!("C{k}"),
                    format!("C{k}'"),
                );
            }
            for k in 1..=4 {
                add(
                    gen(&format!("d{k}"), word(&["q1", "t0", &format!("inv:D{k}")])),
                    format!("D{k}"),
                    format!("D{k}'"),
                );
            }
        }
        PairingKind::Phi2 => {
            add(gen("b1", word(&["q0", "inv:B1"])), "B1".into(), "B1'".into());
            for (k, to) in [(1, 2), (2, 1), (3, 4), (4, 3)] {
                add(
                    gen(&format!("c{k}"), word(&["q1", "t0", &format!("inv:C{k}")])),
                    format!("C{k}"),
                    format!("C{to}'"),
                );
            }
            for (k, to) in [(1, 1), (2, 4), (3, 3), (4, 2)] {
                let l = if k % 2 == 1 { 1 } else { 2 };
                add(
                    gen(
                        &format!("d{k}"),
                        word(&[&format!("s{l}"), &format!("q{l}"), &format!("inv:D{k}")]),
                    ),
                    format!("D{k}"),
                    format!("D{to}'"),
                );
            }
        }
    }
    (gens, pairs)
}

/// `P` with one of its two side-pairings.
pub fn p_document(kind: PairingKind) -> SpecDocument {
    let mut generators = auxiliary_generators();
    generators.extend(shared_generators());
    let (specific, specific_pairs) = specific_generators(kind);
    generators.extend(specific);
    let mut pairs: Vec<(String, String, String)> = vec![
        ("X1".into(), "X1'".into(), "x1".into()),
        ("Y1".into(), "Y1'".into(), "y1".into()),
        ("Z1".into(), "Z1'".into(), "z1".into()),
    ];
    for j in 1..=6 {
        pairs.push((format!("A{j}"), format!("A{j}'"), format!("a{j}")));
    }
    pairs.extend(specific_pairs);
    SpecDocument {
        dimension: 4,
        hyperplanes: p_hyperplanes(),
        generators,
        pairings: pairs
            .into_iter()
            .map(|(from, to, g)| PairingDecl {
                from,
                to,
                word: word(&[&g]),
            })
            .collect(),
        witness: p_witness(),
    }
}

/// The point `(0, 0, 0)` at height 3, above every sphere.
pub fn p_witness() -> WitnessDecl {
    WitnessDecl {
        point: v3(0, 0, int(0)),
        height: int(3),
    }
}

/// Names accepted by [`load`].
pub fn catalog() -> Vec<String> {
    let mut out: Vec<String> = ["P-phi1", "P-phi2"].iter().map(|s| s.to_string()).collect();
    out.push("chain:<n>:<pattern>".into());
    out.extend(crate::invariance::builtin_case_names().iter().map(|s| s.to_string()));
    out
}

/// A named built-in: the document, its compiled form and any invariance case.
#[derive(Clone, Debug)]
pub struct Bundle {
    pub name: String,
    pub document: SpecDocument,
    pub compiled: Compiled,
    pub case: Option<CaseDecl>,
}

pub fn parse_chain_name(name: &str) -> Result<ChainSpec, DatasetError> {
    let bad = || DatasetError::BadChain(name.to_string());
    let rest = name.strip_prefix("chain:").ok_or_else(bad)?;
    let (n, pattern) = rest.split_once(':').ok_or_else(bad)?;
    let n: usize = n.parse().map_err(|_| bad())?;
    ChainSpec::parse(n, pattern).ok_or_else(bad)
}

pub fn load(name: &str) -> Result<Bundle, DatasetError> {
    let (document, case) = match name {
        "P-phi1" => (p_document(PairingKind::Phi1), None),
        "P-phi2" => (p_document(PairingKind::Phi2), None),
        _ if name.starts_with("chain:") => (parse_chain_name(name)?.document(), None),
        _ => match crate::invariance::builtin_case(name) {
            Some(case) => (p_document(case.pairing), Some(case)),
            None => return Err(DatasetError::UnknownName(name.to_string())),
        },
    };
    let compiled = document.compile()?;
    Ok(Bundle {
        name: name.to_string(),
        document,
        compiled,
        case,
    })
}

/// Index of every side name in the `P` document, for quick lookups in tests.
pub fn p_side_names() -> BTreeMap<String, usize> {
    p_hyperplanes()
        .iter()
        .enumerate()
        .map(|(i, h)| (h.name.clone(), i))
        .collect()
}
