//! Precise invariance of a hyperplane under a subgroup.
//!
//! `H` is precisely invariant under `J ⊂ G` when `j(H) = H` for `j ∈ J` and
//! `g(H) ∩ H = ∅` otherwise. Three checks suffice:
//!
//! 1. `H ∩ P` with the restrictions of the generators of `J` passes the
//!    Poincaré checks one dimension down;
//! 2. no side of `P` lying on `H` is paired by a map preserving `H`;
//! 3. along the edge chase of every ridge in `H`, each partial product
//!    `g_l ∘ … ∘ g_1` that lands on another ridge in `H` preserves `H`.
//!
//! Condition 3 is decided by the exact matrix test. The angle sum
//! `θ_1 + … + θ_l + β − α` is reported alongside for comparison.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dataset::PairingKind;
use crate::document::{
    word, Compiled, DocumentError, GeneratorDecl, HyperplaneDecl, PairingDecl, SpecDocument,
    WordContext, WordItem,
};
use crate::field::ExactField;
use crate::lorentz::{recognize_cosine, AnglePi, HyperplaneVector, LorentzMap, MinkowskiVector, PlaneSide};
use crate::pairing::{chase_from, verify_poincare, PairingError, SidePairing, VerificationReport};
use crate::polytope::{Polyhedron, PolytopeError};
use crate::scalar::QSqrt2;
use crate::topology::{block_shift, ChainSpec, TopologyError};

#[derive(Debug, Error)]
pub enum InvarianceError {
    #[error("unknown invariance case {0}")]
    UnknownCase(String),
    #[error("the polyhedron has no side-pairing")]
    NoPairing,
    #[error("block {block} is out of range for a chain of {n} blocks")]
    Block { block: usize, n: usize },
    #[error("side {0} has no counterpart in the chain")]
    UnknownChainSide(String),
    #[error(transparent)]
    Document(#[from] DocumentError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Pairing(#[from] PairingError),
    #[error(transparent)]
    Topology(#[from] TopologyError),
}

/// A hyperplane, generators of `J` as words over the pairing's generators,
/// and the side-pairing of `H ∩ P` as words over the generators of `J`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseDecl {
    pub name: String,
    #[serde(skip, default = "default_kind")]
    pub pairing: PairingKind,
    pub hyperplane: HyperplaneDecl,
    pub generators: Vec<GeneratorDecl>,
    /// Side names may be any ambient side cutting out the restricted side.
    pub induced: Vec<PairingDecl>,
}

fn default_kind() -> PairingKind {
    PairingKind::Phi1
}

/// A case together with the polyhedron it refers to, as read from a file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseFile {
    pub document: SpecDocument,
    pub case: CaseDecl,
}

impl CaseDecl {
    /// The same case with one generator of `J` and every induced pairing
    /// using it removed.
    pub fn without_generator(&self, name: &str) -> CaseDecl {
        let uses = |d: &PairingDecl| {
            d.word
                .iter()
                .any(|w| matches!(w, WordItem::Name(n) if n.trim_end_matches("^-1") == name))
        };
        CaseDecl {
            name: format!("{} without {name}", self.name),
            generators: self
                .generators
                .iter()
                .filter(|g| g.name != name)
                .cloned()
                .collect(),
            induced: self.induced.iter().filter(|d| !uses(d)).cloned().collect(),
            ..self.clone()
        }
    }

    /// `(z1^{i−1} H, z1^{i−1} J z1^{−(i−1)})` inside the chain, for block `i`.
    ///
    /// Generator words are rewritten to the block's own copies, so every
    /// word must use pairing generators of `P` other than `z1`.
    pub fn conjugated(&self, chain: &ChainSpec, block: usize) -> Result<CaseDecl, InvarianceError> {
        if block == 0 || block > chain.n() {
            return Err(InvarianceError::Block {
                block,
                n: chain.n(),
            });
        }
        let (_, aliases) = chain.layout()?;
        let canonical: BTreeMap<&str, &str> = aliases
            .iter()
            .flat_map(|(c, locals)| locals.iter().map(move |l| (l.as_str(), c.as_str())))
            .collect();
        let side = |name: &str| -> Result<String, InvarianceError> {
            canonical
                .get(format!("{name}.{block}").as_str())
                .map(|s| s.to_string())
                .ok_or_else(|| InvarianceError::UnknownChainSide(name.to_string()))
        };
        let rename = |item: &WordItem| match item {
            WordItem::Name(n) => WordItem::Name(match n.strip_suffix("^-1") {
                Some(base) => format!("{base}.{block}^-1"),
                None => format!("{n}.{block}"),
            }),
            other => other.clone(),
        };
        Ok(CaseDecl {
            name: format!("{}@{}#{block}", self.name, chain.name()),
            pairing: chain.pattern[block - 1],
            hyperplane: self
                .hyperplane
                .translated(&format!("{}.{block}", self.hyperplane.name), &block_shift(block)),
            generators: self
                .generators
                .iter()
                .map(|g| GeneratorDecl {
                    name: g.name.clone(),
                    word: g.word.iter().map(rename).collect(),
                })
                .collect(),
            induced: self
                .induced
                .iter()
                .map(|d| {
                    Ok(PairingDecl {
                        from: side(&d.from)?,
                        to: side(&d.to)?,
                        word: d.word.clone(),
                    })
                })
                .collect::<Result<_, InvarianceError>>()?,
        })
    }
}

pub fn builtin_case_names() -> &'static [&'static str] {
    &["H-z0", "H-Z1", "H-diag1", "H-diag2"]
}

/// A built-in case over the first pairing.
pub fn builtin_case(name: &str) -> Option<CaseDecl> {
    builtin_case_for(name, PairingKind::Phi1)
}

fn generator(name: &str, items: &[&str]) -> GeneratorDecl {
    GeneratorDecl {
        name: name.to_string(),
        word: word(items),
    }
}

fn induced(from: &str, to: &str, g: &str) -> PairingDecl {
    PairingDecl {
        from: from.to_string(),
        to: to.to_string(),
        word: word(&[g]),
    }
}

fn plane(normal: [i64; 3], offset: QSqrt2) -> HyperplaneDecl {
    HyperplaneDecl::plane(
        "H",
        normal.iter().map(|&v| QSqrt2::from(v)).collect(),
        offset,
        PlaneSide::Negative,
    )
}

/// Generators named after themselves.
fn plain(names: &[&str]) -> Vec<GeneratorDecl> {
    names.iter().map(|n| generator(n, &[n])).collect()
}

pub fn builtin_case_for(name: &str, kind: PairingKind) -> Option<CaseDecl> {
    let (hyperplane, generators, pairs): (HyperplaneDecl, Vec<GeneratorDecl>, Vec<PairingDecl>) =
        match name {
            "H-z0" => (
                plane([0, 0, 1], QSqrt2::from(0)),
                plain(&["x1", "y1", "a3", "a4"]),
                vec![
                    induced("X1", "X1'", "x1"),
                    induced("Y1", "Y1'", "y1"),
                    induced("A3", "A3'", "a3"),
                    induced("A4", "A4'", "a4"),
                ],
            ),
            "H-Z1" => (
                plane([0, 0, 1], QSqrt2::from_parts(0, 1, -2, 1)),
                plain(&["x1", "y1", "a1", "a2"]),
                vec![
                    induced("X1", "X1'", "x1"),
                    induced("Y1", "Y1'", "y1"),
                    induced("A1", "A1'", "a1"),
                    induced("A2", "A2'", "a2"),
                ],
            ),
            "H-diag1" => {
                let mut gens = plain(&["a2", "a4", "a6", "b1", "d2", "d4", "z1"]);
                gens.push(generator("y1x1", &["y1", "x1"]));
                let (d2, d4) = match kind {
                    PairingKind::Phi1 => ("D2'", "D4'"),
                    PairingKind::Phi2 => ("D4'", "D2'"),
                };
                (
                    plane([1, -1, 0], QSqrt2::from(0)),
                    gens,
                    vec![
                        induced("X1", "X1'", "y1x1"),
                        induced("Z1", "Z1'", "z1"),
                        induced("A2", "A2'", "a2"),
                        induced("A4", "A4'", "a4"),
                        induced("A6", "A6'", "a6"),
                        induced("B1", "B1'", "b1"),
                        induced("D2", d2, "d2"),
                        induced("D4", d4, "d4"),
                    ],
                )
            }
            "H-diag2" => {
                let mut gens = plain(&["a1", "a3", "a5", "b1", "d1", "d3", "z1"]);
                gens.push(generator("y1^-1x1", &["y1^-1", "x1"]));
                (
                    plane([1, 1, 0], QSqrt2::from(0)),
                    gens,
                    vec![
                        induced("X1", "X1'", "y1^-1x1"),
                        induced("Z1", "Z1'", "z1"),
                        induced("A1", "A1'", "a1"),
                        induced("A3", "A3'", "a3"),
                        induced("A5", "A5'", "a5"),
                        induced("B1", "B1'", "b1"),
                        induced("D1", "D1'", "d1"),
                        induced("D3", "D3'", "d3"),
                    ],
                )
            }
            _ => return None,
        };
    Some(CaseDecl {
        name: name.to_string(),
        pairing: kind,
        hyperplane,
        generators,
        induced: pairs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorCheck {
    pub name: String,
    pub preserves: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Condition1Report {
    pub passed: bool,
    /// Names of the sides of `H ∩ P`.
    pub sides: Vec<String>,
    /// Induced pairings that are not side-pairings of `H ∩ P`.
    pub mismatches: Vec<String>,
    pub verification: Option<VerificationReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SideOnHyperplane {
    pub side: String,
    pub partner: String,
    pub label: String,
    pub preserves: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Condition2Report {
    pub passed: bool,
    pub sides: Vec<SideOnHyperplane>,
}

/// One pair of ridges `E = E_1` and `E_{l+1}` of a chase, both in `H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Condition3Instance {
    /// `S_1∩R_1`.
    pub ridge: String,
    pub l: usize,
    /// `S_{l+1}∩R_{l+1}`.
    pub target: String,
    /// Whether `g_l ∘ … ∘ g_1` maps `H` to itself.
    pub preserves: bool,
    /// `θ_1 + … + θ_l + β − α` with `β` measured at `S_{l+1}`; absent if an
    /// angle is not recognized.
    pub angle_sum: Option<AnglePi>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Condition3Report {
    pub passed: bool,
    pub instances: Vec<Condition3Instance>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvarianceReport {
    pub case: String,
    pub generators: Vec<GeneratorCheck>,
    pub condition_1: Condition1Report,
    pub condition_2: Condition2Report,
    pub condition_3: Condition3Report,
    pub passed: bool,
    /// On success `H/J` is an embedded totally geodesic hypersurface.
    pub embedded_hypersurface: bool,
}

/// `H ∩ P` is a fundamental polyhedron for `J` acting on `H`, with
/// `induced` giving `(from, to, label, map)` in ambient coordinates.
pub fn check_condition_1<F: ExactField>(
    p: &Polyhedron<F>,
    h: &HyperplaneVector<F>,
    induced: &[(String, String, String, LorentzMap<F>)],
) -> Result<Condition1Report, InvarianceError> {
    let restriction = p.restrict(h)?;
    let q = &restriction.polyhedron;
    let sides: Vec<String> = q.sides().iter().map(|s| s.name.clone()).collect();
    let resolve = |name: &str| {
        restriction
            .sources
            .iter()
            .position(|m| m.iter().any(|&s| p.side(s).name == name))
    };
    let mut mismatches = Vec::new();
    let mut pairs = Vec::new();
    for (from, to, label, g) in induced {
        let (Some(s), Some(t)) = (resolve(from), resolve(to)) else {
            mismatches.push(format!("{label}: {from} → {to} is not a pair of sides of H ∩ P"));
            continue;
        };
        match restriction.restrict_map(g) {
            Ok(m) => pairs.push((sides[s].clone(), sides[t].clone(), label.clone(), m)),
            Err(PolytopeError::MapDoesNotPreserve) => {
                mismatches.push(format!("{label} does not preserve H"))
            }
            Err(e) => return Err(e.into()),
        }
    }
    let failed = |mismatches| Condition1Report {
        passed: false,
        sides: sides.clone(),
        mismatches,
        verification: None,
    };
    if !mismatches.is_empty() {
        return Ok(failed(mismatches));
    }
    let phi = match SidePairing::new(q, pairs) {
        Ok(phi) => phi,
        Err(
            e @ (PairingError::Unpaired(_) | PairingError::PairedTwice(_) | PairingError::UnknownSide(_)),
        ) => return Ok(failed(vec![e.to_string()])),
        Err(e) => return Err(e.into()),
    };
    let verification = verify_poincare(q, &phi)?;
    let mismatches = verification
        .validation
        .failures()
        .iter()
        .map(|c| format!("{} does not pair {} with {}", c.label, c.side, c.partner))
        .collect();
    Ok(Condition1Report {
        passed: verification.passed(),
        sides,
        mismatches,
        verification: Some(verification),
    })
}

/// Every side on `H` is paired by a map moving `H` off itself.
pub fn check_condition_2<F: ExactField>(
    p: &Polyhedron<F>,
    phi: &SidePairing<F>,
    h: &HyperplaneVector<F>,
) -> Condition2Report {
    let sides: Vec<SideOnHyperplane> = phi
        .entries()
        .iter()
        .filter(|e| h.same_hyperplane(&p.side(e.side).e))
        .map(|e| SideOnHyperplane {
            side: p.side(e.side).name.clone(),
            partner: p.side(e.partner).name.clone(),
            label: e.label.clone(),
            preserves: h.same_hyperplane(&e.map.apply_hyperplane(h)),
        })
        .collect();
    Condition2Report {
        passed: sides.iter().all(|s| !s.preserves),
        sides,
    }
}

/// Angle of the line `H` from the ray `S`, turning towards `R` through the
/// wedge of `P` at `S ∩ R ⊂ H`, modulo `π`.
pub fn line_angle<F: ExactField>(
    h: &MinkowskiVector<F>,
    s: &HyperplaneVector<F>,
    r: &HyperplaneVector<F>,
) -> Option<AnglePi> {
    // In the normal plane of the ridge, with h = ±(−sin φ, cos φ):
    // c1 = ±cos φ and c2 − c1 cos θ = ±sin φ sin θ.
    let c1 = -h.form(&s.e);
    let c2 = h.form(&r.e);
    let cos_theta = -s.e.form(&r.e);
    let sine = c2 - c1.clone() * &cos_theta;
    if sine.is_zero() {
        return Some(AnglePi::zero());
    }
    if c1.is_zero() {
        return Some(AnglePi::new(1, 2));
    }
    let acute = recognize_cosine(&c1.abs_exact())?;
    Some(if c1.gt_zero() == sine.gt_zero() {
        acute
    } else {
        AnglePi::new(1, 1) - acute
    })
}

fn ridge_name<F: ExactField>(p: &Polyhedron<F>, s: usize, r: usize) -> String {
    format!("{}∩{}", p.side(s).name, p.side(r).name)
}

/// The edge chase test along every ridge of `P` contained in `H`, from both
/// carrier sides.
pub fn check_condition_3<F: ExactField>(
    p: &Polyhedron<F>,
    phi: &SidePairing<F>,
    h: &HyperplaneVector<F>,
) -> Result<Condition3Report, InvarianceError> {
    let lattice = p.face_lattice()?;
    let ridges = lattice.faces(p.dim() - 2);
    let in_h = |r: usize| {
        ridges[r]
            .vertices
            .iter()
            .all(|&v| lattice.vertices[v].point.x.form(&h.e).is_zero())
    };
    let mut instances = Vec::new();
    for start in (0..ridges.len()).filter(|&r| in_h(r)) {
        for &first in &ridges[start].carriers {
            let steps = chase_from(p, phi, start, first)?;
            let q = steps.len();
            let (s1, r1) = (steps[0].0.side, steps[0].0.other);
            let alpha = line_angle(&h.e, p.side(s1), p.side(r1));
            let mut composed = LorentzMap::identity(p.dim());
            let mut theta = AnglePi::zero();
            for l in 1..=q {
                let (step, g) = &steps[l - 1];
                composed = g.compose(&composed);
                theta = theta + step.angle;
                let next = &steps[l % q].0;
                if !in_h(next.ridge) {
                    continue;
                }
                let beta = line_angle(&h.e, p.side(next.side), p.side(next.other));
                instances.push(Condition3Instance {
                    ridge: ridge_name(p, s1, r1),
                    l,
                    target: ridge_name(p, next.side, next.other),
                    preserves: h.same_hyperplane(&composed.apply_hyperplane(h)),
                    angle_sum: alpha.zip(beta).map(|(a, b)| theta + b - a),
                });
            }
        }
    }
    Ok(Condition3Report {
        passed: instances.iter().all(|i| i.preserves),
        instances,
    })
}

/// All three conditions plus the check that every generator of `J`
/// preserves `H`.
pub fn check_precisely_invariant<F: ExactField>(
    name: &str,
    p: &Polyhedron<F>,
    phi: &SidePairing<F>,
    h: &HyperplaneVector<F>,
    generators: &[(String, LorentzMap<F>)],
    induced: &[(String, String, String, LorentzMap<F>)],
) -> Result<InvarianceReport, InvarianceError> {
    let generators: Vec<GeneratorCheck> = generators
        .iter()
        .map(|(name, g)| GeneratorCheck {
            name: name.clone(),
            preserves: h.same_hyperplane(&g.apply_hyperplane(h)),
        })
        .collect();
    let condition_1 = check_condition_1(p, h, induced)?;
    let condition_2 = check_condition_2(p, phi, h);
    let condition_3 = check_condition_3(p, phi, h)?;
    let passed = generators.iter().all(|g| g.preserves)
        && condition_1.passed
        && condition_2.passed
        && condition_3.passed;
    Ok(InvarianceReport {
        case: name.to_string(),
        generators,
        condition_1,
        condition_2,
        condition_3,
        passed,
        embedded_hypersurface: passed,
    })
}

/// Runs a case against a compiled polyhedron and pairing. Generators of `J`
/// are words over the pairing's context; induced pairings may only use
/// generators of `J`.
pub fn run_case(compiled: &Compiled, case: &CaseDecl) -> Result<InvarianceReport, InvarianceError> {
    let ctx = &compiled.context;
    let phi = compiled.pairing.as_ref().ok_or(InvarianceError::NoPairing)?;
    let h = case.hyperplane.compile(ctx.dim)?;
    let mut subgroup = WordContext {
        dim: ctx.dim,
        ..WordContext::default()
    };
    let mut generators = Vec::new();
    for g in &case.generators {
        let map = ctx.compile(&g.word)?.with_word(vec![g.name.clone()]);
        if subgroup.generators.insert(g.name.clone(), map.clone()).is_some() {
            return Err(DocumentError::DuplicateName(g.name.clone()).into());
        }
        generators.push((g.name.clone(), map));
    }
    let induced = case
        .induced
        .iter()
        .map(|d| {
            Ok((
                d.from.clone(),
                d.to.clone(),
                crate::document::word_label(&d.word),
                subgroup.compile(&d.word)?,
            ))
        })
        .collect::<Result<Vec<_>, InvarianceError>>()?;
    check_precisely_invariant(&case.name, &compiled.polyhedron, phi, &h, &generators, &induced)
}

/// Loads and runs a built-in case over the given pairing.
pub fn run_builtin(name: &str, kind: PairingKind) -> Result<InvarianceReport, InvarianceError> {
    let case = builtin_case_for(name, kind).ok_or_else(|| InvarianceError::UnknownCase(name.to_string()))?;
    let compiled = crate::dataset::p_document(kind).compile()?;
    run_case(&compiled, &case)
}
