//! Ends, Euler characteristic and volume from cycle data, and the stacked
//! block polyhedra built from copies of `P`.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::dataset::{auxiliary_generators, p_document, p_hyperplanes, p_witness, PairingKind};
use crate::document::{
    word, Compiled, DocumentError, GeneratorDecl, HyperplaneDecl, PairingDecl, Primitive,
    Shape, SpecDocument, WordContext, WordItem,
};
use crate::pairing::{verify_poincare, FaceCycle, PairingError, VerificationReport};
use crate::polytope::Polyhedron;
use crate::scalar::QSqrt2;

#[derive(Debug, Error)]
pub enum TopologyError {
    #[error("volume is only defined here for dimension 4, got {0}")]
    Dimension(usize),
    #[error("chains need at least one block")]
    EmptyChain,
    #[error("blocks disagree on the map pairing {0}")]
    InconsistentMerge(String),
    #[error(transparent)]
    Document(#[from] DocumentError),
    #[error(transparent)]
    Pairing(#[from] PairingError),
}

/// Numbers of cycles of faces by dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleCensus {
    pub dim: usize,
    /// `c[i]` for `i = 0..=n`; `c[0]` counts finite-vertex cycles only.
    pub c: Vec<usize>,
    pub ideal_cycles: usize,
    pub members: Vec<Vec<FaceCycle>>,
}

impl CycleCensus {
    pub fn from_cycles(dim: usize, cycles: &[Vec<FaceCycle>]) -> Self {
        let mut c: Vec<usize> = cycles.iter().map(Vec::len).collect();
        let ideal = cycles
            .first()
            .map_or(0, |cs| cs.iter().filter(|c| c.ideal).count());
        if let Some(c0) = c.first_mut() {
            *c0 -= ideal;
        }
        CycleCensus {
            dim,
            c,
            ideal_cycles: ideal,
            members: cycles.to_vec(),
        }
    }

    pub fn from_report(report: &VerificationReport) -> Self {
        Self::from_cycles(report.dimension, &report.face_cycles)
    }
}

pub fn ends(census: &CycleCensus) -> usize {
    census.ideal_cycles
}

/// `Σ (−1)^i c[i]`, ideal vertex cycles excluded.
pub fn euler_characteristic(census: &CycleCensus) -> i64 {
    census
        .c
        .iter()
        .enumerate()
        .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum()
}

/// Volume in units of `4π²/3`, which for a hyperbolic 4-manifold is `χ`.
pub fn volume_units(census: &CycleCensus) -> Result<i64, TopologyError> {
    if census.dim != 4 {
        return Err(TopologyError::Dimension(census.dim));
    }
    Ok(euler_characteristic(census))
}

/// `n` blocks stacked in the `z` direction, each carrying one of the pairings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainSpec {
    pub pattern: Vec<PairingKind>,
}

impl ChainSpec {
    pub fn new(pattern: Vec<PairingKind>) -> Result<Self, TopologyError> {
        if pattern.is_empty() {
            return Err(TopologyError::EmptyChain);
        }
        Ok(ChainSpec { pattern })
    }

    /// Pattern string of `1`s and `2`s of length `n`.
    pub fn parse(n: usize, pattern: &str) -> Option<Self> {
        let p: Option<Vec<PairingKind>> = pattern.chars().map(PairingKind::from_digit).collect();
        let p = p?;
        (n >= 1 && p.len() == n).then_some(ChainSpec { pattern: p })
    }

    /// `k` blocks of the first pairing followed by `n − k` of the second.
    pub fn representative(n: usize, k: usize) -> Self {
        let mut pattern = vec![PairingKind::Phi1; k];
        pattern.extend(vec![PairingKind::Phi2; n - k]);
        ChainSpec { pattern }
    }

    pub fn n(&self) -> usize {
        self.pattern.len()
    }

    /// Number of blocks with the first pairing.
    pub fn k(&self) -> usize {
        self.pattern.iter().filter(|&&p| p == PairingKind::Phi1).count()
    }

    pub fn pattern_string(&self) -> String {
        self.pattern.iter().map(|p| p.digit()).collect()
    }

    pub fn name(&self) -> String {
        format!("chain:{}:{}", self.n(), self.pattern_string())
    }

    /// The stacked polyhedron `Q` and its pairing as a spec document.
    ///
    /// Block `i` is `P` shifted by `t0^{2(i−1)}`, its sides suffixed `.i`.
    /// Hyperplanes shared by adjacent blocks (the vertical box planes and the
    /// `A` spheres at each interface) become one side named after the first
    /// block; interface `Z` planes are dropped and the outer ones are paired
    /// by `t0^{2n}`.
    pub fn document(&self) -> SpecDocument {
        self.layout().expect("built-in blocks always merge consistently").0
    }

    /// The document plus, for every side of `Q`, the block sides it merges.
    pub fn layout(&self) -> Result<(SpecDocument, BTreeMap<String, Vec<String>>), TopologyError> {
        let n = self.n();
        let shift = block_shift;
        let interface = |name: &str, i: usize| {
            (name == "Z1'" && i < n) || (name == "Z1" && i > 1)
        };
        let mut hyperplanes: Vec<HyperplaneDecl> = Vec::new();
        let mut canonical: BTreeMap<String, String> = BTreeMap::new();
        let mut aliases: BTreeMap<String, Vec<String>> = BTreeMap::new();
        let mut by_shape: Vec<(HyperplaneDecl, String)> = Vec::new();
        for i in 1..=n {
            for h in p_hyperplanes() {
                if interface(&h.name, i) {
                    continue;
                }
                let local = format!("{}.{i}", h.name);
                let moved = h.translated(&local, &shift(i));
                let existing = by_shape
                    .iter()
                    .find(|(d, _)| d.shape == moved.shape)
                    .map(|(_, name)| name.clone());
                let name = match existing {
                    Some(name) => name,
                    None => {
                        by_shape.push((moved.clone(), local.clone()));
                        hyperplanes.push(moved);
                        local.clone()
                    }
                };
                aliases.entry(name.clone()).or_default().push(local.clone());
                canonical.insert(local, name);
            }
        }

        let mut generators = auxiliary_generators();
        let mut kinds: Vec<PairingKind> = self.pattern.clone();
        kinds.sort();
        kinds.dedup();
        for kind in &kinds {
            for g in p_document(*kind).generators.into_iter().skip(generators_prefix()) {
                generators.push(GeneratorDecl {
                    name: format!("{}.{}", kind_prefix(*kind), g.name),
                    word: g.word.into_iter().map(inline_reflection).collect(),
                });
            }
        }
        for i in 1..=n {
            generators.push(GeneratorDecl {
                name: format!("T{i}"),
                word: vec![WordItem::Primitive(Primitive::Translate(shift(i)))],
            });
        }
        let mut pairings: Vec<PairingDecl> = Vec::new();
        let mut block_gens: Vec<GeneratorDecl> = Vec::new();
        for (b, kind) in self.pattern.iter().enumerate() {
            let i = b + 1;
            for pd in p_document(*kind).pairings {
                let [WordItem::Name(g)] = &pd.word[..] else {
                    unreachable!("built-in pairings are single generators")
                };
                if g == "z1" {
                    continue;
                }
                let name = format!("{g}.{i}");
                block_gens.push(GeneratorDecl {
                    name: name.clone(),
                    word: word(&[
                        &format!("T{i}"),
                        &format!("{}.{g}", kind_prefix(*kind)),
                        &format!("T{i}^-1"),
                    ]),
                });
                pairings.push(PairingDecl {
                    from: canonical[&format!("{}.{i}", pd.from)].clone(),
                    to: canonical[&format!("{}.{i}", pd.to)].clone(),
                    word: word(&[&name]),
                });
            }
        }
        let z = vec!["t0"; 2 * n];
        let zname = "zQ".to_string();
        block_gens.push(GeneratorDecl {
            name: zname.clone(),
            word: word(&z),
        });
        pairings.push(PairingDecl {
            from: "Z1.1".into(),
            to: format!("Z1'.{n}"),
            word: word(&[&zname]),
        });
        generators.extend(block_gens);

        let mut doc = SpecDocument {
            dimension: 4,
            hyperplanes,
            generators,
            pairings: Vec::new(),
            witness: p_witness(),
        };
        let ctx = doc.context()?;
        doc.pairings = merge_pairings(&ctx, pairings)?;
        Ok((doc, aliases))
    }
}

/// Offset `(0, 0, 4√2 (i − 1))` of block `i`, the translation `z1^{i−1}`.
pub fn block_shift(i: usize) -> Vec<QSqrt2> {
    vec![
        QSqrt2::default(),
        QSqrt2::default(),
        QSqrt2::from_parts(0, 1, 4 * (i as i64 - 1), 1),
    ]
}

fn kind_prefix(kind: PairingKind) -> &'static str {
    match kind {
        PairingKind::Phi1 => "phi1",
        PairingKind::Phi2 => "phi2",
    }
}

/// Replaces `inv:<side of P>` by the explicit sphere inversion, since the
/// unshifted sides of `P` have no names in a chain document.
fn inline_reflection(item: WordItem) -> WordItem {
    let WordItem::Name(name) = &item else {
        return item;
    };
    let Some(side) = name.strip_prefix("inv:") else {
        return item;
    };
    let decl = p_hyperplanes()
        .into_iter()
        .find(|h| h.name == side)
        .expect("built-in words reflect in sides of P");
    match decl.shape {
        Shape::Sphere {
            center, radius_sq, ..
        } => WordItem::Primitive(Primitive::InvertSphere { center, radius_sq }),
        Shape::Plane { normal, offset, .. } => {
            WordItem::Primitive(Primitive::ReflectPlane { normal, offset })
        }
    }
}

/// Number of auxiliary generators at the head of every `P` document.
fn generators_prefix() -> usize {
    auxiliary_generators().len()
}

/// Drops pairings repeated by merged sides after checking they agree.
fn merge_pairings(
    ctx: &WordContext,
    pairings: Vec<PairingDecl>,
) -> Result<Vec<PairingDecl>, TopologyError> {
    let mut seen: BTreeMap<String, (String, crate::lorentz::LorentzMap<QSqrt2>)> = BTreeMap::new();
    let mut out = Vec::new();
    for pd in pairings {
        let g = ctx.compile(&pd.word)?;
        if let Some((to, h)) = seen.get(&pd.from) {
            if *to != pd.to || h.matrix() != g.matrix() {
                return Err(TopologyError::InconsistentMerge(pd.from));
            }
            continue;
        }
        let inv = g.inverse();
        seen.insert(pd.from.clone(), (pd.to.clone(), g));
        seen.insert(pd.to.clone(), (pd.from.clone(), inv));
        out.push(pd);
    }
    Ok(out)
}

/// Compiles the stacked polyhedron and its pairing.
pub fn build_chain(spec: &ChainSpec) -> Result<Compiled, TopologyError> {
    Ok(spec.document().compile()?)
}

/// Invariants of one verified polyhedron with pairing.
#[derive(Clone, Debug, Serialize)]
pub struct Invariants {
    pub report: VerificationReport,
    pub census: CycleCensus,
    pub ends: usize,
    pub euler_characteristic: i64,
    pub volume_units: Option<i64>,
}

pub fn invariants(
    p: &Polyhedron<QSqrt2>,
    phi: &crate::pairing::SidePairing<QSqrt2>,
) -> Result<Invariants, TopologyError> {
    let report = verify_poincare(p, phi)?;
    let census = CycleCensus::from_report(&report);
    Ok(Invariants {
        ends: ends(&census),
        euler_characteristic: euler_characteristic(&census),
        volume_units: volume_units(&census).ok(),
        report,
        census,
    })
}

/// One row of the end-count table for `n` blocks.
#[derive(Clone, Debug, Serialize)]
pub struct EndCountRow {
    pub k: usize,
    pub pattern: String,
    pub passed: bool,
    pub ends: usize,
    pub expected_ends: usize,
    pub euler_characteristic: i64,
    pub volume_units: Option<i64>,
}

impl EndCountRow {
    pub fn matches_formula(&self) -> bool {
        self.ends == self.expected_ends
    }
}

/// For `k = 0..=n`, verifies one chain with `k` blocks of the first pairing.
pub fn end_count_table(n: usize) -> Result<Vec<EndCountRow>, TopologyError> {
    (0..=n)
        .map(|k| {
            let spec = ChainSpec::representative(n, k);
            let compiled = build_chain(&spec)?;
            let phi = compiled.pairing.as_ref().expect("chains are paired");
            let inv = invariants(&compiled.polyhedron, phi)?;
            Ok(EndCountRow {
                k,
                pattern: spec.pattern_string(),
                passed: inv.report.passed(),
                ends: inv.ends,
                expected_ends: 4 + 4 * n - k,
                euler_characteristic: inv.euler_characteristic,
                volume_units: inv.volume_units,
            })
        })
        .collect()
}
