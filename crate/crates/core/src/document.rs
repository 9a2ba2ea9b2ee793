//! The JSON spec format: hyperplanes, generator words and pairings.
//!
//! Scalars use the literal `[a_num, a_den, b_num, b_den]`. A word is a list
//! of items applied right to left, so `["q1", "t0", "inv:B1"]` is
//! `q1 ∘ t0 ∘ i_B1`. Items are generator names (optionally suffixed `^-1`),
//! `inv:<hyperplane>` for a reflection, or inline primitives.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::ExactField;
use crate::lorentz::{
    hyperplane_from_plane, hyperplane_from_sphere, interior_point, HyperplaneVector, LorentzError,
    LorentzMap, PlaneSide, SphereSide,
};
use crate::pairing::{PairingError, SidePairing};
use crate::polytope::{Polyhedron, PolytopeError};
use crate::scalar::QSqrt2;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed document: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("unknown name {0} in word")]
    UnknownName(String),
    #[error("name {0} declared twice")]
    DuplicateName(String),
    #[error("{0}: expected {1} coordinates")]
    Arity(String, usize),
    #[error("dimension {0} is not supported (expected 3 or 4)")]
    Dimension(usize),
    #[error("witness height must be positive")]
    NonPositiveHeight,
    #[error(transparent)]
    Lorentz(#[from] LorentzError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Pairing(#[from] PairingError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Sphere {
        center: Vec<QSqrt2>,
        radius_sq: QSqrt2,
        side: SphereSide,
    },
    Plane {
        normal: Vec<QSqrt2>,
        offset: QSqrt2,
        side: PlaneSide,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperplaneDecl {
    pub name: String,
    #[serde(flatten)]
    pub shape: Shape,
}

impl HyperplaneDecl {
    pub fn sphere(name: &str, center: Vec<QSqrt2>, radius_sq: QSqrt2, side: SphereSide) -> Self {
        HyperplaneDecl {
            name: name.to_string(),
            shape: Shape::Sphere {
                center,
                radius_sq,
                side,
            },
        }
    }

    pub fn plane(name: &str, normal: Vec<QSqrt2>, offset: QSqrt2, side: PlaneSide) -> Self {
        HyperplaneDecl {
            name: name.to_string(),
            shape: Shape::Plane {
                normal,
                offset,
                side,
            },
        }
    }

    pub fn compile(&self, dim: usize) -> Result<HyperplaneVector<QSqrt2>, DocumentError> {
        let (coords, h) = match &self.shape {
            Shape::Sphere {
                center,
                radius_sq,
                side,
            } => (center.len(), hyperplane_from_sphere(&self.name, center, radius_sq, *side)),
            Shape::Plane {
                normal,
                offset,
                side,
            } => (normal.len(), hyperplane_from_plane(&self.name, normal, offset, *side)),
        };
        if coords != dim - 1 {
            return Err(DocumentError::Arity(self.name.clone(), dim - 1));
        }
        Ok(h?)
    }

    /// Image under a Euclidean translation of the boundary.
    pub fn translated(&self, name: &str, shift: &[QSqrt2]) -> Self {
        let shape = match &self.shape {
            Shape::Sphere {
                center,
                radius_sq,
                side,
            } => Shape::Sphere {
                center: center.iter().zip(shift).map(|(c, s)| c + s).collect(),
                radius_sq: radius_sq.clone(),
                side: *side,
            },
            Shape::Plane {
                normal,
                offset,
                side,
            } => {
                let moved = normal
                    .iter()
                    .zip(shift)
                    .fold(offset.clone(), |acc, (n, s)| acc + &(n * s));
                Shape::Plane {
                    normal: normal.clone(),
                    offset: moved,
                    side: *side,
                }
            }
        };
        HyperplaneDecl {
            name: name.to_string(),
            shape,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Primitive {
    ReflectPlane { normal: Vec<QSqrt2>, offset: QSqrt2 },
    InvertSphere { center: Vec<QSqrt2>, radius_sq: QSqrt2 },
    Translate(Vec<QSqrt2>),
    LinearOrthogonal(Vec<Vec<QSqrt2>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WordItem {
    Name(String),
    Primitive(Primitive),
}

impl WordItem {
    pub fn name(s: &str) -> Self {
        WordItem::Name(s.to_string())
    }
}

/// `["a", "b"]` as a word.
pub fn word(names: &[&str]) -> Vec<WordItem> {
    names.iter().map(|n| WordItem::name(n)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorDecl {
    pub name: String,
    pub word: Vec<WordItem>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingDecl {
    pub from: String,
    pub to: String,
    pub word: Vec<WordItem>,
}

/// An interior point `(p, t)` of the upper half-space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDecl {
    pub point: Vec<QSqrt2>,
    pub height: QSqrt2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecDocument {
    pub dimension: usize,
    pub hyperplanes: Vec<HyperplaneDecl>,
    #[serde(default)]
    pub generators: Vec<GeneratorDecl>,
    #[serde(default)]
    pub pairings: Vec<PairingDecl>,
    pub witness: WitnessDecl,
}

/// Compiled generators and hyperplanes, for resolving words.
#[derive(Clone, Debug, Default)]
pub struct WordContext {
    pub dim: usize,
    pub hyperplanes: BTreeMap<String, HyperplaneVector<QSqrt2>>,
    pub generators: BTreeMap<String, LorentzMap<QSqrt2>>,
}

impl WordContext {
    fn item(&self, item: &WordItem) -> Result<LorentzMap<QSqrt2>, DocumentError> {
        let m = self.dim - 1;
        let arity = |what: &str, len: usize| {
            if len == m {
                Ok(())
            } else {
                Err(DocumentError::Arity(what.to_string(), m))
            }
        };
        match item {
            WordItem::Name(name) => {
                if let Some(h) = name.strip_prefix("inv:") {
                    let h = self
                        .hyperplanes
                        .get(h)
                        .ok_or_else(|| DocumentError::UnknownName(name.clone()))?;
                    return Ok(LorentzMap::reflection(h));
                }
                let (base, inverse) = match name.strip_suffix("^-1") {
                    Some(b) => (b, true),
                    None => (name.as_str(), false),
                };
                let g = self
                    .generators
                    .get(base)
                    .ok_or_else(|| DocumentError::UnknownName(name.clone()))?;
                let g = g.clone().with_word(vec![base.to_string()]);
                Ok(if inverse { g.inverse() } else { g })
            }
            WordItem::Primitive(p) => {
                let map = match p {
                    Primitive::ReflectPlane { normal, offset } => {
                        arity("reflect-plane", normal.len())?;
                        LorentzMap::plane_reflection(normal, offset)?
                    }
                    Primitive::InvertSphere { center, radius_sq } => {
                        arity("invert-sphere", center.len())?;
                        let h = hyperplane_from_sphere("", center, radius_sq, SphereSide::Exterior)?;
                        LorentzMap::reflection(&h)
                    }
                    Primitive::Translate(v) => {
                        arity("translate", v.len())?;
                        LorentzMap::translation(v)
                    }
                    Primitive::LinearOrthogonal(rows) => {
                        arity("linear-orthogonal", rows.len())?;
                        LorentzMap::euclidean(rows, &vec![QSqrt2::default(); m])?
                    }
                };
                Ok(map.with_word(Vec::new()))
            }
        }
    }

    /// `w_1 ∘ w_2 ∘ …`.
    pub fn compile(&self, word: &[WordItem]) -> Result<LorentzMap<QSqrt2>, DocumentError> {
        let mut acc = LorentzMap::identity(self.dim);
        for item in word {
            acc = acc.compose(&self.item(item)?);
        }
        Ok(acc)
    }

    pub fn define(&mut self, decl: &GeneratorDecl) -> Result<(), DocumentError> {
        if self.generators.contains_key(&decl.name) {
            return Err(DocumentError::DuplicateName(decl.name.clone()));
        }
        let g = self.compile(&decl.word)?.with_word(vec![decl.name.clone()]);
        self.generators.insert(decl.name.clone(), g);
        Ok(())
    }
}

/// Human-readable label of a word.
pub fn word_label(word: &[WordItem]) -> String {
    word.iter()
        .map(|i| match i {
            WordItem::Name(n) => n.clone(),
            WordItem::Primitive(_) => "·".to_string(),
        })
        .collect::<Vec<_>>()
        .join("")
}

/// Two hyperplanes whose dihedral angle is not in the recognized table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AngleDiagnostic {
    pub first: String,
    pub second: String,
    /// `cos²` of the angle.
    pub gamma_sq: QSqrt2,
}

/// Unnormalized normal `ẽ` with its Lorentz square `⟨ẽ,ẽ⟩`.
fn raw_normal(h: &HyperplaneDecl) -> Option<(String, Vec<QSqrt2>, QSqrt2)> {
    let half = QSqrt2::from_parts(1, 2, 0, 1);
    let one = QSqrt2::from(1);
    let dot = |a: &[QSqrt2]| a.iter().fold(QSqrt2::from(0), |acc, x| acc + &(x * x));
    let (v, sq) = match &h.shape {
        Shape::Sphere {
            center, radius_sq, ..
        } => {
            let k = dot(center) - radius_sq;
            let mut v = center.clone();
            v.push(&(&k - &one) * &half);
            v.push(&(&k + &one) * &half);
            (v, radius_sq.clone())
        }
        Shape::Plane { normal, offset, .. } => {
            let mut v = normal.clone();
            v.push(offset.clone());
            v.push(offset.clone());
            (v, dot(normal))
        }
    };
    sq.gt_zero().then(|| (h.name.clone(), v, sq))
}

/// A document turned into geometry.
#[derive(Clone, Debug)]
pub struct Compiled {
    pub polyhedron: Polyhedron<QSqrt2>,
    /// Absent when the document declares no pairings.
    pub pairing: Option<SidePairing<QSqrt2>>,
    pub context: WordContext,
}

impl SpecDocument {
    pub fn from_json(s: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    pub fn context(&self) -> Result<WordContext, DocumentError> {
        if !(3..=4).contains(&self.dimension) {
            return Err(DocumentError::Dimension(self.dimension));
        }
        let mut ctx = WordContext {
            dim: self.dimension,
            ..WordContext::default()
        };
        for h in &self.hyperplanes {
            let v = h.compile(self.dimension)?;
            if ctx.hyperplanes.insert(h.name.clone(), v).is_some() {
                return Err(DocumentError::DuplicateName(h.name.clone()));
            }
        }
        for g in &self.generators {
            ctx.define(g)?;
        }
        Ok(ctx)
    }

    /// Pairs of declared hyperplanes that meet at an angle outside the
    /// recognized table.
    ///
    /// Works on unnormalized normals, so it still reports on documents
    /// whose radii or normal lengths have no square root in Q(√2).
    pub fn angle_diagnostics(&self) -> Vec<AngleDiagnostic> {
        let raw: Vec<_> = self.hyperplanes.iter().filter_map(raw_normal).collect();
        let table = [(0, 1), (1, 4), (1, 2), (3, 4)].map(|(n, d)| QSqrt2::from_parts(n, d, 0, 1));
        let mut out = Vec::new();
        for (i, (n1, v1, s1)) in raw.iter().enumerate() {
            for (n2, v2, s2) in &raw[i + 1..] {
                if v1.len() != v2.len() {
                    continue;
                }
                let f = crate::lorentz::form(v1, v2);
                let Some(g2) = (s1 * s2).inv().map(|d| &(&f * &f) * &d) else {
                    continue;
                };
                if g2 < QSqrt2::from(1) && !table.contains(&g2) {
                    out.push(AngleDiagnostic {
                        first: n1.clone(),
                        second: n2.clone(),
                        gamma_sq: g2,
                    });
                }
            }
        }
        out
    }

    pub fn compile(&self) -> Result<Compiled, DocumentError> {
        let context = self.context()?;
        if self.witness.point.len() + 1 != self.dimension {
            return Err(DocumentError::Arity("witness".into(), self.dimension - 1));
        }
        if !self.witness.height.gt_zero() {
            return Err(DocumentError::NonPositiveHeight);
        }
        let sides = self
            .hyperplanes
            .iter()
            .map(|h| context.hyperplanes[&h.name].clone())
            .collect();
        let witness = interior_point(&self.witness.point, &self.witness.height);
        let polyhedron = Polyhedron::new(self.dimension, sides, witness)?;
        let pairing = if self.pairings.is_empty() {
            None
        } else {
            let pairs = self
                .pairings
                .iter()
                .map(|d| {
                    Ok((
                        d.from.clone(),
                        d.to.clone(),
                        word_label(&d.word),
                        context.compile(&d.word)?,
                    ))
                })
                .collect::<Result<Vec<_>, DocumentError>>()?;
            Some(SidePairing::new(&polyhedron, pairs)?)
        };
        Ok(Compiled {
            polyhedron,
            pairing,
            context,
        })
    }
}
