//! Side-pairings and the hypotheses of Poincaré's polyhedron theorem.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::field::ExactField;
use crate::lorentz::{angle_class, invert_letter, AngleClass, AnglePi, LorentzMap, MinkowskiVector};
use crate::polytope::{Face, FaceLattice, Polyhedron, PolytopeError};

/// Largest power tried when looking for `(g_q ∘ … ∘ g_1)^k = id` on a ridge.
pub const MAX_CYCLE_POWER: u32 = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PairingError {
    #[error("unknown side {0}")]
    UnknownSide(String),
    #[error("side {0} is paired more than once")]
    PairedTwice(String),
    #[error("side {0} is not paired")]
    Unpaired(String),
    #[error("map for side {side} has dimension {got}, expected {expected}")]
    Dimension {
        side: String,
        expected: usize,
        got: usize,
    },
    #[error("image of {dim}-face {face} under the pairing of {side} is not a face")]
    ImageFaceNotFound {
        dim: usize,
        face: usize,
        side: String,
    },
    #[error("edge chase from ridge {0} does not close up")]
    NonPeriodicChase(usize),
    #[error("unsupported solid angle at {dim}-face {face}: {reason}")]
    UnsupportedCone {
        dim: usize,
        face: usize,
        reason: String,
    },
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

/// What side `side` is glued to, and by which isometry.
#[derive(Clone, Debug)]
pub struct PairingEntry<F> {
    pub side: usize,
    pub partner: usize,
    pub map: LorentzMap<F>,
    /// Generator name, with `^-1` for the partner direction.
    pub label: String,
}

/// One entry per side; `S ↦ (S′, g)` forces `S′ ↦ (S, g⁻¹)`.
#[derive(Clone, Debug)]
pub struct SidePairing<F> {
    entries: Vec<PairingEntry<F>>,
}

impl<F: ExactField> SidePairing<F> {
    /// Builds the pairing from one `(from, to, label, map)` per unordered pair.
    pub fn new(
        p: &Polyhedron<F>,
        pairs: Vec<(String, String, String, LorentzMap<F>)>,
    ) -> Result<Self, PairingError> {
        let mut slots: Vec<Option<PairingEntry<F>>> = vec![None; p.sides().len()];
        let index = |name: &str| {
            p.side_index(name)
                .ok_or_else(|| PairingError::UnknownSide(name.to_string()))
        };
        for (from, to, label, map) in pairs {
            let (s, t) = (index(&from)?, index(&to)?);
            if map.dim() != p.dim() {
                return Err(PairingError::Dimension {
                    side: from,
                    expected: p.dim(),
                    got: map.dim(),
                });
            }
            let inverse = map.inverse();
            let mut put = |side: usize, partner: usize, map: LorentzMap<F>, label: String| {
                if slots[side].is_some() {
                    return Err(PairingError::PairedTwice(p.side(side).name.clone()));
                }
                slots[side] = Some(PairingEntry {
                    side,
                    partner,
                    map,
                    label,
                });
                Ok(())
            };
            let inv_label = invert_letter(&label);
            put(s, t, map, label)?;
            if s != t {
                put(t, s, inverse, inv_label)?;
            }
        }
        let entries = slots
            .into_iter()
            .enumerate()
            .map(|(i, e)| e.ok_or_else(|| PairingError::Unpaired(p.side(i).name.clone())))
            .collect::<Result<_, _>>()?;
        Ok(SidePairing { entries })
    }

    pub fn entries(&self) -> &[PairingEntry<F>] {
        &self.entries
    }

    pub fn entry(&self, side: usize) -> &PairingEntry<F> {
        &self.entries[side]
    }

    /// Replaces the map on one side and its partner; for building fixtures.
    pub fn with_map(mut self, side: usize, map: LorentzMap<F>) -> Self {
        let partner = self.entries[side].partner;
        self.entries[partner].map = map.inverse();
        self.entries[side].map = map;
        self
    }
}

/// Outcome of the checks on one side's pairing map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairCheck {
    pub side: String,
    pub partner: String,
    pub label: String,
    /// `g(e_S) = ±e_{S′}`.
    pub hyperplane: bool,
    /// `g` carries the facet on `S` onto the facet on `S′`.
    pub facet: bool,
    /// Every vertex of `P` lands in `{⟨·, e_{S′}⟩ ≥ 0}`.
    pub far_side: bool,
    /// The partner's map is the inverse.
    pub involution: bool,
}

impl PairCheck {
    pub fn ok(&self) -> bool {
        self.hyperplane && self.facet && self.far_side && self.involution
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<PairCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(PairCheck::ok)
    }

    pub fn failures(&self) -> Vec<&PairCheck> {
        self.checks.iter().filter(|c| !c.ok()).collect()
    }
}

pub fn validate<F: ExactField>(
    p: &Polyhedron<F>,
    phi: &SidePairing<F>,
) -> Result<ValidationReport, PairingError> {
    let lattice = p.face_lattice()?;
    let n = p.dim();
    let checks = phi
        .entries
        .iter()
        .map(|e| {
            let (s, t) = (p.side(e.side), p.side(e.partner));
            let image = e.map.apply_hyperplane(s);
            let hyperplane = t.same_hyperplane(&image);
            let facet = match (lattice.facet_of_side(e.side), lattice.facet_of_side(e.partner)) {
                (Some(f), Some(g)) => {
                    lattice.image_vertices(&e.map, lattice.face(n - 1, f)).as_deref()
                        == Some(lattice.face(n - 1, g).vertices.as_slice())
                }
                _ => false,
            };
            // ⟨g v, e⟩ = ⟨v, g⁻¹ e⟩
            let pulled = e.map.inverse().apply(&t.e);
            let far_side = lattice
                .vertices
                .iter()
                .all(|v| !v.point.x.form(&pulled).lt_zero());
            let back = &phi.entries[e.partner];
            let involution = back.partner == e.side && back.map.compose(&e.map).is_identity();
            PairCheck {
                side: s.name.clone(),
                partner: t.name.clone(),
                label: e.label.clone(),
                hyperplane,
                facet,
                far_side,
                involution,
            }
        })
        .collect();
    Ok(ValidationReport { checks })
}

/// One step `σ_i = (E_i, S_i, R_i, g_i)` of an edge chase: the ridge
/// `E_i = S_i ∩ R_i` is carried by the pairing `g_i` of `R_i` to `E_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChaseStep {
    pub ridge: usize,
    pub side: usize,
    pub other: usize,
    pub label: String,
    pub angle: AnglePi,
}

#[derive(Clone, Debug, Serialize)]
pub struct RidgeCycle {
    pub steps: Vec<ChaseStep>,
    /// First cycle length.
    pub q: usize,
    /// Least power of the cycle transformation fixing the ridge pointwise.
    pub k: Option<u32>,
    /// `k·(θ_1 + … + θ_q)`, or the plain angle sum if `k` was not found.
    pub angle_sum: AnglePi,
}

impl RidgeCycle {
    /// `m` with `k·Σθ = 2π/m`, if it exists.
    pub fn m(&self) -> Option<i64> {
        self.k?;
        let r = self.angle_sum.ratio();
        if *r.numer() <= 0 {
            return None;
        }
        let m = Ratio::from_integer(2) / r;
        m.is_integer().then(|| m.to_integer())
    }

    pub fn passes(&self) -> bool {
        self.m().is_some()
    }

    pub fn ridges(&self) -> Vec<usize> {
        let mut r: Vec<usize> = self.steps.iter().map(|s| s.ridge).collect();
        r.sort_unstable();
        r.dedup();
        r
    }
}

/// Follows `σ_i` from `(ridge, side)` until it returns to its start.
fn chase<F: ExactField>(
    p: &Polyhedron<F>,
    lattice: &FaceLattice<F>,
    phi: &SidePairing<F>,
    angles: &[AnglePi],
    ridge: usize,
    side: usize,
) -> Result<(Vec<ChaseStep>, Vec<LorentzMap<F>>), PairingError> {
    let n = p.dim();
    let ridges = lattice.faces(n - 2);
    let other_of = |r: usize, s: usize| -> Option<usize> {
        let c = &ridges[r].carriers;
        (c.len() == 2 && c.contains(&s)).then(|| if c[0] == s { c[1] } else { c[0] })
    };
    let mut steps = Vec::new();
    let mut maps = Vec::new();
    let (mut e, mut s) = (ridge, side);
    loop {
        let r = other_of(e, s).ok_or(PairingError::NonPeriodicChase(ridge))?;
        let entry = phi.entry(r);
        steps.push(ChaseStep {
            ridge: e,
            side: s,
            other: r,
            label: entry.label.clone(),
            angle: angles[e],
        });
        maps.push(entry.map.clone());
        let img = lattice
            .image_vertices(&entry.map, &ridges[e])
            .and_then(|vs| lattice.face_by_vertices(n - 2, &vs))
            .ok_or_else(|| PairingError::ImageFaceNotFound {
                dim: n - 2,
                face: e,
                side: p.side(r).name.clone(),
            })?;
        e = img;
        s = entry.partner;
        if (e, s) == (ridge, side) {
            return Ok((steps, maps));
        }
        if steps.len() > 2 * ridges.len() {
            return Err(PairingError::NonPeriodicChase(ridge));
        }
    }
}

/// The edge chase starting at `ridge` with `S_1 = side`, with each step's
/// map `g_i`.
pub fn chase_from<F: ExactField>(
    p: &Polyhedron<F>,
    phi: &SidePairing<F>,
    ridge: usize,
    side: usize,
) -> Result<Vec<(ChaseStep, LorentzMap<F>)>, PairingError> {
    let lattice = p.face_lattice()?;
    let angles: Vec<AnglePi> = p.ridge_angles()?.into_iter().map(|r| r.angle).collect();
    let (steps, maps) = chase(p, lattice, phi, &angles, ridge, side)?;
    Ok(steps.into_iter().zip(maps).collect())
}

/// Partitions all ridges into edge cycles.
pub fn chase_ridges<F: ExactField>(
    p: &Polyhedron<F>,
    phi: &SidePairing<F>,
) -> Result<Vec<RidgeCycle>, PairingError> {
    let lattice = p.face_lattice()?;
    let n = p.dim();
    let angles: Vec<AnglePi> = p.ridge_angles()?.into_iter().map(|r| r.angle).collect();
    let ridges = lattice.faces(n - 2);
    let mut seen = vec![false; ridges.len()];
    let mut cycles = Vec::new();
    for start in 0..ridges.len() {
        if seen[start] {
            continue;
        }
        let carriers = &ridges[start].carriers;
        let (steps, maps) = chase(p, lattice, phi, &angles, start, carriers[0])?;
        let total = maps
            .iter()
            .fold(LorentzMap::identity(n), |acc, g| g.compose(&acc));
        let (back, _) = chase(p, lattice, phi, &angles, start, carriers[1])?;
        let mut a: Vec<usize> = steps.iter().map(|s| s.ridge).collect();
        let mut b: Vec<usize> = back.iter().map(|s| s.ridge).collect();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return Err(PairingError::NonPeriodicChase(start));
        }
        for &r in &a {
            seen[r] = true;
        }
        let span: Vec<&MinkowskiVector<F>> = ridges[start]
            .vertices
            .iter()
            .map(|&v| &lattice.vertices[v].point.x)
            .collect();
        let mut power = total.clone();
        let mut k = None;
        for j in 1..=MAX_CYCLE_POWER {
            if span.iter().all(|x| power.apply(x) == **x) {
                k = Some(j);
                break;
            }
            power = total.compose(&power);
        }
        let sum = steps
            .iter()
            .fold(AnglePi::zero(), |acc, s| acc + s.angle);
        cycles.push(RidgeCycle {
            q: steps.len(),
            angle_sum: sum * i64::from(k.unwrap_or(1)),
            k,
            steps,
        });
    }
    Ok(cycles)
}

/// Outcome of the edge cycle condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RidgeConditionReport {
    pub passed: bool,
    /// `m` per cycle, in cycle order.
    pub m: Vec<Option<i64>>,
    /// Cycles whose `k` exceeds 1.
    pub warnings: Vec<usize>,
}

pub fn check_ridge_condition(cycles: &[RidgeCycle]) -> RidgeConditionReport {
    let m: Vec<Option<i64>> = cycles.iter().map(RidgeCycle::m).collect();
    RidgeConditionReport {
        passed: m.iter().all(Option::is_some),
        m,
        warnings: cycles
            .iter()
            .enumerate()
            .filter(|(_, c)| c.k.is_some_and(|k| k > 1))
            .map(|(i, _)| i)
            .collect(),
    }
}

/// `g(rep(source)) = scale · rep(target)`; `target` is `None` when the image
/// is not an ideal vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspArc<F> {
    pub source: usize,
    pub side: usize,
    pub target: Option<usize>,
    pub scale: F,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspGraph<F> {
    pub nodes: Vec<usize>,
    pub arcs: Vec<CuspArc<F>>,
}

impl<F: ExactField> CuspGraph<F> {
    pub fn build(p: &Polyhedron<F>, phi: &SidePairing<F>) -> Result<Self, PairingError> {
        let lattice = p.face_lattice()?;
        let nodes: Vec<usize> = lattice
            .vertices
            .iter()
            .filter(|v| v.is_ideal())
            .map(|v| v.id)
            .collect();
        let mut arcs = Vec::new();
        for &u in &nodes {
            let rep = &lattice.vertices[u].point.x;
            for &side in &lattice.vertices[u].incident_sides {
                let img = phi.entry(side).map.apply(rep);
                let scale = img.last().clone();
                let target = img
                    .last()
                    .inv()
                    .map(|s| img.scale(&s))
                    .and_then(|x| lattice.vertex_by_point(&x))
                    .filter(|&w| lattice.vertices[w].is_ideal());
                arcs.push(CuspArc {
                    source: u,
                    side,
                    target,
                    scale,
                });
            }
        }
        Ok(CuspGraph { nodes, arcs })
    }

    /// Multiplicative potentials `μ(target) = λ·μ(source)` along a BFS forest
    /// rooted at `roots_first` order; every arc must agree.
    pub fn consistent_with_roots(&self, order: &[usize]) -> HorosphereReport {
        let mut out: HashMap<usize, Vec<(usize, F)>> = HashMap::new();
        let mut broken = Vec::new();
        for (i, a) in self.arcs.iter().enumerate() {
            match a.target {
                Some(t) => {
                    out.entry(a.source).or_default().push((t, a.scale.clone()));
                    let inv = a.scale.inv().expect("isometries keep null vectors nonzero");
                    out.entry(t).or_default().push((a.source, inv));
                }
                None => broken.push(i),
            }
        }
        let mut mu: HashMap<usize, F> = HashMap::new();
        let mut components = 0;
        for &root in order {
            if mu.contains_key(&root) {
                continue;
            }
            components += 1;
            mu.insert(root, F::one());
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                let mu_u = mu[&u].clone();
                for (t, l) in out.get(&u).into_iter().flatten() {
                    if !mu.contains_key(t) {
                        mu.insert(*t, l.clone() * &mu_u);
                        queue.push_back(*t);
                    }
                }
            }
        }
        let inconsistent: Vec<usize> = self
            .arcs
            .iter()
            .enumerate()
            .filter(|(_, a)| match a.target {
                Some(t) => mu[&t] != a.scale.clone() * &mu[&a.source],
                None => false,
            })
            .map(|(i, _)| i)
            .collect();
        HorosphereReport {
            passed: broken.is_empty() && inconsistent.is_empty(),
            components,
            inconsistent_arcs: inconsistent,
            missing_targets: broken,
        }
    }

    pub fn check(&self) -> HorosphereReport {
        self.consistent_with_roots(&self.nodes)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HorosphereReport {
    pub passed: bool,
    /// Connected components of the cusp graph, one per ideal cycle.
    pub components: usize,
    pub inconsistent_arcs: Vec<usize>,
    pub missing_targets: Vec<usize>,
}

pub fn check_horospheres<F: ExactField>(
    p: &Polyhedron<F>,
    phi: &SidePairing<F>,
) -> Result<HorosphereReport, PairingError> {
    Ok(CuspGraph::build(p, phi)?.check())
}

/// An equivalence class of `dim`-faces under the pairing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceCycle {
    pub dim: usize,
    pub members: Vec<usize>,
    /// Set for cycles of ideal vertices.
    pub ideal: bool,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut c = x;
    while parent[c] != r {
        let next = parent[c];
        parent[c] = r;
        c = next;
    }
    r
}

/// Cycles of `dim`-faces, ordered by smallest member.
pub fn face_cycles<F: ExactField>(
    p: &Polyhedron<F>,
    phi: &SidePairing<F>,
    dim: usize,
) -> Result<Vec<FaceCycle>, PairingError> {
    let lattice = p.face_lattice()?;
    let faces = lattice.faces(dim);
    let mut parent: Vec<usize> = (0..faces.len()).collect();
    for (i, f) in faces.iter().enumerate() {
        for &s in &f.carriers {
            let entry = phi.entry(s);
            let j = lattice
                .image_vertices(&entry.map, f)
                .and_then(|vs| lattice.face_by_vertices(dim, &vs))
                .ok_or_else(|| PairingError::ImageFaceNotFound {
                    dim,
                    face: i,
                    side: p.side(s).name.clone(),
                })?;
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..faces.len() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    Ok(groups
        .into_values()
        .map(|members| FaceCycle {
            dim,
            ideal: dim == 0 && lattice.vertices[members[0]].is_ideal(),
            members,
        })
        .collect())
}

/// Normalized solid angle of the cone of `P` at a face whose carrier normals
/// split into mutually orthogonal blocks of size at most two.
pub fn solid_angle<F: ExactField>(
    p: &Polyhedron<F>,
    face: &Face,
    id: usize,
) -> Result<Ratio<i64>, PairingError> {
    let n = p.dim();
    let codim = n - face.dim;
    let c = &face.carriers;
    if c.len() != codim {
        return Err(PairingError::UnsupportedCone {
            dim: face.dim,
            face: id,
            reason: format!("{} carriers for codimension {codim}", c.len()),
        });
    }
    let mut parent: Vec<usize> = (0..c.len()).collect();
    for i in 0..c.len() {
        for j in i + 1..c.len() {
            if !p.side(c[i]).e.form(&p.side(c[j]).e).is_zero() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..c.len() {
        let r = find(&mut parent, i);
        blocks.entry(r).or_default().push(c[i]);
    }
    let unsupported = |reason: &str| PairingError::UnsupportedCone {
        dim: face.dim,
        face: id,
        reason: reason.to_string(),
    };
    let mut omega = Ratio::from_integer(1);
    for b in blocks.values() {
        match b[..] {
            [_] => omega *= Ratio::new(1, 2),
            [s, t] => match angle_class(p.side(s), p.side(t)).map_err(PolytopeError::from)? {
                AngleClass::Intersecting(theta) => omega *= theta.ratio() / 2,
                _ => return Err(unsupported("carrier sides do not intersect")),
            },
            _ => return Err(unsupported("non-orthogonal block of three or more sides")),
        }
    }
    Ok(omega)
}

/// Solid angles summed over one cycle of faces of codimension ≥ 3.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionCycle {
    pub dim: usize,
    pub members: Vec<usize>,
    /// Per-member `ω`, in member order.
    #[serde(serialize_with = "ser_ratios")]
    pub omegas: Vec<Ratio<i64>>,
    #[serde(serialize_with = "ser_ratio")]
    pub sum: Ratio<i64>,
}

impl TorsionCycle {
    pub fn passes(&self) -> bool {
        self.sum == Ratio::from_integer(1)
    }
}

fn ser_ratio<S: serde::Serializer>(r: &Ratio<i64>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn ser_ratios<S: serde::Serializer>(r: &[Ratio<i64>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(r.iter().map(|x| x.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionReport {
    pub passed: bool,
    pub cycles: Vec<TorsionCycle>,
}

/// Whether a face takes part in the torsion check: finite vertices, and
/// higher faces of codimension ≥ 3 whose vertices are all finite or all ideal.
pub fn torsion_eligible<F: ExactField>(lattice: &FaceLattice<F>, face: &Face) -> bool {
    let n = lattice.dim();
    if face.dim + 3 > n {
        return false;
    }
    if face.dim == 0 {
        return !lattice.vertices[face.vertices[0]].is_ideal();
    }
    lattice.endpoints_same_kind(face)
}

pub fn check_torsion_free<F: ExactField>(
    p: &Polyhedron<F>,
    cycles_by_dim: &[Vec<FaceCycle>],
) -> Result<TorsionReport, PairingError> {
    let lattice = p.face_lattice()?;
    let mut out = Vec::new();
    for cycles in cycles_by_dim.iter().take(p.dim().saturating_sub(2)) {
        for c in cycles {
            let first = lattice.face(c.dim, c.members[0]);
            if !torsion_eligible(lattice, first) {
                continue;
            }
            let omegas = c
                .members
                .iter()
                .map(|&f| solid_angle(p, lattice.face(c.dim, f), f))
                .collect::<Result<Vec<_>, _>>()?;
            let sum = omegas.iter().copied().sum();
            out.push(TorsionCycle {
                dim: c.dim,
                members: c.members.clone(),
                omegas,
                sum,
            });
        }
    }
    Ok(TorsionReport {
        passed: out.iter().all(TorsionCycle::passes),
        cycles: out,
    })
}

/// Summary of one edge cycle for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RidgeCycleSummary {
    pub ridges: Vec<usize>,
    pub q: usize,
    pub k: Option<u32>,
    pub angle_sum: AnglePi,
    pub m: Option<i64>,
    pub labels: Vec<String>,
}

/// Every checked hypothesis for one polyhedron and pairing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub dimension: usize,
    pub validation: ValidationReport,
    pub ridge_cycles: Vec<RidgeCycleSummary>,
    pub ridge_condition: Option<RidgeConditionReport>,
    pub horospheres: Option<HorosphereReport>,
    pub torsion: Option<TorsionReport>,
    /// Cycles of faces of every dimension `0..=n`.
    pub face_cycles: Vec<Vec<FaceCycle>>,
}

impl VerificationReport {
    pub fn poincare_passed(&self) -> bool {
        self.validation.passed()
            && self.ridge_condition.as_ref().is_some_and(|r| r.passed)
            && self.horospheres.as_ref().is_some_and(|h| h.passed)
    }

    pub fn passed(&self) -> bool {
        self.poincare_passed() && self.torsion.as_ref().is_some_and(|t| t.passed)
    }
}

/// Validation, edge cycles, horospheres and torsion in one pass. Later
/// stages are skipped when the pairing itself is invalid.
pub fn verify_poincare<F: ExactField>(
    p: &Polyhedron<F>,
    phi: &SidePairing<F>,
) -> Result<VerificationReport, PairingError> {
    let validation = validate(p, phi)?;
    let mut report = VerificationReport {
        dimension: p.dim(),
        validation,
        ridge_cycles: Vec::new(),
        ridge_condition: None,
        horospheres: None,
        torsion: None,
        face_cycles: Vec::new(),
    };
    if !report.validation.passed() {
        return Ok(report);
    }
    let cycles = chase_ridges(p, phi)?;
    report.ridge_condition = Some(check_ridge_condition(&cycles));
    report.ridge_cycles = cycles
        .iter()
        .map(|c| RidgeCycleSummary {
            ridges: c.ridges(),
            q: c.q,
            k: c.k,
            angle_sum: c.angle_sum,
            m: c.m(),
            labels: c.steps.iter().map(|s| s.label.clone()).collect(),
        })
        .collect();
    report.horospheres = Some(check_horospheres(p, phi)?);
    report.face_cycles = (0..=p.dim())
        .map(|d| face_cycles(p, phi, d))
        .collect::<Result<_, _>>()?;
    report.torsion = Some(check_torsion_free(p, &report.face_cycles)?);
    Ok(report)
}
