//! Finite-volume polyhedra as intersections of half-spaces, with their face
//! lattices.
//!
//! Vertices are found by solving `⟨x, e_i⟩ = 0` over every `n`-subset of
//! pairwise non-disjoint sides. The face lattice is then derived purely from
//! vertex–side incidences: in the projective (Klein) picture the closure of a
//! finite-volume polyhedron is a compact convex polytope whose vertices are
//! exactly the finite and ideal vertices found here.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::field::ExactField;
use crate::linalg::{nullspace, rank};
use crate::lorentz::{
    angle_class, AngleClass, AnglePi, HyperplaneVector, LorentzError, LorentzMap, MinkowskiVector,
    PointKind, PointRep,
};
use crate::linalg::SquareMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("dimension {0} is not supported (expected 3 or 4)")]
    UnsupportedDimension(usize),
    #[error("side {name} has dimension {got}, expected {expected}")]
    SideDimension {
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("duplicate side name {0}")]
    DuplicateName(String),
    #[error("sides {0} and {1} lie on the same hyperplane")]
    DuplicateHyperplane(String, String),
    #[error("witness point is not strictly inside side {0}")]
    WitnessOutside(String),
    #[error("witness is not a finite point")]
    WitnessNotFinite,
    #[error("inconsistent face lattice: {0}")]
    InconsistentLattice(String),
    #[error("ridge {ridge} lies on {carriers} sides, expected 2")]
    RidgeCarriers { ridge: usize, carriers: usize },
    #[error("sides {0} and {1} bound a ridge but do not intersect")]
    RidgeNotIntersecting(String, String),
    #[error(transparent)]
    Lorentz(#[from] LorentzError),
    #[error("hyperplane does not meet the interior of the polyhedron")]
    NoInterior,
    #[error("no orthonormal basis of the hyperplane with coordinates in the field")]
    BasisNotRepresentable,
    #[error("restricted side {0} has a non-representable unit normal")]
    SideNotRepresentable(String),
    #[error("map does not preserve the hyperplane")]
    MapDoesNotPreserve,
}

/// A vertex, finite or ideal, with every side through it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexRecord<F> {
    pub id: usize,
    pub point: PointRep<F>,
    pub incident_sides: Vec<usize>,
}

impl<F> VertexRecord<F> {
    pub fn is_ideal(&self) -> bool {
        self.point.kind == PointKind::Ideal
    }
}

/// A face, identified by its vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Face {
    pub dim: usize,
    /// Sorted indices of the sides containing the face.
    pub carriers: Vec<usize>,
    /// Sorted vertex ids.
    pub vertices: Vec<usize>,
}

/// All faces of a polyhedron, indexed by dimension `0..=n`.
#[derive(Clone, Debug)]
pub struct FaceLattice<F> {
    pub vertices: Vec<VertexRecord<F>>,
    faces: Vec<Vec<Face>>,
    by_vertices: Vec<HashMap<Vec<usize>, usize>>,
    by_point: HashMap<MinkowskiVector<F>, usize>,
    side_facet: Vec<Option<usize>>,
}

impl<F: ExactField> FaceLattice<F> {
    pub fn dim(&self) -> usize {
        self.faces.len() - 1
    }

    pub fn faces(&self, dim: usize) -> &[Face] {
        &self.faces[dim]
    }

    pub fn face(&self, dim: usize, id: usize) -> &Face {
        &self.faces[dim][id]
    }

    /// Face counts by dimension, vertices (finite and ideal) first.
    pub fn counts(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    pub fn finite_vertex_count(&self) -> usize {
        self.vertices.iter().filter(|v| !v.is_ideal()).count()
    }

    pub fn ideal_vertex_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.is_ideal()).count()
    }

    pub fn face_by_vertices(&self, dim: usize, vertices: &[usize]) -> Option<usize> {
        self.by_vertices[dim].get(vertices).copied()
    }

    pub fn vertex_by_point(&self, x: &MinkowskiVector<F>) -> Option<usize> {
        self.by_point.get(x).copied()
    }

    /// The facet lying on a side, if that side is not redundant.
    pub fn facet_of_side(&self, side: usize) -> Option<usize> {
        self.side_facet.get(side).copied().flatten()
    }

    /// Whether both endpoints of a 1-face are finite or both ideal.
    pub fn endpoints_same_kind(&self, edge: &Face) -> bool {
        let kinds: BTreeSet<PointKind> = edge
            .vertices
            .iter()
            .map(|&v| self.vertices[v].point.kind)
            .collect();
        kinds.len() == 1
    }

    /// Image vertex ids of a face under `g`, sorted; `None` if some image is
    /// not a vertex.
    pub fn image_vertices(&self, g: &LorentzMap<F>, face: &Face) -> Option<Vec<usize>> {
        let mut out = Vec::with_capacity(face.vertices.len());
        for &v in &face.vertices {
            let img = g.apply_point(&self.vertices[v].point);
            out.push(self.vertex_by_point(&img.x)?);
        }
        out.sort_unstable();
        Some(out)
    }
}

/// A ridge with its two carrier sides and interior dihedral angle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RidgeAngle {
    pub ridge: usize,
    pub sides: (usize, usize),
    pub angle: AnglePi,
}

/// A convex polyhedron `{x : ⟨x, e_i⟩ ≤ 0 for all i}` in H^n, `n ∈ {3, 4}`.
#[derive(Clone, Debug)]
pub struct Polyhedron<F> {
    dim: usize,
    sides: Vec<HyperplaneVector<F>>,
    witness: PointRep<F>,
    lattice: OnceLock<FaceLattice<F>>,
}

impl<F: ExactField> Polyhedron<F> {
    /// Checks dimensions, distinctness of sides and that `witness` is a finite
    /// point strictly inside every side.
    pub fn new(
        dim: usize,
        sides: Vec<HyperplaneVector<F>>,
        witness: MinkowskiVector<F>,
    ) -> Result<Self, PolytopeError> {
        if !(3..=4).contains(&dim) {
            return Err(PolytopeError::UnsupportedDimension(dim));
        }
        let mut names = HashSet::new();
        let mut planes: HashMap<MinkowskiVector<F>, &str> = HashMap::new();
        for s in &sides {
            if s.dim() != dim {
                return Err(PolytopeError::SideDimension {
                    name: s.name.clone(),
                    expected: dim,
                    got: s.dim(),
                });
            }
            if !names.insert(s.name.as_str()) {
                return Err(PolytopeError::DuplicateName(s.name.clone()));
            }
            for key in [s.e.clone(), s.e.neg()] {
                if let Some(other) = planes.get(&key) {
                    return Err(PolytopeError::DuplicateHyperplane(
                        other.to_string(),
                        s.name.clone(),
                    ));
                }
            }
            planes.insert(s.e.clone(), &s.name);
        }
        if witness.dim() != dim {
            return Err(PolytopeError::WitnessNotFinite);
        }
        let witness = PointRep::from_vector(witness).map_err(|_| PolytopeError::WitnessNotFinite)?;
        if witness.is_ideal() {
            return Err(PolytopeError::WitnessNotFinite);
        }
        if let Some(s) = sides.iter().find(|s| !witness.x.form(&s.e).lt_zero()) {
            return Err(PolytopeError::WitnessOutside(s.name.clone()));
        }
        Ok(Polyhedron {
            dim,
            sides,
            witness,
            lattice: OnceLock::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn sides(&self) -> &[HyperplaneVector<F>] {
        &self.sides
    }

    pub fn side(&self, i: usize) -> &HyperplaneVector<F> {
        &self.sides[i]
    }

    pub fn side_index(&self, name: &str) -> Option<usize> {
        self.sides.iter().position(|s| s.name == name)
    }

    pub fn witness(&self) -> &PointRep<F> {
        &self.witness
    }

    pub fn contains(&self, x: &MinkowskiVector<F>) -> bool {
        self.sides.iter().all(|s| !x.form(&s.e).gt_zero())
    }

    /// Vertices in canonical order.
    pub fn enumerate_vertices(&self) -> Vec<VertexRecord<F>> {
        let normals: Vec<MinkowskiVector<F>> = self.sides.iter().map(|s| s.e.clone()).collect();
        let raw = raw_vertices(self.dim, &normals, &normals);
        raw.into_iter()
            .enumerate()
            .map(|(id, (point, incident_sides))| VertexRecord {
                id,
                point,
                incident_sides,
            })
            .collect()
    }

    /// The face lattice, computed once.
    pub fn face_lattice(&self) -> Result<&FaceLattice<F>, PolytopeError> {
        if let Some(l) = self.lattice.get() {
            return Ok(l);
        }
        let l = build_lattice(self.dim, &self.sides, self.enumerate_vertices())?;
        let _ = self.lattice.set(l);
        Ok(self.lattice.get().expect("just set"))
    }

    /// Dihedral angle of every ridge.
    pub fn ridge_angles(&self) -> Result<Vec<RidgeAngle>, PolytopeError> {
        let lattice = self.face_lattice()?;
        lattice
            .faces(self.dim - 2)
            .iter()
            .enumerate()
            .map(|(ridge, f)| {
                let [a, b] = f.carriers[..] else {
                    return Err(PolytopeError::RidgeCarriers {
                        ridge,
                        carriers: f.carriers.len(),
                    });
                };
                match angle_class(&self.sides[a], &self.sides[b])? {
                    AngleClass::Intersecting(angle) => Ok(RidgeAngle {
                        ridge,
                        sides: (a, b),
                        angle,
                    }),
                    _ => Err(PolytopeError::RidgeNotIntersecting(
                        self.sides[a].name.clone(),
                        self.sides[b].name.clone(),
                    )),
                }
            })
            .collect()
    }

    /// The polyhedron `h ∩ P` in coordinates of an orthonormal basis of `h`.
    pub fn restrict(&self, h: &HyperplaneVector<F>) -> Result<Restriction<F>, PolytopeError> {
        let n = self.dim;
        if n - 1 < 3 {
            return Err(PolytopeError::UnsupportedDimension(n - 1));
        }
        let basis = hyperplane_basis(&h.e)?;
        let coords = |v: &MinkowskiVector<F>| -> MinkowskiVector<F> {
            MinkowskiVector(
                basis
                    .iter()
                    .enumerate()
                    .map(|(i, b)| {
                        let c = b.form(v);
                        if i == n - 1 {
                            -c
                        } else {
                            c
                        }
                    })
                    .collect(),
            )
        };
        let one = F::one();
        let mut candidates = Vec::new();
        let mut normals = Vec::new();
        for (i, s) in self.sides.iter().enumerate() {
            if h.same_hyperplane(&s.e) {
                continue;
            }
            let c = s.e.form(&h.e);
            if (c.clone() * &c).cmp_exact(&one) == Ordering::Less {
                candidates.push(i);
                normals.push(coords(&s.e));
            }
        }
        let constraints: Vec<MinkowskiVector<F>> = self
            .sides
            .iter()
            .filter(|s| !h.same_hyperplane(&s.e))
            .map(|s| coords(&s.e))
            .collect();
        let raw = raw_vertices(n - 1, &normals, &constraints);
        if raw.is_empty() {
            return Err(PolytopeError::NoInterior);
        }
        let pts: Vec<&MinkowskiVector<F>> = raw.iter().map(|(p, _)| &p.x).collect();
        let mut groups: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        for (k, &side) in candidates.iter().enumerate() {
            let verts: Vec<usize> = raw
                .iter()
                .enumerate()
                .filter(|(_, (_, inc))| inc.contains(&k))
                .map(|(v, _)| v)
                .collect();
            let rows: Vec<Vec<F>> = verts.iter().map(|&v| pts[v].0.clone()).collect();
            if rank(&rows) != n - 1 {
                continue;
            }
            match groups.iter_mut().find(|(vs, _)| *vs == verts) {
                Some((_, members)) => members.push(side),
                None => groups.push((verts, vec![side])),
            }
        }
        let mut sides = Vec::new();
        let mut sources = Vec::new();
        for (_, members) in groups {
            let first = &self.sides[members[0]];
            let c = coords(&first.e);
            let len = c
                .form(&c)
                .sqrt_exact()
                .ok_or_else(|| PolytopeError::SideNotRepresentable(first.name.clone()))?;
            let e = c.scale(&len.inv().expect("positive norm"));
            sides.push(HyperplaneVector::new(first.name.clone(), e)?);
            sources.push(members);
        }
        let mut centroid = MinkowskiVector::zero(n - 1);
        for p in &pts {
            centroid = centroid.add(p);
        }
        let ambient = to_ambient(&basis, &centroid);
        if !centroid.form(&centroid).lt_zero()
            || self
                .sides
                .iter()
                .any(|s| !h.same_hyperplane(&s.e) && !ambient.form(&s.e).lt_zero())
        {
            return Err(PolytopeError::NoInterior);
        }
        let polyhedron = Polyhedron::new(n - 1, sides, centroid)?;
        Ok(Restriction {
            polyhedron,
            hyperplane: h.clone(),
            basis,
            sources,
        })
    }
}

/// `h ∩ P` together with the coordinate change back to the ambient space.
#[derive(Clone, Debug)]
pub struct Restriction<F> {
    pub polyhedron: Polyhedron<F>,
    pub hyperplane: HyperplaneVector<F>,
    /// Orthonormal basis of `h^⊥`, spacelike vectors first, future timelike last.
    pub basis: Vec<MinkowskiVector<F>>,
    /// For each restricted side, the ambient sides cutting it out; the first
    /// gives the name.
    pub sources: Vec<Vec<usize>>,
}

impl<F: ExactField> Restriction<F> {
    pub fn to_ambient(&self, x: &MinkowskiVector<F>) -> MinkowskiVector<F> {
        to_ambient(&self.basis, x)
    }

    /// The restricted side cut out by ambient side `side`, if any.
    pub fn side_from_source(&self, side: usize) -> Option<usize> {
        self.sources.iter().position(|m| m.contains(&side))
    }

    /// The isometry of `h` induced by `g`, which must map `h` to `±h`.
    pub fn restrict_map(&self, g: &LorentzMap<F>) -> Result<LorentzMap<F>, PolytopeError> {
        if !self.hyperplane.same_hyperplane(&g.apply_hyperplane(&self.hyperplane)) {
            return Err(PolytopeError::MapDoesNotPreserve);
        }
        let m = self.basis.len();
        let images: Vec<MinkowskiVector<F>> = self.basis.iter().map(|b| g.apply(b)).collect();
        let rows: Vec<Vec<F>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        let c = self.basis[i].form(&images[j]);
                        if i == m - 1 {
                            -c
                        } else {
                            c
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(LorentzMap::new(SquareMatrix::from_rows(rows), g.word.clone())?)
    }
}

fn to_ambient<F: ExactField>(basis: &[MinkowskiVector<F>], x: &MinkowskiVector<F>) -> MinkowskiVector<F> {
    let mut out = MinkowskiVector::zero(basis[0].dim());
    for (b, c) in basis.iter().zip(&x.0) {
        out = out.add(&b.scale(c));
    }
    out
}

/// Orthonormal basis of `e^⊥` for a unit spacelike `e`, searched among
/// projections of coordinate vectors and their pairwise sums/differences so
/// that every normalization stays in the field.
fn hyperplane_basis<F: ExactField>(e: &MinkowskiVector<F>) -> Result<Vec<MinkowskiVector<F>>, PolytopeError> {
    let size = e.0.len();
    let unit = |i: usize| {
        let mut v = vec![F::zero(); size];
        v[i] = F::one();
        MinkowskiVector(v)
    };
    let mut candidates: Vec<MinkowskiVector<F>> = (0..size).rev().map(unit).collect();
    for i in 0..size {
        for j in i + 1..size {
            candidates.push(unit(i).add(&unit(j)));
            candidates.push(unit(i).sub(&unit(j)));
        }
    }
    let project = |v: &MinkowskiVector<F>| v.sub(&e.scale(&v.form(e)));
    let mut time = None;
    for c in &candidates {
        let w = project(c);
        let q = w.form(&w);
        if !q.lt_zero() {
            continue;
        }
        if let Some(r) = (-q).sqrt_exact() {
            let mut t = w.scale(&r.inv().expect("nonzero"));
            if t.last().lt_zero() {
                t = t.neg();
            }
            time = Some(t);
            break;
        }
    }
    let time = time.ok_or(PolytopeError::BasisNotRepresentable)?;
    let mut space: Vec<MinkowskiVector<F>> = Vec::new();
    for c in &candidates {
        if space.len() == size - 2 {
            break;
        }
        let mut w = project(c);
        w = w.add(&time.scale(&w.form(&time)));
        for b in &space {
            w = w.sub(&b.scale(&w.form(b)));
        }
        let q = w.form(&w);
        if !q.gt_zero() {
            continue;
        }
        if let Some(r) = q.sqrt_exact() {
            space.push(w.scale(&r.inv().expect("nonzero")));
        }
    }
    if space.len() != size - 2 {
        return Err(PolytopeError::BasisNotRepresentable);
    }
    space.push(time);
    Ok(space)
}

/// Lexicographic exact order on points: finite before ideal, then coordinates.
pub fn cmp_points<F: ExactField>(a: &PointRep<F>, b: &PointRep<F>) -> Ordering {
    a.kind.cmp(&b.kind).then_with(|| {
        a.x.0
            .iter()
            .zip(&b.x.0)
            .map(|(p, q)| p.cmp_exact(q))
            .find(|o| *o != Ordering::Equal)
            .unwrap_or(Ordering::Equal)
    })
}

/// Vertices cut out by `normals` (possibly unnormalized) that satisfy every
/// constraint `⟨x, c⟩ ≤ 0`; incidences index into `normals`. Sorted canonically.
fn raw_vertices<F: ExactField>(
    n: usize,
    normals: &[MinkowskiVector<F>],
    constraints: &[MinkowskiVector<F>],
) -> Vec<(PointRep<F>, Vec<usize>)> {
    let m = normals.len();
    let lowered: Vec<Vec<F>> = normals.iter().map(|e| e.lowered()).collect();
    let norms: Vec<F> = normals.iter().map(|e| e.form(e)).collect();
    // two hyperplanes share a point of the closed space only if |cos| ≤ 1
    let mut adj = vec![Vec::new(); m];
    for i in 0..m {
        for j in i + 1..m {
            let g = normals[i].form(&normals[j]);
            let lhs = g.clone() * &g;
            let rhs = norms[i].clone() * &norms[j];
            if lhs.cmp_exact(&rhs) != Ordering::Greater {
                adj[i].push(j);
            }
        }
    }
    let mut found: HashMap<MinkowskiVector<F>, PointRep<F>> = HashMap::new();
    let mut clique = Vec::with_capacity(n);
    for i in 0..m {
        clique.push(i);
        extend_clique(n, &lowered, &adj, &adj[i], &mut clique, &mut |rows| {
            let ns = nullspace(rows, n + 1);
            if ns.len() != 1 {
                return;
            }
            let Ok(p) = PointRep::from_vector(MinkowskiVector(ns[0].clone())) else {
                return;
            };
            if found.contains_key(&p.x) {
                return;
            }
            if constraints.iter().all(|c| !p.x.form(c).gt_zero()) {
                found.insert(p.x.clone(), p);
            }
        });
        clique.pop();
    }
    let mut out: Vec<(PointRep<F>, Vec<usize>)> = found
        .into_values()
        .map(|p| {
            let inc = (0..m).filter(|&j| p.x.form(&normals[j]).is_zero()).collect();
            (p, inc)
        })
        .collect();
    out.sort_by(|a, b| cmp_points(&a.0, &b.0));
    out
}

fn extend_clique<F: ExactField>(
    n: usize,
    lowered: &[Vec<F>],
    adj: &[Vec<usize>],
    candidates: &[usize],
    clique: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[Vec<F>]),
) {
    let rows: Vec<Vec<F>> = clique.iter().map(|&i| lowered[i].clone()).collect();
    if clique.len() > 1 && rank(&rows) < clique.len() {
        return;
    }
    if clique.len() == n {
        visit(&rows);
        return;
    }
    for (k, &c) in candidates.iter().enumerate() {
        let next: Vec<usize> = candidates[k + 1..]
            .iter()
            .copied()
            .filter(|x| adj[c].binary_search(x).is_ok())
            .collect();
        if next.len() + clique.len() + 1 < n {
            continue;
        }
        clique.push(c);
        extend_clique(n, lowered, adj, &next, clique, visit);
        clique.pop();
    }
}

fn build_lattice<F: ExactField>(
    n: usize,
    sides: &[HyperplaneVector<F>],
    vertices: Vec<VertexRecord<F>>,
) -> Result<FaceLattice<F>, PolytopeError> {
    let points: Vec<Vec<F>> = vertices.iter().map(|v| v.point.x.0.clone()).collect();
    let span_rank = |vs: &[usize]| rank(&vs.iter().map(|&v| points[v].clone()).collect::<Vec<_>>());
    let on_side: Vec<Vec<usize>> = (0..sides.len())
        .map(|s| {
            vertices
                .iter()
                .filter(|v| v.incident_sides.binary_search(&s).is_ok())
                .map(|v| v.id)
                .collect()
        })
        .collect();
    let carriers_of = |vs: &[usize]| -> Vec<usize> {
        (0..sides.len())
            .filter(|&s| vs.iter().all(|v| on_side[s].binary_search(v).is_ok()))
            .collect()
    };
    let mut faces: Vec<Vec<Face>> = vec![Vec::new(); n + 1];
    faces[n].push(Face {
        dim: n,
        carriers: Vec::new(),
        vertices: (0..vertices.len()).collect(),
    });
    let mut side_facet_sets: Vec<Option<Vec<usize>>> = vec![None; sides.len()];
    let mut level: HashSet<Vec<usize>> = HashSet::new();
    for (s, vs) in on_side.iter().enumerate() {
        if span_rank(vs) == n {
            side_facet_sets[s] = Some(vs.clone());
            level.insert(vs.clone());
        }
    }
    for dim in (1..n).rev() {
        let mut next: HashSet<Vec<usize>> = HashSet::new();
        let mut rejected: HashSet<Vec<usize>> = HashSet::new();
        let mut current: Vec<Face> = Vec::with_capacity(level.len());
        for vs in level.drain() {
            let carriers = carriers_of(&vs);
            if dim > 0 {
                for (s, os) in on_side.iter().enumerate() {
                    if carriers.binary_search(&s).is_ok() {
                        continue;
                    }
                    let w: Vec<usize> = vs
                        .iter()
                        .copied()
                        .filter(|v| os.binary_search(v).is_ok())
                        .collect();
                    if w.is_empty() || next.contains(&w) || rejected.contains(&w) {
                        continue;
                    }
                    if span_rank(&w) == dim {
                        next.insert(w);
                    } else {
                        rejected.insert(w);
                    }
                }
            }
            current.push(Face {
                dim,
                carriers,
                vertices: vs,
            });
        }
        faces[dim] = current;
        level = next;
    }
    faces[0] = vertices
        .iter()
        .map(|v| Face {
            dim: 0,
            carriers: v.incident_sides.clone(),
            vertices: vec![v.id],
        })
        .collect();
    if level.len() != vertices.len() && n > 1 {
        return Err(PolytopeError::InconsistentLattice(format!(
            "{} vertices reached from edges, {} enumerated",
            level.len(),
            vertices.len()
        )));
    }
    for dim in 1..n {
        faces[dim].sort_by(|a, b| {
            a.carriers
                .cmp(&b.carriers)
                .then_with(|| a.vertices.cmp(&b.vertices))
        });
    }
    for dim in 0..n {
        for f in &faces[dim] {
            if dim >= 1 && f.vertices.len() < 2 {
                return Err(PolytopeError::InconsistentLattice(format!(
                    "{dim}-face with fewer than two vertices"
                )));
            }
            let rows: Vec<Vec<F>> = f.carriers.iter().map(|&s| sides[s].e.0.clone()).collect();
            if rank(&rows) != n - dim {
                return Err(PolytopeError::InconsistentLattice(format!(
                    "{dim}-face carriers have rank {} instead of {}",
                    rank(&rows),
                    n - dim
                )));
            }
        }
    }
    let euler: i64 = (0..n)
        .map(|d| if d % 2 == 0 { 1 } else { -1 } * faces[d].len() as i64)
        .sum();
    let expected = if n.is_multiple_of(2) { 0 } else { 2 };
    if euler != expected {
        return Err(PolytopeError::InconsistentLattice(format!(
            "boundary Euler characteristic {euler}, expected {expected}"
        )));
    }
    let by_vertices: Vec<HashMap<Vec<usize>, usize>> = faces
        .iter()
        .map(|fs| {
            fs.iter()
                .enumerate()
                .map(|(i, f)| (f.vertices.clone(), i))
                .collect()
        })
        .collect();
    let side_facet = side_facet_sets
        .iter()
        .map(|vs| vs.as_ref().and_then(|vs| by_vertices[n - 1].get(vs).copied()))
        .collect();
    let by_point = vertices
        .iter()
        .map(|v| (v.point.x.clone(), v.id))
        .collect();
    Ok(FaceLattice {
        vertices,
        faces,
        by_vertices,
        by_point,
        side_facet,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorentz::{hyperplane_from_plane, hyperplane_from_sphere, interior_point, PlaneSide, SphereSide};
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(v: i64) -> Q {
        Q::from_int(v)
    }

    fn octahedron() -> Polyhedron<Q> {
        let mut sides = Vec::new();
        for (name, normal, side) in [
            ("X-", [1, 0], PlaneSide::Positive),
            ("X+", [1, 0], PlaneSide::Negative),
            ("Y-", [0, 1], PlaneSide::Positive),
            ("Y+", [0, 1], PlaneSide::Negative),
        ] {
            let off = if side == PlaneSide::Positive { q(-1) } else { q(1) };
            sides.push(hyperplane_from_plane(name, &[q(normal[0]), q(normal[1])], &off, side).unwrap());
        }
        for (name, c) in [("S1", [1, 0]), ("S2", [-1, 0]), ("S3", [0, 1]), ("S4", [0, -1])] {
            sides.push(hyperplane_from_sphere(name, &[q(c[0]), q(c[1])], &q(1), SphereSide::Exterior).unwrap());
        }
        Polyhedron::new(3, sides, interior_point(&[q(0), q(0)], &q(3))).unwrap()
    }

    #[test]
    fn ideal_octahedron_lattice() {
        let p = octahedron();
        let l = p.face_lattice().unwrap();
        assert_eq!(l.counts(), vec![6, 12, 8, 1]);
        assert_eq!(l.ideal_vertex_count(), 6);
        for r in p.ridge_angles().unwrap() {
            assert_eq!(r.angle, AnglePi::new(1, 2));
        }
    }

    #[test]
    fn rejects_bad_witness() {
        let p = octahedron();
        let sides = p.sides().to_vec();
        assert_eq!(
            Polyhedron::new(3, sides, interior_point(&[Q::from_ratio(1, 2), q(0)], &Q::from_ratio(1, 2))).unwrap_err(),
            PolytopeError::WitnessOutside("S1".into())
        );
    }

    #[test]
    fn rejects_duplicate_hyperplanes() {
        let p = octahedron();
        let mut sides = p.sides().to_vec();
        let mut dup = sides[0].flipped();
        dup.name = "dup".into();
        sides.push(dup);
        assert!(matches!(
            Polyhedron::new(3, sides, interior_point(&[q(0), q(0)], &q(3))),
            Err(PolytopeError::DuplicateHyperplane(..))
        ));
    }
}
