//! The hyperboloid model in Minkowski space R^{n,1}.
//!
//! Vectors are stored as `(v_1, …, v_{n-1}, α, β)` against the form
//! `⟨x, y⟩ = v·v′ + αα′ − ββ′`. A boundary point `p ∈ R^{n-1}` of the
//! upper half-space lifts to the null vector `(p, (|p|²−1)/2, (|p|²+1)/2)`,
//! an interior point `(p, t)` to
//! `(p/t, (|p|²+t²−1)/(2t), (|p|²+t²+1)/(2t))`, and `∞` to `(0, …, 0, 1, 1)`.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{ExactField, Sign};
use crate::linalg::{dot, SquareMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LorentzError {
    #[error("radius² must be positive, got {0}")]
    NonPositiveRadius(String),
    #[error("radius √({0}) is not representable in the coordinate field")]
    RadiusNotRepresentable(String),
    #[error("plane normal length √({0}) is not representable in the coordinate field")]
    NormalNotRepresentable(String),
    #[error("zero plane normal")]
    ZeroNormal,
    #[error("unrecognized dihedral angle with cosine {gamma}")]
    UnrecognizedAngle { gamma: String },
    #[error("matrix does not preserve the Minkowski form")]
    NotLorentz,
    #[error("matrix does not preserve the future light cone")]
    NotFutureCone,
    #[error("linear part is not orthogonal")]
    NotOrthogonal,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("vector is not a unit spacelike vector")]
    NotUnitSpacelike,
    #[error("vector is not in the closed future cone")]
    NotAPoint,
}

/// A vector of R^{n,1}; its length is `n + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MinkowskiVector<F>(pub Vec<F>);

impl<F: ExactField> MinkowskiVector<F> {
    pub fn new(coords: Vec<F>) -> Self {
        MinkowskiVector(coords)
    }

    pub fn zero(n: usize) -> Self {
        MinkowskiVector(vec![F::zero(); n + 1])
    }

    /// Hyperbolic dimension `n`.
    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn coords(&self) -> &[F] {
        &self.0
    }

    pub fn last(&self) -> &F {
        self.0.last().expect("nonempty vector")
    }

    pub fn form(&self, other: &Self) -> F {
        form(&self.0, &other.0)
    }

    pub fn scale(&self, s: &F) -> Self {
        MinkowskiVector(self.0.iter().map(|x| x.clone() * s).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        MinkowskiVector(self.0.iter().zip(&other.0).map(|(a, b)| a.clone() + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        MinkowskiVector(self.0.iter().zip(&other.0).map(|(a, b)| a.clone() - b).collect())
    }

    pub fn neg(&self) -> Self {
        MinkowskiVector(self.0.iter().map(|x| -x.clone()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    /// `J·x`, so that `⟨x, y⟩ = (J·x)·y` as a Euclidean dot product.
    pub fn lowered(&self) -> Vec<F> {
        let mut v = self.0.clone();
        let l = v.len() - 1;
        v[l] = -v[l].clone();
        v
    }
}

/// The Minkowski form on raw coordinate slices.
pub fn form<F: ExactField>(a: &[F], b: &[F]) -> F {
    let n = a.len() - 1;
    dot(&a[..n], &b[..n]) - a[n].clone() * &b[n]
}

/// Lift of the boundary point `p ∈ R^{n-1}`.
pub fn boundary_point<F: ExactField>(p: &[F]) -> MinkowskiVector<F> {
    let p2 = dot(p, p);
    let half = F::from_ratio(1, 2);
    let mut c = p.to_vec();
    c.push((p2.clone() - F::one()) * &half);
    c.push((p2 + F::one()) * &half);
    MinkowskiVector(c)
}

/// The ideal point `∞ = (0, …, 0, 1, 1)`.
pub fn infinity<F: ExactField>(n: usize) -> MinkowskiVector<F> {
    let mut c = vec![F::zero(); n + 1];
    c[n - 1] = F::one();
    c[n] = F::one();
    MinkowskiVector(c)
}

/// Lift of the upper half-space point `(p, t)`, `t > 0`, to `⟨x,x⟩ = −1`.
pub fn interior_point<F: ExactField>(p: &[F], t: &F) -> MinkowskiVector<F> {
    let inv2t = (t.clone() + t).inv().expect("t > 0");
    let tinv = t.inv().expect("t > 0");
    let s = dot(p, p) + t.clone() * t;
    let mut c: Vec<F> = p.iter().map(|x| x.clone() * &tinv).collect();
    c.push((s.clone() - F::one()) * &inv2t);
    c.push((s + F::one()) * &inv2t);
    MinkowskiVector(c)
}

/// Back to upper half-space coordinates `(p, t)`; `t = 0` for ideal points.
/// `∞` has no such coordinates and yields `None`.
pub fn to_half_space<F: ExactField>(x: &MinkowskiVector<F>) -> Option<(Vec<F>, F)> {
    let n = x.dim();
    let w = x.0[n].clone() - &x.0[n - 1];
    let winv = w.inv()?;
    let p: Vec<F> = x.0[..n - 1].iter().map(|c| c.clone() * &winv).collect();
    let nx = -x.form(x);
    let t = if nx.is_zero() {
        F::zero()
    } else {
        nx.sqrt_exact()? * &winv
    };
    Some((p, t))
}

/// A named unit spacelike vector `e`; the associated half-space is
/// `{x : ⟨x, e⟩ ≤ 0}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HyperplaneVector<F> {
    pub name: String,
    pub e: MinkowskiVector<F>,
}

/// Which closed side of a sphere the half-space keeps.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SphereSide {
    Interior,
    Exterior,
}

/// Which side of the plane `{n·p = d}` the half-space keeps.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlaneSide {
    /// `n·p ≤ d`
    Negative,
    /// `n·p ≥ d`
    Positive,
}

impl<F: ExactField> HyperplaneVector<F> {
    pub fn new(name: impl Into<String>, e: MinkowskiVector<F>) -> Result<Self, LorentzError> {
        if e.form(&e) != F::one() {
            return Err(LorentzError::NotUnitSpacelike);
        }
        Ok(HyperplaneVector {
            name: name.into(),
            e,
        })
    }

    pub fn dim(&self) -> usize {
        self.e.dim()
    }

    /// Sign of `⟨x, e⟩`: negative inside the half-space.
    pub fn side_of(&self, x: &MinkowskiVector<F>) -> Sign {
        x.form(&self.e).signum()
    }

    pub fn flipped(&self) -> Self {
        HyperplaneVector {
            name: self.name.clone(),
            e: self.e.neg(),
        }
    }

    /// Same hyperplane, either orientation.
    pub fn same_hyperplane(&self, other: &MinkowskiVector<F>) -> bool {
        self.e == *other || self.e.neg() == *other
    }
}

/// Hyperplane over the sphere `|p − c|² = r²` in `R^{n-1}`.
pub fn hyperplane_from_sphere<F: ExactField>(
    name: &str,
    center: &[F],
    radius_sq: &F,
    side: SphereSide,
) -> Result<HyperplaneVector<F>, LorentzError> {
    if !radius_sq.gt_zero() {
        return Err(LorentzError::NonPositiveRadius(radius_sq.to_string()));
    }
    let r = radius_sq
        .sqrt_exact()
        .ok_or_else(|| LorentzError::RadiusNotRepresentable(radius_sq.to_string()))?;
    let rinv = r.inv().expect("r > 0");
    let k = dot(center, center) - radius_sq;
    let half = F::from_ratio(1, 2);
    let mut c: Vec<F> = center.to_vec();
    c.push((k.clone() - F::one()) * &half);
    c.push((k + F::one()) * &half);
    let mut e = MinkowskiVector(c).scale(&rinv);
    // ⟨lift(p), e⟩ = −(|p−c|² − r²)/(2r): negative outside the ball
    if side == SphereSide::Interior {
        e = e.neg();
    }
    HyperplaneVector::new(name, e)
}

/// Hyperplane over the plane `{n·p = d}` in `R^{n-1}`.
pub fn hyperplane_from_plane<F: ExactField>(
    name: &str,
    normal: &[F],
    offset: &F,
    side: PlaneSide,
) -> Result<HyperplaneVector<F>, LorentzError> {
    let nn = dot(normal, normal);
    if nn.is_zero() {
        return Err(LorentzError::ZeroNormal);
    }
    let len = nn
        .sqrt_exact()
        .ok_or_else(|| LorentzError::NormalNotRepresentable(nn.to_string()))?;
    let linv = len.inv().expect("nonzero length");
    let d = offset.clone() * &linv;
    let mut c: Vec<F> = normal.iter().map(|x| x.clone() * &linv).collect();
    c.push(d.clone());
    c.push(d);
    let mut e = MinkowskiVector(c);
    // ⟨lift(p), e⟩ = n̂·p − d̂
    if side == PlaneSide::Positive {
        e = e.neg();
    }
    HyperplaneVector::new(name, e)
}

/// A dihedral angle as an exact rational multiple of π.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AnglePi(pub Ratio<i64>);

impl AnglePi {
    pub fn new(num: i64, den: i64) -> Self {
        AnglePi(Ratio::new(num, den))
    }

    pub fn zero() -> Self {
        AnglePi(Ratio::from_integer(0))
    }

    pub fn ratio(&self) -> Ratio<i64> {
        self.0
    }
}

impl std::ops::Add for AnglePi {
    type Output = AnglePi;

    fn add(self, o: AnglePi) -> AnglePi {
        AnglePi(self.0 + o.0)
    }
}

impl std::ops::Sub for AnglePi {
    type Output = AnglePi;

    fn sub(self, o: AnglePi) -> AnglePi {
        AnglePi(self.0 - o.0)
    }
}

impl std::ops::Mul<i64> for AnglePi {
    type Output = AnglePi;

    fn mul(self, k: i64) -> AnglePi {
        AnglePi(self.0 * k)
    }
}

impl fmt::Display for AnglePi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = (*self.0.numer(), *self.0.denom());
        match (n, d) {
            (0, _) => write!(f, "0"),
            (1, 1) => write!(f, "π"),
            (n, 1) => write!(f, "{n}π"),
            (1, d) => write!(f, "π/{d}"),
            (n, d) => write!(f, "{n}π/{d}"),
        }
    }
}

impl Serialize for AnglePi {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}/{}", self.0.numer(), self.0.denom()))
    }
}

/// Relative position of two hyperplanes.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum AngleClass {
    /// Meeting in H^n with the given interior dihedral angle.
    Intersecting(AnglePi),
    /// `|⟨e₁,e₂⟩| = 1`: tangent at infinity, or the same hyperplane.
    Tangent,
    /// `|⟨e₁,e₂⟩| > 1`: ultraparallel.
    Disjoint,
}

/// Recognizes `cos θ` for `θ ∈ {π/6, π/4, π/3, π/2, 2π/3, 3π/4, 5π/6}`.
pub fn recognize_cosine<F: ExactField>(gamma: &F) -> Option<AnglePi> {
    if gamma.is_zero() {
        return Some(AnglePi::new(1, 2));
    }
    let g2 = gamma.clone() * gamma;
    let neg = gamma.lt_zero();
    let pick = |acute: (i64, i64)| {
        if neg {
            AnglePi::new(acute.1 - acute.0, acute.1)
        } else {
            AnglePi::new(acute.0, acute.1)
        }
    };
    if g2 == F::from_ratio(1, 2) {
        Some(pick((1, 4)))
    } else if g2 == F::from_ratio(1, 4) {
        Some(pick((1, 3)))
    } else if g2 == F::from_ratio(3, 4) {
        Some(pick((1, 6)))
    } else {
        None
    }
}

/// Classifies two hyperplanes by `γ = −⟨e₁, e₂⟩`. For outward normals `γ`
/// is the cosine of the interior dihedral angle.
pub fn angle_class<F: ExactField>(
    e1: &HyperplaneVector<F>,
    e2: &HyperplaneVector<F>,
) -> Result<AngleClass, LorentzError> {
    let gamma = -e1.e.form(&e2.e);
    let g2 = gamma.clone() * &gamma;
    match g2.cmp_exact(&F::one()) {
        std::cmp::Ordering::Equal => Ok(AngleClass::Tangent),
        std::cmp::Ordering::Greater => Ok(AngleClass::Disjoint),
        std::cmp::Ordering::Less => recognize_cosine(&gamma)
            .map(AngleClass::Intersecting)
            .ok_or_else(|| LorentzError::UnrecognizedAngle {
                gamma: gamma.to_string(),
            }),
    }
}

/// Finite or ideal point of the closed hyperbolic space.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PointKind {
    Finite,
    Ideal,
}

/// A point in canonical scaling, last coordinate `> 0`.
///
/// Ideal points are scaled to last coordinate `1`. Finite points are scaled
/// to `⟨x,x⟩ = −1` whenever the required square root lies in the field, and
/// to last coordinate `1` otherwise; the choice depends only on the point, so
/// the representative is unique either way.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PointRep<F> {
    pub x: MinkowskiVector<F>,
    pub kind: PointKind,
}

impl<F: ExactField> PointRep<F> {
    /// Canonicalizes any nonzero vector of the closed future or past cone.
    pub fn from_vector(v: MinkowskiVector<F>) -> Result<Self, LorentzError> {
        let q = v.form(&v);
        if q.gt_zero() || v.last().is_zero() {
            return Err(LorentzError::NotAPoint);
        }
        let klein = v.scale(&v.last().inv().expect("nonzero last coordinate"));
        if q.is_zero() {
            return Ok(PointRep {
                x: klein,
                kind: PointKind::Ideal,
            });
        }
        let x = match (-klein.form(&klein)).sqrt_exact() {
            Some(r) => klein.scale(&r.inv().expect("nonzero norm")),
            None => klein,
        };
        Ok(PointRep {
            x,
            kind: PointKind::Finite,
        })
    }

    pub fn is_ideal(&self) -> bool {
        self.kind == PointKind::Ideal
    }

    /// Whether a finite point carries its hyperboloid representative.
    pub fn on_hyperboloid(&self) -> bool {
        self.x.form(&self.x) == -F::one()
    }
}

/// An isometry of H^n as an `(n+1)×(n+1)` matrix with `MᵀJM = J`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LorentzMap<F> {
    matrix: SquareMatrix<F>,
    /// Generator names this map was compiled from; reporting only.
    pub word: Vec<String>,
}

fn form_matrix<F: ExactField>(size: usize) -> SquareMatrix<F> {
    let mut j = SquareMatrix::identity(size);
    j.set(size - 1, size - 1, -F::one());
    j
}

impl<F: ExactField> LorentzMap<F> {
    /// Checks `MᵀJM = J` and preservation of the future cone.
    pub fn new(matrix: SquareMatrix<F>, word: Vec<String>) -> Result<Self, LorentzError> {
        let j = form_matrix::<F>(matrix.size());
        if matrix.transpose().mul(&j).mul(&matrix) != j {
            return Err(LorentzError::NotLorentz);
        }
        let n = matrix.size() - 1;
        if !matrix.get(n, n).gt_zero() {
            return Err(LorentzError::NotFutureCone);
        }
        Ok(LorentzMap { matrix, word })
    }

    pub fn identity(n: usize) -> Self {
        LorentzMap {
            matrix: SquareMatrix::identity(n + 1),
            word: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.size() - 1
    }

    pub fn matrix(&self) -> &SquareMatrix<F> {
        &self.matrix
    }

    pub fn is_lorentz(&self) -> bool {
        let j = form_matrix::<F>(self.matrix.size());
        self.matrix.transpose().mul(&j).mul(&self.matrix) == j
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        let mut word = self.word.clone();
        word.extend(other.word.iter().cloned());
        LorentzMap {
            matrix: self.matrix.mul(&other.matrix),
            word,
        }
    }

    /// `J Mᵀ J`.
    pub fn inverse(&self) -> Self {
        let j = form_matrix::<F>(self.matrix.size());
        let word = self
            .word
            .iter()
            .rev()
            .map(|w| invert_letter(w))
            .collect();
        LorentzMap {
            matrix: j.mul(&self.matrix.transpose()).mul(&j),
            word,
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = LorentzMap::identity(self.dim());
        for _ in 0..k {
            acc = acc.compose(self);
        }
        acc
    }

    pub fn with_word(mut self, word: Vec<String>) -> Self {
        self.word = word;
        self
    }

    pub fn apply(&self, x: &MinkowskiVector<F>) -> MinkowskiVector<F> {
        MinkowskiVector(self.matrix.apply(&x.0))
    }

    /// Image point, re-canonicalized.
    pub fn apply_point(&self, p: &PointRep<F>) -> PointRep<F> {
        let img = self.apply(&p.x);
        PointRep::from_vector(img).expect("isometries preserve canonical points")
    }

    /// Raw image of the normal vector; not re-oriented.
    pub fn apply_hyperplane(&self, h: &HyperplaneVector<F>) -> MinkowskiVector<F> {
        self.apply(&h.e)
    }

    /// Reflection `x ↦ x − 2⟨x,e⟩e` in a hyperplane.
    pub fn reflection(h: &HyperplaneVector<F>) -> Self {
        let size = h.e.0.len();
        let low = h.e.lowered();
        let mut m = SquareMatrix::<F>::identity(size);
        let two = F::from_int(2);
        for i in 0..size {
            for j in 0..size {
                let t = two.clone() * &h.e.0[i] * &low[j];
                let v = m.get(i, j).clone() - t;
                m.set(i, j, v);
            }
        }
        LorentzMap {
            matrix: m,
            word: vec![format!("inv:{}", h.name)],
        }
    }

    /// Extension of the Euclidean isometry `p ↦ U p + c` of `R^{n-1}` to H^n,
    /// acting as `(p, t) ↦ (Up + c, t)` in the upper half-space.
    pub fn euclidean(linear: &[Vec<F>], shift: &[F]) -> Result<Self, LorentzError> {
        let m = shift.len();
        if linear.len() != m || linear.iter().any(|r| r.len() != m) {
            return Err(LorentzError::DimensionMismatch {
                expected: m,
                got: linear.len(),
            });
        }
        let u = SquareMatrix::from_rows(linear.to_vec());
        if !u.transpose().mul(&u).is_identity() {
            return Err(LorentzError::NotOrthogonal);
        }
        let size = m + 2;
        let half = F::from_ratio(1, 2);
        let c2 = dot(shift, shift) * &half;
        // cᵀU
        let ctu: Vec<F> = (0..m)
            .map(|j| {
                let col: Vec<F> = (0..m).map(|i| u.get(i, j).clone()).collect();
                dot(shift, &col)
            })
            .collect();
        let mut rows = Vec::with_capacity(size);
        for i in 0..m {
            let mut r = u.row(i).to_vec();
            r.push(-shift[i].clone());
            r.push(shift[i].clone());
            rows.push(r);
        }
        let mut ra = ctu.clone();
        ra.push(F::one() - &c2);
        ra.push(c2.clone());
        rows.push(ra);
        let mut rb = ctu;
        rb.push(-c2.clone());
        rb.push(F::one() + &c2);
        rows.push(rb);
        LorentzMap::new(SquareMatrix::from_rows(rows), Vec::new())
    }

    pub fn translation(shift: &[F]) -> Self {
        let m = shift.len();
        let id: Vec<Vec<F>> = SquareMatrix::<F>::identity(m).rows();
        Self::euclidean(&id, shift).expect("translations are isometries")
    }

    /// Reflection in the Euclidean plane `{n·p = d}`; no square roots needed.
    pub fn plane_reflection(normal: &[F], offset: &F) -> Result<Self, LorentzError> {
        let nn = dot(normal, normal);
        let inv = nn.inv().ok_or(LorentzError::ZeroNormal)?;
        let m = normal.len();
        let two = F::from_int(2);
        let linear: Vec<Vec<F>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        let d = if i == j { F::one() } else { F::zero() };
                        d - two.clone() * &normal[i] * &normal[j] * &inv
                    })
                    .collect()
            })
            .collect();
        let shift: Vec<F> = normal
            .iter()
            .map(|x| two.clone() * offset * x * &inv)
            .collect();
        Self::euclidean(&linear, &shift)
    }
}

/// `a` ↔ `a^-1`.
pub fn invert_letter(w: &str) -> String {
    match w.strip_suffix("^-1") {
        Some(base) => base.to_string(),
        None if w.starts_with("inv:") => w.to_string(),
        None => format!("{w}^-1"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::QSqrt2;
    use num_traits::Zero;

    type S = QSqrt2;

    fn s(v: i64) -> S {
        S::from(v)
    }

    fn sq2() -> S {
        S::sqrt2()
    }

    fn sphere(c: [S; 3], side: SphereSide) -> HyperplaneVector<S> {
        hyperplane_from_sphere("s", &c, &s(2), side).unwrap()
    }

    #[test]
    fn sphere_boundary_points_are_on_hyperplane() {
        let h = sphere([s(1), s(1), s(0)], SphereSide::Exterior);
        assert_eq!(h.e.form(&h.e), s(1));
        // points with |p − c|² = 2
        for p in [
            [s(1), s(1), sq2()],
            [s(2), s(2), s(0)],
            [s(0), s(1), s(1)],
            [s(1), s(1) + sq2(), s(0)],
        ] {
            assert!(boundary_point(&p).form(&h.e).is_zero());
        }
    }

    #[test]
    fn sphere_orientation_sign_oracle() {
        let c = [s(0), s(0), -sq2()];
        let h = sphere(c.clone(), SphereSide::Exterior);
        // center of the ball is on the excluded side
        assert_eq!(h.side_of(&boundary_point(&c)), Sign::Positive);
        let far = [s(3), s(0), s(0)];
        assert_eq!(h.side_of(&boundary_point(&far)), Sign::Negative);
        let high = interior_point(&[s(0), s(0), -sq2()], &s(3));
        assert_eq!(h.side_of(&high), Sign::Negative);
        let low = interior_point(&[s(0), s(0), -sq2()], &S::from_ratio(1, 2));
        assert_eq!(h.side_of(&low), Sign::Positive);
        let hi = sphere(c, SphereSide::Interior);
        assert_eq!(hi.side_of(&low), Sign::Negative);
    }

    #[test]
    fn plane_hyperplanes() {
        let x2 = hyperplane_from_plane("X1'", &[s(1), s(0), s(0)], &s(2), PlaneSide::Negative).unwrap();
        assert_eq!(x2.e.0, vec![s(1), s(0), s(0), s(2), s(2)]);
        for p in [[s(0), s(0), s(0)], [s(-2), s(2), s(1)], [s(1), s(-1), sq2()]] {
            assert_eq!(x2.side_of(&interior_point(&p, &s(1))), Sign::Negative);
        }
        let diag = hyperplane_from_plane("q1", &[s(1), s(-1), s(0)], &s(0), PlaneSide::Negative).unwrap();
        let h = S::from_parts(0, 1, 1, 2);
        assert_eq!(diag.e.0, vec![h.clone(), -h, s(0), s(0), s(0)]);
        let z = hyperplane_from_plane("Z1", &[s(0), s(0), s(1)], &(-(sq2() + sq2())), PlaneSide::Positive)
            .unwrap();
        assert_eq!(z.e.form(&z.e), s(1));
    }

    #[test]
    fn angle_classes() {
        let a = sphere([s(1), s(1), s(0)], SphereSide::Exterior);
        let b = sphere([s(-1), s(1), s(0)], SphereSide::Exterior);
        assert_eq!(angle_class(&a, &b).unwrap(), AngleClass::Intersecting(AnglePi::new(1, 2)));
        let x = hyperplane_from_plane("X1'", &[s(1), s(0), s(0)], &s(2), PlaneSide::Negative).unwrap();
        assert_eq!(angle_class(&a, &x).unwrap(), AngleClass::Intersecting(AnglePi::new(1, 4)));
        assert_eq!(angle_class(&x, &a).unwrap(), AngleClass::Intersecting(AnglePi::new(1, 4)));
        assert_eq!(angle_class(&a, &a).unwrap(), AngleClass::Tangent);
        let far = sphere([s(10), s(0), s(0)], SphereSide::Exterior);
        assert_eq!(angle_class(&a, &far).unwrap(), AngleClass::Disjoint);
        let odd = hyperplane_from_sphere("o", &[s(1), s(0), s(0)], &s(1), SphereSide::Exterior).unwrap();
        let y = hyperplane_from_plane("Y", &[s(0), s(1), s(0)], &s(0), PlaneSide::Negative).unwrap();
        let y_shift = hyperplane_from_plane("Y", &[s(0), s(1), s(0)], &S::from_ratio(1, 5), PlaneSide::Negative)
            .unwrap();
        assert_eq!(angle_class(&odd, &y).unwrap(), AngleClass::Intersecting(AnglePi::new(1, 2)));
        assert!(matches!(
            angle_class(&odd, &y_shift),
            Err(LorentzError::UnrecognizedAngle { .. })
        ));
    }

    #[test]
    fn reflections() {
        let a = sphere([s(1), s(1), s(0)], SphereSide::Exterior);
        let r = LorentzMap::reflection(&a);
        assert!(r.is_lorentz());
        assert!(r.compose(&r).is_identity());
        assert_eq!(r.apply(&a.e), a.e.neg());
        let z0 = hyperplane_from_plane("z0", &[s(0), s(0), s(1)], &s(0), PlaneSide::Negative).unwrap();
        let rz = LorentzMap::reflection(&z0);
        assert_eq!(
            rz.apply(&boundary_point(&[s(0), s(0), s(1)])),
            boundary_point(&[s(0), s(0), s(-1)])
        );
    }

    #[test]
    fn euclidean_extensions() {
        let t0 = LorentzMap::translation(&[s(0), s(0), sq2() + sq2()]);
        let low = sphere([s(1), s(1), -(sq2() + sq2())], SphereSide::Exterior);
        let mid = sphere([s(1), s(1), s(0)], SphereSide::Exterior);
        assert_eq!(t0.apply_hyperplane(&low), mid.e);
        let q1 = LorentzMap::plane_reflection(&[s(1), s(-1), s(0)], &s(0)).unwrap();
        let b = sphere([s(0), s(0), sq2()], SphereSide::Exterior);
        assert_eq!(q1.apply_hyperplane(&b), b.e);
        assert!(q1.compose(&q1).is_identity());
        let id = LorentzMap::<S>::euclidean(&SquareMatrix::<S>::identity(3).rows(), &[s(0), s(0), s(0)]).unwrap();
        assert!(id.is_identity());
        let bad = vec![vec![s(2), s(0), s(0)], vec![s(0), s(1), s(0)], vec![s(0), s(0), s(1)]];
        assert_eq!(
            LorentzMap::euclidean(&bad, &[s(0), s(0), s(0)]),
            Err(LorentzError::NotOrthogonal)
        );
    }

    #[test]
    fn translation_matches_boundary_action() {
        let c = [s(4), s(-1), sq2()];
        let t = LorentzMap::translation(&c);
        let p = [s(1), s(2), s(3)];
        let moved: Vec<S> = p.iter().zip(&c).map(|(a, b)| a.clone() + b).collect();
        assert_eq!(t.apply(&boundary_point(&p)), boundary_point(&moved));
        assert_eq!(t.apply(&infinity(4)), infinity(4));
        let inv = t.inverse();
        assert!(inv.compose(&t).is_identity());
    }

    #[test]
    fn interior_points_lie_on_hyperboloid() {
        let x = interior_point(&[s(0), s(1), -(sq2() * S::from_ratio(3, 2))], &(sq2() * S::from_ratio(1, 2)));
        assert_eq!(x.form(&x), s(-1));
        let (p, t) = to_half_space(&x).unwrap();
        assert_eq!(p, vec![s(0), s(1), -(sq2() * S::from_ratio(3, 2))]);
        assert_eq!(t, sq2() * S::from_ratio(1, 2));
    }

    #[test]
    fn point_canonicalization() {
        let inf = PointRep::from_vector(infinity::<S>(4).scale(&s(-3))).unwrap();
        assert_eq!(inf.x, infinity(4));
        assert!(inf.is_ideal());
        let x = interior_point(&[s(0), s(0), s(0)], &s(3));
        let p = PointRep::from_vector(x.scale(&(sq2() + s(5)))).unwrap();
        assert_eq!(p.x, x);
        assert_eq!(p.kind, PointKind::Finite);
        assert!(p.on_hyperboloid());
        let q = PointRep::from_vector(MinkowskiVector::new(vec![s(0), s(0), s(0), s(1), s(2)])).unwrap();
        assert_eq!(q.x.0, vec![s(0), s(0), s(0), S::from_ratio(1, 2), s(1)]);
        assert!(!q.on_hyperboloid());
        assert_eq!(
            PointRep::from_vector(MinkowskiVector::new(vec![s(1), s(0), s(0), s(0), s(0)])),
            Err(LorentzError::NotAPoint)
        );
    }
}
