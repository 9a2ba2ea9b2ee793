//! Exact verification of side-pairings of hyperbolic polytopes in dimensions
//! 3 and 4, with coordinates in `Q(√2)` or `Q`.

pub mod dataset;
pub mod document;
pub mod field;
pub mod invariance;
pub mod linalg;
pub mod lorentz;
pub mod pairing;
pub mod polytope;
pub mod report;
pub mod scalar;
pub mod topology;

pub use field::{ExactField, Sign};
pub use scalar::{QSqrt2, Rational, ScalarError};

/// The field every built-in object lives in.
pub type Scalar = QSqrt2;
pub type Vector = lorentz::MinkowskiVector<Scalar>;
pub type Hyperplane = lorentz::HyperplaneVector<Scalar>;
pub type Isometry = lorentz::LorentzMap<Scalar>;
pub type Polyhedron = polytope::Polyhedron<Scalar>;
pub type FaceLattice = polytope::FaceLattice<Scalar>;
pub type SidePairing = pairing::SidePairing<Scalar>;
