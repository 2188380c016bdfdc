//! Exact-arithmetic lattice geometry for toric multiplication-map experiments.
//!
//! The crate decides, with no floating point anywhere, questions of the shape
//! "is every lattice point of `P + Q` a sum of lattice points of `P` and `Q`?"
//! and the stronger "is `Q` covered by the lattice translates of `P` it
//! contains?" for convex lattice polytopes in dimension one to three, together
//! with the toric bookkeeping (complete fans, nef/ample line bundles, blow-ups,
//! intersection numbers, Hilbert bases of nef cones) needed to generate and
//! screen instances, and a dimension-two layer (chord functions, contact
//! points, translation-vector classification, covering certificates) for
//! smooth polygons.
//!
//! Everything is `BigInt`/`BigRational` based and immutable after
//! construction, so values can be shared freely across threads.

pub mod coverage;
pub mod error;
pub mod lattice;
pub mod oda;
pub mod polytope;
pub mod surface;
pub mod toric;

pub use coverage::{CoverReport, QuasiCoverReport};
pub use error::Error;
pub use oda::{CokernelReport, OrderReport, PsiReport};
pub use lattice::{Int, IntVector, Rat, RatVector};
pub use polytope::{
    Cone, EdgeDescriptor, FacetDescriptor, HalfSpace, LatticePolytope, Polyhedron,
    RationalPolytope,
};
pub use surface::{ChordFunction, ContactPointSet, ItnvReport, TranslationVectorType, TypeTag};
pub use toric::{
    BoundReport, Fan, InvariantCurveIndex, LinearSubsetIndex, SeparationBound, ToricLineBundle,
};

/// Convenience result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
