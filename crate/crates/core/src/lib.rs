//! Exact computation of local (p-adic) and topological zeta functions of
//! non-associative algebras, module actions, and polynomial families that are
//! non-degenerate with respect to their Newton polytopes.
//!
//! Everything is computed in exact rational arithmetic. The main pipeline is:
//!
//! 1. [`algebra`] turns structure constants into an integration problem over
//!    upper-triangular matrices ([`zeta::IntegralData`]).
//! 2. [`polyhedra`] and [`newton`] provide the convex-geometric data: Newton
//!    polytopes, face lattices, relatively open normal cones, visibility.
//! 3. [`conegen`] computes generating functions of half-open rational cones
//!    directly in substituted variables, producing [`ratfun::TermSum`] values.
//! 4. [`zeta`] assembles the local zeta function as a sum over visible faces
//!    and vanishing patterns, weighting by torus point counts ([`newton`])
//!    for the p-adic result or by Euler characteristics ([`euler`]) for the
//!    topological one ([`ratfun::TopRatFun`]).
//! 5. [`oracle`] holds independent brute-force verifiers (sublattice
//!    enumeration, congruence counting, direct lattice summation) used to
//!    cross-check every computed formula.

pub mod algebra;
pub mod conegen;
pub mod error;
pub mod euler;
pub mod exactlinalg;
pub mod laurent;
pub mod newton;
pub mod numeric;
pub mod oracle;
pub mod polyhedra;
pub mod ratfun;
pub mod render;
pub mod zeta;

pub use error::Error;
pub use numeric::{Int, Rat};
