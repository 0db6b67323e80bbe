//! Constrained Hamiltonian dynamics of a particle on the hyperbolic plane,
//! embedded in Minkowski 3-space.
//!
//! The crate covers the full pipeline for unidirectional potentials:
//!
//! - Minkowski linear algebra, the tangent-bundle Poisson bracket, and the
//!   Dirac bracket on the constraint variety ([`minkowski`], [`bracket`]);
//! - the three axial rotation classes (elliptic, hyperbolic, parabolic),
//!   their lifted actions and momentum maps ([`symmetry`]);
//! - constrained integration with projection and conservation diagnostics
//!   ([`dynamics`]);
//! - invariant-theoretic reduction through Hilbert maps: reduced varieties,
//!   brackets, lifts, and fibers ([`reduction`]);
//! - relative equilibria, level-set classification for linear potentials,
//!   and reconstruction topology ([`analysis`]);
//! - numeric certificates for the reduction machinery ([`certify`]) and a
//!   deterministic verification harness behind the `hyperpend verify`
//!   command ([`cli`]).

pub mod analysis;
pub mod bracket;
pub mod certify;
pub mod cli;
pub mod dynamics;
pub mod minkowski;
pub mod numeric;
pub mod phase;
pub mod poly;
pub mod reduction;
pub mod sample;
pub mod svg;
pub mod symmetry;
pub mod tol;

pub use minkowski::{lorentz_cross, lorentz_gradient, lorentz_inner, Mat3, MinkVec};
pub use phase::PhasePoint;
pub use reduction::ReducedPoint;
pub use symmetry::RotationClass;
pub use tol::Tolerances;
