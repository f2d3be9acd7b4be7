//! Exact classical and quantum Schubert calculus on the Grassmannian `G(r, k)`.
//!
//! The crate builds the weighted polynomial presentation of the cohomology
//! ring (inverse series, log-series potential, Hessian, euler polynomial),
//! enumerates the critical points of the perturbed potential, and evaluates
//! residue sums over them in either the exact cyclotomic field `Q(ζ_2k)` or
//! in multiprecision complex floating point.
//!
//! Everything here is `no_std` with `alloc`; IO, caching and the command line
//! live in the companion `qschubert` crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod critical;
mod error;
pub mod invariants;
pub mod parser;
pub mod poly;
pub mod presentation;
pub mod schur;
mod symmetric;
pub mod univariate;

pub use critical::{Backend, CriticalLocus, CriticalPoint, PointValue};
pub use error::{Error, Result};
pub use poly::{Monomial, Rational, WeightedDegree, WeightedPoly};
pub use presentation::{GrassmannSpec, RingPresentation};
