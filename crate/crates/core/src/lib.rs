//! Solutions of the tt*-equation built from the level-`k` SU(2) fusion ring.
//!
//! * [`chebyshev`]: exact rational polynomials and the Chebyshev families.
//! * [`fusion`]: the fusion ring `R_k`, its residue pairing and the map `C`.
//! * [`rep`]: SU(2) representations, holomorphic and asymptotic data.
//! * [`potential`]: Laurent-polynomial loop matrices, gauge ladders between
//!   Smyth potentials, block splitting and reality symmetries.
//! * [`solver`]: radial sinh-Gordon shooting, system assembly and
//!   connection-form diagnostics.
//! * [`verify`]: the named check suite behind `ttstar verify`.

pub mod chebyshev;
pub mod cmatrix;
pub mod error;
pub mod fusion;
pub mod potential;
pub mod rational;
pub mod rep;
pub mod solver;
pub mod verify;

pub use error::{Error, Result};
