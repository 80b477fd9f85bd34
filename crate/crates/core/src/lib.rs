//! Killing tensors on round spheres and complex projective spaces.
//!
//! * [`repdim`] evaluates the closed dimension formulas.
//! * [`series`] builds the generating functions of those dimensions and the
//!   Legendre-integral expression for the projective series.
//! * [`tensorlab`] recomputes the same dimensions by brute force, as exact
//!   ranks inside tensor powers of the model space.
//! * [`geomlab`] checks the curvature identities of the underlying
//!   connections numerically on coordinate charts.
//!
//! Everything except [`geomlab`] works in exact rational arithmetic
//! ([`exactnum`]).

pub mod error;
pub mod exactnum;
pub mod geomlab;
pub mod repdim;
pub mod series;
pub mod tensorlab;

pub use error::Error;
