//! Steklov spectral geometry of convex polygons.
//!
//! Characteristic polynomials and their roots, eigenvalue upper bounds,
//! inverse-spectral candidate enumeration, and a finite-element Steklov solver
//! used as an independent check.

pub mod bounds;
pub mod cli;
pub mod charpoly;
pub mod exact;
pub mod fem;
pub mod geometry;
pub mod inverse;
pub mod io;
pub mod quasi;
pub mod sampling;
