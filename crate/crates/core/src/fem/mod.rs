//! P1 finite elements for the Steklov problem, reduced to the boundary by a
//! Schur complement (the discrete Dirichlet-to-Neumann map).

mod mesh;
mod solve;

pub use mesh::{triangulate, TriangleMesh};
pub use solve::{
    assemble, richardson, solve_steklov, steklov_spectrum, steklov_spectrum_extrapolated,
    Assembly, ExtrapolatedSpectrum, SteklovSolution, SymmetricMatrix,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FemError {
    #[error("mesh size must be positive, got {0}")]
    BadMeshSize(f64),
    #[error("degenerate polygon: {0}")]
    Degenerate(String),
    #[error("interior stiffness block is not positive definite")]
    SingularInterior,
    #[error("boundary mass matrix is not positive definite")]
    SingularMass,
    #[error("eigensolver failed: {0}")]
    Eigen(String),
    #[error("requested {requested} eigenvalues but the mesh has {available} boundary nodes")]
    TooFewBoundaryNodes { requested: usize, available: usize },
    #[error(transparent)]
    Geometry(#[from] crate::geometry::GeometryError),
}
