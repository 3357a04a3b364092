//! Finite elements with the stiffness split K = K^d + K^v.
//!
//! The split is computed, not post-processed: each element integrates the
//! deviatoric and volumetric constitutive parts under their own quadrature
//! rules, so selective reduced integration is just a choice of rule pair.
//! Everything downstream (assembly, solving, recovery, the locking studies)
//! works with the pair (K^d, K^v) and only ever forms K as their sum.

pub mod assemble;
pub mod element;
pub mod locking;
pub mod mesh;
pub mod quadrature;
pub mod recover;
pub mod solve;

pub use assemble::{assemble, assemble_serial, BoundaryConditions, GlobalSystem};
pub use element::{element_stiffness, restrict_voigt, ElementMatrices, IntegrationScheme};
pub use locking::{
    block_study, cantilever_oracle, cantilever_study, locking_study, Benchmark, LockingRow,
    LockingStudy,
};
pub use mesh::{Element, Mesh};
pub use quadrature::{gauss_legendre, GaussPoint};
pub use recover::{energy_totals, gauss_point_field, EnergyTotals, FieldRow};
pub use solve::{csc_mul_vec, solve, SolveReport, SolverConfig};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum FemError {
    #[error("mesh read failed at line {line}: {reason}")]
    BadMeshFile { line: usize, reason: String },
    #[error("element {elem} is degenerate: jacobian determinant {det:.3e} at a quadrature point")]
    DegenerateElement { elem: usize, det: f64 },
    #[error("node index {node} out of range (mesh has {nnodes} nodes)")]
    NodeOutOfRange { node: usize, nnodes: usize },
    #[error("boundary condition references dof ({node}, {dir}) outside the mesh")]
    BcOutOfRange { node: usize, dir: usize },
    #[error("system is not sufficiently constrained: {free} free dofs but only {fixed} prescribed")]
    InsufficientConstraints { free: usize, fixed: usize },
    #[error("direct factorization failed: matrix not positive definite")]
    NotSpd,
    #[error("iterative solver stalled at relative residual {residual:.3e} after {iters} iterations")]
    NonConvergence { residual: f64, iters: usize },
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}
