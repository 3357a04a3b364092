//! Boundary-integral interior fields with the deviatoric/volumetric split.
//!
//! Boundary tractions and displacements are inputs (no boundary solve):
//! the module evaluates interior stress and strain from them and splits both
//! with the constant multipliers.  Because the multipliers are constant they
//! commute with the integral sign — the split of the integral equals the
//! integral of split kernels, and the tests hold the implementation to that.

pub mod interior;
pub mod kelvin;
pub mod mesh;

pub use interior::{
    interior_batch, interior_batch_serial, interior_point, interior_strain, interior_strain_split,
    interior_stress, interior_stress_split, interior_stress_split_premultiplied, EvalOptions,
    InteriorPoint, StrainSplit, StressSplit,
};
pub use kelvin::{KernelProvider, KernelSample, PlaneStrainKelvin};
pub use mesh::{BoundaryMesh, Segment};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum BemError {
    #[error("boundary file read failed at line {line}: {reason}")]
    BadBoundaryFile { line: usize, reason: String },
    #[error("boundary is invalid: {reason}")]
    InvalidBoundary { reason: String },
    #[error(
        "evaluation point ({x:.6}, {y:.6}) is {dist:.3e} from the boundary, inside the floor {floor:.3e}"
    )]
    TooClose { x: f64, y: f64, dist: f64, floor: f64 },
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}
