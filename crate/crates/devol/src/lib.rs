//! Deviatoric/volumetric decomposition of stress, strain, and isotropic
//! elastic laws by constant rank-4 projection multipliers, together with two
//! numerical consumers of the split: a small-deformation FEM with decomposed
//! stiffness and selective reduced integration, and a BEM interior-field
//! evaluator that decomposes boundary-integral results.
//!
//! The crate is organised bottom-up:
//!
//! - [`tensor`]: symmetric rank-2/rank-4 algebra, Voigt conversions, the
//!   decomposition multipliers and stress/strain invariants.
//! - [`elasticity`]: isotropic materials, constitutive/compliance tensors and
//!   their closed-form deviatoric/volumetric parts.
//! - [`inelastic`]: von Mises yield value and plastic/viscoplastic flow rates.
//! - [`energy`]: strain-energy density split with orthogonality residuals.
//! - [`fem`]: meshes, decomposed element/global stiffness, solvers, field
//!   recovery and locking benchmarks.
//! - [`bem`]: plane-strain Kelvin kernels and decomposed interior fields.
//!
//! With the default `parallel` feature the element-stiffness batch in `fem`
//! and the interior-point sweep in `bem` run on rayon; sequential versions of
//! both are always compiled and are the fallback when the feature is off.

pub mod bem;
pub mod elasticity;
pub mod energy;
pub mod fem;
pub mod inelastic;
pub mod tensor;
pub mod tol;
