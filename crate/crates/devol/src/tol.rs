//! Numerical tolerances shared by the library and its test suites.
//!
//! Two regimes exist.  Quantities assembled purely from exact dyadic/third
//! constants (the decomposition multipliers and their sums) are compared
//! bit-for-bit with zero tolerance.  Everything that passes through general
//! floating-point composition is compared relative to the magnitude of the
//! operands, with margins wide enough to absorb accumulation order but tight
//! enough to catch any formula error.

/// Relative tolerance for floating-point compositions of tensors and laws
/// (projector products, closed-form comparisons, additivity checks).
pub const COMPOSITION_REL: f64 = 1e-12;

/// Absolute tolerance for products of the exact multiplier constants, which
/// accumulate at most a few ulps over nine-term contractions.
pub const MULTIPLIER_COMPOSE_ABS: f64 = 1e-14;

/// Relative tolerance for mutual-inverse and stress/strain path round trips,
/// which stack two law applications.
pub const ROUNDTRIP_REL: f64 = 1e-10;

/// Relative tolerance on symmetry and additivity of assembled FEM matrices.
pub const ASSEMBLY_REL: f64 = 1e-10;

/// Relative residual `‖Ku − f‖/‖f‖` demanded from a converged solve.
pub const SOLVER_RESIDUAL_REL: f64 = 1e-10;

/// Relative tolerance for global FEM energy identities, which sum many
/// quadrature contributions.
pub const ENERGY_REL: f64 = 1e-8;

/// Rank decisions (singular-value cutoff relative to the largest one).
pub const RANK_REL: f64 = 1e-10;
