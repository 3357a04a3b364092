//! Point evaluations of the von Mises yield function and the plastic /
//! viscoplastic flow-rate formulas.  No time integration and no consistency
//! solve: the rates are evaluated at a given stress state, with the plastic
//! multiplier supplied by the caller.

use crate::tensor::{Kind, SymTensor2};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum YieldParamError {
    #[error("yield stress must be positive and finite, got {0}")]
    InvalidYieldStress(f64),
    #[error("viscosity must be positive and finite, got {0}")]
    InvalidViscosity(f64),
    #[error("plastic multiplier rate must be finite and non-negative, got {0}")]
    InvalidMultiplierRate(f64),
}

/// Yield and flow parameters: uniaxial yield stress σ_Y with the derived
/// shear yield value k (k² = σ_Y²/3), viscosity η for the Perzyna model, and
/// the plastic multiplier rate λ̇ for the rate-independent flow rule.
#[derive(Clone, Copy, Debug)]
pub struct YieldParams {
    sigma_y: f64,
    k: f64,
    eta: f64,
    lambda_dot: f64,
}

impl YieldParams {
    pub fn new(sigma_y: f64, eta: f64, lambda_dot: f64) -> Result<Self, YieldParamError> {
        if !(sigma_y.is_finite() && sigma_y > 0.0) {
            return Err(YieldParamError::InvalidYieldStress(sigma_y));
        }
        if !(eta.is_finite() && eta > 0.0) {
            return Err(YieldParamError::InvalidViscosity(eta));
        }
        if !(lambda_dot.is_finite() && lambda_dot >= 0.0) {
            return Err(YieldParamError::InvalidMultiplierRate(lambda_dot));
        }
        Ok(Self { sigma_y, k: sigma_y / 3.0_f64.sqrt(), eta, lambda_dot })
    }

    pub fn sigma_y(&self) -> f64 {
        self.sigma_y
    }

    /// Shear yield value k = σ_Y/√3.
    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn lambda_dot(&self) -> f64 {
        self.lambda_dot
    }
}

/// Yield value f = J2(σ) − k².  Negative inside the elastic domain, zero on
/// the yield surface; insensitive to any hydrostatic shift of σ.
pub fn von_mises_yield(sigma: &SymTensor2, p: &YieldParams) -> f64 {
    sigma.invariants().j2 - p.k * p.k
}

/// Rate-independent flow rate ε̇^p = λ̇ s.  Traceless because s is: plastic
/// flow is isochoric.  The result is a strain rate, tagged accordingly.
pub fn plastic_flow_rate(sigma: &SymTensor2, p: &YieldParams) -> SymTensor2 {
    sigma.decompose().dev.scale(p.lambda_dot).with_kind(Kind::Strain)
}

/// Perzyna viscoplastic rate (1/2η)⟨1 − k/√J2⟩ s.
///
/// The Macaulay bracket clips to zero whenever J2 ≤ k², which also covers the
/// k/√J2 singularity at s = 0: the guard fires before any division happens,
/// so the rate is exactly zero inside and on the yield surface.
pub fn perzyna_flow_rate(sigma: &SymTensor2, p: &YieldParams) -> SymTensor2 {
    let s = sigma.decompose().dev;
    let j2 = sigma.invariants().j2;
    if j2 <= p.k * p.k {
        return SymTensor2::zero(Kind::Strain);
    }
    let overstress = 1.0 - p.k / j2.sqrt();
    s.scale(overstress / (2.0 * p.eta)).with_kind(Kind::Strain)
}
