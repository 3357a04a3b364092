//! Isotropic linear elasticity: material parameter conversions, the
//! constitutive and compliance tensors, and their closed-form
//! deviatoric/volumetric parts.
//!
//! The full tensors are written with the plain identity `δ_ki δ_lj` (not its
//! symmetrised cousin), which makes the projector compositions reproduce the
//! closed forms componentwise, not merely in action.  The volumetric parts
//! are built directly from the stored bulk modulus: every entry of `C^v` is
//! the `K` bit pattern or zero, so two materials sharing `K` share `C^v`
//! exactly — the property that lets a solver reuse the volumetric stiffness
//! across shear-modulus updates.

use crate::tensor::{DecompKind, Kind, Rank4, SymClass, SymTensor2, Voigt66};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum MaterialError {
    #[error("Young's modulus must be positive and finite, got {0}")]
    InvalidYoungsModulus(f64),
    #[error("Poisson's ratio must lie in (-1, 0.5), got {0}")]
    PoissonOutOfRange(f64),
    #[error("{name} must be positive and finite, got {value}")]
    NonPositiveModulus { name: &'static str, value: f64 },
}

/// Isotropic material with all five interchangeable constants derived at
/// construction.  Immutable, so derived values can never go stale.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IsotropicMaterial {
    e: f64,
    nu: f64,
    lambda: f64,
    mu: f64,
    bulk: f64,
}

impl IsotropicMaterial {
    /// From Young's modulus and Poisson's ratio.  ν = 0.5 is rejected: λ and
    /// K diverge there.  Nearly incompressible studies use ν ≤ 0.4999.
    pub fn new(e: f64, nu: f64) -> Result<Self, MaterialError> {
        if !(e.is_finite() && e > 0.0) {
            return Err(MaterialError::InvalidYoungsModulus(e));
        }
        if !(nu.is_finite() && nu > -1.0 && nu < 0.5) {
            return Err(MaterialError::PoissonOutOfRange(nu));
        }
        let lambda = e * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
        let mu = e / (2.0 * (1.0 + nu));
        let bulk = lambda + 2.0 * mu / 3.0;
        Ok(Self { e, nu, lambda, mu, bulk })
    }

    /// From bulk and shear moduli.  This is the constructor for workflows
    /// that update μ while holding K fixed: the stored `K` (and with it every
    /// entry of the volumetric law) is bit-identical across such updates.
    pub fn from_bulk_shear(bulk: f64, mu: f64) -> Result<Self, MaterialError> {
        if !(bulk.is_finite() && bulk > 0.0) {
            return Err(MaterialError::NonPositiveModulus { name: "bulk modulus", value: bulk });
        }
        if !(mu.is_finite() && mu > 0.0) {
            return Err(MaterialError::NonPositiveModulus { name: "shear modulus", value: mu });
        }
        let e = 9.0 * bulk * mu / (3.0 * bulk + mu);
        let nu = (3.0 * bulk - 2.0 * mu) / (2.0 * (3.0 * bulk + mu));
        let lambda = bulk - 2.0 * mu / 3.0;
        Ok(Self { e, nu, lambda, mu, bulk })
    }

    pub fn youngs(&self) -> f64 {
        self.e
    }

    pub fn poisson(&self) -> f64 {
        self.nu
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn shear(&self) -> f64 {
        self.mu
    }

    pub fn bulk(&self) -> f64 {
        self.bulk
    }

    /// Stiffness tensor `C = λ δ_kl δ_ij + 2μ δ_ki δ_lj` with its deviatoric
    /// part `(2μ/3)(3 δ_mi δ_nj − δ_ij δ_mn)` and volumetric part
    /// `K δ_ij δ_mn`.
    pub fn constitutive_law(&self) -> DecomposedLaw {
        let (la, mu, k) = (self.lambda, self.mu, self.bulk);
        let full = Rank4::from_fn(SymClass::MinorSymmetric, |i, j, kk, l| {
            la * f64::from(kron(kk, l) * kron(i, j)) + 2.0 * mu * f64::from(kron(kk, i) * kron(l, j))
        });
        let c = 2.0 * mu / 3.0;
        let dev = Rank4::from_fn(SymClass::MinorSymmetric, |i, j, m, n| {
            c * f64::from(3 * kron(m, i) * kron(n, j) - kron(i, j) * kron(m, n))
        });
        let vol = Rank4::from_fn(SymClass::MinorSymmetric, |i, j, m, n| {
            if i == j && m == n {
                k
            } else {
                0.0
            }
        });
        DecomposedLaw::build(LawKind::Constitutive, full, dev, vol)
    }

    /// Compliance tensor `D = (1/E)((1+ν) δ_ki δ_lj − ν δ_kl δ_ij)` with
    /// deviatoric part `(1/2μ)(δ_im δ_jn − δ_ij δ_mn/3)` and volumetric part
    /// `(1/9K) δ_ij δ_mn`.
    ///
    /// The 1/9K factor is forced by additivity: `D − D^d` at the 1111 slot is
    /// `1/E − 1/3μ = (1−2ν)/(6μ(1+ν)) = 1/9K`, and it is what the volumetric
    /// projector applied to `D` actually produces (the spherical trace of `D`
    /// is `δ_mn/3K`, and the projector carries a further 1/3).
    pub fn compliance_law(&self) -> DecomposedLaw {
        let a = (1.0 + self.nu) / self.e;
        let b = self.nu / self.e;
        let full = Rank4::from_fn(SymClass::MinorSymmetric, |i, j, k, l| {
            a * f64::from(kron(k, i) * kron(l, j)) - b * f64::from(kron(k, l) * kron(i, j))
        });
        let c = 1.0 / (2.0 * self.mu);
        let dev = Rank4::from_fn(SymClass::MinorSymmetric, |i, j, m, n| {
            c * f64::from(3 * kron(i, m) * kron(j, n) - kron(i, j) * kron(m, n)) / 3.0
        });
        let v = 1.0 / (9.0 * self.bulk);
        let vol = Rank4::from_fn(SymClass::MinorSymmetric, |i, j, m, n| {
            if i == j && m == n {
                v
            } else {
                0.0
            }
        });
        DecomposedLaw::build(LawKind::Compliance, full, dev, vol)
    }
}

fn kron(a: usize, b: usize) -> i32 {
    (a == b) as i32
}

/// Whether a decomposed law maps strain to stress or stress to strain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LawKind {
    Constitutive,
    Compliance,
}

/// A rank-4 law together with its deviatoric/volumetric parts and the cached
/// 6×6 Voigt images of all three.  `dev + vol` equals `full` componentwise
/// (to roundoff), and both parts agree with the projector compositions
/// `M^d·full` / `M^v·full`.
#[derive(Clone, Copy, Debug)]
pub struct DecomposedLaw {
    kind: LawKind,
    full: Rank4,
    dev: Rank4,
    vol: Rank4,
    voigt_full: Voigt66,
    voigt_dev: Voigt66,
    voigt_vol: Voigt66,
}

impl DecomposedLaw {
    fn build(kind: LawKind, full: Rank4, dev: Rank4, vol: Rank4) -> Self {
        let (row, col) = match kind {
            LawKind::Constitutive => (Kind::Stress, Kind::Strain),
            LawKind::Compliance => (Kind::Strain, Kind::Stress),
        };
        // The three tensors are minor-symmetric by construction, so the
        // Voigt images exist.
        let voigt_full = full.to_voigt66(row, col).expect("law has symmetric action");
        let voigt_dev = dev.to_voigt66(row, col).expect("law has symmetric action");
        let voigt_vol = vol.to_voigt66(row, col).expect("law has symmetric action");
        Self { kind, full, dev, vol, voigt_full, voigt_dev, voigt_vol }
    }

    pub fn kind(&self) -> LawKind {
        self.kind
    }

    pub fn full(&self) -> &Rank4 {
        &self.full
    }

    pub fn dev(&self) -> &Rank4 {
        &self.dev
    }

    pub fn vol(&self) -> &Rank4 {
        &self.vol
    }

    pub fn voigt_full(&self) -> &Voigt66 {
        &self.voigt_full
    }

    pub fn voigt_dev(&self) -> &Voigt66 {
        &self.voigt_dev
    }

    pub fn voigt_vol(&self) -> &Voigt66 {
        &self.voigt_vol
    }

    fn out_kind(&self) -> Kind {
        match self.kind {
            LawKind::Constitutive => Kind::Stress,
            LawKind::Compliance => Kind::Strain,
        }
    }

    fn in_kind(&self) -> Kind {
        match self.kind {
            LawKind::Constitutive => Kind::Strain,
            LawKind::Compliance => Kind::Stress,
        }
    }

    /// Full response: σ = C ε for a constitutive law, ε = D σ for compliance.
    pub fn apply_full(&self, t: &SymTensor2) -> SymTensor2 {
        debug_assert_eq!(t.kind(), self.in_kind());
        self.full.apply(t).with_kind(self.out_kind())
    }

    /// Deviatoric partial response (s from strain, ε' from stress).
    pub fn apply_dev(&self, t: &SymTensor2) -> SymTensor2 {
        debug_assert_eq!(t.kind(), self.in_kind());
        self.dev.apply(t).with_kind(self.out_kind())
    }

    /// Volumetric partial response (p from strain, ε^M from stress).
    pub fn apply_vol(&self, t: &SymTensor2) -> SymTensor2 {
        debug_assert_eq!(t.kind(), self.in_kind());
        self.vol.apply(t).with_kind(self.out_kind())
    }

    /// The projector compositions `M^d·full` / `M^v·full`, for checking the
    /// closed-form parts against the generic path.
    pub fn composed_parts(&self) -> (Rank4, Rank4) {
        (
            Rank4::multiplier(DecompKind::Dev).compose(&self.full),
            Rank4::multiplier(DecompKind::Vol).compose(&self.full),
        )
    }
}

/// The four partial responses for one strain/stress state under a matched
/// law pair, plus the residuals of the two completeness identities.
#[derive(Clone, Copy, Debug)]
pub struct RoundTrip {
    pub stress: SymTensor2,
    pub strain: SymTensor2,
    pub dev_stress: SymTensor2,
    pub pressure: SymTensor2,
    pub dev_strain: SymTensor2,
    pub mean_strain: SymTensor2,
    /// ‖(s + p) − C ε‖ / ‖C ε‖
    pub stress_completeness: f64,
    /// ‖(ε' + ε^M) − D σ‖ / ‖D σ‖
    pub strain_completeness: f64,
}

/// Evaluates both partial-response pipelines for one input state.  A strain
/// input is pushed through `C` to get the stress side; a stress input through
/// `D` for the strain side.  The laws must come from the same material for
/// the diagnostics to mean anything.
pub fn stress_strain_roundtrip(
    law_c: &DecomposedLaw,
    law_d: &DecomposedLaw,
    t: &SymTensor2,
) -> RoundTrip {
    assert_eq!(law_c.kind(), LawKind::Constitutive);
    assert_eq!(law_d.kind(), LawKind::Compliance);
    let (strain, stress) = match t.kind() {
        Kind::Strain => (*t, law_c.apply_full(t)),
        Kind::Stress => (law_d.apply_full(t), *t),
    };
    let dev_stress = law_c.apply_dev(&strain);
    let pressure = law_c.apply_vol(&strain);
    let dev_strain = law_d.apply_dev(&stress);
    let mean_strain = law_d.apply_vol(&stress);

    let recombined_stress = dev_stress + pressure;
    let recombined_strain = dev_strain + mean_strain;
    let denom_s = stress.norm().max(f64::MIN_POSITIVE);
    let denom_e = strain.norm().max(f64::MIN_POSITIVE);
    RoundTrip {
        stress,
        strain,
        dev_stress,
        pressure,
        dev_strain,
        mean_strain,
        stress_completeness: (recombined_stress - stress).norm() / denom_s,
        strain_completeness: (recombined_strain - strain).norm() / denom_e,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::Kind;
    use approx::assert_relative_eq;

    #[test]
    fn steel_constants() {
        let m = IsotropicMaterial::new(210_000.0, 0.3).unwrap();
        assert_relative_eq!(m.shear(), 80_769.230_769_230_77, max_relative = 1e-12);
        assert_relative_eq!(m.lambda(), 121_153.846_153_846_16, max_relative = 1e-12);
        assert_relative_eq!(m.bulk(), 175_000.0, max_relative = 1e-12);
    }

    #[test]
    fn zero_poisson_kills_lambda() {
        let m = IsotropicMaterial::new(3.0, 0.0).unwrap();
        assert_eq!(m.lambda(), 0.0);
        assert_eq!(m.shear(), 1.5);
        assert_eq!(m.bulk(), 1.0);
    }

    #[test]
    fn incompressible_limit_rejected() {
        assert_eq!(
            IsotropicMaterial::new(1.0, 0.5),
            Err(MaterialError::PoissonOutOfRange(0.5))
        );
        assert!(IsotropicMaterial::new(0.0, 0.3).is_err());
        assert!(IsotropicMaterial::new(-2.0, 0.3).is_err());
        assert!(IsotropicMaterial::new(1.0, -1.0).is_err());
    }

    #[test]
    fn bulk_shear_constructor_round_trips() {
        let m = IsotropicMaterial::new(210_000.0, 0.3).unwrap();
        let m2 = IsotropicMaterial::from_bulk_shear(m.bulk(), m.shear()).unwrap();
        assert_relative_eq!(m2.youngs(), m.youngs(), max_relative = 1e-12);
        assert_relative_eq!(m2.poisson(), m.poisson(), max_relative = 1e-12);
        assert_eq!(m2.bulk(), m.bulk());
        assert_eq!(m2.shear(), m.shear());
    }

    #[test]
    fn constitutive_closed_form_components() {
        let m = IsotropicMaterial::new(50.0, 0.25).unwrap();
        let law = m.constitutive_law();
        assert_eq!(law.vol().get(0, 0, 1, 1), m.bulk());
        assert_relative_eq!(law.dev().get(0, 0, 0, 0), 4.0 * m.shear() / 3.0, max_relative = 1e-15);
        assert_relative_eq!(law.dev().get(0, 0, 1, 1), -2.0 * m.shear() / 3.0, max_relative = 1e-15);
    }

    #[test]
    fn volumetric_law_ignores_shear_strain() {
        let m = IsotropicMaterial::new(50.0, 0.25).unwrap();
        let law = m.constitutive_law();
        let shear = SymTensor2::strain([0.0, 0.0, 0.0, 0.01, 0.0, 0.0]);
        let p = law.apply_vol(&shear);
        for c in p.components() {
            assert_eq!(c, 0.0);
        }
    }

    #[test]
    fn compliance_closed_form_components() {
        let m = IsotropicMaterial::new(70.0, 0.2).unwrap();
        let law = m.compliance_law();
        assert_relative_eq!(law.vol().get(0, 0, 0, 0), 1.0 / (9.0 * m.bulk()), max_relative = 1e-15);
        assert_relative_eq!(law.dev().get(0, 1, 0, 1), 1.0 / (2.0 * m.shear()), max_relative = 1e-15);
    }

    #[test]
    fn closed_forms_match_projector_compositions() {
        let m = IsotropicMaterial::new(210_000.0, 0.3).unwrap();
        for law in [m.constitutive_law(), m.compliance_law()] {
            let (dev_c, vol_c) = law.composed_parts();
            let scale = law.full().max_abs();
            assert!(law.dev().sub(&dev_c).max_abs() <= 1e-12 * scale);
            assert!(law.vol().sub(&vol_c).max_abs() <= 1e-12 * scale);
        }
    }

    #[test]
    fn laws_invert_each_other() {
        let m = IsotropicMaterial::new(123.0, 0.31).unwrap();
        let c = m.constitutive_law();
        let d = m.compliance_law();
        let eps = SymTensor2::strain([1.0e-3, -2.0e-3, 0.5e-3, 0.3e-3, -0.1e-3, 0.7e-3]);
        let back = d.apply_full(&c.apply_full(&eps));
        assert!((back - eps).norm() <= 1e-10 * eps.norm());
    }

    #[test]
    fn roundtrip_hydrostatic_strain() {
        let m = IsotropicMaterial::new(100.0, 0.3).unwrap();
        let (c, d) = (m.constitutive_law(), m.compliance_law());
        let a = 2.5e-3;
        let rt = stress_strain_roundtrip(&c, &d, &SymTensor2::diag(Kind::Strain, [a, a, a]));
        // p_ij = K ε_kk δ_ij with ε_kk = 3a; the deviatoric response is zero.
        for i in 0..3 {
            assert_relative_eq!(rt.pressure.get(i, i), 3.0 * m.bulk() * a, max_relative = 1e-12);
        }
        assert!(rt.dev_stress.norm() <= 1e-12 * rt.pressure.norm());
        assert!(rt.stress_completeness <= 1e-12);
    }

    #[test]
    fn roundtrip_pure_shear_strain() {
        let m = IsotropicMaterial::new(100.0, 0.3).unwrap();
        let (c, d) = (m.constitutive_law(), m.compliance_law());
        let g = 1.0e-3;
        let rt = stress_strain_roundtrip(
            &c,
            &d,
            &SymTensor2::strain([0.0, 0.0, 0.0, g, 0.0, 0.0]),
        );
        assert!(rt.pressure.norm() <= 1e-15);
        assert_relative_eq!(rt.dev_stress.get(0, 1), 2.0 * m.shear() * g, max_relative = 1e-12);
    }

    #[test]
    fn roundtrip_uniaxial_stress_mean_strain() {
        let m = IsotropicMaterial::new(100.0, 0.3).unwrap();
        let (c, d) = (m.constitutive_law(), m.compliance_law());
        let s = 42.0;
        let rt = stress_strain_roundtrip(&c, &d, &SymTensor2::diag(Kind::Stress, [s, 0.0, 0.0]));
        // ε^M_ij = (σ_kk/3)/(3K) δ_ij = σ/(9K) δ_ij for uniaxial σ.
        for i in 0..3 {
            assert_relative_eq!(
                rt.mean_strain.get(i, i),
                s / (9.0 * m.bulk()),
                max_relative = 1e-12
            );
        }
        assert!(rt.strain_completeness <= 1e-12);
    }
}
