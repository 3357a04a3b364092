//! Strain-energy density and its deviatoric/volumetric split.
//!
//! The split u = ½ s:ε' + ½ p:ε^M is exact because the two cross
//! contractions s:ε^M and p:ε' vanish identically; rather than assuming
//! that, the split carries both residuals so callers (and tests) can see how
//! close to zero they actually land.  All double contractions run over full
//! tensor components — never Voigt vectors — so engineering shear cannot
//! double-count.

use crate::elasticity::{DecomposedLaw, LawKind};
use crate::tensor::{Kind, SymTensor2};

/// Energy density split into deviatoric and volumetric parts plus the two
/// cross-term residuals.  `total` is assembled as
/// `dev + vol + cross_sd/2 + cross_pd/2`, which is the exact expansion of
/// ½(s+p):(ε'+ε^M) — so the identity holds by construction and the quality
/// of the split shows up entirely in the cross terms.
#[derive(Clone, Copy, Debug)]
pub struct EnergySplit {
    pub total: f64,
    pub dev: f64,
    pub vol: f64,
    /// s:ε^M residual.
    pub cross_sd: f64,
    /// p:ε' residual.
    pub cross_pd: f64,
}

/// Split the energy of an already-matched stress/strain pair.  Callers that
/// obtained σ and ε together (e.g. at a quadrature point) use this directly;
/// the law-based entry points below derive the missing half first.
pub fn split_pair(stress: &SymTensor2, strain: &SymTensor2) -> EnergySplit {
    debug_assert_eq!(stress.kind(), Kind::Stress);
    debug_assert_eq!(strain.kind(), Kind::Strain);
    let sd = stress.decompose();
    let ed = strain.decompose();
    let (s, p) = (sd.dev, sd.vol);
    let (e_dev, e_mean) = (ed.dev, ed.vol);
    let dev = 0.5 * s.double_contract(&e_dev);
    let vol = 0.5 * p.double_contract(&e_mean);
    let cross_sd = s.double_contract(&e_mean);
    let cross_pd = p.double_contract(&e_dev);
    EnergySplit {
        total: dev + vol + 0.5 * cross_sd + 0.5 * cross_pd,
        dev,
        vol,
        cross_sd,
        cross_pd,
    }
}

/// Split of u = ½ ε:(C ε) for a strain state under a constitutive law.
pub fn energy_split_from_strain(law: &DecomposedLaw, eps: &SymTensor2) -> EnergySplit {
    assert_eq!(law.kind(), LawKind::Constitutive, "strain-side split needs a constitutive law");
    debug_assert_eq!(eps.kind(), Kind::Strain);
    let sigma = law.apply_full(eps);
    split_pair(&sigma, eps)
}

/// Split of u = ½ σ:(D σ) for a stress state under a compliance law.  Agrees
/// with [`energy_split_from_strain`] on the matched strain ε = D σ.
pub fn energy_split_from_stress(law: &DecomposedLaw, sigma: &SymTensor2) -> EnergySplit {
    assert_eq!(law.kind(), LawKind::Compliance, "stress-side split needs a compliance law");
    debug_assert_eq!(sigma.kind(), Kind::Stress);
    let eps = law.apply_full(sigma);
    split_pair(sigma, &eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elasticity::IsotropicMaterial;
    use approx::assert_relative_eq;

    #[test]
    fn hydrostatic_strain_is_purely_volumetric() {
        let m = IsotropicMaterial::new(200.0, 0.3).unwrap();
        let a = 1.5e-3;
        let split =
            energy_split_from_strain(&m.constitutive_law(), &SymTensor2::diag(Kind::Strain, [a, a, a]));
        // p_ij = 3Ka δ_ij against ε^M = a δ_ij: u = ½·3·(3Ka·a) = (9/2)Ka².
        let want = 4.5 * m.bulk() * a * a;
        assert_relative_eq!(split.vol, want, max_relative = 1e-12);
        assert!(split.dev.abs() <= 1e-15 * want);
        assert_relative_eq!(split.total, split.vol, max_relative = 1e-12);
    }

    #[test]
    fn pure_shear_strain_is_purely_deviatoric() {
        let m = IsotropicMaterial::new(200.0, 0.3).unwrap();
        let g = 2.0e-3;
        let split = energy_split_from_strain(
            &m.constitutive_law(),
            &SymTensor2::strain([0.0, 0.0, 0.0, g, 0.0, 0.0]),
        );
        // s12 = 2μg over both symmetric slots: u = ½·2·(2μg·g) = 2μg².
        let want = 2.0 * m.shear() * g * g;
        assert_relative_eq!(split.dev, want, max_relative = 1e-12);
        assert!(split.vol.abs() <= 1e-15 * want);
    }

    #[test]
    fn zero_strain_gives_zero_split() {
        let m = IsotropicMaterial::new(200.0, 0.3).unwrap();
        let split = energy_split_from_strain(&m.constitutive_law(), &SymTensor2::zero(Kind::Strain));
        assert_eq!(split.total, 0.0);
        assert_eq!(split.dev, 0.0);
        assert_eq!(split.vol, 0.0);
    }

    #[test]
    fn hydrostatic_stress_energy() {
        let m = IsotropicMaterial::new(150.0, 0.25).unwrap();
        let p = 7.0;
        let split =
            energy_split_from_stress(&m.compliance_law(), &SymTensor2::diag(Kind::Stress, [p, p, p]));
        // For σ = pδ the strain is ε = (p/3K)δ, so u = ½σ:ε = p²/(2K).  This
        // matches the strain-side test through p = 3Ka: (9/2)Ka² = p²/(2K).
        let want = 0.5 * p * p / m.bulk();
        assert_relative_eq!(split.vol, want, max_relative = 1e-12);
        assert_relative_eq!(split.total, want, max_relative = 1e-12);
    }

    #[test]
    fn shear_stress_energy() {
        let m = IsotropicMaterial::new(150.0, 0.25).unwrap();
        let tau = 3.0;
        let split = energy_split_from_stress(
            &m.compliance_law(),
            &SymTensor2::stress([0.0, 0.0, 0.0, tau, 0.0, 0.0]),
        );
        let want = tau * tau / (2.0 * m.shear());
        assert_relative_eq!(split.dev, want, max_relative = 1e-12);
        assert_relative_eq!(split.total, want, max_relative = 1e-12);
    }

    #[test]
    fn stress_and_strain_paths_agree() {
        let m = IsotropicMaterial::new(321.0, 0.12).unwrap();
        let c = m.constitutive_law();
        let d = m.compliance_law();
        let eps = SymTensor2::strain([1.1e-3, -0.4e-3, 0.2e-3, 0.6e-3, -0.3e-3, 0.9e-3]);
        let from_strain = energy_split_from_strain(&c, &eps);
        let from_stress = energy_split_from_stress(&d, &c.apply_full(&eps));
        assert_relative_eq!(from_strain.total, from_stress.total, max_relative = 1e-10);
        assert_relative_eq!(from_strain.dev, from_stress.dev, max_relative = 1e-10);
        assert_relative_eq!(from_strain.vol, from_stress.vol, max_relative = 1e-10);
    }
}
