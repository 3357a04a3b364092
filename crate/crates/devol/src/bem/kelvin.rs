//! Point-load (Kelvin) kernels for 2D plane strain.
//!
//! The provider returns, for a field point ξ and boundary point x with
//! outward normal n, the four kernel families that the interior integrals
//! contract against boundary tractions and displacements.  Stress kernels
//! are completed out of plane (σ33 = ν(σ11+σ22), a linear operation, so it
//! may be applied per kernel); strain kernels are the compliance applied to
//! the stress kernels, which makes ε33 vanish identically for plane-strain-
//! consistent states.
//!
//! The authoritative correctness statement for these constants is
//! operational: feeding the exact boundary data of a homogeneous state must
//! reproduce that state at interior points (see the interior-evaluation
//! tests), not any particular transcription of the formulas.

use crate::elasticity::{DecomposedLaw, IsotropicMaterial};
use crate::tensor::{Kind, SymTensor2};

/// Kernel values at one (ξ, x, n) triple, indexed by the boundary-data
/// direction k ∈ {0, 1}.  `g_*` multiply tractions, `f_*` multiply
/// displacements.
#[derive(Clone, Debug)]
pub struct KernelSample {
    pub g_stress: [SymTensor2; 2],
    pub f_stress: [SymTensor2; 2],
    pub g_strain: [SymTensor2; 2],
    pub f_strain: [SymTensor2; 2],
}

pub trait KernelProvider: Sync {
    fn eval(&self, xi: [f64; 2], x: [f64; 2], normal: [f64; 2]) -> KernelSample;

    /// Material the kernels are built for (used by consumers that need the
    /// matching compliance).
    fn material(&self) -> &IsotropicMaterial;
}

/// 2D plane-strain Kelvin kernels for an isotropic material.
pub struct PlaneStrainKelvin {
    material: IsotropicMaterial,
    compliance: DecomposedLaw,
}

impl PlaneStrainKelvin {
    pub fn new(material: IsotropicMaterial) -> PlaneStrainKelvin {
        PlaneStrainKelvin { compliance: material.compliance_law(), material }
    }
}

/// Complete an in-plane symmetric pair table to a full plane-strain stress
/// tensor: σ33 = ν(σ11 + σ22).
fn complete([k11, k22, k12]: [f64; 3], nu: f64) -> SymTensor2 {
    SymTensor2::new(Kind::Stress, [k11, k22, nu * (k11 + k22), k12, 0.0, 0.0])
}

impl KernelProvider for PlaneStrainKelvin {
    fn eval(&self, xi: [f64; 2], x: [f64; 2], normal: [f64; 2]) -> KernelSample {
        let nu = self.material.poisson();
        let mu = self.material.shear();
        let dx = [x[0] - xi[0], x[1] - xi[1]];
        let r = dx[0].hypot(dx[1]);
        debug_assert!(r > 0.0, "kernel evaluated at the source point");
        let rd = [dx[0] / r, dx[1] / r];
        let drdn = rd[0] * normal[0] + rd[1] * normal[1];
        let kron = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };

        let cg = 1.0 / (4.0 * std::f64::consts::PI * (1.0 - nu) * r);
        let cf = mu / (2.0 * std::f64::consts::PI * (1.0 - nu) * r * r);
        let (om2, om4) = (1.0 - 2.0 * nu, 1.0 - 4.0 * nu);

        let mut g_stress = [SymTensor2::zero(Kind::Stress); 2];
        let mut f_stress = [SymTensor2::zero(Kind::Stress); 2];
        for k in 0..2 {
            let mut g = [0.0; 3];
            let mut f = [0.0; 3];
            for (slot, (i, j)) in [(0usize, 0usize), (1, 1), (0, 1)].into_iter().enumerate() {
                g[slot] = cg
                    * (om2 * (kron(k, i) * rd[j] + kron(k, j) * rd[i] - kron(i, j) * rd[k])
                        + 2.0 * rd[i] * rd[j] * rd[k]);
                f[slot] = cf
                    * (2.0
                        * drdn
                        * (om2 * kron(i, j) * rd[k]
                            + nu * (kron(i, k) * rd[j] + kron(j, k) * rd[i])
                            - 4.0 * rd[i] * rd[j] * rd[k])
                        + 2.0 * nu * (normal[i] * rd[j] * rd[k] + normal[j] * rd[i] * rd[k])
                        + om2
                            * (2.0 * normal[k] * rd[i] * rd[j]
                                + normal[j] * kron(i, k)
                                + normal[i] * kron(j, k))
                        - om4 * normal[k] * kron(i, j));
            }
            g_stress[k] = complete(g, nu);
            f_stress[k] = complete(f, nu);
        }
        let g_strain = [
            self.compliance.apply_full(&g_stress[0]),
            self.compliance.apply_full(&g_stress[1]),
        ];
        let f_strain = [
            self.compliance.apply_full(&f_stress[0]),
            self.compliance.apply_full(&f_stress[1]),
        ];
        KernelSample { g_stress, f_stress, g_strain, f_strain }
    }

    fn material(&self) -> &IsotropicMaterial {
        &self.material
    }
}
