//! Gauss-point field recovery and energy bookkeeping.
//!
//! Recovered rows live at the deviatoric-rule points (for `FULL` the two
//! rules coincide).  Energy totals are integrated scheme-matched: the
//! deviatoric density under the deviatoric rule and the volumetric density
//! under the volumetric rule, which is exactly how K^d and K^v were built —
//! so ½uᵀK^d u equals the integrated deviatoric energy to rounding, and the
//! same for the volumetric pair.

use nalgebra::DVector;

use crate::elasticity::{DecomposedLaw, LawKind};
use crate::energy::split_pair;
use crate::fem::element::{strain_at, IntegrationScheme};
use crate::fem::mesh::Mesh;
use crate::fem::quadrature::tensor_rule;
use crate::fem::FemError;
use crate::tensor::SymTensor2;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// One recovered quadrature point: the stress, its deviator, scalar
/// summaries, and the pointwise energy densities.
#[derive(Clone, Debug)]
pub struct FieldRow {
    pub elem: usize,
    pub gp: usize,
    pub coords: [f64; 3],
    pub stress: SymTensor2,
    /// Deviatoric part of `stress`.
    pub dev: SymTensor2,
    /// Mean stress tr(σ)/3.
    pub p: f64,
    pub j2: f64,
    pub u_dev: f64,
    pub u_vol: f64,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct EnergyTotals {
    pub dev: f64,
    pub vol: f64,
}

impl EnergyTotals {
    pub fn total(&self) -> f64 {
        self.dev + self.vol
    }

    pub fn dev_fraction(&self) -> f64 {
        let t = self.total();
        if t == 0.0 {
            0.0
        } else {
            self.dev / t
        }
    }
}

fn elem_disp(mesh: &Mesh, e: usize, u: &DVector<f64>) -> DVector<f64> {
    let dim = mesh.dim();
    let mut ue = DVector::zeros(dim * mesh.elem(e).nodes.len());
    for (a, &n) in mesh.elem(e).nodes.iter().enumerate() {
        for d in 0..dim {
            ue[dim * a + d] = u[dim * n + d];
        }
    }
    ue
}

fn rows_for_element(
    mesh: &Mesh,
    law: &DecomposedLaw,
    scheme: IntegrationScheme,
    u: &DVector<f64>,
    e: usize,
) -> Result<Vec<FieldRow>, FemError> {
    let coords = mesh.elem_coords(e);
    let ue = elem_disp(mesh, e, u);
    let mut rows = Vec::new();
    for (gp, (pt, _)) in tensor_rule(scheme.dev_order, mesh.dim()).into_iter().enumerate() {
        let (eps, x, _) = strain_at(e, mesh.dim(), &coords, &pt, &ue)?;
        let sigma = law.apply_full(&eps);
        let split = split_pair(&sigma, &eps);
        rows.push(FieldRow {
            elem: e,
            gp,
            coords: x,
            dev: sigma.decompose().dev,
            p: sigma.trace() / 3.0,
            j2: sigma.invariants().j2,
            stress: sigma,
            u_dev: split.dev,
            u_vol: split.vol,
        });
    }
    Ok(rows)
}

/// Recovered rows for the whole mesh, element order, dev-rule points.
pub fn gauss_point_field(
    mesh: &Mesh,
    law: &DecomposedLaw,
    scheme: IntegrationScheme,
    u: &DVector<f64>,
) -> Result<Vec<FieldRow>, FemError> {
    assert_eq!(law.kind(), LawKind::Constitutive);
    let nested: Result<Vec<Vec<FieldRow>>, FemError> = {
        #[cfg(feature = "parallel")]
        {
            (0..mesh.nelems())
                .into_par_iter()
                .map(|e| rows_for_element(mesh, law, scheme, u, e))
                .collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            (0..mesh.nelems())
                .map(|e| rows_for_element(mesh, law, scheme, u, e))
                .collect()
        }
    };
    Ok(nested?.into_iter().flatten().collect())
}

/// Serial twin of [`gauss_point_field`], for path comparisons.
pub fn gauss_point_field_serial(
    mesh: &Mesh,
    law: &DecomposedLaw,
    scheme: IntegrationScheme,
    u: &DVector<f64>,
) -> Result<Vec<FieldRow>, FemError> {
    assert_eq!(law.kind(), LawKind::Constitutive);
    let mut rows = Vec::new();
    for e in 0..mesh.nelems() {
        rows.extend(rows_for_element(mesh, law, scheme, u, e)?);
    }
    Ok(rows)
}

/// Scheme-matched integrated energies; see the module docs for why these
/// reproduce ½uᵀK^d u and ½uᵀK^v u.
pub fn energy_totals(
    mesh: &Mesh,
    law: &DecomposedLaw,
    scheme: IntegrationScheme,
    u: &DVector<f64>,
) -> Result<EnergyTotals, FemError> {
    assert_eq!(law.kind(), LawKind::Constitutive);
    let dim = mesh.dim();
    let dev_rule = tensor_rule(scheme.dev_order, dim);
    let vol_rule = tensor_rule(scheme.vol_order, dim);
    let mut out = EnergyTotals::default();
    for e in 0..mesh.nelems() {
        let coords = mesh.elem_coords(e);
        let ue = elem_disp(mesh, e, u);
        for (pt, w) in &dev_rule {
            let (eps, _, det) = strain_at(e, dim, &coords, pt, &ue)?;
            let split = split_pair(&law.apply_full(&eps), &eps);
            out.dev += split.dev * det * w;
        }
        for (pt, w) in &vol_rule {
            let (eps, _, det) = strain_at(e, dim, &coords, pt, &ue)?;
            let split = split_pair(&law.apply_full(&eps), &eps);
            out.vol += split.vol * det * w;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elasticity::IsotropicMaterial;
    use crate::fem::assemble::{assemble, BoundaryConditions};
    use crate::fem::solve::csc_mul_vec;
    use approx::assert_relative_eq;

    /// Nodal displacements of a linear field: every Gauss point must see the
    /// same strain, hence the same stress and densities.
    #[test]
    fn uniform_strain_field_is_recovered_everywhere() {
        let mesh = Mesh::rect_grid(3, 3, 1.0, 1.0);
        let mat = IsotropicMaterial::new(100.0, 0.25).unwrap();
        let law = mat.constitutive_law();
        let (a, b) = (2e-3, -1e-3);
        let mut u = DVector::zeros(mesh.ndof());
        for n in 0..mesh.nnodes() {
            let p = mesh.node(n);
            u[2 * n] = a * p[0];
            u[2 * n + 1] = b * p[1];
        }
        let rows = gauss_point_field(&mesh, &law, IntegrationScheme::FULL, &u).unwrap();
        assert_eq!(rows.len(), mesh.nelems() * 4);
        let eps = SymTensor2::strain([a, b, 0.0, 0.0, 0.0, 0.0]);
        let sigma = law.apply_full(&eps);
        for r in &rows {
            for i in 0..3 {
                for j in 0..3 {
                    assert_relative_eq!(
                        r.stress.get(i, j),
                        sigma.get(i, j),
                        max_relative = 1e-10,
                        epsilon = 1e-12
                    );
                }
            }
            assert_relative_eq!(r.p, sigma.trace() / 3.0, max_relative = 1e-10);
        }
    }

    #[test]
    fn serial_and_default_recovery_agree() {
        let mesh = Mesh::rect_grid(4, 2, 2.0, 1.0);
        let law = IsotropicMaterial::new(10.0, 0.3).unwrap().constitutive_law();
        let mut u = DVector::zeros(mesh.ndof());
        for i in 0..u.len() {
            u[i] = (i as f64 * 0.37).sin() * 1e-3; // deterministic, nothing special
        }
        let a = gauss_point_field(&mesh, &law, IntegrationScheme::VOL_REDUCED, &u).unwrap();
        let b = gauss_point_field_serial(&mesh, &law, IntegrationScheme::VOL_REDUCED, &u).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.stress.components(), y.stress.components());
            assert_eq!(x.u_dev, y.u_dev);
        }
    }

    /// The load-bearing identity: quadrature sums of the pointwise densities
    /// reproduce the matrix energies for every scheme.
    #[test]
    fn energy_totals_match_matrix_energies() {
        let mesh = Mesh::rect_grid(3, 2, 1.5, 1.0);
        let law = IsotropicMaterial::new(7.0, 0.32).unwrap().constitutive_law();
        let mut u = DVector::zeros(mesh.ndof());
        for i in 0..u.len() {
            u[i] = ((i * i + 1) as f64 * 0.731).cos() * 2e-3;
        }
        for scheme in [
            IntegrationScheme::FULL,
            IntegrationScheme::VOL_REDUCED,
            IntegrationScheme::DEV_REDUCED,
        ] {
            let sys = assemble(&mesh, &law, scheme, &BoundaryConditions::new()).unwrap();
            let tot = energy_totals(&mesh, &law, scheme, &u).unwrap();
            let ed = 0.5 * u.dot(&csc_mul_vec(&sys.kd, &u));
            let ev = 0.5 * u.dot(&csc_mul_vec(&sys.kv, &u));
            assert_relative_eq!(tot.dev, ed, max_relative = 1e-10);
            assert_relative_eq!(tot.vol, ev, max_relative = 1e-10);
            let et = 0.5 * u.dot(&csc_mul_vec(&sys.k, &u));
            assert_relative_eq!(tot.total(), et, max_relative = 1e-10);
        }
    }
}
