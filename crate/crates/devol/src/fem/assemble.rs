//! Global assembly of the stiffness pair (K^d, K^v).
//!
//! Element matrices are computed independently (in parallel when the
//! `parallel` feature is on) and then pushed into triplet form in element
//! order by a single thread, so the assembled matrices are bitwise
//! reproducible run to run and identical between the parallel and serial
//! paths.  K^d and K^v are pushed with the same (row, col) sequence, which
//! makes their sparsity patterns equal; K is then formed value-by-value as
//! kd + kv, so K = K^d + K^v holds componentwise exactly.

use nalgebra::DVector;
use nalgebra_sparse::{CooMatrix, CscMatrix};

use crate::elasticity::{DecomposedLaw, LawKind};
use crate::fem::element::{element_stiffness, restrict_voigt, ElementMatrices, IntegrationScheme};
use crate::fem::mesh::Mesh;
use crate::fem::FemError;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Prescribed displacements and nodal loads, addressed by (node, direction).
#[derive(Clone, Debug, Default)]
pub struct BoundaryConditions {
    fixed: Vec<(usize, usize, f64)>,
    loads: Vec<(usize, usize, f64)>,
}

impl BoundaryConditions {
    pub fn new() -> Self {
        Self::default()
    }

    /// Prescribe a displacement component.  A dof prescribed twice keeps the
    /// last value.
    pub fn fix(&mut self, node: usize, dir: usize, value: f64) -> &mut Self {
        self.fixed.push((node, dir, value));
        self
    }

    /// Add a nodal load component; repeated loads on a dof accumulate.
    pub fn load(&mut self, node: usize, dir: usize, value: f64) -> &mut Self {
        self.loads.push((node, dir, value));
        self
    }

    pub fn fix_all(&mut self, nodes: &[usize], dir: usize, value: f64) -> &mut Self {
        for &n in nodes {
            self.fix(n, dir, value);
        }
        self
    }

    pub fn nfixed(&self) -> usize {
        self.fixed.len()
    }
}

/// Assembled system: the stiffness pair, their exact sum, the external load
/// vector, and the prescribed dofs (sorted, deduplicated).
#[derive(Clone, Debug)]
pub struct GlobalSystem {
    pub kd: CscMatrix<f64>,
    pub kv: CscMatrix<f64>,
    pub k: CscMatrix<f64>,
    pub f: DVector<f64>,
    pub prescribed: Vec<(usize, f64)>,
    pub dim: usize,
    pub ndof: usize,
}

/// Assemble using the parallel element loop when the `parallel` feature is
/// enabled, the serial loop otherwise.
pub fn assemble(
    mesh: &Mesh,
    law: &DecomposedLaw,
    scheme: IntegrationScheme,
    bc: &BoundaryConditions,
) -> Result<GlobalSystem, FemError> {
    let mats = element_matrices(mesh, law, scheme)?;
    finish(mesh, bc, &mats)
}

/// Assemble with the element loop forced serial regardless of features;
/// exists so the two paths can be compared on one build.
pub fn assemble_serial(
    mesh: &Mesh,
    law: &DecomposedLaw,
    scheme: IntegrationScheme,
    bc: &BoundaryConditions,
) -> Result<GlobalSystem, FemError> {
    let mats = element_matrices_serial(mesh, law, scheme)?;
    finish(mesh, bc, &mats)
}

fn restricted_parts(mesh: &Mesh, law: &DecomposedLaw) -> (nalgebra::DMatrix<f64>, nalgebra::DMatrix<f64>) {
    assert_eq!(law.kind(), LawKind::Constitutive, "assembly needs a constitutive law");
    (
        restrict_voigt(law.voigt_dev(), mesh.dim()),
        restrict_voigt(law.voigt_vol(), mesh.dim()),
    )
}

/// Per-element stiffness pairs, in element order.
pub fn element_matrices(
    mesh: &Mesh,
    law: &DecomposedLaw,
    scheme: IntegrationScheme,
) -> Result<Vec<ElementMatrices>, FemError> {
    let (cd, cv) = restricted_parts(mesh, law);
    #[cfg(feature = "parallel")]
    {
        (0..mesh.nelems())
            .into_par_iter()
            .map(|e| element_stiffness(e, mesh.dim(), &mesh.elem_coords(e), &cd, &cv, scheme))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..mesh.nelems())
            .map(|e| element_stiffness(e, mesh.dim(), &mesh.elem_coords(e), &cd, &cv, scheme))
            .collect()
    }
}

/// Serial twin of [`element_matrices`].
pub fn element_matrices_serial(
    mesh: &Mesh,
    law: &DecomposedLaw,
    scheme: IntegrationScheme,
) -> Result<Vec<ElementMatrices>, FemError> {
    let (cd, cv) = restricted_parts(mesh, law);
    (0..mesh.nelems())
        .map(|e| element_stiffness(e, mesh.dim(), &mesh.elem_coords(e), &cd, &cv, scheme))
        .collect()
}

fn finish(
    mesh: &Mesh,
    bc: &BoundaryConditions,
    mats: &[ElementMatrices],
) -> Result<GlobalSystem, FemError> {
    let dim = mesh.dim();
    let ndof = mesh.ndof();

    for &(node, dir, _) in bc.fixed.iter().chain(bc.loads.iter()) {
        if node >= mesh.nnodes() || dir >= dim {
            return Err(FemError::BcOutOfRange { node, dir });
        }
    }

    let mut kd_coo = CooMatrix::new(ndof, ndof);
    let mut kv_coo = CooMatrix::new(ndof, ndof);
    let mut dofs = Vec::new();
    for (e, em) in mats.iter().enumerate() {
        dofs.clear();
        for &n in &mesh.elem(e).nodes {
            for d in 0..dim {
                dofs.push(n * dim + d);
            }
        }
        for (r, &gi) in dofs.iter().enumerate() {
            for (c, &gj) in dofs.iter().enumerate() {
                kd_coo.push(gi, gj, em.kd[(r, c)]);
                kv_coo.push(gi, gj, em.kv[(r, c)]);
            }
        }
    }
    let kd = CscMatrix::from(&kd_coo);
    let kv = CscMatrix::from(&kv_coo);
    debug_assert_eq!(kd.pattern(), kv.pattern());
    let sum: Vec<f64> = kd
        .values()
        .iter()
        .zip(kv.values())
        .map(|(a, b)| a + b)
        .collect();
    let k = CscMatrix::try_from_pattern_and_values(kd.pattern().clone(), sum)
        .expect("kd and kv share a pattern");

    let mut f = DVector::zeros(ndof);
    for &(node, dir, v) in &bc.loads {
        f[node * dim + dir] += v;
    }

    let mut prescribed: Vec<(usize, f64)> =
        bc.fixed.iter().map(|&(n, d, v)| (n * dim + d, v)).collect();
    // stable sort + reverse dedup keeps the last setting for a dof
    prescribed.reverse();
    prescribed.sort_by_key(|&(dof, _)| dof);
    prescribed.dedup_by_key(|&mut (dof, _)| dof);

    Ok(GlobalSystem { kd, kv, k, f, prescribed, dim, ndof })
}
