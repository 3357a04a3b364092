//! Isoparametric quad4 / hex8 element kernels.
//!
//! The element stiffness is built as two matrices from the start: the
//! deviatoric and volumetric constitutive parts each get their own
//! quadrature rule, so K^d and K^v are primary objects and K only ever
//! appears as their sum.  Selective reduced integration is expressed as an
//! [`IntegrationScheme`] — a pair of rule orders — rather than a code path.

use nalgebra::{DMatrix, DVector};

use crate::fem::quadrature::tensor_rule;
use crate::fem::FemError;
use crate::tensor::{Kind, SymTensor2, Voigt66};

/// Quadrature orders for the two constitutive parts.  `FULL` integrates both
/// exactly; the reduced variants under-integrate exactly one part, which is
/// the whole selective-reduced-integration idea.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntegrationScheme {
    pub dev_order: usize,
    pub vol_order: usize,
}

impl IntegrationScheme {
    pub const FULL: IntegrationScheme = IntegrationScheme { dev_order: 2, vol_order: 2 };
    pub const VOL_REDUCED: IntegrationScheme = IntegrationScheme { dev_order: 2, vol_order: 1 };
    pub const DEV_REDUCED: IntegrationScheme = IntegrationScheme { dev_order: 1, vol_order: 2 };

    pub fn name(&self) -> &'static str {
        match (self.dev_order, self.vol_order) {
            (2, 2) => "full",
            (2, 1) => "vol-reduced",
            (1, 2) => "dev-reduced",
            _ => "custom",
        }
    }

    pub fn parse(s: &str) -> Option<IntegrationScheme> {
        match s {
            "full" => Some(Self::FULL),
            "vol-reduced" => Some(Self::VOL_REDUCED),
            "dev-reduced" => Some(Self::DEV_REDUCED),
            _ => None,
        }
    }
}

/// Element stiffness pair; `total` is the only place K is formed.
#[derive(Clone, Debug)]
pub struct ElementMatrices {
    pub kd: DMatrix<f64>,
    pub kv: DMatrix<f64>,
}

impl ElementMatrices {
    pub fn total(&self) -> DMatrix<f64> {
        &self.kd + &self.kv
    }
}

/// Reference corner signs for quad4, counter-clockwise from (-1,-1).
const QUAD4: [[f64; 2]; 4] = [[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]];

/// Hex8 corners: bottom face counter-clockwise, then the top face above it.
const HEX8: [[f64; 3]; 8] = [
    [-1.0, -1.0, -1.0],
    [1.0, -1.0, -1.0],
    [1.0, 1.0, -1.0],
    [-1.0, 1.0, -1.0],
    [-1.0, -1.0, 1.0],
    [1.0, -1.0, 1.0],
    [1.0, 1.0, 1.0],
    [-1.0, 1.0, 1.0],
];

/// Shape function values at a reference point.
pub fn shape_values(dim: usize, pt: &[f64]) -> Vec<f64> {
    match dim {
        2 => QUAD4
            .iter()
            .map(|c| 0.25 * (1.0 + c[0] * pt[0]) * (1.0 + c[1] * pt[1]))
            .collect(),
        3 => HEX8
            .iter()
            .map(|c| {
                0.125 * (1.0 + c[0] * pt[0]) * (1.0 + c[1] * pt[1]) * (1.0 + c[2] * pt[2])
            })
            .collect(),
        _ => panic!("dim must be 2 or 3"),
    }
}

/// Shape function derivatives with respect to reference coordinates;
/// row a = node, column i = ∂N_a/∂ξ_i.
fn shape_derivs(dim: usize, pt: &[f64]) -> Vec<Vec<f64>> {
    match dim {
        2 => QUAD4
            .iter()
            .map(|c| {
                vec![
                    0.25 * c[0] * (1.0 + c[1] * pt[1]),
                    0.25 * c[1] * (1.0 + c[0] * pt[0]),
                ]
            })
            .collect(),
        3 => HEX8
            .iter()
            .map(|c| {
                vec![
                    0.125 * c[0] * (1.0 + c[1] * pt[1]) * (1.0 + c[2] * pt[2]),
                    0.125 * c[1] * (1.0 + c[0] * pt[0]) * (1.0 + c[2] * pt[2]),
                    0.125 * c[2] * (1.0 + c[0] * pt[0]) * (1.0 + c[1] * pt[1]),
                ]
            })
            .collect(),
        _ => panic!("dim must be 2 or 3"),
    }
}

/// Strain-displacement matrix and Jacobian determinant at a reference point.
/// Rows follow the stress component order (11, 22, 12) in 2D and
/// (11, 22, 33, 12, 23, 31) in 3D, with engineering shear, so `B u` is
/// directly a Voigt strain.  Errors if the mapping folds (det J ≤ 0).
pub fn b_matrix(
    elem_id: usize,
    dim: usize,
    coords: &[[f64; 3]],
    pt: &[f64],
) -> Result<(DMatrix<f64>, f64), FemError> {
    let nn = coords.len();
    let dn = shape_derivs(dim, pt);
    // J_ij = Σ_a ∂N_a/∂ξ_i · x_a,j
    let mut j: DMatrix<f64> = DMatrix::zeros(dim, dim);
    for a in 0..nn {
        for i in 0..dim {
            for k in 0..dim {
                j[(i, k)] += dn[a][i] * coords[a][k];
            }
        }
    }
    let det = match dim {
        2 => j[(0, 0)] * j[(1, 1)] - j[(0, 1)] * j[(1, 0)],
        _ => {
            j[(0, 0)] * (j[(1, 1)] * j[(2, 2)] - j[(1, 2)] * j[(2, 1)])
                - j[(0, 1)] * (j[(1, 0)] * j[(2, 2)] - j[(1, 2)] * j[(2, 0)])
                + j[(0, 2)] * (j[(1, 0)] * j[(2, 1)] - j[(1, 1)] * j[(2, 0)])
        }
    };
    if det <= 0.0 || !det.is_finite() {
        return Err(FemError::DegenerateElement { elem: elem_id, det });
    }
    let jinv = j.try_inverse().ok_or(FemError::DegenerateElement { elem: elem_id, det })?;

    // Physical gradients: column a holds ∇N_a.  With J_ik = ∂x_k/∂ξ_i the
    // chain rule gives ∂N/∂x_k = Σ_i (J⁻¹)_ki ∂N/∂ξ_i.
    let mut g = DMatrix::zeros(dim, nn);
    for a in 0..nn {
        for k in 0..dim {
            let mut v = 0.0;
            for i in 0..dim {
                v += jinv[(k, i)] * dn[a][i];
            }
            g[(k, a)] = v;
        }
    }

    let nrows = if dim == 2 { 3 } else { 6 };
    let mut b = DMatrix::zeros(nrows, dim * nn);
    for a in 0..nn {
        let (cx, cy) = (dim * a, dim * a + 1);
        if dim == 2 {
            b[(0, cx)] = g[(0, a)];
            b[(1, cy)] = g[(1, a)];
            b[(2, cx)] = g[(1, a)];
            b[(2, cy)] = g[(0, a)];
        } else {
            let cz = dim * a + 2;
            b[(0, cx)] = g[(0, a)];
            b[(1, cy)] = g[(1, a)];
            b[(2, cz)] = g[(2, a)];
            b[(3, cx)] = g[(1, a)];
            b[(3, cy)] = g[(0, a)];
            b[(4, cy)] = g[(2, a)];
            b[(4, cz)] = g[(1, a)];
            b[(5, cx)] = g[(2, a)];
            b[(5, cz)] = g[(0, a)];
        }
    }
    Ok((b, det))
}

/// Restrict a 6×6 Voigt operator to the rows/columns active in `dim`
/// dimensions.  Plane strain keeps (11, 22, 12): the dropped strain
/// components are identically zero, so the 3×3 block is exact, and the
/// out-of-plane stress it omits does no work.
pub fn restrict_voigt(m: &Voigt66, dim: usize) -> DMatrix<f64> {
    match dim {
        3 => {
            let mut out = DMatrix::zeros(6, 6);
            for i in 0..6 {
                for j in 0..6 {
                    out[(i, j)] = m.matrix()[(i, j)];
                }
            }
            out
        }
        2 => {
            const KEEP: [usize; 3] = [0, 1, 3];
            let mut out = DMatrix::zeros(3, 3);
            for (r, &i) in KEEP.iter().enumerate() {
                for (c, &j) in KEEP.iter().enumerate() {
                    out[(r, c)] = m.matrix()[(i, j)];
                }
            }
            out
        }
        _ => panic!("dim must be 2 or 3"),
    }
}

/// Integrate the stiffness pair for one element.  `cd`/`cv` are the
/// deviatoric and volumetric constitutive matrices already restricted via
/// [`restrict_voigt`]; each is integrated under its own rule order.
pub fn element_stiffness(
    elem_id: usize,
    dim: usize,
    coords: &[[f64; 3]],
    cd: &DMatrix<f64>,
    cv: &DMatrix<f64>,
    scheme: IntegrationScheme,
) -> Result<ElementMatrices, FemError> {
    let ndof = dim * coords.len();
    let mut kd = DMatrix::zeros(ndof, ndof);
    let mut kv = DMatrix::zeros(ndof, ndof);
    for (pt, w) in tensor_rule(scheme.dev_order, dim) {
        let (b, det) = b_matrix(elem_id, dim, coords, &pt)?;
        kd += b.transpose() * cd * &b * (det * w);
    }
    for (pt, w) in tensor_rule(scheme.vol_order, dim) {
        let (b, det) = b_matrix(elem_id, dim, coords, &pt)?;
        kv += b.transpose() * cv * &b * (det * w);
    }
    Ok(ElementMatrices { kd, kv })
}

/// Strain tensor, physical point, and Jacobian determinant at a reference
/// point, from the element displacement vector (interleaved dofs).  The
/// returned strain is always a full 3-D tensor; in plane strain the
/// out-of-plane components are identically zero.
pub fn strain_at(
    elem_id: usize,
    dim: usize,
    coords: &[[f64; 3]],
    pt: &[f64],
    ue: &DVector<f64>,
) -> Result<(SymTensor2, [f64; 3], f64), FemError> {
    let (b, det) = b_matrix(elem_id, dim, coords, pt)?;
    let ev = &b * ue;
    let strain = if dim == 2 {
        SymTensor2::strain([ev[0], ev[1], 0.0, 0.5 * ev[2], 0.0, 0.0])
    } else {
        SymTensor2::new(
            Kind::Strain,
            [ev[0], ev[1], ev[2], 0.5 * ev[3], 0.5 * ev[4], 0.5 * ev[5]],
        )
    };
    let n = shape_values(dim, pt);
    let mut x = [0.0f64; 3];
    for (a, c) in coords.iter().enumerate() {
        for k in 0..3 {
            x[k] += n[a] * c[k];
        }
    }
    Ok((strain, x, det))
}
