//! Interior stress/strain evaluation and its deviatoric/volumetric split.
//!
//! σ(ξ) and ε(ξ) are boundary integrals of kernel × boundary-data products,
//! integrated per segment with Gauss quadrature.  The split versions apply
//! the constant multipliers after integration; a premultiplied variant
//! applies them to the kernels inside the quadrature loop instead, so tests
//! can assert the two commute.
//!
//! Points near the boundary are refused outright (distance floor) — the
//! near-singular regime is out of scope.

use crate::bem::kelvin::KernelProvider;
use crate::bem::mesh::BoundaryMesh;
use crate::bem::BemError;
use crate::fem::quadrature::gauss_legendre;
use crate::tensor::{DecompKind, Kind, Rank4, SymTensor2};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug)]
pub struct EvalOptions {
    /// Gauss points per segment.
    pub gauss_points: usize,
    /// Minimum allowed distance to the boundary, as a fraction of the
    /// shortest segment length.
    pub distance_floor_factor: f64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { gauss_points: 8, distance_floor_factor: 0.1 }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct StressSplit {
    pub s: SymTensor2,
    pub p: SymTensor2,
}

#[derive(Clone, Copy, Debug)]
pub struct StrainSplit {
    pub dev: SymTensor2,
    pub mean: SymTensor2,
}

/// Everything the module can say about one interior point, computed with a
/// single kernel sweep.
#[derive(Clone, Debug)]
pub struct InteriorPoint {
    pub x: [f64; 2],
    pub sigma: SymTensor2,
    pub s: SymTensor2,
    pub p: SymTensor2,
    pub strain: SymTensor2,
    pub dev: SymTensor2,
    pub mean: SymTensor2,
}

fn check_distance(xi: [f64; 2], mesh: &BoundaryMesh, opts: &EvalOptions) -> Result<(), BemError> {
    let floor = opts.distance_floor_factor * mesh.shortest_segment();
    let dist = mesh.distance_to(xi);
    if dist < floor {
        return Err(BemError::TooClose { x: xi[0], y: xi[1], dist, floor });
    }
    Ok(())
}

/// Shared quadrature sweep.  `accumulate` receives each kernel sample with
/// its boundary data and the quadrature weight (Gauss weight × half-length).
fn sweep(
    xi: [f64; 2],
    mesh: &BoundaryMesh,
    provider: &dyn KernelProvider,
    opts: &EvalOptions,
    mut accumulate: impl FnMut(&crate::bem::kelvin::KernelSample, [f64; 2], [f64; 2], f64),
) -> Result<(), BemError> {
    check_distance(xi, mesh, opts)?;
    let rule = gauss_legendre(opts.gauss_points);
    for seg in mesh.segments() {
        let normal = seg.normal();
        let half = 0.5 * seg.length();
        for gp in &rule {
            let f = 0.5 * (1.0 + gp.xi);
            let x = [
                seg.a[0] + f * (seg.b[0] - seg.a[0]),
                seg.a[1] + f * (seg.b[1] - seg.a[1]),
            ];
            let sample = provider.eval(xi, x, normal);
            accumulate(&sample, seg.t, seg.u, gp.w * half);
        }
    }
    Ok(())
}

/// σ(ξ) = Σ_segments ∫ (G^σ_k t_k − F^σ_k u_k) dS.
pub fn interior_stress(
    xi: [f64; 2],
    mesh: &BoundaryMesh,
    provider: &dyn KernelProvider,
    opts: &EvalOptions,
) -> Result<SymTensor2, BemError> {
    let mut acc = SymTensor2::zero(Kind::Stress);
    sweep(xi, mesh, provider, opts, |sample, t, u, w| {
        for k in 0..2 {
            acc = acc + sample.g_stress[k].scale(t[k] * w) - sample.f_stress[k].scale(u[k] * w);
        }
    })?;
    Ok(acc)
}

/// ε(ξ) from the strain kernels.
pub fn interior_strain(
    xi: [f64; 2],
    mesh: &BoundaryMesh,
    provider: &dyn KernelProvider,
    opts: &EvalOptions,
) -> Result<SymTensor2, BemError> {
    let mut acc = SymTensor2::zero(Kind::Strain);
    sweep(xi, mesh, provider, opts, |sample, t, u, w| {
        for k in 0..2 {
            acc = acc + sample.g_strain[k].scale(t[k] * w) - sample.f_strain[k].scale(u[k] * w);
        }
    })?;
    Ok(acc)
}

/// s = M^d σ(ξ), p = M^v σ(ξ): multipliers applied after integration.
pub fn interior_stress_split(
    xi: [f64; 2],
    mesh: &BoundaryMesh,
    provider: &dyn KernelProvider,
    opts: &EvalOptions,
) -> Result<StressSplit, BemError> {
    let sigma = interior_stress(xi, mesh, provider, opts)?;
    Ok(StressSplit {
        s: Rank4::multiplier(DecompKind::Dev).apply(&sigma),
        p: Rank4::multiplier(DecompKind::Vol).apply(&sigma),
    })
}

/// Same split with the multipliers moved inside the integral: each kernel
/// value is projected before it is weighted and summed.  Equal to
/// [`interior_stress_split`] up to rounding because the multipliers are
/// constant over the boundary.
pub fn interior_stress_split_premultiplied(
    xi: [f64; 2],
    mesh: &BoundaryMesh,
    provider: &dyn KernelProvider,
    opts: &EvalOptions,
) -> Result<StressSplit, BemError> {
    let md = Rank4::multiplier(DecompKind::Dev);
    let mv = Rank4::multiplier(DecompKind::Vol);
    let mut s = SymTensor2::zero(Kind::Stress);
    let mut p = SymTensor2::zero(Kind::Stress);
    sweep(xi, mesh, provider, opts, |sample, t, u, w| {
        for k in 0..2 {
            let g = sample.g_stress[k].scale(t[k] * w);
            let f = sample.f_stress[k].scale(u[k] * w);
            s = s + md.apply(&g) - md.apply(&f);
            p = p + mv.apply(&g) - mv.apply(&f);
        }
    })?;
    Ok(StressSplit { s, p })
}

/// dev = M^d ε(ξ), mean = M^v ε(ξ).
pub fn interior_strain_split(
    xi: [f64; 2],
    mesh: &BoundaryMesh,
    provider: &dyn KernelProvider,
    opts: &EvalOptions,
) -> Result<StrainSplit, BemError> {
    let eps = interior_strain(xi, mesh, provider, opts)?;
    Ok(StrainSplit {
        dev: Rank4::multiplier(DecompKind::Dev).apply(&eps),
        mean: Rank4::multiplier(DecompKind::Vol).apply(&eps),
    })
}

/// Full evaluation at one point with a single kernel sweep.
pub fn interior_point(
    xi: [f64; 2],
    mesh: &BoundaryMesh,
    provider: &dyn KernelProvider,
    opts: &EvalOptions,
) -> Result<InteriorPoint, BemError> {
    let mut sigma = SymTensor2::zero(Kind::Stress);
    let mut strain = SymTensor2::zero(Kind::Strain);
    sweep(xi, mesh, provider, opts, |sample, t, u, w| {
        for k in 0..2 {
            sigma = sigma + sample.g_stress[k].scale(t[k] * w) - sample.f_stress[k].scale(u[k] * w);
            strain =
                strain + sample.g_strain[k].scale(t[k] * w) - sample.f_strain[k].scale(u[k] * w);
        }
    })?;
    let md = Rank4::multiplier(DecompKind::Dev);
    let mv = Rank4::multiplier(DecompKind::Vol);
    Ok(InteriorPoint {
        x: xi,
        s: md.apply(&sigma),
        p: mv.apply(&sigma),
        dev: md.apply(&strain),
        mean: mv.apply(&strain),
        sigma,
        strain,
    })
}

/// Evaluate many interior points; parallel over points when the `parallel`
/// feature is on.  Fails on the first bad point.
pub fn interior_batch(
    points: &[[f64; 2]],
    mesh: &BoundaryMesh,
    provider: &(dyn KernelProvider + Sync),
    opts: &EvalOptions,
) -> Result<Vec<InteriorPoint>, BemError> {
    #[cfg(feature = "parallel")]
    {
        points
            .par_iter()
            .map(|&xi| interior_point(xi, mesh, provider, opts))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        points
            .iter()
            .map(|&xi| interior_point(xi, mesh, provider, opts))
            .collect()
    }
}

/// Serial twin of [`interior_batch`], for path comparisons.
pub fn interior_batch_serial(
    points: &[[f64; 2]],
    mesh: &BoundaryMesh,
    provider: &(dyn KernelProvider + Sync),
    opts: &EvalOptions,
) -> Result<Vec<InteriorPoint>, BemError> {
    points
        .iter()
        .map(|&xi| interior_point(xi, mesh, provider, opts))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bem::kelvin::PlaneStrainKelvin;
    use crate::elasticity::IsotropicMaterial;

    fn setup(in_plane: [f64; 3]) -> (BoundaryMesh, SymTensor2, PlaneStrainKelvin) {
        let mat = IsotropicMaterial::new(1.0, 0.3).unwrap();
        let (mesh, sigma, _) = BoundaryMesh::uniform_state_square(8, &mat, in_plane);
        (mesh, sigma, PlaneStrainKelvin::new(mat))
    }

    #[test]
    fn zero_boundary_data_gives_zero_fields() {
        let mat = IsotropicMaterial::new(1.0, 0.3).unwrap();
        let mesh = BoundaryMesh::unit_square(4);
        let k = PlaneStrainKelvin::new(mat);
        let pt = interior_point([0.4, 0.6], &mesh, &k, &EvalOptions::default()).unwrap();
        assert_eq!(pt.sigma.norm(), 0.0);
        assert_eq!(pt.strain.norm(), 0.0);
    }

    #[test]
    fn points_near_the_boundary_are_refused() {
        let (mesh, _, k) = setup([1.0, 0.0, 0.0]);
        // floor = 0.1 × (1/8); a point 0.005 from the top edge violates it
        match interior_stress([0.5, 0.995], &mesh, &k, &EvalOptions::default()) {
            Err(BemError::TooClose { .. }) => {}
            other => panic!("expected TooClose, got {other:?}"),
        }
    }

    #[test]
    fn uniform_tension_is_reproduced_at_the_center() {
        let (mesh, sigma0, k) = setup([1.0, 0.0, 0.0]);
        let sigma = interior_stress([0.5, 0.5], &mesh, &k, &EvalOptions::default()).unwrap();
        let scale = sigma0.norm();
        for i in 0..3 {
            for j in 0..3 {
                assert!(
                    (sigma.get(i, j) - sigma0.get(i, j)).abs() <= 0.02 * scale,
                    "σ[{i}{j}] = {} vs {}",
                    sigma.get(i, j),
                    sigma0.get(i, j)
                );
            }
        }
    }

    #[test]
    fn split_completeness_is_exact() {
        let (mesh, _, k) = setup([2.0, -1.0, 0.5]);
        let xi = [0.35, 0.6];
        let sigma = interior_stress(xi, &mesh, &k, &EvalOptions::default()).unwrap();
        let split = interior_stress_split(xi, &mesh, &k, &EvalOptions::default()).unwrap();
        let sum = split.s + split.p;
        for i in 0..3 {
            for j in 0..3 {
                assert!(
                    (sum.get(i, j) - sigma.get(i, j)).abs() <= 1e-12 * sigma.norm(),
                    "completeness residual at {i}{j}"
                );
            }
        }
        assert!(split.s.trace().abs() <= 1e-12 * sigma.norm());
    }

    #[test]
    fn premultiplied_split_commutes_with_integration() {
        let (mesh, _, k) = setup([1.5, 0.7, -0.4]);
        let xi = [0.55, 0.45];
        let post = interior_stress_split(xi, &mesh, &k, &EvalOptions::default()).unwrap();
        let pre =
            interior_stress_split_premultiplied(xi, &mesh, &k, &EvalOptions::default()).unwrap();
        let scale = post.s.norm().max(post.p.norm());
        for i in 0..3 {
            for j in 0..3 {
                assert!((post.s.get(i, j) - pre.s.get(i, j)).abs() <= 1e-12 * scale);
                assert!((post.p.get(i, j) - pre.p.get(i, j)).abs() <= 1e-12 * scale);
            }
        }
    }

    #[test]
    fn strain_integral_matches_compliance_of_stress_integral() {
        let (mesh, _, k) = setup([1.0, 0.3, 0.2]);
        let xi = [0.5, 0.5];
        let sigma = interior_stress(xi, &mesh, &k, &EvalOptions::default()).unwrap();
        let eps = interior_strain(xi, &mesh, &k, &EvalOptions::default()).unwrap();
        let want = k.material().compliance_law().apply_full(&sigma);
        let scale = want.norm();
        for i in 0..3 {
            for j in 0..3 {
                assert!(
                    (eps.get(i, j) - want.get(i, j)).abs() <= 1e-6 * scale,
                    "ε[{i}{j}] = {} vs {}",
                    eps.get(i, j),
                    want.get(i, j)
                );
            }
        }
    }

    #[test]
    fn rigid_translation_produces_no_stress() {
        let mat = IsotropicMaterial::new(1.0, 0.3).unwrap();
        let mut mesh = BoundaryMesh::unit_square(16);
        let segs: Vec<_> = mesh
            .segments()
            .iter()
            .map(|s| crate::bem::mesh::Segment { u: [0.3, -0.2], ..*s })
            .collect();
        mesh = BoundaryMesh::new(segs).unwrap();
        let k = PlaneStrainKelvin::new(mat);
        let sigma = interior_stress([0.5, 0.5], &mesh, &k, &EvalOptions::default()).unwrap();
        assert!(sigma.norm() < 1e-8, "rigid translation produced ‖σ‖ = {}", sigma.norm());
    }

    #[test]
    fn batch_and_serial_agree() {
        let (mesh, _, k) = setup([1.0, -0.5, 0.25]);
        let pts = [[0.3, 0.3], [0.5, 0.5], [0.7, 0.6]];
        let a = interior_batch(&pts, &mesh, &k, &EvalOptions::default()).unwrap();
        let b = interior_batch_serial(&pts, &mesh, &k, &EvalOptions::default()).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.sigma.components(), y.sigma.components());
            assert_eq!(x.strain.components(), y.strain.components());
        }
    }
}
