//! Locking benchmarks: a nearly incompressible block and a slender
//! cantilever, run across integration schemes and mesh sizes.
//!
//! References are computed, never hard-coded: the block compares against a
//! fine-mesh (64×64) vol-reduced run, the cantilever against the
//! Euler–Bernoulli tip deflection PL³/3EI.  Each row reports the monitored
//! displacement, its relative error against the reference, and the
//! deviatoric share of the integrated energy — the quantity selective
//! reduced integration is supposed to keep honest.

use std::io::{self, Write};

use crate::elasticity::IsotropicMaterial;
use crate::fem::assemble::{assemble, BoundaryConditions};
use crate::fem::element::IntegrationScheme;
use crate::fem::mesh::Mesh;
use crate::fem::recover::energy_totals;
use crate::fem::solve::{solve, SolverConfig};
use crate::fem::FemError;
use crate::fem::quadrature::gauss_legendre;

#[derive(Clone, Copy, Debug)]
pub enum Benchmark {
    /// Unit square on bottom rollers under a sinusoidal top pressure;
    /// volumetric locking appears as ν → ½.
    IncompressibleBlock { nu: f64 },
    /// Tip-loaded beam, length = aspect × height; slender meshes of full-
    /// integration elements shear-lock.
    SlenderCantilever { aspect: f64, nu: f64 },
}

#[derive(Clone, Debug)]
pub struct LockingRow {
    pub scheme: &'static str,
    pub mesh: String,
    pub monitored_disp: f64,
    pub ref_disp: f64,
    pub rel_error: f64,
    pub energy_dev_fraction: f64,
}

#[derive(Clone, Debug)]
pub struct LockingStudy {
    pub rows: Vec<LockingRow>,
}

impl LockingStudy {
    pub fn write_csv(&self, w: &mut impl Write) -> io::Result<()> {
        writeln!(w, "scheme,mesh,monitored_disp,ref_disp,rel_error,energy_dev_fraction")?;
        for r in &self.rows {
            writeln!(
                w,
                "{},{},{:.16e},{:.16e},{:.16e},{:.16e}",
                r.scheme, r.mesh, r.monitored_disp, r.ref_disp, r.rel_error, r.energy_dev_fraction
            )?;
        }
        Ok(())
    }
}

pub fn locking_study(
    benchmark: Benchmark,
    schemes: &[IntegrationScheme],
    mesh_sizes: &[usize],
) -> Result<LockingStudy, FemError> {
    let mut rows = Vec::new();
    match benchmark {
        Benchmark::IncompressibleBlock { nu } => {
            assert!(nu <= 0.4999, "block benchmark is defined up to ν = 0.4999");
            let (reference, _) = block_run(64, nu, IntegrationScheme::VOL_REDUCED)?;
            for &n in mesh_sizes {
                for &scheme in schemes {
                    let (mon, devfrac) = block_run(n, nu, scheme)?;
                    rows.push(LockingRow {
                        scheme: scheme.name(),
                        mesh: format!("{n}x{n}"),
                        monitored_disp: mon,
                        ref_disp: reference,
                        rel_error: ((mon - reference) / reference).abs(),
                        energy_dev_fraction: devfrac,
                    });
                }
            }
        }
        Benchmark::SlenderCantilever { aspect, nu } => {
            let reference = cantilever_oracle(aspect);
            for &n in mesh_sizes {
                for &scheme in schemes {
                    let (mon, devfrac) = cantilever_run(n, aspect, nu, scheme)?;
                    rows.push(LockingRow {
                        scheme: scheme.name(),
                        mesh: format!("{n}x1"),
                        monitored_disp: mon,
                        ref_disp: reference,
                        rel_error: ((mon - reference) / reference).abs(),
                        energy_dev_fraction: devfrac,
                    });
                }
            }
        }
    }
    Ok(LockingStudy { rows })
}

pub fn block_study(
    nu: f64,
    schemes: &[IntegrationScheme],
    mesh_sizes: &[usize],
) -> Result<LockingStudy, FemError> {
    locking_study(Benchmark::IncompressibleBlock { nu }, schemes, mesh_sizes)
}

pub fn cantilever_study(
    aspect: f64,
    nu: f64,
    schemes: &[IntegrationScheme],
    mesh_sizes: &[usize],
) -> Result<LockingStudy, FemError> {
    locking_study(Benchmark::SlenderCantilever { aspect, nu }, schemes, mesh_sizes)
}

/// Euler–Bernoulli tip deflection PL³/3EI for the unit-height beam with
/// E = 1, unit thickness, total tip load P = −1.
pub fn cantilever_oracle(aspect: f64) -> f64 {
    let (p, e, i) = (-1.0, 1.0, 1.0 / 12.0);
    p * aspect.powi(3) / (3.0 * e * i)
}

/// Work-equivalent nodal loads for a traction along one straight mesh edge,
/// linear shape functions per segment, 3-point Gauss.  `edge` lists node
/// ids on the edge; `coord` picks the coordinate the edge runs along.
fn edge_consistent_loads(
    mesh: &Mesh,
    edge: &[usize],
    coord: usize,
    traction: impl Fn(f64) -> f64,
) -> Vec<(usize, f64)> {
    let mut nodes: Vec<usize> = edge.to_vec();
    nodes.sort_by(|&a, &b| mesh.node(a)[coord].total_cmp(&mesh.node(b)[coord]));
    let rule = gauss_legendre(3);
    let mut loads: Vec<(usize, f64)> = nodes.iter().map(|&n| (n, 0.0)).collect();
    for w in 0..nodes.len() - 1 {
        let (xa, xb) = (mesh.node(nodes[w])[coord], mesh.node(nodes[w + 1])[coord]);
        let half = 0.5 * (xb - xa);
        for gp in &rule {
            let x = 0.5 * (xa + xb) + half * gp.xi;
            let t = traction(x) * gp.w * half;
            let nb = (x - xa) / (xb - xa);
            loads[w].1 += (1.0 - nb) * t;
            loads[w + 1].1 += nb * t;
        }
    }
    loads
}

/// One block run: unit square, bottom rollers with one lateral pin, top
/// pressure t_y(x) = −sin(πx).  Returns (u_y at the top-center node,
/// deviatoric energy fraction).
fn block_run(n: usize, nu: f64, scheme: IntegrationScheme) -> Result<(f64, f64), FemError> {
    let mesh = Mesh::rect_grid(n, n, 1.0, 1.0);
    let law = IsotropicMaterial::new(1.0, nu)
        .expect("block parameters are validated by the caller")
        .constitutive_law();
    let mut bc = BoundaryConditions::new();
    for node in mesh.find_nodes(|p| p[1].abs() < 1e-12) {
        bc.fix(node, 1, 0.0);
    }
    bc.fix(mesh.nearest_node([0.0, 0.0, 0.0]), 0, 0.0);
    let top = mesh.find_nodes(|p| (p[1] - 1.0).abs() < 1e-12);
    for (node, f) in edge_consistent_loads(&mesh, &top, 0, |x| -(std::f64::consts::PI * x).sin()) {
        bc.load(node, 1, f);
    }
    let sys = assemble(&mesh, &law, scheme, &bc)?;
    let rep = solve(&sys, &SolverConfig::default())?;
    let mon = rep.u[2 * mesh.nearest_node([0.5, 1.0, 0.0]) + 1];
    let tot = energy_totals(&mesh, &law, scheme, &rep.u)?;
    Ok((mon, tot.dev_fraction()))
}

/// One cantilever run: [0, aspect]×[0,1] meshed n×1, clamped at x = 0,
/// constant downward end shear of resultant −1.  Returns (mean tip u_y,
/// deviatoric energy fraction).
fn cantilever_run(
    n: usize,
    aspect: f64,
    nu: f64,
    scheme: IntegrationScheme,
) -> Result<(f64, f64), FemError> {
    let mesh = Mesh::rect_grid(n, 1, aspect, 1.0);
    let law = IsotropicMaterial::new(1.0, nu)
        .expect("cantilever parameters are validated by the caller")
        .constitutive_law();
    let mut bc = BoundaryConditions::new();
    for node in mesh.find_nodes(|p| p[0].abs() < 1e-12) {
        bc.fix(node, 0, 0.0);
        bc.fix(node, 1, 0.0);
    }
    let tip = mesh.find_nodes(|p| (p[0] - aspect).abs() < 1e-12);
    for (node, f) in edge_consistent_loads(&mesh, &tip, 1, |_| -1.0) {
        bc.load(node, 1, f);
    }
    let sys = assemble(&mesh, &law, scheme, &bc)?;
    let rep = solve(&sys, &SolverConfig::default())?;
    let mon = tip.iter().map(|&nd| rep.u[2 * nd + 1]).sum::<f64>() / tip.len() as f64;
    let tot = energy_totals(&mesh, &law, scheme, &rep.u)?;
    Ok((mon, tot.dev_fraction()))
}
