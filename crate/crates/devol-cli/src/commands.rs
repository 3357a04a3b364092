//! The five subcommands.  Everything prints with `{:.16e}` (17 significant
//! digits) so repeated runs are byte-identical.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;

use devol::bem::{interior_batch, BoundaryMesh, EvalOptions, PlaneStrainKelvin};
use devol::elasticity::{DecomposedLaw, IsotropicMaterial};
use devol::energy::energy_split_from_strain;
use devol::fem::{
    assemble, gauss_point_field, locking_study, solve, Benchmark, BoundaryConditions,
    IntegrationScheme, Mesh, SolverConfig,
};
use devol::tensor::{Kind, SymTensor2};

use crate::config::{parse_usize_list, require, ConfigFile};
use crate::{BemArgs, CliError, DecomposeArgs, FemArgs, LockingArgs, MaterialArgs};

fn material_from(e: f64, nu: f64) -> Result<IsotropicMaterial, CliError> {
    IsotropicMaterial::new(e, nu).map_err(|err| CliError::Input(err.to_string()))
}

fn print_voigt(label: &str, m: &devol::tensor::Voigt66) {
    println!("{label}:");
    let mat = m.matrix();
    for i in 0..6 {
        let row: Vec<String> = (0..6).map(|j| format!("{:+.16e}", mat[(i, j)])).collect();
        println!("  {}", row.join(" "));
    }
}

fn additivity_residual(law: &DecomposedLaw) -> f64 {
    let sum = law.dev().add(law.vol());
    law.full().sub(&sum).norm() / law.full().norm()
}

pub fn material(args: &MaterialArgs) -> Result<(), CliError> {
    let cfg = ConfigFile::load(args.config.as_deref())?;
    let e = require(args.e, cfg.f64("E")?, "E")?;
    let nu = require(args.nu, cfg.f64("nu")?, "nu")?;
    let m = material_from(e, nu)?;

    println!("material: E = {:.16e}  nu = {:.16e}", m.youngs(), m.poisson());
    println!(
        "derived: lambda = {:.16e}  mu = {:.16e}  K = {:.16e}",
        m.lambda(),
        m.shear(),
        m.bulk()
    );
    let c = m.constitutive_law();
    let d = m.compliance_law();
    print_voigt("C (stiffness, Voigt)", c.voigt_full());
    print_voigt("C_dev", c.voigt_dev());
    print_voigt("C_vol", c.voigt_vol());
    print_voigt("D (compliance, Voigt)", d.voigt_full());
    print_voigt("D_dev", d.voigt_dev());
    print_voigt("D_vol", d.voigt_vol());
    println!(
        "additivity: |C-Cd-Cv|/|C| = {:.3e}  |D-Dd-Dv|/|D| = {:.3e}",
        additivity_residual(&c),
        additivity_residual(&d)
    );
    Ok(())
}

fn parse_six(text: &str, what: &str) -> Result<[f64; 6], CliError> {
    let parts: Vec<f64> = text
        .split_whitespace()
        .map(|p| {
            p.parse::<f64>()
                .map_err(|_| CliError::Input(format!("{what}: `{p}` is not a number")))
        })
        .collect::<Result<_, _>>()?;
    <[f64; 6]>::try_from(parts)
        .map_err(|v: Vec<f64>| CliError::Input(format!("{what}: expected 6 components, got {}", v.len())))
}

fn six(label: &str, c: [f64; 6]) {
    let row: Vec<String> = c.iter().map(|v| format!("{v:+.16e}")).collect();
    println!("{label}: {}", row.join(" "));
}

pub fn decompose(args: &DecomposeArgs) -> Result<(), CliError> {
    let cfg = ConfigFile::load(args.config.as_deref())?;
    let stress = match &args.stress {
        Some(v) => Some(<[f64; 6]>::try_from(v.clone()).expect("clap enforces six values")),
        None => cfg.string("stress").map(|s| parse_six(&s, "config key `stress`")).transpose()?,
    };
    let strain = match &args.strain {
        Some(v) => Some(<[f64; 6]>::try_from(v.clone()).expect("clap enforces six values")),
        None => cfg.string("strain").map(|s| parse_six(&s, "config key `strain`")).transpose()?,
    };
    // Validate before handing the components to the tensor type, which
    // treats non-finite input as a programming error.
    for c in stress.iter().chain(strain.iter()).flatten() {
        if !c.is_finite() {
            return Err(CliError::Input(format!("component {c} is not finite")));
        }
    }
    let t = match (stress, strain) {
        (Some(c), None) => SymTensor2::stress(c),
        (None, Some(c)) => SymTensor2::strain(c),
        _ => {
            return Err(CliError::Input(
                "provide exactly one of --stress / --strain (six components)".into(),
            ))
        }
    };

    let kind = t.kind();
    let parts = t.decompose();
    let inv = t.invariants();
    match kind {
        Kind::Stress => {
            six("stress (11 22 33 12 23 31)", t.components());
            six("deviator s", parts.dev.components());
            six("volumetric p*delta", parts.vol.components());
            println!("mean stress p = {:+.16e}", parts.scalar);
        }
        Kind::Strain => {
            six("strain (11 22 33 12 23 31)", t.components());
            six("deviator e'", parts.dev.components());
            six("volumetric e_M*delta", parts.vol.components());
            println!("mean strain e_M = {:+.16e}", parts.scalar);
        }
    }
    println!("invariants: I1 = {:+.16e}  J2 = {:+.16e}  J3 = {:+.16e}", inv.i1, inv.j2, inv.j3);

    // With a material, a strain input also gets its energy split.
    let e = args.e.or(cfg.f64("E")?);
    let nu = args.nu.or(cfg.f64("nu")?);
    if kind == Kind::Strain {
        if let (Some(e), Some(nu)) = (e, nu) {
            let m = material_from(e, nu)?;
            let split = energy_split_from_strain(&m.constitutive_law(), &t);
            println!(
                "energy: total = {:+.16e}  dev = {:+.16e}  vol = {:+.16e}",
                split.total, split.dev, split.vol
            );
            println!(
                "energy cross terms: s:e_M = {:+.16e}  p:e' = {:+.16e}",
                split.cross_sd, split.cross_pd
            );
        }
    }
    Ok(())
}

/// Boundary-condition file: `fix NODE DIR VALUE` pins a dof, `load NODE DIR
/// VALUE` adds a nodal force.  DIR is 0-based (0 = x, 1 = y, 2 = z); `#`
/// starts a comment.
pub fn read_bc_file(path: &Path) -> Result<BoundaryConditions, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("bc file {}: {e}", path.display())))?;
    let mut bc = BoundaryConditions::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |reason: String| {
            CliError::Input(format!("bc file {} line {}: {reason}", path.display(), lineno + 1))
        };
        let tok: Vec<&str> = line.split_whitespace().collect();
        if tok.len() != 4 {
            return Err(bad(format!("expected `fix|load NODE DIR VALUE`, got `{raw}`")));
        }
        let node: usize =
            tok[1].parse().map_err(|_| bad(format!("`{}` is not a node id", tok[1])))?;
        let dir: usize =
            tok[2].parse().map_err(|_| bad(format!("`{}` is not a direction", tok[2])))?;
        let value: f64 =
            tok[3].parse().map_err(|_| bad(format!("`{}` is not a number", tok[3])))?;
        match tok[0] {
            "fix" => {
                bc.fix(node, dir, value);
            }
            "load" => {
                bc.load(node, dir, value);
            }
            other => return Err(bad(format!("unknown keyword `{other}`"))),
        }
    }
    Ok(bc)
}

fn scheme_from(name: Option<String>, cfg: &ConfigFile) -> Result<IntegrationScheme, CliError> {
    let name = name.or_else(|| cfg.string("scheme")).unwrap_or_else(|| "full".to_string());
    IntegrationScheme::parse(&name).ok_or_else(|| {
        CliError::Input(format!("unknown scheme `{name}` (expected full|vol-reduced|dev-reduced)"))
    })
}

fn out_writer(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::Input(format!("output {}: {e}", path.display())))
}

pub fn fem(args: &FemArgs) -> Result<(), CliError> {
    let cfg = ConfigFile::load(args.config.as_deref())?;
    let mesh_path = require(args.mesh.clone(), cfg.path("mesh"), "mesh")?;
    let bc_path = require(args.bc.clone(), cfg.path("bc"), "bc")?;
    let out_path = require(args.out.clone(), cfg.path("out"), "out")?;
    let e = require(args.e, cfg.f64("E")?, "E")?;
    let nu = require(args.nu, cfg.f64("nu")?, "nu")?;
    let scheme = scheme_from(args.scheme.clone(), &cfg)?;
    let tol = args.tol.or(cfg.f64("tol")?);

    let mesh = Mesh::from_file(&mesh_path)
        .map_err(|e| CliError::Input(format!("mesh {}: {e}", mesh_path.display())))?;
    let law = material_from(e, nu)?.constitutive_law();
    let bc = read_bc_file(&bc_path)?;
    let sys = assemble(&mesh, &law, scheme, &bc)?;
    let mut solver = SolverConfig::default();
    if let Some(t) = tol {
        if !(t.is_finite() && t > 0.0) {
            return Err(CliError::Input(format!("tol must be positive and finite, got {t}")));
        }
        solver.residual_rel = t;
    }
    let report = solve(&sys, &solver)?;
    let rows = gauss_point_field(&mesh, &law, scheme, &report.u)?;

    let mut w = out_writer(&out_path)?;
    let werr = |e: std::io::Error| CliError::Input(format!("output {}: {e}", out_path.display()));
    if mesh.dim() == 2 {
        writeln!(w, "elem,gp,x,y,s11,s22,s33,s12,s23,s31,p,J2,u_dev,u_vol").map_err(werr)?;
    } else {
        writeln!(w, "elem,gp,x,y,z,s11,s22,s33,s12,s23,s31,p,J2,u_dev,u_vol").map_err(werr)?;
    }
    for r in &rows {
        let mut fields = vec![r.elem.to_string(), r.gp.to_string()];
        fields.extend(r.coords[..mesh.dim()].iter().map(|v| format!("{v:.16e}")));
        fields.extend(r.dev.components().iter().map(|v| format!("{v:.16e}")));
        fields.push(format!("{:.16e}", r.p));
        fields.push(format!("{:.16e}", r.j2));
        fields.push(format!("{:.16e}", r.u_dev));
        fields.push(format!("{:.16e}", r.u_vol));
        writeln!(w, "{}", fields.join(",")).map_err(werr)?;
    }
    w.flush().map_err(werr)?;

    println!(
        "fem: {} elements, {} dof, scheme {}, max|u| = {:.16e}, {} rows -> {}",
        mesh.nelems(),
        mesh.ndof(),
        scheme.name(),
        report.u.amax(),
        rows.len(),
        out_path.display()
    );
    Ok(())
}

pub fn locking(args: &LockingArgs) -> Result<(), CliError> {
    let cfg = ConfigFile::load(args.config.as_deref())?;
    let name = require(args.benchmark.clone(), cfg.string("benchmark"), "benchmark")?;
    let out_path = require(args.out.clone(), cfg.path("out"), "out")?;
    let nu = args.nu.or(cfg.f64("nu")?);
    let aspect = args.aspect.or(cfg.f64("aspect")?).unwrap_or(100.0);
    let sizes = match &args.sizes {
        Some(s) => Some(parse_usize_list(s, "--sizes")?),
        None => cfg.usize_list("sizes")?,
    };

    let (benchmark, sizes) = match name.as_str() {
        "block" => (
            Benchmark::IncompressibleBlock { nu: nu.unwrap_or(0.4999) },
            sizes.unwrap_or_else(|| vec![8]),
        ),
        "cantilever" => (
            Benchmark::SlenderCantilever { aspect, nu: nu.unwrap_or(1.0 / 3.0) },
            sizes.unwrap_or_else(|| vec![100]),
        ),
        other => {
            return Err(CliError::Input(format!(
                "unknown benchmark `{other}` (expected block|cantilever)"
            )))
        }
    };
    if sizes.is_empty() || sizes.iter().any(|&n| n == 0) {
        return Err(CliError::Input("mesh sizes must be positive".into()));
    }

    let schemes =
        [IntegrationScheme::FULL, IntegrationScheme::VOL_REDUCED, IntegrationScheme::DEV_REDUCED];
    let study = locking_study(benchmark, &schemes, &sizes)?;

    let mut w = out_writer(&out_path)?;
    study
        .write_csv(&mut w)
        .map_err(|e| CliError::Input(format!("output {}: {e}", out_path.display())))?;
    w.flush().map_err(|e| CliError::Input(format!("output {}: {e}", out_path.display())))?;

    println!("locking: {name}, {} rows -> {}", study.rows.len(), out_path.display());
    Ok(())
}

/// Interior query file: one `x y` pair per line, `#` comments.
pub fn read_points_file(path: &Path) -> Result<Vec<[f64; 2]>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("points file {}: {e}", path.display())))?;
    let mut pts = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |reason: String| {
            CliError::Input(format!("points file {} line {}: {reason}", path.display(), lineno + 1))
        };
        let tok: Vec<&str> = line.split_whitespace().collect();
        if tok.len() != 2 {
            return Err(bad(format!("expected `x y`, got `{raw}`")));
        }
        let x: f64 = tok[0].parse().map_err(|_| bad(format!("`{}` is not a number", tok[0])))?;
        let y: f64 = tok[1].parse().map_err(|_| bad(format!("`{}` is not a number", tok[1])))?;
        if !(x.is_finite() && y.is_finite()) {
            return Err(bad("coordinates must be finite".into()));
        }
        pts.push([x, y]);
    }
    Ok(pts)
}

pub fn bem(args: &BemArgs) -> Result<(), CliError> {
    let cfg = ConfigFile::load(args.config.as_deref())?;
    let boundary_path = require(args.boundary.clone(), cfg.path("boundary"), "boundary")?;
    let points_path = require(args.points.clone(), cfg.path("points"), "points")?;
    let out_path = require(args.out.clone(), cfg.path("out"), "out")?;
    let e = require(args.e, cfg.f64("E")?, "E")?;
    let nu = require(args.nu, cfg.f64("nu")?, "nu")?;

    let mesh = BoundaryMesh::from_file(&boundary_path)
        .map_err(|e| CliError::Input(format!("boundary {}: {e}", boundary_path.display())))?;
    let pts = read_points_file(&points_path)?;
    let provider = PlaneStrainKelvin::new(material_from(e, nu)?);
    let results = interior_batch(&pts, &mesh, &provider, &EvalOptions::default())?;

    let mut w = out_writer(&out_path)?;
    let werr = |e: std::io::Error| CliError::Input(format!("output {}: {e}", out_path.display()));
    writeln!(w, "x,y,s11,s22,s12,p,e11_dev,e22_dev,e12_dev,e_mean").map_err(werr)?;
    for r in &results {
        writeln!(
            w,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            r.x[0],
            r.x[1],
            r.s.get(0, 0),
            r.s.get(1, 1),
            r.s.get(0, 1),
            r.p.get(0, 0),
            r.dev.get(0, 0),
            r.dev.get(1, 1),
            r.dev.get(0, 1),
            r.mean.get(0, 0),
        )
        .map_err(werr)?;
    }
    w.flush().map_err(werr)?;

    println!("bem: {} interior points -> {}", results.len(), out_path.display());
    Ok(())
}
