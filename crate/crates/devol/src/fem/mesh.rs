//! Structured quad4 / hex8 meshes, plus the plain-text mesh file format.
//!
//! File layout (`#` starts a comment, blank lines are skipped):
//!
//! ```text
//! dim nnodes nelems
//! id x y [z]          — one line per node, ids 0-based in order
//! id n1 n2 n3 n4 [n5 n6 n7 n8]
//! ```
//!
//! Connectivity is counter-clockwise (bottom face first for hex8); files are
//! validated on load, including a Jacobian sign check at every full-rule
//! quadrature point, so degenerate input fails fast instead of producing a
//! singular system later.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::fem::element::b_matrix;
use crate::fem::quadrature::tensor_rule;
use crate::fem::FemError;

#[derive(Clone, Debug)]
pub struct Element {
    pub nodes: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Mesh {
    dim: usize,
    nodes: Vec<[f64; 3]>,
    elems: Vec<Element>,
}

impl Mesh {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn nelems(&self) -> usize {
        self.elems.len()
    }

    pub fn ndof(&self) -> usize {
        self.dim * self.nodes.len()
    }

    pub fn node(&self, i: usize) -> [f64; 3] {
        self.nodes[i]
    }

    pub fn elem(&self, e: usize) -> &Element {
        &self.elems[e]
    }

    /// Corner coordinates of an element, in connectivity order.
    pub fn elem_coords(&self, e: usize) -> Vec<[f64; 3]> {
        self.elems[e].nodes.iter().map(|&n| self.nodes[n]).collect()
    }

    pub fn find_nodes(&self, pred: impl Fn(&[f64; 3]) -> bool) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&i| pred(&self.nodes[i])).collect()
    }

    pub fn nearest_node(&self, p: [f64; 3]) -> usize {
        let d2 = |a: &[f64; 3]| {
            (a[0] - p[0]).powi(2) + (a[1] - p[1]).powi(2) + (a[2] - p[2]).powi(2)
        };
        (0..self.nodes.len())
            .min_by(|&a, &b| d2(&self.nodes[a]).total_cmp(&d2(&self.nodes[b])))
            .expect("mesh has no nodes")
    }

    /// Structured quad4 grid on [0,lx]×[0,ly], nx×ny elements, nodes
    /// row-major from the origin.
    pub fn rect_grid(nx: usize, ny: usize, lx: f64, ly: f64) -> Mesh {
        assert!(nx >= 1 && ny >= 1);
        let mut nodes = Vec::with_capacity((nx + 1) * (ny + 1));
        for j in 0..=ny {
            for i in 0..=nx {
                nodes.push([lx * i as f64 / nx as f64, ly * j as f64 / ny as f64, 0.0]);
            }
        }
        let id = |i: usize, j: usize| j * (nx + 1) + i;
        let mut elems = Vec::with_capacity(nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                elems.push(Element {
                    nodes: vec![id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)],
                });
            }
        }
        Mesh { dim: 2, nodes, elems }
    }

    /// Structured hex8 grid on [0,lx]×[0,ly]×[0,lz].
    pub fn box_grid(nx: usize, ny: usize, nz: usize, lx: f64, ly: f64, lz: f64) -> Mesh {
        assert!(nx >= 1 && ny >= 1 && nz >= 1);
        let mut nodes = Vec::with_capacity((nx + 1) * (ny + 1) * (nz + 1));
        for k in 0..=nz {
            for j in 0..=ny {
                for i in 0..=nx {
                    nodes.push([
                        lx * i as f64 / nx as f64,
                        ly * j as f64 / ny as f64,
                        lz * k as f64 / nz as f64,
                    ]);
                }
            }
        }
        let id = |i: usize, j: usize, k: usize| (k * (ny + 1) + j) * (nx + 1) + i;
        let mut elems = Vec::with_capacity(nx * ny * nz);
        for k in 0..nz {
            for j in 0..ny {
                for i in 0..nx {
                    elems.push(Element {
                        nodes: vec![
                            id(i, j, k),
                            id(i + 1, j, k),
                            id(i + 1, j + 1, k),
                            id(i, j + 1, k),
                            id(i, j, k + 1),
                            id(i + 1, j, k + 1),
                            id(i + 1, j + 1, k + 1),
                            id(i, j + 1, k + 1),
                        ],
                    });
                }
            }
        }
        Mesh { dim: 3, nodes, elems }
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Mesh, FemError> {
        Self::from_reader(File::open(path)?)
    }

    pub fn from_reader(r: impl Read) -> Result<Mesh, FemError> {
        let bad = |line: usize, reason: &str| FemError::BadMeshFile {
            line,
            reason: reason.to_string(),
        };
        // (line number, payload) with comments and blanks stripped
        let mut lines = Vec::new();
        for (i, l) in BufReader::new(r).lines().enumerate() {
            let l = l?;
            let t = l.split('#').next().unwrap_or("").trim().to_string();
            if !t.is_empty() {
                lines.push((i + 1, t));
            }
        }
        let mut it = lines.into_iter();
        let (hline, header) = it.next().ok_or_else(|| bad(1, "empty file"))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 3 {
            return Err(bad(hline, "header must be `dim nnodes nelems`"));
        }
        let dim: usize = h[0].parse().map_err(|_| bad(hline, "bad dim"))?;
        if dim != 2 && dim != 3 {
            return Err(bad(hline, "dim must be 2 or 3"));
        }
        let nnodes: usize = h[1].parse().map_err(|_| bad(hline, "bad node count"))?;
        let nelems: usize = h[2].parse().map_err(|_| bad(hline, "bad element count"))?;

        let mut nodes = Vec::with_capacity(nnodes);
        for want in 0..nnodes {
            let (ln, l) = it.next().ok_or_else(|| bad(0, "unexpected end of node list"))?;
            let f: Vec<&str> = l.split_whitespace().collect();
            if f.len() != 1 + dim {
                return Err(bad(ln, "node line must be `id x y [z]`"));
            }
            let id: usize = f[0].parse().map_err(|_| bad(ln, "bad node id"))?;
            if id != want {
                return Err(bad(ln, "node ids must be 0-based and in order"));
            }
            let mut c = [0.0f64; 3];
            for (k, s) in f[1..].iter().enumerate() {
                c[k] = s.parse().map_err(|_| bad(ln, "bad coordinate"))?;
                if !c[k].is_finite() {
                    return Err(bad(ln, "coordinate not finite"));
                }
            }
            nodes.push(c);
        }

        let npe = if dim == 2 { 4 } else { 8 };
        let mut elems = Vec::with_capacity(nelems);
        for want in 0..nelems {
            let (ln, l) = it.next().ok_or_else(|| bad(0, "unexpected end of element list"))?;
            let f: Vec<&str> = l.split_whitespace().collect();
            if f.len() != 1 + npe {
                return Err(bad(ln, "wrong number of element nodes for this dim"));
            }
            let id: usize = f[0].parse().map_err(|_| bad(ln, "bad element id"))?;
            if id != want {
                return Err(bad(ln, "element ids must be 0-based and in order"));
            }
            let mut ns = Vec::with_capacity(npe);
            for s in &f[1..] {
                let n: usize = s.parse().map_err(|_| bad(ln, "bad node index"))?;
                if n >= nnodes {
                    return Err(FemError::NodeOutOfRange { node: n, nnodes });
                }
                ns.push(n);
            }
            elems.push(Element { nodes: ns });
        }
        if let Some((ln, _)) = it.next() {
            return Err(bad(ln, "trailing content after element list"));
        }

        let mesh = Mesh { dim, nodes, elems };
        mesh.validate()?;
        Ok(mesh)
    }

    /// Jacobian sign check at every full-rule point of every element.
    pub fn validate(&self) -> Result<(), FemError> {
        let rule = tensor_rule(2, self.dim);
        for e in 0..self.nelems() {
            let coords = self.elem_coords(e);
            for (pt, _) in &rule {
                b_matrix(e, self.dim, &coords, pt)?;
            }
        }
        Ok(())
    }

    pub fn write_file(&self, path: impl AsRef<Path>) -> Result<(), FemError> {
        let mut w = BufWriter::new(File::create(path)?);
        self.write(&mut w)
    }

    pub fn write(&self, w: &mut impl Write) -> Result<(), FemError> {
        writeln!(w, "{} {} {}", self.dim, self.nnodes(), self.nelems())?;
        for (i, n) in self.nodes.iter().enumerate() {
            write!(w, "{i}")?;
            for k in 0..self.dim {
                write!(w, " {:.16e}", n[k])?;
            }
            writeln!(w)?;
        }
        for (e, el) in self.elems.iter().enumerate() {
            write!(w, "{e}")?;
            for n in &el.nodes {
                write!(w, " {n}")?;
            }
            writeln!(w)?;
        }
        Ok(())
    }
}
