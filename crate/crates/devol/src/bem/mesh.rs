//! Closed polygonal boundaries with per-segment traction and displacement
//! data (constant elements).
//!
//! File layout: a `nsegs` header line, then one line per segment
//! `x1 y1 x2 y2 t1 t2 u1 u2` (`#` comments, blank lines skipped).  Segments
//! must chain end-to-start into a single counter-clockwise loop; outward
//! normals then follow from the geometry.

use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use crate::bem::BemError;
use crate::elasticity::IsotropicMaterial;
use crate::tensor::{Kind, SymTensor2};

/// Straight boundary element: endpoints in loop order plus the constant
/// traction and displacement carried on it.
#[derive(Clone, Copy, Debug)]
pub struct Segment {
    pub a: [f64; 2],
    pub b: [f64; 2],
    pub t: [f64; 2],
    pub u: [f64; 2],
}

impl Segment {
    pub fn midpoint(&self) -> [f64; 2] {
        [0.5 * (self.a[0] + self.b[0]), 0.5 * (self.a[1] + self.b[1])]
    }

    pub fn length(&self) -> f64 {
        (self.b[0] - self.a[0]).hypot(self.b[1] - self.a[1])
    }

    /// Outward unit normal; for a counter-clockwise loop this is the edge
    /// direction rotated −90°.
    pub fn normal(&self) -> [f64; 2] {
        let l = self.length();
        [(self.b[1] - self.a[1]) / l, -(self.b[0] - self.a[0]) / l]
    }

    /// Distance from a point to this segment.
    pub fn distance_to(&self, p: [f64; 2]) -> f64 {
        let (dx, dy) = (self.b[0] - self.a[0], self.b[1] - self.a[1]);
        let l2 = dx * dx + dy * dy;
        let s = (((p[0] - self.a[0]) * dx + (p[1] - self.a[1]) * dy) / l2).clamp(0.0, 1.0);
        let (cx, cy) = (self.a[0] + s * dx, self.a[1] + s * dy);
        (p[0] - cx).hypot(p[1] - cy)
    }
}

#[derive(Clone, Debug)]
pub struct BoundaryMesh {
    segments: Vec<Segment>,
}

impl BoundaryMesh {
    /// Build from segments, enforcing the closed counter-clockwise loop
    /// invariant.
    pub fn new(segments: Vec<Segment>) -> Result<BoundaryMesh, BemError> {
        let invalid = |reason: &str| BemError::InvalidBoundary { reason: reason.to_string() };
        if segments.len() < 3 {
            return Err(invalid("need at least 3 segments"));
        }
        let scale = segments
            .iter()
            .map(|s| s.length())
            .fold(0.0f64, f64::max);
        if scale == 0.0 || !scale.is_finite() {
            return Err(invalid("degenerate or non-finite segment lengths"));
        }
        for s in &segments {
            if s.length() < 1e-12 * scale {
                return Err(invalid("zero-length segment"));
            }
        }
        for (i, s) in segments.iter().enumerate() {
            let next = &segments[(i + 1) % segments.len()];
            let gap = (s.b[0] - next.a[0]).hypot(s.b[1] - next.a[1]);
            if gap > 1e-9 * scale {
                return Err(invalid("segments do not chain into a closed loop"));
            }
        }
        // shoelace over the chained endpoints; > 0 means counter-clockwise
        let area: f64 = segments
            .iter()
            .map(|s| 0.5 * (s.a[0] * s.b[1] - s.b[0] * s.a[1]))
            .sum();
        if area <= 0.0 {
            return Err(invalid("loop must be counter-clockwise"));
        }
        Ok(BoundaryMesh { segments })
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Overwrite one segment's boundary data.  Geometry stays fixed; traction
    /// and displacement are inputs in this formulation, so swapping them never
    /// re-validates the contour.
    pub fn set_data(&mut self, i: usize, t: [f64; 2], u: [f64; 2]) {
        self.segments[i].t = t;
        self.segments[i].u = u;
    }

    pub fn shortest_segment(&self) -> f64 {
        self.segments
            .iter()
            .map(|s| s.length())
            .fold(f64::INFINITY, f64::min)
    }

    pub fn distance_to(&self, p: [f64; 2]) -> f64 {
        self.segments
            .iter()
            .map(|s| s.distance_to(p))
            .fold(f64::INFINITY, f64::min)
    }

    /// Unit square [0,1]² split into `n` segments per side, zero data.
    pub fn unit_square(n: usize) -> BoundaryMesh {
        assert!(n >= 1);
        let corners = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        let mut segments = Vec::with_capacity(4 * n);
        for side in 0..4 {
            let (c0, c1) = (corners[side], corners[(side + 1) % 4]);
            for k in 0..n {
                let f0 = k as f64 / n as f64;
                let f1 = (k + 1) as f64 / n as f64;
                segments.push(Segment {
                    a: [c0[0] + f0 * (c1[0] - c0[0]), c0[1] + f0 * (c1[1] - c0[1])],
                    b: [c0[0] + f1 * (c1[0] - c0[0]), c0[1] + f1 * (c1[1] - c0[1])],
                    t: [0.0, 0.0],
                    u: [0.0, 0.0],
                });
            }
        }
        BoundaryMesh::new(segments).expect("generated square loop is valid")
    }

    /// Unit square carrying the exact boundary data of a uniform plane-
    /// strain stress state (in-plane components s11, s22, s12): t = σ·n per
    /// segment and u = ε·x at the segment midpoint, with ε = D σ.
    pub fn uniform_state_square(
        n: usize,
        material: &IsotropicMaterial,
        in_plane: [f64; 3],
    ) -> (BoundaryMesh, SymTensor2, SymTensor2) {
        let (sigma, eps) = plane_strain_state(material, in_plane);
        let mut mesh = BoundaryMesh::unit_square(n);
        for s in &mut mesh.segments {
            let nrm = s.normal();
            s.t = [
                sigma.get(0, 0) * nrm[0] + sigma.get(0, 1) * nrm[1],
                sigma.get(1, 0) * nrm[0] + sigma.get(1, 1) * nrm[1],
            ];
            let m = s.midpoint();
            s.u = [
                eps.get(0, 0) * m[0] + eps.get(0, 1) * m[1],
                eps.get(1, 0) * m[0] + eps.get(1, 1) * m[1],
            ];
        }
        (mesh, sigma, eps)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<BoundaryMesh, BemError> {
        Self::from_reader(File::open(path)?)
    }

    pub fn from_reader(r: impl Read) -> Result<BoundaryMesh, BemError> {
        let bad = |line: usize, reason: &str| BemError::BadBoundaryFile {
            line,
            reason: reason.to_string(),
        };
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
        let nsegs: usize = header
            .trim()
            .parse()
            .map_err(|_| bad(hline, "header must be the segment count"))?;
        let mut segments = Vec::with_capacity(nsegs);
        for _ in 0..nsegs {
            let (ln, l) = it.next().ok_or_else(|| bad(0, "unexpected end of segment list"))?;
            let f: Result<Vec<f64>, _> = l.split_whitespace().map(str::parse).collect();
            let f = f.map_err(|_| bad(ln, "bad number"))?;
            if f.len() != 8 {
                return Err(bad(ln, "segment line must be `x1 y1 x2 y2 t1 t2 u1 u2`"));
            }
            if f.iter().any(|v| !v.is_finite()) {
                return Err(bad(ln, "non-finite value"));
            }
            segments.push(Segment {
                a: [f[0], f[1]],
                b: [f[2], f[3]],
                t: [f[4], f[5]],
                u: [f[6], f[7]],
            });
        }
        if let Some((ln, _)) = it.next() {
            return Err(bad(ln, "trailing content after segment list"));
        }
        BoundaryMesh::new(segments)
    }

    pub fn write(&self, w: &mut impl std::io::Write) -> std::io::Result<()> {
        writeln!(w, "{}", self.segments.len())?;
        for s in &self.segments {
            writeln!(
                w,
                "{:.16e} {:.16e} {:.16e} {:.16e} {:.16e} {:.16e} {:.16e} {:.16e}",
                s.a[0], s.a[1], s.b[0], s.b[1], s.t[0], s.t[1], s.u[0], s.u[1]
            )?;
        }
        Ok(())
    }
}

/// Complete a uniform in-plane stress to the full plane-strain state:
/// σ33 = ν(σ11 + σ22), then ε = D σ (which leaves ε33 = 0).
pub fn plane_strain_state(
    material: &IsotropicMaterial,
    in_plane: [f64; 3],
) -> (SymTensor2, SymTensor2) {
    let [s11, s22, s12] = in_plane;
    let s33 = material.poisson() * (s11 + s22);
    let sigma = SymTensor2::new(Kind::Stress, [s11, s22, s33, s12, 0.0, 0.0]);
    let eps = material.compliance_law().apply_full(&sigma);
    (sigma, eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn square_loop_is_valid_and_normals_point_outward() {
        let m = BoundaryMesh::unit_square(4);
        assert_eq!(m.segments().len(), 16);
        for s in m.segments() {
            let mid = s.midpoint();
            let n = s.normal();
            // stepping outward must leave the square
            let out = [mid[0] + 1e-3 * n[0], mid[1] + 1e-3 * n[1]];
            let inside = out[0] > 0.0 && out[0] < 1.0 && out[1] > 0.0 && out[1] < 1.0;
            assert!(!inside, "normal at {mid:?} points inward");
        }
    }

    #[test]
    fn clockwise_loop_is_rejected() {
        let m = BoundaryMesh::unit_square(1);
        let reversed: Vec<Segment> = m
            .segments()
            .iter()
            .rev()
            .map(|s| Segment { a: s.b, b: s.a, ..*s })
            .collect();
        match BoundaryMesh::new(reversed) {
            Err(BemError::InvalidBoundary { .. }) => {}
            other => panic!("expected InvalidBoundary, got {other:?}"),
        }
    }

    #[test]
    fn open_loop_is_rejected() {
        let mut segs: Vec<Segment> = BoundaryMesh::unit_square(1).segments().to_vec();
        segs[2].b = [5.0, 5.0];
        assert!(BoundaryMesh::new(segs).is_err());
    }

    #[test]
    fn plane_strain_completion_has_zero_out_of_plane_strain() {
        let m = IsotropicMaterial::new(200.0, 0.3).unwrap();
        let (sigma, eps) = plane_strain_state(&m, [5.0, -2.0, 1.5]);
        assert_relative_eq!(sigma.get(2, 2), 0.3 * 3.0, max_relative = 1e-12);
        assert!(eps.get(2, 2).abs() < 1e-15 * eps.norm());
    }

    #[test]
    fn uniform_state_data_round_trips_through_the_file_format() {
        let m = IsotropicMaterial::new(100.0, 0.25).unwrap();
        let (mesh, _, _) = BoundaryMesh::uniform_state_square(3, &m, [2.0, 0.0, 0.5]);
        let mut buf = Vec::new();
        mesh.write(&mut buf).unwrap();
        let back = BoundaryMesh::from_reader(&buf[..]).unwrap();
        assert_eq!(back.segments().len(), mesh.segments().len());
        for (a, b) in mesh.segments().iter().zip(back.segments()) {
            assert_eq!(a.t, b.t);
            assert_eq!(a.u, b.u);
        }
    }

    #[test]
    fn distance_to_boundary() {
        let m = BoundaryMesh::unit_square(4);
        assert_relative_eq!(m.distance_to([0.5, 0.5]), 0.5, max_relative = 1e-12);
        assert_relative_eq!(m.distance_to([0.5, 0.9]), 0.1, max_relative = 1e-9);
    }
}
