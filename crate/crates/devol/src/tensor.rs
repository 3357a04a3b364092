//! Symmetric rank-2/rank-4 tensor algebra, Voigt conversions, the
//! deviatoric/volumetric decomposition multipliers, and invariants.
//!
//! Component order is fixed everywhere as (11, 22, 33, 12, 23, 31).  Strain
//! vectors in Voigt form carry engineering shear (doubled), stress vectors
//! tensor shear; the conversion is the only place where the factor of two
//! lives.  Invariants and double contractions are always evaluated on full
//! tensor components so that shear weighting cannot leak in.

use nalgebra::{Matrix3, Matrix6, Vector6};
use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};
use thiserror::Error;

/// Fixed Voigt slot order: index pairs (i,j) for slots 0..6.
pub const VOIGT_ORDER: [(usize, usize); 6] = [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2), (2, 0)];

#[derive(Debug, Error, PartialEq)]
pub enum TensorError {
    /// A rank-4 tensor whose action on symmetric arguments is not symmetric
    /// has no unique 6×6 Voigt image.
    #[error("rank-4 tensor tagged General has no unique Voigt image")]
    NoVoigtImage,
    /// A singular 6×6 matrix was handed to a linear solve.
    #[error("matrix is singular to working precision (rank {rank} < 6); no solve possible")]
    SingularMatrix { rank: usize },
}

/// Whether a rank-2 tensor measures stress or strain.  The tag only affects
/// Voigt shear weighting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Stress,
    Strain,
}

/// Selector for the two decomposition multipliers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecompKind {
    /// Projects onto the traceless (shape-changing) subspace.
    Dev,
    /// Projects onto the isotropic (volume-changing) subspace.
    Vol,
}

/// Symmetry class of a rank-4 tensor.  `MinorSymmetric` asserts that the
/// tensor's action is well defined on symmetric arguments: symmetrising the
/// last index pair leaves components symmetric in the first pair.  The raw
/// component arrays of the multipliers and isotropic laws are written with
/// the plain (unsymmetrised) identity `δ_ki δ_lj`, so the raw arrays are not
/// index-symmetric even though their action is; the action-level condition is
/// what [`Rank4::has_symmetric_action`] checks and what Voigt conversion
/// requires.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymClass {
    MinorSymmetric,
    General,
}

/// Symmetric rank-2 tensor stored as its six independent components in the
/// fixed slot order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymTensor2 {
    c: [f64; 6],
    kind: Kind,
}

/// Result of splitting a symmetric tensor into deviatoric and volumetric
/// parts: `dev + vol` rebuilds the input, `vol = scalar·δ`, and `scalar` is
/// one third of the trace (the pressure for stress, the mean strain for
/// strain).
#[derive(Clone, Copy, Debug)]
pub struct Decomposition {
    pub dev: SymTensor2,
    pub vol: SymTensor2,
    pub scalar: f64,
}

/// First invariant of the tensor and second/third invariants of its
/// deviatoric part.
#[derive(Clone, Copy, Debug)]
pub struct Invariants {
    pub i1: f64,
    pub j2: f64,
    pub j3: f64,
}

impl SymTensor2 {
    /// Builds a tensor from components in slot order (11, 22, 33, 12, 23, 31).
    pub fn new(kind: Kind, components: [f64; 6]) -> Self {
        debug_assert!(components.iter().all(|c| c.is_finite()));
        Self { c: components, kind }
    }

    pub fn stress(components: [f64; 6]) -> Self {
        Self::new(Kind::Stress, components)
    }

    pub fn strain(components: [f64; 6]) -> Self {
        Self::new(Kind::Strain, components)
    }

    pub fn zero(kind: Kind) -> Self {
        Self::new(kind, [0.0; 6])
    }

    pub fn diag(kind: Kind, d: [f64; 3]) -> Self {
        Self::new(kind, [d[0], d[1], d[2], 0.0, 0.0, 0.0])
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// Same components under the other interpretation; used when a law maps
    /// one kind into the other.
    pub fn with_kind(&self, kind: Kind) -> Self {
        Self { c: self.c, kind }
    }

    pub fn components(&self) -> [f64; 6] {
        self.c
    }

    fn slot(i: usize, j: usize) -> usize {
        match (i, j) {
            (0, 0) => 0,
            (1, 1) => 1,
            (2, 2) => 2,
            (0, 1) | (1, 0) => 3,
            (1, 2) | (2, 1) => 4,
            (2, 0) | (0, 2) => 5,
            _ => panic!("tensor index out of range: ({i},{j})"),
        }
    }

    /// Full-tensor component t_ij (symmetric indexing).
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.c[Self::slot(i, j)]
    }

    pub fn trace(&self) -> f64 {
        self.c[0] + self.c[1] + self.c[2]
    }

    /// Double contraction Σ_ij a_ij b_ij over all nine index pairs, so shear
    /// components count twice.
    pub fn double_contract(&self, other: &SymTensor2) -> f64 {
        let mut sum = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                sum += self.get(i, j) * other.get(i, j);
            }
        }
        sum
    }

    /// Frobenius norm over the full nine components.
    pub fn norm(&self) -> f64 {
        self.double_contract(self).sqrt()
    }

    pub fn to_matrix(&self) -> Matrix3<f64> {
        Matrix3::from_fn(|i, j| self.get(i, j))
    }

    /// Deviatoric/volumetric split, evaluated through the multipliers so it
    /// agrees with the projector pipeline to the last few ulps.
    pub fn decompose(&self) -> Decomposition {
        let dev = Rank4::multiplier(DecompKind::Dev).apply(self);
        let vol = Rank4::multiplier(DecompKind::Vol).apply(self);
        Decomposition { dev, vol, scalar: self.trace() / 3.0 }
    }

    /// I1 of the tensor plus J2, J3 of its deviatoric part, all from full
    /// tensor components.
    pub fn invariants(&self) -> Invariants {
        let s = self.decompose().dev;
        let m = s.to_matrix();
        Invariants {
            i1: self.trace(),
            j2: 0.5 * s.double_contract(&s),
            j3: (m * m * m).trace() / 3.0,
        }
    }

    /// Voigt vector in the fixed slot order; strain shear slots are doubled
    /// (engineering shear).
    pub fn to_voigt(&self) -> Voigt6 {
        let f = match self.kind {
            Kind::Stress => 1.0,
            Kind::Strain => 2.0,
        };
        let c = self.c;
        Voigt6::new(
            self.kind,
            [c[0], c[1], c[2], f * c[3], f * c[4], f * c[5]],
        )
    }

    pub fn scale(&self, a: f64) -> Self {
        let mut c = self.c;
        for x in &mut c {
            *x *= a;
        }
        Self { c, kind: self.kind }
    }
}

impl Add for SymTensor2 {
    type Output = SymTensor2;
    fn add(self, rhs: SymTensor2) -> SymTensor2 {
        debug_assert_eq!(self.kind, rhs.kind);
        let mut c = self.c;
        for (a, b) in c.iter_mut().zip(rhs.c) {
            *a += b;
        }
        SymTensor2 { c, kind: self.kind }
    }
}

impl Sub for SymTensor2 {
    type Output = SymTensor2;
    fn sub(self, rhs: SymTensor2) -> SymTensor2 {
        debug_assert_eq!(self.kind, rhs.kind);
        let mut c = self.c;
        for (a, b) in c.iter_mut().zip(rhs.c) {
            *a -= b;
        }
        SymTensor2 { c, kind: self.kind }
    }
}

impl Neg for SymTensor2 {
    type Output = SymTensor2;
    fn neg(self) -> SymTensor2 {
        self.scale(-1.0)
    }
}

impl Mul<f64> for SymTensor2 {
    type Output = SymTensor2;
    fn mul(self, a: f64) -> SymTensor2 {
        self.scale(a)
    }
}

impl fmt::Display for SymTensor2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.c;
        write!(
            f,
            "[11 {:+.6e}, 22 {:+.6e}, 33 {:+.6e}, 12 {:+.6e}, 23 {:+.6e}, 31 {:+.6e}]",
            c[0], c[1], c[2], c[3], c[4], c[5]
        )
    }
}

fn kron(a: usize, b: usize) -> i32 {
    (a == b) as i32
}

/// Rank-4 tensor over 3×3×3×3 with a symmetry-class tag.
#[derive(Clone, Copy)]
pub struct Rank4 {
    c: [[[[f64; 3]; 3]; 3]; 3],
    class: SymClass,
}

impl Rank4 {
    pub fn zero(class: SymClass) -> Self {
        Self { c: [[[[0.0; 3]; 3]; 3]; 3], class }
    }

    pub fn from_fn(class: SymClass, f: impl Fn(usize, usize, usize, usize) -> f64) -> Self {
        let mut t = Self::zero(class);
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        t.c[i][j][k][l] = f(i, j, k, l);
                    }
                }
            }
        }
        t
    }

    /// The identity on rank-2 tensors, `δ_ki δ_lj`.
    pub fn identity() -> Self {
        Self::from_fn(SymClass::MinorSymmetric, |i, j, k, l| {
            f64::from(kron(k, i) * kron(l, j))
        })
    }

    /// The deviatoric or volumetric decomposition multiplier.
    ///
    /// Every entry is an integer divided by 3.0, so the two multipliers sum
    /// to the identity bit-for-bit: fl(2/3) + fl(1/3) = 1 and
    /// fl(−1/3) + fl(1/3) = 0 exactly.  (Constructing 2/3 as 1 − 1/3 would
    /// break this: fl(1 − fl(1/3)) ≠ fl(2/3).)
    pub fn multiplier(kind: DecompKind) -> Self {
        Self::from_fn(SymClass::MinorSymmetric, |i, j, k, l| {
            let n = match kind {
                DecompKind::Dev => 3 * kron(k, i) * kron(l, j) - kron(l, k) * kron(i, j),
                DecompKind::Vol => kron(l, k) * kron(i, j),
            };
            f64::from(n) / 3.0
        })
    }

    pub fn class(&self) -> SymClass {
        self.class
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.c[i][j][k][l]
    }

    /// Contraction `r_ij = Σ_kl T_ijkl t_kl`.  The result is computed on the
    /// six canonical slots, so it is symmetric by construction; for tensors
    /// with symmetric action the (i,j) and (j,i) evaluations coincide anyway.
    pub fn apply(&self, t: &SymTensor2) -> SymTensor2 {
        let mut out = [0.0; 6];
        for (slot, &(i, j)) in VOIGT_ORDER.iter().enumerate() {
            let mut sum = 0.0;
            for k in 0..3 {
                for l in 0..3 {
                    sum += self.c[i][j][k][l] * t.get(k, l);
                }
            }
            out[slot] = sum;
        }
        SymTensor2::new(t.kind(), out)
    }

    /// Composition `(A B)_ijmn = Σ_kl A_ijkl B_klmn` (left multiplication,
    /// the only composition order the decomposition uses).
    pub fn compose(&self, other: &Rank4) -> Rank4 {
        let class = if self.class == SymClass::MinorSymmetric
            && other.class == SymClass::MinorSymmetric
        {
            SymClass::MinorSymmetric
        } else {
            SymClass::General
        };
        Rank4::from_fn(class, |i, j, m, n| {
            let mut sum = 0.0;
            for k in 0..3 {
                for l in 0..3 {
                    sum += self.c[i][j][k][l] * other.c[k][l][m][n];
                }
            }
            sum
        })
    }

    pub fn add(&self, other: &Rank4) -> Rank4 {
        let class = if self.class == other.class { self.class } else { SymClass::General };
        Rank4::from_fn(class, |i, j, k, l| self.c[i][j][k][l] + other.c[i][j][k][l])
    }

    pub fn sub(&self, other: &Rank4) -> Rank4 {
        let class = if self.class == other.class { self.class } else { SymClass::General };
        Rank4::from_fn(class, |i, j, k, l| self.c[i][j][k][l] - other.c[i][j][k][l])
    }

    pub fn scale(&self, a: f64) -> Rank4 {
        Rank4::from_fn(self.class, |i, j, k, l| a * self.c[i][j][k][l])
    }

    /// Frobenius norm over all 81 components.
    pub fn norm(&self) -> f64 {
        let mut sum = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        sum += self.c[i][j][k][l] * self.c[i][j][k][l];
                    }
                }
            }
        }
        sum.sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        m = m.max(self.c[i][j][k][l].abs());
                    }
                }
            }
        }
        m
    }

    /// Exhaustive check that symmetrising the last index pair leaves the
    /// components symmetric in the first pair — the condition under which the
    /// action on symmetric tensors is itself symmetric and a unique Voigt
    /// image exists.  `rel_tol` is measured against the largest component.
    pub fn has_symmetric_action(&self, rel_tol: f64) -> bool {
        let scale = self.max_abs().max(1e-300);
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        let eff_ij = 0.5 * (self.c[i][j][k][l] + self.c[i][j][l][k]);
                        let eff_ji = 0.5 * (self.c[j][i][k][l] + self.c[j][i][l][k]);
                        if (eff_ij - eff_ji).abs() > rel_tol * scale {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// The 6×6 matrix `M` with `to_voigt(T t) = M · to_voigt(t)` for every
    /// symmetric `t`, built column-by-column from the six basis tensors of
    /// `col_kind` — the commuting diagram holds by construction and
    /// linearity.  General-tagged tensors are rejected: without symmetric
    /// action no such matrix exists.
    pub fn to_voigt66(&self, row_kind: Kind, col_kind: Kind) -> Result<Voigt66, TensorError> {
        if self.class == SymClass::General {
            return Err(TensorError::NoVoigtImage);
        }
        let mut m = Matrix6::zeros();
        for col in 0..6 {
            let basis = Voigt6::basis(col_kind, col).to_tensor();
            let image = self.apply(&basis).with_kind(row_kind).to_voigt();
            for row in 0..6 {
                m[(row, col)] = image[row];
            }
        }
        Ok(Voigt66::from_matrix(m))
    }
}

impl fmt::Debug for Rank4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rank4({:?}, norm {:.6e})", self.class, self.norm())
    }
}

/// Six-component Voigt vector in the fixed slot order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Voigt6 {
    v: Vector6<f64>,
    kind: Kind,
}

impl Voigt6 {
    pub fn new(kind: Kind, entries: [f64; 6]) -> Self {
        Self { v: Vector6::from_row_slice(&entries), kind }
    }

    pub fn from_vector(kind: Kind, v: Vector6<f64>) -> Self {
        Self { v, kind }
    }

    /// Unit vector along one Voigt slot.
    pub fn basis(kind: Kind, slot: usize) -> Self {
        let mut e = [0.0; 6];
        e[slot] = 1.0;
        Self::new(kind, e)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn vector(&self) -> &Vector6<f64> {
        &self.v
    }

    /// Inverse of [`SymTensor2::to_voigt`]: strain shear slots are halved
    /// back to tensor shear.  Round trips are exact because the factor is a
    /// power of two.
    pub fn to_tensor(&self) -> SymTensor2 {
        let f = match self.kind {
            Kind::Stress => 1.0,
            Kind::Strain => 0.5,
        };
        SymTensor2::new(
            self.kind,
            [
                self.v[0],
                self.v[1],
                self.v[2],
                f * self.v[3],
                f * self.v[4],
                f * self.v[5],
            ],
        )
    }

    pub fn norm(&self) -> f64 {
        self.v.norm()
    }
}

impl Index<usize> for Voigt6 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.v[i]
    }
}

/// 6×6 matrix acting on Voigt vectors.  No symmetry is required — the
/// decomposition multipliers happen to be symmetric, but their products with
/// laws need not be.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Voigt66 {
    m: Matrix6<f64>,
}

impl Voigt66 {
    pub fn from_matrix(m: Matrix6<f64>) -> Self {
        Self { m }
    }

    pub fn matrix(&self) -> &Matrix6<f64> {
        &self.m
    }

    pub fn identity() -> Self {
        Self { m: Matrix6::identity() }
    }

    pub fn zeros() -> Self {
        Self { m: Matrix6::zeros() }
    }

    /// 6×6 form of the decomposition multipliers.  Entries are integers over
    /// 3.0, exactly as in the rank-4 form, so `Dev + Vol` is the identity
    /// bit-for-bit here too.
    pub fn multiplier(kind: DecompKind) -> Self {
        let dev_num: [[i32; 6]; 6] = [
            [2, -1, -1, 0, 0, 0],
            [-1, 2, -1, 0, 0, 0],
            [-1, -1, 2, 0, 0, 0],
            [0, 0, 0, 3, 0, 0],
            [0, 0, 0, 0, 3, 0],
            [0, 0, 0, 0, 0, 3],
        ];
        let vol_num: [[i32; 6]; 6] = [
            [1, 1, 1, 0, 0, 0],
            [1, 1, 1, 0, 0, 0],
            [1, 1, 1, 0, 0, 0],
            [0, 0, 0, 0, 0, 0],
            [0, 0, 0, 0, 0, 0],
            [0, 0, 0, 0, 0, 0],
        ];
        let num = match kind {
            DecompKind::Dev => dev_num,
            DecompKind::Vol => vol_num,
        };
        Self {
            m: Matrix6::from_fn(|i, j| f64::from(num[i][j]) / 3.0),
        }
    }

    pub fn apply(&self, v: &Voigt6, out_kind: Kind) -> Voigt6 {
        Voigt6::from_vector(out_kind, self.m * v.vector())
    }

    /// Numerical rank by singular values, relative to the largest.
    pub fn rank(&self, rel_tol: f64) -> usize {
        let sv = self.m.svd(false, false).singular_values;
        let max = sv.max();
        if max == 0.0 {
            return 0;
        }
        sv.iter().filter(|&&s| s > rel_tol * max).count()
    }

    /// Linear solve that reports rank-deficient matrices instead of returning
    /// noise amplified off a tiny pivot.
    pub fn try_solve(&self, rhs: &Vector6<f64>) -> Result<Vector6<f64>, TensorError> {
        let rank = self.rank(crate::tol::RANK_REL);
        if rank < 6 {
            return Err(TensorError::SingularMatrix { rank });
        }
        let lu = self.m.lu();
        lu.solve(rhs)
            .ok_or(TensorError::SingularMatrix { rank })
    }

    pub fn norm(&self) -> f64 {
        self.m.norm()
    }
}

impl Add for Voigt66 {
    type Output = Voigt66;
    fn add(self, rhs: Voigt66) -> Voigt66 {
        Voigt66 { m: self.m + rhs.m }
    }
}

impl Sub for Voigt66 {
    type Output = Voigt66;
    fn sub(self, rhs: Voigt66) -> Voigt66 {
        Voigt66 { m: self.m - rhs.m }
    }
}

impl Mul for Voigt66 {
    type Output = Voigt66;
    fn mul(self, rhs: Voigt66) -> Voigt66 {
        Voigt66 { m: self.m * rhs.m }
    }
}

impl fmt::Display for Voigt66 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..6 {
            for j in 0..6 {
                write!(f, "{:+.6e}{}", self.m[(i, j)], if j < 5 { " " } else { "" })?;
            }
            if i < 5 {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}
