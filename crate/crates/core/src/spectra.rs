//! Graph matrices and their spectra.
//!
//! The Laplacian is `L = D - A` (positive semidefinite, zero row sums) and
//! the signless Laplacian is `Q = D + A`. Eigenvalues of symmetric matrices
//! come from a cyclic Jacobi solver; exact characteristic polynomials live in
//! [`crate::poly`].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default stopping threshold for the off-diagonal Frobenius norm, relative
/// to `max(1, ‖M‖∞)`.
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum MatrixKind {
    Adjacency,
    Laplacian,
    SignlessLaplacian,
}

/// Dense square integer matrix, row major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix { n, data: vec![0; n * n] }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionCap { dim: n, max: n });
        }
        Ok(IntMatrix { n, data: rows.concat() })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: i64) {
        self.data[i * self.n + j] = value;
    }

    pub fn row_sum(&self, i: usize) -> i64 {
        self.data[i * self.n..(i + 1) * self.n].iter().sum()
    }

    pub fn trace(&self) -> i64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn to_real(&self) -> RealMatrix {
        RealMatrix { n: self.n, data: self.data.iter().map(|&x| x as f64).collect() }
    }
}

/// Dense square real matrix, row major.
#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix {
    n: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionCap { dim: n, max: n });
        }
        Ok(RealMatrix { n, data: rows.concat() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.n)
            .map(|i| self.data[i * self.n..(i + 1) * self.n].iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

/// `A`, `L = D - A` or `Q = D + A` of `g`.
pub fn build_matrix(g: &Graph, kind: MatrixKind) -> IntMatrix {
    let n = g.n();
    let mut m = IntMatrix::zeros(n);
    let off = match kind {
        MatrixKind::Laplacian => -1,
        MatrixKind::Adjacency | MatrixKind::SignlessLaplacian => 1,
    };
    for (u, v) in g.edges() {
        m.set(u, v, off);
        m.set(v, u, off);
    }
    if kind != MatrixKind::Adjacency {
        for v in 0..n {
            m.set(v, v, g.degree(v) as i64);
        }
    }
    m
}

/// Eigenvalues sorted in non-increasing order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub kind: Option<MatrixKind>,
    /// Absolute accuracy bound on each value: the final off-diagonal
    /// Frobenius norm plus a rounding allowance.
    pub tol: f64,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest eigenvalue, `0` for the empty spectrum.
    pub fn largest(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    /// `values[i-1]`, i.e. the `i`-th largest (1-based, as in `μ_i`).
    pub fn nth(&self, i: usize) -> f64 {
        self.values[i - 1]
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Number of eigenvalues with absolute value below `tol`.
    pub fn zero_multiplicity(&self) -> usize {
        let cut = self.tol.max(1e-9);
        self.values.iter().filter(|v| v.abs() < cut).count()
    }
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
///
/// Sweeps until the off-diagonal Frobenius norm drops to `tol · max(1, ‖m‖∞)`,
/// failing after `100·n` sweeps.
pub fn eig_symmetric(m: &RealMatrix, tol: f64) -> Result<Spectrum> {
    let n = m.n;
    let scale = m.norm_inf().max(1.0);
    for i in 0..n {
        for j in 0..i {
            if (m.get(i, j) - m.get(j, i)).abs() > tol * scale {
                return Err(Error::NotSymmetric { row: i, col: j });
            }
        }
    }
    let mut a = m.data.clone();
    let target = tol * scale;
    let off_norm = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                s += 2.0 * a[i * n + j] * a[i * n + j];
            }
        }
        s.sqrt()
    };

    let max_sweeps = 100 * n.max(1);
    let mut off = off_norm(&a);
    let mut sweeps = 0;
    while off > target {
        if sweeps == max_sweeps {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[r * n + p];
                    let arq = a[r * n + q];
                    let new_p = arp - s * (arq + tau * arp);
                    let new_q = arq + s * (arp - tau * arq);
                    a[r * n + p] = new_p;
                    a[p * n + r] = new_p;
                    a[r * n + q] = new_q;
                    a[q * n + r] = new_q;
                }
            }
        }
        off = off_norm(&a);
    }

    let mut values: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    values.sort_unstable_by(|x, y| y.total_cmp(x));
    let rounding = 16.0 * (n.max(1) as f64) * f64::EPSILON * scale;
    Ok(Spectrum { values, kind: None, tol: off + rounding })
}

/// Spectrum of `A`, `L` or `Q` of `g` at the default tolerance.
pub fn spectrum(g: &Graph, kind: MatrixKind) -> Spectrum {
    let m = build_matrix(g, kind).to_real();
    let mut s = eig_symmetric(&m, DEFAULT_TOL).expect("graph matrices are symmetric and Jacobi converges");
    s.kind = Some(kind);
    s
}

/// The Laplacian and signless Laplacian quantities the bounds use.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KeyValues {
    /// Largest Laplacian eigenvalue `μ₁`.
    pub mu1: f64,
    /// Algebraic connectivity `μ_{n-1}`.
    pub mu_n1: f64,
    /// Largest signless Laplacian eigenvalue `q₁`.
    pub q1: f64,
    /// Laplacian spread `μ₁ - μ_{n-1}`.
    pub spread: f64,
}

impl KeyValues {
    pub fn from_spectra(laplacian: &Spectrum, signless: &Spectrum) -> Result<Self> {
        let n = laplacian.len();
        if n < 2 {
            return Err(Error::TooFewVertices { n, min: 2 });
        }
        let mu1 = laplacian.nth(1);
        let mu_n1 = laplacian.nth(n - 1);
        Ok(KeyValues { mu1, mu_n1, q1: signless.largest(), spread: mu1 - mu_n1 })
    }
}

pub fn key_values(g: &Graph) -> Result<KeyValues> {
    if g.n() < 2 {
        return Err(Error::TooFewVertices { n: g.n(), min: 2 });
    }
    KeyValues::from_spectra(&spectrum(g, MatrixKind::Laplacian), &spectrum(g, MatrixKind::SignlessLaplacian))
}
