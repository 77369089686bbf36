//! Minimal dense symmetric linear algebra: Jacobi eigendecomposition,
//! Cholesky factorization, SPD inverse square root, and the spectral norm.
//!
//! Matrices are stored dense and row-major; the dimensions handled by this
//! crate are small (covariance blocks of a few hundred rows at most), so no
//! sparse or blocked paths are provided.

use crate::error::{Error, Result};

/// Default relative eigenvalue tolerance separating rank deficiency from
/// round-off when inverting SPD matrices.
pub const SPD_REL_TOL: f64 = 1e-12;

/// Dense rectangular matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    /// Builds a matrix from row vectors; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(Error::RaggedRow {
                    row: i,
                    expected: c,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Matrix { rows: r, cols: c, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn matmul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matmul dimension mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }

    /// Gram product `self · selfᵀ`, symmetric by construction.
    pub fn gram(&self) -> SymMatrix {
        SymMatrix::from_fn(self.rows, |i, j| {
            let mut acc = 0.0;
            for k in 0..self.cols {
                acc += self.get(i, k) * self.get(j, k);
            }
            acc
        })
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }
}

/// Symmetric matrix with exactly mirrored entries.
///
/// Constructors either mirror one triangle or verify exact symmetry of the
/// supplied data, so `get(i, j) == get(j, i)` holds bitwise.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "symmetric matrix needs dim >= 1");
        SymMatrix {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scaled_identity(dim, 1.0)
    }

    pub fn scaled_identity(dim: usize, v: f64) -> Self {
        let mut m = SymMatrix::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = v;
        }
        m
    }

    pub fn diag(values: &[f64]) -> Self {
        let mut m = SymMatrix::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m.data[i * values.len() + i] = v;
        }
        m
    }

    /// Fills the upper triangle from `f(i, j)` with `i <= j` and mirrors it.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = SymMatrix::zeros(dim);
        for i in 0..dim {
            for j in i..dim {
                let v = f(i, j);
                m.data[i * dim + j] = v;
                m.data[j * dim + i] = v;
            }
        }
        m
    }

    /// Validates exact symmetry of the supplied rows.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::domain("symmetric matrix needs dim >= 1"));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::RaggedRow {
                    row: i,
                    expected: dim,
                    found: row.len(),
                });
            }
        }
        for i in 0..dim {
            for j in (i + 1)..dim {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::NotSymmetric { i, j });
                }
            }
        }
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            data.extend_from_slice(row);
        }
        Ok(SymMatrix { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set_sym(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.dim + j] = v;
        self.data[j * self.dim + i] = v;
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix {
            rows: self.dim,
            cols: self.dim,
            data: self.data.clone(),
        }
    }

    pub fn rows_vec(&self) -> Vec<Vec<f64>> {
        (0..self.dim)
            .map(|i| self.data[i * self.dim..(i + 1) * self.dim].to_vec())
            .collect()
    }

    fn check_finite(&self) -> Result<()> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                if !self.get(i, j).is_finite() {
                    return Err(Error::NonFinite { row: i, col: j });
                }
            }
        }
        Ok(())
    }
}

/// Eigendecomposition of a symmetric matrix, `A = Q diag(λ) Qᵀ`.
#[derive(Debug, Clone)]
pub struct EigDecomposition {
    /// Eigenvalues in ascending order.
    pub eigenvalues: Vec<f64>,
    /// Orthogonal matrix whose columns are the eigenvectors, in the same
    /// order as `eigenvalues`.
    pub eigenvectors: Matrix,
}

/// Eigendecomposition by cyclic Jacobi rotations.
///
/// Converges when the off-diagonal Frobenius norm drops below
/// `1e-14 · ‖A‖_F`; at most 100 sweeps are performed. Foolproof for the
/// small symmetric matrices this crate handles.
pub fn eig_symmetric(a: &SymMatrix) -> Result<EigDecomposition> {
    a.check_finite()?;
    let n = a.dim;
    let norm = a.frobenius_norm();
    let mut work = a.data.clone();
    let mut q = Matrix::identity(n);

    let threshold = 1e-14 * norm;
    const MAX_SWEEPS: usize = 100;

    let idx = |i: usize, j: usize| i * n + j;
    let mut converged = norm == 0.0 || n == 1;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut off = 0.0;
        for p in 0..n {
            for r in (p + 1)..n {
                off += 2.0 * work[idx(p, r)] * work[idx(p, r)];
            }
        }
        if off.sqrt() <= threshold {
            converged = true;
            break;
        }

        for p in 0..(n - 1) {
            for r in (p + 1)..n {
                let apq = work[idx(p, r)];
                if apq == 0.0 {
                    continue;
                }
                // Negligible relative to the diagonal: zero it and move on.
                let g = 100.0 * apq.abs();
                let dp = work[idx(p, p)];
                let dq = work[idx(r, r)];
                if dp.abs() + g == dp.abs() && dq.abs() + g == dq.abs() {
                    work[idx(p, r)] = 0.0;
                    work[idx(r, p)] = 0.0;
                    continue;
                }

                let theta = (dq - dp) / (2.0 * apq);
                let t = if theta.is_finite() {
                    let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                    sign / (theta.abs() + (theta * theta + 1.0).sqrt())
                } else {
                    // apq is tiny compared to the diagonal gap.
                    1.0 / (2.0 * theta)
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                let h = t * apq;

                work[idx(p, p)] = dp - h;
                work[idx(r, r)] = dq + h;
                work[idx(p, r)] = 0.0;
                work[idx(r, p)] = 0.0;

                for j in 0..n {
                    if j == p || j == r {
                        continue;
                    }
                    let ajp = work[idx(j.min(p), j.max(p))];
                    let ajq = work[idx(j.min(r), j.max(r))];
                    let new_jp = ajp - s * (ajq + tau * ajp);
                    let new_jq = ajq + s * (ajp - tau * ajq);
                    work[idx(j, p)] = new_jp;
                    work[idx(p, j)] = new_jp;
                    work[idx(j, r)] = new_jq;
                    work[idx(r, j)] = new_jq;
                }
                for j in 0..n {
                    let qjp = q.get(j, p);
                    let qjq = q.get(j, r);
                    q.set(j, p, qjp - s * (qjq + tau * qjp));
                    q.set(j, r, qjq + s * (qjp - tau * qjq));
                }
            }
        }
    }
    if !converged {
        let mut off = 0.0;
        for p in 0..n {
            for r in (p + 1)..n {
                off += 2.0 * work[idx(p, r)] * work[idx(p, r)];
            }
        }
        if off.sqrt() > threshold {
            return Err(Error::domain(format!(
                "Jacobi eigensolver did not converge in {MAX_SWEEPS} sweeps"
            )));
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        work[idx(i, i)]
            .partial_cmp(&work[idx(j, j)])
            .expect("eigenvalues are finite")
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&i| work[idx(i, i)]).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        for r in 0..n {
            vectors.set(r, col, q.get(r, src));
        }
    }

    Ok(EigDecomposition {
        eigenvalues,
        eigenvectors: vectors,
    })
}

/// Symmetric inverse square root of an SPD matrix: returns `B` with
/// `B·A·B ≈ I`.
///
/// Fails with [`Error::SingularMatrix`] when the smallest eigenvalue falls
/// below `rel_tol` times the largest, so callers can distinguish genuine
/// rank deficiency from round-off.
pub fn inv_sqrt_spd(a: &SymMatrix, rel_tol: f64) -> Result<SymMatrix> {
    let eig = eig_symmetric(a)?;
    let n = a.dim;
    let max = eig.eigenvalues[n - 1];
    let min = eig.eigenvalues[0];
    if max <= 0.0 || min < rel_tol * max {
        return Err(Error::SingularMatrix { value: min });
    }
    let inv_roots: Vec<f64> = eig.eigenvalues.iter().map(|l| 1.0 / l.sqrt()).collect();
    let q = &eig.eigenvectors;
    Ok(SymMatrix::from_fn(n, |i, j| {
        let mut acc = 0.0;
        for k in 0..n {
            acc += q.get(i, k) * q.get(j, k) * inv_roots[k];
        }
        acc
    }))
}

/// Cholesky factorization of an SPD matrix; returns the lower-triangular
/// factor `L` with `L·Lᵀ = A`.
pub fn cholesky(a: &SymMatrix) -> Result<Matrix> {
    a.check_finite()?;
    let n = a.dim;
    let mut l = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut acc = a.get(i, j);
            for k in 0..j {
                acc -= l.get(i, k) * l.get(j, k);
            }
            if i == j {
                if acc <= 0.0 {
                    return Err(Error::SingularMatrix { value: acc });
                }
                l.set(i, j, acc.sqrt());
            } else {
                l.set(i, j, acc / l.get(j, j));
            }
        }
    }
    Ok(l)
}

/// Largest eigenvalue in absolute value.
pub fn spectral_norm(a: &SymMatrix) -> Result<f64> {
    let eig = eig_symmetric(a)?;
    Ok(eig
        .eigenvalues
        .iter()
        .fold(0.0_f64, |acc, l| acc.max(l.abs())))
}
