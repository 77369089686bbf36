//! Sample distance covariance and distance correlation, standard and
//! affinely invariant.
//!
//! The squared sample distance covariance is the average entry of the Schur
//! product of the two double-centered Euclidean distance matrices; the
//! affinely invariant version applies the same statistic to data whitened by
//! the symmetric inverse square root of the sample covariance. All kernels
//! are the plain O(n²) forms.

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, SymMatrix};
use serde::Serialize;

/// Estimator variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Standard,
    Affine,
}

/// An n-sample collection of d-dimensional observations, sample-contiguous.
#[derive(Debug, Clone, PartialEq)]
pub struct DataMatrix {
    dim: usize,
    n: usize,
    values: Vec<f64>,
}

impl DataMatrix {
    /// Builds from a flat buffer holding `n` consecutive samples of `dim`
    /// values each. Rejects non-finite entries.
    pub fn from_samples(dim: usize, values: Vec<f64>) -> Result<Self> {
        assert!(dim >= 1, "samples need at least one coordinate");
        assert!(
            values.len().is_multiple_of(dim),
            "buffer length must be a multiple of dim"
        );
        let n = values.len() / dim;
        for (pos, v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite {
                    row: pos / dim,
                    col: pos % dim,
                });
            }
        }
        Ok(DataMatrix { dim, n, values })
    }

    /// Builds from per-sample rows.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.first().map_or(1, |r| r.len().max(1));
        let mut values = Vec::with_capacity(rows.len() * dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::RaggedRow {
                    row: i,
                    expected: dim,
                    found: row.len(),
                });
            }
            values.extend_from_slice(row);
        }
        DataMatrix::from_samples(dim, values)
    }

    /// One-dimensional convenience constructor.
    pub fn from_1d(values: &[f64]) -> Result<Self> {
        DataMatrix::from_samples(1, values.to_vec())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn sample(&self, i: usize) -> &[f64] {
        &self.values[i * self.dim..(i + 1) * self.dim]
    }

    /// Contiguous sub-range of samples `[start, start + count)`.
    pub fn window(&self, start: usize, count: usize) -> DataMatrix {
        assert!(start + count <= self.n);
        DataMatrix {
            dim: self.dim,
            n: count,
            values: self.values[start * self.dim..(start + count) * self.dim].to_vec(),
        }
    }

    /// Applies a `d' × d` matrix to every sample.
    pub fn transform(&self, m: &Matrix) -> DataMatrix {
        assert_eq!(m.cols(), self.dim, "transform dimension mismatch");
        let out_dim = m.rows();
        let mut values = Vec::with_capacity(self.n * out_dim);
        for i in 0..self.n {
            let s = self.sample(i);
            for r in 0..out_dim {
                let mut acc = 0.0;
                for c in 0..self.dim {
                    acc += m.get(r, c) * s[c];
                }
                values.push(acc);
            }
        }
        DataMatrix {
            dim: out_dim,
            n: self.n,
            values,
        }
    }

    /// Sample covariance with denominator `n - 1`.
    pub fn sample_covariance(&self) -> Result<SymMatrix> {
        if self.n < 2 {
            return Err(Error::TooFewSamples {
                needed: 2,
                got: self.n,
            });
        }
        let d = self.dim;
        let mut mean = vec![0.0; d];
        for i in 0..self.n {
            for (m, v) in mean.iter_mut().zip(self.sample(i)) {
                *m += v;
            }
        }
        for m in mean.iter_mut() {
            *m /= self.n as f64;
        }
        let denom = (self.n - 1) as f64;
        Ok(SymMatrix::from_fn(d, |a, b| {
            let mut acc = 0.0;
            for i in 0..self.n {
                let s = self.sample(i);
                acc += (s[a] - mean[a]) * (s[b] - mean[b]);
            }
            acc / denom
        }))
    }
}

/// Double-centered distance matrix: zero row and column sums.
#[derive(Debug, Clone)]
pub struct CenteredDistanceMatrix {
    n: usize,
    entries: Matrix,
}

impl CenteredDistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, k: usize, l: usize) -> f64 {
        self.entries.get(k, l)
    }

    pub fn row_sum(&self, k: usize) -> f64 {
        (0..self.n).map(|l| self.get(k, l)).sum()
    }

    pub fn col_sum(&self, l: usize) -> f64 {
        (0..self.n).map(|k| self.get(k, l)).sum()
    }
}

/// Result of a sample distance correlation computation.
///
/// `degenerate` is set when the correlation was defined as zero by
/// convention (a constant sample or, for the affine variant, a singular
/// sample covariance).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DcovResult {
    pub v2: f64,
    pub v2_xx: f64,
    pub v2_yy: f64,
    pub r: f64,
    pub variant: Variant,
    pub degenerate: bool,
}

/// Pairwise Euclidean distance matrix; zero diagonal, symmetric.
pub fn pairwise_distances(x: &DataMatrix) -> Matrix {
    let n = x.n();
    let mut d = Matrix::zeros(n, n);
    for k in 0..n {
        let sk = x.sample(k);
        for l in (k + 1)..n {
            let sl = x.sample(l);
            let mut acc = 0.0;
            for (a, b) in sk.iter().zip(sl) {
                let diff = a - b;
                acc += diff * diff;
            }
            let dist = acc.sqrt();
            d.set(k, l, dist);
            d.set(l, k, dist);
        }
    }
    d
}

/// Row means and grand mean of a symmetric distance matrix.
fn distance_means(d: &Matrix) -> (Vec<f64>, f64) {
    let n = d.rows();
    let mut row_means = vec![0.0; n];
    let mut grand = 0.0;
    for k in 0..n {
        let mut acc = 0.0;
        for l in 0..n {
            acc += d.get(k, l);
        }
        row_means[k] = acc / n as f64;
        grand += acc;
    }
    (row_means, grand / (n * n) as f64)
}

/// Double centering `A_kl = a_kl - ā_k· - ā_·l + ā_··`.
pub fn double_center(d: &Matrix) -> Result<CenteredDistanceMatrix> {
    if d.rows() != d.cols() {
        return Err(Error::domain("distance matrix must be square"));
    }
    let n = d.rows();
    let (row_means, grand) = distance_means(d);
    let mut entries = Matrix::zeros(n, n);
    for k in 0..n {
        for l in 0..n {
            entries.set(k, l, d.get(k, l) - row_means[k] - row_means[l] + grand);
        }
    }
    Ok(CenteredDistanceMatrix { n, entries })
}

/// Average entry of the Schur product of the two centered matrices, without
/// materializing them.
fn centered_product_mean(
    da: &Matrix,
    (ra, ga): (&[f64], f64),
    db: &Matrix,
    (rb, gb): (&[f64], f64),
) -> f64 {
    let n = da.rows();
    let mut acc = 0.0;
    for k in 0..n {
        for l in 0..n {
            let a = da.get(k, l) - ra[k] - ra[l] + ga;
            let b = db.get(k, l) - rb[k] - rb[l] + gb;
            acc += a * b;
        }
    }
    acc / (n * n) as f64
}

fn clamp_v2(v: f64) -> f64 {
    if v < 0.0 {
        // nonnegative up to floating point; anything below is round-off
        0.0
    } else {
        v
    }
}

/// Squared sample distance covariance `V_n²(x, y)`, the V-statistic with
/// `1/n²` normalization.
pub fn dcov2_sample(x: &DataMatrix, y: &DataMatrix) -> Result<f64> {
    check_paired(x, y, 1)?;
    let da = pairwise_distances(x);
    let db = pairwise_distances(y);
    let sa = distance_means(&da);
    let sb = distance_means(&db);
    Ok(clamp_v2(centered_product_mean(
        &da,
        (&sa.0, sa.1),
        &db,
        (&sb.0, sb.1),
    )))
}

fn check_paired(x: &DataMatrix, y: &DataMatrix, needed: usize) -> Result<()> {
    if x.n() != y.n() {
        return Err(Error::LengthMismatch {
            left: x.n(),
            right: y.n(),
        });
    }
    if x.n() < needed {
        return Err(Error::TooFewSamples {
            needed,
            got: x.n(),
        });
    }
    Ok(())
}

fn dcor_from_distances(da: &Matrix, db: &Matrix, variant: Variant) -> DcovResult {
    let sa = distance_means(da);
    let sb = distance_means(db);
    let v2 = clamp_v2(centered_product_mean(da, (&sa.0, sa.1), db, (&sb.0, sb.1)));
    let v2_xx = clamp_v2(centered_product_mean(da, (&sa.0, sa.1), da, (&sa.0, sa.1)));
    let v2_yy = clamp_v2(centered_product_mean(db, (&sb.0, sb.1), db, (&sb.0, sb.1)));
    if v2_xx > 0.0 && v2_yy > 0.0 {
        let r = (v2 / (v2_xx * v2_yy).sqrt()).sqrt().clamp(0.0, 1.0);
        DcovResult {
            v2,
            v2_xx,
            v2_yy,
            r,
            variant,
            degenerate: false,
        }
    } else {
        DcovResult {
            v2,
            v2_xx,
            v2_yy,
            r: 0.0,
            variant,
            degenerate: true,
        }
    }
}

/// Sample distance correlation
/// `R_n = V_n(x, y) / sqrt(V_n(x, x) V_n(y, y))`, defined as zero when
/// either distance variance vanishes.
pub fn dcor_sample(x: &DataMatrix, y: &DataMatrix) -> Result<DcovResult> {
    check_paired(x, y, 1)?;
    let da = pairwise_distances(x);
    let db = pairwise_distances(y);
    Ok(dcor_from_distances(&da, &db, Variant::Standard))
}

/// Outcome of covariance whitening.
#[derive(Debug, Clone)]
pub enum Whitened {
    Data(DataMatrix),
    /// The (sample or supplied) covariance is singular.
    Degenerate,
}

/// Whitens samples with `S^{-1/2}` where `S` is the sample covariance
/// (denominator `n - 1`) or the supplied override.
pub fn whiten(x: &DataMatrix, cov_override: Option<&SymMatrix>) -> Result<Whitened> {
    let cov = match cov_override {
        Some(c) => {
            assert_eq!(c.dim(), x.dim(), "override covariance dimension mismatch");
            c.clone()
        }
        None => x.sample_covariance()?,
    };
    match linalg::inv_sqrt_spd(&cov, linalg::SPD_REL_TOL) {
        Ok(b) => Ok(Whitened::Data(x.transform(&b.to_matrix()))),
        Err(Error::SingularMatrix { .. }) => Ok(Whitened::Degenerate),
        Err(e) => Err(e),
    }
}

/// Sample affinely invariant distance correlation: whitens both inputs and
/// applies [`dcor_sample`]; all outputs are zero with the degenerate flag
/// when either sample covariance is singular.
pub fn dcor_sample_affine(x: &DataMatrix, y: &DataMatrix) -> Result<DcovResult> {
    check_paired(x, y, 2)?;
    let wx = whiten(x, None)?;
    let wy = whiten(y, None)?;
    match (wx, wy) {
        (Whitened::Data(xw), Whitened::Data(yw)) => {
            let da = pairwise_distances(&xw);
            let db = pairwise_distances(&yw);
            Ok(dcor_from_distances(&da, &db, Variant::Affine))
        }
        _ => Ok(DcovResult {
            v2: 0.0,
            v2_xx: 0.0,
            v2_yy: 0.0,
            r: 0.0,
            variant: Variant::Affine,
            degenerate: true,
        }),
    }
}
