//! Exact population distance-dependence values for multivariate normal
//! laws.
//!
//! The affinely invariant squared distance covariance of a jointly Gaussian
//! pair is a one-part zonal polynomial series in the eigenvalues of the
//! squared cross-dependence matrix
//! `Λ = Σ_Y^{-1/2} Σ_YX Σ_X^{-1} Σ_XY Σ_Y^{-1/2}`:
//!
//! ```text
//! Ṽ²(X,Y) = 4π (c_{p-1}/c_p)(c_{q-1}/c_q)
//!           Σ_{k≥1} (2^{2k}-2)/(k! 2^{2k})
//!                   (1/2)_k (-1/2)_k² / ((p/2)_k (q/2)_k) · C₍ₖ₎(Λ).
//! ```
//!
//! Two algebraically identical evaluation routes are provided (the combined
//! series and a pair of matrix-argument ₃F₂ sums) so each can serve as a
//! check on the other, together with the closed-form distance variance, the
//! scalar-covariance standard distance covariance, and the small-dependence
//! and high-dimension limit constants.

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, SymMatrix};
use crate::specfun::{
    a_constant, c_ratio, gauss_2f1_neg_half, sum_onepart_series, SeriesEval, SpectralLambda,
};
use serde::Serialize;
use std::f64::consts::PI;

/// Block covariance specification of a jointly Gaussian pair
/// `(X, Y) ~ N_{p+q}(μ, Σ)` with `Σ = [[Σ_X, Σ_XY], [Σ_YX, Σ_Y]]`.
#[derive(Debug, Clone)]
pub struct GaussianSpec {
    sigma_x: SymMatrix,
    sigma_y: SymMatrix,
    sigma_xy: Matrix,
    mean: Vec<f64>,
}

impl GaussianSpec {
    /// Validates block dimensions; positive definiteness is checked by the
    /// operations that require it.
    pub fn new(
        sigma_x: SymMatrix,
        sigma_y: SymMatrix,
        sigma_xy: Matrix,
        mean: Option<Vec<f64>>,
    ) -> Result<Self> {
        let p = sigma_x.dim();
        let q = sigma_y.dim();
        if sigma_xy.rows() != p || sigma_xy.cols() != q {
            return Err(Error::domain(format!(
                "cross block must be {p}x{q}, got {}x{}",
                sigma_xy.rows(),
                sigma_xy.cols()
            )));
        }
        let mean = mean.unwrap_or_else(|| vec![0.0; p + q]);
        if mean.len() != p + q {
            return Err(Error::domain(format!(
                "mean must have length {}, got {}",
                p + q,
                mean.len()
            )));
        }
        for (pos, v) in sigma_xy.data().iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite {
                    row: pos / q,
                    col: pos % q,
                });
            }
        }
        if mean.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("mean contains a non-finite entry"));
        }
        Ok(GaussianSpec {
            sigma_x,
            sigma_y,
            sigma_xy,
            mean,
        })
    }

    /// Identity marginals with the given cross block, so the cross block is
    /// the whitened dependence matrix itself.
    pub fn with_identity_margins(p: usize, q: usize, sigma_xy: Matrix) -> Result<Self> {
        GaussianSpec::new(
            SymMatrix::identity(p),
            SymMatrix::identity(q),
            sigma_xy,
            None,
        )
    }

    /// Bivariate pair with unit variances and Pearson correlation `rho`.
    pub fn bivariate(rho: f64) -> Result<Self> {
        let mut cross = Matrix::zeros(1, 1);
        cross.set(0, 0, rho);
        GaussianSpec::with_identity_margins(1, 1, cross)
    }

    pub fn p(&self) -> usize {
        self.sigma_x.dim()
    }

    pub fn q(&self) -> usize {
        self.sigma_y.dim()
    }

    pub fn sigma_x(&self) -> &SymMatrix {
        &self.sigma_x
    }

    pub fn sigma_y(&self) -> &SymMatrix {
        &self.sigma_y
    }

    pub fn sigma_xy(&self) -> &Matrix {
        &self.sigma_xy
    }

    pub fn mean(&self) -> &[f64] {
        &self.mean
    }

    /// The same distribution with the roles of X and Y interchanged.
    pub fn transposed(&self) -> GaussianSpec {
        let p = self.p();
        let mut mean = self.mean[p..].to_vec();
        mean.extend_from_slice(&self.mean[..p]);
        GaussianSpec {
            sigma_x: self.sigma_y.clone(),
            sigma_y: self.sigma_x.clone(),
            sigma_xy: self.sigma_xy.transpose(),
            mean,
        }
    }

    /// Assembles the full `(p+q) × (p+q)` covariance.
    pub fn full_sigma(&self) -> SymMatrix {
        let (p, q) = (self.p(), self.q());
        SymMatrix::from_fn(p + q, |i, j| {
            if i < p && j < p {
                self.sigma_x.get(i, j)
            } else if i >= p && j >= p {
                self.sigma_y.get(i - p, j - p)
            } else {
                // i <= j here, so i indexes the X block and j the Y block
                self.sigma_xy.get(i, j - p)
            }
        })
    }
}

/// Exact population result with series truncation bookkeeping.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PopulationResult {
    pub v2_xy: f64,
    pub v2_xx: f64,
    pub v2_yy: f64,
    pub r_affine: f64,
    pub truncation_k: usize,
    pub tail_estimate: f64,
}

/// Eigenvalues of the squared cross-dependence matrix
/// `Λ = Σ_Y^{-1/2} Σ_YX Σ_X^{-1} Σ_XY Σ_Y^{-1/2}`, all in `[0, 1)` for a
/// positive definite joint covariance.
pub fn lambda_from_spec(spec: &GaussianSpec) -> Result<SpectralLambda> {
    let bx = linalg::inv_sqrt_spd(&spec.sigma_x, linalg::SPD_REL_TOL)
        .map_err(not_positive_definite)?;
    let by = linalg::inv_sqrt_spd(&spec.sigma_y, linalg::SPD_REL_TOL)
        .map_err(not_positive_definite)?;
    // W = Σ_Y^{-1/2} Σ_YX Σ_X^{-1/2}; Λ = W Wᵀ is symmetric PSD by
    // construction.
    let w = by
        .to_matrix()
        .matmul(&spec.sigma_xy.transpose())
        .matmul(&bx.to_matrix());
    let eig = linalg::eig_symmetric(&w.gram())?;
    let max = *eig
        .eigenvalues
        .last()
        .expect("spectrum of a q >= 1 matrix is nonempty");
    if max >= 1.0 - 1e-12 {
        return Err(Error::NotPositiveDefinite { eigenvalue: max });
    }
    let min = eig.eigenvalues[0];
    SpectralLambda::new(eig.eigenvalues)
        .map_err(|_| Error::NotPositiveDefinite { eigenvalue: min })
}

fn not_positive_definite(err: Error) -> Error {
    match err {
        Error::SingularMatrix { value } => Error::NotPositiveDefinite { eigenvalue: value },
        other => other,
    }
}

/// Ratio `u_{k+1}/u_k` for `u_k = (1/2)_k (-1/2)_k² / (k! (p/2)_k (q/2)_k)`.
fn hyp_weight_ratio(p: f64, q: f64) -> impl Fn(usize) -> f64 {
    move |k: usize| {
        let kf = k as f64;
        (0.5 + kf) * (kf - 0.5) * (kf - 0.5)
            / ((kf + 1.0) * (p / 2.0 + kf) * (q / 2.0 + kf))
    }
}

/// Combined series of the affinely invariant squared distance covariance,
/// without the `4π c_{p-1}c_{q-1}/(c_p c_q)` prefactor.
fn combined_series(lambda: &SpectralLambda, p: usize, q: usize) -> SeriesEval {
    let (pf, qf) = (p as f64, q as f64);
    let u_ratio = hyp_weight_ratio(pf, qf);
    let first = 0.25 / (pf * qf); // u_1 (1 - 2/4) = 1/(2pq) · 1/2
    let ratio = move |k: usize| {
        let m_next = 1.0 - 2.0 * 0.25_f64.powi(k as i32 + 1);
        let m_cur = 1.0 - 2.0 * 0.25_f64.powi(k as i32);
        u_ratio(k) * m_next / m_cur
    };
    sum_onepart_series(lambda, first, ratio)
}

/// One-part matrix-argument series
/// `₃F₂(1/2, -1/2, -1/2; p/2, q/2; Λ) = 1 + Σ_{k≥1} u_k C₍ₖ₎(Λ)`.
fn matrix_3f2_onepart(lambda: &SpectralLambda, p: usize, q: usize) -> f64 {
    let (pf, qf) = (p as f64, q as f64);
    let first = 0.5 / (pf * qf); // u_1
    1.0 + sum_onepart_series(lambda, first, hyp_weight_ratio(pf, qf)).value
}

fn prefactor(p: usize, q: usize) -> f64 {
    4.0 * PI * c_ratio(p as u32) * c_ratio(q as u32)
}

fn aidcov2_from_lambda(lambda: &SpectralLambda, p: usize, q: usize) -> SeriesEval {
    let series = combined_series(lambda, p, q);
    let pref = prefactor(p, q);
    SeriesEval {
        value: pref * series.value,
        truncation_k: series.truncation_k,
        tail_estimate: pref * series.tail_estimate,
    }
}

/// Affinely invariant squared distance covariance from an explicit
/// dependence spectrum; the spectrum and the two dimensions fully determine
/// the value.
pub fn aidcov2_from_spectrum(lambda: &SpectralLambda, p: usize, q: usize) -> f64 {
    assert!(p >= 1 && q >= 1);
    aidcov2_from_lambda(lambda, p, q).value
}

/// Full population result from an explicit dependence spectrum.
pub fn aidcor_from_spectrum(lambda: &SpectralLambda, p: usize, q: usize) -> PopulationResult {
    assert!(p >= 1 && q >= 1);
    let series = aidcov2_from_lambda(lambda, p, q);
    let v2_xx = aidvar2_gaussian(p);
    let v2_yy = aidvar2_gaussian(q);
    let r = (series.value / (v2_xx * v2_yy).sqrt()).sqrt().clamp(0.0, 1.0);
    PopulationResult {
        v2_xy: series.value,
        v2_xx,
        v2_yy,
        r_affine: r,
        truncation_k: series.truncation_k,
        tail_estimate: series.tail_estimate,
    }
}

/// Affinely invariant squared distance covariance `Ṽ²(X, Y)` via the
/// combined one-part series.
pub fn aidcov2_gaussian(spec: &GaussianSpec) -> Result<f64> {
    let lambda = lambda_from_spec(spec)?;
    Ok(aidcov2_from_lambda(&lambda, spec.p(), spec.q()).value)
}

/// The same quantity evaluated through two matrix-argument ₃F₂ sums,
/// `4π (c_{p-1}/c_p)(c_{q-1}/c_q) (₃F₂(Λ) - 2 ₃F₂(Λ/4) + 1)`;
/// algebraically identical to [`aidcov2_gaussian`] but an independent code
/// path.
pub fn aidcov2_gaussian_hyp(spec: &GaussianSpec) -> Result<f64> {
    let lambda = lambda_from_spec(spec)?;
    let (p, q) = (spec.p(), spec.q());
    let f_full = matrix_3f2_onepart(&lambda, p, q);
    let f_quarter = matrix_3f2_onepart(&lambda.scaled(0.25), p, q);
    Ok(prefactor(p, q) * (f_full - 2.0 * f_quarter + 1.0))
}

/// Affinely invariant squared distance variance
/// `Ṽ²(X, X) = 4π (c_{p-1}/c_p)² A(p)`; independent of the covariance of X.
pub fn aidvar2_gaussian(p: usize) -> f64 {
    assert!(p >= 1, "dimension must be at least 1");
    let cr = c_ratio(p as u32);
    4.0 * PI * cr * cr * a_constant(p as u32)
}

/// Affinely invariant distance correlation
/// `R̃ = Ṽ(X,Y) / sqrt(Ṽ(X,X) Ṽ(Y,Y))` with truncation bookkeeping.
pub fn aidcor_gaussian(spec: &GaussianSpec) -> Result<PopulationResult> {
    let lambda = lambda_from_spec(spec)?;
    Ok(aidcor_from_spectrum(&lambda, spec.p(), spec.q()))
}

fn scalar_variance(sigma: &SymMatrix) -> Result<f64> {
    let d0 = sigma.get(0, 0);
    for i in 0..sigma.dim() {
        for j in 0..sigma.dim() {
            let expect = if i == j { d0 } else { 0.0 };
            if (sigma.get(i, j) - expect).abs() > 1e-12 * d0.abs() {
                return Err(Error::NotScalarCovariance);
            }
        }
    }
    if d0 <= 0.0 {
        return Err(Error::NotPositiveDefinite { eigenvalue: d0 });
    }
    Ok(d0)
}

/// Standard (non-affine) squared distance covariance for scalar marginal
/// covariances `Σ_X = σx² I`, `Σ_Y = σy² I`:
/// `V² = 4π σxσy (c_{p-1}/c_p)(c_{q-1}/c_q)
///       [(₃F₂(Λ/σx²σy²) - 1) - 2 (₃F₂(Λ/4σx²σy²) - 1)]`
/// with `Λ = Σ_YX Σ_XY`.
pub fn dcov2_gaussian_scalar(spec: &GaussianSpec) -> Result<f64> {
    let sx2 = scalar_variance(&spec.sigma_x)?;
    let sy2 = scalar_variance(&spec.sigma_y)?;
    let (p, q) = (spec.p(), spec.q());
    // Λ = Σ_YX Σ_XY, scaled into the whitened spectrum.
    let gram = spec.sigma_xy.transpose().gram();
    let eig = linalg::eig_symmetric(&gram)?;
    let scale = 1.0 / (sx2 * sy2);
    let eigs: Vec<f64> = eig.eigenvalues.iter().map(|l| l * scale).collect();
    let max = eigs.iter().fold(0.0_f64, |a, &b| a.max(b));
    let lambda = SpectralLambda::new(eigs)
        .map_err(|_| Error::NotPositiveDefinite { eigenvalue: max })?;
    let f_full = matrix_3f2_onepart(&lambda, p, q);
    let f_quarter = matrix_3f2_onepart(&lambda.scaled(0.25), p, q);
    Ok((sx2 * sy2).sqrt() * prefactor(p, q) * (f_full - 2.0 * f_quarter + 1.0))
}

/// Small-dependence limit constant:
/// `R̃²(X,Y) / tr(Λ) → 1 / (4 p q sqrt(A(p) A(q)))` as `tr(Λ) → 0`.
pub fn limit_smalllambda_ratio(p: usize, q: usize) -> f64 {
    assert!(p >= 1 && q >= 1);
    1.0 / (4.0 * (p * q) as f64 * (a_constant(p as u32) * a_constant(q as u32)).sqrt())
}

/// Equal-dimension evaluation at `Λ_p = r² I_p`: returns `(Ṽ², R̃)` via the
/// exact reduction to `₂F₁(-1/2, -1/2; p/2; ·)`, valid up to and including
/// `r = 1`. As `p → ∞` these converge to `(r²/2, r)`.
pub fn limit_highdim_equal(r: f64, p: usize) -> Result<(f64, f64)> {
    assert!(p >= 1);
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::domain(format!("r = {r} outside [0, 1]")));
    }
    let half = p as f64 / 2.0;
    let z = r * r;
    let f_full = gauss_2f1_neg_half(half, z)?;
    let f_quarter = gauss_2f1_neg_half(half, z / 4.0)?;
    let cr = c_ratio(p as u32);
    let v2 = 4.0 * PI * cr * cr * ((f_full - 1.0) - 2.0 * (f_quarter - 1.0));
    let r_tilde = (v2.max(0.0) / aidvar2_gaussian(p)).sqrt().clamp(0.0, 1.0);
    Ok((v2, r_tilde))
}

/// Fixed-`q` limit constant:
/// `sqrt(p) R̃²(X_p, Y) / tr(Λ_p) → 1 / (2 q sqrt(A(q)))` as `p → ∞`.
pub fn limit_fixed_q_ratio(q: usize) -> f64 {
    assert!(q >= 1);
    1.0 / (2.0 * q as f64 * a_constant(q as u32).sqrt())
}

/// Companion covariance constant for the fixed-`q` limit:
/// `sqrt(p) Ṽ²(X_p, Y) / tr(Λ_p) → sqrt(π/2) c_{q-1} / (q c_q)`.
pub fn limit_fixed_q_cov_ratio(q: usize) -> f64 {
    assert!(q >= 1);
    (PI / 2.0).sqrt() * c_ratio(q as u32) / q as f64
}

/// Converts a Pearson covariance specification into the affinely invariant
/// distance correlation under Gaussianity; an alias of
/// [`aidcor_gaussian`] exposed separately because reference curves are
/// produced through it.
pub fn pearson_to_dcor_gaussian(spec: &GaussianSpec) -> Result<f64> {
    Ok(aidcor_gaussian(spec)?.r_affine)
}

/// One row of the single-parameter dependence curves at `p = q = 2`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CurveRow {
    pub r: f64,
    /// Cross block `diag(0, r)`.
    pub diag_0r: f64,
    /// Cross block `diag(r, r)`.
    pub diag_rr: f64,
    /// Cross block with every entry `r`; only defined for `r < 1/2`.
    pub all_r: Option<f64>,
}

/// One grid point of a two-parameter dependence surface.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SurfacePoint {
    pub r: f64,
    pub s: f64,
    pub value: f64,
}

fn check_step(step: f64) -> Result<()> {
    if !(step > 0.0 && step < 1.0) {
        return Err(Error::domain(format!("grid step {step} outside (0, 1)")));
    }
    Ok(())
}

fn dcor_identity_margins(p: usize, q: usize, cross: Matrix) -> Result<f64> {
    pearson_to_dcor_gaussian(&GaussianSpec::with_identity_margins(p, q, cross)?)
}

/// Dependence curves for `p = q = 2` over `r ∈ {0, step, 2·step, …} ∩ [0, 1)`.
pub fn grid_curves(step: f64) -> Result<Vec<CurveRow>> {
    check_step(step)?;
    let mut rows = Vec::new();
    let mut i = 0usize;
    loop {
        let r = i as f64 * step;
        if r >= 1.0 - 1e-9 {
            break;
        }
        let diag_0r = {
            let mut m = Matrix::zeros(2, 2);
            m.set(1, 1, r);
            dcor_identity_margins(2, 2, m)?
        };
        let diag_rr = {
            let mut m = Matrix::zeros(2, 2);
            m.set(0, 0, r);
            m.set(1, 1, r);
            dcor_identity_margins(2, 2, m)?
        };
        let all_r = if r < 0.5 - 1e-12 {
            let mut m = Matrix::zeros(2, 2);
            for a in 0..2 {
                for b in 0..2 {
                    m.set(a, b, r);
                }
            }
            Some(dcor_identity_margins(2, 2, m)?)
        } else {
            None
        };
        rows.push(CurveRow {
            r,
            diag_0r,
            diag_rr,
            all_r,
        });
        i += 1;
    }
    Ok(rows)
}

/// Dependence surface for `p = q = 2` with cross block `diag(r, s)`.
pub fn grid_surface(step: f64) -> Result<Vec<SurfacePoint>> {
    check_step(step)?;
    let mut points = Vec::new();
    let mut i = 0usize;
    while (i as f64) * step < 1.0 - 1e-9 {
        let r = i as f64 * step;
        let mut j = 0usize;
        while (j as f64) * step < 1.0 - 1e-9 {
            let s = j as f64 * step;
            let mut m = Matrix::zeros(2, 2);
            m.set(0, 0, r);
            m.set(1, 1, s);
            points.push(SurfacePoint {
                r,
                s,
                value: dcor_identity_margins(2, 2, m)?,
            });
            j += 1;
        }
        i += 1;
    }
    Ok(points)
}

/// Dependence surface for `p = 2`, `q = 1` with cross block `(r, s)ᵀ` over
/// the open quarter disc `r² + s² < 1`.
pub fn grid_halfdisc(step: f64) -> Result<Vec<SurfacePoint>> {
    check_step(step)?;
    let mut points = Vec::new();
    let mut i = 0usize;
    while (i as f64) * step < 1.0 - 1e-9 {
        let r = i as f64 * step;
        let mut j = 0usize;
        loop {
            let s = j as f64 * step;
            if r * r + s * s >= 1.0 - 1e-9 {
                break;
            }
            let mut m = Matrix::zeros(2, 1);
            m.set(0, 0, r);
            m.set(1, 0, s);
            points.push(SurfacePoint {
                r,
                s,
                value: dcor_identity_margins(2, 1, m)?,
            });
            j += 1;
        }
        i += 1;
    }
    Ok(points)
}
