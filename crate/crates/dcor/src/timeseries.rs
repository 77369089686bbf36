//! Auto and cross distance correlation functions for jointly stationary
//! vector time series.
//!
//! The value at lag `k` pairs `(x_j, y_{j+k})` over the overlapping window,
//! so a peak at a negative lag means the second series runs ahead of the
//! first. Denominators (and, for the affine variant, the whitening
//! covariance) are estimated once from the full series; per-lag
//! re-estimation would make the lag-0 auto value deviate from one.

use crate::error::{Error, Result};
use crate::stats::{dcov2_sample, whiten, DataMatrix, Variant, Whitened};

/// A fixed-dimension time series of `len` observations.
#[derive(Debug, Clone)]
pub struct VectorSeries {
    data: DataMatrix,
    label: String,
}

impl VectorSeries {
    /// Builds from a flat buffer of `len` consecutive observations of `dim`
    /// values each; needs at least two observations.
    pub fn new(dim: usize, values: Vec<f64>, label: impl Into<String>) -> Result<Self> {
        let data = DataMatrix::from_samples(dim, values)?;
        if data.n() < 2 {
            return Err(Error::TooFewSamples {
                needed: 2,
                got: data.n(),
            });
        }
        Ok(VectorSeries {
            data,
            label: label.into(),
        })
    }

    pub fn from_univariate(values: &[f64], label: impl Into<String>) -> Result<Self> {
        VectorSeries::new(1, values.to_vec(), label)
    }

    pub fn dim(&self) -> usize {
        self.data.dim()
    }

    pub fn len(&self) -> usize {
        self.data.n()
    }

    pub fn is_empty(&self) -> bool {
        false // len >= 2 by construction
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn observations(&self) -> &DataMatrix {
        &self.data
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorrelogramKind {
    Auto,
    Cross,
}

/// Lag-indexed distance correlation values.
///
/// `lags` runs over `[0, L]` for auto correlograms (negative lags mirror
/// positive ones) and `[-L, L]` for cross correlograms. `degenerate` marks
/// a constant series or singular whitening covariance, in which case every
/// value is zero by convention.
#[derive(Debug, Clone)]
pub struct CorrelogramResult {
    pub lags: Vec<i64>,
    pub values: Vec<f64>,
    pub n_effective: Vec<usize>,
    pub variant: Variant,
    pub kind: CorrelogramKind,
    pub degenerate: bool,
}

/// Full-series data prepared for one side of a correlogram: whitened when
/// affine, plus the full-sample squared distance variance used as the
/// denominator.
fn prepare(series: &VectorSeries, variant: Variant) -> Result<Option<(DataMatrix, f64)>> {
    let data = match variant {
        Variant::Standard => series.observations().clone(),
        Variant::Affine => match whiten(series.observations(), None)? {
            Whitened::Data(w) => w,
            Whitened::Degenerate => return Ok(None),
        },
    };
    let v2 = dcov2_sample(&data, &data)?;
    if v2 <= 0.0 {
        return Ok(None);
    }
    Ok(Some((data, v2)))
}

fn check_lag(max_lag: usize, len: usize) -> Result<()> {
    if max_lag + 1 >= len {
        return Err(Error::LagTooLarge { lag: max_lag, len });
    }
    Ok(())
}

fn degenerate_result(
    lags: Vec<i64>,
    len: usize,
    variant: Variant,
    kind: CorrelogramKind,
) -> CorrelogramResult {
    let n_effective = lags.iter().map(|k| len - k.unsigned_abs() as usize).collect();
    CorrelogramResult {
        values: vec![0.0; lags.len()],
        lags,
        n_effective,
        variant,
        kind,
        degenerate: true,
    }
}

/// Auto distance correlation `R_X(k) = V(x_j, x_{j+k}) / V(x_j, x_j)` for
/// lags `0..=max_lag`.
pub fn auto_dcor(x: &VectorSeries, max_lag: usize, variant: Variant) -> Result<CorrelogramResult> {
    let len = x.len();
    check_lag(max_lag, len)?;
    let lags: Vec<i64> = (0..=max_lag as i64).collect();
    let Some((data, denom)) = prepare(x, variant)? else {
        return Ok(degenerate_result(lags, len, variant, CorrelogramKind::Auto));
    };
    let mut values = Vec::with_capacity(lags.len());
    let mut n_effective = Vec::with_capacity(lags.len());
    for k in 0..=max_lag {
        let n_pairs = len - k;
        let head = data.window(0, n_pairs);
        let tail = data.window(k, n_pairs);
        let v2 = dcov2_sample(&head, &tail)?;
        values.push((v2 / denom).sqrt().clamp(0.0, 1.0));
        n_effective.push(n_pairs);
    }
    Ok(CorrelogramResult {
        lags,
        values,
        n_effective,
        variant,
        kind: CorrelogramKind::Auto,
        degenerate: false,
    })
}

/// Cross distance correlation
/// `R_{X,Y}(k) = V(x_j, y_{j+k}) / sqrt(V(x_j, x_j) V(y_j, y_j))` for lags
/// `-max_lag..=max_lag`; asymmetric in `k` in general.
pub fn cross_dcor(
    x: &VectorSeries,
    y: &VectorSeries,
    max_lag: usize,
    variant: Variant,
) -> Result<CorrelogramResult> {
    let len = x.len();
    if y.len() != len {
        return Err(Error::LengthMismatch {
            left: len,
            right: y.len(),
        });
    }
    check_lag(max_lag, len)?;
    let lags: Vec<i64> = (-(max_lag as i64)..=max_lag as i64).collect();
    let (Some((xd, vx)), Some((yd, vy))) = (prepare(x, variant)?, prepare(y, variant)?) else {
        return Ok(degenerate_result(lags, len, variant, CorrelogramKind::Cross));
    };
    let denom = (vx * vy).sqrt();
    let mut values = Vec::with_capacity(lags.len());
    let mut n_effective = Vec::with_capacity(lags.len());
    for &k in &lags {
        let shift = k.unsigned_abs() as usize;
        let n_pairs = len - shift;
        let (xs, ys) = if k >= 0 {
            (xd.window(0, n_pairs), yd.window(shift, n_pairs))
        } else {
            (xd.window(shift, n_pairs), yd.window(0, n_pairs))
        };
        let v2 = dcov2_sample(&xs, &ys)?;
        values.push((v2 / denom).sqrt().clamp(0.0, 1.0));
        n_effective.push(n_pairs);
    }
    Ok(CorrelogramResult {
        lags,
        values,
        n_effective,
        variant,
        kind: CorrelogramKind::Cross,
        degenerate: false,
    })
}
