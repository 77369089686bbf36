//! Sample distance covariance and correlation, standard and affinely
//! invariant.
//!
//! Run with: cargo run --example sample_statistics

use dcor::gaussian::GaussianSpec;
use dcor::linalg::Matrix;
use dcor::mc::{sample_mvn, RngSpec};
use dcor::stats::{dcor_sample, dcor_sample_affine, DataMatrix};

fn main() {
    // Draw 500 correlated Gaussian pairs (rho = 0.6).
    let spec = GaussianSpec::bivariate(0.6).unwrap();
    let (x, y) = sample_mvn(&spec, 500, RngSpec::new(7, 0)).unwrap();

    let standard = dcor_sample(&x, &y).unwrap();
    println!("standard distance correlation");
    println!("  V_n^2(x, y) = {:.6}", standard.v2);
    println!("  V_n^2(x, x) = {:.6}", standard.v2_xx);
    println!("  V_n^2(y, y) = {:.6}", standard.v2_yy);
    println!("  R_n         = {:.6}\n", standard.r);

    let affine = dcor_sample_affine(&x, &y).unwrap();
    println!("affinely invariant distance correlation");
    println!("  R~_n        = {:.6}\n", affine.r);

    // Nonlinear dependence that Pearson correlation misses: y = x^2.
    let xs: Vec<f64> = (0..400).map(|i| (i as f64 / 200.0) - 1.0).collect();
    let ys: Vec<f64> = xs.iter().map(|v| v * v).collect();
    let x2 = DataMatrix::from_1d(&xs).unwrap();
    let y2 = DataMatrix::from_1d(&ys).unwrap();
    let pearson = {
        let mx = xs.iter().sum::<f64>() / xs.len() as f64;
        let my = ys.iter().sum::<f64>() / ys.len() as f64;
        let cov: f64 = xs.iter().zip(&ys).map(|(a, b)| (a - mx) * (b - my)).sum();
        let vx: f64 = xs.iter().map(|a| (a - mx) * (a - mx)).sum();
        let vy: f64 = ys.iter().map(|b| (b - my) * (b - my)).sum();
        cov / (vx * vy).sqrt()
    };
    let dc = dcor_sample(&x2, &y2).unwrap();
    println!("y = x^2 on [-1, 1]:");
    println!("  Pearson r            = {pearson:.3} (blind to the dependence)");
    println!("  distance correlation = {:.3}\n", dc.r);

    // The affine version ignores any invertible linear distortion.
    let (x3, y3) = {
        let spec = GaussianSpec::with_identity_margins(2, 2, {
            let mut m = Matrix::zeros(2, 2);
            m.set(0, 0, 0.7);
            m.set(1, 1, 0.3);
            m
        })
        .unwrap();
        sample_mvn(&spec, 400, RngSpec::new(11, 0)).unwrap()
    };
    let skew = Matrix::from_rows(&[vec![5.0, 4.9], vec![0.0, 0.1]]).unwrap();
    let x3_skewed = x3.transform(&skew);
    println!("invariance under an ill-conditioned linear map of x:");
    println!(
        "  standard: {:.4} -> {:.4}",
        dcor_sample(&x3, &y3).unwrap().r,
        dcor_sample(&x3_skewed, &y3).unwrap().r
    );
    println!(
        "  affine:   {:.4} -> {:.4}",
        dcor_sample_affine(&x3, &y3).unwrap().r,
        dcor_sample_affine(&x3_skewed, &y3).unwrap().r
    );
}
