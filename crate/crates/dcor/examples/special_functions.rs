//! The special-function layer: half-ball constants, the Gauss
//! hypergeometric family, and one-part zonal polynomials.
//!
//! Run with: cargo run --example special_functions

use dcor::specfun::{
    a_constant, c_ratio, const_c, gauss_2f1_neg_half, rising_factorial, zonal_onepart,
    SpectralLambda,
};
use std::f64::consts::PI;

fn main() {
    println!("c_p = pi^((p+1)/2) / Gamma((p+1)/2):");
    for p in 0..=4 {
        println!("  c_{p} = {:.12}", const_c(p));
    }
    println!("  (c_0 = 1, c_1 = pi = {:.12}, c_2 = 2 pi)\n", PI);

    println!("the ratio c_(p-1)/(sqrt(p) c_p) tends to 1/sqrt(2 pi) = {:.8}:", 1.0 / (2.0 * PI).sqrt());
    for p in [1u32, 10, 100, 10_000] {
        println!("  p = {p:<6}: {:.8}", c_ratio(p) / (p as f64).sqrt());
    }

    println!("\n2F1(-1/2, -1/2; c; z) closed forms:");
    let rho: f64 = 0.5;
    let series = gauss_2f1_neg_half(0.5, rho * rho).unwrap();
    let elementary = rho * rho.asin() + (1.0 - rho * rho).sqrt();
    println!("  c = 1/2, z = 0.25: series {series:.12} vs rho*asin(rho)+sqrt(1-rho^2) {elementary:.12}");
    println!(
        "  c = 1/2, z = 1:    {:.12} (Gauss theorem gives pi/2 = {:.12})",
        gauss_2f1_neg_half(0.5, 1.0).unwrap(),
        PI / 2.0
    );

    println!("\nA(p) and its 1/(4p) decay:");
    for p in [1u32, 2, 8, 64, 1024] {
        println!("  A({p:<4}) = {:.8}   4p A(p) = {:.5}", a_constant(p), 4.0 * p as f64 * a_constant(p));
    }

    // One-part zonal polynomials from a dependence spectrum.
    let lambda = SpectralLambda::new(vec![0.5, 0.2]).unwrap();
    let zonal = zonal_onepart(&lambda, 6);
    println!("\none-part zonal polynomials C_(k) of spectrum {{0.5, 0.2}}:");
    for k in 1..=6 {
        println!("  C_({k}) = {:.10}", zonal.c(k));
    }
    println!("  C_(1) equals the trace {:.10}", lambda.trace());

    // Generating function: sum_k (1/2)_k C_(k) x^k / k! = prod (1-l x)^(-1/2)
    let x: f64 = 0.9;
    let mut sum = 1.0;
    let mut k_fact = 1.0;
    let zonal_long = zonal_onepart(&lambda, 60);
    for k in 1..=60 {
        k_fact *= k as f64;
        sum += rising_factorial(0.5, k) * zonal_long.c(k as usize) * x.powi(k as i32) / k_fact;
    }
    let product: f64 = lambda
        .eigenvalues()
        .iter()
        .map(|l| (1.0 - l * x).powf(-0.5))
        .product();
    println!("\ngenerating function check at x = {x}:");
    println!("  partial sum {sum:.12} vs product {product:.12}");
}
