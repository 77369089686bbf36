//! Limit behavior of the affinely invariant distance correlation: small
//! dependence, equal dimensions growing, and one fixed dimension.
//!
//! Run with: cargo run --example asymptotics

use dcor::gaussian::{
    aidcor_from_spectrum, aidcor_gaussian, aidvar2_gaussian, limit_fixed_q_cov_ratio,
    limit_fixed_q_ratio, limit_highdim_equal, limit_smalllambda_ratio, GaussianSpec,
};
use dcor::linalg::Matrix;
use dcor::specfun::SpectralLambda;

fn main() {
    // Small dependence: R~^2 / tr(Lambda) approaches a dimension constant.
    println!("small-dependence constants 1/(4 p q sqrt(A(p) A(q))):");
    for (p, q) in [(1usize, 1usize), (2, 2), (3, 2), (5, 1)] {
        let constant = limit_smalllambda_ratio(p, q);
        let mut cross = Matrix::zeros(p, q);
        cross.set(0, 0, 1e-3);
        let spec = GaussianSpec::with_identity_margins(p, q, cross).unwrap();
        let r = aidcor_gaussian(&spec).unwrap().r_affine;
        let empirical = r * r / 1e-6;
        println!(
            "  (p, q) = ({p}, {q}): constant {constant:.6}, ratio at tr = 1e-6: {empirical:.6}"
        );
    }

    // Equal dimensions: with Lambda = r^2 I_p the correlation tends to r.
    println!("\nequal dimensions, dependence level r = 0.6:");
    println!("  p     V~^2       R~");
    for p in [2usize, 8, 32, 128, 512] {
        let (v2, r) = limit_highdim_equal(0.6, p).unwrap();
        println!("  {p:<5} {v2:.6}  {r:.6}");
    }
    println!("  limits: V~^2 -> r^2/2 = 0.18, R~ -> r = 0.6");

    // Full dependence: the distance variance itself tends to 1/2.
    println!("\ndistance variance V~^2(X_p, X_p):");
    for p in [1usize, 4, 16, 64, 256, 1024] {
        println!("  p = {p:<5}: {:.6}", aidvar2_gaussian(p));
    }

    // Fixed q: the correlation decays like p^{-1/4}; the normalized ratio
    // sqrt(p) R~^2 / tr(Lambda) stabilizes.
    println!("\nfixed q = 1, rank-one dependence with tr(Lambda) = 0.01:");
    println!("  p        sqrt(p) R~^2 / tr");
    let lambda = SpectralLambda::new(vec![0.01]).unwrap();
    for exp in [4u32, 8, 12, 16] {
        let p = 1usize << exp;
        let result = aidcor_from_spectrum(&lambda, p, 1);
        let ratio = (p as f64).sqrt() * result.r_affine * result.r_affine / 0.01;
        println!("  2^{exp:<5}  {ratio:.6}");
    }
    println!(
        "  limit 1/(2 q sqrt(A(q))) = {:.6}; covariance-side limit {:.6}",
        limit_fixed_q_ratio(1),
        limit_fixed_q_cov_ratio(1)
    );
    println!("\nhigh-dimensional data therefore needs the sqrt(p)/tr rescaling before");
    println!("sample distance correlations carry usable signal.");
}
