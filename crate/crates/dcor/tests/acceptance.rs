//! Acceptance suite: one test per numbered criterion, each printing a pass
//! line with the measured quantities (`--nocapture` shows them).

use dcor::gaussian::{
    aidcor_from_spectrum, aidcor_gaussian, aidcov2_gaussian, aidcov2_gaussian_hyp,
    aidvar2_gaussian, dcov2_gaussian_scalar, limit_fixed_q_ratio, limit_smalllambda_ratio,
    GaussianSpec,
};
use dcor::linalg::{eig_symmetric, Matrix, SymMatrix};
use dcor::mc::{consistency_experiment, mc_standard_dcov_gaussian, sample_mvn, RngSpec};
use dcor::specfun::SpectralLambda;
use dcor::stats::{dcor_sample, dcor_sample_affine, dcov2_sample, pairwise_distances, DataMatrix};
use dcor::timeseries::{auto_dcor, cross_dcor, VectorSeries};
use dcor::Variant;
use std::f64::consts::PI;

fn assert_rel(actual: f64, expected: f64, tol: f64, what: &str) {
    let scale = expected.abs().max(1e-300);
    let err = (actual - expected).abs() / scale;
    assert!(
        err <= tol,
        "{what}: got {actual}, expected {expected} (rel err {err:.3e} > {tol:.0e})"
    );
}

fn lcg_stream(seed: u64) -> impl FnMut() -> f64 {
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
    move || {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        ((state >> 11) as f64) / (1u64 << 53) as f64 * 2.0 - 1.0
    }
}

fn random_data(dim: usize, n: usize, seed: u64) -> DataMatrix {
    let mut next = lcg_stream(seed);
    DataMatrix::from_samples(dim, (0..dim * n).map(|_| next()).collect()).unwrap()
}

fn sqrt_spd(a: &SymMatrix) -> Matrix {
    let eig = eig_symmetric(a).unwrap();
    let n = a.dim();
    let mut out = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0.0;
            for k in 0..n {
                acc += eig.eigenvectors.get(i, k)
                    * eig.eigenvalues[k].sqrt()
                    * eig.eigenvectors.get(j, k);
            }
            out.set(i, j, acc);
        }
    }
    out
}

/// Random positive definite specification with whitened cross-dependence
/// norm at most `norm_cap`.
fn random_spec(p: usize, q: usize, norm_cap: f64, seed: u64) -> GaussianSpec {
    let mut next = lcg_stream(seed);
    let mut rand_spd = |d: usize| {
        let g = Matrix::from_rows(
            &(0..d)
                .map(|_| (0..d).map(|_| next()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let mut s = g.gram();
        for i in 0..d {
            s.set_sym(i, i, s.get(i, i) + 0.4);
        }
        s
    };
    let sigma_x = rand_spd(p);
    let sigma_y = rand_spd(q);
    let mut w = Matrix::zeros(p, q);
    let mut frob = 0.0;
    for i in 0..p {
        for j in 0..q {
            let v = next();
            w.set(i, j, v);
            frob += v * v;
        }
    }
    let scale = norm_cap / frob.sqrt().max(1e-9);
    let mut scaled = Matrix::zeros(p, q);
    for i in 0..p {
        for j in 0..q {
            scaled.set(i, j, w.get(i, j) * scale);
        }
    }
    let sigma_xy = sqrt_spd(&sigma_x).matmul(&scaled).matmul(&sqrt_spd(&sigma_y));
    GaussianSpec::new(sigma_x, sigma_y, sigma_xy, None).unwrap()
}

#[test]
fn criterion_01_variance_closed_form_p1() {
    let expected = 4.0 / 3.0 - 4.0 * (3.0_f64.sqrt() - 1.0) / PI;
    let value = aidvar2_gaussian(1);
    assert_rel(value, expected, 1e-12, "distance variance at p = 1");
    println!("criterion 01 PASS: aidvar2(1) = {value:.15} matches 4/3 - 4(sqrt(3)-1)/pi");
}

#[test]
fn criterion_02_variance_closed_form_p3() {
    let expected = 2.0 - 4.0 * (3.0 * 3.0_f64.sqrt() - 4.0) / PI;
    let value = aidvar2_gaussian(3);
    assert_rel(value, expected, 1e-12, "distance variance at p = 3");
    println!("criterion 02 PASS: aidvar2(3) = {value:.15} matches 2 - 4(3sqrt(3)-4)/pi");
}

#[test]
fn criterion_03_bivariate_reduction() {
    // elementary route: Ṽ² = (4/π)(f(ρ²) - 2 f(ρ²/4) + 1),
    // f(z) = √z asin(√z) + √(1-z)
    let f = |z: f64| z.sqrt() * z.sqrt().asin() + (1.0 - z).sqrt();
    let mut worst = 0.0_f64;
    for i in 0..=9 {
        let rho = i as f64 / 10.0;
        let series = aidcov2_gaussian(&GaussianSpec::bivariate(rho).unwrap()).unwrap();
        let closed = 4.0 / PI * (f(rho * rho) - 2.0 * f(rho * rho / 4.0) + 1.0);
        if closed == 0.0 {
            assert_eq!(series, 0.0, "rho = 0 must give exactly zero");
        } else {
            let err = (series - closed).abs() / closed.abs();
            worst = worst.max(err);
            assert!(err <= 1e-10, "rho = {rho}: rel err {err:.3e}");
        }
    }
    println!("criterion 03 PASS: series matches the arcsine closed form, worst rel err {worst:.3e}");
}

#[test]
fn criterion_04_path_equivalence() {
    let mut next = lcg_stream(404);
    let mut worst = 0.0_f64;
    for i in 0..100 {
        let p = 1 + (next().abs() * 6.0) as usize % 6;
        let q = 1 + (next().abs() * 6.0) as usize % 6;
        let spec = random_spec(p, q, 0.9, 10_000 + i);
        let a = aidcov2_gaussian(&spec).unwrap();
        let b = aidcov2_gaussian_hyp(&spec).unwrap();
        let err = (a - b).abs() / a.abs().max(1e-300);
        worst = worst.max(err);
        assert!(err <= 1e-12, "spec {i} (p={p}, q={q}): rel err {err:.3e}");
    }
    println!("criterion 04 PASS: combined series vs 3F2 route on 100 specs, worst rel err {worst:.3e}");
}

#[test]
fn criterion_05_interchange_invariance() {
    let mut next = lcg_stream(505);
    let mut worst = 0.0_f64;
    for i in 0..100 {
        let p = 1 + (next().abs() * 6.0) as usize % 6;
        let q = 1 + (next().abs() * 6.0) as usize % 6;
        let spec = random_spec(p, q, 0.85, 20_000 + i);
        let a = aidcov2_gaussian(&spec).unwrap();
        let b = aidcov2_gaussian(&spec.transposed()).unwrap();
        let err = (a - b).abs() / a.abs().max(1e-300);
        worst = worst.max(err);
        assert!(err <= 1e-12, "spec {i} (p={p}, q={q}): rel err {err:.3e}");
    }
    println!("criterion 05 PASS: X/Y interchange on 100 specs, worst rel err {worst:.3e}");
}

#[test]
fn criterion_06_small_dependence_constant() {
    let tr = 1e-6;
    for (p, q) in [(1usize, 1usize), (2, 2), (3, 2)] {
        let m = p.min(q);
        let mut cross = Matrix::zeros(p, q);
        for i in 0..m {
            cross.set(i, i, (tr / m as f64).sqrt());
        }
        let spec = GaussianSpec::with_identity_margins(p, q, cross).unwrap();
        let r = aidcor_gaussian(&spec).unwrap().r_affine;
        let ratio = r * r / tr;
        assert_rel(
            ratio,
            limit_smalllambda_ratio(p, q),
            1e-4,
            &format!("small-dependence ratio at (p, q) = ({p}, {q})"),
        );
    }
    // bivariate slope constant 1/(2 (1 + π/3 - √3)^{1/2})
    let slope = limit_smalllambda_ratio(1, 1).sqrt();
    let expected = 1.0 / (2.0 * (1.0 + PI / 3.0 - 3.0_f64.sqrt()).sqrt());
    assert_rel(slope, expected, 1e-12, "bivariate slope constant");
    assert!((slope - 0.8906634).abs() < 1e-6);
    println!("criterion 06 PASS: R̃²/tr(Λ) matches 1/(4pq sqrt(A(p)A(q))); slope constant {slope:.6}");
}

#[test]
fn criterion_07_variance_tends_to_half() {
    let mut prev = f64::INFINITY;
    let mut last = 0.0;
    for p in [8usize, 16, 32, 64, 128, 256] {
        let v = aidvar2_gaussian(p);
        let err = (v - 0.5).abs();
        assert!(err < prev, "|Ṽ²({p}) - 1/2| = {err} did not decrease");
        prev = err;
        last = v;
    }
    assert!(prev < 0.02, "final error {prev}");
    println!("criterion 07 PASS: Ṽ²(X_p, X_p) -> 1/2, final value {last:.6} (err {prev:.2e})");
}

#[test]
fn criterion_08_boundary_limit() {
    // p = 2, q = 1: the spectrum is the scalar r² + s² = 1 - ε.
    let value_at = |eps: f64| {
        let lambda = SpectralLambda::new(vec![1.0 - eps]).unwrap();
        aidcor_from_spectrum(&lambda, 2, 1).r_affine
    };
    let values: Vec<f64> = (10..=20).map(|j| value_at(2.0_f64.powi(-j))).collect();
    // two Richardson levels on the refining tail (step halves each time)
    let mut level1: Vec<f64> = values.windows(2).map(|w| 2.0 * w[1] - w[0]).collect();
    let level2: Vec<f64> = level1
        .windows(2)
        .map(|w| (4.0 * w[1] - w[0]) / 3.0)
        .collect();
    level1.clear();
    let extrapolated = *level2.last().unwrap();
    assert!(
        (extrapolated - 0.8252).abs() <= 0.001,
        "extrapolated boundary value {extrapolated}"
    );
    println!("criterion 08 PASS: boundary limit extrapolates to {extrapolated:.5} (target 0.8252 ± 0.001)");
}

#[test]
fn criterion_09_fixed_q_ratio_at_large_p() {
    let (p, tr) = (4096usize, 0.01);
    let lambda = SpectralLambda::new(vec![tr]).unwrap();
    let result = aidcor_from_spectrum(&lambda, p, 1);
    let ratio = (p as f64).sqrt() * result.r_affine * result.r_affine / tr;
    let expected = limit_fixed_q_ratio(1);
    assert_rel(ratio, expected, 0.02, "fixed-q ratio at p = 4096");
    println!("criterion 09 PASS: sqrt(p) R̃²/tr(Λ) = {ratio:.5} vs limit {expected:.5}");
}

/// Independent estimator S1 + S2 - 2 S3 built from raw distance means.
fn dcov2_sums_oracle(x: &DataMatrix, y: &DataMatrix) -> f64 {
    let n = x.n();
    let da = pairwise_distances(x);
    let db = pairwise_distances(y);
    let mut s1 = 0.0;
    let mut row_a = vec![0.0; n];
    let mut row_b = vec![0.0; n];
    for k in 0..n {
        for l in 0..n {
            s1 += da.get(k, l) * db.get(k, l);
            row_a[k] += da.get(k, l);
            row_b[k] += db.get(k, l);
        }
    }
    s1 /= (n * n) as f64;
    let ga = row_a.iter().sum::<f64>() / (n * n) as f64;
    let gb = row_b.iter().sum::<f64>() / (n * n) as f64;
    let s2 = ga * gb;
    let s3 = row_a
        .iter()
        .zip(&row_b)
        .map(|(a, b)| (a / n as f64) * (b / n as f64))
        .sum::<f64>()
        / n as f64;
    s1 + s2 - 2.0 * s3
}

#[test]
fn criterion_10_estimator_equivalence() {
    let mut worst = 0.0_f64;
    let mut case = 0;
    for &n in &[2usize, 3, 10, 50] {
        for i in 0..25 {
            let seed = 30_000 + case;
            case += 1;
            let dim_x = 1 + (seed as usize) % 3;
            let dim_y = 1 + (seed as usize / 3) % 3;
            let x = random_data(dim_x, n, seed);
            let y = random_data(dim_y, n, seed + 7919);
            let v2 = dcov2_sample(&x, &y).unwrap();
            let oracle = dcov2_sums_oracle(&x, &y);
            let err = (v2 - oracle).abs() / oracle.abs().max(1e-30);
            worst = worst.max(err);
            assert!(err <= 1e-10, "n = {n}, instance {i}: rel err {err:.3e}");
        }
    }
    println!("criterion 10 PASS: Schur form vs S1+S2-2S3 on 100 instances, worst rel err {worst:.3e}");
}

#[test]
fn criterion_11_sample_invariances() {
    let mut worst_affine = 0.0_f64;
    let mut worst_standard = 0.0_f64;
    for trial in 0..10 {
        let x = random_data(2, 40, 600 + trial);
        let y = random_data(3, 40, 700 + trial);

        // affine variant: arbitrary invertible affine maps of either side
        let base = dcor_sample_affine(&x, &y).unwrap().r;
        let mut next = lcg_stream(800 + trial);
        let mx = Matrix::from_rows(&[
            vec![2.0 + next() * 0.5, next() * 0.5],
            vec![next() * 0.5, 2.0 + next() * 0.5],
        ])
        .unwrap();
        let shift_x = [next(), next()];
        let x_mapped = {
            let t = x.transform(&mx);
            let vals: Vec<f64> = (0..t.n())
                .flat_map(|i| {
                    t.sample(i)
                        .iter()
                        .enumerate()
                        .map(|(j, v)| v + shift_x[j])
                        .collect::<Vec<_>>()
                })
                .collect();
            DataMatrix::from_samples(2, vals).unwrap()
        };
        let moved = dcor_sample_affine(&x_mapped, &y).unwrap().r;
        worst_affine = worst_affine.max((base - moved).abs());
        assert!(
            (base - moved).abs() <= 1e-8,
            "trial {trial}: affine invariance broke ({base} vs {moved})"
        );

        let my = Matrix::from_rows(&[
            vec![3.0, next() * 0.4, 0.0],
            vec![next() * 0.4, 3.0, next() * 0.4],
            vec![0.0, next() * 0.4, 3.0],
        ])
        .unwrap();
        let y_mapped = y.transform(&my);
        let moved_y = dcor_sample_affine(&x, &y_mapped).unwrap().r;
        worst_affine = worst_affine.max((base - moved_y).abs());
        assert!((base - moved_y).abs() <= 1e-8);

        // standard variant: orthogonal rotation, scale, shift
        let std_base = dcor_sample(&x, &y).unwrap().r;
        let sym = SymMatrix::from_fn(2, |_, _| next());
        let c = eig_symmetric(&sym).unwrap().eigenvectors;
        let b = 1.0 + next().abs() * 3.0;
        let a = next();
        let x_rigid = {
            let t = x.transform(&c);
            let vals: Vec<f64> = (0..t.n())
                .flat_map(|i| t.sample(i).iter().map(|v| b * v + a).collect::<Vec<_>>())
                .collect();
            DataMatrix::from_samples(2, vals).unwrap()
        };
        let std_moved = dcor_sample(&x_rigid, &y).unwrap().r;
        worst_standard = worst_standard.max((std_base - std_moved).abs());
        assert!(
            (std_base - std_moved).abs() <= 1e-9,
            "trial {trial}: rigid-motion invariance broke ({std_base} vs {std_moved})"
        );
    }
    println!(
        "criterion 11 PASS: affine maps shift r by at most {worst_affine:.2e} (tol 1e-8), \
         rigid motions by {worst_standard:.2e} (tol 1e-9)"
    );
}

#[test]
fn criterion_12_monte_carlo_consistency() {
    let spec = GaussianSpec::bivariate(0.5).unwrap();
    let target = aidcor_gaussian(&spec).unwrap().r_affine;
    let rng = RngSpec::new(20_240_817, 0);

    let reports = consistency_experiment(&spec, &[5000], 20, rng).unwrap();
    let report = &reports[0].1;
    let z = report.z_score.unwrap();
    assert!(
        z.abs() < 3.0,
        "replicate mean {} vs target {target}: z = {z}",
        report.estimate
    );

    // median absolute error over the same replicate streams, per n
    let mut medians = Vec::new();
    for &n in &[250usize, 1000, 4000] {
        let mut errors: Vec<f64> = (0..20)
            .map(|rep| {
                let (x, y) =
                    sample_mvn(&spec, n, RngSpec::new(rng.seed, rng.stream + rep)).unwrap();
                (dcor_sample_affine(&x, &y).unwrap().r - target).abs()
            })
            .collect();
        errors.sort_by(|a, b| a.partial_cmp(b).unwrap());
        medians.push((errors[9] + errors[10]) / 2.0);
    }
    assert!(
        medians[0] > medians[1] && medians[1] > medians[2],
        "median errors not strictly decreasing: {medians:?}"
    );
    println!(
        "criterion 12 PASS: z = {z:.2} at n = 5000; median |error| {medians:?} decreasing"
    );
}

#[test]
fn criterion_13_scalar_series() {
    // unit scalar variances: must reproduce the affinely invariant value
    let mut next = lcg_stream(1313);
    let mut worst = 0.0_f64;
    for _ in 0..10 {
        let mut cross = Matrix::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                cross.set(i, j, 0.4 * next());
            }
        }
        let spec = GaussianSpec::with_identity_margins(2, 2, cross).unwrap();
        let scalar = dcov2_gaussian_scalar(&spec).unwrap();
        let affine = aidcov2_gaussian(&spec).unwrap();
        let err = (scalar - affine).abs() / affine.abs().max(1e-300);
        worst = worst.max(err);
        assert!(err <= 1e-10, "rel err {err:.3e}");
    }

    // σx = 2, σy = 1, p = q = 1, covariance 1.0: Monte Carlo agreement
    let spec = GaussianSpec::new(
        SymMatrix::diag(&[4.0]),
        SymMatrix::diag(&[1.0]),
        Matrix::from_rows(&[vec![1.0]]).unwrap(),
        None,
    )
    .unwrap();
    let exact = dcov2_gaussian_scalar(&spec).unwrap();
    let report = mc_standard_dcov_gaussian(&spec, 5000, 20, RngSpec::new(77_001, 0)).unwrap();
    let z = (report.estimate - exact) / report.std_error;
    assert!(
        z.abs() < 3.0,
        "MC {} vs exact {exact}: z = {z}",
        report.estimate
    );
    println!(
        "criterion 13 PASS: unit-variance route agrees (worst rel err {worst:.3e}); \
         MC check z = {z:.2}"
    );
}

#[test]
fn criterion_14_correlogram_contracts() {
    let mut next = lcg_stream(1414);
    let mut values = Vec::with_capacity(243);
    let mut state = 0.0;
    for _ in 0..243 {
        state = 0.6 * state + next();
        values.push(state);
    }

    // lag-0 auto value is exactly one on a non-constant series
    let x = VectorSeries::new(1, values[..240].to_vec(), "x").unwrap();
    for variant in [Variant::Standard, Variant::Affine] {
        let acf = auto_dcor(&x, 5, variant).unwrap();
        assert_eq!(acf.values[0], 1.0, "lag-0 auto value");
    }

    // series against its own 3-step-ahead copy peaks at lag -3
    let y = VectorSeries::new(1, values[3..243].to_vec(), "y").unwrap();
    let ccf = cross_dcor(&x, &y, 6, Variant::Standard).unwrap();
    let best = ccf
        .values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .unwrap();
    assert_eq!(ccf.lags[best.0], -3, "peak lag");
    assert!(*best.1 >= 0.99, "peak value {}", best.1);

    // lag reversal under argument swap
    let z = VectorSeries::new(
        1,
        (0..240).map(|_| next()).collect::<Vec<f64>>(),
        "z",
    )
    .unwrap();
    let xz = cross_dcor(&x, &z, 5, Variant::Standard).unwrap();
    let zx = cross_dcor(&z, &x, 5, Variant::Standard).unwrap();
    let mut worst = 0.0_f64;
    for (i, &k) in xz.lags.iter().enumerate() {
        let j = zx.lags.iter().position(|&m| m == -k).unwrap();
        worst = worst.max((xz.values[i] - zx.values[j]).abs());
    }
    assert!(worst <= 1e-12, "swap mismatch {worst:.3e}");
    println!(
        "criterion 14 PASS: lag-0 = 1, shifted-copy peak at -3 (value {:.4}), \
         swap symmetry within {worst:.1e}",
        best.1
    );
}
