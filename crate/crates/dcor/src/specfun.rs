//! Scalar and one-part-matrix special functions.
//!
//! Everything the population formulas need: the constants `c_p`, rising
//! factorials, the gamma function, the Gauss hypergeometric family
//! `₂F₁(-1/2, -1/2; c; z)`, one-part zonal polynomials `C₍ₖ₎(Λ)`, and the
//! dimension constant `A(p)`.
//!
//! Only one-part zonal polynomials are computed. Longer partitions carry a
//! vanishing `(1/2)` rising-factorial weight in every series evaluated by
//! this crate, so a dedicated general-partition evaluator would be dead
//! weight; the one-part coefficients come from the generating function
//! `Π_j (1 - λ_j x)^{-1/2}`.

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Relative series cutoff: terms below this fraction of the running sum are
/// dropped.
const SERIES_REL_EPS: f64 = 1e-14;
/// Hard cap on the one-part series order.
pub const SERIES_K_MAX: usize = 2000;

// Lanczos g = 7, 9-term coefficient set.
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

/// Natural log of the gamma function for positive arguments.
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        // reflection
        return (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut t = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        t += c / (x + i as f64);
    }
    let w = x + 7.5;
    0.5 * (2.0 * PI).ln() + (x + 0.5) * w.ln() - w + t.ln()
}

/// Gamma function for positive arguments.
///
/// Integer and half-integer arguments (the only ones the population
/// formulas produce) take an exact recursion from Γ(1) = 1 and
/// Γ(1/2) = √π; everything else goes through the Lanczos approximation.
pub fn gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0, "gamma expects a positive argument");
    let doubled = 2.0 * x;
    if doubled == doubled.round() && x <= 170.0 {
        let mut value;
        let mut arg;
        if x == x.round() {
            value = 1.0;
            arg = 1.0;
        } else {
            value = PI.sqrt();
            arg = 0.5;
        }
        while arg < x - 0.25 {
            value *= arg;
            arg += 1.0;
        }
        return value;
    }
    ln_gamma(x).exp()
}

/// `c_p = π^{(p+1)/2} / Γ((p+1)/2)`.
///
/// Overflows to infinity for very large `p`; ratio-based callers should use
/// [`c_ratio`] instead.
pub fn const_c(p: u32) -> f64 {
    let m = p + 1;
    let power = if m.is_multiple_of(2) {
        PI.powi((m / 2) as i32)
    } else {
        PI.powi((m / 2) as i32) * PI.sqrt()
    };
    power / gamma(m as f64 / 2.0)
}

/// The ratio `c_{p-1} / c_p = Γ((p+1)/2) / (√π · Γ(p/2))`, stable for any
/// dimension.
pub fn c_ratio(p: u32) -> f64 {
    assert!(p >= 1, "c_ratio needs p >= 1");
    let a = (p as f64 + 1.0) / 2.0;
    let b = p as f64 / 2.0;
    if a <= 170.0 {
        gamma(a) / (PI.sqrt() * gamma(b))
    } else {
        (ln_gamma(a) - ln_gamma(b)).exp() / PI.sqrt()
    }
}

/// Rising factorial `(α)_k = α (α+1) ⋯ (α+k-1)`; the empty product is 1.
pub fn rising_factorial(alpha: f64, k: u32) -> f64 {
    let mut acc = 1.0;
    for i in 0..k {
        acc *= alpha + i as f64;
    }
    acc
}

/// Eigenvalue spectrum of the squared cross-dependence matrix.
///
/// Eigenvalues live in `[0, 1)`: values within `1e-12` of zero are clamped
/// up, anything at or beyond `1 - 1e-12` is rejected rather than clamped
/// because it violates the positive-definiteness premise of the population
/// formulas.
#[derive(Debug, Clone)]
pub struct SpectralLambda {
    eigenvalues: Vec<f64>,
}

impl SpectralLambda {
    pub fn new(eigenvalues: Vec<f64>) -> Result<Self> {
        if eigenvalues.is_empty() {
            return Err(Error::domain("spectrum must contain at least one eigenvalue"));
        }
        let mut cleaned = Vec::with_capacity(eigenvalues.len());
        for &l in &eigenvalues {
            if !l.is_finite() {
                return Err(Error::domain("spectrum contains a non-finite eigenvalue"));
            }
            if l < -1e-12 {
                return Err(Error::domain(format!(
                    "eigenvalue {l:e} is negative beyond round-off"
                )));
            }
            if l >= 1.0 - 1e-12 {
                return Err(Error::domain(format!(
                    "eigenvalue {l} reaches the unit bound; spectrum must stay strictly below 1"
                )));
            }
            cleaned.push(l.max(0.0));
        }
        Ok(SpectralLambda { eigenvalues: cleaned })
    }

    pub fn q(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Largest eigenvalue.
    pub fn norm(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0_f64, |a, &b| a.max(b))
    }

    pub fn trace(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    /// Spectrum scaled by `t ∈ [0, 1]`.
    pub fn scaled(&self, t: f64) -> SpectralLambda {
        SpectralLambda {
            eigenvalues: self.eigenvalues.iter().map(|l| l * t).collect(),
        }
    }
}

/// One-part zonal polynomial values `C₍₁₎(Λ) … C₍ₖₘₐₓ₎(Λ)`.
#[derive(Debug, Clone)]
pub struct ZonalCoefficients {
    values: Vec<f64>,
}

impl ZonalCoefficients {
    pub fn k_max(&self) -> usize {
        self.values.len()
    }

    /// `C₍ₖ₎(Λ)` for `1 <= k <= k_max`.
    pub fn c(&self, k: usize) -> f64 {
        self.values[k - 1]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// One-part zonal polynomials via the generating function
/// `Π_j (1 - λ_j x)^{-1/2} = Σ_k (1/2)_k C₍ₖ₎(Λ) x^k / k!`.
///
/// The per-eigenvalue coefficient sequences `(1/2)_i λ^i / i!` are convolved
/// across eigenvalues in `O(q · k_max²)`; every coefficient is a sum of
/// nonnegative terms, so no cancellation occurs.
pub fn zonal_onepart(lambda: &SpectralLambda, k_max: usize) -> ZonalCoefficients {
    assert!(k_max >= 1, "k_max must be at least 1");
    let mut h = vec![0.0; k_max + 1];
    h[0] = 1.0;
    let mut g = vec![0.0; k_max + 1];
    for &l in lambda.eigenvalues() {
        if l == 0.0 {
            continue;
        }
        g[0] = 1.0;
        for i in 1..=k_max {
            g[i] = g[i - 1] * l * (i as f64 - 0.5) / i as f64;
        }
        for k in (1..=k_max).rev() {
            let mut acc = h[k];
            for i in 1..=k {
                acc += g[i] * h[k - i];
            }
            h[k] = acc;
        }
    }
    // C_(k) = k! / (1/2)_k * h_k
    let mut values = Vec::with_capacity(k_max);
    let mut factor = 1.0;
    for k in 1..=k_max {
        factor *= k as f64 / (k as f64 - 0.5);
        values.push(factor * h[k]);
    }
    ZonalCoefficients { values }
}

/// Gauss hypergeometric series `₂F₁(-1/2, -1/2; c; z)` for `c > 0` and
/// `z ∈ [0, 1]`.
///
/// All terms beyond the leading 1 are positive, so the series is summed
/// directly; at `z = 1` Gauss' theorem gives the closed form
/// `Γ(c)Γ(c+1)/Γ(c+1/2)²`.
pub fn gauss_2f1_neg_half(c: f64, z: f64) -> Result<f64> {
    if c <= 0.0 {
        return Err(Error::domain(format!("2F1 parameter c = {c} must be positive")));
    }
    if !(0.0..=1.0).contains(&z) {
        return Err(Error::domain(format!("2F1 argument z = {z} outside [0, 1]")));
    }
    if z == 1.0 {
        // quotient order keeps intermediate values bounded
        return Ok(if c + 1.0 <= 170.0 {
            (gamma(c) / gamma(c + 0.5)) * (gamma(c + 1.0) / gamma(c + 0.5))
        } else {
            (ln_gamma(c) + ln_gamma(c + 1.0) - 2.0 * ln_gamma(c + 0.5)).exp()
        });
    }
    let mut sum = 1.0;
    let mut term = 1.0;
    let mut k = 0.0;
    loop {
        let next = term * (k - 0.5) * (k - 0.5) * z / ((c + k) * (k + 1.0));
        term = next;
        sum += term;
        k += 1.0;
        if term.abs() < 1e-16 * sum.abs() || k > 2e6 {
            break;
        }
    }
    Ok(sum)
}

/// Dimension constant
/// `A(p) = Γ(p/2) Γ(p/2 + 1) / Γ((p+1)/2)² - 2 ₂F₁(-1/2, -1/2; p/2; 1/4) + 1`,
/// strictly positive and decaying like `1/(4p)`.
pub fn a_constant(p: u32) -> f64 {
    assert!(p >= 1, "a_constant needs p >= 1");
    let half = p as f64 / 2.0;
    let ratio = if half + 1.0 <= 170.0 {
        (gamma(half) / gamma(half + 0.5)) * (gamma(half + 1.0) / gamma(half + 0.5))
    } else {
        (ln_gamma(half) + ln_gamma(half + 1.0) - 2.0 * ln_gamma(half + 0.5)).exp()
    };
    let f_quarter =
        gauss_2f1_neg_half(half, 0.25).expect("arguments are inside the 2F1 domain");
    ratio - 2.0 * f_quarter + 1.0
}

/// Outcome of an adaptive one-part series evaluation.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SeriesEval {
    pub value: f64,
    pub truncation_k: usize,
    pub tail_estimate: f64,
}

/// Sums `Σ_{k>=1} weight(k) · C₍ₖ₎(Λ)` where `weight` is supplied through a
/// per-term ratio applied to an initial weight. Stops once the current term
/// falls below `1e-14` of the running sum or the hard cap is hit; the tail
/// is bounded by the geometric estimate `term · ‖Λ‖ / (1 - ‖Λ‖)`.
pub(crate) fn sum_onepart_series(
    lambda: &SpectralLambda,
    first_weight: f64,
    weight_ratio: impl Fn(usize) -> f64,
) -> SeriesEval {
    let norm = lambda.norm();
    if norm == 0.0 {
        return SeriesEval {
            value: 0.0,
            truncation_k: 0,
            tail_estimate: 0.0,
        };
    }
    // Terms decay at least geometrically with ratio -> norm; size the zonal
    // batch from that, within the hard cap.
    let k_cap = if norm < 0.1 {
        40
    } else {
        let est = (1e-18_f64.ln() / norm.ln()).ceil() as usize + 20;
        est.clamp(40, SERIES_K_MAX)
    };
    let zonal = zonal_onepart(lambda, k_cap);

    let mut weight = first_weight;
    let mut sum = 0.0;
    let mut term = 0.0;
    let mut used = 0;
    for k in 1..=k_cap {
        if k > 1 {
            weight *= weight_ratio(k - 1);
        }
        term = weight * zonal.c(k);
        sum += term;
        used = k;
        if term <= SERIES_REL_EPS * sum {
            break;
        }
    }
    let tail = if norm < 1.0 { term * norm / (1.0 - norm) } else { f64::INFINITY };
    SeriesEval {
        value: sum,
        truncation_k: used,
        tail_estimate: tail,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(actual: f64, expected: f64, tol: f64) {
        let scale = expected.abs().max(1.0);
        assert!(
            (actual - expected).abs() <= tol * scale,
            "got {actual}, expected {expected}"
        );
    }

    #[test]
    fn const_c_small_dimensions() {
        assert_eq!(const_c(0), 1.0);
        assert_close(const_c(1), PI, 1e-15);
        assert_close(const_c(2), 2.0 * PI, 1e-15);
    }

    #[test]
    fn c_ratio_matches_direct_quotient() {
        for p in 1..=12 {
            assert_close(c_ratio(p), const_c(p - 1) / const_c(p), 1e-13);
        }
    }

    #[test]
    fn c_ratio_large_p_limit() {
        // c_{p-1} / (sqrt(p) c_p) -> 1 / sqrt(2 pi)
        let p = 1 << 20;
        let scaled = c_ratio(p) / (p as f64).sqrt();
        assert_close(scaled, 1.0 / (2.0 * PI).sqrt(), 1e-6);
    }

    #[test]
    fn rising_factorial_cases() {
        assert_eq!(rising_factorial(3.7, 0), 1.0);
        assert_eq!(rising_factorial(0.5, 2), 0.75);
        assert_eq!(rising_factorial(-0.5, 2), -0.25);
        assert_eq!(rising_factorial(2.0, 3), 24.0);
    }

    #[test]
    fn gamma_half_integers_exact() {
        assert_eq!(gamma(1.0), 1.0);
        assert_eq!(gamma(5.0), 24.0);
        assert_close(gamma(0.5), PI.sqrt(), 1e-16);
        assert_close(gamma(2.5), 1.5 * 0.5 * PI.sqrt(), 1e-15);
    }

    #[test]
    fn ln_gamma_agrees_with_recursion() {
        // Γ(20.5) via recursion vs Lanczos.
        let exact = gamma(20.5);
        assert_close(ln_gamma(20.5).exp(), exact, 1e-12);
        // functional equation Γ(x+1) = x Γ(x) off the half-integer grid
        assert_close(ln_gamma(4.25).exp(), 3.25 * ln_gamma(3.25).exp(), 1e-12);
    }

    #[test]
    fn spectral_lambda_validation() {
        let l = SpectralLambda::new(vec![0.3, -5e-13, 0.9]).unwrap();
        assert_eq!(l.eigenvalues()[1], 0.0);
        assert_eq!(l.norm(), 0.9);
        assert!(SpectralLambda::new(vec![1.0]).is_err());
        assert!(SpectralLambda::new(vec![1.0 - 1e-13]).is_err());
        assert!(SpectralLambda::new(vec![-1e-6]).is_err());
        assert!(SpectralLambda::new(vec![]).is_err());
    }

    // Brute-force oracle: enumerate all compositions i_1 + ... + i_q = k.
    fn zonal_bruteforce(eigs: &[f64], k: usize) -> f64 {
        fn walk(eigs: &[f64], remaining: usize, acc: f64, total: &mut f64) {
            if eigs.len() == 1 {
                *total += acc * rising_factorial(0.5, remaining as u32)
                    * eigs[0].powi(remaining as i32)
                    / (1..=remaining).map(|i| i as f64).product::<f64>();
                return;
            }
            for i in 0..=remaining {
                let w = rising_factorial(0.5, i as u32) * eigs[0].powi(i as i32)
                    / (1..=i).map(|v| v as f64).product::<f64>();
                walk(&eigs[1..], remaining - i, acc * w, total);
            }
        }
        let mut total = 0.0;
        walk(eigs, k, 1.0, &mut total);
        let k_fact: f64 = (1..=k).map(|i| i as f64).product();
        k_fact / rising_factorial(0.5, k as u32) * total
    }

    #[test]
    fn zonal_identity_spectrum_closed_form() {
        // C_(k)(I_q) = (q/2)_k / (1/2)_k; approach I_q from just inside.
        for q in [1usize, 2, 5] {
            let lam = SpectralLambda::new(vec![1.0 - 1e-9; q]).unwrap();
            let zonal = zonal_onepart(&lam, 8);
            for k in 1..=8 {
                let expect = rising_factorial(q as f64 / 2.0, k as u32)
                    / rising_factorial(0.5, k as u32);
                // relative deviation from the boundary value is ~ k * 1e-9
                assert_close(zonal.c(k), expect, 1e-7);
            }
        }
    }

    #[test]
    fn zonal_single_eigenvalue_is_power() {
        let rho2 = 0.37;
        let lam = SpectralLambda::new(vec![rho2]).unwrap();
        let zonal = zonal_onepart(&lam, 10);
        for k in 1..=10 {
            assert_close(zonal.c(k), rho2.powi(k as i32), 1e-13);
        }
    }

    #[test]
    fn zonal_matches_composition_enumeration() {
        let spectra: [&[f64]; 3] = [&[0.2, 0.7], &[0.1, 0.4, 0.8], &[0.5, 0.5]];
        for eigs in spectra {
            let lam = SpectralLambda::new(eigs.to_vec()).unwrap();
            let zonal = zonal_onepart(&lam, 6);
            for k in 1..=6 {
                assert_close(zonal.c(k), zonal_bruteforce(eigs, k), 1e-12);
            }
        }
    }

    #[test]
    fn zonal_first_coefficient_is_trace() {
        let lam = SpectralLambda::new(vec![0.11, 0.22, 0.33]).unwrap();
        let zonal = zonal_onepart(&lam, 3);
        assert_close(zonal.c(1), lam.trace(), 1e-13);
    }

    #[test]
    fn zonal_homogeneity() {
        let lam = SpectralLambda::new(vec![0.3, 0.6]).unwrap();
        let delta = 0.41;
        let scaled = lam.scaled(delta);
        let z1 = zonal_onepart(&lam, 8);
        let z2 = zonal_onepart(&scaled, 8);
        for k in 1..=8 {
            assert_close(z2.c(k), delta.powi(k as i32) * z1.c(k), 1e-12);
        }
    }

    #[test]
    fn zonal_bound_chain() {
        // C_(k)(Λ) / tr(Λ) <= (q/2)_k / (1/2)_k
        let spectra: [&[f64]; 2] = [&[0.9, 0.05, 0.3], &[0.45, 0.45]];
        for eigs in spectra {
            let lam = SpectralLambda::new(eigs.to_vec()).unwrap();
            let q = lam.q() as f64;
            let zonal = zonal_onepart(&lam, 10);
            for k in 1..=10 {
                let bound =
                    rising_factorial(q / 2.0, k as u32) / rising_factorial(0.5, k as u32);
                assert!(zonal.c(k) >= 0.0);
                assert!(zonal.c(k) / lam.trace() <= bound * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn zonal_generating_function_partial_sums() {
        // q = 1: Σ_k (1/2)_k C_(k)(λ) x^k / k! -> (1 - λx)^{-1/2}
        let lambda = 0.625;
        let x: f64 = 0.8; // λx = 0.5
        let lam = SpectralLambda::new(vec![lambda]).unwrap();
        let zonal = zonal_onepart(&lam, 60);
        let mut sum = 1.0;
        let mut k_fact = 1.0;
        for k in 1..=60 {
            k_fact *= k as f64;
            sum += rising_factorial(0.5, k as u32) * zonal.c(k) * x.powi(k as i32) / k_fact;
        }
        assert_close(sum, (1.0 - lambda * x).powf(-0.5), 1e-10);
    }

    #[test]
    fn gauss_2f1_trivial_and_identities() {
        assert_eq!(gauss_2f1_neg_half(0.5, 0.0).unwrap(), 1.0);

        // c = 1/2: ρ asin(ρ) + sqrt(1 - ρ²)
        let rho: f64 = 0.5;
        let expect = rho * rho.asin() + (1.0 - rho * rho).sqrt();
        assert_close(gauss_2f1_neg_half(0.5, rho * rho).unwrap(), expect, 1e-14);

        // c = 3/2: 3 sqrt(1-ρ²)/4 + (1 + 2ρ²) asin(ρ) / (4ρ)
        let rho: f64 = 0.3;
        let expect = 3.0 * (1.0 - rho * rho).sqrt() / 4.0
            + (1.0 + 2.0 * rho * rho) * rho.asin() / (4.0 * rho);
        assert_close(gauss_2f1_neg_half(1.5, rho * rho).unwrap(), expect, 1e-14);
    }

    #[test]
    fn gauss_2f1_at_unit_argument() {
        // Gauss' theorem: Γ(c)Γ(c+1)/Γ(c+1/2)²; for c = 1/2 this is π/2.
        assert_close(gauss_2f1_neg_half(0.5, 1.0).unwrap(), PI / 2.0, 1e-13);
        // Series value just inside 1 approaches the closed form.
        let near = gauss_2f1_neg_half(2.0, 1.0 - 1e-9).unwrap();
        assert_close(near, gauss_2f1_neg_half(2.0, 1.0).unwrap(), 1e-7);
    }

    #[test]
    fn gauss_2f1_monotone_in_z() {
        let mut prev = 0.0;
        for i in 0..=10 {
            let z = i as f64 / 10.0;
            let v = gauss_2f1_neg_half(2.5, z).unwrap();
            assert!(v > prev || i == 0);
            prev = v;
        }
    }

    #[test]
    fn gauss_2f1_domain_errors() {
        assert!(gauss_2f1_neg_half(0.0, 0.5).is_err());
        assert!(gauss_2f1_neg_half(-1.0, 0.5).is_err());
        assert!(gauss_2f1_neg_half(0.5, 1.0 + 1e-9).is_err());
        assert!(gauss_2f1_neg_half(0.5, -0.1).is_err());
    }

    #[test]
    fn a_constant_closed_form_p1() {
        // 2F1(-1/2,-1/2;1/2;1/4) = π/12 + √3/2, so A(1) = π/3 - √3 + 1.
        let expect = PI / 3.0 - 3.0_f64.sqrt() + 1.0;
        assert_close(a_constant(1), expect, 1e-14);
        assert_close(
            gauss_2f1_neg_half(0.5, 0.25).unwrap(),
            PI / 12.0 + 3.0_f64.sqrt() / 2.0,
            1e-14,
        );
    }

    #[test]
    fn a_constant_positive_and_decaying() {
        let mut prev = a_constant(1);
        for p in 2..=50 {
            let a = a_constant(p);
            assert!(a > 0.0);
            assert!(a < prev);
            prev = a;
        }
        // 4π (c_{p-1}/c_p)² A(p) -> 1/2
        let p = 100_000;
        let limit = 4.0 * PI * c_ratio(p) * c_ratio(p) * a_constant(p);
        assert_close(limit, 0.5, 1e-4);
    }
}
