//! Standard normal helpers used throughout the bivariate densities.

use statrs::function::erf;

const SQRT_2: f64 = std::f64::consts::SQRT_2;
/// ln sqrt(2 pi)
pub const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_7;
/// sqrt(2 pi)
pub const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

/// Density of the standard normal distribution.
pub fn std_normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / SQRT_2PI
}

/// Log density of the standard normal distribution.
pub fn ln_std_normal_pdf(x: f64) -> f64 {
    -0.5 * x * x - LN_SQRT_2PI
}

/// CDF of the standard normal distribution.
pub fn std_normal_cdf(x: f64) -> f64 {
    0.5 * erf::erfc(-x / SQRT_2)
}

/// ln of the standard normal CDF, stable deep into the left tail where the
/// CDF itself underflows.
pub fn ln_std_normal_cdf(x: f64) -> f64 {
    if x < -30.0 {
        // Mills-ratio asymptotic; erfc underflows near x = -37.6.
        let x2 = x * x;
        -0.5 * x2 - (-x).ln() - LN_SQRT_2PI + (1.0 - 1.0 / x2 + 3.0 / (x2 * x2)).ln()
    } else {
        std_normal_cdf(x).ln()
    }
}

/// Quantile of the standard normal distribution.
pub fn std_normal_quantile(p: f64) -> f64 {
    use statrs::distribution::{ContinuousCDF, Normal};
    Normal::new(0.0, 1.0).unwrap().inverse_cdf(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn cdf_reference_values() {
        assert_relative_eq!(std_normal_cdf(0.0), 0.5, epsilon = 1e-15);
        assert_relative_eq!(std_normal_cdf(1.0), 0.841344746068543, epsilon = 1e-12);
        assert_relative_eq!(std_normal_cdf(-1.96), 0.024997895148220435, epsilon = 1e-10);
        assert_eq!(std_normal_cdf(f64::INFINITY), 1.0);
        assert_eq!(std_normal_cdf(f64::NEG_INFINITY), 0.0);
    }

    #[test]
    fn ln_cdf_matches_direct_in_overlap() {
        // Both branches should agree where erfc is still accurate.
        for &x in &[-36.0, -33.0, -30.5, -29.9, -25.0, -10.0, -3.0, 0.0, 2.0] {
            let direct = std_normal_cdf(x).ln();
            let stable = ln_std_normal_cdf(x);
            if direct.is_finite() {
                assert_relative_eq!(direct, stable, max_relative = 1e-6);
            }
        }
        // Far tail stays finite where the direct route underflows.
        assert!(ln_std_normal_cdf(-60.0).is_finite());
        assert!(ln_std_normal_cdf(-60.0) < -1700.0);
    }

    #[test]
    fn quantile_inverts_cdf() {
        for &p in &[1e-6, 0.01, 0.3, 0.5, 0.9, 1.0 - 1.0 / 36500.0] {
            assert_relative_eq!(std_normal_cdf(std_normal_quantile(p)), p, epsilon = 1e-9);
        }
    }
}
