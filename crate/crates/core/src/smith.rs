//! Bivariate law of the Gaussian extreme value (Smith) process on the line:
//! exponent function, CDFs on Fréchet and GEV margins, analytic partial
//! derivatives and the four-case censored pair density.
//!
//! On the unit Fréchet scale the process satisfies
//! `P(Z_s <= z1, Z_t <= z2) = exp(-V(z1, z2; a))` with `a = |s - t| / nu`
//! and
//!
//! ```text
//! V(z1, z2; a) = Phi(a/2 + ln(z2/z1)/a) / z1 + Phi(a/2 + ln(z1/z2)/a) / z2
//! ```
//!
//! where `Phi` is the standard normal CDF. The limits `a -> inf` and
//! `a -> 0` correspond to independence and perfect dependence.
//!
//! Writing `w = a/2 + ln(z2/z1)/a` and `v = a - w`, the identity
//! `phi(w) z2 = phi(v) z1` collapses the partial derivatives of `V` to
//!
//! ```text
//! dV/dz1  = -Phi(w)/z1^2          d2V/dz1dz2 = -phi(w)/(a z1^2 z2)
//! ```
//!
//! from which the CDF derivatives used by the censored pair density follow
//! by the chain rule through the marginal transform. They are validated
//! against central finite differences by [`pair_density_grad_check`].

use crate::distributions::{
    censored_marginal_logdensity, frechet_parts, FrechetParts, GevMargin,
};
use crate::error::{Error, Result};
use crate::normal::{ln_std_normal_cdf, ln_std_normal_pdf, std_normal_cdf};
use serde::Serialize;

/// Beyond this value of `a = dt/nu` the pair is treated as exactly
/// independent: `Phi(+-38)` is 1 or 0 to double precision.
pub const A_INDEP: f64 = 76.0;

/// Below this value of `a` the pair is treated as perfectly dependent.
pub const A_DEP: f64 = 1e-12;

/// Full parameter set of the censored Smith process: GEV margin, dependence
/// range `nu > 0` (days; the typical storm duration) and censoring
/// threshold `u` (data units; `-inf` disables censoring).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SmithParams {
    pub margin: GevMargin,
    nu: f64,
    u: f64,
}

impl SmithParams {
    pub fn new(margin: GevMargin, nu: f64, u: f64) -> Result<Self> {
        if !(nu > 0.0) || !nu.is_finite() {
            return Err(Error::ParameterDomain(format!("nu must be > 0, got {nu}")));
        }
        if u.is_nan() {
            return Err(Error::ParameterDomain("threshold u must not be NaN".into()));
        }
        if u.is_finite() && !margin.in_support(u) {
            return Err(Error::ParameterDomain(format!(
                "threshold u = {u} is outside the margin support"
            )));
        }
        Ok(Self { margin, nu, u })
    }

    /// Model without censoring (`u = -inf`).
    pub fn uncensored(margin: GevMargin, nu: f64) -> Result<Self> {
        Self::new(margin, nu, f64::NEG_INFINITY)
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn u(&self) -> f64 {
        self.u
    }
}

fn check_pair_inputs(z1: f64, z2: f64, dt: f64, nu: f64) -> Result<()> {
    if !(z1 > 0.0) || !(z2 > 0.0) {
        return Err(Error::ParameterDomain(format!(
            "Fréchet coordinates must be > 0, got ({z1}, {z2})"
        )));
    }
    if !(nu > 0.0) {
        return Err(Error::ParameterDomain(format!("nu must be > 0, got {nu}")));
    }
    if !(dt >= 0.0) {
        return Err(Error::ParameterDomain(format!("time lag must be >= 0, got {dt}")));
    }
    Ok(())
}

/// Exponent function `V(z1, z2; a)` with `a = dt/nu`.
pub fn exponent_v(z1: f64, z2: f64, dt: f64, nu: f64) -> Result<f64> {
    check_pair_inputs(z1, z2, dt, nu)?;
    let a = dt / nu;
    if a >= A_INDEP {
        return Ok(1.0 / z1 + 1.0 / z2);
    }
    if a <= A_DEP {
        return Ok((1.0 / z1).max(1.0 / z2));
    }
    let lr = z2.ln() - z1.ln();
    let w = 0.5 * a + lr / a;
    let v = a - w;
    Ok(std_normal_cdf(w) / z1 + std_normal_cdf(v) / z2)
}

/// Bivariate CDF on the unit Fréchet scale, `exp(-V)`.
pub fn bivariate_cdf_frechet(z1: f64, z2: f64, dt: f64, nu: f64) -> Result<f64> {
    Ok((-exponent_v(z1, z2, dt, nu)?).exp())
}

/// Bivariate CDF on the GEV margin, obtained through the marginal transform
/// `z = -1/ln F(x)`. Errors if either coordinate is off the support.
pub fn bivariate_cdf_gev(x1: f64, x2: f64, dt: f64, p: &SmithParams) -> Result<f64> {
    let z1 = frechet_parts(x1, &p.margin)?;
    let z2 = frechet_parts(x2, &p.margin)?;
    bivariate_cdf_frechet(z1.z, z2.z, dt, p.nu)
}

fn log_sum_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// `ln dF/dx1` of the bivariate GEV-margin CDF at `(x1, x2)`.
pub(crate) fn ln_dcdf_dx1(x1: f64, x2: f64, dt: f64, p: &SmithParams) -> Result<f64> {
    let f1 = frechet_parts(x1, &p.margin)?;
    let f2 = frechet_parts(x2, &p.margin)?;
    Ok(ln_dcdf_first(&f1, &f2, dt, p.nu))
}

/// `ln dF/dx2`; by symmetry of V this is the first-coordinate formula with
/// the arguments swapped.
pub(crate) fn ln_dcdf_dx2(x1: f64, x2: f64, dt: f64, p: &SmithParams) -> Result<f64> {
    let f1 = frechet_parts(x1, &p.margin)?;
    let f2 = frechet_parts(x2, &p.margin)?;
    Ok(ln_dcdf_first(&f2, &f1, dt, p.nu))
}

/// `ln dF/dx` in the first coordinate for Fréchet parts `(fa, fb)`.
fn ln_dcdf_first(fa: &FrechetParts, fb: &FrechetParts, dt: f64, nu: f64) -> f64 {
    let a = dt / nu;
    if a >= A_INDEP {
        // F factorizes: dF/dx1 = f(x1) F(x2)
        return -1.0 / fa.z - 1.0 / fb.z - 2.0 * fa.ln_z + fa.ln_dz_dx;
    }
    if a <= A_DEP {
        // Degenerate pair: X_s = X_t almost surely.
        return if fa.z < fb.z {
            -1.0 / fa.z - 2.0 * fa.ln_z + fa.ln_dz_dx
        } else {
            f64::NEG_INFINITY
        };
    }
    let w = 0.5 * a + (fb.ln_z - fa.ln_z) / a;
    let v = a - w;
    let vexp = std_normal_cdf(w) / fa.z + std_normal_cdf(v) / fb.z;
    -vexp + ln_std_normal_cdf(w) - 2.0 * fa.ln_z + fa.ln_dz_dx
}

/// `ln d2F/dx1 dx2` of the bivariate GEV-margin CDF.
pub(crate) fn ln_d2cdf(x1: f64, x2: f64, dt: f64, p: &SmithParams) -> Result<f64> {
    let f1 = frechet_parts(x1, &p.margin)?;
    let f2 = frechet_parts(x2, &p.margin)?;
    Ok(ln_d2cdf_parts(&f1, &f2, dt, p.nu))
}

fn ln_d2cdf_parts(f1: &FrechetParts, f2: &FrechetParts, dt: f64, nu: f64) -> f64 {
    let a = dt / nu;
    if a >= A_INDEP {
        // product of the marginal densities
        return -1.0 / f1.z - 1.0 / f2.z - 2.0 * f1.ln_z - 2.0 * f2.ln_z
            + f1.ln_dz_dx
            + f2.ln_dz_dx;
    }
    if a <= A_DEP {
        // no joint density off the diagonal under perfect dependence
        return f64::NEG_INFINITY;
    }
    let w = 0.5 * a + (f2.ln_z - f1.ln_z) / a;
    let v = a - w;
    let vexp = std_normal_cdf(w) / f1.z + std_normal_cdf(v) / f2.z;
    // bracket = Phi(w)Phi(v)/(z1^2 z2^2) + phi(w)/(a z1^2 z2)
    let t1 = ln_std_normal_cdf(w) + ln_std_normal_cdf(v) - 2.0 * f1.ln_z - 2.0 * f2.ln_z;
    let t2 = ln_std_normal_pdf(w) - a.ln() - 2.0 * f1.ln_z - f2.ln_z;
    -vexp + log_sum_exp(t1, t2) + f1.ln_dz_dx + f2.ln_dz_dx
}

/// Log density of the censored pair `(Y_s, Y_t)` with respect to the
/// product measure `(delta_u + Lebesgue) x (delta_u + Lebesgue)`.
///
/// Four cases: both observations at the atom `u` contribute `ln F(u, u)`;
/// one censored observation contributes the partial derivative of the CDF
/// in the uncensored coordinate; two exceedances contribute the mixed
/// second derivative.
pub fn censored_pair_logdensity(y1: f64, y2: f64, dt: f64, p: &SmithParams) -> Result<f64> {
    if !(dt >= 0.0) {
        return Err(Error::ParameterDomain(format!("time lag must be >= 0, got {dt}")));
    }
    let u = p.u;
    if y1 < u || y2 < u {
        return Err(Error::CensoringViolation(format!(
            "pair ({y1}, {y2}) has a value below threshold {u}"
        )));
    }
    let c1 = y1 == u;
    let c2 = y2 == u;

    let a = dt / p.nu;
    if a >= A_INDEP {
        // independent: marginal factorization covers all four cases
        let l1 = censored_marginal_logdensity(y1, u, &p.margin)?;
        let l2 = censored_marginal_logdensity(y2, u, &p.margin)?;
        return Ok(l1 + l2);
    }

    match (c1, c2) {
        (true, true) => {
            let fu = frechet_parts(u, &p.margin)?;
            // ln F(u, u) = -V(zu, zu); V at equal coordinates is
            // 2 Phi(a/2) / zu, and 1/zu in the perfect-dependence limit.
            if a <= A_DEP {
                Ok(-1.0 / fu.z)
            } else {
                Ok(-2.0 * std_normal_cdf(0.5 * a) / fu.z)
            }
        }
        (false, true) => {
            let f1 = frechet_parts(y1, &p.margin)?;
            let fu = frechet_parts(u, &p.margin)?;
            Ok(ln_dcdf_first(&f1, &fu, dt, p.nu))
        }
        (true, false) => {
            let f2 = frechet_parts(y2, &p.margin)?;
            let fu = frechet_parts(u, &p.margin)?;
            Ok(ln_dcdf_first(&f2, &fu, dt, p.nu))
        }
        (false, false) => {
            let f1 = frechet_parts(y1, &p.margin)?;
            let f2 = frechet_parts(y2, &p.margin)?;
            Ok(ln_d2cdf_parts(&f1, &f2, dt, p.nu))
        }
    }
}

/// Default validation grid for [`pair_density_grad_check`]: exceedance
/// pairs spread over the body and tail of the margin at several lags, all
/// strictly inside the support.
pub fn default_grad_check_grid(margin: &GevMargin) -> Vec<(f64, f64, f64)> {
    let offsets = [0.3, 1.0, 2.2];
    let lags = [0.3, 1.0, 2.5];
    let mut grid = Vec::new();
    for &o1 in &offsets {
        for &o2 in &offsets {
            for &dt in &lags {
                let y1 = margin.mu() + o1 * margin.sigma();
                let y2 = margin.mu() + o2 * margin.sigma();
                if margin.in_support(y1) && margin.in_support(y2) {
                    grid.push((y1, y2, dt));
                }
            }
        }
    }
    grid
}

/// Maximum relative discrepancy between the analytic partial derivatives of
/// the bivariate CDF and central finite differences, over a grid of
/// `(y1, y2, dt)` points. Diagnostic for the hand-derived chain rule.
pub fn pair_density_grad_check(p: &SmithParams, grid: &[(f64, f64, f64)]) -> Result<f64> {
    let h = 3e-4 * p.margin.sigma();
    let mut worst: f64 = 0.0;
    let rel = |analytic: f64, numeric: f64| {
        (analytic - numeric).abs() / analytic.abs().max(1e-300)
    };
    for &(y1, y2, dt) in grid {
        let d1 = ln_dcdf_dx1(y1, y2, dt, p)?.exp();
        let d2 = ln_dcdf_dx2(y1, y2, dt, p)?.exp();
        let d12 = ln_d2cdf(y1, y2, dt, p)?.exp();

        let f = |a: f64, b: f64| bivariate_cdf_gev(a, b, dt, p);
        let fd1 = (f(y1 + h, y2)? - f(y1 - h, y2)?) / (2.0 * h);
        let fd2 = (f(y1, y2 + h)? - f(y1, y2 - h)?) / (2.0 * h);
        let fd12 = (f(y1 + h, y2 + h)? - f(y1 + h, y2 - h)? - f(y1 - h, y2 + h)?
            + f(y1 - h, y2 - h)?)
            / (4.0 * h * h);

        worst = worst.max(rel(d1, fd1)).max(rel(d2, fd2)).max(rel(d12, fd12));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::{gev_logpdf, to_frechet};
    use approx::assert_relative_eq;

    fn params(mu: f64, sigma: f64, xi: f64, nu: f64, u: f64) -> SmithParams {
        SmithParams::new(GevMargin::new(mu, sigma, xi).unwrap(), nu, u).unwrap()
    }

    #[test]
    fn exponent_reference_value() {
        // z1 = z2 = 1, a = 2: V = 2 Phi(1)
        let v = exponent_v(1.0, 1.0, 1.0, 0.5).unwrap();
        assert_relative_eq!(v, 2.0 * std_normal_cdf(1.0), epsilon = 1e-14);
        assert_relative_eq!(v, 1.682689492137086, epsilon = 1e-12);
    }

    #[test]
    fn exponent_limits() {
        // dt = 0: perfect dependence
        let v = exponent_v(0.5, 2.0, 0.0, 0.7).unwrap();
        assert_relative_eq!(v, 2.0, epsilon = 1e-14);
        // tiny nu: independence
        let v = exponent_v(0.5, 2.0, 1.0, 1e-9).unwrap();
        assert_relative_eq!(v, 2.5, epsilon = 1e-14);
    }

    #[test]
    fn exponent_rejects_bad_inputs() {
        assert!(exponent_v(0.0, 1.0, 1.0, 1.0).is_err());
        assert!(exponent_v(1.0, -1.0, 1.0, 1.0).is_err());
        assert!(exponent_v(1.0, 1.0, 1.0, 0.0).is_err());
        assert!(exponent_v(1.0, 1.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn frechet_cdf_reference_points() {
        // perfect dependence collapses to the marginal
        let c = bivariate_cdf_frechet(1.5, 1.5, 0.0, 1.0).unwrap();
        assert_relative_eq!(c, (-1.0f64 / 1.5).exp(), epsilon = 1e-14);
        // independence limit at z1 = z2 = 1: F(1)^2 = e^-2
        let c = bivariate_cdf_frechet(1.0, 1.0, 100.0, 1e-9).unwrap();
        assert_relative_eq!(c, (-2.0f64).exp(), epsilon = 1e-14);
        // closed form at z1 = 1, z2 = 2, a = 1
        let c = bivariate_cdf_frechet(1.0, 2.0, 1.0, 1.0).unwrap();
        let ln2 = 2.0f64.ln();
        let expect = (-(std_normal_cdf(0.5 + ln2) + std_normal_cdf(0.5 - ln2) / 2.0)).exp();
        assert_relative_eq!(c, expect, epsilon = 1e-14);
    }

    #[test]
    fn gev_cdf_composes_transform() {
        let p = params(0.0, 1.0, 0.3, 0.5, f64::NEG_INFINITY);
        // both at mu with dt 0: marginal at mu, e^-1
        let c = bivariate_cdf_gev(0.0, 0.0, 0.0, &p).unwrap();
        assert_relative_eq!(c, (-1.0f64).exp(), epsilon = 1e-12);
        // independence limit
        let p_ind = params(0.0, 1.0, 0.3, 1e-9, f64::NEG_INFINITY);
        let c = bivariate_cdf_gev(0.0, 0.0, 1.0, &p_ind).unwrap();
        assert_relative_eq!(c, (-2.0f64).exp(), epsilon = 1e-12);
        // definitional composition at generic points
        for &(x1, x2, dt) in &[(0.4, 1.7, 0.8), (-0.5, 0.3, 2.0), (2.0, 2.0, 0.1)] {
            let z1 = to_frechet(x1, &p.margin).unwrap();
            let z2 = to_frechet(x2, &p.margin).unwrap();
            assert_relative_eq!(
                bivariate_cdf_gev(x1, x2, dt, &p).unwrap(),
                bivariate_cdf_frechet(z1, z2, dt, p.nu()).unwrap(),
                epsilon = 1e-14
            );
        }
        assert!(bivariate_cdf_gev(-4.0, 0.0, 1.0, &p).is_err()); // off support
    }

    #[test]
    fn pair_density_atom_case() {
        let p = params(0.0, 1.0, 0.1, 0.5, 0.8);
        let l = censored_pair_logdensity(0.8, 0.8, 1.0, &p).unwrap();
        let f = bivariate_cdf_gev(0.8, 0.8, 1.0, &p).unwrap();
        assert_relative_eq!(l, f.ln(), epsilon = 1e-12);
    }

    #[test]
    fn pair_density_uncensored_matches_finite_differences() {
        let p = params(0.0, 1.0, 0.3, 0.5, 0.0);
        let (y1, y2, dt) = (1.0, 2.0, 1.0);
        let l = censored_pair_logdensity(y1, y2, dt, &p).unwrap();
        let h = 1e-4;
        let f = |a: f64, b: f64| bivariate_cdf_gev(a, b, dt, &p).unwrap();
        let fd = (f(y1 + h, y2 + h) - f(y1 + h, y2 - h) - f(y1 - h, y2 + h)
            + f(y1 - h, y2 - h))
            / (4.0 * h * h);
        assert_relative_eq!(l.exp(), fd, max_relative = 1e-5);
    }

    #[test]
    fn pair_density_single_censored_matches_finite_differences() {
        let p = params(0.0, 1.0, 0.3, 0.5, 0.2);
        let dt = 0.7;
        let y = 1.3;
        let h = 1e-5;
        let l = censored_pair_logdensity(y, 0.2, dt, &p).unwrap();
        let fd = (bivariate_cdf_gev(y + h, 0.2, dt, &p).unwrap()
            - bivariate_cdf_gev(y - h, 0.2, dt, &p).unwrap())
            / (2.0 * h);
        assert_relative_eq!(l.exp(), fd, max_relative = 1e-6);
        // mirrored case
        let l = censored_pair_logdensity(0.2, y, dt, &p).unwrap();
        let fd = (bivariate_cdf_gev(0.2, y + h, dt, &p).unwrap()
            - bivariate_cdf_gev(0.2, y - h, dt, &p).unwrap())
            / (2.0 * h);
        assert_relative_eq!(l.exp(), fd, max_relative = 1e-6);
    }

    #[test]
    fn pair_density_independence_factorizes() {
        // within the guard the value is exactly the sum of marginals; just
        // below it the difference is far under 1e-6
        let u = 0.0;
        for &nu in &[1e-9, 1.0 / 70.0] {
            let p = params(0.0, 1.0, 0.3, nu, u);
            for &(y1, y2) in &[(0.0, 0.0), (1.2, 0.0), (1.2, 2.1)] {
                let joint = censored_pair_logdensity(y1, y2, 1.0, &p).unwrap();
                let split = censored_marginal_logdensity(y1, u, &p.margin).unwrap()
                    + censored_marginal_logdensity(y2, u, &p.margin).unwrap();
                assert!((joint - split).abs() < 1e-6, "nu={nu} joint={joint} split={split}");
            }
        }
    }

    #[test]
    fn pair_density_errors() {
        let p = params(0.0, 1.0, 0.1, 0.5, 0.5);
        assert!(matches!(
            censored_pair_logdensity(0.2, 1.0, 1.0, &p),
            Err(Error::CensoringViolation(_))
        ));
        assert!(censored_pair_logdensity(1.0, 1.0, -0.5, &p).is_err());
    }

    #[test]
    fn uncensored_pair_at_tiny_lag_factorizes_to_marginal() {
        // perfect dependence: distinct exceedances have zero joint density,
        // equal-value pairs live on the diagonal only
        let p = params(0.0, 1.0, 0.1, 1e15, 0.0);
        assert_eq!(censored_pair_logdensity(1.0, 2.0, 1.0, &p).unwrap(), f64::NEG_INFINITY);
    }

    #[test]
    fn grad_check_default_grid() {
        for &xi in &[0.3, 0.0] {
            let p = params(0.0, 1.0, xi, 0.5, f64::NEG_INFINITY);
            let grid = default_grad_check_grid(&p.margin);
            let err = pair_density_grad_check(&p, &grid).unwrap();
            assert!(err < 1e-4, "xi = {xi}: max relative error {err}");
        }
    }

    #[test]
    fn partials_symmetric_at_equal_arguments() {
        let p = params(0.0, 1.0, 0.3, 0.5, f64::NEG_INFINITY);
        let d1 = ln_dcdf_dx1(1.1, 1.1, 0.8, &p).unwrap();
        let d2 = ln_dcdf_dx2(1.1, 1.1, 0.8, &p).unwrap();
        assert_relative_eq!(d1, d2, epsilon = 1e-12);
    }

    #[test]
    fn smith_params_validation() {
        let m = GevMargin::new(0.0, 1.0, 0.5).unwrap(); // support (-2, inf)
        assert!(SmithParams::new(m, 0.0, 0.0).is_err());
        assert!(SmithParams::new(m, -1.0, 0.0).is_err());
        assert!(SmithParams::new(m, 1.0, -2.5).is_err()); // u below support
        assert!(SmithParams::new(m, 1.0, f64::NEG_INFINITY).is_ok());
        assert!(SmithParams::new(m, 1.0, 1.0).is_ok());
    }

    #[test]
    fn total_mass_of_censored_pair_is_one() {
        // atom + two line integrals + double integral = 1
        let margin = GevMargin::new(0.0, 1.0, 0.2).unwrap();
        let u = crate::distributions::gev_quantile(0.8, &margin).unwrap();
        let p = SmithParams::new(margin, 0.5, u).unwrap();
        let dt = 1.0;
        let hi = crate::distributions::gev_quantile(1.0 - 1e-9, &margin).unwrap();
        let n = 400;
        let h = (hi - u) / n as f64;
        let grid: Vec<f64> = (0..=n).map(|i| u + i as f64 * h).collect();
        let wts: Vec<f64> = (0..=n)
            .map(|i| {
                if i == 0 || i == n {
                    1.0
                } else if i % 2 == 1 {
                    4.0
                } else {
                    2.0
                }
            })
            .collect();

        let atom = censored_pair_logdensity(u, u, dt, &p).unwrap().exp();
        let mut line1 = 0.0;
        let mut line2 = 0.0;
        for i in 0..=n {
            let y = if i == 0 { u + 1e-12 } else { grid[i] };
            line1 += wts[i] * censored_pair_logdensity(y, u, dt, &p).unwrap().exp();
            line2 += wts[i] * censored_pair_logdensity(u, y, dt, &p).unwrap().exp();
        }
        line1 *= h / 3.0;
        line2 *= h / 3.0;
        let mut double = 0.0;
        for i in 0..=n {
            let y1 = if i == 0 { u + 1e-12 } else { grid[i] };
            let mut row = 0.0;
            for j in 0..=n {
                let y2 = if j == 0 { u + 1e-12 } else { grid[j] };
                row += wts[j] * censored_pair_logdensity(y1, y2, dt, &p).unwrap().exp();
            }
            double += wts[i] * row * h / 3.0;
        }
        double *= h / 3.0;

        let total = atom + line1 + line2 + double;
        assert!((total - 1.0).abs() < 2e-3, "total mass {total}");
    }
}
