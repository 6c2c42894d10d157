//! Univariate GEV and GPD distributions, the unit Fréchet marginal
//! transform, and the censored marginal density.
//!
//! These are the scalar building blocks of every likelihood in the crate.
//! All heavy use happens in log space: densities return `-inf` outside the
//! support (so optimizers see a penalty rather than an error) while CDFs
//! clamp to 0 or 1 beyond the support bounds.

use crate::error::{Error, Result};
use serde::Serialize;

/// Shape values closer to zero than this take the Gumbel branch, avoiding
/// catastrophic cancellation in `(1 + xi w)^(-1/xi)`.
pub const XI_GUMBEL_EPS: f64 = 1e-8;

/// GEV margin with location `mu`, scale `sigma > 0` and shape `xi`.
///
/// CDF: `F(x) = exp(-[1 + xi (x - mu)/sigma]^(-1/xi))` for `xi != 0` on
/// `{x : 1 + xi (x - mu)/sigma > 0}`, and
/// `F(x) = exp(-exp(-(x - mu)/sigma))` for `xi = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GevMargin {
    mu: f64,
    sigma: f64,
    xi: f64,
}

impl GevMargin {
    pub fn new(mu: f64, sigma: f64, xi: f64) -> Result<Self> {
        if !mu.is_finite() || !xi.is_finite() || !sigma.is_finite() {
            return Err(Error::ParameterDomain("GEV parameters must be finite".into()));
        }
        if sigma <= 0.0 {
            return Err(Error::ParameterDomain(format!("GEV sigma must be > 0, got {sigma}")));
        }
        Ok(Self { mu, sigma, xi })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    /// Support interval `(lower, upper)`; one side is infinite unless
    /// `xi = 0`, in which case both are.
    pub fn support(&self) -> (f64, f64) {
        if self.xi.abs() < XI_GUMBEL_EPS {
            (f64::NEG_INFINITY, f64::INFINITY)
        } else if self.xi > 0.0 {
            (self.mu - self.sigma / self.xi, f64::INFINITY)
        } else {
            (f64::NEG_INFINITY, self.mu - self.sigma / self.xi)
        }
    }

    /// Whether `x` lies strictly inside the support.
    pub fn in_support(&self, x: f64) -> bool {
        let (lo, hi) = self.support();
        x > lo && x < hi
    }
}

/// GEV cumulative distribution function, clamped to 0 below the lower
/// support bound and 1 above the upper.
pub fn gev_cdf(x: f64, m: &GevMargin) -> f64 {
    let s = (x - m.mu) / m.sigma;
    if m.xi.abs() < XI_GUMBEL_EPS {
        (-(-s).exp()).exp()
    } else {
        let t = 1.0 + m.xi * s;
        if t <= 0.0 {
            if m.xi > 0.0 {
                0.0
            } else {
                1.0
            }
        } else {
            (-t.powf(-1.0 / m.xi)).exp()
        }
    }
}

/// Log density of the GEV distribution; `-inf` outside the support.
pub fn gev_logpdf(x: f64, m: &GevMargin) -> f64 {
    let s = (x - m.mu) / m.sigma;
    if m.xi.abs() < XI_GUMBEL_EPS {
        -m.sigma.ln() - s - (-s).exp()
    } else {
        let t = 1.0 + m.xi * s;
        if t <= 0.0 {
            f64::NEG_INFINITY
        } else {
            -m.sigma.ln() - (1.0 / m.xi + 1.0) * t.ln() - t.powf(-1.0 / m.xi)
        }
    }
}

/// GEV quantile, by closed form so it is exactly branch-consistent with
/// [`gev_cdf`].
pub fn gev_quantile(p: f64, m: &GevMargin) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::ParameterDomain(format!("quantile level must be in (0,1), got {p}")));
    }
    let g = -p.ln(); // -ln p > 0
    Ok(if m.xi.abs() < XI_GUMBEL_EPS {
        m.mu - m.sigma * g.ln()
    } else {
        m.mu + m.sigma * (g.powf(-m.xi) - 1.0) / m.xi
    })
}

/// GPD margin anchored at a threshold: location `mu_threshold`, scale
/// `sigma > 0`, shape `xi`.
///
/// CDF: `G(x) = 1 - (1 + xi (x - mu)/sigma)^(-1/xi)` for `x >= mu` with
/// `1 + xi (x - mu)/sigma >= 0`; exponential when `xi = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GpdMargin {
    mu_threshold: f64,
    sigma: f64,
    xi: f64,
}

impl GpdMargin {
    pub fn new(mu_threshold: f64, sigma: f64, xi: f64) -> Result<Self> {
        if !mu_threshold.is_finite() || !xi.is_finite() || !sigma.is_finite() {
            return Err(Error::ParameterDomain("GPD parameters must be finite".into()));
        }
        if sigma <= 0.0 {
            return Err(Error::ParameterDomain(format!("GPD sigma must be > 0, got {sigma}")));
        }
        Ok(Self { mu_threshold, sigma, xi })
    }

    pub fn mu_threshold(&self) -> f64 {
        self.mu_threshold
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }
}

/// GPD cumulative distribution function, clamped outside the support.
pub fn gpd_cdf(x: f64, g: &GpdMargin) -> f64 {
    if x < g.mu_threshold {
        return 0.0;
    }
    let s = (x - g.mu_threshold) / g.sigma;
    if g.xi.abs() < XI_GUMBEL_EPS {
        1.0 - (-s).exp()
    } else {
        let t = 1.0 + g.xi * s;
        if t <= 0.0 {
            // only reachable for xi < 0, above the upper endpoint
            1.0
        } else {
            1.0 - t.powf(-1.0 / g.xi)
        }
    }
}

/// GPD log density; `-inf` outside the support.
pub fn gpd_logpdf(x: f64, g: &GpdMargin) -> f64 {
    if x < g.mu_threshold {
        return f64::NEG_INFINITY;
    }
    let s = (x - g.mu_threshold) / g.sigma;
    if g.xi.abs() < XI_GUMBEL_EPS {
        -g.sigma.ln() - s
    } else {
        let t = 1.0 + g.xi * s;
        if t <= 0.0 {
            f64::NEG_INFINITY
        } else {
            -g.sigma.ln() - (1.0 / g.xi + 1.0) * t.ln()
        }
    }
}

/// GPD quantile for `p` in (0,1).
pub fn gpd_quantile(p: f64, g: &GpdMargin) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::ParameterDomain(format!("quantile level must be in (0,1), got {p}")));
    }
    let q = 1.0 - p;
    Ok(if g.xi.abs() < XI_GUMBEL_EPS {
        g.mu_threshold - g.sigma * q.ln()
    } else {
        g.mu_threshold + g.sigma * (q.powf(-g.xi) - 1.0) / g.xi
    })
}

/// Pieces of the marginal transform `z = -1/ln F(x)` needed by the
/// bivariate densities: `z`, `ln z` and `ln dz/dx`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct FrechetParts {
    pub z: f64,
    pub ln_z: f64,
    pub ln_dz_dx: f64,
}

pub(crate) fn frechet_parts(x: f64, m: &GevMargin) -> Result<FrechetParts> {
    let s = (x - m.mu) / m.sigma;
    if m.xi.abs() < XI_GUMBEL_EPS {
        // z = exp(s), dz/dx = z / sigma
        Ok(FrechetParts { z: s.exp(), ln_z: s, ln_dz_dx: s - m.sigma.ln() })
    } else {
        let t = 1.0 + m.xi * s;
        if t <= 0.0 {
            return Err(Error::TransformDomain(format!(
                "x = {x} is at or outside the support of the margin"
            )));
        }
        // z = t^(1/xi), dz/dx = z / (sigma t)
        let ln_z = t.ln() / m.xi;
        Ok(FrechetParts { z: ln_z.exp(), ln_z, ln_dz_dx: ln_z - m.sigma.ln() - t.ln() })
    }
}

/// Transform `x` to the unit Fréchet scale, `z = -1/ln F(x)`.
///
/// Requires `x` strictly inside the support so that `0 < F(x) < 1`.
pub fn to_frechet(x: f64, m: &GevMargin) -> Result<f64> {
    frechet_parts(x, m).map(|p| p.z)
}

/// Inverse of [`to_frechet`].
pub fn from_frechet(z: f64, m: &GevMargin) -> Result<f64> {
    if !(z > 0.0) {
        return Err(Error::TransformDomain(format!("Fréchet value must be > 0, got {z}")));
    }
    Ok(if m.xi.abs() < XI_GUMBEL_EPS {
        m.mu + m.sigma * z.ln()
    } else {
        m.mu + m.sigma * (z.powf(m.xi) - 1.0) / m.xi
    })
}

/// Log density of the censored margin with respect to the measure
/// `m(dx) = delta_u(dx) + dx`:
/// `ln F(u)` at the atom `y = u`, and the GEV log density for `y > u`.
pub fn censored_marginal_logdensity(y: f64, u: f64, m: &GevMargin) -> Result<f64> {
    if y < u {
        return Err(Error::CensoringViolation(format!("observation {y} below threshold {u}")));
    }
    if y == u {
        Ok(gev_cdf(u, m).ln())
    } else {
        Ok(gev_logpdf(y, m))
    }
}
