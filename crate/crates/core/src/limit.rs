//! The arcsine-type limit law of `X_t / t` and comparisons against finite-time data.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::amplitudes::PositionDistribution;
use crate::error::{Error, Result};
use crate::params::WalkParams;
use crate::quadrature::{self, AdaptiveOptions};
use crate::spectral::h;

/// Smallest captured mass accepted by the empirical statistics.
pub const MIN_CAPTURED_MASS: f64 = 1.0 - 1e-6;

/// Uniform support points added to the step points in the Kolmogorov distance.
const KS_GRID_POINTS: usize = 1000;

/// Density `1 / (pi sqrt(4 gamma^2 - y^2))` on `(-2|gamma|, 2|gamma|)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LimitLaw {
    gamma_xi_abs: f64,
}

impl LimitLaw {
    pub fn new(gamma_xi_abs: f64) -> Result<Self> {
        if !(gamma_xi_abs.is_finite() && gamma_xi_abs > 0.0) {
            return Err(Error::InvalidParams(format!(
                "limit law scale must be finite and positive, got {gamma_xi_abs}"
            )));
        }
        Ok(Self { gamma_xi_abs })
    }

    /// Scale `min(|gamma0|, |gamma1|)`; in the equal-magnitude case that is `|gamma0|`.
    pub fn from_params(params: &WalkParams) -> Self {
        Self { gamma_xi_abs: params.gamma_xi_abs() }
    }

    pub fn gamma_xi_abs(&self) -> f64 {
        self.gamma_xi_abs
    }

    /// Half-width `2|gamma_xi|` of the support.
    pub fn edge(&self) -> f64 {
        2.0 * self.gamma_xi_abs
    }

    pub fn support(&self) -> (f64, f64) {
        (-self.edge(), self.edge())
    }

    pub fn density(&self, y: f64) -> f64 {
        let a = self.edge();
        if y.abs() < a {
            1.0 / (PI * ((a - y) * (a + y)).sqrt())
        } else {
            0.0
        }
    }

    pub fn cdf(&self, y: f64) -> f64 {
        let a = self.edge();
        if y <= -a {
            0.0
        } else if y >= a {
            1.0
        } else {
            0.5 + (y / a).asin() / PI
        }
    }

    /// `E[Y^r]`: zero for odd `r`, `(2 gamma)^r C(r, r/2) / 2^r` for even `r`.
    pub fn moment(&self, r: u32) -> f64 {
        if r % 2 == 1 {
            return 0.0;
        }
        // C(r, r/2) / 2^r as a running product keeps large r finite.
        let half = r / 2;
        let central = (1..=half).fold(1.0, |acc, j| acc * (half + j) as f64 / (4.0 * j as f64));
        self.edge().powi(r as i32) * central
    }

    /// `1 / (pi sqrt(4 gamma^2 t^2 - x^2))` for `|x| < 2|gamma| t`, else 0.
    pub fn finite_t_approximation(&self, x: i64, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        let a = self.edge() * t;
        let x = x as f64;
        if x.abs() < a {
            1.0 / (PI * ((a - x) * (a + x)).sqrt())
        } else {
            0.0
        }
    }
}

/// `(1/pi) (int_0^{pi/2} h^r dk + int_0^{pi/2} (-h)^r dk)`, which reproduces the limit moments.
pub fn moment_limit_via_h(params: &WalkParams, r: u32) -> Result<f64> {
    params.require_generic("moment_limit_via_h")?;
    if r % 2 == 1 {
        return Ok(0.0);
    }
    let opts = AdaptiveOptions { rel_tol: 1e-12, abs_tol: 1e-14, ..AdaptiveOptions::default() };
    let res = quadrature::integrate(
        |k| h(params, k).map(|v| v.powi(r as i32)).unwrap_or(f64::NAN),
        0.0,
        FRAC_PI_2,
        &opts,
    )?;
    if !res.value.is_finite() {
        return Err(Error::Domain("h is undefined inside (0, pi/2)".into()));
    }
    Ok(2.0 * res.value / PI)
}

fn check_mass(dist: &PositionDistribution) -> Result<()> {
    if dist.captured_mass >= MIN_CAPTURED_MASS {
        Ok(())
    } else {
        Err(Error::Mass { captured: dist.captured_mass, required: MIN_CAPTURED_MASS })
    }
}

/// Positions are divided by `t`; at `t = 0` they are left unscaled.
fn scale(t: f64) -> f64 {
    if t > 0.0 {
        1.0 / t
    } else {
        1.0
    }
}

/// `E[(X_t / t)^r]` from a computed distribution.
pub fn empirical_moment(dist: &PositionDistribution, r: u32) -> Result<f64> {
    check_mass(dist)?;
    let s = scale(dist.t);
    Ok(dist.positions().zip(dist.probs()).map(|(x, &p)| (x as f64 * s).powi(r as i32) * p).sum())
}

/// Right-continuous CDF of `X_t / t`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalCdf {
    points: Vec<f64>,
    cumulative: Vec<f64>,
}

impl EmpiricalCdf {
    pub fn new(dist: &PositionDistribution) -> Result<Self> {
        check_mass(dist)?;
        let s = scale(dist.t);
        let points = dist.positions().map(|x| x as f64 * s).collect();
        let mut acc = 0.0;
        let cumulative = dist
            .probs()
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect();
        Ok(Self { points, cumulative })
    }

    pub fn eval(&self, y: f64) -> f64 {
        match self.points.partition_point(|&p| p <= y) {
            0 => 0.0,
            i => self.cumulative[i - 1],
        }
    }

    /// Kolmogorov distance to `law`, using both one-sided limits at each step and a uniform grid.
    pub fn distance(&self, law: &LimitLaw) -> f64 {
        let mut worst: f64 = 0.0;
        let mut below = 0.0;
        for (&y, &above) in self.points.iter().zip(&self.cumulative) {
            let f = law.cdf(y);
            worst = worst.max((below - f).abs()).max((above - f).abs());
            below = above;
        }
        let (lo, hi) = law.support();
        for j in 0..=KS_GRID_POINTS {
            let y = lo + (hi - lo) * j as f64 / KS_GRID_POINTS as f64;
            worst = worst.max((self.eval(y) - law.cdf(y)).abs());
        }
        worst
    }
}

/// Kolmogorov distance between the law of `X_t / t` and the limit CDF.
pub fn empirical_cdf_distance(dist: &PositionDistribution, law: &LimitLaw) -> Result<f64> {
    Ok(EmpiricalCdf::new(dist)?.distance(law))
}
