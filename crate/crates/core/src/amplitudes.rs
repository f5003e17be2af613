//! Position amplitudes `psi_t(x)` of the walk started from `delta_0`.
//!
//! Three routes are available: the Fourier integral representation evaluated by
//! quadrature, the Bessel closed form (only when `|gamma0| == |gamma1|`), and the
//! lattice oracle in [`crate::lattice`].

use std::f64::consts::FRAC_2_PI;
use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bessel::bessel_j_sequence;
use crate::error::{Error, Result};
use crate::lattice;
use crate::params::{check_time, Regime, WalkParams};
use crate::quadrature::{self, AdaptiveOptions, GaussLegendre};
use crate::spectral::g;

/// Gauss–Legendre points per quadrature panel for the amplitude integrals.
const PANEL_ORDER: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    FourierQuadrature,
    Bessel,
    LatticeOracle,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::FourierQuadrature => "quadrature",
            Method::Bessel => "bessel",
            Method::LatticeOracle => "lattice",
        }
    }

    /// Bessel in the equal-magnitude regime, quadrature otherwise.
    pub fn preferred_for(params: &WalkParams) -> Self {
        match params.regime() {
            Regime::Generic => Method::FourierQuadrature,
            Regime::EqualMagnitude => Method::Bessel,
        }
    }
}

/// Initial quadrature node count: the integrand oscillates at rates up to `~t max|gamma|`
/// from the dispersion and `~2|n|` from the Fourier factor.
fn initial_nodes(params: &WalkParams, n: i64, t: f64) -> usize {
    let rate = t * params.gamma_max_abs() + n.unsigned_abs() as f64;
    ((10.0 * rate).ceil() as usize).max(64)
}

fn options(params: &WalkParams, n: i64, t: f64) -> AdaptiveOptions {
    AdaptiveOptions { order: PANEL_ORDER, ..AdaptiveOptions::default() }
        .with_initial_nodes(initial_nodes(params, n, t))
}

/// `sin(sqrt(g) t) / sqrt(g)`, continuous through `g = 0` where it tends to `t`.
#[inline]
fn sin_over_root(gk: f64, t: f64) -> f64 {
    let root = gk.max(0.0).sqrt();
    let phase = root * t;
    if phase < 1e-4 {
        let p2 = phase * phase;
        t * (1.0 - p2 / 6.0 * (1.0 - p2 / 20.0))
    } else {
        phase.sin() / root
    }
}

fn delta(x: i64) -> Complex64 {
    if x == 0 {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::new(0.0, 0.0)
    }
}

fn even_integral(rule: &GaussLegendre, params: &WalkParams, n: i64, t: f64) -> Result<f64> {
    let two_n = 2.0 * n as f64;
    let res = quadrature::integrate_with_rule(
        rule,
        |k| FRAC_2_PI * (two_n * k).cos() * (g(params, k).sqrt() * t).cos(),
        0.0,
        FRAC_PI_2,
        &options(params, n, t),
    )?;
    Ok(res.value)
}

fn odd_integral(rule: &GaussLegendre, params: &WalkParams, n: i64, t: f64) -> Result<f64> {
    let (a, b) = (params.gamma0(), params.gamma1());
    let (two_n, two_n2) = (2.0 * n as f64, 2.0 * (n + 1) as f64);
    // Zeros of g only occur at k = 0 or k = pi/2, the interval ends, which Gauss nodes never hit.
    let res = quadrature::integrate_with_rule(
        rule,
        |k| FRAC_2_PI * (a * (two_n * k).cos() + b * (two_n2 * k).cos()) * sin_over_root(g(params, k), t),
        0.0,
        FRAC_PI_2,
        &options(params, if n < 0 { n } else { n + 1 }, t),
    )?;
    Ok(res.value)
}

/// `psi_t(2n)` from its Fourier integral; always real.
pub fn amplitude_even(params: &WalkParams, n: i64, t: f64) -> Result<Complex64> {
    check_time(t)?;
    if t == 0.0 {
        return Ok(delta(2 * n));
    }
    let rule = GaussLegendre::new(PANEL_ORDER);
    Ok(Complex64::new(even_integral(&rule, params, n, t)?, 0.0))
}

/// `psi_t(2n + 1)` from its Fourier integral; always purely imaginary.
///
/// Also valid when `|gamma0| == |gamma1|`: the `1/sqrt(g)` factor only appears as
/// `sin(sqrt(g) t) / sqrt(g)`, which is smooth through the zeros of `g`.
pub fn amplitude_odd(params: &WalkParams, n: i64, t: f64) -> Result<Complex64> {
    check_time(t)?;
    if t == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let rule = GaussLegendre::new(PANEL_ORDER);
    Ok(Complex64::new(0.0, -odd_integral(&rule, params, n, t)?))
}

/// Phase in front of `J_{|x|}(2|gamma| t)` for the equal-magnitude closed forms.
fn bessel_phase(params: &WalkParams, x: i64) -> Complex64 {
    let s = params.gamma0().signum();
    let m = x.unsigned_abs();
    let same_sign = params.gamma0() == params.gamma1();
    if m.is_multiple_of(2) {
        // gamma1 = gamma0: (-1)^{|x|/2}; gamma1 = -gamma0: 1.
        let sign = if same_sign && (m / 2) % 2 == 1 { -1.0 } else { 1.0 };
        Complex64::new(sign, 0.0)
    } else if same_sign {
        // -i^{2n+1} s = -(-1)^n i s, with |x| = 2n + 1 on either side.
        let n = (m - 1) / 2;
        let sign = if n.is_multiple_of(2) { -1.0 } else { 1.0 };
        Complex64::new(0.0, sign * s)
    } else if x > 0 {
        Complex64::new(0.0, -s)
    } else {
        Complex64::new(0.0, s)
    }
}

fn require_equal_magnitude(params: &WalkParams) -> Result<()> {
    match params.regime() {
        Regime::EqualMagnitude => Ok(()),
        Regime::Generic => Err(Error::Regime(format!(
            "the Bessel closed form needs |gamma0| == |gamma1| (got gamma0={}, gamma1={})",
            params.gamma0(),
            params.gamma1()
        ))),
    }
}

/// `psi_t(x)` in closed form when `gamma1 = ±gamma0`; `|psi_t(x)|^2 = J_{|x|}(2|gamma| t)^2`.
pub fn amplitude_bessel(params: &WalkParams, x: i64, t: f64) -> Result<Complex64> {
    require_equal_magnitude(params)?;
    check_time(t)?;
    let m = x.unsigned_abs() as usize;
    let j = crate::bessel::bessel_j(m as i64, 2.0 * params.gamma0().abs() * t);
    Ok(bessel_phase(params, x) * j)
}

/// Complex amplitudes on the window `{-R, ..., R}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeField {
    pub t: f64,
    pub radius: usize,
    pub method: Method,
    values: Vec<Complex64>,
}

impl AmplitudeField {
    pub(crate) fn from_values(t: f64, radius: usize, method: Method, values: Vec<Complex64>) -> Self {
        debug_assert_eq!(values.len(), 2 * radius + 1);
        Self { t, radius, method, values }
    }

    /// Amplitude at position `x`, or `None` outside the window.
    pub fn get(&self, x: i64) -> Option<Complex64> {
        let r = self.radius as i64;
        (-r..=r).contains(&x).then(|| self.values[(x + r) as usize])
    }

    /// Values ordered by position from `-R` to `R`.
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn positions(&self) -> impl Iterator<Item = i64> {
        let r = self.radius as i64;
        -r..=r
    }

    pub fn norm_sqr(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum()
    }

    pub fn to_distribution(&self) -> PositionDistribution {
        let probs = self.values.iter().map(|v| v.norm_sqr()).collect();
        PositionDistribution::new(self.t, self.radius, self.method, probs)
    }
}

/// `P(X_t = x) = |psi_t(x)|^2` on the window `{-R, ..., R}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PositionDistribution {
    pub t: f64,
    pub radius: usize,
    pub method: Method,
    pub captured_mass: f64,
    probs: Vec<f64>,
}

impl PositionDistribution {
    pub fn new(t: f64, radius: usize, method: Method, probs: Vec<f64>) -> Self {
        assert_eq!(probs.len(), 2 * radius + 1, "probabilities must cover {{-R, ..., R}}");
        let captured_mass = probs.iter().sum();
        Self { t, radius, method, captured_mass, probs }
    }

    pub fn prob(&self, x: i64) -> f64 {
        let r = self.radius as i64;
        if (-r..=r).contains(&x) {
            self.probs[(x + r) as usize]
        } else {
            0.0
        }
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn positions(&self) -> impl Iterator<Item = i64> {
        let r = self.radius as i64;
        -r..=r
    }

    /// Mass on even and odd sites.
    pub fn parity_masses(&self) -> (f64, f64) {
        self.positions()
            .zip(&self.probs)
            .fold((0.0, 0.0), |(e, o), (x, &p)| if x % 2 == 0 { (e + p, o) } else { (e, o + p) })
    }
}

/// True when the window radius is below the light-cone rule `ceil(2 max|gamma| t) + 20`.
pub fn is_truncated(params: &WalkParams, t: f64, radius: usize) -> bool {
    radius < params.light_cone_radius(t)
}

fn quadrature_field(params: &WalkParams, t: f64, radius: usize) -> Result<Vec<Complex64>> {
    let r = radius as i64;
    let rule = GaussLegendre::new(PANEL_ORDER);
    let evens: Vec<f64> =
        (0..=r / 2).into_par_iter().map(|n| even_integral(&rule, params, n, t)).collect::<Result<_>>()?;
    // Odd sites x = 2n + 1 in the window: n from -(r + 1) / 2 to (r - 1) / 2.
    let odd_ns: Vec<i64> = (-r..=r).filter(|x| x.rem_euclid(2) == 1).map(|x| (x - 1) / 2).collect();
    let odds: Vec<f64> =
        odd_ns.par_iter().map(|&n| odd_integral(&rule, params, n, t)).collect::<Result<_>>()?;
    let mut values = vec![Complex64::new(0.0, 0.0); 2 * radius + 1];
    for (x, slot) in (-r..=r).zip(values.iter_mut()) {
        *slot = if x.rem_euclid(2) == 0 {
            Complex64::new(evens[(x.abs() / 2) as usize], 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        };
    }
    for (&n, &v) in odd_ns.iter().zip(&odds) {
        values[(2 * n + 1 + r) as usize] = Complex64::new(0.0, -v);
    }
    Ok(values)
}

fn bessel_field(params: &WalkParams, t: f64, radius: usize) -> Result<Vec<Complex64>> {
    require_equal_magnitude(params)?;
    let js = bessel_j_sequence(radius, 2.0 * params.gamma0().abs() * t);
    let r = radius as i64;
    Ok((-r..=r).map(|x| bessel_phase(params, x) * js[x.unsigned_abs() as usize]).collect())
}

/// Amplitudes on `{-R, ..., R}` at time `t` by the chosen method.
///
/// Quadrature and Bessel evaluate each `|2n|` once, so `psi(-2n) == psi(2n)` holds exactly;
/// the lattice oracle satisfies it only up to truncation effects.
pub fn amplitude_field(params: &WalkParams, t: f64, radius: usize, method: Method) -> Result<AmplitudeField> {
    check_time(t)?;
    let values = if t == 0.0 && method != Method::LatticeOracle {
        let r = radius as i64;
        (-r..=r).map(delta).collect()
    } else {
        match method {
            Method::FourierQuadrature => quadrature_field(params, t, radius)?,
            Method::Bessel => bessel_field(params, t, radius)?,
            Method::LatticeOracle => return lattice::evolve(params, t, radius),
        }
    };
    Ok(AmplitudeField::from_values(t, radius, method, values))
}

/// Position distribution on `{-R, ..., R}` at time `t`.
pub fn distribution(
    params: &WalkParams,
    t: f64,
    radius: usize,
    method: Method,
) -> Result<PositionDistribution> {
    if method == Method::Bessel {
        require_equal_magnitude(params)?;
    }
    Ok(amplitude_field(params, t, radius, method)?.to_distribution())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bessel::bessel_j;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

    fn p(a: f64, b: f64) -> WalkParams {
        WalkParams::new(a, b).unwrap()
    }

    const G_SMALL: f64 = 1.0 / (2.0 * SQRT_2);

    #[test]
    fn initial_condition() {
        let q = p(G_SMALL, FRAC_1_SQRT_2);
        assert_eq!(amplitude_even(&q, 0, 0.0).unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(amplitude_even(&q, 3, 0.0).unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(amplitude_odd(&q, -2, 0.0).unwrap(), Complex64::new(0.0, 0.0));
        let d = distribution(&q, 0.0, 5, Method::FourierQuadrature).unwrap();
        assert_eq!(d.prob(0), 1.0);
        assert_eq!(d.captured_mass, 1.0);
    }

    #[test]
    fn small_time_matches_taylor_expansion() {
        // psi(1) = -i gamma0 t + O(t^3), psi(-1) = -i gamma1 t + O(t^3),
        // psi(2) = -gamma0 gamma1 t^2 / 2 + O(t^4).
        let q = p(0.8, -0.3);
        let t = 1e-3;
        assert_abs_diff_eq!(amplitude_odd(&q, 0, t).unwrap().im, -0.8 * t, epsilon = 1e-9);
        assert_abs_diff_eq!(amplitude_odd(&q, -1, t).unwrap().im, 0.3 * t, epsilon = 1e-9);
        assert_abs_diff_eq!(amplitude_even(&q, 1, t).unwrap().re, 0.8 * 0.3 * t * t / 2.0, epsilon = 1e-12);
    }

    #[test]
    fn even_amplitude_equal_magnitude_example() {
        let q = p(G_SMALL, G_SMALL);
        let got = amplitude_even(&q, 1, 3.0).unwrap();
        let want = -bessel_j(2, 3.0 / SQRT_2);
        assert_abs_diff_eq!(got.re, want, epsilon = 1e-12);
        assert_eq!(got.im, 0.0);
    }

    #[test]
    fn odd_amplitude_equal_magnitude_example() {
        for gamma in [0.3, 1.1] {
            let q = p(gamma, gamma);
            let got = amplitude_odd(&q, 0, 2.0).unwrap();
            assert_eq!(got.re, 0.0);
            assert_abs_diff_eq!(got.im, -bessel_j(1, 4.0 * gamma), epsilon = 1e-12);
        }
    }

    #[test]
    fn odd_amplitudes_are_asymmetric() {
        let q = p(G_SMALL, FRAC_1_SQRT_2);
        let right = amplitude_odd(&q, 0, 5.0).unwrap().norm();
        let left = amplitude_odd(&q, -1, 5.0).unwrap().norm();
        assert!((right - left).abs() > 1e-3, "{right} vs {left}");
    }

    #[test]
    fn bessel_closed_forms_by_family() {
        let t = 3.0;
        let z = 2.0 * 0.4 * t;
        let same = p(0.4, 0.4);
        for x in -6..=6i64 {
            let v = amplitude_bessel(&same, x, t).unwrap();
            let j = bessel_j(x.abs(), z);
            assert_abs_diff_eq!(v.norm_sqr(), j * j, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(amplitude_bessel(&same, 0, t).unwrap().re, bessel_j(0, z), epsilon = 1e-15);

        let opposite = p(0.4, -0.4);
        let right = amplitude_bessel(&opposite, 1, t).unwrap();
        let left = amplitude_bessel(&opposite, -1, t).unwrap();
        assert_eq!(right, -left);
        assert_abs_diff_eq!(right.im, -bessel_j(1, z), epsilon = 1e-15);
    }

    #[test]
    fn negative_half_couplings_give_i_power_bessel() {
        // gamma0 = gamma1 = -1/2 gives psi_t(x) = i^{|x|} J_{|x|}(t).
        let q = p(-0.5, -0.5);
        let t = 4.7;
        for x in -7..=7i64 {
            let i_pow = Complex64::new(0.0, 1.0).powu(x.unsigned_abs() as u32);
            let want = i_pow * bessel_j(x.abs(), t);
            let got = amplitude_bessel(&q, x, t).unwrap();
            assert_abs_diff_eq!((got - want).norm(), 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn bessel_requires_equal_magnitude() {
        let q = p(0.3, 0.5);
        assert!(matches!(amplitude_bessel(&q, 0, 1.0), Err(Error::Regime(_))));
        assert!(matches!(distribution(&q, 1.0, 10, Method::Bessel), Err(Error::Regime(_))));
    }

    #[test]
    fn negative_time_is_rejected() {
        let q = p(0.3, 0.5);
        assert!(matches!(amplitude_even(&q, 0, -1.0), Err(Error::InvalidArgument(_))));
        assert!(matches!(
            distribution(&q, f64::NAN, 3, Method::FourierQuadrature),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn quadrature_field_structure() {
        for q in [p(G_SMALL, FRAC_1_SQRT_2), p(1.0, -0.5), p(0.5, -0.5)] {
            let t = 7.5;
            let radius = q.light_cone_radius(t);
            let field = amplitude_field(&q, t, radius, Method::FourierQuadrature).unwrap();
            assert_abs_diff_eq!(field.norm_sqr(), 1.0, epsilon = 1e-10);
            for x in field.positions() {
                let v = field.get(x).unwrap();
                if x % 2 == 0 {
                    assert_eq!(v.im, 0.0);
                    assert_eq!(field.get(-x).unwrap(), v);
                } else {
                    assert_eq!(v.re, 0.0);
                }
            }
            let dist = field.to_distribution();
            let (even, odd) = dist.parity_masses();
            assert_abs_diff_eq!(even + odd, 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn quadrature_agrees_with_bessel_in_equal_magnitude_regime() {
        for q in [p(G_SMALL, G_SMALL), p(G_SMALL, -G_SMALL), p(-0.7, 0.7)] {
            for t in [1.0, 13.0, 50.0] {
                let radius = q.light_cone_radius(t);
                let a = amplitude_field(&q, t, radius, Method::FourierQuadrature).unwrap();
                let b = amplitude_field(&q, t, radius, Method::Bessel).unwrap();
                let max = a.values().iter().zip(b.values()).map(|(u, v)| (u - v).norm()).fold(0.0, f64::max);
                assert!(max < 1e-8, "{q:?} t={t}: {max:e}");
            }
        }
    }

    #[test]
    fn window_accessors() {
        let q = p(0.5, 0.5);
        let field = amplitude_field(&q, 1.0, 4, Method::Bessel).unwrap();
        assert_eq!(field.positions().count(), 9);
        assert!(field.get(5).is_none());
        let dist = field.to_distribution();
        assert_eq!(dist.prob(-9), 0.0);
        assert!(is_truncated(&q, 1.0, 4));
        assert!(!is_truncated(&q, 1.0, 21));
    }
}
