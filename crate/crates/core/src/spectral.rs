//! Momentum-space functions of the 2-periodic walk.
//!
//! `g(k)` is the squared band energy, `I(k)` the off-diagonal symbol of the
//! Bloch Hamiltonian and `h(k) = -d/dk sqrt(g(k))` the group velocity whose
//! distribution under uniform `k` is the limit law of `X_t / t`. On `[0, pi/2]`
//! the velocity has a single extremum `k*`, and every attainable velocity `x`
//! has the two preimages `k_+(x) <= k_-(x)`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{Regime, WalkParams};

/// Slack allowed on `|arccos argument| <= 1` before it is treated as a domain error.
const ACOS_SLACK: f64 = 4.0 * f64::EPSILON;

/// `g(k) = gamma0^2 + gamma1^2 + 2 gamma0 gamma1 cos 2k`.
#[inline]
pub fn g(params: &WalkParams, k: f64) -> f64 {
    let (a, b) = (params.gamma0(), params.gamma1());
    a * a + b * b + 2.0 * a * b * (2.0 * k).cos()
}

/// `I(k) = gamma0 e^{ik} + gamma1 e^{-ik}`, with `|I(k)|^2 = g(k)`.
#[inline]
pub fn i_fn(params: &WalkParams, k: f64) -> Complex64 {
    let (s, c) = k.sin_cos();
    let (a, b) = (params.gamma0(), params.gamma1());
    Complex64::new((a + b) * c, (a - b) * s)
}

fn nonzero_g(params: &WalkParams, k: f64, what: &str) -> Result<f64> {
    let gk = g(params, k);
    if gk > 0.0 {
        Ok(gk)
    } else {
        Err(Error::Domain(format!("{what} is undefined at k={k}: g(k) vanishes")))
    }
}

/// Group velocity `h(k) = 2 gamma0 gamma1 sin 2k / sqrt(g(k))`.
pub fn h(params: &WalkParams, k: f64) -> Result<f64> {
    let gk = nonzero_g(params, k, "h")?;
    Ok(2.0 * params.gamma0() * params.gamma1() * (2.0 * k).sin() / gk.sqrt())
}

/// Closed-form derivative of [`h`].
pub fn h_prime(params: &WalkParams, k: f64) -> Result<f64> {
    let gk = nonzero_g(params, k, "h'")?;
    let (a, b) = (params.gamma0(), params.gamma1());
    let c2 = (2.0 * k).cos();
    Ok(4.0 * a * a * b * b / (gk * gk.sqrt()) * (c2 + b / a) * (c2 + a / b))
}

fn require_generic(params: &WalkParams, what: &str) -> Result<()> {
    match params.regime() {
        Regime::Generic => Ok(()),
        Regime::EqualMagnitude => {
            Err(Error::Domain(format!("{what} is not defined when |gamma0| == |gamma1|")))
        }
    }
}

fn acos_clamped(arg: f64) -> Result<f64> {
    if arg.abs() <= 1.0 {
        Ok(arg.acos())
    } else if arg.abs() <= 1.0 + ACOS_SLACK {
        Ok(arg.signum().acos())
    } else {
        Err(Error::Domain(format!("arccos argument {arg} outside [-1, 1]")))
    }
}

/// The unique extremum of `h` on `[0, pi/2]`.
pub fn k_star(params: &WalkParams) -> Result<f64> {
    require_generic(params, "k*")?;
    let (a, b) = (params.gamma0(), params.gamma1());
    let ratio = if a.abs() > b.abs() { -b / a } else { -a / b };
    Ok(0.5 * acos_clamped(ratio)?)
}

/// Closed interval of velocities reached by `h` on `[0, pi/2]`:
/// `[0, 2|gamma_xi|]` when `gamma0 gamma1 > 0`, `[-2|gamma_xi|, 0]` otherwise.
pub fn velocity_interval(params: &WalkParams) -> (f64, f64) {
    let edge = 2.0 * params.gamma_xi_abs();
    if params.coupling_sign() > 0.0 {
        (0.0, edge)
    } else {
        (-edge, 0.0)
    }
}

/// The two preimages of velocity `x` under `h` restricted to `[0, pi/2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KBranches {
    pub k_plus: f64,
    pub k_minus: f64,
}

/// Solves `h(k) = x` on `[0, pi/2]`, returning `k_+(x) <= k_-(x)`.
///
/// At `x == 0` the limiting pair `(0, pi/2)` is returned; both are exact roots.
pub fn k_branches(params: &WalkParams, x: f64) -> Result<KBranches> {
    require_generic(params, "k_+/k_-")?;
    let (lo, hi) = velocity_interval(params);
    let slack = 4.0 * f64::EPSILON * (hi - lo);
    if !(lo - slack..=hi + slack).contains(&x) {
        return Err(Error::Domain(format!("velocity {x} outside the attainable interval [{lo}, {hi}]")));
    }
    let x = x.clamp(lo, hi);
    if x == 0.0 {
        return Ok(KBranches { k_plus: 0.0, k_minus: FRAC_PI_2 });
    }
    let (a, b) = (params.gamma0(), params.gamma1());
    let x2 = x * x;
    let root = (4.0 * a * a - x2).max(0.0).sqrt() * (4.0 * b * b - x2).max(0.0).sqrt();
    let denom = 4.0 * a * b;
    // For gamma0 gamma1 < 0 the sign in front of the root flips so that k_+ stays the smaller one.
    let signed_root = params.coupling_sign() * root;
    let k_plus = 0.5 * acos_clamped((-x2 + signed_root) / denom)?;
    let k_minus = 0.5 * acos_clamped((-x2 - signed_root) / denom)?;
    Ok(KBranches { k_plus, k_minus })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

/// `f_±(x)`: derivative in `x` of `(1/2) arccos((-x^2 ± sqrt(4 gamma0^2 - x^2) sqrt(4 gamma1^2 - x^2)) / (4 gamma0 gamma1))`.
///
/// The sign label refers to the sign inside the arccos, so for `gamma0 gamma1 > 0` this is
/// `dk_±/dx`, while for `gamma0 gamma1 < 0` it is `dk_∓/dx`. Defined on `0 < |x| < 2|gamma_xi|`.
pub fn f_branch_derivative(params: &WalkParams, x: f64, branch: Branch) -> Result<f64> {
    require_generic(params, "f_+/f_-")?;
    let edge = 2.0 * params.gamma_xi_abs();
    if x == 0.0 || x.abs() >= edge || x.is_nan() {
        return Err(Error::Domain(format!("f_± requires 0 < |x| < {edge}, got x={x}")));
    }
    let (a, b) = (params.gamma0(), params.gamma1());
    let x2 = x * x;
    let ra = (4.0 * a * a - x2).sqrt();
    let rb = (4.0 * b * b - x2).sqrt();
    let s = branch.sign();
    Ok(s * 0.5 * x.signum() * params.coupling_sign() * (ra + s * rb).abs() / (ra * rb))
}

/// Which function a [`SpectralProfile`] samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpectralFunction {
    G,
    AbsI,
    H,
    HPrime,
    KPlus,
    KMinus,
    FPlus,
    FMinus,
}

impl SpectralFunction {
    /// Momentum functions are sampled over `k in [-pi, pi)`, the rest over velocities.
    pub fn is_momentum_function(self) -> bool {
        matches!(self, Self::G | Self::AbsI | Self::H | Self::HPrime)
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::G => "g",
            Self::AbsI => "abs_i",
            Self::H => "h",
            Self::HPrime => "h_prime",
            Self::KPlus => "k_plus",
            Self::KMinus => "k_minus",
            Self::FPlus => "f_plus",
            Self::FMinus => "f_minus",
        }
    }

    pub fn eval(self, params: &WalkParams, arg: f64) -> Result<f64> {
        match self {
            Self::G => Ok(g(params, arg)),
            Self::AbsI => Ok(i_fn(params, arg).norm()),
            Self::H => h(params, arg),
            Self::HPrime => h_prime(params, arg),
            Self::KPlus => k_branches(params, arg).map(|kb| kb.k_plus),
            Self::KMinus => k_branches(params, arg).map(|kb| kb.k_minus),
            Self::FPlus => f_branch_derivative(params, arg, Branch::Plus),
            Self::FMinus => f_branch_derivative(params, arg, Branch::Minus),
        }
    }
}

/// Samples of one spectral function on an increasing grid.
///
/// Grid points where the function is undefined (zeros of `g` for `h`, the endpoints of the
/// open interval for `f_±`) are left out, so every stored sample lies inside the domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralProfile {
    pub function: SpectralFunction,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
}

impl SpectralProfile {
    /// Momentum functions use `points` uniform samples `k_j = -pi + 2 pi j / points`;
    /// velocity functions use `points` samples spanning [`velocity_interval`] inclusively.
    pub fn sample(params: &WalkParams, function: SpectralFunction, points: usize) -> Result<Self> {
        if points < 2 {
            return Err(Error::InvalidArgument(format!(
                "a profile needs at least 2 grid points, got {points}"
            )));
        }
        let raw_grid: Vec<f64> = if function.is_momentum_function() {
            (0..points).map(|j| -PI + 2.0 * PI * j as f64 / points as f64).collect()
        } else {
            require_generic(params, function.name())?;
            let (lo, hi) = velocity_interval(params);
            let last = (points - 1) as f64;
            (0..points)
                .map(|j| match j {
                    0 => lo,
                    j if j == points - 1 => hi,
                    j => lo + (hi - lo) * j as f64 / last,
                })
                .collect()
        };
        let mut grid = Vec::with_capacity(points);
        let mut values = Vec::with_capacity(points);
        for arg in raw_grid {
            match function.eval(params, arg) {
                Ok(v) => {
                    grid.push(arg);
                    values.push(v);
                }
                Err(Error::Domain(_)) => {}
                Err(e) => return Err(e),
            }
        }
        Ok(Self { function, grid, values })
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }
}
