use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Buffer (in sites) added to the light cone when choosing a window radius.
pub const LIGHT_CONE_BUFFER: usize = 20;

/// Multiple of the edge width `(max|gamma| t)^{1/3}` added by [`WalkParams::full_mass_radius`].
pub const EDGE_WIDTHS: f64 = 8.0;

/// Couplings closer than this in magnitude (but not equal) are reported as near-degenerate.
pub const NEAR_DEGENERATE_GAP: f64 = 1e-9;

/// Which analytic case a coupling pair falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    /// `|gamma0| != |gamma1|`.
    Generic,
    /// `|gamma0| == |gamma1|`, where amplitudes reduce to Bessel functions.
    EqualMagnitude,
}

/// The coupling pair of the 2-periodic Hamiltonian.
///
/// Bonds `(x, x + 1)` with `x` even carry `gamma0`, bonds with `x` odd carry `gamma1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WalkParams {
    gamma0: f64,
    gamma1: f64,
}

impl WalkParams {
    pub fn new(gamma0: f64, gamma1: f64) -> Result<Self> {
        for (name, value) in [("gamma0", gamma0), ("gamma1", gamma1)] {
            if !value.is_finite() {
                return Err(Error::InvalidParams(format!("{name} must be finite, got {value}")));
            }
            if value == 0.0 {
                return Err(Error::InvalidParams(format!("{name} must be nonzero")));
            }
        }
        Ok(Self { gamma0, gamma1 })
    }

    #[inline]
    pub fn gamma0(&self) -> f64 {
        self.gamma0
    }

    #[inline]
    pub fn gamma1(&self) -> f64 {
        self.gamma1
    }

    /// Exact comparison of magnitudes; see [`WalkParams::is_near_degenerate`] for the fuzzy check.
    pub fn regime(&self) -> Regime {
        if self.gamma0.abs() == self.gamma1.abs() {
            Regime::EqualMagnitude
        } else {
            Regime::Generic
        }
    }

    /// True when the pair is Generic but the magnitudes differ by less than [`NEAR_DEGENERATE_GAP`].
    pub fn is_near_degenerate(&self) -> bool {
        let gap = (self.gamma0.abs() - self.gamma1.abs()).abs();
        gap > 0.0 && gap < NEAR_DEGENERATE_GAP
    }

    /// `|gamma_xi| = min(|gamma0|, |gamma1|)`; the only parameter the limit law depends on.
    pub fn gamma_xi_abs(&self) -> f64 {
        self.gamma0.abs().min(self.gamma1.abs())
    }

    pub fn gamma_max_abs(&self) -> f64 {
        self.gamma0.abs().max(self.gamma1.abs())
    }

    /// Sign of `gamma0 * gamma1` as `+1.0` or `-1.0`.
    pub fn coupling_sign(&self) -> f64 {
        if (self.gamma0 > 0.0) == (self.gamma1 > 0.0) {
            1.0
        } else {
            -1.0
        }
    }

    /// Window radius `ceil(2 max|gamma| t) + 20` that captures the whole light cone.
    pub fn light_cone_radius(&self, t: f64) -> usize {
        (2.0 * self.gamma_max_abs() * t).ceil() as usize + LIGHT_CONE_BUFFER
    }

    /// [`light_cone_radius`](Self::light_cone_radius) widened by `8 (max|gamma| t)^{1/3}` sites,
    /// the width of the Airy-type front past the light cone.
    pub fn full_mass_radius(&self, t: f64) -> usize {
        let width = (self.gamma_max_abs() * t).cbrt();
        self.light_cone_radius(t) + (EDGE_WIDTHS * width).ceil() as usize
    }

    pub(crate) fn require_generic(&self, what: &str) -> Result<()> {
        match self.regime() {
            Regime::Generic => Ok(()),
            Regime::EqualMagnitude => Err(Error::Regime(format!(
                "{what} is only defined for |gamma0| != |gamma1| (got gamma0={}, gamma1={})",
                self.gamma0, self.gamma1
            ))),
        }
    }
}

pub(crate) fn check_time(t: f64) -> Result<()> {
    if t.is_finite() && t >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("time must be finite and nonnegative, got {t}")))
    }
}
