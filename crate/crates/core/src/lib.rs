//! Continuous-time quantum walk on the integers with alternating couplings.
//!
//! The walker starts at the origin and evolves under a nearest-neighbour
//! Hamiltonian whose bond `(x, x + 1)` has strength `gamma0` for even `x` and
//! `gamma1` for odd `x`. The crate computes the amplitudes three independent
//! ways, the band-structure functions behind the long-time behaviour, and the
//! limit law of `X_t / t`.
//!
//! ```
//! use ctqw_core::{distribution, LimitLaw, Method, WalkParams};
//!
//! let params = WalkParams::new(0.5, 1.0).unwrap();
//! let t = 20.0;
//! let dist = distribution(&params, t, params.light_cone_radius(t), Method::FourierQuadrature).unwrap();
//! assert!((dist.captured_mass - 1.0).abs() < 1e-8);
//! let law = LimitLaw::from_params(&params);
//! assert_eq!(law.edge(), 1.0);
//! ```

pub mod amplitudes;
pub mod bessel;
pub mod error;
pub mod lattice;
pub mod limit;
pub mod params;
pub mod quadrature;
pub mod spectral;

pub use amplitudes::{
    amplitude_bessel, amplitude_even, amplitude_field, amplitude_odd, distribution, is_truncated,
    AmplitudeField, Method, PositionDistribution,
};
pub use error::{Error, Result};
pub use limit::{empirical_cdf_distance, empirical_moment, moment_limit_via_h, EmpiricalCdf, LimitLaw};
pub use params::{Regime, WalkParams};
pub use spectral::{Branch, KBranches, SpectralFunction, SpectralProfile};
