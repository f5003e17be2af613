//! Parameter sets shared by the benchmarks.

use ctqw_core::WalkParams;

/// Couplings `(1/(2 sqrt 2), 1/sqrt 2)`, the default generic case.
pub fn generic() -> WalkParams {
    WalkParams::new(1.0 / (2.0 * 2f64.sqrt()), 1.0 / 2f64.sqrt()).expect("valid couplings")
}

/// Equal couplings `1/(2 sqrt 2)`, where the Bessel closed form applies.
pub fn equal() -> WalkParams {
    WalkParams::new(1.0 / (2.0 * 2f64.sqrt()), 1.0 / (2.0 * 2f64.sqrt())).expect("valid couplings")
}
