//! The invariant suite behind `ctqw validate`.

use std::f64::consts::PI;

use serde::Serialize;
use serde_json::json;

use ctqw_core::bessel::bessel_j;
use ctqw_core::spectral::{f_branch_derivative, g, h, i_fn, k_branches, k_star, velocity_interval, Branch};
use ctqw_core::{
    amplitude_field, distribution, empirical_cdf_distance, empirical_moment, moment_limit_via_h,
    AmplitudeField, LimitLaw, Method, Regime, WalkParams,
};

use crate::config::RunConfig;
use crate::table::{Cell, Table};

/// Convergence checks are calibrated at this time and later.
pub const CONVERGENCE_MIN_TIME: f64 = 500.0;
/// Largest lattice the suite is willing to diagonalise.
const LATTICE_MAX_RADIUS: usize = 1500;

const NORMALIZATION_TIMES: [f64; 4] = [1.0, 5.0, 20.0, 100.0];
const CROSS_CHECK_TIMES: [f64; 2] = [10.0, 20.0];
const SYMMETRY_TIME: f64 = 20.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub check: String,
    pub status: Status,
    pub measured: Option<f64>,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    /// Passes when `measured <= tolerance`.
    fn at_most(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        let status = if measured <= tolerance { Status::Pass } else { Status::Fail };
        Self { check: name.into(), status, measured: Some(measured), tolerance, note: None }
    }

    /// Passes when `measured > tolerance`.
    fn above(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        let status = if measured > tolerance { Status::Pass } else { Status::Fail };
        let note = Some("passes when measured exceeds tolerance".to_string());
        Self { check: name.into(), status, measured: Some(measured), tolerance, note }
    }

    fn skip(name: impl Into<String>, tolerance: f64, why: &str) -> Self {
        Self { check: name.into(), status: Status::Skip, measured: None, tolerance, note: Some(why.into()) }
    }

    fn error(name: impl Into<String>, tolerance: f64, err: impl std::fmt::Display) -> Self {
        Self {
            check: name.into(),
            status: Status::Fail,
            measured: None,
            tolerance,
            note: Some(err.to_string()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub gamma0: f64,
    pub gamma1: f64,
    pub time: f64,
    pub regime: &'static str,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| c.status == Status::Fail).count()
    }

    pub fn to_table(&self) -> Table {
        let mut table = Table::new(&["check", "status", "measured", "tolerance"]);
        table
            .meta("command", "validate")
            .meta("gamma0", format!("{:.17e}", self.gamma0))
            .meta("gamma1", format!("{:.17e}", self.gamma1))
            .meta("time", format!("{:.17e}", self.time))
            .meta("passed", self.passed);
        for c in &self.checks {
            table.push(vec![
                Cell::Text(c.check.clone()),
                Cell::Text(c.status.as_str().to_string()),
                c.measured.into(),
                c.tolerance.into(),
            ]);
        }
        table
    }
}

fn max_diff(a: &AmplitudeField, b: &AmplitudeField) -> f64 {
    a.values().iter().zip(b.values()).map(|(u, v)| (u - v).norm()).fold(0.0, f64::max)
}

fn lattice_fits(params: &WalkParams, t: f64) -> bool {
    params.light_cone_radius(t) <= LATTICE_MAX_RADIUS
}

fn valid_methods(params: &WalkParams) -> Vec<Method> {
    match params.regime() {
        Regime::Generic => vec![Method::FourierQuadrature, Method::LatticeOracle],
        Regime::EqualMagnitude => vec![Method::FourierQuadrature, Method::Bessel, Method::LatticeOracle],
    }
}

fn amplitude_checks(params: &WalkParams, out: &mut Vec<Check>) {
    for method in valid_methods(params) {
        let name = format!("initial_condition_{}", method.name());
        match distribution(params, 0.0, 3, method) {
            Ok(d) => {
                let err = d
                    .positions()
                    .map(|x| (d.prob(x) - if x == 0 { 1.0 } else { 0.0 }).abs())
                    .fold(0.0, f64::max);
                out.push(Check::at_most(name, err, 1e-12));
            }
            Err(e) => out.push(Check::error(name, 1e-12, e)),
        }
    }

    for method in valid_methods(params) {
        for t in NORMALIZATION_TIMES {
            let name = format!("normalization_{}_t{t}", method.name());
            if method == Method::LatticeOracle && !lattice_fits(params, t) {
                out.push(Check::skip(name, 1e-8, "lattice too large for the validation budget"));
                continue;
            }
            match distribution(params, t, params.light_cone_radius(t), method) {
                Ok(d) => out.push(Check::at_most(name, (d.captured_mass - 1.0).abs(), 1e-8)),
                Err(e) => out.push(Check::error(name, 1e-8, e)),
            }
        }
    }

    let t = SYMMETRY_TIME;
    let r = params.light_cone_radius(t);
    match amplitude_field(params, t, r, Method::FourierQuadrature) {
        Ok(f) => {
            let ri = r as i64;
            let even = (0..=ri / 2)
                .map(|n| (f.get(2 * n).unwrap() - f.get(-2 * n).unwrap()).norm())
                .fold(0.0, f64::max);
            out.push(Check::at_most("even_symmetry", even, 0.0));
            let odd = (0..ri / 2)
                .map(|n| (f.get(2 * n + 1).unwrap().norm() - f.get(-2 * n - 1).unwrap().norm()).abs())
                .fold(0.0, f64::max);
            if params.regime() == Regime::Generic {
                out.push(Check::above("odd_asymmetry", odd, 1e-4));
            } else {
                out.push(Check::at_most("odd_symmetry_equal_magnitude", odd, 1e-12));
            }
        }
        Err(e) => out.push(Check::error("even_symmetry", 0.0, e)),
    }

    for t in CROSS_CHECK_TIMES {
        let r = params.light_cone_radius(t);
        let fields: Vec<_> = valid_methods(params)
            .into_iter()
            .filter(|&m| m != Method::LatticeOracle || lattice_fits(params, t))
            .map(|m| (m, amplitude_field(params, t, r, m)))
            .collect();
        for i in 0..fields.len() {
            for j in i + 1..fields.len() {
                let name = format!("{}_vs_{}_t{t}", fields[i].0.name(), fields[j].0.name());
                match (&fields[i].1, &fields[j].1) {
                    (Ok(a), Ok(b)) => out.push(Check::at_most(name, max_diff(a, b), 1e-6)),
                    (Err(e), _) | (_, Err(e)) => out.push(Check::error(name, 1e-6, e)),
                }
            }
        }
        if params.regime() == Regime::EqualMagnitude {
            let z = 2.0 * params.gamma0().abs() * t;
            for (m, field) in &fields {
                let name = format!("bessel_probabilities_{}_t{t}", m.name());
                match field {
                    Ok(f) => {
                        let err = f
                            .positions()
                            .zip(f.values())
                            .map(|(x, v)| (v.norm_sqr() - bessel_j(x.abs(), z).powi(2)).abs())
                            .fold(0.0, f64::max);
                        out.push(Check::at_most(name, err, 1e-8));
                    }
                    Err(e) => out.push(Check::error(name, 1e-8, e)),
                }
            }
        }
    }
}

/// Relative error with a floor of one on the reference magnitude.
fn rel(err: f64, reference: f64) -> f64 {
    err / reference.abs().max(1.0)
}

fn spectral_checks(params: &WalkParams, out: &mut Vec<Check>) {
    let ks: Vec<f64> = (0..200).map(|j| -PI + 2.0 * PI * (j as f64 + 0.5) / 200.0).collect();
    let gmax = (params.gamma0().abs() + params.gamma1().abs()).powi(2);

    let err = ks.iter().map(|&k| (i_fn(params, k).norm_sqr() - g(params, k)).abs()).fold(0.0, f64::max);
    out.push(Check::at_most("abs_i_squared_equals_g", rel(err, gmax), 1e-13));

    let mut period = 0.0f64;
    let mut anti = 0.0f64;
    let mut defined = true;
    for &k in &ks {
        match (h(params, k), h(params, k + PI), h(params, PI - k)) {
            (Ok(a), Ok(b), Ok(c)) => {
                period = period.max((a - b).abs());
                anti = anti.max((c + a).abs());
            }
            _ => defined = false,
        }
    }
    let scale = 2.0 * params.gamma_xi_abs();
    if defined {
        out.push(Check::at_most("h_period_pi", rel(period, scale), 1e-13));
        out.push(Check::at_most("h_antisymmetry", rel(anti, scale), 1e-13));
    } else {
        out.push(Check::skip("h_period_pi", 1e-13, "h undefined on the sample grid"));
        out.push(Check::skip("h_antisymmetry", 1e-13, "h undefined on the sample grid"));
    }

    if params.regime() == Regime::EqualMagnitude {
        for (name, tol) in
            [("h_at_k_star", 1e-10), ("k_branch_round_trip", 1e-9), ("f_collapse_identity", 1e-12)]
        {
            out.push(Check::skip(name, tol, "k*, k_± and f_± need |gamma0| != |gamma1|"));
        }
        return;
    }

    match k_star(params).and_then(|k| h(params, k)) {
        Ok(v) => {
            let want = params.coupling_sign() * 2.0 * params.gamma_xi_abs();
            out.push(Check::at_most("h_at_k_star", rel(v - want, want), 1e-10));
        }
        Err(e) => out.push(Check::error("h_at_k_star", 1e-10, e)),
    }

    let (lo, hi) = velocity_interval(params);
    let xs: Vec<f64> = (0..100).map(|j| lo + (hi - lo) * j as f64 / 99.0).collect();
    let round_trip = xs.iter().try_fold(0.0f64, |acc, &x| {
        let kb = k_branches(params, x)?;
        let a = (h(params, kb.k_plus)? - x).abs();
        let b = (h(params, kb.k_minus)? - x).abs();
        Ok::<f64, ctqw_core::Error>(acc.max(a).max(b))
    });
    match round_trip {
        Ok(v) => out.push(Check::at_most("k_branch_round_trip", rel(v, scale), 1e-9)),
        Err(e) => out.push(Check::error("k_branch_round_trip", 1e-9, e)),
    }

    // Interior points only: f_± is defined on the open interval.
    let collapse = (1..=100).try_fold(0.0f64, |acc, j| {
        let x = lo + (hi - lo) * j as f64 / 101.0;
        let diff =
            f_branch_derivative(params, x, Branch::Plus)? - f_branch_derivative(params, x, Branch::Minus)?;
        let gxi = params.gamma_xi_abs();
        let want = x.signum() * params.coupling_sign() / (4.0 * gxi * gxi - x * x).sqrt();
        Ok::<f64, ctqw_core::Error>(acc.max((diff - want).abs() / want.abs()))
    });
    match collapse {
        Ok(v) => out.push(Check::at_most("f_collapse_identity", v, 1e-12)),
        Err(e) => out.push(Check::error("f_collapse_identity", 1e-12, e)),
    }
}

fn limit_checks(cfg: &RunConfig, out: &mut Vec<Check>) {
    let params = &cfg.params;
    let law = LimitLaw::from_params(params);
    if params.regime() == Regime::Generic {
        let worst = (0..=8u32).try_fold(0.0f64, |acc, r| {
            let v = moment_limit_via_h(params, r)?;
            Ok::<f64, ctqw_core::Error>(acc.max(rel(v - law.moment(r), law.edge().powi(r as i32))))
        });
        match worst {
            Ok(v) => out.push(Check::at_most("moment_identity_r_le_8", v, 1e-8)),
            Err(e) => out.push(Check::error("moment_identity_r_le_8", 1e-8, e)),
        }
    } else {
        out.push(Check::skip(
            "moment_identity_r_le_8",
            1e-8,
            "the h-integral identity needs |gamma0| != |gamma1|",
        ));
    }

    let t = cfg.time;
    if t < CONVERGENCE_MIN_TIME {
        let why = "convergence tolerances are calibrated for time >= 500";
        out.push(Check::skip("cdf_distance", 0.03, why));
        out.push(Check::skip("second_moment_relative_error", 0.05, why));
        return;
    }
    match distribution(params, t, params.full_mass_radius(t), cfg.method) {
        Ok(d) => {
            match empirical_cdf_distance(&d, &law) {
                Ok(ks) => out.push(Check::at_most("cdf_distance", ks, 0.03)),
                Err(e) => out.push(Check::error("cdf_distance", 0.03, e)),
            }
            match empirical_moment(&d, 2) {
                Ok(m2) => {
                    let want = law.moment(2);
                    out.push(Check::at_most("second_moment_relative_error", (m2 - want).abs() / want, 0.05));
                }
                Err(e) => out.push(Check::error("second_moment_relative_error", 0.05, e)),
            }
        }
        Err(e) => {
            out.push(Check::error("cdf_distance", 0.03, &e));
            out.push(Check::error("second_moment_relative_error", 0.05, e));
        }
    }
}

pub fn run_suite(cfg: &RunConfig) -> Report {
    let mut checks = Vec::new();
    amplitude_checks(&cfg.params, &mut checks);
    spectral_checks(&cfg.params, &mut checks);
    limit_checks(cfg, &mut checks);
    let passed = checks.iter().all(|c| c.status != Status::Fail);
    Report {
        gamma0: cfg.params.gamma0(),
        gamma1: cfg.params.gamma1(),
        time: cfg.time,
        regime: match cfg.params.regime() {
            Regime::Generic => "generic",
            Regime::EqualMagnitude => "equal_magnitude",
        },
        passed,
        checks,
    }
}

pub fn report_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(&json!(report)).expect("report serialises");
    s.push('\n');
    s
}
