use std::path::PathBuf;

use ctqw_core::{Method, WalkParams};

use crate::args::{Command, Format, GlobalArgs, MethodArg, RadiusArg};
use crate::error::CliError;

/// Fully resolved settings for one invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub params: WalkParams,
    pub time: f64,
    pub radius: usize,
    pub radius_rule: usize,
    pub method: Method,
    pub grid: usize,
    pub format: Format,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn resolve(global: &GlobalArgs, command: Command) -> Result<Self, CliError> {
        let params = WalkParams::new(global.gamma0, global.gamma1)?;
        if !(global.time.is_finite() && global.time >= 0.0) {
            return Err(CliError::Config(format!("--time must be finite and >= 0, got {}", global.time)));
        }
        if global.grid < 2 {
            return Err(CliError::Config("--grid needs at least 2 points".into()));
        }
        let radius_rule = params.light_cone_radius(global.time);
        let statistics = matches!(command, Command::Moments { .. } | Command::Compare);
        let radius = match global.radius {
            RadiusArg::Auto if statistics => params.full_mass_radius(global.time),
            RadiusArg::Auto => radius_rule,
            RadiusArg::Fixed(r) => r,
        };
        let method = match global.method {
            MethodArg::Auto => Method::preferred_for(&params),
            MethodArg::Quadrature => Method::FourierQuadrature,
            MethodArg::Bessel => Method::Bessel,
            MethodArg::Lattice => Method::LatticeOracle,
        };
        Ok(Self {
            command,
            params,
            time: global.time,
            radius,
            radius_rule,
            method,
            grid: global.grid,
            format: global.format,
            output: global.output.clone(),
        })
    }

    pub fn truncated(&self) -> bool {
        self.radius < self.radius_rule
    }

    /// Problems worth reporting on stderr that do not stop the run.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.params.is_near_degenerate() {
            out.push(format!(
                "|gamma0| and |gamma1| differ by less than {:e}; quadrature may be slow and h' is ill-conditioned",
                ctqw_core::params::NEAR_DEGENERATE_GAP
            ));
        }
        let uses_window = matches!(
            self.command,
            Command::Evolve | Command::Distribution | Command::Moments { .. } | Command::Compare
        );
        if uses_window && self.truncated() {
            out.push(format!(
                "radius {} is below the light-cone rule {}; output is truncated",
                self.radius, self.radius_rule
            ));
        }
        out
    }
}
