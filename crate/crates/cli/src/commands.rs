use ctqw_core::spectral::SpectralFunction;
use ctqw_core::{
    amplitude_field, distribution, empirical_moment, moment_limit_via_h, EmpiricalCdf, LimitLaw,
    PositionDistribution, Regime, SpectralProfile,
};

use crate::args::{Command, SpectralArg};
use crate::config::RunConfig;
use crate::error::CliError;
use crate::table::{Cell, Table};

/// Metadata shared by every table.
fn header(cfg: &RunConfig, table: &mut Table) {
    table
        .meta("command", cfg.command.name())
        .meta("gamma0", format!("{:.17e}", cfg.params.gamma0()))
        .meta("gamma1", format!("{:.17e}", cfg.params.gamma1()))
        .meta("time", format!("{:.17e}", cfg.time));
}

fn window_header(cfg: &RunConfig, table: &mut Table) {
    header(cfg, table);
    table.meta("radius", cfg.radius).meta("method", cfg.method.name()).meta("truncated", cfg.truncated());
}

/// `n` points from `lo` to `hi` with both ends exact.
fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let last = (n - 1) as f64;
    (0..n).map(move |j| match j {
        0 => lo,
        j if j == n - 1 => hi,
        j => lo + (hi - lo) * j as f64 / last,
    })
}

fn compute_distribution(cfg: &RunConfig) -> Result<PositionDistribution, CliError> {
    Ok(distribution(&cfg.params, cfg.time, cfg.radius, cfg.method)?)
}

pub fn evolve(cfg: &RunConfig) -> Result<Table, CliError> {
    let field = amplitude_field(&cfg.params, cfg.time, cfg.radius, cfg.method)?;
    let mut table = Table::new(&["x", "re", "im", "prob"]);
    window_header(cfg, &mut table);
    table.meta("norm", format!("{:.17e}", field.norm_sqr()));
    for (x, v) in field.positions().zip(field.values()) {
        table.push(vec![x.into(), v.re.into(), v.im.into(), v.norm_sqr().into()]);
    }
    Ok(table)
}

pub fn distribution_table(cfg: &RunConfig) -> Result<Table, CliError> {
    let dist = compute_distribution(cfg)?;
    let law = LimitLaw::from_params(&cfg.params);
    let mut table = Table::new(&["x", "prob", "approx"]);
    window_header(cfg, &mut table);
    table.meta("captured_mass", format!("{:.17e}", dist.captured_mass));
    for (x, &p) in dist.positions().zip(dist.probs()) {
        table.push(vec![x.into(), p.into(), law.finite_t_approximation(x, cfg.time).into()]);
    }
    Ok(table)
}

pub fn limit(cfg: &RunConfig) -> Result<Table, CliError> {
    let law = LimitLaw::from_params(&cfg.params);
    let mut table = Table::new(&["y", "density", "cdf"]);
    header(cfg, &mut table);
    table.meta("gamma_xi_abs", format!("{:.17e}", law.gamma_xi_abs()));
    let (lo, hi) = law.support();
    for y in linspace(lo, hi, cfg.grid) {
        table.push(vec![y.into(), law.density(y).into(), law.cdf(y).into()]);
    }
    Ok(table)
}

pub fn moments(cfg: &RunConfig, max_order: u32) -> Result<Table, CliError> {
    let dist = compute_distribution(cfg)?;
    let law = LimitLaw::from_params(&cfg.params);
    let mut table = Table::new(&["r", "empirical", "limit", "via_h"]);
    window_header(cfg, &mut table);
    for r in 0..=max_order {
        let via_h = match cfg.params.regime() {
            Regime::Generic => Some(moment_limit_via_h(&cfg.params, r)?),
            Regime::EqualMagnitude => None,
        };
        table.push(vec![
            Cell::Int(r as i64),
            empirical_moment(&dist, r)?.into(),
            law.moment(r).into(),
            via_h.into(),
        ]);
    }
    Ok(table)
}

pub fn compare(cfg: &RunConfig) -> Result<Table, CliError> {
    let dist = compute_distribution(cfg)?;
    let law = LimitLaw::from_params(&cfg.params);
    let cdf = EmpiricalCdf::new(&dist)?;
    let mut table = Table::new(&["y", "empirical_cdf", "limit_cdf"]);
    window_header(cfg, &mut table);
    table.meta("kolmogorov_distance", format!("{:.17e}", cdf.distance(&law)));
    let (lo, hi) = law.support();
    for y in linspace(lo, hi, cfg.grid) {
        table.push(vec![y.into(), cdf.eval(y).into(), law.cdf(y).into()]);
    }
    Ok(table)
}

pub fn spectral(cfg: &RunConfig, function: SpectralArg) -> Result<Table, CliError> {
    let single = |f: SpectralFunction| -> Result<Table, CliError> {
        let profile = SpectralProfile::sample(&cfg.params, f, cfg.grid)?;
        let mut table = Table::new(&["k", f.name()]);
        header(cfg, &mut table);
        for (&k, &v) in profile.grid.iter().zip(&profile.values) {
            table.push(vec![k.into(), v.into()]);
        }
        Ok(table)
    };
    let pair = |a: SpectralFunction, b: SpectralFunction| -> Result<Table, CliError> {
        if cfg.params.regime() == Regime::EqualMagnitude {
            return Err(CliError::Config(format!("{} and {} need |gamma0| != |gamma1|", a.name(), b.name())));
        }
        let pa = SpectralProfile::sample(&cfg.params, a, cfg.grid)?;
        let pb = SpectralProfile::sample(&cfg.params, b, cfg.grid)?;
        debug_assert_eq!(pa.grid, pb.grid);
        let mut table = Table::new(&["x", a.name(), b.name()]);
        header(cfg, &mut table);
        for ((&x, &va), &vb) in pa.grid.iter().zip(&pa.values).zip(&pb.values) {
            table.push(vec![x.into(), va.into(), vb.into()]);
        }
        Ok(table)
    };
    let mut table = match function {
        SpectralArg::G => single(SpectralFunction::G)?,
        SpectralArg::AbsI => single(SpectralFunction::AbsI)?,
        SpectralArg::H => single(SpectralFunction::H)?,
        SpectralArg::HPrime => single(SpectralFunction::HPrime)?,
        SpectralArg::KBranches => pair(SpectralFunction::KPlus, SpectralFunction::KMinus)?,
        SpectralArg::FBranches => pair(SpectralFunction::FPlus, SpectralFunction::FMinus)?,
    };
    table.meta("grid", cfg.grid);
    Ok(table)
}

pub fn table_for(cfg: &RunConfig) -> Result<Table, CliError> {
    match &cfg.command {
        Command::Evolve => evolve(cfg),
        Command::Distribution => distribution_table(cfg),
        Command::Limit => limit(cfg),
        Command::Moments { max_order } => moments(cfg, *max_order),
        Command::Compare => compare(cfg),
        Command::Spectral { function } => spectral(cfg, *function),
        Command::Validate => unreachable!("validate produces a report, not a table"),
    }
}
