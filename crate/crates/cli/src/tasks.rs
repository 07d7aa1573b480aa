//! The computations behind each subcommand, producing [`Table`]s.

use rayon::prelude::*;
use std::f64::consts::PI;

use uhlmann_core::analysis::{
    self, ArgandCurve, CriticalCurve, PhaseTarget, SweepAxis, SweepFixed,
};
use uhlmann_core::spinmodel::{berry_phase_of, spectrum_robust, ModelParams};
use uhlmann_core::subsystems::{self, Subsystem};
use uhlmann_core::thermal::{self, heat_capacity, schottky_c24};
use uhlmann_core::uhlmann;

use crate::gfmt::g17;
use crate::output::Table;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Closed,
    Ode(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapTarget {
    Composite,
    Reduced(Subsystem),
    /// Berry phase of one eigenstate (zero-based index).
    Berry(usize),
}

fn model(g: f64, theta: f64) -> Result<ModelParams, CliError> {
    ModelParams::new(g, theta).map_err(CliError::from)
}

/// Cartesian sweep over `(g, theta, T)` with full coordinates in every row,
/// outer loops in that order.
pub fn phase_map(
    target: MapTarget,
    gs: &[f64],
    thetas: &[f64],
    ts: &[f64],
    method: Method,
) -> Result<Table, CliError> {
    let mut table = Table::new(match target {
        MapTarget::Composite => &[
            "g",
            "theta",
            "T",
            "phase_over_pi",
            "re_z",
            "im_z",
            "trace_near_zero",
        ],
        MapTarget::Reduced(_) => &["g", "theta", "T", "phase_over_pi", "r"],
        MapTarget::Berry(_) => &["g", "theta", "T", "berry_over_pi"],
    });
    let n = gs.len() * thetas.len() * ts.len();
    let rows: Result<Vec<Vec<String>>, CliError> = (0..n)
        .into_par_iter()
        .map(|idx| {
            let it = idx % ts.len();
            let ith = (idx / ts.len()) % thetas.len();
            let ig = idx / (ts.len() * thetas.len());
            let (g, theta, t) = (gs[ig], thetas[ith], ts[it]);
            let p = model(g, theta)?;
            let coord = [g17(g), g17(theta), g17(t)];
            let row = match target {
                MapTarget::Composite => {
                    let r = match method {
                        Method::Closed => uhlmann::uhlmann_phase_composite(&p, t)?,
                        Method::Ode(steps) => uhlmann::uhlmann_phase_composite_ode(&p, t, steps)?,
                    };
                    vec![
                        coord[0].clone(),
                        coord[1].clone(),
                        coord[2].clone(),
                        g17(r.phase / PI),
                        g17(r.trace_value.re),
                        g17(r.trace_value.im),
                        if r.trace_near_zero { "1" } else { "0" }.to_string(),
                    ]
                }
                MapTarget::Reduced(s) => {
                    let ens = thermal::gibbs_state(&p, t)?;
                    let ph = subsystems::subsystem_phase_analytic(&subsystems::reduce(&ens, s));
                    vec![
                        coord[0].clone(),
                        coord[1].clone(),
                        coord[2].clone(),
                        g17(ph.phase / PI),
                        g17(ph.r_squared.max(0.0).sqrt()),
                    ]
                }
                MapTarget::Berry(j) => {
                    let gamma = berry_phase_of(&spectrum_robust(&p), j);
                    vec![
                        coord[0].clone(),
                        coord[1].clone(),
                        coord[2].clone(),
                        g17(gamma / PI),
                    ]
                }
            };
            Ok(row)
        })
        .collect();
    table.rows = rows?;
    Ok(table)
}

pub fn transitions(
    target: PhaseTarget,
    axis: SweepAxis,
    fixed: SweepFixed,
    range: (f64, f64),
    resolution: usize,
) -> Result<(Table, serde_json::Value), CliError> {
    let set = analysis::transitions_1d(target, axis, fixed, range, resolution)?;
    let mut table = Table::new(&[
        "value",
        "bracket_lo",
        "bracket_hi",
        "phase_below_over_pi",
        "phase_above_over_pi",
    ]);
    for r in &set.roots {
        table.rows.push(vec![
            g17(r.value),
            g17(r.bracket.0),
            g17(r.bracket.1),
            g17(r.phase_below / PI),
            g17(r.phase_above / PI),
        ]);
    }
    let json = serde_json::json!({
        "target": match target {
            PhaseTarget::Composite => "AB".to_string(),
            PhaseTarget::Reduced(s) => s.to_string(),
        },
        "axis": axis.to_string(),
        "fixed": { "g": fixed.g, "theta": fixed.theta, "T": fixed.temperature },
        "range": [range.0, range.1],
        "resolution": resolution,
        "found": set.found,
        "gap": set.gap,
        "roots": set.roots.iter().map(|r| serde_json::json!({
            "value": r.value,
            "bracket": [r.bracket.0, r.bracket.1],
            "phase_below_over_pi": r.phase_below / PI,
            "phase_above_over_pi": r.phase_above / PI,
        })).collect::<Vec<_>>(),
    });
    Ok((table, json))
}

pub fn critical_curve_table(curve: &CriticalCurve) -> Table {
    let mut table = Table::new(&["subsystem", "g", "T"]);
    for (g, t) in &curve.points {
        table
            .rows
            .push(vec![curve.subsystem.to_string(), g17(*g), g17(*t)]);
    }
    table
}

pub fn heat_capacity_table(gs: &[f64], ts: &[f64]) -> Result<Table, CliError> {
    let mut table = Table::new(&[
        "g",
        "T",
        "c_total",
        "c_12",
        "c_13",
        "c_14",
        "c_23",
        "c_24",
        "c_34",
        "schottky_c24",
    ]);
    let n = gs.len() * ts.len();
    let rows: Result<Vec<Vec<String>>, CliError> = (0..n)
        .into_par_iter()
        .map(|idx| {
            let (g, t) = (gs[idx / ts.len()], ts[idx % ts.len()]);
            let c = heat_capacity(g, t)?;
            let mut row = vec![g17(g), g17(t), g17(c.total)];
            row.extend(c.pairwise.iter().map(|x| g17(*x)));
            row.push(g17(schottky_c24(g, t)?));
            Ok(row)
        })
        .collect();
    table.rows = rows?;
    Ok(table)
}

/// Polar Argand sweep of the pair (`z`) or a reduced spin (`z^s`), plus its
/// winding number.
pub fn argand(
    target: PhaseTarget,
    g: f64,
    t: f64,
    samples: usize,
) -> Result<(Table, ArgandCurve, i64), CliError> {
    let curve = match target {
        PhaseTarget::Composite => analysis::argand_composite(g, t, samples)?,
        PhaseTarget::Reduced(s) => analysis::argand_subsystem(s, g, t, samples)?,
    };
    let winding = analysis::winding_number(&curve)?;
    let mut table = Table::new(&["g", "T", "theta", "re_z", "im_z"]);
    for (theta, z) in &curve.samples {
        table
            .rows
            .push(vec![g17(g), g17(t), g17(*theta), g17(z.re), g17(z.im)]);
    }
    Ok((table, curve, winding))
}

/// Bloch-surface sampling `n_s(theta, phi)` of one reduced spin at fixed
/// `(g, T)`.
pub fn bloch_surface(
    which: Subsystem,
    g: f64,
    t: f64,
    thetas: &[f64],
    phis: &[f64],
) -> Result<Table, CliError> {
    let mut table = Table::new(&[
        "subsystem",
        "g",
        "T",
        "theta",
        "phi",
        "n_x",
        "n_y",
        "n_z",
        "radius",
    ]);
    for &theta in thetas {
        let p = model(g, theta)?;
        let ens = thermal::gibbs_state(&p, t)?;
        let q = subsystems::reduce(&ens, which);
        for &phi in phis {
            let b = subsystems::bloch(&q, phi);
            table.rows.push(vec![
                which.to_string(),
                g17(g),
                g17(t),
                g17(theta),
                g17(phi),
                g17(b.vector[0]),
                g17(b.vector[1]),
                g17(b.vector[2]),
                g17(b.equatorial_radius),
            ]);
        }
    }
    Ok(table)
}
