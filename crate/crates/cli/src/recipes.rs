//! Named figure recipes: each expands to concrete sweeps at desk scale and
//! yields one or more tables.

use rayon::prelude::*;
use std::f64::consts::{FRAC_PI_2, PI};

use uhlmann_core::analysis::{
    self, circular_distance, CriticalConstants, CurveOptions, PhaseTarget,
};
use uhlmann_core::spinmodel::{berry_phase_of, spectrum_robust, ModelParams, GROUND_STATE};
use uhlmann_core::subsystems::Subsystem;
use uhlmann_core::uhlmann;

use crate::coords::linspace;
use crate::gfmt::g17;
use crate::output::Table;
use crate::tasks::{self, MapTarget, Method};
use crate::CliError;

pub struct Recipe {
    pub name: &'static str,
    pub description: &'static str,
}

pub const RECIPES: &[Recipe] = &[
    Recipe { name: "fig1", description: "pair phase vs ground-state Berry phase over (g, theta) at T = 0.01" },
    Recipe { name: "fig2", description: "pair phase over (g, theta) at six temperatures (fig2a..fig2f for single panels)" },
    Recipe { name: "fig3", description: "pair phase over (T, theta) at six couplings" },
    Recipe { name: "fig4", description: "polar Argand curves of the pair at g = 0.6 for four temperatures" },
    Recipe { name: "fig5", description: "equatorial pair phase over (g, T)" },
    Recipe { name: "fig6", description: "heat capacity, its 2-4 term, the two-level approximation and the pair phase vs T (fig6a..fig6d for single couplings)" },
    Recipe { name: "fig7", description: "driven-spin phase over (g, theta) at six temperatures" },
    Recipe { name: "fig8", description: "undriven-spin phase over (g, theta) at six temperatures" },
    Recipe { name: "fig9", description: "driven-spin equatorial phase over (g, T) plus its boundary curve" },
    Recipe { name: "fig10", description: "undriven-spin equatorial phase over (g, T) plus its boundary curve and dome top" },
    Recipe { name: "argand-subsystems", description: "polar Argand curves of both reduced spins at T = 0.2" },
    Recipe { name: "bloch-sections", description: "Bloch surfaces and equatorial sections of both reduced spins at T = 0.2" },
];

const FIG2_TEMPS: [f64; 6] = [0.02, 0.05, 0.2, 0.4, 0.6, f64::NAN]; // NaN -> t_c
const FIG3_COUPLINGS: [f64; 6] = [0.02, 0.2, 0.4, 0.6, 0.8, 0.9];
const FIG6_COUPLINGS: [f64; 4] = [0.1, 0.3, 0.5, 0.7];
const FIG7_TEMPS: [f64; 6] = [0.02, 0.2, 0.5, 0.6, 0.7, f64::NAN];
const FIG8_TEMPS: [f64; 6] = [0.01, 0.1, 0.15, 0.2, 0.22, 0.25];

fn fig2_temps() -> Vec<f64> {
    let t_c = CriticalConstants::new().t_c;
    FIG2_TEMPS
        .iter()
        .map(|&t| if t.is_nan() { t_c } else { t })
        .collect()
}

fn fig7_temps() -> Vec<f64> {
    let t_c = CriticalConstants::new().t_c;
    FIG7_TEMPS
        .iter()
        .map(|&t| if t.is_nan() { t_c } else { t })
        .collect()
}

/// Run a recipe; returns `(file stem, table)` pairs plus extra metadata for
/// the sidecar.
pub fn run(
    name: &str,
    resolution: usize,
) -> Result<(Vec<(String, Table)>, serde_json::Value), CliError> {
    let r = resolution;
    let no_extra = serde_json::json!({});
    match name {
        "fig1" => Ok((vec![(name.into(), berry_comparison_map(r)?)], no_extra)),
        "fig2" => Ok((
            vec![(
                name.into(),
                stacked_gtheta_maps(MapTarget::Composite, &fig2_temps(), r)?,
            )],
            no_extra,
        )),
        "fig3" => Ok((
            vec![(name.into(), stacked_ttheta_maps(&FIG3_COUPLINGS, r)?)],
            no_extra,
        )),
        "fig4" => {
            let (table, windings) =
                argand_family(PhaseTarget::Composite, 0.6, &[0.23, 0.5, 0.6, 0.75], 512)?;
            Ok((
                vec![(name.into(), table)],
                serde_json::json!({ "windings": windings }),
            ))
        }
        "fig5" => Ok((
            vec![(name.into(), equatorial_gt_map(MapTarget::Composite, r)?)],
            no_extra,
        )),
        "fig6" => Ok((
            vec![(name.into(), heat_capacity_overlay(&FIG6_COUPLINGS)?)],
            no_extra,
        )),
        "fig7" => Ok((
            vec![(
                name.into(),
                stacked_gtheta_maps(MapTarget::Reduced(Subsystem::A), &fig7_temps(), r)?,
            )],
            no_extra,
        )),
        "fig8" => Ok((
            vec![(
                name.into(),
                stacked_gtheta_maps(MapTarget::Reduced(Subsystem::B), &FIG8_TEMPS, r)?,
            )],
            no_extra,
        )),
        "fig9" | "fig10" => {
            let which = if name == "fig9" {
                Subsystem::A
            } else {
                Subsystem::B
            };
            let map = equatorial_gt_map(MapTarget::Reduced(which), r)?;
            let curve = analysis::critical_curve(which, &CurveOptions::default())?;
            let boundary = tasks::critical_curve_table(&curve);
            let extra = serde_json::json!({ "fold": curve.fold });
            Ok((
                vec![(name.into(), map), (format!("{name}_boundary"), boundary)],
                extra,
            ))
        }
        "argand-subsystems" => {
            let mut table = Table::new(&["subsystem", "g", "T", "theta", "re_z", "im_z"]);
            let mut windings = serde_json::Map::new();
            for which in [Subsystem::A, Subsystem::B] {
                let (part, w) = argand_family(
                    PhaseTarget::Reduced(which),
                    f64::NAN,
                    &[0.597, 0.8, 1.12, 1.5],
                    512,
                )?;
                for row in part.rows {
                    let mut full = vec![which.to_string()];
                    full.extend(row);
                    table.rows.push(full);
                }
                windings.insert(which.to_string(), serde_json::json!(w));
            }
            Ok((
                vec![(name.into(), table)],
                serde_json::json!({ "windings": windings }),
            ))
        }
        "bloch-sections" => {
            let g_c = CriticalConstants::new().g_c;
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
            let thetas = linspace(0.0, PI, 41);
            let phis = linspace(0.0, 2.0 * PI, 81);
            let sets: [(Subsystem, Vec<f64>); 2] = [
                (Subsystem::A, vec![0.2, g_c, 1.5, 1.6, 2.0]),
                (Subsystem::B, vec![0.4, 0.596, 0.8, 1.12, 2.0]),
            ];
            for (which, gs) in sets {
                for &g in &gs {
                    let part = tasks::bloch_surface(which, g, 0.2, &thetas, &phis)?;
                    table.rows.extend(part.rows);
                }
            }
            Ok((vec![(name.into(), table)], no_extra))
        }
        _ => {
            // lettered panels
            if let Some(rest) = name.strip_prefix("fig2") {
                let idx = panel_index(rest, 6)?;
                let t = fig2_temps()[idx];
                return Ok((
                    vec![(name.into(), single_gtheta_map(MapTarget::Composite, t, r)?)],
                    no_extra,
                ));
            }
            if let Some(rest) = name.strip_prefix("fig6") {
                let idx = panel_index(rest, 4)?;
                return Ok((
                    vec![(name.into(), heat_capacity_overlay(&[FIG6_COUPLINGS[idx]])?)],
                    no_extra,
                ));
            }
            Err(CliError::new(format!(
                "unknown recipe '{name}'; run `uhlmann-lab figure --list`"
            )))
        }
    }
}

fn panel_index(suffix: &str, max: usize) -> Result<usize, CliError> {
    let c = suffix.chars().next().filter(|_| suffix.len() == 1);
    match c {
        Some(c @ 'a'..='z') => {
            let idx = (c as u8 - b'a') as usize;
            if idx < max {
                Ok(idx)
            } else {
                Err(CliError::new(format!("panel '{c}' out of range")))
            }
        }
        _ => Err(CliError::new(format!("bad panel suffix '{suffix}'"))),
    }
}

fn single_gtheta_map(target: MapTarget, t: f64, r: usize) -> Result<Table, CliError> {
    let gs = linspace(0.0, 2.0, r);
    let thetas = linspace(0.0, PI, r);
    tasks::phase_map(target, &gs, &thetas, &[t], Method::Closed)
}

fn stacked_gtheta_maps(target: MapTarget, temps: &[f64], r: usize) -> Result<Table, CliError> {
    let mut out = None;
    for &t in temps {
        let part = single_gtheta_map(target, t, r)?;
        let out = out.get_or_insert_with(|| Table {
            header: part.header.clone(),
            rows: Vec::new(),
        });
        out.rows.extend(part.rows);
    }
    Ok(out.expect("at least one panel"))
}

fn stacked_ttheta_maps(couplings: &[f64], r: usize) -> Result<Table, CliError> {
    let ts = linspace(0.005, 1.0, r);
    let thetas = linspace(0.0, PI, r);
    let mut out = None;
    for &g in couplings {
        let part = tasks::phase_map(MapTarget::Composite, &[g], &thetas, &ts, Method::Closed)?;
        let out = out.get_or_insert_with(|| Table {
            header: part.header.clone(),
            rows: Vec::new(),
        });
        out.rows.extend(part.rows);
    }
    Ok(out.expect("at least one panel"))
}

fn equatorial_gt_map(target: MapTarget, r: usize) -> Result<Table, CliError> {
    let gs = linspace(0.0, 2.0, r);
    let ts = linspace(0.005, 1.0, r);
    tasks::phase_map(target, &gs, &[FRAC_PI_2], &ts, Method::Closed)
}

fn berry_comparison_map(r: usize) -> Result<Table, CliError> {
    let t = 0.01;
    let gs = linspace(0.0, 2.0, r);
    let thetas = linspace(0.0, PI, r);
    let mut table = Table::new(&[
        "g",
        "theta",
        "T",
        "phase_ab_over_pi",
        "berry2_over_pi",
        "circular_diff_over_pi",
    ]);
    let n = gs.len() * thetas.len();
    let rows: Result<Vec<Vec<String>>, CliError> = (0..n)
        .into_par_iter()
        .map(|idx| {
            let (g, theta) = (gs[idx / thetas.len()], thetas[idx % thetas.len()]);
            let p = ModelParams::new(g, theta)?;
            let phase = uhlmann::uhlmann_phase_composite(&p, t)?.phase;
            let gamma = berry_phase_of(&spectrum_robust(&p), GROUND_STATE);
            Ok(vec![
                g17(g),
                g17(theta),
                g17(t),
                g17(phase / PI),
                g17(gamma / PI),
                g17(circular_distance(phase, gamma) / PI),
            ])
        })
        .collect();
    table.rows = rows?;
    Ok(table)
}

fn argand_family(
    target: PhaseTarget,
    g_fixed: f64,
    sweep: &[f64],
    samples: usize,
) -> Result<(Table, Vec<i64>), CliError> {
    // for the pair the family is swept in T at fixed g; for the reduced
    // spins in g at fixed T = 0.2, bracketing both critical couplings
    let mut table = Table::new(&["g", "T", "theta", "re_z", "im_z"]);
    let mut windings = Vec::new();
    for &x in sweep {
        let (g, t) = match target {
            PhaseTarget::Composite => (g_fixed, x),
            PhaseTarget::Reduced(_) => (x, 0.2),
        };
        let (part, _, w) = tasks::argand(target, g, t, samples)?;
        table.rows.extend(part.rows);
        windings.push(w);
    }
    Ok((table, windings))
}

fn heat_capacity_overlay(couplings: &[f64]) -> Result<Table, CliError> {
    let ts = linspace(0.005, 1.2, 600);
    let mut table = Table::new(&[
        "g",
        "T",
        "c_total",
        "c_24",
        "schottky_c24",
        "phase_ab_over_pi",
    ]);
    for &g in couplings {
        let rows: Result<Vec<Vec<String>>, CliError> = ts
            .par_iter()
            .map(|&t| {
                let c = uhlmann_core::thermal::heat_capacity(g, t)?;
                let p = ModelParams::new(g, FRAC_PI_2)?;
                let phase = uhlmann::uhlmann_phase_composite(&p, t)?.phase;
                Ok(vec![
                    g17(g),
                    g17(t),
                    g17(c.total),
                    g17(c.c24()),
                    g17(uhlmann_core::thermal::schottky_c24(g, t)?),
                    g17(phase / PI),
                ])
            })
            .collect();
        table.rows.extend(rows?);
    }
    Ok(table)
}
