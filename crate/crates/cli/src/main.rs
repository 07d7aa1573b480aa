//! `uhlmann-lab`: parameter sweeps, phase maps, transition scans and figure
//! data for the thermal geometric phases of the driven two-spin model.

mod coords;
mod gfmt;
mod output;
mod recipes;
mod selftest;
mod tasks;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use uhlmann_core::analysis::{
    self, CriticalConstants, CurveOptions, PhaseTarget, SweepAxis, SweepFixed,
};
use uhlmann_core::subsystems::Subsystem;

use coords::{parse_coord, CoordSpec};
use output::{Emitter, FileFormat, Table};
use tasks::{MapTarget, Method};

#[derive(Debug)]
pub struct CliError {
    msg: String,
}

impl CliError {
    pub fn new(msg: impl Into<String>) -> Self {
        Self { msg: msg.into() }
    }
}

impl From<uhlmann_core::Error> for CliError {
    fn from(e: uhlmann_core::Error) -> Self {
        Self { msg: e.to_string() }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.msg)
    }
}

#[derive(Parser)]
#[command(
    name = "uhlmann-lab",
    version,
    about = "Thermal Uhlmann and Berry phases of a driven two-spin pair",
    after_help = "Coordinates accept a scalar or an inclusive range 'min:max[:count]';\n\
                  numbers may use pi (e.g. pi/2, 0:pi:200). Angles are radians and\n\
                  CSV phases are in units of pi."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Phase map over one or two swept coordinates
    PhaseMap(PhaseMapArgs),
    /// Locate phase transitions along a one-dimensional sweep
    Transitions(TransitionsArgs),
    /// Trace the boundary of a reduced spin's non-trivial phase in (g, T)
    CriticalCurve(CriticalCurveArgs),
    /// Equatorial heat capacity and its two-level decomposition
    HeatCapacity(HeatCapacityArgs),
    /// Polar Argand curve of z = Tr[rho V] and its winding number
    Argand(ArgandArgs),
    /// Bloch-surface samples of a reduced spin
    Bloch(BlochArgs),
    /// Run a named figure recipe (or list them)
    Figure(FigureArgs),
    /// Cross-check every closed form against its numerical oracle
    Selftest,
    /// Print the reference constants
    Constants(ConstantsArgs),
}

#[derive(Args, Clone)]
struct CommonArgs {
    #[arg(
        long = "g",
        value_name = "SPEC",
        allow_hyphen_values = true,
        help = "Coupling g: scalar or min:max[:count]"
    )]
    g: Option<String>,
    #[arg(
        long = "theta",
        value_name = "SPEC",
        allow_hyphen_values = true,
        help = "Polar angle theta in radians: scalar or min:max[:count]"
    )]
    theta: Option<String>,
    #[arg(
        long = "T",
        value_name = "SPEC",
        allow_hyphen_values = true,
        help = "Temperature: scalar or min:max[:count]"
    )]
    temperature: Option<String>,
    /// Which subsystem: A (driven), B (undriven) or AB (the pair)
    #[arg(long, value_enum, ignore_case = true)]
    subsystem: Option<SubsystemArg>,
    /// Steps for the path-ordered integration
    #[arg(long)]
    steps: Option<usize>,
    /// Holonomy evaluation route
    #[arg(long, value_enum, ignore_case = true)]
    method: Option<MethodArg>,
    /// Worker threads (default: all cores; UHLMANN_LAB_JOBS as fallback)
    #[arg(long)]
    jobs: Option<usize>,
    /// Output file (stdout when omitted); a .meta.json sidecar is written
    /// next to it
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Data format
    #[arg(long, value_enum, ignore_case = true)]
    format: Option<FormatArg>,
    /// JSON file of default flag values (command line overrides)
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SubsystemArg {
    A,
    B,
    Ab,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Closed,
    Ode,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TargetArg {
    Composite,
    Subsystem,
    Berry,
}

#[derive(Args)]
struct PhaseMapArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// What to map (default: composite, or subsystem when --subsystem A|B)
    #[arg(long, value_enum, ignore_case = true)]
    target: Option<TargetArg>,
    /// Eigenstate label 1..4 for --target berry (default 2, the ground state)
    #[arg(long)]
    state: Option<usize>,
}

#[derive(Args)]
struct TransitionsArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Scan resolution along the swept coordinate
    #[arg(long)]
    resolution: Option<usize>,
}

#[derive(Args)]
struct CriticalCurveArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Continuation step in the (g, T) plane
    #[arg(long)]
    step: Option<f64>,
}

#[derive(Args)]
struct HeatCapacityArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct ArgandArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Polar samples along the curve
    #[arg(long)]
    samples: Option<usize>,
}

#[derive(Args)]
struct BlochArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(
        long,
        value_name = "SPEC",
        allow_hyphen_values = true,
        help = "Azimuth phi: scalar or min:max[:count]"
    )]
    phi: Option<String>,
}

#[derive(Args)]
struct FigureArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Recipe name, e.g. fig5 or fig6a
    name: Option<String>,
    /// List available recipes
    #[arg(long)]
    list: bool,
    /// Grid resolution per map axis (default 200)
    #[arg(long)]
    resolution: Option<usize>,
}

#[derive(Args)]
struct ConstantsArgs {
    #[arg(long, value_enum, ignore_case = true)]
    format: Option<FormatArg>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", serde_json::json!({ "error": e.msg }));
            ExitCode::from(1)
        }
    }
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::PhaseMap(mut a) => {
            setup(&mut a.common)?;
            cmd_phase_map(a)
        }
        Command::Transitions(mut a) => {
            setup(&mut a.common)?;
            cmd_transitions(a)
        }
        Command::CriticalCurve(mut a) => {
            setup(&mut a.common)?;
            cmd_critical_curve(a)
        }
        Command::HeatCapacity(mut a) => {
            setup(&mut a.common)?;
            cmd_heat_capacity(a)
        }
        Command::Argand(mut a) => {
            setup(&mut a.common)?;
            cmd_argand(a)
        }
        Command::Bloch(mut a) => {
            setup(&mut a.common)?;
            cmd_bloch(a)
        }
        Command::Figure(mut a) => {
            setup(&mut a.common)?;
            cmd_figure(a)
        }
        Command::Selftest => selftest::run(),
        Command::Constants(a) => cmd_constants(a),
    }
}

/// Apply the config file, then pin the worker pool size.
fn setup(common: &mut CommonArgs) -> Result<(), CliError> {
    if let Some(path) = common.config.clone() {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| CliError::new(format!("{}: {e}", path.display())))?;
        let value: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| CliError::new(format!("{}: {e}", path.display())))?;
        let obj = value
            .as_object()
            .ok_or_else(|| CliError::new("config must be a JSON object"))?;
        let as_string = |v: &serde_json::Value| -> Option<String> {
            v.as_str()
                .map(str::to_owned)
                .or_else(|| v.as_f64().map(|x| x.to_string()))
        };
        let fetch = |key: &str| obj.get(key).and_then(as_string);
        common.g = common.g.take().or_else(|| fetch("g"));
        common.theta = common.theta.take().or_else(|| fetch("theta"));
        common.temperature = common.temperature.take().or_else(|| fetch("T"));
        if common.subsystem.is_none() {
            if let Some(s) = fetch("subsystem") {
                common.subsystem = Some(SubsystemArg::from_str(&s, true).map_err(CliError::new)?);
            }
        }
        if common.method.is_none() {
            if let Some(s) = fetch("method") {
                common.method = Some(MethodArg::from_str(&s, true).map_err(CliError::new)?);
            }
        }
        if common.format.is_none() {
            if let Some(s) = fetch("format") {
                common.format = Some(FormatArg::from_str(&s, true).map_err(CliError::new)?);
            }
        }
        for (key, slot) in [("steps", &mut common.steps), ("jobs", &mut common.jobs)] {
            if slot.is_none() {
                if let Some(v) = obj.get(key).and_then(|v| v.as_u64()) {
                    *slot = Some(v as usize);
                }
            }
        }
    }

    let jobs = common
        .jobs
        .or_else(|| {
            std::env::var("UHLMANN_LAB_JOBS")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or(0);
    // repeated initialization (tests drive several commands) is harmless
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build_global();
    Ok(())
}

fn coord(spec: &Option<String>, name: &str) -> Result<CoordSpec, CliError> {
    let s = spec
        .as_deref()
        .ok_or_else(|| CliError::new(format!("missing required coordinate --{name}")))?;
    parse_coord(s)
}

fn format_of(common: &CommonArgs, default: FormatArg) -> FileFormat {
    match common.format.unwrap_or(default) {
        FormatArg::Csv => FileFormat::Csv,
        FormatArg::Json => FileFormat::Json,
    }
}

fn spec_json(cmd: &str, common: &CommonArgs, extra: serde_json::Value) -> serde_json::Value {
    serde_json::json!({
        "command": cmd,
        "g": common.g,
        "theta": common.theta,
        "T": common.temperature,
        "subsystem": common.subsystem.map(|s| match s {
            SubsystemArg::A => "A",
            SubsystemArg::B => "B",
            SubsystemArg::Ab => "AB",
        }),
        "steps": common.steps,
        "extra": extra,
    })
}

fn reduced_subsystem(arg: Option<SubsystemArg>, name: &str) -> Result<Subsystem, CliError> {
    match arg {
        Some(SubsystemArg::A) => Ok(Subsystem::A),
        Some(SubsystemArg::B) => Ok(Subsystem::B),
        _ => Err(CliError::new(format!("{name} needs --subsystem A or B"))),
    }
}

fn cmd_phase_map(args: PhaseMapArgs) -> Result<(), CliError> {
    let common = &args.common;
    let g = coord(&common.g, "g")?;
    let theta = coord(&common.theta, "theta")?;
    let t = coord(&common.temperature, "T")?;
    let ranged = [g.is_range(), theta.is_range(), t.is_range()]
        .iter()
        .filter(|x| **x)
        .count();
    if ranged > 2 {
        return Err(CliError::new("phase-map sweeps at most two coordinates"));
    }

    let target = match (args.target, common.subsystem) {
        (Some(TargetArg::Berry), _) => {
            let label = args.state.unwrap_or(2);
            if !(1..=4).contains(&label) {
                return Err(CliError::new("--state must be 1..4"));
            }
            MapTarget::Berry(label - 1)
        }
        (Some(TargetArg::Subsystem), s) => {
            MapTarget::Reduced(reduced_subsystem(s, "--target subsystem")?)
        }
        (Some(TargetArg::Composite), _) | (None, None) | (None, Some(SubsystemArg::Ab)) => {
            MapTarget::Composite
        }
        (None, Some(SubsystemArg::A)) => MapTarget::Reduced(Subsystem::A),
        (None, Some(SubsystemArg::B)) => MapTarget::Reduced(Subsystem::B),
    };
    let method = match common.method.unwrap_or(MethodArg::Closed) {
        MethodArg::Closed => Method::Closed,
        MethodArg::Ode => Method::Ode(common.steps.unwrap_or(2048)),
    };

    let table = tasks::phase_map(
        target,
        &g.values(200)?,
        &theta.values(200)?,
        &t.values(200)?,
        method,
    )?;
    let mut emitter = Emitter::new(spec_json(
        "phase-map",
        common,
        serde_json::json!({ "target": format!("{target:?}"), "method": format!("{method:?}") }),
    ));
    emitter.emit_table(
        &table,
        common.output.as_deref(),
        format_of(common, FormatArg::Csv),
    )?;
    if common.output.is_some() {
        println!("wrote {} rows", table.rows.len());
    }
    emitter.finish()
}

fn sweep_target(arg: Option<SubsystemArg>) -> PhaseTarget {
    match arg {
        Some(SubsystemArg::A) => PhaseTarget::Reduced(Subsystem::A),
        Some(SubsystemArg::B) => PhaseTarget::Reduced(Subsystem::B),
        _ => PhaseTarget::Composite,
    }
}

fn cmd_transitions(args: TransitionsArgs) -> Result<(), CliError> {
    let common = &args.common;
    let g = common
        .g
        .as_deref()
        .map(parse_coord)
        .transpose()?
        .unwrap_or(CoordSpec::Scalar(f64::NAN));
    let theta = common
        .theta
        .as_deref()
        .map(parse_coord)
        .transpose()?
        .unwrap_or(CoordSpec::Scalar(std::f64::consts::FRAC_PI_2));
    let t = common
        .temperature
        .as_deref()
        .map(parse_coord)
        .transpose()?
        .unwrap_or(CoordSpec::Scalar(f64::NAN));

    let mut swept = Vec::new();
    if g.is_range() {
        swept.push(SweepAxis::Coupling);
    }
    if theta.is_range() {
        swept.push(SweepAxis::Theta);
    }
    if t.is_range() {
        swept.push(SweepAxis::Temperature);
    }
    let [axis] = swept[..] else {
        return Err(CliError::new(
            "transitions needs exactly one ranged coordinate (the sweep axis)",
        ));
    };
    let (range, count) = match axis {
        SweepAxis::Coupling => range_of(&g)?,
        SweepAxis::Theta => range_of(&theta)?,
        SweepAxis::Temperature => range_of(&t)?,
    };
    let fixed = SweepFixed {
        g: g.scalar().unwrap_or(f64::NAN),
        theta: theta.scalar().unwrap_or(f64::NAN),
        temperature: t.scalar().unwrap_or(f64::NAN),
    };
    if !matches!(axis, SweepAxis::Coupling) && !fixed.g.is_finite() {
        return Err(CliError::new("missing required coordinate --g"));
    }
    if !matches!(axis, SweepAxis::Temperature) && !fixed.temperature.is_finite() {
        return Err(CliError::new("missing required coordinate --T"));
    }
    let resolution = count.or(args.resolution).unwrap_or(800);
    let target = sweep_target(common.subsystem);

    let (table, json) = tasks::transitions(target, axis, fixed, range, resolution)?;
    let mut emitter = Emitter::new(spec_json(
        "transitions",
        common,
        serde_json::json!({ "resolution": resolution }),
    ));
    match format_of(common, FormatArg::Json) {
        FileFormat::Json => emitter.emit_json(&json, common.output.as_deref())?,
        FileFormat::Csv => emitter.emit_table(&table, common.output.as_deref(), FileFormat::Csv)?,
    }
    emitter.finish()
}

fn range_of(spec: &CoordSpec) -> Result<((f64, f64), Option<usize>), CliError> {
    match *spec {
        CoordSpec::Range { min, max, count } => Ok(((min, max), count)),
        CoordSpec::Scalar(_) => Err(CliError::new("expected a range")),
    }
}

fn cmd_critical_curve(args: CriticalCurveArgs) -> Result<(), CliError> {
    let common = &args.common;
    let which = reduced_subsystem(common.subsystem, "critical-curve")?;
    let opts = CurveOptions {
        step: args.step.unwrap_or(CurveOptions::default().step),
        ..CurveOptions::default()
    };
    let curve = analysis::critical_curve(which, &opts)?;
    let table = tasks::critical_curve_table(&curve);
    let mut emitter = Emitter::new(spec_json(
        "critical-curve",
        common,
        serde_json::json!({ "step": opts.step, "fold": curve.fold }),
    ));
    match format_of(common, FormatArg::Csv) {
        FileFormat::Csv => emitter.emit_table(&table, common.output.as_deref(), FileFormat::Csv)?,
        FileFormat::Json => {
            let json = serde_json::json!({
                "subsystem": which.to_string(),
                "points": curve.points,
                "fold": curve.fold,
            });
            emitter.emit_json(&json, common.output.as_deref())?;
        }
    }
    if common.output.is_some() {
        if let Some((g, t)) = curve.fold {
            println!("boundary top at (g, T) = ({g:.6}, {t:.6})");
        }
        println!("wrote {} boundary points", curve.points.len());
    }
    emitter.finish()
}

fn cmd_heat_capacity(args: HeatCapacityArgs) -> Result<(), CliError> {
    let common = &args.common;
    if let Some(theta) = &common.theta {
        let v = parse_coord(theta)?
            .scalar()
            .ok_or_else(|| CliError::new("heat-capacity takes a scalar --theta"))?;
        if (v - std::f64::consts::FRAC_PI_2).abs() > 1e-12 {
            return Err(CliError::new(
                "the heat-capacity closed form is defined at theta = pi/2 only",
            ));
        }
    }
    let g = coord(&common.g, "g")?;
    let t = coord(&common.temperature, "T")?;
    let table = tasks::heat_capacity_table(&g.values(200)?, &t.values(200)?)?;
    let mut emitter = Emitter::new(spec_json("heat-capacity", common, serde_json::json!({})));
    emitter.emit_table(
        &table,
        common.output.as_deref(),
        format_of(common, FormatArg::Csv),
    )?;
    emitter.finish()
}

fn cmd_argand(args: ArgandArgs) -> Result<(), CliError> {
    let common = &args.common;
    let g = coord(&common.g, "g")?
        .scalar()
        .ok_or_else(|| CliError::new("argand takes a scalar --g"))?;
    let t = coord(&common.temperature, "T")?
        .scalar()
        .ok_or_else(|| CliError::new("argand takes a scalar --T"))?;
    let samples = args.samples.unwrap_or(512);
    let target = sweep_target(common.subsystem);
    let (table, curve, winding) = tasks::argand(target, g, t, samples)?;
    let mut emitter = Emitter::new(spec_json(
        "argand",
        common,
        serde_json::json!({ "samples": samples, "winding": winding }),
    ));
    match format_of(common, FormatArg::Csv) {
        FileFormat::Csv => emitter.emit_table(&table, common.output.as_deref(), FileFormat::Csv)?,
        FileFormat::Json => {
            let json = serde_json::json!({
                "g": g,
                "T": t,
                "winding": winding,
                "samples": curve.samples.iter()
                    .map(|(theta, z)| serde_json::json!([theta, z.re, z.im]))
                    .collect::<Vec<_>>(),
            });
            emitter.emit_json(&json, common.output.as_deref())?;
        }
    }
    if common.output.is_some() {
        println!("winding number: {winding}");
    }
    emitter.finish()
}

fn cmd_bloch(args: BlochArgs) -> Result<(), CliError> {
    let common = &args.common;
    let which = reduced_subsystem(common.subsystem, "bloch")?;
    let g = coord(&common.g, "g")?
        .scalar()
        .ok_or_else(|| CliError::new("bloch takes a scalar --g"))?;
    let t = coord(&common.temperature, "T")?
        .scalar()
        .ok_or_else(|| CliError::new("bloch takes a scalar --T"))?;
    let thetas = common
        .theta
        .as_deref()
        .map(parse_coord)
        .transpose()?
        .unwrap_or(CoordSpec::Range {
            min: 0.0,
            max: std::f64::consts::PI,
            count: Some(41),
        })
        .values(41)?;
    let phis = args
        .phi
        .as_deref()
        .map(parse_coord)
        .transpose()?
        .unwrap_or(CoordSpec::Range {
            min: 0.0,
            max: 2.0 * std::f64::consts::PI,
            count: Some(81),
        })
        .values(81)?;
    let table = tasks::bloch_surface(which, g, t, &thetas, &phis)?;
    let mut emitter = Emitter::new(spec_json(
        "bloch",
        common,
        serde_json::json!({ "phi": args.phi }),
    ));
    emitter.emit_table(
        &table,
        common.output.as_deref(),
        format_of(common, FormatArg::Csv),
    )?;
    emitter.finish()
}

fn cmd_figure(args: FigureArgs) -> Result<(), CliError> {
    if args.list {
        for r in recipes::RECIPES {
            println!("{:<20} {}", r.name, r.description);
        }
        return Ok(());
    }
    let Some(name) = args.name.as_deref() else {
        let names: Vec<&str> = recipes::RECIPES.iter().map(|r| r.name).collect();
        return Err(CliError::new(format!(
            "which figure? one of: {} (or --list)",
            names.join(", ")
        )));
    };
    let resolution = args.resolution.unwrap_or(200);
    let (tables, extra) = recipes::run(name, resolution)?;
    let dir = args
        .common
        .output
        .clone()
        .unwrap_or_else(|| PathBuf::from("."));
    let mut emitter = Emitter::new(spec_json(
        "figure",
        &args.common,
        serde_json::json!({ "name": name, "resolution": resolution, "recipe": extra }),
    ));
    for (stem, table) in &tables {
        let path = dir.join(format!("{stem}.csv"));
        emitter.emit_table(table, Some(&path), FileFormat::Csv)?;
        println!("wrote {} ({} rows)", path.display(), table.rows.len());
    }
    emitter.finish()
}

fn cmd_constants(args: ConstantsArgs) -> Result<(), CliError> {
    let c = CriticalConstants::new();
    let res = c.defining_residuals();
    let mut emitter = Emitter::new(serde_json::json!({ "command": "constants" }));
    match args.format.unwrap_or(FormatArg::Json) {
        FormatArg::Json => {
            let json = serde_json::json!({
                "t_c": c.t_c,
                "g_c": c.g_c,
                "r_c": c.r_c,
                "definitions": {
                    "t_c": "1/ln(2+sqrt(3))",
                    "g_c": "2/sqrt(3)",
                    "r_c": "sqrt(3)/2",
                },
                "defining_residuals": res,
            });
            emitter.emit_json(&json, args.output.as_deref())?;
        }
        FormatArg::Csv => {
            let mut table = Table::new(&["name", "value", "definition"]);
            table.rows.push(vec![
                "t_c".into(),
                gfmt::g17(c.t_c),
                "1/ln(2+sqrt(3))".into(),
            ]);
            table
                .rows
                .push(vec!["g_c".into(), gfmt::g17(c.g_c), "2/sqrt(3)".into()]);
            table
                .rows
                .push(vec!["r_c".into(), gfmt::g17(c.r_c), "sqrt(3)/2".into()]);
            emitter.emit_table(&table, args.output.as_deref(), FileFormat::Csv)?;
        }
    }
    emitter.finish()
}
