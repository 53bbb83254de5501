//! Command-line front end: generate delivery scenarios, classify vertices,
//! fly single missions, and run full campaigns.

use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

use mfp_core::campaign::{emit_outputs, run_campaign, ExperimentConfig};
use mfp_core::graph::{load_graph, load_trace, save_graph, save_trace};
use mfp_core::mission::{
    clairvoyant_optimum, preprocess, run_dsp, run_gsp, run_osp, Algorithm, MissionSpec,
};
use mfp_core::scenarios::{
    build_tessellation_graph, generate_er, generate_wind_trace, load_wcu_csv, scale_dataset,
    station_points, BoundingBox, ErConfig, Station, TessellationKind, DEFAULT_GEOMETRY_TOLERANCE,
};
use mfp_core::{ClassCount, DroneParams};

#[derive(Parser)]
#[command(
    name = "mfp",
    about = "Energy-aware drone delivery missions under time-varying winds",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a connected random delivery graph.
    GenerateEr(GenerateErArgs),
    /// Generate a random wind trace.
    GenerateTrace(GenerateTraceArgs),
    /// Build a tessellation graph (and optionally a trace) from stations.
    Tessellate(TessellateArgs),
    /// Color every destination GREEN, GRAY or BLACK for a budget.
    Preprocess(PreprocessArgs),
    /// Fly one mission (or query the clairvoyant optimum).
    Run(RunArgs),
    /// Run a full experiment campaign and emit CSV summaries.
    Campaign(CampaignArgs),
}

fn parse_classes(value: &str) -> Result<u32, String> {
    match value {
        "4" => Ok(4),
        "8" => Ok(8),
        other => Err(format!(
            "unsupported class count `{other}` (expected 4 or 8)"
        )),
    }
}

/// Comma-separated wind speed alphabet.
#[derive(Clone)]
struct SpeedList(Vec<f64>);

impl std::str::FromStr for SpeedList {
    type Err = String;

    fn from_str(value: &str) -> Result<Self, Self::Err> {
        let speeds: Result<Vec<f64>, _> = value.split(',').map(str::parse::<f64>).collect();
        let speeds = speeds.map_err(|e| format!("bad speed list `{value}`: {e}"))?;
        if speeds.is_empty() {
            return Err("speed list must not be empty".into());
        }
        Ok(SpeedList(speeds))
    }
}

#[derive(Args)]
struct GenerateErArgs {
    /// Number of vertices, depot included.
    #[arg(long, default_value_t = 26)]
    n: usize,
    /// Density constant in p = c ln(n) / n.
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    /// Side of the square area, m.
    #[arg(long, default_value_t = 2000.0)]
    area: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output graph (JSON).
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct GenerateTraceArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of slots to draw.
    #[arg(long, default_value_t = 128)]
    horizon: u32,
    /// Slot duration, s.
    #[arg(long, default_value_t = 60.0)]
    slot_duration: f64,
    /// Wind speed alphabet, m/s (comma separated).
    #[arg(long, default_value = "0,5,10,15")]
    speeds: SpeedList,
    /// Region names (comma separated).
    #[arg(long, default_value = "global")]
    regions: String,
    /// Output trace (JSON).
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct TessellateArgs {
    /// Graph layout to build: vg, dg or hg.
    #[arg(long, value_parser = clap::value_parser!(TessellationKind))]
    kind: TessellationKind,
    /// Station dataset (CSV). Scaled coordinates become the stations and the
    /// observations become the trace.
    #[arg(long)]
    wcu: Option<PathBuf>,
    #[arg(long, default_value_t = 10.0)]
    distance_factor: f64,
    #[arg(long, default_value_t = 4)]
    time_factor: u32,
    /// Number of synthetic stations (used when no dataset is given).
    #[arg(long, default_value_t = 12)]
    stations: usize,
    /// Side of the synthetic square area, m.
    #[arg(long, default_value_t = 5000.0)]
    area: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Bounding box `minx,miny,maxx,maxy` (default: around the stations).
    #[arg(long)]
    bbox: Option<String>,
    /// Output graph (JSON).
    #[arg(long)]
    out: PathBuf,
    /// Output trace (JSON); for synthetic stations a random trace is drawn.
    #[arg(long)]
    out_trace: Option<PathBuf>,
    /// Slot duration for a synthetic trace, s.
    #[arg(long, default_value_t = 60.0)]
    slot_duration: f64,
    /// Horizon for a synthetic trace.
    #[arg(long, default_value_t = 128)]
    horizon: u32,
    /// Speed alphabet for a synthetic trace, m/s.
    #[arg(long, default_value = "0,5,10,15")]
    speeds: SpeedList,
}

#[derive(Args)]
struct PreprocessArgs {
    /// Delivery graph (JSON).
    #[arg(long)]
    graph: PathBuf,
    /// Energy budget, J (default: the drone's battery).
    #[arg(long)]
    budget: Option<f64>,
    /// Outbound payload, kg.
    #[arg(long, default_value_t = 7.0)]
    payload: f64,
    /// Ground speed, m/s (default: the drone's cruise speed).
    #[arg(long)]
    speed: Option<f64>,
    #[arg(long, value_parser = parse_classes, default_value = "4")]
    classes: u32,
    /// Wind speed alphabet, m/s.
    #[arg(long, default_value = "0,5,10,15")]
    speeds: SpeedList,
    /// Drone parameter file (TOML key = value).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write the color map as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    /// Mission algorithm: osp, dsp, gsp or oracle.
    #[arg(long)]
    algo: String,
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    trace: PathBuf,
    /// Destination vertex id.
    #[arg(long)]
    dest: u32,
    /// Energy budget, J (default: the drone's battery).
    #[arg(long)]
    budget: Option<f64>,
    #[arg(long, default_value_t = 7.0)]
    payload: f64,
    #[arg(long)]
    speed: Option<f64>,
    #[arg(long, value_parser = parse_classes, default_value = "4")]
    classes: u32,
    #[arg(long, default_value_t = 0)]
    start_slot: u32,
    /// Walk-length cap for the clairvoyant oracle.
    #[arg(long)]
    horizon: Option<u32>,
    /// Drone parameter file (TOML key = value).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write the mission log as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CampaignArgs {
    /// Campaign configuration (TOML).
    #[arg(long)]
    config: PathBuf,
    /// Output directory for the CSV summaries.
    #[arg(long)]
    out: PathBuf,
}

fn drone_params(path: &Option<PathBuf>) -> anyhow::Result<DroneParams> {
    match path {
        Some(p) => DroneParams::load(p).with_context(|| format!("loading {}", p.display())),
        None => Ok(DroneParams::default()),
    }
}

fn cmd_generate_er(args: GenerateErArgs) -> anyhow::Result<()> {
    let config = ErConfig::new(args.n, args.c, args.area, args.seed);
    let graph = generate_er(&config)?;
    save_graph(&graph, &args.out)?;
    println!(
        "wrote {} ({} vertices, {} directed edges)",
        args.out.display(),
        graph.vertex_count(),
        graph.edge_count()
    );
    Ok(())
}

fn cmd_generate_trace(args: GenerateTraceArgs) -> anyhow::Result<()> {
    let regions: Vec<String> = args.regions.split(',').map(str::to_string).collect();
    let trace = generate_wind_trace(
        args.seed,
        args.horizon,
        args.slot_duration,
        &args.speeds.0,
        &regions,
    )?;
    save_trace(&trace, &args.out)?;
    println!(
        "wrote {} ({} slots x {} regions)",
        args.out.display(),
        trace.horizon(),
        trace.regions().len()
    );
    Ok(())
}

fn parse_bbox(text: &str) -> anyhow::Result<BoundingBox> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|p| p.parse::<f64>().map_err(anyhow::Error::from))
        .collect::<anyhow::Result<_>>()?;
    if parts.len() != 4 {
        bail!("bbox needs 4 comma-separated numbers, got `{text}`");
    }
    Ok(BoundingBox::new(parts[0], parts[1], parts[2], parts[3])?)
}

fn cmd_tessellate(args: TessellateArgs) -> anyhow::Result<()> {
    if let Some(wcu_path) = &args.wcu {
        let records = load_wcu_csv(wcu_path)?;
        let (scaled, trace) = scale_dataset(&records, args.distance_factor, args.time_factor)?;
        let stations: Vec<Station> = station_points(&scaled)?
            .into_iter()
            .map(|(id, p)| Station::new(id, p.x, p.y))
            .collect();
        let points: Vec<mfp_core::Point2D> = stations.iter().map(|s| s.pos()).collect();
        let bbox = match &args.bbox {
            Some(text) => parse_bbox(text)?,
            None => BoundingBox::around(&points, span_margin(&points))?,
        };
        let graph =
            build_tessellation_graph(&stations, args.kind, &bbox, DEFAULT_GEOMETRY_TOLERANCE)?;
        save_graph(&graph, &args.out)?;
        println!(
            "wrote {} ({}, {} vertices, {} directed edges)",
            args.out.display(),
            args.kind,
            graph.vertex_count(),
            graph.edge_count()
        );
        if let Some(trace_path) = &args.out_trace {
            save_trace(&trace, trace_path)?;
            println!("wrote {} ({} slots)", trace_path.display(), trace.horizon());
        }
    } else {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(args.seed);
        let stations: Vec<Station> = (0..args.stations)
            .map(|i| {
                Station::new(
                    format!("s{i}"),
                    rng.gen_range(0.05 * args.area..0.95 * args.area),
                    rng.gen_range(0.05 * args.area..0.95 * args.area),
                )
            })
            .collect();
        let bbox = match &args.bbox {
            Some(text) => parse_bbox(text)?,
            None => BoundingBox::new(0.0, 0.0, args.area, args.area)?,
        };
        let graph =
            build_tessellation_graph(&stations, args.kind, &bbox, DEFAULT_GEOMETRY_TOLERANCE)?;
        save_graph(&graph, &args.out)?;
        println!(
            "wrote {} ({}, {} vertices, {} directed edges)",
            args.out.display(),
            args.kind,
            graph.vertex_count(),
            graph.edge_count()
        );
        if let Some(trace_path) = &args.out_trace {
            let regions: Vec<String> = stations.iter().map(|s| s.id.clone()).collect();
            let trace = generate_wind_trace(
                args.seed.wrapping_add(1),
                args.horizon,
                args.slot_duration,
                &args.speeds.0,
                &regions,
            )?;
            save_trace(&trace, trace_path)?;
            println!("wrote {} ({} slots)", trace_path.display(), trace.horizon());
        }
    }
    Ok(())
}

fn span_margin(points: &[mfp_core::Point2D]) -> f64 {
    let min_x = points.iter().map(|p| p.x).fold(f64::INFINITY, f64::min);
    let max_x = points.iter().map(|p| p.x).fold(f64::NEG_INFINITY, f64::max);
    let min_y = points.iter().map(|p| p.y).fold(f64::INFINITY, f64::min);
    let max_y = points.iter().map(|p| p.y).fold(f64::NEG_INFINITY, f64::max);
    0.1 * (max_x - min_x).hypot(max_y - min_y).max(1.0)
}

fn cmd_preprocess(args: PreprocessArgs) -> anyhow::Result<()> {
    let params = drone_params(&args.config)?;
    let graph = load_graph(&args.graph)?;
    let spec = MissionSpec {
        destination: first_non_depot(&graph)?,
        budget_j: args.budget.unwrap_or(params.battery_budget),
        payload_kg: args.payload,
        ground_speed: args.speed.unwrap_or(params.cruise_speed),
        class_count: ClassCount::try_from_u32(args.classes)?,
        start_slot: 0,
    };
    let colors = preprocess(&graph, &params, &spec, &args.speeds.0)?;
    let (mut green, mut gray, mut black) = (0u32, 0u32, 0u32);
    for (vertex, color) in &colors {
        println!("{vertex} {color}");
        match color {
            mfp_core::mission::VertexColor::Green => green += 1,
            mfp_core::mission::VertexColor::Gray => gray += 1,
            mfp_core::mission::VertexColor::Black => black += 1,
        }
    }
    println!("GREEN {green} GRAY {gray} BLACK {black}");
    if let Some(out) = &args.out {
        let mut text = serde_json::to_string_pretty(&colors)?;
        text.push('\n');
        std::fs::write(out, text)?;
    }
    Ok(())
}

fn first_non_depot(graph: &mfp_core::DeliveryGraph) -> anyhow::Result<u32> {
    graph
        .vertices()
        .iter()
        .map(|v| v.id)
        .find(|&id| id != graph.depot())
        .context("graph has no non-depot vertex")
}

fn cmd_run(args: RunArgs) -> anyhow::Result<()> {
    let params = drone_params(&args.config)?;
    let graph = load_graph(&args.graph)?;
    let trace = load_trace(&args.trace)?;
    let spec = MissionSpec {
        destination: args.dest,
        budget_j: args.budget.unwrap_or(params.battery_budget),
        payload_kg: args.payload,
        ground_speed: args.speed.unwrap_or(params.cruise_speed),
        class_count: ClassCount::try_from_u32(args.classes)?,
        start_slot: args.start_slot,
    };

    match args.algo.as_str() {
        "oracle" => {
            spec.validate(&graph, &params)?;
            match clairvoyant_optimum(&graph, &trace, &params, &spec, args.horizon)? {
                Some(walk) => {
                    println!(
                        "FEASIBLE cost_j={:.3} edges={}",
                        walk.total_cost_j,
                        walk.steps.len()
                    );
                    if let Some(out) = &args.out {
                        let mut text = serde_json::to_string_pretty(&walk)?;
                        text.push('\n');
                        std::fs::write(out, text)?;
                    }
                }
                None => println!("INFEASIBLE"),
            }
        }
        name => {
            let algorithm = match name {
                "osp" => Algorithm::Osp,
                "dsp" => Algorithm::Dsp,
                "gsp" => Algorithm::Gsp,
                other => bail!("unknown algorithm `{other}` (expected osp|dsp|gsp|oracle)"),
            };
            let log = match algorithm {
                Algorithm::Osp => run_osp(&graph, &trace, &params, &spec)?,
                Algorithm::Dsp => run_dsp(&graph, &trace, &params, &spec)?,
                Algorithm::Gsp => run_gsp(&graph, &trace, &params, &spec)?,
            };
            println!(
                "{} consumed_j={:.3} residual_j={:.3}",
                log.status, log.consumed_j, log.residual_j
            );
            if let Some(out) = &args.out {
                let mut text = serde_json::to_string_pretty(&log)?;
                text.push('\n');
                std::fs::write(out, text)?;
            }
        }
    }
    Ok(())
}

fn cmd_campaign(args: CampaignArgs) -> anyhow::Result<()> {
    let config = ExperimentConfig::load(&args.config)?;
    let result = run_campaign(&config)?;
    let files = emit_outputs(&result, &args.out)?;
    for (scenario, failures) in &result.generation_failures {
        eprintln!("warning: {failures} graph(s) skipped in scenario {scenario}");
    }
    for file in &files {
        println!("wrote {}", file.display());
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::GenerateEr(args) => cmd_generate_er(args),
        Command::GenerateTrace(args) => cmd_generate_trace(args),
        Command::Tessellate(args) => cmd_tessellate(args),
        Command::Preprocess(args) => cmd_preprocess(args),
        Command::Run(args) => cmd_run(args),
        Command::Campaign(args) => cmd_campaign(args),
    };
    if let Err(err) = result {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}
