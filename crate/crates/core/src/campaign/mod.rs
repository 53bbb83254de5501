//! Campaign engine: sweep budgets over many graphs and traces, run the
//! pre-classification plus all three algorithms on every GRAY destination,
//! and aggregate outcome statistics.

mod output;

pub use output::emit_outputs;

use std::collections::BTreeMap;
use std::path::PathBuf;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::energy::{energy_bounds, DroneParams, EnergyBounds};
use crate::error::{Error, Result};
use crate::graph::{CostModel, DeliveryGraph, VertexId, WindTrace};
use crate::mission::{
    cycle_bounds, run_trajectory, Algorithm, MissionSpec, MissionStatus, VertexColor,
};
use crate::scenarios::{
    build_tessellation_graph, generate_er, generate_wind_trace, load_wcu_csv, scale_dataset,
    station_points, BoundingBox, ErConfig, Station, TessellationKind,
};
use crate::wind::ClassCount;

/// Campaign-wide settings.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignSettings {
    pub seed: u64,
    /// Battery fractions to sweep, each in (0, 1].
    #[serde(default = "default_budget_fractions")]
    pub budget_fractions: Vec<f64>,
    #[serde(default = "default_classes")]
    pub classes: u32,
    #[serde(default = "default_slot_duration")]
    pub slot_duration: f64,
    #[serde(default = "default_trace_horizon")]
    pub trace_horizon: u32,
    #[serde(default = "default_wind_speeds")]
    pub wind_speeds: Vec<f64>,
    /// Payload carried on the outbound leg, kg.
    pub payload: f64,
    /// Ground speed, m/s; defaults to the drone's cruise speed.
    #[serde(default)]
    pub speed: Option<f64>,
    /// Keep one record per mission (for recounts and debugging).
    #[serde(default)]
    pub keep_records: bool,
}

fn default_budget_fractions() -> Vec<f64> {
    (1..=10).map(|i| i as f64 / 10.0).collect()
}

fn default_classes() -> u32 {
    4
}

fn default_slot_duration() -> f64 {
    60.0
}

fn default_trace_horizon() -> u32 {
    128
}

fn default_wind_speeds() -> Vec<f64> {
    vec![0.0, 5.0, 10.0, 15.0]
}

/// Random-graph scenario block.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErCampaign {
    pub n: usize,
    pub c_values: Vec<f64>,
    pub graphs_per_c: usize,
    pub area_side: f64,
}

/// Tessellation scenario block: synthetic stations or a station dataset.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TessellationCampaign {
    #[serde(default = "default_station_count")]
    pub station_count: usize,
    #[serde(default = "default_tess_area")]
    pub area_side: f64,
    #[serde(default = "default_kinds")]
    pub kinds: Vec<TessellationKind>,
    /// Independent station layouts to average over.
    #[serde(default = "default_instances")]
    pub instances: usize,
    /// Station dataset (CSV); replaces synthetic stations and the trace.
    #[serde(default)]
    pub wcu_file: Option<PathBuf>,
    #[serde(default = "default_distance_factor")]
    pub distance_factor: f64,
    #[serde(default = "default_time_factor")]
    pub time_factor: u32,
}

fn default_station_count() -> usize {
    12
}

fn default_tess_area() -> f64 {
    5000.0
}

fn default_kinds() -> Vec<TessellationKind> {
    vec![
        TessellationKind::Vg,
        TessellationKind::Dg,
        TessellationKind::Hg,
    ]
}

fn default_instances() -> usize {
    1
}

fn default_distance_factor() -> f64 {
    10.0
}

fn default_time_factor() -> u32 {
    4
}

/// Full experiment description, loadable from TOML.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub campaign: CampaignSettings,
    #[serde(default)]
    pub drone: DroneParams,
    #[serde(default)]
    pub er: Option<ErCampaign>,
    #[serde(default)]
    pub tessellation: Option<TessellationCampaign>,
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let config: ExperimentConfig =
            toml::from_str(text).map_err(|e| Error::Config(format!("campaign config: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        self.drone.validate()?;
        let c = &self.campaign;
        if c.budget_fractions.is_empty()
            || c.budget_fractions.iter().any(|f| !(*f > 0.0 && *f <= 1.0))
        {
            return Err(Error::Config(
                "budget fractions must lie in (0, 1] and not be empty".into(),
            ));
        }
        ClassCount::try_from_u32(c.classes)?;
        if c.wind_speeds.is_empty() {
            return Err(Error::Config("wind alphabet must not be empty".into()));
        }
        if !(c.slot_duration > 0.0) || c.trace_horizon == 0 {
            return Err(Error::Config(
                "slot duration and horizon must be positive".into(),
            ));
        }
        if self.er.is_none() && self.tessellation.is_none() {
            return Err(Error::Config(
                "configure at least one of [er] or [tessellation]".into(),
            ));
        }
        if let Some(er) = &self.er {
            if er.graphs_per_c == 0 || er.c_values.is_empty() {
                return Err(Error::Config(
                    "[er] needs c values and graphs_per_c >= 1".into(),
                ));
            }
        }
        if let Some(t) = &self.tessellation {
            if t.instances == 0 || t.kinds.is_empty() {
                return Err(Error::Config(
                    "[tessellation] needs kinds and instances >= 1".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn class_count(&self) -> ClassCount {
        ClassCount::try_from_u32(self.campaign.classes).expect("validated")
    }

    pub fn ground_speed(&self) -> f64 {
        self.campaign.speed.unwrap_or(self.drone.cruise_speed)
    }
}

/// Mission status counts of one (scenario, algorithm, budget) cell.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatusCell {
    pub canceled: u64,
    pub success: u64,
    pub delivered: u64,
    pub fail: u64,
}

impl StatusCell {
    pub fn add(&mut self, status: MissionStatus) {
        match status {
            MissionStatus::Canceled => self.canceled += 1,
            MissionStatus::Success => self.success += 1,
            MissionStatus::Delivered => self.delivered += 1,
            MissionStatus::Fail => self.fail += 1,
        }
    }

    pub fn merge(&mut self, other: &StatusCell) {
        self.canceled += other.canceled;
        self.success += other.success;
        self.delivered += other.delivered;
        self.fail += other.fail;
    }

    pub fn total(&self) -> u64 {
        self.canceled + self.success + self.delivered + self.fail
    }

    pub fn count(&self, status: MissionStatus) -> u64 {
        match status {
            MissionStatus::Canceled => self.canceled,
            MissionStatus::Success => self.success,
            MissionStatus::Delivered => self.delivered,
            MissionStatus::Fail => self.fail,
        }
    }

    /// Percentage of one status (0 when the cell is empty).
    pub fn percent(&self, status: MissionStatus) -> f64 {
        let total = self.total();
        if total == 0 {
            0.0
        } else {
            100.0 * self.count(status) as f64 / total as f64
        }
    }
}

/// Vertex color counts of one (scenario, budget) cell.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorCell {
    pub green: u64,
    pub gray: u64,
    pub black: u64,
}

impl ColorCell {
    pub fn add(&mut self, color: VertexColor) {
        match color {
            VertexColor::Green => self.green += 1,
            VertexColor::Gray => self.gray += 1,
            VertexColor::Black => self.black += 1,
        }
    }

    pub fn merge(&mut self, other: &ColorCell) {
        self.green += other.green;
        self.gray += other.gray;
        self.black += other.black;
    }

    pub fn total(&self) -> u64 {
        self.green + self.gray + self.black
    }

    pub fn percent(&self, color: VertexColor) -> f64 {
        let total = self.total();
        if total == 0 {
            return 0.0;
        }
        let n = match color {
            VertexColor::Green => self.green,
            VertexColor::Gray => self.gray,
            VertexColor::Black => self.black,
        };
        100.0 * n as f64 / total as f64
    }
}

/// One mission outcome kept for recounts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MissionRecord {
    pub scenario: String,
    pub graph_index: usize,
    pub destination: VertexId,
    pub budget_fraction: f64,
    pub algorithm: Algorithm,
    pub status: MissionStatus,
    pub consumed_j: f64,
}

/// Aggregated campaign outcome.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CampaignResult {
    /// Budget fractions, ascending; indices key the cells below.
    pub budget_fractions: Vec<f64>,
    /// (scenario, algorithm, budget index) -> status counts.
    pub statuses: BTreeMap<String, Vec<BTreeMap<String, StatusCell>>>,
    /// scenario -> per-budget color counts.
    pub colors: BTreeMap<String, Vec<ColorCell>>,
    /// scenario -> graphs skipped because generation failed.
    pub generation_failures: BTreeMap<String, u64>,
    /// Per-mission records (only when `keep_records` is set).
    pub records: Vec<MissionRecord>,
}

impl CampaignResult {
    pub fn status_cell(
        &self,
        scenario: &str,
        algorithm: Algorithm,
        budget_idx: usize,
    ) -> StatusCell {
        self.statuses
            .get(scenario)
            .and_then(|per_budget| per_budget.get(budget_idx))
            .and_then(|m| m.get(&algorithm.to_string()))
            .copied()
            .unwrap_or_default()
    }

    pub fn color_cell(&self, scenario: &str, budget_idx: usize) -> ColorCell {
        self.colors
            .get(scenario)
            .and_then(|v| v.get(budget_idx))
            .copied()
            .unwrap_or_default()
    }
}

/// Count statuses over a batch of mission outcomes.
pub fn summarize<'a, I>(statuses: I) -> StatusCell
where
    I: IntoIterator<Item = &'a MissionStatus>,
{
    let mut cell = StatusCell::default();
    for s in statuses {
        cell.add(*s);
    }
    cell
}

/// One graph-level unit of campaign work.
struct Job {
    scenario: String,
    graph_index: usize,
    build: JobBuild,
    trace_seed: u64,
}

enum JobBuild {
    Er(ErConfig),
    Synthetic {
        stations_seed: u64,
        station_count: usize,
        area_side: f64,
        kind: TessellationKind,
    },
    Prebuilt {
        graph: Box<DeliveryGraph>,
        trace: Box<WindTrace>,
    },
}

struct JobOutcome {
    scenario: String,
    /// [budget][algorithm name -> cell]
    statuses: Vec<BTreeMap<String, StatusCell>>,
    colors: Vec<ColorCell>,
    records: Vec<MissionRecord>,
    generation_failed: bool,
}

fn synthetic_stations(seed: u64, count: usize, area_side: f64) -> Vec<Station> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            Station::new(
                format!("s{i}"),
                rng.gen_range(0.05 * area_side..0.95 * area_side),
                rng.gen_range(0.05 * area_side..0.95 * area_side),
            )
        })
        .collect()
}

fn build_jobs(config: &ExperimentConfig) -> Result<Vec<Job>> {
    let mut seed_rng = ChaCha8Rng::seed_from_u64(config.campaign.seed);
    let mut jobs = Vec::new();

    if let Some(er) = &config.er {
        for &c in &er.c_values {
            for graph_index in 0..er.graphs_per_c {
                let graph_seed = seed_rng.gen::<u64>();
                let trace_seed = seed_rng.gen::<u64>();
                jobs.push(Job {
                    scenario: format!("er-c{c}"),
                    graph_index,
                    build: JobBuild::Er(ErConfig::new(er.n, c, er.area_side, graph_seed)),
                    trace_seed,
                });
            }
        }
    }

    if let Some(tess) = &config.tessellation {
        if let Some(path) = &tess.wcu_file {
            let records = load_wcu_csv(path)?;
            let (scaled, trace) = scale_dataset(&records, tess.distance_factor, tess.time_factor)?;
            let stations: Vec<Station> = station_points(&scaled)?
                .into_iter()
                .map(|(id, p)| Station::new(id, p.x, p.y))
                .collect();
            let points: Vec<crate::wind::Point2D> = stations.iter().map(|s| s.pos()).collect();
            let bbox = BoundingBox::around(&points, 0.1 * span_of(&points))?;
            for &kind in &tess.kinds {
                let graph = build_tessellation_graph(
                    &stations,
                    kind,
                    &bbox,
                    crate::scenarios::DEFAULT_GEOMETRY_TOLERANCE,
                )?;
                jobs.push(Job {
                    scenario: kind.to_string(),
                    graph_index: 0,
                    build: JobBuild::Prebuilt {
                        graph: Box::new(graph),
                        trace: Box::new(trace.clone()),
                    },
                    trace_seed: 0,
                });
            }
        } else {
            for instance in 0..tess.instances {
                let stations_seed = seed_rng.gen::<u64>();
                let trace_seed = seed_rng.gen::<u64>();
                for &kind in &tess.kinds {
                    jobs.push(Job {
                        scenario: kind.to_string(),
                        graph_index: instance,
                        build: JobBuild::Synthetic {
                            stations_seed,
                            station_count: tess.station_count,
                            area_side: tess.area_side,
                            kind,
                        },
                        trace_seed,
                    });
                }
            }
        }
    }

    Ok(jobs)
}

fn span_of(points: &[crate::wind::Point2D]) -> f64 {
    let min_x = points.iter().map(|p| p.x).fold(f64::INFINITY, f64::min);
    let max_x = points.iter().map(|p| p.x).fold(f64::NEG_INFINITY, f64::max);
    let min_y = points.iter().map(|p| p.y).fold(f64::INFINITY, f64::min);
    let max_y = points.iter().map(|p| p.y).fold(f64::NEG_INFINITY, f64::max);
    (max_x - min_x).hypot(max_y - min_y).max(1.0)
}

/// Run the whole campaign described by the configuration.
///
/// Deterministic for a fixed configuration: per-graph work parallelizes, the
/// merge is a plain ordered reduction over integer counts.
pub fn run_campaign(config: &ExperimentConfig) -> Result<CampaignResult> {
    config.validate()?;
    let mut fractions = config.campaign.budget_fractions.clone();
    fractions.sort_by(|a, b| a.partial_cmp(b).unwrap());
    fractions.dedup();
    let k = config.class_count();
    let speed = config.ground_speed();
    let bounds = energy_bounds(
        &config.drone,
        config.campaign.payload,
        speed,
        &config.campaign.wind_speeds,
        k,
    )?;

    let jobs = build_jobs(config)?;
    let outcomes: Vec<Result<JobOutcome>> = jobs
        .into_par_iter()
        .map(|job| run_job(config, &fractions, &bounds, job))
        .collect();

    let mut result = CampaignResult {
        budget_fractions: fractions.clone(),
        ..Default::default()
    };
    for outcome in outcomes {
        let outcome = outcome?;
        let per_budget = result
            .statuses
            .entry(outcome.scenario.clone())
            .or_insert_with(|| vec![BTreeMap::new(); fractions.len()]);
        for (bi, cells) in outcome.statuses.into_iter().enumerate() {
            for (algo, cell) in cells {
                per_budget[bi].entry(algo).or_default().merge(&cell);
            }
        }
        let colors = result
            .colors
            .entry(outcome.scenario.clone())
            .or_insert_with(|| vec![ColorCell::default(); fractions.len()]);
        for (bi, cell) in outcome.colors.into_iter().enumerate() {
            colors[bi].merge(&cell);
        }
        if outcome.generation_failed {
            *result
                .generation_failures
                .entry(outcome.scenario.clone())
                .or_default() += 1;
        }
        result.records.extend(outcome.records);
    }
    Ok(result)
}

fn run_job(
    config: &ExperimentConfig,
    fractions: &[f64],
    bounds: &EnergyBounds,
    job: Job,
) -> Result<JobOutcome> {
    let mut outcome = JobOutcome {
        scenario: job.scenario.clone(),
        statuses: vec![BTreeMap::new(); fractions.len()],
        colors: vec![ColorCell::default(); fractions.len()],
        records: Vec::new(),
        generation_failed: false,
    };

    let built: Result<(DeliveryGraph, WindTrace)> = match job.build {
        JobBuild::Er(er_config) => generate_er(&er_config).and_then(|graph| {
            let trace = generate_wind_trace(
                job.trace_seed,
                config.campaign.trace_horizon,
                config.campaign.slot_duration,
                &config.campaign.wind_speeds,
                &["global".to_string()],
            )?;
            Ok((graph, trace))
        }),
        JobBuild::Synthetic {
            stations_seed,
            station_count,
            area_side,
            kind,
        } => {
            let stations = synthetic_stations(stations_seed, station_count, area_side);
            let bbox = BoundingBox::new(0.0, 0.0, area_side, area_side)?;
            build_tessellation_graph(
                &stations,
                kind,
                &bbox,
                crate::scenarios::DEFAULT_GEOMETRY_TOLERANCE,
            )
            .and_then(|graph| {
                let regions: Vec<String> = stations.iter().map(|s| s.id.clone()).collect();
                let trace = generate_wind_trace(
                    job.trace_seed,
                    config.campaign.trace_horizon,
                    config.campaign.slot_duration,
                    &config.campaign.wind_speeds,
                    &regions,
                )?;
                Ok((graph, trace))
            })
        }
        JobBuild::Prebuilt { graph, trace } => Ok((*graph, *trace)),
    };
    let (graph, trace) = match built {
        Ok(pair) => pair,
        Err(Error::Generation(_)) | Err(Error::Geometry(_)) => {
            outcome.generation_failed = true;
            return Ok(outcome);
        }
        Err(e) => return Err(e),
    };

    let full_budget = config.drone.battery_budget;
    let cb = cycle_bounds(&graph, bounds);
    let depot_idx = graph.depot_idx();

    // Colors per budget, plus the set of destinations that are GRAY anywhere.
    let mut gray_anywhere: Vec<usize> = Vec::new();
    for (vidx, _) in graph.vertices().iter().enumerate() {
        if vidx == depot_idx {
            continue;
        }
        let mut gray = false;
        for (bi, f) in fractions.iter().enumerate() {
            let color = cb.color(vidx, f * full_budget);
            outcome.colors[bi].add(color);
            gray |= color == VertexColor::Gray;
        }
        if gray {
            gray_anywhere.push(vidx);
        }
    }

    let mut model = CostModel::new(
        &graph,
        &trace,
        &config.drone,
        config.campaign.payload,
        config.ground_speed(),
        config.class_count(),
    )?;

    for &vidx in &gray_anywhere {
        let destination = graph.vertex(vidx).id;
        let spec = MissionSpec {
            destination,
            budget_j: full_budget,
            payload_kg: config.campaign.payload,
            ground_speed: config.ground_speed(),
            class_count: config.class_count(),
            start_slot: 0,
        };
        for algorithm in Algorithm::ALL {
            let trajectory = run_trajectory(&mut model, &spec, algorithm)?;
            for (bi, f) in fractions.iter().enumerate() {
                if cb.color(vidx, f * full_budget) != VertexColor::Gray {
                    continue;
                }
                let log = trajectory.finalize(f * full_budget);
                outcome.statuses[bi]
                    .entry(algorithm.to_string())
                    .or_default()
                    .add(log.status);
                if config.campaign.keep_records {
                    outcome.records.push(MissionRecord {
                        scenario: job.scenario.clone(),
                        graph_index: job.graph_index,
                        destination,
                        budget_fraction: *f,
                        algorithm,
                        status: log.status,
                        consumed_j: log.consumed_j,
                    });
                }
            }
        }
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_config() -> ExperimentConfig {
        ExperimentConfig::from_toml_str(
            r#"
            [campaign]
            seed = 7
            payload = 7.0
            budget_fractions = [0.25, 0.5, 1.0]
            trace_horizon = 32
            keep_records = true

            [er]
            n = 8
            c_values = [1.5]
            graphs_per_c = 3
            area_side = 1500.0
            "#,
        )
        .unwrap()
    }

    #[test]
    fn campaign_is_deterministic() {
        let config = tiny_config();
        let a = run_campaign(&config).unwrap();
        let b = run_campaign(&config).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn summary_counts_match_record_recount() {
        let config = tiny_config();
        let result = run_campaign(&config).unwrap();
        for (bi, &fraction) in result.budget_fractions.iter().enumerate() {
            for algorithm in Algorithm::ALL {
                let statuses: Vec<MissionStatus> = result
                    .records
                    .iter()
                    .filter(|r| r.budget_fraction == fraction && r.algorithm == algorithm)
                    .map(|r| r.status)
                    .collect();
                let recount = summarize(statuses.iter());
                assert_eq!(result.status_cell("er-c1.5", algorithm, bi), recount);
            }
        }
    }

    #[test]
    fn records_match_standalone_runs() {
        // Re-run a handful of recorded missions through the public one-shot
        // runners and compare statuses.
        let config = tiny_config();
        let result = run_campaign(&config).unwrap();
        assert!(!result.records.is_empty());

        // Recreate the graphs/traces exactly as the campaign does.
        let jobs = build_jobs(&config).unwrap();
        for (job_idx, job) in jobs.into_iter().enumerate() {
            let JobBuild::Er(er_config) = &job.build else {
                panic!()
            };
            let graph = generate_er(er_config).unwrap();
            let trace = generate_wind_trace(
                job.trace_seed,
                config.campaign.trace_horizon,
                config.campaign.slot_duration,
                &config.campaign.wind_speeds,
                &["global".to_string()],
            )
            .unwrap();
            for record in result
                .records
                .iter()
                .filter(|r| r.graph_index == job_idx)
                .take(6)
            {
                let spec = MissionSpec {
                    destination: record.destination,
                    budget_j: record.budget_fraction * config.drone.battery_budget,
                    payload_kg: config.campaign.payload,
                    ground_speed: config.ground_speed(),
                    class_count: config.class_count(),
                    start_slot: 0,
                };
                let log = match record.algorithm {
                    Algorithm::Osp => crate::mission::run_osp(&graph, &trace, &config.drone, &spec),
                    Algorithm::Dsp => crate::mission::run_dsp(&graph, &trace, &config.drone, &spec),
                    Algorithm::Gsp => crate::mission::run_gsp(&graph, &trace, &config.drone, &spec),
                }
                .unwrap();
                assert_eq!(log.status, record.status, "record {record:?}");
                if log.status != MissionStatus::Canceled {
                    assert!((log.consumed_j - record.consumed_j).abs() < 1e-6);
                }
            }
        }
    }

    #[test]
    fn conservation_and_dsp_gsp_never_cancel() {
        let config = tiny_config();
        let result = run_campaign(&config).unwrap();
        for bi in 0..result.budget_fractions.len() {
            let osp = result.status_cell("er-c1.5", Algorithm::Osp, bi);
            let dsp = result.status_cell("er-c1.5", Algorithm::Dsp, bi);
            let gsp = result.status_cell("er-c1.5", Algorithm::Gsp, bi);
            assert_eq!(osp.total(), dsp.total());
            assert_eq!(osp.total(), gsp.total());
            assert_eq!(dsp.canceled, 0);
            assert_eq!(gsp.canceled, 0);
            // Gray mission count matches the color tally.
            let colors = result.color_cell("er-c1.5", bi);
            assert_eq!(osp.total(), colors.gray);
        }
    }

    #[test]
    fn saturated_budgets_leave_only_color_tallies() {
        // A battery large enough to turn every vertex GREEN: no GRAY
        // destinations exist, so no mission runs, and the summary carries
        // only the pre-processing fractions.
        let mut config = ExperimentConfig::from_toml_str(
            r#"
            [campaign]
            seed = 2
            payload = 7.0
            budget_fractions = [1.0]
            trace_horizon = 16
            keep_records = true

            [er]
            n = 6
            c_values = [2.0]
            graphs_per_c = 1
            area_side = 800.0
            "#,
        )
        .unwrap();
        config.drone.battery_budget = 1e12;
        let result = run_campaign(&config).unwrap();
        assert!(result.records.is_empty());
        let colors = result.color_cell("er-c2", 0);
        assert_eq!(colors.total(), 5);
        assert_eq!(colors.green, 5);
        for algorithm in Algorithm::ALL {
            assert_eq!(result.status_cell("er-c2", algorithm, 0).total(), 0);
        }
    }

    #[test]
    fn summarize_percentages() {
        use MissionStatus::*;
        let cell = summarize([Success, Success, Success, Fail].iter());
        assert_eq!(cell.percent(Success), 75.0);
        assert_eq!(cell.percent(Fail), 25.0);
        let permuted = summarize([Fail, Success, Success, Success].iter());
        assert_eq!(cell, permuted);
        assert_eq!(summarize([].iter()).total(), 0);
    }
}
