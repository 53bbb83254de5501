//! The three online mission algorithms and their shared replay machinery.
//!
//! Route choices never depend on the remaining budget: the planner flies the
//! same edges whatever the battery holds, only the final status differs. A
//! `Trajectory` therefore records the budget-independent edge stream once;
//! `finalize` derives the status and truncated log for any budget.

use crate::energy::{DroneParams, Leg};
use crate::error::Result;
use crate::graph::{
    departure_slot, shortest_cycle, shortest_path, CostModel, DeliveryGraph, EdgeId, WindTrace,
};
use crate::mission::{Algorithm, MissionEvent, MissionLog, MissionSpec, MissionStatus};

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct TrajectoryEvent {
    pub edge: EdgeId,
    pub departure_slot: u32,
    pub cost_j: f64,
}

/// Budget-independent replay of one mission.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub algorithm: Algorithm,
    /// Cycle cost estimated at the start snapshot (OSP: `None` when the
    /// destination is unreachable there).
    pub planned_cost_j: Option<f64>,
    pub(crate) events: Vec<TrajectoryEvent>,
    /// Index of the event whose arrival delivered the package.
    pub delivered_at: Option<usize>,
    /// Whether the replay ends back at the depot after delivering.
    pub completed: bool,
}

impl Trajectory {
    /// Total energy the full replay would charge.
    pub fn total_cost(&self) -> f64 {
        self.events.iter().map(|e| e.cost_j).sum()
    }

    /// Resolve the status and log for a concrete budget.
    ///
    /// The budget test runs right after charging each edge, before arrival
    /// bookkeeping: a drone that exhausts its battery on the edge into the
    /// customer never arrives, so that run is a FAIL, not a DELIVERED.
    pub fn finalize(&self, budget_j: f64) -> MissionLog {
        if self.algorithm == Algorithm::Osp {
            let canceled = match self.planned_cost_j {
                None => true,
                Some(planned) => planned > budget_j,
            };
            if canceled {
                return MissionLog {
                    algorithm: self.algorithm,
                    status: MissionStatus::Canceled,
                    planned_cost_j: self.planned_cost_j,
                    events: Vec::new(),
                    delivered_at: None,
                    consumed_j: 0.0,
                    residual_j: budget_j,
                };
            }
        }

        let mut events = Vec::new();
        let mut consumed = 0.0;
        for (i, ev) in self.events.iter().enumerate() {
            consumed += ev.cost_j;
            let residual = budget_j - consumed;
            events.push(MissionEvent {
                edge: ev.edge,
                departure_slot: ev.departure_slot,
                cost_j: ev.cost_j,
                residual_j: residual,
            });
            if residual < 0.0 {
                let delivered_before = self.delivered_at.is_some_and(|d| d < i);
                return MissionLog {
                    algorithm: self.algorithm,
                    status: if delivered_before {
                        MissionStatus::Delivered
                    } else {
                        MissionStatus::Fail
                    },
                    planned_cost_j: self.planned_cost_j,
                    events,
                    delivered_at: self.delivered_at.filter(|&d| d < i),
                    consumed_j: consumed,
                    residual_j: residual,
                };
            }
        }
        MissionLog {
            algorithm: self.algorithm,
            status: if self.completed {
                MissionStatus::Success
            } else {
                // Stranded with charge left: no path (DSP) or dead end (GSP).
                MissionStatus::Fail
            },
            planned_cost_j: self.planned_cost_j,
            events,
            delivered_at: self.delivered_at,
            consumed_j: consumed,
            residual_j: budget_j - consumed,
        }
    }
}

/// Mutable per-run state shared by the online algorithms.
struct LegState {
    current: usize,
    target: usize,
    removed: Vec<bool>,
    delivered: bool,
    elapsed_s: f64,
}

/// Run one algorithm to its natural end and record the edge stream.
pub fn run_trajectory(
    model: &mut CostModel,
    spec: &MissionSpec,
    algorithm: Algorithm,
) -> Result<Trajectory> {
    match algorithm {
        Algorithm::Osp => osp_trajectory(model, spec),
        Algorithm::Dsp => online_trajectory(model, spec, Algorithm::Dsp),
        Algorithm::Gsp => online_trajectory(model, spec, Algorithm::Gsp),
    }
}

fn osp_trajectory(model: &mut CostModel, spec: &MissionSpec) -> Result<Trajectory> {
    let snap0 = model.snapshot(spec.start_slot)?;
    let graph = model.graph();
    let depot = graph.depot_idx();
    let dest = graph
        .vertex_idx(spec.destination)
        .expect("validated destination");
    let Some(cycle) = shortest_cycle(
        graph,
        snap0.costs(Leg::Loaded),
        snap0.costs(Leg::Empty),
        depot,
        dest,
    ) else {
        return Ok(Trajectory {
            algorithm: Algorithm::Osp,
            planned_cost_j: None,
            events: Vec::new(),
            delivered_at: None,
            completed: false,
        });
    };

    let slot_duration = model.slot_duration();
    let mut elapsed = spec.start_slot as f64 * slot_duration;
    let mut events = Vec::new();
    let mut delivered_at = None;
    let legs = cycle
        .outbound
        .iter()
        .map(|&e| (e, Leg::Loaded))
        .chain(cycle.inbound.iter().map(|&e| (e, Leg::Empty)))
        .collect::<Vec<_>>();
    for (edge, leg) in legs {
        let eidx = model.graph().edge_idx(edge).unwrap();
        let slot = departure_slot(elapsed, slot_duration);
        let cost = model.snapshot(slot)?.cost(leg, eidx);
        events.push(TrajectoryEvent {
            edge,
            departure_slot: slot,
            cost_j: cost,
        });
        elapsed += model.traversal_time(eidx);
        if leg == Leg::Loaded && model.graph().head_idx(eidx) == dest && delivered_at.is_none() {
            delivered_at = Some(events.len() - 1);
        }
    }
    Ok(Trajectory {
        algorithm: Algorithm::Osp,
        planned_cost_j: Some(cycle.total_cost()),
        events,
        delivered_at,
        completed: true,
    })
}

fn online_trajectory(
    model: &mut CostModel,
    spec: &MissionSpec,
    algorithm: Algorithm,
) -> Result<Trajectory> {
    let n = model.graph().vertex_count();
    let depot = model.graph().depot_idx();
    let dest = model
        .graph()
        .vertex_idx(spec.destination)
        .expect("validated destination");
    let slot_duration = model.slot_duration();
    let mut state = LegState {
        current: depot,
        target: dest,
        removed: vec![false; n],
        delivered: false,
        elapsed_s: spec.start_slot as f64 * slot_duration,
    };
    let mut events = Vec::new();
    let mut delivered_at = None;
    let mut completed = false;

    loop {
        let slot = departure_slot(state.elapsed_s, slot_duration);
        let snap = model.snapshot(slot)?;
        let leg = if state.delivered {
            Leg::Empty
        } else {
            Leg::Loaded
        };
        let graph = model.graph();
        let chosen = match algorithm {
            Algorithm::Dsp => shortest_path(
                graph,
                snap.costs(leg),
                state.current,
                state.target,
                Some(&state.removed),
            )
            .map(|path| graph.edge_idx(path[0]).unwrap()),
            Algorithm::Gsp => cheapest_outgoing(graph, snap.costs(leg), &state),
            Algorithm::Osp => unreachable!("handled separately"),
        };
        let Some(eidx) = chosen else {
            // Stranded: no path to the target (DSP) or no edge at all (GSP).
            break;
        };
        events.push(TrajectoryEvent {
            edge: graph.edge(eidx).id,
            departure_slot: slot,
            cost_j: snap.cost(leg, eidx),
        });
        state.removed[state.current] = true;
        state.elapsed_s += model.traversal_time(eidx);
        state.current = model.graph().head_idx(eidx);

        if state.current == state.target {
            if !state.delivered {
                state.delivered = true;
                delivered_at = Some(events.len() - 1);
                state.removed.fill(false);
                state.target = depot;
            } else {
                completed = true;
                break;
            }
        }
        debug_assert!(events.len() <= 2 * (n - 1), "leg removal bounds the walk");
    }

    Ok(Trajectory {
        algorithm,
        planned_cost_j: None,
        events,
        delivered_at,
        completed,
    })
}

/// Cheapest usable outgoing edge; ties break on the smallest edge id.
fn cheapest_outgoing(graph: &DeliveryGraph, costs: &[f64], state: &LegState) -> Option<usize> {
    let mut best: Option<(f64, EdgeId, usize)> = None;
    for &eidx in graph.out_edges(state.current) {
        if state.removed[graph.head_idx(eidx)] {
            continue;
        }
        let cost = costs[eidx];
        let id = graph.edge(eidx).id;
        let better = match best {
            None => true,
            Some((bc, bid, _)) => cost < bc || (cost == bc && id < bid),
        };
        if better {
            best = Some((cost, id, eidx));
        }
    }
    best.map(|(_, _, eidx)| eidx)
}

fn run_with(
    graph: &DeliveryGraph,
    trace: &WindTrace,
    params: &DroneParams,
    spec: &MissionSpec,
    algorithm: Algorithm,
) -> Result<MissionLog> {
    spec.validate(graph, params)?;
    let mut model = CostModel::new(
        graph,
        trace,
        params,
        spec.payload_kg,
        spec.ground_speed,
        spec.class_count,
    )?;
    let trajectory = run_trajectory(&mut model, spec, algorithm)?;
    Ok(trajectory.finalize(spec.budget_j))
}

/// Plan a cycle once at the start snapshot, then follow it blindly.
pub fn run_osp(
    graph: &DeliveryGraph,
    trace: &WindTrace,
    params: &DroneParams,
    spec: &MissionSpec,
) -> Result<MissionLog> {
    run_with(graph, trace, params, spec, Algorithm::Osp)
}

/// Re-plan the shortest path to the current target at every vertex.
pub fn run_dsp(
    graph: &DeliveryGraph,
    trace: &WindTrace,
    params: &DroneParams,
    spec: &MissionSpec,
) -> Result<MissionLog> {
    run_with(graph, trace, params, spec, Algorithm::Dsp)
}

/// Follow the locally cheapest edge at every vertex.
pub fn run_gsp(
    graph: &DeliveryGraph,
    trace: &WindTrace,
    params: &DroneParams,
    spec: &MissionSpec,
) -> Result<MissionLog> {
    run_with(graph, trace, params, spec, Algorithm::Gsp)
}
