//! Clairvoyant optimum: the cheapest delivery walk given full knowledge of
//! every future snapshot. Ground truth for small instances.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};

use crate::energy::{DroneParams, Leg};
use crate::error::{Error, Result};
use crate::graph::{departure_slot, CostModel, DeliveryGraph, Walk, WalkStep, WindTrace};
use crate::mission::MissionSpec;

const MAX_STATES: usize = 2_000_000;

/// Search state. Elapsed time is part of the key (as exact bits): two walks
/// reaching a vertex in the same slot but at different offsets within it can
/// price later edges differently, so the slot alone would not be Markov.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct State {
    vertex: usize,
    elapsed_bits: u64,
    delivered: bool,
    steps: u32,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Scored {
    cost: f64,
    state: State,
}

impl Eq for Scored {}

impl Ord for Scored {
    fn cmp(&self, other: &Self) -> Ordering {
        // Min-heap with a full tie-break chain for determinism.
        other
            .cost
            .partial_cmp(&self.cost)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.state.steps.cmp(&self.state.steps))
            .then_with(|| other.state.vertex.cmp(&self.state.vertex))
            .then_with(|| other.state.elapsed_bits.cmp(&self.state.elapsed_bits))
            .then_with(|| other.state.delivered.cmp(&self.state.delivered))
    }
}

impl PartialOrd for Scored {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact minimum actual-cost walk depot -> destination -> depot, or `None`
/// when no walk within `max_steps` edges costs at most the budget.
///
/// Walks may revisit vertices. Default step bound: no feasible walk can use
/// more than `budget / (min unit cost * min edge length)` edges.
pub fn clairvoyant_optimum_with(
    model: &mut CostModel,
    spec: &MissionSpec,
    max_steps: Option<u32>,
) -> Result<Option<Walk>> {
    let graph = model.graph();
    let depot = graph.depot_idx();
    let dest = graph
        .vertex_idx(spec.destination)
        .expect("validated destination");
    let slot_duration = model.slot_duration();
    let max_steps = match max_steps {
        Some(h) => h,
        None => default_step_bound(model, spec)?,
    };

    let start = State {
        vertex: depot,
        elapsed_bits: (spec.start_slot as f64 * slot_duration).to_bits(),
        delivered: false,
        steps: 0,
    };
    let mut dist: HashMap<State, f64> = HashMap::new();
    let mut parent: HashMap<State, (State, usize)> = HashMap::new();
    let mut heap = BinaryHeap::new();
    dist.insert(start, 0.0);
    heap.push(Scored {
        cost: 0.0,
        state: start,
    });

    while let Some(Scored { cost, state }) = heap.pop() {
        if dist.get(&state).is_some_and(|&d| cost > d) {
            continue; // stale entry
        }
        if state.vertex == depot && state.delivered {
            return Ok(Some(reconstruct(model, spec, &parent, state, cost)?));
        }
        if state.steps >= max_steps {
            continue;
        }
        let elapsed = f64::from_bits(state.elapsed_bits);
        let slot = departure_slot(elapsed, slot_duration);
        let snap = model.snapshot(slot)?;
        let leg = if state.delivered {
            Leg::Empty
        } else {
            Leg::Loaded
        };
        for &eidx in model.graph().out_edges(state.vertex) {
            let next_cost = cost + snap.cost(leg, eidx);
            if next_cost > spec.budget_j {
                continue;
            }
            let head = model.graph().head_idx(eidx);
            let next = State {
                vertex: head,
                elapsed_bits: (elapsed + model.traversal_time(eidx)).to_bits(),
                delivered: state.delivered || head == dest,
                steps: state.steps + 1,
            };
            if dist.get(&next).is_none_or(|&d| next_cost < d) {
                dist.insert(next, next_cost);
                parent.insert(next, (state, eidx));
                heap.push(Scored {
                    cost: next_cost,
                    state: next,
                });
            }
        }
        if dist.len() > MAX_STATES {
            return Err(Error::OracleResource(dist.len()));
        }
    }
    Ok(None)
}

/// Convenience wrapper that builds the cost model internally.
pub fn clairvoyant_optimum(
    graph: &DeliveryGraph,
    trace: &WindTrace,
    params: &DroneParams,
    spec: &MissionSpec,
    max_steps: Option<u32>,
) -> Result<Option<Walk>> {
    spec.validate(graph, params)?;
    let mut model = CostModel::new(
        graph,
        trace,
        params,
        spec.payload_kg,
        spec.ground_speed,
        spec.class_count,
    )?;
    clairvoyant_optimum_with(&mut model, spec, max_steps)
}

fn default_step_bound(model: &CostModel, spec: &MissionSpec) -> Result<u32> {
    let min_length = model
        .graph()
        .edges()
        .iter()
        .map(|e| e.length_m)
        .fold(f64::INFINITY, f64::min);
    let min_mu = model.min_unit_cost();
    if !min_length.is_finite() || !(min_mu > 0.0) {
        return Err(Error::Config("cannot bound the oracle walk length".into()));
    }
    let bound = (spec.budget_j / (min_mu * min_length)).floor();
    Ok(bound.min(u32::MAX as f64) as u32)
}

fn reconstruct(
    model: &mut CostModel,
    spec: &MissionSpec,
    parent: &HashMap<State, (State, usize)>,
    goal: State,
    total_cost: f64,
) -> Result<Walk> {
    let slot_duration = model.slot_duration();
    let mut chain = Vec::new();
    let mut cursor = goal;
    while let Some(&(prev, eidx)) = parent.get(&cursor) {
        chain.push((prev, eidx));
        cursor = prev;
    }
    chain.reverse();
    let mut steps = Vec::with_capacity(chain.len());
    for (from, eidx) in chain {
        let slot = departure_slot(f64::from_bits(from.elapsed_bits), slot_duration);
        let leg = if from.delivered {
            Leg::Empty
        } else {
            Leg::Loaded
        };
        let cost = model.snapshot(slot)?.cost(leg, eidx);
        steps.push(WalkStep {
            edge: model.graph().edge(eidx).id,
            departure_slot: slot,
            leg,
            cost_j: cost,
        });
    }
    Ok(Walk {
        start_slot: spec.start_slot,
        steps,
        total_cost_j: total_cost,
    })
}
