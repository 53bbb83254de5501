//! Vertex pre-classification against best- and worst-case winds.
//!
//! Prices every edge once with the global unit-cost extremes (per leg) and
//! colors each destination by comparing its cheapest cycle in the two bound
//! graphs against the budget.

use std::collections::BTreeMap;

use crate::energy::{energy_bounds, DroneParams, EnergyBounds};
use crate::error::Result;
use crate::graph::{single_source_costs, DeliveryGraph, Direction, VertexId};
use crate::mission::{MissionSpec, VertexColor};

/// Worst-case and best-case cycle costs per vertex index (depot slots hold 0;
/// unreachable vertices hold infinity).
#[derive(Debug, Clone)]
pub struct CycleBounds {
    pub upper: Vec<f64>,
    pub lower: Vec<f64>,
}

impl CycleBounds {
    pub fn color(&self, vertex_idx: usize, budget_j: f64) -> VertexColor {
        if self.upper[vertex_idx] <= budget_j {
            VertexColor::Green
        } else if self.lower[vertex_idx] > budget_j {
            VertexColor::Black
        } else {
            VertexColor::Gray
        }
    }
}

/// Cheapest-cycle costs to every vertex in the upper- and lower-bound graphs.
///
/// The outbound leg is priced with the loaded bound and the return leg with
/// the empty bound, matching the payload each leg actually carries.
pub fn cycle_bounds(graph: &DeliveryGraph, bounds: &EnergyBounds) -> CycleBounds {
    let lengths: Vec<f64> = graph.edges().iter().map(|e| e.length_m).collect();
    let priced = |mu: f64| -> Vec<f64> { lengths.iter().map(|l| mu * l).collect() };
    let depot = graph.depot_idx();

    let combine = |loaded_mu: f64, empty_mu: f64| -> Vec<f64> {
        let out = single_source_costs(graph, &priced(loaded_mu), depot, Direction::Forward);
        let back = single_source_costs(graph, &priced(empty_mu), depot, Direction::Reverse);
        out.iter().zip(&back).map(|(a, b)| a + b).collect()
    };

    CycleBounds {
        upper: combine(bounds.loaded.max, bounds.empty.max),
        lower: combine(bounds.loaded.min, bounds.empty.min),
    }
}

/// Classify every non-depot vertex as GREEN, GRAY or BLACK for the given
/// budget and wind-speed alphabet.
pub fn preprocess(
    graph: &DeliveryGraph,
    params: &DroneParams,
    spec: &MissionSpec,
    wind_speeds: &[f64],
) -> Result<BTreeMap<VertexId, VertexColor>> {
    let bounds = energy_bounds(
        params,
        spec.payload_kg,
        spec.ground_speed,
        wind_speeds,
        spec.class_count,
    )?;
    let cb = cycle_bounds(graph, &bounds);
    let depot = graph.depot_idx();
    Ok(graph
        .vertices()
        .iter()
        .enumerate()
        .filter(|(idx, _)| *idx != depot)
        .map(|(idx, v)| (v.id, cb.color(idx, spec.budget_j)))
        .collect())
}
