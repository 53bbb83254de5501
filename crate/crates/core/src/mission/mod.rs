//! Mission decision layer: vertex pre-classification, the three online
//! delivery algorithms, and a clairvoyant optimum for small instances.

mod online;
mod oracle;
mod preprocess;

pub use online::{run_dsp, run_gsp, run_osp, run_trajectory, Trajectory};
pub use oracle::{clairvoyant_optimum, clairvoyant_optimum_with};
pub use preprocess::{cycle_bounds, preprocess, CycleBounds};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::energy::DroneParams;
use crate::error::{Error, Result};
use crate::graph::{DeliveryGraph, EdgeId, VertexId};
use crate::wind::ClassCount;

/// One delivery task.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MissionSpec {
    /// Customer vertex to serve.
    pub destination: VertexId,
    /// Energy budget, J.
    pub budget_j: f64,
    /// Payload carried on the outbound leg, kg.
    pub payload_kg: f64,
    /// Ground speed, m/s.
    pub ground_speed: f64,
    /// Wind direction quantization.
    pub class_count: ClassCount,
    /// Slot at which the mission starts.
    pub start_slot: u32,
}

impl MissionSpec {
    pub fn validate(&self, graph: &DeliveryGraph, params: &DroneParams) -> Result<()> {
        if self.destination == graph.depot() {
            return Err(Error::Config(
                "destination must differ from the depot".into(),
            ));
        }
        if graph.vertex_idx(self.destination).is_none() {
            return Err(Error::Config(format!(
                "destination {} is not a vertex",
                self.destination
            )));
        }
        if !(self.budget_j > 0.0) {
            return Err(Error::Config(format!(
                "budget {} must be positive",
                self.budget_j
            )));
        }
        if self.payload_kg > params.max_payload {
            return Err(Error::PayloadExceeded {
                payload: self.payload_kg,
                max: params.max_payload,
            });
        }
        if !(self.ground_speed > 0.0) {
            return Err(Error::Config("ground speed must be positive".into()));
        }
        Ok(())
    }
}

/// Outcome of one mission.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MissionStatus {
    /// Never started: the initial estimate exceeded the budget (OSP only).
    Canceled,
    /// Ran out of energy (or got stranded) before delivering.
    Fail,
    /// Delivered but could not complete the return leg.
    Delivered,
    /// Full round trip within budget.
    Success,
}

impl fmt::Display for MissionStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MissionStatus::Canceled => "CANCELED",
            MissionStatus::Fail => "FAIL",
            MissionStatus::Delivered => "DELIVERED",
            MissionStatus::Success => "SUCCESS",
        };
        f.write_str(s)
    }
}

/// The three online mission algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    /// Plan a full cycle once at the start snapshot, then follow it.
    Osp,
    /// Recompute the shortest path to the current target at every vertex.
    Dsp,
    /// Take the locally cheapest outgoing edge at every vertex.
    Gsp,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Osp, Algorithm::Dsp, Algorithm::Gsp];
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Algorithm::Osp => "osp",
            Algorithm::Dsp => "dsp",
            Algorithm::Gsp => "gsp",
        };
        f.write_str(s)
    }
}

/// Feasibility color assigned by pre-processing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VertexColor {
    /// Feasible under every wind in the alphabet.
    Green,
    /// Feasibility depends on the winds encountered.
    Gray,
    /// Infeasible even under the most favorable winds.
    Black,
}

impl fmt::Display for VertexColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            VertexColor::Green => "GREEN",
            VertexColor::Gray => "GRAY",
            VertexColor::Black => "BLACK",
        };
        f.write_str(s)
    }
}

/// One charged edge in a mission log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MissionEvent {
    pub edge: EdgeId,
    pub departure_slot: u32,
    pub cost_j: f64,
    /// Budget remaining after charging this edge (negative on the fatal edge).
    pub residual_j: f64,
}

/// Executed trace of one mission.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MissionLog {
    pub algorithm: Algorithm,
    pub status: MissionStatus,
    /// Planned cycle cost at the start snapshot (OSP only).
    pub planned_cost_j: Option<f64>,
    pub events: Vec<MissionEvent>,
    /// Index of the event whose arrival delivered the package.
    pub delivered_at: Option<usize>,
    /// Total energy charged across `events`, J.
    pub consumed_j: f64,
    /// Budget minus consumed energy, J.
    pub residual_j: f64,
}
