//! Decides and simulates single-package drone delivery missions on graphs
//! whose edge energy costs change with the wind over time.
//!
//! The pipeline: a wind model quantizes relative directions into classes, an
//! energy model prices each edge in J/m, a time-dependent graph replays the
//! per-slot costs, mission algorithms fly (or cancel) delivery cycles under
//! an energy budget, and scenario generators plus a campaign engine
//! aggregate outcome statistics over many graphs, traces and budgets.

// Validation uses `!(x > 0.0)` on purpose: unlike `x <= 0.0` it also rejects
// NaN inputs.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod campaign;
pub mod energy;
pub mod error;
pub mod graph;
pub mod mission;
pub mod scenarios;
pub mod wind;

pub use energy::{DroneParams, EnergyBounds, Leg, PowerBreakdown};
pub use error::{Error, Result};
pub use graph::{DeliveryGraph, Snapshot, Walk, WindTrace};
pub use mission::{Algorithm, MissionLog, MissionSpec, MissionStatus, VertexColor};
pub use wind::{ClassCount, GlobalWind, Point2D};
