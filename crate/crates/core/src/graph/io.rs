//! Versioned JSON formats for graphs and wind traces.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{DeliveryGraph, Edge, Vertex, VertexId, WindTrace};
use crate::error::{Error, Result};
use crate::wind::GlobalWind;

pub const GRAPH_SCHEMA: &str = "delivery-graph/v1";
pub const TRACE_SCHEMA: &str = "wind-trace/v1";

#[derive(Serialize, Deserialize)]
struct GraphFile {
    schema: String,
    depot: VertexId,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

#[derive(Serialize, Deserialize)]
struct WindRecord {
    speed: f64,
    direction: f64,
}

#[derive(Serialize, Deserialize)]
struct TraceFile {
    schema: String,
    slot_duration: f64,
    horizon: u32,
    regions: Vec<String>,
    slots: Vec<BTreeMap<String, WindRecord>>,
}

pub fn save_graph(graph: &DeliveryGraph, path: &Path) -> Result<()> {
    let file = GraphFile {
        schema: GRAPH_SCHEMA.to_string(),
        depot: graph.depot(),
        vertices: graph.vertices().to_vec(),
        edges: graph.edges().to_vec(),
    };
    let mut text = serde_json::to_string_pretty(&file)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

pub fn load_graph(path: &Path) -> Result<DeliveryGraph> {
    let text = std::fs::read_to_string(path)?;
    let file: GraphFile = serde_json::from_str(&text)?;
    if file.schema != GRAPH_SCHEMA {
        return Err(Error::InvalidGraph(format!(
            "unsupported graph schema `{}` (expected `{GRAPH_SCHEMA}`)",
            file.schema
        )));
    }
    DeliveryGraph::new(file.vertices, file.edges, file.depot)
}

pub fn save_trace(trace: &WindTrace, path: &Path) -> Result<()> {
    let slots = (0..trace.horizon())
        .map(|t| {
            trace
                .slot_map(t)
                .into_iter()
                .map(|(region, wind)| {
                    (
                        region,
                        WindRecord {
                            speed: wind.speed_ms,
                            direction: wind.direction_deg,
                        },
                    )
                })
                .collect()
        })
        .collect();
    let file = TraceFile {
        schema: TRACE_SCHEMA.to_string(),
        slot_duration: trace.slot_duration(),
        horizon: trace.horizon(),
        regions: trace.regions().to_vec(),
        slots,
    };
    let mut text = serde_json::to_string_pretty(&file)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

pub fn load_trace(path: &Path) -> Result<WindTrace> {
    let text = std::fs::read_to_string(path)?;
    let file: TraceFile = serde_json::from_str(&text)?;
    if file.schema != TRACE_SCHEMA {
        return Err(Error::InvalidTrace(format!(
            "unsupported trace schema `{}` (expected `{TRACE_SCHEMA}`)",
            file.schema
        )));
    }
    if file.horizon as usize != file.slots.len() {
        return Err(Error::InvalidTrace(format!(
            "horizon {} does not match {} slots",
            file.horizon,
            file.slots.len()
        )));
    }
    let maps = file
        .slots
        .into_iter()
        .map(|m| {
            m.into_iter()
                .map(|(region, w)| (region, GlobalWind::new(w.speed, w.direction)))
                .collect()
        })
        .collect();
    WindTrace::new(file.slot_duration, file.regions, maps)
}
