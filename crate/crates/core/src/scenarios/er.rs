//! Synthetic delivery areas: sparse random graphs over a square, plus
//! uniformly random wind traces.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{DeliveryGraph, Edge, Vertex, WindKey, WindTrace};
use crate::wind::GlobalWind;

/// Parameters of the random-graph generator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErConfig {
    /// Number of vertices (the depot included).
    pub vertex_count: usize,
    /// Density constant `c` in the edge probability `c * ln(n) / n`.
    pub density_constant: f64,
    /// Side of the square delivery area, m.
    pub area_side_m: f64,
    pub seed: u64,
    /// Resampling attempts before a disconnected area counts as a failure.
    pub retry_cap: usize,
}

impl ErConfig {
    pub fn new(vertex_count: usize, density_constant: f64, area_side_m: f64, seed: u64) -> Self {
        Self {
            vertex_count,
            density_constant,
            area_side_m,
            seed,
            retry_cap: 1000,
        }
    }

    pub fn edge_probability(&self) -> f64 {
        self.density_constant * (self.vertex_count as f64).ln() / self.vertex_count as f64
    }
}

/// Sample vertices uniformly in the square and connect each pair with the
/// configured probability; resample until the graph is connected. Every
/// accepted pair becomes two directed edges of equal length, and all edges
/// share the single `global` wind region. Vertex 0 is the depot.
pub fn generate_er(config: &ErConfig) -> Result<DeliveryGraph> {
    let n = config.vertex_count;
    if n < 2 {
        return Err(Error::Config(format!("need at least 2 vertices, got {n}")));
    }
    if !(config.density_constant > 0.0) || !(config.area_side_m > 0.0) {
        return Err(Error::Config(
            "density constant and area side must be positive".into(),
        ));
    }
    let p = config.edge_probability();
    if p > 1.0 + 1e-9 {
        return Err(Error::Config(format!(
            "edge probability {p:.6} exceeds 1; lower the density constant"
        )));
    }
    let p = p.min(1.0);

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for _ in 0..config.retry_cap.max(1) {
        let vertices: Vec<Vertex> = (0..n)
            .map(|id| Vertex {
                id: id as u32,
                x: rng.gen_range(0.0..config.area_side_m),
                y: rng.gen_range(0.0..config.area_side_m),
            })
            .collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if !rng.gen_bool(p) {
                    continue;
                }
                let len = vertices[i].pos().distance(&vertices[j].pos());
                if !(len > 0.0) {
                    continue; // coincident sample; drop the pair
                }
                let id = edges.len() as u32;
                edges.push(Edge {
                    id,
                    tail: i as u32,
                    head: j as u32,
                    length_m: len,
                    wind_key: WindKey::Single("global".into()),
                });
                edges.push(Edge {
                    id: id + 1,
                    tail: j as u32,
                    head: i as u32,
                    length_m: len,
                    wind_key: WindKey::Single("global".into()),
                });
            }
        }
        if edges.is_empty() {
            continue;
        }
        let graph = DeliveryGraph::new(vertices, edges, 0)?;
        if graph.is_connected() {
            return Ok(graph);
        }
    }
    Err(Error::Generation(format!(
        "no connected sample within {} attempts (n={n}, p={p:.4})",
        config.retry_cap
    )))
}

/// Draw an independent wind per slot and region: speed uniform over the
/// alphabet, direction uniform over `[0, 360)`.
pub fn generate_wind_trace(
    seed: u64,
    horizon: u32,
    slot_duration_s: f64,
    speed_alphabet: &[f64],
    regions: &[String],
) -> Result<WindTrace> {
    if speed_alphabet.is_empty() {
        return Err(Error::Config(
            "wind speed alphabet must not be empty".into(),
        ));
    }
    if regions.is_empty() || horizon == 0 {
        return Err(Error::Config(
            "need at least one region and one slot".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut slots = Vec::with_capacity(horizon as usize);
    for _ in 0..horizon {
        let mut map = std::collections::BTreeMap::new();
        for region in regions {
            let speed = speed_alphabet[rng.gen_range(0..speed_alphabet.len())];
            let direction = rng.gen_range(0.0..360.0);
            map.insert(region.clone(), GlobalWind::new(speed, direction));
        }
        slots.push(map);
    }
    WindTrace::new(slot_duration_s, regions.to_vec(), slots)
}
