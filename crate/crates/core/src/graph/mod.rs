//! Static delivery graph, per-slot wind traces, snapshot costs and walks.
//!
//! The topology never changes; only edge costs move as the wind trace
//! advances. A `Snapshot` prices every edge for one time-slot (for both the
//! loaded and the empty leg); a `Walk` charges each edge at the snapshot of
//! its own departure slot.

mod io;
mod search;

pub use io::{load_graph, load_trace, save_graph, save_trace, GRAPH_SCHEMA, TRACE_SCHEMA};
pub use search::{shortest_cycle, shortest_path, single_source_costs, Cycle, Direction};

use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use serde::{Deserialize, Serialize};

use crate::energy::{DroneParams, Leg, UnitCostTable};
use crate::error::{Error, Result};
use crate::wind::{classify, edge_angle, ClassCount, GlobalWind, Point2D};

pub type VertexId = u32;
pub type EdgeId = u32;

/// Wind region(s) an edge is exposed to.
///
/// Most edges sit inside one region; edges crossing a region boundary carry
/// both sides (tail side first) and are priced by the average of the two.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WindKey {
    Single(String),
    Split(String, String),
}

impl WindKey {
    /// The key for the same edge traversed in the opposite direction.
    pub fn reversed(&self) -> WindKey {
        match self {
            WindKey::Single(r) => WindKey::Single(r.clone()),
            WindKey::Split(a, b) => WindKey::Split(b.clone(), a.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: VertexId,
    pub x: f64,
    pub y: f64,
}

impl Vertex {
    pub fn pos(&self) -> Point2D {
        Point2D::new(self.x, self.y)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub id: EdgeId,
    pub tail: VertexId,
    pub head: VertexId,
    #[serde(rename = "length")]
    pub length_m: f64,
    pub wind_key: WindKey,
}

/// Directed delivery graph with static geometry.
///
/// Vertices and edges are stored sorted by id, so internal indices follow id
/// order and searches tie-break deterministically.
#[derive(Debug, Clone)]
pub struct DeliveryGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    depot: VertexId,
    vertex_index: HashMap<VertexId, usize>,
    out_edges: Vec<Vec<usize>>,
    in_edges: Vec<Vec<usize>>,
}

impl DeliveryGraph {
    pub fn new(mut vertices: Vec<Vertex>, mut edges: Vec<Edge>, depot: VertexId) -> Result<Self> {
        vertices.sort_by_key(|v| v.id);
        edges.sort_by_key(|e| e.id);

        let mut vertex_index = HashMap::new();
        for (idx, v) in vertices.iter().enumerate() {
            if !v.x.is_finite() || !v.y.is_finite() {
                return Err(Error::InvalidGraph(format!(
                    "vertex {} has non-finite coordinates",
                    v.id
                )));
            }
            if vertex_index.insert(v.id, idx).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex id {}", v.id)));
            }
        }
        if !vertex_index.contains_key(&depot) {
            return Err(Error::InvalidGraph(format!(
                "depot {depot} is not a vertex"
            )));
        }

        let mut seen_edges = HashMap::new();
        let mut by_endpoints: HashMap<(VertexId, VertexId), f64> = HashMap::new();
        for e in &edges {
            if seen_edges.insert(e.id, ()).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate edge id {}", e.id)));
            }
            if e.tail == e.head {
                return Err(Error::InvalidGraph(format!("edge {} is a self-loop", e.id)));
            }
            if !(e.length_m > 0.0) || !e.length_m.is_finite() {
                return Err(Error::InvalidGraph(format!(
                    "edge {} has non-positive length {}",
                    e.id, e.length_m
                )));
            }
            for endpoint in [e.tail, e.head] {
                if !vertex_index.contains_key(&endpoint) {
                    return Err(Error::InvalidGraph(format!(
                        "edge {} references unknown vertex {endpoint}",
                        e.id
                    )));
                }
            }
            by_endpoints.insert((e.tail, e.head), e.length_m);
        }
        for e in &edges {
            match by_endpoints.get(&(e.head, e.tail)) {
                Some(&len) if (len - e.length_m).abs() <= 1e-9 * e.length_m.max(1.0) => {}
                Some(_) => {
                    return Err(Error::InvalidGraph(format!(
                        "edge {} and its reverse have different lengths",
                        e.id
                    )))
                }
                None => {
                    return Err(Error::InvalidGraph(format!(
                        "edge {} ({} -> {}) has no reverse counterpart",
                        e.id, e.tail, e.head
                    )))
                }
            }
        }

        let mut out_edges = vec![Vec::new(); vertices.len()];
        let mut in_edges = vec![Vec::new(); vertices.len()];
        for (eidx, e) in edges.iter().enumerate() {
            out_edges[vertex_index[&e.tail]].push(eidx);
            in_edges[vertex_index[&e.head]].push(eidx);
        }
        for list in out_edges.iter_mut() {
            list.sort_by_key(|&eidx| (edges[eidx].head, edges[eidx].id));
        }
        for list in in_edges.iter_mut() {
            list.sort_by_key(|&eidx| (edges[eidx].tail, edges[eidx].id));
        }

        Ok(Self {
            vertices,
            edges,
            depot,
            vertex_index,
            out_edges,
            in_edges,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn depot(&self) -> VertexId {
        self.depot
    }

    pub fn depot_idx(&self) -> usize {
        self.vertex_index[&self.depot]
    }

    pub fn vertex_idx(&self, id: VertexId) -> Option<usize> {
        self.vertex_index.get(&id).copied()
    }

    pub fn vertex(&self, idx: usize) -> &Vertex {
        &self.vertices[idx]
    }

    pub fn edge(&self, idx: usize) -> &Edge {
        &self.edges[idx]
    }

    pub fn edge_idx(&self, id: EdgeId) -> Option<usize> {
        // Edges are sorted by id.
        self.edges.binary_search_by_key(&id, |e| e.id).ok()
    }

    pub fn tail_idx(&self, eidx: usize) -> usize {
        self.vertex_index[&self.edges[eidx].tail]
    }

    pub fn head_idx(&self, eidx: usize) -> usize {
        self.vertex_index[&self.edges[eidx].head]
    }

    /// Outgoing edge indices of a vertex, sorted by (head id, edge id).
    pub fn out_edges(&self, vidx: usize) -> &[usize] {
        &self.out_edges[vidx]
    }

    /// Incoming edge indices of a vertex, sorted by (tail id, edge id).
    pub fn in_edges(&self, vidx: usize) -> &[usize] {
        &self.in_edges[vidx]
    }

    /// Check that every wind key of this graph resolves in the trace.
    pub fn validate_against(&self, trace: &WindTrace) -> Result<()> {
        for e in &self.edges {
            let regions: Vec<&String> = match &e.wind_key {
                WindKey::Single(r) => vec![r],
                WindKey::Split(a, b) => vec![a, b],
            };
            for r in regions {
                if trace.region_idx(r).is_none() {
                    return Err(Error::MissingRegion {
                        region: r.clone(),
                        slot: 0,
                    });
                }
            }
        }
        Ok(())
    }

    /// True when every vertex is reachable from every other (the graph is
    /// symmetric, so one sweep from vertex 0 suffices).
    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &eidx in &self.out_edges[v] {
                let h = self.head_idx(eidx);
                if !seen[h] {
                    seen[h] = true;
                    count += 1;
                    stack.push(h);
                }
            }
        }
        count == self.vertices.len()
    }
}

/// Per-slot wind assignment for every region of a delivery area.
#[derive(Debug, Clone, PartialEq)]
pub struct WindTrace {
    slot_duration_s: f64,
    regions: Vec<String>,
    region_index: HashMap<String, usize>,
    /// `slots[t][region_idx]`
    slots: Vec<Vec<GlobalWind>>,
}

impl WindTrace {
    pub fn new(
        slot_duration_s: f64,
        regions: Vec<String>,
        slot_maps: Vec<BTreeMap<String, GlobalWind>>,
    ) -> Result<Self> {
        if !(slot_duration_s > 0.0) {
            return Err(Error::InvalidTrace(format!(
                "slot duration {slot_duration_s} must be positive"
            )));
        }
        if slot_maps.is_empty() {
            return Err(Error::InvalidTrace("trace needs at least one slot".into()));
        }
        let mut region_index = HashMap::new();
        for (idx, r) in regions.iter().enumerate() {
            if region_index.insert(r.clone(), idx).is_some() {
                return Err(Error::InvalidTrace(format!("duplicate region `{r}`")));
            }
        }
        let mut slots = Vec::with_capacity(slot_maps.len());
        for (t, map) in slot_maps.iter().enumerate() {
            let mut row = Vec::with_capacity(regions.len());
            for r in &regions {
                let wind = map.get(r).ok_or_else(|| Error::MissingRegion {
                    region: r.clone(),
                    slot: t as u32,
                })?;
                wind.validate()?;
                row.push(*wind);
            }
            if map.len() != regions.len() {
                return Err(Error::InvalidTrace(format!(
                    "slot {t} assigns a region not in the region list"
                )));
            }
            slots.push(row);
        }
        Ok(Self {
            slot_duration_s,
            regions,
            region_index,
            slots,
        })
    }

    /// Convenience constructor for a single-region trace.
    pub fn uniform(slot_duration_s: f64, region: &str, winds: Vec<GlobalWind>) -> Result<Self> {
        let maps = winds
            .into_iter()
            .map(|w| {
                let mut m = BTreeMap::new();
                m.insert(region.to_string(), w);
                m
            })
            .collect();
        Self::new(slot_duration_s, vec![region.to_string()], maps)
    }

    pub fn slot_duration(&self) -> f64 {
        self.slot_duration_s
    }

    /// Number of explicitly assigned slots; later slots repeat the last one.
    pub fn horizon(&self) -> u32 {
        self.slots.len() as u32
    }

    pub fn regions(&self) -> &[String] {
        &self.regions
    }

    pub fn region_idx(&self, region: &str) -> Option<usize> {
        self.region_index.get(region).copied()
    }

    /// Wind for a region at a slot; beyond the horizon the final slot persists.
    pub fn wind(&self, slot: u32, region_idx: usize) -> GlobalWind {
        let t = (slot as usize).min(self.slots.len() - 1);
        self.slots[t][region_idx]
    }

    pub fn slot_map(&self, slot: u32) -> BTreeMap<String, GlobalWind> {
        let t = (slot as usize).min(self.slots.len() - 1);
        self.regions
            .iter()
            .cloned()
            .zip(self.slots[t].iter().copied())
            .collect()
    }

    /// Distinct wind speeds appearing anywhere in the trace, ascending.
    pub fn distinct_speeds(&self) -> Vec<f64> {
        let mut bits: Vec<u64> = self
            .slots
            .iter()
            .flat_map(|row| row.iter().map(|w| w.speed_ms.to_bits()))
            .collect();
        bits.sort_unstable();
        bits.dedup();
        bits.into_iter().map(f64::from_bits).collect()
    }
}

/// Edge costs of one time-slot, for both payload legs, indexed by edge index.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub slot: u32,
    loaded: Vec<f64>,
    empty: Vec<f64>,
}

impl Snapshot {
    pub fn cost(&self, leg: Leg, edge_idx: usize) -> f64 {
        match leg {
            Leg::Loaded => self.loaded[edge_idx],
            Leg::Empty => self.empty[edge_idx],
        }
    }

    pub fn costs(&self, leg: Leg) -> &[f64] {
        match leg {
            Leg::Loaded => &self.loaded,
            Leg::Empty => &self.empty,
        }
    }
}

/// Slot index for an elapsed mission time.
pub fn departure_slot(elapsed_s: f64, slot_duration_s: f64) -> u32 {
    debug_assert!(elapsed_s >= 0.0 && slot_duration_s > 0.0);
    (elapsed_s / slot_duration_s).floor() as u32
}

#[derive(Debug, Clone, Copy)]
enum ResolvedKey {
    Single(usize),
    Split(usize, usize),
}

/// Prices snapshots for one (graph, trace, drone, mission) combination.
///
/// Edge angles and wind-key resolution happen once; unit costs come from the
/// memoized table; snapshots are cached per slot and shared behind `Rc`.
pub struct CostModel<'a> {
    graph: &'a DeliveryGraph,
    trace: &'a WindTrace,
    table: UnitCostTable,
    psi: Vec<f64>,
    keys: Vec<ResolvedKey>,
    cache: HashMap<u32, Rc<Snapshot>>,
}

impl<'a> CostModel<'a> {
    pub fn new(
        graph: &'a DeliveryGraph,
        trace: &'a WindTrace,
        params: &DroneParams,
        payload_kg: f64,
        ground_speed: f64,
        k: ClassCount,
    ) -> Result<Self> {
        Self::with_speeds(graph, trace, params, payload_kg, ground_speed, k, &[])
    }

    /// Like `new`, but memoizes `extra_speeds` on top of the trace's own.
    pub fn with_speeds(
        graph: &'a DeliveryGraph,
        trace: &'a WindTrace,
        params: &DroneParams,
        payload_kg: f64,
        ground_speed: f64,
        k: ClassCount,
        extra_speeds: &[f64],
    ) -> Result<Self> {
        graph.validate_against(trace)?;
        let mut speeds = trace.distinct_speeds();
        speeds.extend_from_slice(extra_speeds);
        speeds.sort_by(|a, b| a.partial_cmp(b).unwrap());
        speeds.dedup();
        let table = UnitCostTable::build(params, payload_kg, ground_speed, &speeds, k)?;
        let mut psi = Vec::with_capacity(graph.edge_count());
        let mut keys = Vec::with_capacity(graph.edge_count());
        for (eidx, e) in graph.edges().iter().enumerate() {
            let tail = graph.vertex(graph.tail_idx(eidx)).pos();
            let head = graph.vertex(graph.head_idx(eidx)).pos();
            psi.push(edge_angle(tail, head)?);
            keys.push(match &e.wind_key {
                WindKey::Single(r) => ResolvedKey::Single(trace.region_idx(r).unwrap()),
                WindKey::Split(a, b) => {
                    ResolvedKey::Split(trace.region_idx(a).unwrap(), trace.region_idx(b).unwrap())
                }
            });
        }
        Ok(Self {
            graph,
            trace,
            table,
            psi,
            keys,
            cache: HashMap::new(),
        })
    }

    pub fn graph(&self) -> &DeliveryGraph {
        self.graph
    }

    pub fn trace(&self) -> &WindTrace {
        self.trace
    }

    pub fn ground_speed(&self) -> f64 {
        self.table.ground_speed()
    }

    pub fn slot_duration(&self) -> f64 {
        self.trace.slot_duration()
    }

    /// Seconds needed to fly an edge of this graph.
    pub fn traversal_time(&self, edge_idx: usize) -> f64 {
        self.graph.edge(edge_idx).length_m / self.table.ground_speed()
    }

    /// Smallest memoized unit cost across both legs and the whole alphabet.
    pub fn min_unit_cost(&self) -> f64 {
        self.table.min_unit_cost()
    }

    fn unit_cost(&self, leg: Leg, wind: GlobalWind, edge_idx: usize) -> Result<f64> {
        let theta = crate::wind::relative_wind_direction(wind, self.psi[edge_idx]);
        let class = classify(theta, self.table.class_count());
        self.table.unit_cost(leg, wind.speed_ms, class.index)
    }

    fn edge_cost_at(&self, leg: Leg, slot: u32, edge_idx: usize) -> Result<f64> {
        let length = self.graph.edge(edge_idx).length_m;
        let mu = match self.keys[edge_idx] {
            ResolvedKey::Single(r) => self.unit_cost(leg, self.trace.wind(slot, r), edge_idx)?,
            ResolvedKey::Split(a, b) => {
                // The edge rides half in each region: average the two costs.
                let mu_a = self.unit_cost(leg, self.trace.wind(slot, a), edge_idx)?;
                let mu_b = self.unit_cost(leg, self.trace.wind(slot, b), edge_idx)?;
                0.5 * (mu_a + mu_b)
            }
        };
        Ok(mu * length)
    }

    /// Price every edge at the given slot.
    pub fn snapshot(&mut self, slot: u32) -> Result<Rc<Snapshot>> {
        if let Some(snap) = self.cache.get(&slot) {
            return Ok(Rc::clone(snap));
        }
        let mut loaded = Vec::with_capacity(self.graph.edge_count());
        let mut empty = Vec::with_capacity(self.graph.edge_count());
        for eidx in 0..self.graph.edge_count() {
            loaded.push(self.edge_cost_at(Leg::Loaded, slot, eidx)?);
            empty.push(self.edge_cost_at(Leg::Empty, slot, eidx)?);
        }
        let snap = Rc::new(Snapshot {
            slot,
            loaded,
            empty,
        });
        self.cache.insert(slot, Rc::clone(&snap));
        Ok(snap)
    }
}

/// Stateless snapshot computation (see `CostModel` for the cached path).
pub fn snapshot_costs(
    graph: &DeliveryGraph,
    trace: &WindTrace,
    slot: u32,
    payload_kg: f64,
    params: &DroneParams,
    ground_speed: f64,
    k: ClassCount,
) -> Result<Snapshot> {
    let mut model = CostModel::new(graph, trace, params, payload_kg, ground_speed, k)?;
    let snap = model.snapshot(slot)?;
    Ok((*snap).clone())
}

/// One charged edge of an executed walk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WalkStep {
    pub edge: EdgeId,
    pub departure_slot: u32,
    pub leg: Leg,
    pub cost_j: f64,
}

/// An executed edge sequence with per-departure-slot pricing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Walk {
    pub start_slot: u32,
    pub steps: Vec<WalkStep>,
    pub total_cost_j: f64,
}

/// Sum one snapshot's costs over a connected edge sequence.
pub fn planned_cost(
    graph: &DeliveryGraph,
    snapshot: &Snapshot,
    leg: Leg,
    path: &[EdgeId],
) -> Result<f64> {
    let mut total = 0.0;
    let mut prev_head: Option<VertexId> = None;
    for (step, &id) in path.iter().enumerate() {
        let eidx = graph
            .edge_idx(id)
            .ok_or_else(|| Error::InvalidGraph(format!("unknown edge id {id}")))?;
        let e = graph.edge(eidx);
        if let Some(prev) = prev_head {
            if prev != e.tail {
                return Err(Error::DisconnectedPath { step });
            }
        }
        prev_head = Some(e.head);
        total += snapshot.cost(leg, eidx);
    }
    Ok(total)
}

/// Charge a path edge by edge at the snapshot of each departure slot.
///
/// `payload_schedule` names the leg in force on each edge (loaded up to the
/// delivery vertex, empty afterwards).
pub fn actual_cost(
    model: &mut CostModel,
    path: &[EdgeId],
    start_slot: u32,
    payload_schedule: &[Leg],
) -> Result<Walk> {
    if path.len() != payload_schedule.len() {
        return Err(Error::InvalidGraph(format!(
            "payload schedule length {} does not match path length {}",
            payload_schedule.len(),
            path.len()
        )));
    }
    let slot_duration = model.slot_duration();
    let mut elapsed = start_slot as f64 * slot_duration;
    let mut prev_head: Option<VertexId> = None;
    let mut steps = Vec::with_capacity(path.len());
    let mut total = 0.0;
    for (step, (&id, &leg)) in path.iter().zip(payload_schedule).enumerate() {
        let eidx = model
            .graph
            .edge_idx(id)
            .ok_or_else(|| Error::InvalidGraph(format!("unknown edge id {id}")))?;
        let e = model.graph.edge(eidx);
        if let Some(prev) = prev_head {
            if prev != e.tail {
                return Err(Error::DisconnectedPath { step });
            }
        }
        prev_head = Some(e.head);
        let slot = departure_slot(elapsed, slot_duration);
        let snap = model.snapshot(slot)?;
        let cost = snap.cost(leg, eidx);
        steps.push(WalkStep {
            edge: id,
            departure_slot: slot,
            leg,
            cost_j: cost,
        });
        total += cost;
        elapsed += model.traversal_time(eidx);
    }
    Ok(Walk {
        start_slot,
        steps,
        total_cost_j: total,
    })
}
