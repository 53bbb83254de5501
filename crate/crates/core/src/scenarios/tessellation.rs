//! Delivery graphs built from a Voronoi tessellation of wind stations.
//!
//! Three layouts share one tessellation of the delivery area:
//! - VG: station-to-cell-corner spokes plus the cell sides;
//! - DG: the dual station-to-station edges, with edges that would cross more
//!   than two cells re-routed through a tessellation vertex;
//! - HG: the union of the two.
//!
//! Every edge carries the wind region(s) it flies through: spokes and
//! re-routed edges sit inside one cell, cell sides take the cell on their
//! right, and retained dual edges ride half in each endpoint's cell.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::geometry::{voronoi_cell, BoundingBox, VertexPool};
use crate::error::{Error, Result};
use crate::graph::{DeliveryGraph, Edge, Vertex, WindKey};
use crate::wind::Point2D;

/// Relative geometric tolerance (scaled by the box diagonal).
pub const DEFAULT_GEOMETRY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TessellationKind {
    Vg,
    Dg,
    Hg,
}

impl fmt::Display for TessellationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TessellationKind::Vg => "vg",
            TessellationKind::Dg => "dg",
            TessellationKind::Hg => "hg",
        };
        f.write_str(s)
    }
}

impl FromStr for TessellationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "vg" => Ok(TessellationKind::Vg),
            "dg" => Ok(TessellationKind::Dg),
            "hg" => Ok(TessellationKind::Hg),
            other => Err(Error::Config(format!(
                "unknown tessellation kind `{other}`"
            ))),
        }
    }
}

/// A wind station: tessellation site and wind region in one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Station {
    pub id: String,
    pub x: f64,
    pub y: f64,
}

impl Station {
    pub fn new(id: impl Into<String>, x: f64, y: f64) -> Self {
        Self {
            id: id.into(),
            x,
            y,
        }
    }

    pub fn pos(&self) -> Point2D {
        Point2D::new(self.x, self.y)
    }
}

/// One undirected segment of the assembled graph, with its per-direction
/// wind tagging.
#[derive(Debug, Clone)]
struct Segment {
    a: usize,
    b: usize,
    wind_ab: WindKey,
    wind_ba: WindKey,
}

struct Tessellation {
    sites: Vec<Point2D>,
    pool: VertexPool,
    /// Cell polygons as pool-vertex indices, CCW.
    cells: Vec<Vec<usize>>,
    /// Owner cell of each directed polygon side (the cell lies on its left).
    side_owner: HashMap<(usize, usize), usize>,
    tol: f64,
}

fn build_tessellation(stations: &[Station], bbox: &BoundingBox, tol: f64) -> Result<Tessellation> {
    if stations.len() < 3 {
        return Err(Error::Geometry(format!(
            "need at least 3 stations, got {}",
            stations.len()
        )));
    }
    let sites: Vec<Point2D> = stations.iter().map(|s| s.pos()).collect();
    for (i, s) in stations.iter().enumerate() {
        if !bbox.contains(sites[i]) {
            return Err(Error::Geometry(format!(
                "station `{}` lies outside the bounding box",
                s.id
            )));
        }
        for (j, t) in stations.iter().enumerate().skip(i + 1) {
            if sites[i].distance(&sites[j]) <= tol {
                return Err(Error::Geometry(format!(
                    "stations `{}` and `{}` coincide",
                    s.id, t.id
                )));
            }
        }
    }
    // Reject all-collinear inputs: no triple spans a real triangle.
    let collinear = {
        let far = sites
            .iter()
            .enumerate()
            .max_by(|a, b| {
                sites[0]
                    .distance(a.1)
                    .partial_cmp(&sites[0].distance(b.1))
                    .unwrap()
            })
            .map(|(i, _)| i)
            .unwrap();
        let (a, b) = (sites[0], sites[far]);
        let base = a.distance(&b).max(tol);
        sites.iter().all(|p| {
            let cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
            cross.abs() / base <= tol
        })
    };
    if collinear {
        return Err(Error::Geometry("stations are collinear".into()));
    }

    let mut pool = VertexPool::new(tol);
    for &site in &sites {
        pool.intern(site);
    }
    debug_assert_eq!(pool.points.len(), sites.len());

    let mut cells = Vec::with_capacity(sites.len());
    for i in 0..sites.len() {
        let polygon = voronoi_cell(&sites, i, bbox);
        let mut ids: Vec<usize> = Vec::with_capacity(polygon.len());
        for p in polygon {
            let id = pool.intern(p);
            if id < sites.len() {
                return Err(Error::Geometry(format!(
                    "cell corner of station {i} collapses onto a station; input is degenerate"
                )));
            }
            if ids.last() != Some(&id) {
                ids.push(id);
            }
        }
        while ids.len() > 1 && ids.first() == ids.last() {
            ids.pop();
        }
        if ids.len() < 3 {
            return Err(Error::Geometry(format!(
                "cell of station {i} degenerates under the tolerance"
            )));
        }
        cells.push(ids);
    }

    let mut side_owner = HashMap::new();
    for (i, cell) in cells.iter().enumerate() {
        for w in 0..cell.len() {
            let a = cell[w];
            let b = cell[(w + 1) % cell.len()];
            if side_owner.insert((a, b), i).is_some() {
                return Err(Error::Geometry(format!(
                    "directed side ({a}, {b}) claimed by two cells"
                )));
            }
        }
    }

    Ok(Tessellation {
        sites,
        pool,
        cells,
        side_owner,
        tol,
    })
}

impl Tessellation {
    /// Spokes plus cell sides (the VG edge set).
    fn voronoi_segments(&self, stations: &[Station]) -> Vec<Segment> {
        let mut segments = Vec::new();
        for (i, cell) in self.cells.iter().enumerate() {
            let mut corners: Vec<usize> = cell.clone();
            corners.sort_unstable();
            corners.dedup();
            for v in corners {
                let key = WindKey::Single(stations[i].id.clone());
                segments.push(Segment {
                    a: i,
                    b: v,
                    wind_ab: key.clone(),
                    wind_ba: key,
                });
            }
        }
        let mut sides: BTreeSet<(usize, usize)> = BTreeSet::new();
        for &(a, b) in self.side_owner.keys() {
            sides.insert((a.min(b), a.max(b)));
        }
        for (a, b) in sides {
            // The cell traversing (b, a) counterclockwise lies to the right
            // of (a, b); box-boundary sides have a single adjacent cell.
            let left = self.side_owner.get(&(a, b)).copied();
            let right = self.side_owner.get(&(b, a)).copied();
            let region = |cell: Option<usize>, fallback: Option<usize>| {
                let idx = cell.or(fallback).expect("side belongs to some cell");
                WindKey::Single(stations[idx].id.clone())
            };
            segments.push(Segment {
                a,
                b,
                wind_ab: region(right, left),
                wind_ba: region(left, right),
            });
        }
        segments
    }

    /// Station adjacency through shared cell sides, with the shared corners.
    fn dual_adjacency(&self) -> BTreeMap<(usize, usize), BTreeSet<usize>> {
        let mut pairs: BTreeMap<(usize, usize), BTreeSet<usize>> = BTreeMap::new();
        for (&(a, b), &i) in &self.side_owner {
            if let Some(&j) = self.side_owner.get(&(b, a)) {
                let key = (i.min(j), i.max(j));
                pairs.entry(key).or_default().extend([a, b]);
            }
        }
        pairs
    }

    /// True when the open segment between the two stations stays inside
    /// their own two cells: the midpoint sits on the shared boundary, so by
    /// convexity each half stays in its endpoint's cell.
    fn crosses_exactly_two(&self, i: usize, j: usize) -> bool {
        let m = Point2D::new(
            0.5 * (self.sites[i].x + self.sites[j].x),
            0.5 * (self.sites[i].y + self.sites[j].y),
        );
        let own = m.distance(&self.sites[i]);
        self.sites
            .iter()
            .enumerate()
            .filter(|(w, _)| *w != i && *w != j)
            .all(|(_, s)| m.distance(s) + self.tol >= own)
    }

    /// Dual edges with multi-cell crossings re-routed (the DG edge set).
    fn delaunay_segments(&self, stations: &[Station]) -> Vec<Segment> {
        let mut segments = Vec::new();
        for ((i, j), shared_corners) in self.dual_adjacency() {
            if self.crosses_exactly_two(i, j) {
                segments.push(Segment {
                    a: i,
                    b: j,
                    wind_ab: WindKey::Split(stations[i].id.clone(), stations[j].id.clone()),
                    wind_ba: WindKey::Split(stations[j].id.clone(), stations[i].id.clone()),
                });
                continue;
            }
            // Re-route through the shared tessellation vertex minimizing the
            // summed distance to both stations; each replacement edge then
            // lies entirely inside one cell (cells are convex and the corner
            // belongs to both).
            let vk = shared_corners
                .iter()
                .copied()
                .min_by(|&p, &q| {
                    let dp = self.pool.points[p].distance(&self.sites[i])
                        + self.pool.points[p].distance(&self.sites[j]);
                    let dq = self.pool.points[q].distance(&self.sites[i])
                        + self.pool.points[q].distance(&self.sites[j]);
                    dp.partial_cmp(&dq).unwrap().then(p.cmp(&q))
                })
                .expect("adjacent cells share at least one corner");
            for (station, region) in [(i, &stations[i].id), (j, &stations[j].id)] {
                segments.push(Segment {
                    a: station,
                    b: vk,
                    wind_ab: WindKey::Single(region.clone()),
                    wind_ba: WindKey::Single(region.clone()),
                });
            }
        }
        segments
    }
}

/// Build one of the three tessellation delivery graphs over the stations.
///
/// The first station is the depot. Vertex ids are stable across the three
/// kinds: stations first, tessellation corners after.
pub fn build_tessellation_graph(
    stations: &[Station],
    kind: TessellationKind,
    bbox: &BoundingBox,
    relative_tolerance: f64,
) -> Result<DeliveryGraph> {
    let tol = relative_tolerance.max(f64::EPSILON) * bbox.diagonal();
    let tess = build_tessellation(stations, bbox, tol)?;

    let mut segments = match kind {
        TessellationKind::Vg => tess.voronoi_segments(stations),
        TessellationKind::Dg => tess.delaunay_segments(stations),
        TessellationKind::Hg => {
            let mut all = tess.voronoi_segments(stations);
            all.extend(tess.delaunay_segments(stations));
            all
        }
    };

    // Union semantics: the first occurrence of an undirected pair wins.
    let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
    segments.retain(|s| seen.insert((s.a.min(s.b), s.a.max(s.b))));

    let mut used: BTreeSet<usize> = segments.iter().flat_map(|s| [s.a, s.b]).collect();
    if matches!(kind, TessellationKind::Vg | TessellationKind::Hg) {
        // Every tessellation corner is a vertex even if all its sides merged.
        used.extend(tess.cells.iter().flatten().copied());
    }
    used.extend(0..stations.len());

    let vertices: Vec<Vertex> = used
        .iter()
        .map(|&idx| {
            let p = tess.pool.points[idx];
            Vertex {
                id: idx as u32,
                x: p.x,
                y: p.y,
            }
        })
        .collect();

    let mut edges = Vec::with_capacity(2 * segments.len());
    for seg in &segments {
        let pa = tess.pool.points[seg.a];
        let pb = tess.pool.points[seg.b];
        let len = pa.distance(&pb);
        if len <= tol {
            return Err(Error::Geometry(format!(
                "segment ({}, {}) shorter than the tolerance",
                seg.a, seg.b
            )));
        }
        let id = edges.len() as u32;
        edges.push(Edge {
            id,
            tail: seg.a as u32,
            head: seg.b as u32,
            length_m: len,
            wind_key: seg.wind_ab.clone(),
        });
        edges.push(Edge {
            id: id + 1,
            tail: seg.b as u32,
            head: seg.a as u32,
            length_m: len,
            wind_key: seg.wind_ba.clone(),
        });
    }

    DeliveryGraph::new(vertices, edges, 0)
}
