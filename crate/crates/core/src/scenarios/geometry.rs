//! Planar geometry for the tessellation builders: bounding boxes, half-plane
//! clipping and nearest-site queries.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::wind::Point2D;

/// Axis-aligned delivery-area rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundingBox {
    pub min_x: f64,
    pub min_y: f64,
    pub max_x: f64,
    pub max_y: f64,
}

impl BoundingBox {
    pub fn new(min_x: f64, min_y: f64, max_x: f64, max_y: f64) -> Result<Self> {
        if !(min_x < max_x && min_y < max_y) {
            return Err(Error::Geometry(format!(
                "degenerate bounding box [{min_x}, {max_x}] x [{min_y}, {max_y}]"
            )));
        }
        Ok(Self {
            min_x,
            min_y,
            max_x,
            max_y,
        })
    }

    /// Smallest box containing all points, inflated by `margin` on each side.
    pub fn around(points: &[Point2D], margin: f64) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Geometry("no points to bound".into()));
        }
        let min_x = points.iter().map(|p| p.x).fold(f64::INFINITY, f64::min);
        let max_x = points.iter().map(|p| p.x).fold(f64::NEG_INFINITY, f64::max);
        let min_y = points.iter().map(|p| p.y).fold(f64::INFINITY, f64::min);
        let max_y = points.iter().map(|p| p.y).fold(f64::NEG_INFINITY, f64::max);
        Self::new(
            min_x - margin,
            min_y - margin,
            max_x + margin,
            max_y + margin,
        )
    }

    pub fn contains(&self, p: Point2D) -> bool {
        p.x >= self.min_x && p.x <= self.max_x && p.y >= self.min_y && p.y <= self.max_y
    }

    pub fn diagonal(&self) -> f64 {
        (self.max_x - self.min_x).hypot(self.max_y - self.min_y)
    }

    /// Corners in counterclockwise order.
    pub fn corners(&self) -> [Point2D; 4] {
        [
            Point2D::new(self.min_x, self.min_y),
            Point2D::new(self.max_x, self.min_y),
            Point2D::new(self.max_x, self.max_y),
            Point2D::new(self.min_x, self.max_y),
        ]
    }
}

/// Clip a convex CCW polygon by the half-plane of points at least as close
/// to `site` as to `other` (Sutherland-Hodgman step).
fn clip_half_plane(polygon: &[Point2D], site: Point2D, other: Point2D) -> Vec<Point2D> {
    let mid = Point2D::new(0.5 * (site.x + other.x), 0.5 * (site.y + other.y));
    let dir = (other.x - site.x, other.y - site.y);
    let signed = |p: &Point2D| (p.x - mid.x) * dir.0 + (p.y - mid.y) * dir.1;

    let mut out = Vec::with_capacity(polygon.len() + 1);
    for i in 0..polygon.len() {
        let a = polygon[i];
        let b = polygon[(i + 1) % polygon.len()];
        let fa = signed(&a);
        let fb = signed(&b);
        if fa <= 0.0 {
            out.push(a);
        }
        if (fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0) {
            let t = fa / (fa - fb);
            out.push(Point2D::new(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)));
        }
    }
    out
}

/// The region of the box closest to `sites[index]`, as a CCW convex polygon.
pub(crate) fn voronoi_cell(sites: &[Point2D], index: usize, bbox: &BoundingBox) -> Vec<Point2D> {
    let mut polygon: Vec<Point2D> = bbox.corners().to_vec();
    for (j, &other) in sites.iter().enumerate() {
        if j == index || polygon.is_empty() {
            continue;
        }
        polygon = clip_half_plane(&polygon, sites[index], other);
    }
    polygon
}

/// Index of the site nearest to `p`, breaking ties by index. Test oracle.
#[cfg(test)]
pub(crate) fn nearest_site(sites: &[Point2D], p: Point2D) -> usize {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (i, s) in sites.iter().enumerate() {
        let d = (p.x - s.x).hypot(p.y - s.y);
        if d < best_d {
            best_d = d;
            best = i;
        }
    }
    best
}

/// Deduplicates nearby points into stable indices.
pub(crate) struct VertexPool {
    pub points: Vec<Point2D>,
    tol: f64,
}

impl VertexPool {
    pub fn new(tol: f64) -> Self {
        Self {
            points: Vec::new(),
            tol,
        }
    }

    pub fn intern(&mut self, p: Point2D) -> usize {
        for (i, q) in self.points.iter().enumerate() {
            if (p.x - q.x).hypot(p.y - q.y) <= self.tol {
                return i;
            }
        }
        self.points.push(p);
        self.points.len() - 1
    }
}
