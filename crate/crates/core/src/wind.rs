//! Relative wind geometry and direction quantization.
//!
//! Edge costs depend on the wind direction *relative to the edge*, not on the
//! global wind alone. This module turns edge geometry plus a global wind into
//! the relative direction experienced along the edge, and buckets relative
//! directions into a small set of representative classes used for pricing.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point in the plane, in meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2D {
    pub x: f64,
    pub y: f64,
}

impl Point2D {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(&self, other: &Point2D) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Area-wide wind observed during one time-slot: speed in m/s and the
/// direction the air moves toward, in degrees `[0, 360)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GlobalWind {
    pub speed_ms: f64,
    pub direction_deg: f64,
}

impl GlobalWind {
    pub fn new(speed_ms: f64, direction_deg: f64) -> Self {
        Self {
            speed_ms,
            direction_deg,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.speed_ms >= 0.0) || !self.speed_ms.is_finite() {
            return Err(Error::InvalidTrace(format!(
                "wind speed {} must be finite and non-negative",
                self.speed_ms
            )));
        }
        if !(0.0..360.0).contains(&self.direction_deg) {
            return Err(Error::InvalidTrace(format!(
                "wind direction {} out of [0, 360)",
                self.direction_deg
            )));
        }
        Ok(())
    }
}

/// Number of direction classes used to quantize relative wind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassCount {
    Four,
    Eight,
}

impl ClassCount {
    pub fn as_u32(self) -> u32 {
        match self {
            ClassCount::Four => 4,
            ClassCount::Eight => 8,
        }
    }

    pub fn try_from_u32(k: u32) -> Result<Self> {
        match k {
            4 => Ok(ClassCount::Four),
            8 => Ok(ClassCount::Eight),
            other => Err(Error::UnsupportedClassCount(other)),
        }
    }

    /// Representative angles of every class, in class order.
    pub fn representatives(self) -> &'static [f64] {
        match self {
            ClassCount::Four => &[0.0, 45.0, 135.0, 180.0],
            ClassCount::Eight => &[0.0, 22.5, 45.0, 67.5, 90.0, 112.5, 135.0, 157.5],
        }
    }
}

/// One quantization bucket of relative wind direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DirectionClass {
    pub index: usize,
    pub class_count: u32,
    pub representative_deg: f64,
}

/// Normalize an angle in degrees into `[0, 360)`.
pub fn normalize_deg(angle: f64) -> f64 {
    let mut a = angle % 360.0;
    if a < 0.0 {
        a += 360.0;
    }
    // -1e-30 % 360 is -0.0; keep the sign bit clean.
    if a == 0.0 {
        a = 0.0;
    }
    a
}

/// Polar angle of the edge from `u` to `v`, in degrees `[0, 360)`.
///
/// Measured counterclockwise from the positive x axis, covering all four
/// quadrants (including vertical edges).
pub fn edge_angle(u: Point2D, v: Point2D) -> Result<f64> {
    let dx = v.x - u.x;
    let dy = v.y - u.y;
    if dx == 0.0 && dy == 0.0 {
        return Err(Error::DegenerateEdge { x: u.x, y: u.y });
    }
    Ok(normalize_deg(dy.atan2(dx).to_degrees()))
}

/// Wind direction relative to an edge of angle `psi`: `(direction - psi) mod 360`.
pub fn relative_wind_direction(wind: GlobalWind, psi_deg: f64) -> f64 {
    normalize_deg(wind.direction_deg - psi_deg)
}

/// Quantize a relative direction into its class.
///
/// Classes pair sectors that are mirror images about the 0°–180° axis, so
/// both members of a class see the same air speed. Bands are half-open
/// `[lo, hi)`; 315° therefore lands in class 0 for `k = 4`.
pub fn classify(theta_deg: f64, k: ClassCount) -> DirectionClass {
    debug_assert!(
        (0.0..360.0).contains(&theta_deg),
        "theta {theta_deg} out of range"
    );
    let sectors = 2 * k.as_u32() as usize; // 8 or 16
    let width = 360.0 / sectors as f64;
    let sector = ((theta_deg / width) as usize).min(sectors - 1);
    // Upper half keeps its index, lower half mirrors onto it.
    let index = if sector < sectors / 2 {
        sector
    } else {
        sectors - 1 - sector
    };
    DirectionClass {
        index,
        class_count: k.as_u32(),
        representative_deg: representative(index, k),
    }
}

/// Representative angle of class `index` under `k` classes.
pub fn representative(index: usize, k: ClassCount) -> f64 {
    k.representatives()[index]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn edge_angle_axes_and_quadrants() {
        let o = Point2D::new(0.0, 0.0);
        assert_eq!(edge_angle(o, Point2D::new(1.0, 0.0)).unwrap(), 0.0);
        assert_eq!(edge_angle(o, Point2D::new(0.0, 1.0)).unwrap(), 90.0);
        assert_eq!(edge_angle(o, Point2D::new(-1.0, -1.0)).unwrap(), 225.0);
        // Vertical edges agree with the limit of a slightly tilted edge.
        let almost_vertical = edge_angle(o, Point2D::new(1e-9, 1.0)).unwrap();
        assert_relative_eq!(almost_vertical, 90.0, epsilon = 1e-6);
    }

    #[test]
    fn edge_angle_rejects_coincident_endpoints() {
        let p = Point2D::new(3.0, 4.0);
        assert!(matches!(
            edge_angle(p, p),
            Err(Error::DegenerateEdge { .. })
        ));
    }

    #[test]
    fn relative_direction_examples() {
        let wind = |dir| GlobalWind::new(5.0, dir);
        assert_eq!(relative_wind_direction(wind(90.0), 90.0), 0.0);
        assert_eq!(relative_wind_direction(wind(30.0), 100.0), 290.0);
    }

    #[test]
    fn classify_four_examples() {
        let c = classify(0.0, ClassCount::Four);
        assert_eq!((c.index, c.representative_deg), (0, 0.0));
        let c = classify(180.0, ClassCount::Four);
        assert_eq!((c.index, c.representative_deg), (3, 180.0));
        // 300 lies in [270, 315), the lower band of class 1.
        assert_eq!(classify(300.0, ClassCount::Four).index, 1);
        // Half-open bands: 315 belongs to class 0's lower band [315, 360).
        assert_eq!(classify(315.0, ClassCount::Four).index, 0);
    }

    #[test]
    fn classify_eight_band_table() {
        // Upper bands i*22.5 ..< (i+1)*22.5 map straight to class i.
        for i in 0..8 {
            let theta = i as f64 * 22.5 + 10.0;
            assert_eq!(classify(theta, ClassCount::Eight).index, i);
        }
        // Lower bands mirror: (15-i)L ..< (16-i)L maps to class i.
        assert_eq!(classify(350.0, ClassCount::Eight).index, 0);
        assert_eq!(classify(190.0, ClassCount::Eight).index, 7);
    }

    #[test]
    fn representatives_match_class_lists() {
        assert_eq!(representative(1, ClassCount::Four), 45.0);
        assert_eq!(representative(2, ClassCount::Four), 135.0);
        assert_eq!(representative(5, ClassCount::Eight), 112.5);
    }

    #[test]
    fn class_count_rejects_unsupported() {
        assert!(ClassCount::try_from_u32(3).is_err());
        assert!(ClassCount::try_from_u32(16).is_err());
        assert_eq!(ClassCount::try_from_u32(8).unwrap(), ClassCount::Eight);
    }

    fn interval_membership_oracle(theta: f64, k: u32) -> usize {
        // Re-derive the class straight from the band definitions.
        let sectors = 2 * k;
        let width = 360.0 / sectors as f64;
        for i in 0..k as usize {
            let upper = (i as f64 * width, (i + 1) as f64 * width);
            let lower = (
                (sectors as usize - 1 - i) as f64 * width,
                (sectors as usize - i) as f64 * width,
            );
            if (theta >= upper.0 && theta < upper.1) || (theta >= lower.0 && theta < lower.1) {
                return i;
            }
        }
        unreachable!("bands cover [0, 360)")
    }

    proptest! {
        #[test]
        fn reversal_shifts_angle_by_half_turn(x1 in -1e4..1e4f64, y1 in -1e4..1e4f64,
                                              x2 in -1e4..1e4f64, y2 in -1e4..1e4f64) {
            let u = Point2D::new(x1, y1);
            let v = Point2D::new(x2, y2);
            prop_assume!(u != v);
            let fwd = edge_angle(u, v).unwrap();
            let back = edge_angle(v, u).unwrap();
            prop_assert!((normalize_deg(fwd + 180.0) - back).abs() < 1e-9);
        }

        #[test]
        fn relative_directions_of_reverse_edges_differ_by_half_turn(
            dir in 0.0..360.0f64, psi in 0.0..360.0f64) {
            let wind = GlobalWind::new(1.0, dir);
            let fwd = relative_wind_direction(wind, psi);
            let back = relative_wind_direction(wind, normalize_deg(psi + 180.0));
            prop_assert!((normalize_deg(fwd - 180.0) - back).abs() < 1e-9);
        }

        #[test]
        fn classify_matches_band_oracle(theta in 0.0..360.0f64) {
            for k in [ClassCount::Four, ClassCount::Eight] {
                prop_assert_eq!(classify(theta, k).index,
                                interval_membership_oracle(theta, k.as_u32()));
            }
        }

        #[test]
        fn cosine_symmetry_off_boundaries(theta in 0.0..360.0f64) {
            // The merged sectors are mirror images, so classes agree except
            // exactly on band boundaries (where the half-open convention
            // breaks the tie).
            for k in [ClassCount::Four, ClassCount::Eight] {
                let width = 360.0 / (2.0 * k.as_u32() as f64);
                let distance_to_boundary = (theta / width - (theta / width).round()).abs();
                prop_assume!(distance_to_boundary > 1e-6);
                let mirrored = normalize_deg(360.0 - theta);
                prop_assert_eq!(classify(theta, k).index, classify(mirrored, k).index);
            }
        }
    }
}
