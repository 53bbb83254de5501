//! Steady-flight power model and per-meter energy cost.
//!
//! The chain is: relative wind -> air speed -> drag -> thrust -> pitch ->
//! induced velocity (implicit momentum-theory equation) -> power -> unit
//! cost in J/m. Unit costs over a whole wind alphabet give the global
//! best/worst-case bounds used by vertex pre-classification.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::wind::ClassCount;

/// Gravitational acceleration, m/s². Fixed; not configurable.
pub const GRAVITY: f64 = 9.81;

/// Physical constants of the vehicle plus its mission-level limits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DroneParams {
    /// Airframe mass without payload, kg.
    pub frame_mass: f64,
    /// Equivalent aggregate rotor-disk radius, m.
    pub rotor_radius: f64,
    /// Dimensionless drag coefficient.
    pub drag_coefficient: f64,
    /// Air density, kg/m³.
    pub air_density: f64,
    /// Maximum payload mass, kg.
    pub max_payload: f64,
    /// Full battery budget, J.
    pub battery_budget: f64,
    /// Default cruise ground speed, m/s.
    pub cruise_speed: f64,
}

impl Default for DroneParams {
    fn default() -> Self {
        Self {
            frame_mass: 10.0,
            rotor_radius: 0.5,
            drag_coefficient: 1.0,
            air_density: 1.225,
            max_payload: 7.0,
            battery_budget: 5_000_000.0,
            cruise_speed: 20.0,
        }
    }
}

impl DroneParams {
    /// Rotor disk cross-sectional area, m².
    pub fn disk_area(&self) -> f64 {
        PI * self.rotor_radius * self.rotor_radius
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("frame_mass", self.frame_mass),
            ("rotor_radius", self.rotor_radius),
            ("drag_coefficient", self.drag_coefficient),
            ("air_density", self.air_density),
            ("max_payload", self.max_payload),
            ("battery_budget", self.battery_budget),
            ("cruise_speed", self.cruise_speed),
        ];
        for (name, value) in fields {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::Config(format!(
                    "drone parameter `{name}` must be strictly positive, got {value}"
                )));
            }
        }
        Ok(())
    }

    /// Parse a flat `key = value` configuration string (TOML syntax).
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let params: DroneParams =
            toml::from_str(text).map_err(|e| Error::Config(format!("drone config: {e}")))?;
        params.validate()?;
        Ok(params)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }
}

/// One steady-flight evaluation point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlightCondition {
    /// Carried payload mass, kg.
    pub payload_kg: f64,
    /// Ground speed, m/s.
    pub ground_speed: f64,
    /// Global wind speed, m/s.
    pub wind_speed: f64,
    /// Relative wind direction along the edge, degrees (a class representative).
    pub relative_direction_deg: f64,
}

/// All intermediate quantities of one power evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerBreakdown {
    /// Air speed, m/s.
    pub air_speed: f64,
    /// Drag force, N.
    pub drag: f64,
    /// Required thrust, N.
    pub thrust: f64,
    /// Pitch angle, rad.
    pub pitch: f64,
    /// Induced velocity at hover, m/s.
    pub hover_induced: f64,
    /// Induced velocity in forward flight, m/s.
    pub induced: f64,
    /// Steady-flight power, W.
    pub power: f64,
    /// Energy per meter of ground track, J/m.
    pub unit_cost: f64,
}

/// Per-meter cost extremes for one payload configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitCostRange {
    pub min: f64,
    pub max: f64,
}

/// Best/worst unit costs over the whole wind alphabet, per mission leg.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyBounds {
    /// Outbound leg, carrying the payload.
    pub loaded: UnitCostRange,
    /// Return leg, empty.
    pub empty: UnitCostRange,
}

/// Fold a direction onto `[0, 180]`.
///
/// Air speed depends on the relative direction only through its cosine, so
/// mirrored directions are priced identically; folding before the radian
/// conversion makes the symmetry exact in floating point.
fn fold_direction(theta_deg: f64) -> f64 {
    if theta_deg > 180.0 {
        360.0 - theta_deg
    } else {
        theta_deg
    }
}

/// Air speed seen by the drone, m/s.
///
/// Decomposes the wind into along-track and cross-track components relative
/// to the flight direction and superposes them with the ground speed.
pub fn air_speed(cond: &FlightCondition) -> f64 {
    let theta = fold_direction(cond.relative_direction_deg).to_radians();
    let along = cond.ground_speed - cond.wind_speed * theta.cos();
    let cross = -cond.wind_speed * theta.sin();
    along.hypot(cross)
}

/// Total drag force at air speed `s_a`, N.
pub fn drag_force(params: &DroneParams, s_a: f64) -> f64 {
    0.5 * params.air_density * s_a * s_a * params.drag_coefficient * params.disk_area()
}

/// Required thrust: weight plus drag, N.
pub fn thrust(params: &DroneParams, payload_kg: f64, drag: f64) -> Result<f64> {
    if payload_kg > params.max_payload {
        return Err(Error::PayloadExceeded {
            payload: payload_kg,
            max: params.max_payload,
        });
    }
    Ok((params.frame_mass + payload_kg) * GRAVITY + drag)
}

/// Pitch angle balancing drag against weight, rad.
pub fn pitch_angle(drag: f64, weight_force: f64) -> f64 {
    (drag / weight_force).atan()
}

/// Induced velocity at hover for a given thrust, m/s.
pub fn hover_induced_velocity(thrust: f64, params: &DroneParams) -> f64 {
    (thrust / (2.0 * params.air_density * params.disk_area())).sqrt()
}

/// Convergence tolerance for the induced-velocity solve, m/s.
pub const INDUCED_TOLERANCE: f64 = 1e-6;
const INDUCED_MAX_ITERS: usize = 200;

fn induced_rhs(s: f64, s_h: f64, ground_speed: f64, pitch: f64) -> f64 {
    let horizontal = ground_speed * pitch.cos();
    let vertical = ground_speed * pitch.sin() + s;
    s_h * s_h / horizontal.hypot(vertical)
}

/// Solve the implicit momentum-theory equation for the induced velocity.
///
/// Fixed-point iteration seeded at the hover value; if it fails to settle
/// within the iteration cap, falls back to bisection on the monotone
/// residual over `(0, s_h]`.
pub fn solve_induced_velocity(
    thrust: f64,
    ground_speed: f64,
    pitch: f64,
    params: &DroneParams,
) -> Result<f64> {
    let s_h = hover_induced_velocity(thrust, params);
    let mut s = s_h;
    for _ in 0..INDUCED_MAX_ITERS {
        let next = induced_rhs(s, s_h, ground_speed, pitch);
        if (next - s).abs() < INDUCED_TOLERANCE {
            return Ok(next);
        }
        s = next;
    }

    // Bisection on g(s) = s * |(v cos a, v sin a + s)| - s_h^2, which is
    // strictly increasing with g(0) < 0 <= g(s_h).
    let g = |s: f64| {
        let horizontal = ground_speed * pitch.cos();
        let vertical = ground_speed * pitch.sin() + s;
        s * horizontal.hypot(vertical) - s_h * s_h
    };
    let (mut lo, mut hi) = (0.0_f64, s_h);
    for _ in 0..INDUCED_MAX_ITERS {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        let candidate = 0.5 * (lo + hi);
        if (candidate - induced_rhs(candidate, s_h, ground_speed, pitch)).abs() < INDUCED_TOLERANCE
        {
            return Ok(candidate);
        }
    }
    Err(Error::SolverDiverged {
        thrust,
        speed: ground_speed,
    })
}

/// Evaluate the whole power chain for one flight condition.
pub fn compute_power_breakdown(
    params: &DroneParams,
    cond: &FlightCondition,
) -> Result<PowerBreakdown> {
    let s_a = air_speed(cond);
    let drag = drag_force(params, s_a);
    let thrust = thrust(params, cond.payload_kg, drag)?;
    let weight_force = (params.frame_mass + cond.payload_kg) * GRAVITY;
    let pitch = pitch_angle(drag, weight_force);
    let hover_induced = hover_induced_velocity(thrust, params);
    let induced = solve_induced_velocity(thrust, cond.ground_speed, pitch, params)?;
    let power = thrust * (cond.ground_speed * pitch.sin() + induced);
    Ok(PowerBreakdown {
        air_speed: s_a,
        drag,
        thrust,
        pitch,
        hover_induced,
        induced,
        power,
        unit_cost: power / cond.ground_speed,
    })
}

/// Energy for traversing an edge of the given length at unit cost `mu`, J.
pub fn edge_cost(mu: f64, length_m: f64) -> f64 {
    mu * length_m
}

/// Unit-cost extremes over a wind alphabet for both mission legs.
///
/// Scans the cross product of alphabet speeds and class representatives,
/// once with the payload and once empty.
pub fn energy_bounds(
    params: &DroneParams,
    payload_kg: f64,
    ground_speed: f64,
    wind_speeds: &[f64],
    k: ClassCount,
) -> Result<EnergyBounds> {
    if wind_speeds.is_empty() {
        return Err(Error::Config("wind alphabet must not be empty".into()));
    }
    let range_for = |leg_payload: f64| -> Result<UnitCostRange> {
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for &wind_speed in wind_speeds {
            for &rep in k.representatives() {
                let mu = compute_power_breakdown(
                    params,
                    &FlightCondition {
                        payload_kg: leg_payload,
                        ground_speed,
                        wind_speed,
                        relative_direction_deg: rep,
                    },
                )?
                .unit_cost;
                min = min.min(mu);
                max = max.max(mu);
            }
        }
        Ok(UnitCostRange { min, max })
    };
    Ok(EnergyBounds {
        loaded: range_for(payload_kg)?,
        empty: range_for(0.0)?,
    })
}

/// Mission leg, which determines the carried payload.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Leg {
    Loaded,
    Empty,
}

/// Memoized unit costs keyed by (leg, wind speed, direction class).
///
/// Unit costs only depend on the class representative, so one table entry
/// serves every edge under the same wind; the implicit solve runs once per
/// distinct key. Immutable after construction.
#[derive(Debug, Clone)]
pub struct UnitCostTable {
    params: DroneParams,
    payload_kg: f64,
    ground_speed: f64,
    k: ClassCount,
    table: HashMap<(Leg, u64, usize), f64>,
}

impl UnitCostTable {
    /// Precompute costs for every combination of leg, alphabet speed and class.
    pub fn build(
        params: &DroneParams,
        payload_kg: f64,
        ground_speed: f64,
        wind_speeds: &[f64],
        k: ClassCount,
    ) -> Result<Self> {
        let mut table = HashMap::new();
        for leg in [Leg::Loaded, Leg::Empty] {
            for &speed in wind_speeds {
                for (index, &rep) in k.representatives().iter().enumerate() {
                    let mu = compute_power_breakdown(
                        params,
                        &FlightCondition {
                            payload_kg: if leg == Leg::Loaded { payload_kg } else { 0.0 },
                            ground_speed,
                            wind_speed: speed,
                            relative_direction_deg: rep,
                        },
                    )?
                    .unit_cost;
                    table.insert((leg, speed.to_bits(), index), mu);
                }
            }
        }
        Ok(Self {
            params: params.clone(),
            payload_kg,
            ground_speed,
            k,
            table,
        })
    }

    pub fn class_count(&self) -> ClassCount {
        self.k
    }

    pub fn ground_speed(&self) -> f64 {
        self.ground_speed
    }

    /// Smallest memoized unit cost across both legs and the whole alphabet.
    pub fn min_unit_cost(&self) -> f64 {
        self.table.values().fold(f64::INFINITY, |m, &v| m.min(v))
    }

    /// Unit cost for a leg, wind speed and class index. Falls back to a
    /// direct evaluation when the speed was not in the alphabet.
    pub fn unit_cost(&self, leg: Leg, wind_speed: f64, class_index: usize) -> Result<f64> {
        if let Some(&mu) = self.table.get(&(leg, wind_speed.to_bits(), class_index)) {
            return Ok(mu);
        }
        let breakdown = compute_power_breakdown(
            &self.params,
            &FlightCondition {
                payload_kg: if leg == Leg::Loaded {
                    self.payload_kg
                } else {
                    0.0
                },
                ground_speed: self.ground_speed,
                wind_speed,
                relative_direction_deg: representative_for(self.k, class_index),
            },
        )?;
        Ok(breakdown.unit_cost)
    }
}

fn representative_for(k: ClassCount, index: usize) -> f64 {
    k.representatives()[index]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn params() -> DroneParams {
        DroneParams::default()
    }

    fn cond(payload: f64, speed: f64, wind: f64, theta: f64) -> FlightCondition {
        FlightCondition {
            payload_kg: payload,
            ground_speed: speed,
            wind_speed: wind,
            relative_direction_deg: theta,
        }
    }

    #[test]
    fn air_speed_examples() {
        for theta in [0.0, 77.0, 135.0, 240.0] {
            assert_eq!(air_speed(&cond(0.0, 20.0, 0.0, theta)), 20.0);
        }
        assert_relative_eq!(air_speed(&cond(0.0, 20.0, 5.0, 0.0)), 15.0, epsilon = 1e-12);
        assert_relative_eq!(
            air_speed(&cond(0.0, 20.0, 15.0, 180.0)),
            35.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn drag_examples() {
        let p = params();
        assert_eq!(drag_force(&p, 0.0), 0.0);
        let d10 = drag_force(&p, 10.0);
        let d20 = drag_force(&p, 20.0);
        assert_relative_eq!(d20, 4.0 * d10, epsilon = 1e-12);
        // 0.5 * 1.225 * 100 * 1.0 * pi * 0.25
        assert_relative_eq!(d10, 0.5 * 1.225 * 100.0 * PI * 0.25, epsilon = 1e-12);
    }

    #[test]
    fn thrust_examples() {
        let p = params();
        assert_relative_eq!(thrust(&p, 0.0, 0.0).unwrap(), 98.1, epsilon = 1e-12);
        let base = thrust(&p, 3.0, 1.5).unwrap();
        assert_relative_eq!(thrust(&p, 3.0, 4.5).unwrap(), base + 3.0, epsilon = 1e-12);
        let drag = drag_force(&p, 10.0);
        assert_relative_eq!(
            thrust(&p, 7.0, drag).unwrap(),
            17.0 * GRAVITY + drag,
            epsilon = 1e-12
        );
        assert!(matches!(
            thrust(&p, 8.0, 0.0),
            Err(Error::PayloadExceeded { .. })
        ));
    }

    #[test]
    fn pitch_examples() {
        assert_eq!(pitch_angle(0.0, 100.0), 0.0);
        assert_relative_eq!(pitch_angle(100.0, 100.0), PI / 4.0, epsilon = 1e-12);
        assert!(pitch_angle(50.0, 100.0) < pitch_angle(80.0, 100.0));
    }

    #[test]
    fn hover_induced_scaling() {
        let p = params();
        let s1 = hover_induced_velocity(100.0, &p);
        let s4 = hover_induced_velocity(400.0, &p);
        assert_relative_eq!(s4, 2.0 * s1, epsilon = 1e-12);
        let expected = (214.876 / (2.0 * 1.225 * PI * 0.25)).sqrt();
        assert_relative_eq!(
            hover_induced_velocity(214.876, &p),
            expected,
            epsilon = 1e-12
        );
        let mut big_rotor = params();
        big_rotor.rotor_radius = 0.8;
        assert!(hover_induced_velocity(100.0, &big_rotor) < s1);
    }

    #[test]
    fn induced_velocity_hover_identity() {
        let p = params();
        let t = thrust(&p, 7.0, 0.0).unwrap();
        let s_h = hover_induced_velocity(t, &p);
        let s_i = solve_induced_velocity(t, 0.0, 0.0, &p).unwrap();
        assert_relative_eq!(s_i, s_h, epsilon = 1e-9);
    }

    /// Independent root finder used only by tests: plain interval halving on
    /// the residual written from scratch.
    fn bisect_induced(thrust: f64, ground_speed: f64, pitch: f64, p: &DroneParams) -> f64 {
        let s_h = hover_induced_velocity(thrust, p);
        let residual = |s: f64| {
            let hx = ground_speed * pitch.cos();
            let hy = ground_speed * pitch.sin() + s;
            s - s_h * s_h / (hx * hx + hy * hy).sqrt()
        };
        let (mut lo, mut hi) = (1e-12, s_h + 1.0);
        assert!(residual(lo) < 0.0 && residual(hi) > 0.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if residual(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn induced_velocity_matches_bisection_oracle() {
        let p = params();
        for payload in [0.0, 3.5, 7.0] {
            for speed in [5.0, 10.0, 20.0] {
                for wind in [0.0, 5.0, 15.0] {
                    for theta in [0.0, 45.0, 135.0, 180.0] {
                        let c = cond(payload, speed, wind, theta);
                        let s_a = air_speed(&c);
                        let drag = drag_force(&p, s_a);
                        let t = thrust(&p, payload, drag).unwrap();
                        let pitch = pitch_angle(drag, (p.frame_mass + payload) * GRAVITY);
                        let solved = solve_induced_velocity(t, speed, pitch, &p).unwrap();
                        let oracle = bisect_induced(t, speed, pitch, &p);
                        assert!(
                            (solved - oracle).abs() < 1e-6,
                            "payload {payload} speed {speed} wind {wind} theta {theta}: {solved} vs {oracle}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn induced_velocity_decreases_with_ground_speed() {
        let p = params();
        let t = 300.0;
        let mut prev = f64::INFINITY;
        for speed in [0.0, 5.0, 10.0, 15.0, 20.0, 25.0] {
            let s_i = solve_induced_velocity(t, speed, 0.2, &p).unwrap();
            assert!(s_i < prev || speed == 0.0 && s_i <= prev);
            prev = s_i;
        }
    }

    #[test]
    fn breakdown_ignores_direction_without_wind() {
        let p = params();
        let a = compute_power_breakdown(&p, &cond(7.0, 20.0, 0.0, 0.0)).unwrap();
        let b = compute_power_breakdown(&p, &cond(7.0, 20.0, 0.0, 135.0)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn headwind_and_payload_cost_more() {
        let p = params();
        let tail = compute_power_breakdown(&p, &cond(7.0, 20.0, 15.0, 0.0)).unwrap();
        let head = compute_power_breakdown(&p, &cond(7.0, 20.0, 15.0, 180.0)).unwrap();
        assert!(head.unit_cost > tail.unit_cost);
        let empty = compute_power_breakdown(&p, &cond(0.0, 20.0, 10.0, 45.0)).unwrap();
        let loaded = compute_power_breakdown(&p, &cond(7.0, 20.0, 10.0, 45.0)).unwrap();
        assert!(loaded.unit_cost > empty.unit_cost);
    }

    #[test]
    fn direction_symmetry_is_exact() {
        let p = params();
        for theta in [30.0, 45.0, 90.0, 120.5, 170.0] {
            let a = compute_power_breakdown(&p, &cond(7.0, 20.0, 10.0, theta)).unwrap();
            let b = compute_power_breakdown(&p, &cond(7.0, 20.0, 10.0, 360.0 - theta)).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn edge_cost_linearity() {
        assert_eq!(edge_cost(12.5, 0.0), 0.0);
        assert_relative_eq!(edge_cost(12.5, 200.0), 2.0 * edge_cost(12.5, 100.0));
        let p = params();
        let mu = compute_power_breakdown(&p, &cond(7.0, 20.0, 5.0, 45.0))
            .unwrap()
            .unit_cost;
        assert_relative_eq!(edge_cost(mu, 321.0), mu * 321.0, epsilon = 1e-12);
    }

    #[test]
    fn energy_bounds_singleton_and_grid() {
        let p = params();
        let single = energy_bounds(&p, 7.0, 20.0, &[0.0], ClassCount::Four).unwrap();
        assert_eq!(single.loaded.min, single.loaded.max);

        let alphabet = [0.0, 5.0, 10.0, 15.0];
        let bounds = energy_bounds(&p, 7.0, 20.0, &alphabet, ClassCount::Four).unwrap();
        // Exhaustive grid oracle: recompute every combination directly.
        let mut grid = Vec::new();
        for &w in &alphabet {
            for &rep in ClassCount::Four.representatives() {
                grid.push((
                    w,
                    rep,
                    compute_power_breakdown(&p, &cond(7.0, 20.0, w, rep))
                        .unwrap()
                        .unit_cost,
                ));
            }
        }
        let min = grid
            .iter()
            .cloned()
            .fold(f64::INFINITY, |m, (_, _, c)| m.min(c));
        let max = grid.iter().cloned().fold(0.0_f64, |m, (_, _, c)| m.max(c));
        assert_eq!(bounds.loaded.min, min);
        assert_eq!(bounds.loaded.max, max);
        let argmax = grid.iter().find(|(_, _, c)| *c == max).unwrap();
        let argmin = grid.iter().find(|(_, _, c)| *c == min).unwrap();
        assert_eq!((argmax.0, argmax.1), (15.0, 180.0));
        assert_eq!((argmin.0, argmin.1), (15.0, 0.0));

        let empty_bounds = energy_bounds(&p, 0.0, 20.0, &alphabet, ClassCount::Four).unwrap();
        assert!(bounds.loaded.min >= empty_bounds.loaded.min);
        assert!(bounds.loaded.max >= empty_bounds.loaded.max);
    }

    #[test]
    fn unit_cost_table_matches_direct_evaluation() {
        let p = params();
        let alphabet = [0.0, 5.0, 10.0, 15.0];
        let table = UnitCostTable::build(&p, 7.0, 20.0, &alphabet, ClassCount::Four).unwrap();
        for &w in &alphabet {
            for idx in 0..4 {
                let direct = compute_power_breakdown(
                    &p,
                    &cond(7.0, 20.0, w, ClassCount::Four.representatives()[idx]),
                )
                .unwrap()
                .unit_cost;
                assert_eq!(table.unit_cost(Leg::Loaded, w, idx).unwrap(), direct);
            }
        }
        // A speed outside the alphabet still evaluates.
        assert!(table.unit_cost(Leg::Empty, 7.3, 2).unwrap() > 0.0);
    }

    #[test]
    fn drone_params_toml_roundtrip() {
        let text = "frame_mass = 12.0\nrotor_radius = 0.6\n";
        let p = DroneParams::from_toml_str(text).unwrap();
        assert_eq!(p.frame_mass, 12.0);
        assert_eq!(p.rotor_radius, 0.6);
        assert_eq!(p.max_payload, 7.0); // default
        assert!(DroneParams::from_toml_str("frame_mass = -1.0").is_err());
        assert!(DroneParams::from_toml_str("unknown_key = 1.0").is_err());
    }

    proptest! {
        #[test]
        fn air_speed_closed_form(speed in 1.0..30.0f64, wind in 0.0..20.0f64,
                                 theta in 0.0..360.0f64) {
            let c = cond(0.0, speed, wind, theta);
            let s_a = air_speed(&c);
            let closed = (speed * speed - 2.0 * speed * wind * theta.to_radians().cos()
                + wind * wind)
                .max(0.0)
                .sqrt();
            prop_assert!((s_a - closed).abs() < 1e-9 * (1.0 + closed));
        }

        #[test]
        fn residual_bound_holds(payload in 0.0..7.0f64, speed in 1.0..30.0f64,
                                wind in 0.0..20.0f64, theta in 0.0..360.0f64) {
            let p = params();
            let b = compute_power_breakdown(&p, &cond(payload, speed, wind, theta)).unwrap();
            let hx = speed * b.pitch.cos();
            let hy = speed * b.pitch.sin() + b.induced;
            let rhs = b.hover_induced * b.hover_induced / (hx * hx + hy * hy).sqrt();
            prop_assert!((b.induced - rhs).abs() < INDUCED_TOLERANCE);
            prop_assert!(b.power > 0.0);
            prop_assert!(b.thrust >= (p.frame_mass + payload) * GRAVITY);
        }
    }
}
