//! Wind-station (WCU) datasets: CSV loading, validation, and rescaling into
//! a delivery-sized area with finer time-slots.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use chrono::{NaiveDate, NaiveDateTime, NaiveTime};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::WindTrace;
use crate::wind::{GlobalWind, Point2D};

/// One wind observation from a ground station.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WcuRecord {
    /// Observation date, `YYYY-MM-DD`.
    pub date: String,
    /// Observation time, `HH:MM`.
    pub time: String,
    /// Wind speed, m/s.
    pub speed: f64,
    /// Wind direction, degrees in `[0, 360)`.
    pub direction: f64,
    /// Station identifier (also the wind region name).
    pub station: String,
    pub x: f64,
    pub y: f64,
}

impl WcuRecord {
    pub fn timestamp(&self) -> Result<NaiveDateTime> {
        let date = NaiveDate::parse_from_str(&self.date, "%Y-%m-%d")
            .map_err(|e| Error::Config(format!("bad date `{}`: {e}", self.date)))?;
        let time = NaiveTime::parse_from_str(&self.time, "%H:%M")
            .map_err(|e| Error::Config(format!("bad time `{}`: {e}", self.time)))?;
        Ok(NaiveDateTime::new(date, time))
    }
}

/// Load and validate a station dataset.
///
/// Expected header: `date,time,speed,direction,station,x,y`. Records come
/// back sorted by timestamp, then station.
pub fn load_wcu_csv(path: &Path) -> Result<Vec<WcuRecord>> {
    let mut reader = csv::Reader::from_path(path)?;
    let mut records = Vec::new();
    for result in reader.deserialize::<WcuRecord>() {
        let line = result
            .as_ref()
            .err()
            .and_then(|e| e.position().map(|p| p.line() as usize))
            .unwrap_or(records.len() + 2);
        let record = result.map_err(|e| Error::Parse {
            line,
            message: e.to_string(),
        })?;
        let line = records.len() + 2; // header is line 1
        if !(record.speed >= 0.0) || !record.speed.is_finite() {
            return Err(Error::Validation {
                line,
                message: format!("wind speed {} must be non-negative", record.speed),
            });
        }
        if !(0.0..360.0).contains(&record.direction) {
            return Err(Error::Validation {
                line,
                message: format!("wind direction {} out of [0, 360)", record.direction),
            });
        }
        if !record.x.is_finite() || !record.y.is_finite() {
            return Err(Error::Validation {
                line,
                message: "station coordinates must be finite".into(),
            });
        }
        record.timestamp().map_err(|e| Error::Validation {
            line,
            message: e.to_string(),
        })?;
        records.push(record);
    }
    records.sort_by(|a, b| {
        (a.timestamp().unwrap(), &a.station).cmp(&(b.timestamp().unwrap(), &b.station))
    });
    Ok(records)
}

/// Write records back in the canonical column order.
pub fn save_wcu_csv(records: &[WcuRecord], path: &Path) -> Result<()> {
    let mut writer = csv::Writer::from_path(path)?;
    for r in records {
        writer.serialize(r)?;
    }
    writer.flush()?;
    Ok(())
}

/// Distinct stations with their (possibly scaled) coordinates, sorted by id.
pub fn station_points(records: &[WcuRecord]) -> Result<Vec<(String, Point2D)>> {
    let mut stations: BTreeMap<String, Point2D> = BTreeMap::new();
    for r in records {
        let p = Point2D::new(r.x, r.y);
        if let Some(existing) = stations.get(&r.station) {
            if existing.distance(&p) > 1e-9 {
                return Err(Error::Config(format!(
                    "station `{}` reports inconsistent coordinates",
                    r.station
                )));
            }
        } else {
            stations.insert(r.station.clone(), p);
        }
    }
    Ok(stations.into_iter().collect())
}

/// Shrink distances and refine time-slots.
///
/// Station coordinates divide by `distance_factor`; every raw observation
/// interval splits into `time_factor` slots repeating the observation, so a
/// 60-minute feed with factor 4 yields 15-minute slots. Raw timestamps must
/// be evenly spaced and every station must report at every timestamp.
pub fn scale_dataset(
    records: &[WcuRecord],
    distance_factor: f64,
    time_factor: u32,
) -> Result<(Vec<WcuRecord>, WindTrace)> {
    if !(distance_factor > 0.0) || time_factor == 0 {
        return Err(Error::Config("scale factors must be positive".into()));
    }
    if records.is_empty() {
        return Err(Error::Config("empty dataset".into()));
    }

    let scaled: Vec<WcuRecord> = records
        .iter()
        .map(|r| WcuRecord {
            x: r.x / distance_factor,
            y: r.y / distance_factor,
            ..r.clone()
        })
        .collect();

    let mut times: BTreeSet<NaiveDateTime> = BTreeSet::new();
    for r in &scaled {
        times.insert(r.timestamp()?);
    }
    let times: Vec<NaiveDateTime> = times.into_iter().collect();
    if times.len() < 2 {
        return Err(Error::Config(
            "need at least two distinct timestamps to infer the slot interval".into(),
        ));
    }
    let raw_interval = (times[1] - times[0]).num_seconds();
    for pair in times.windows(2) {
        if (pair[1] - pair[0]).num_seconds() != raw_interval {
            return Err(Error::Config(format!(
                "observations are not evenly spaced ({} vs {} s)",
                (pair[1] - pair[0]).num_seconds(),
                raw_interval
            )));
        }
    }
    let slot_duration = raw_interval as f64 / time_factor as f64;

    let regions: Vec<String> = station_points(&scaled)?
        .into_iter()
        .map(|(id, _)| id)
        .collect();

    let mut by_time: BTreeMap<NaiveDateTime, BTreeMap<String, GlobalWind>> = BTreeMap::new();
    for r in &scaled {
        let entry = by_time.entry(r.timestamp()?).or_default();
        if entry
            .insert(r.station.clone(), GlobalWind::new(r.speed, r.direction))
            .is_some()
        {
            return Err(Error::Config(format!(
                "station `{}` reports twice at {} {}",
                r.station, r.date, r.time
            )));
        }
    }
    let mut slots = Vec::with_capacity(times.len() * time_factor as usize);
    for (t, map) in &by_time {
        for region in &regions {
            if !map.contains_key(region) {
                return Err(Error::Config(format!(
                    "station `{region}` has no observation at {t}"
                )));
            }
        }
        for _ in 0..time_factor {
            slots.push(map.clone());
        }
    }
    let trace = WindTrace::new(slot_duration, regions, slots)?;
    Ok((scaled, trace))
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIXTURE: &str = "\
date,time,speed,direction,station,x,y
2021-03-01,00:00,4.5,120.0,sta,1000.0,2000.0
2021-03-01,00:00,2.0,300.0,stb,9000.0,4000.0
2021-03-01,01:00,6.0,90.0,sta,1000.0,2000.0
2021-03-01,01:00,0.0,10.0,stb,9000.0,4000.0
";

    fn write_fixture(text: &str) -> (tempfile::TempDir, std::path::PathBuf) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("wcu.csv");
        std::fs::write(&path, text).unwrap();
        (dir, path)
    }

    #[test]
    fn empty_data_section_is_empty() {
        let (_dir, path) = write_fixture("date,time,speed,direction,station,x,y\n");
        assert!(load_wcu_csv(&path).unwrap().is_empty());
    }

    #[test]
    fn fixture_roundtrips() {
        let (dir, path) = write_fixture(FIXTURE);
        let records = load_wcu_csv(&path).unwrap();
        assert_eq!(records.len(), 4);
        let out = dir.path().join("out.csv");
        save_wcu_csv(&records, &out).unwrap();
        let again = load_wcu_csv(&out).unwrap();
        assert_eq!(records, again);
    }

    #[test]
    fn out_of_range_direction_names_the_row() {
        let bad = "\
date,time,speed,direction,station,x,y
2021-03-01,00:00,4.5,120.0,sta,0.0,0.0
2021-03-01,01:00,4.5,400.0,sta,0.0,0.0
";
        let (_dir, path) = write_fixture(bad);
        match load_wcu_csv(&path) {
            Err(Error::Validation { line, message }) => {
                assert_eq!(line, 3);
                assert!(message.contains("400"));
            }
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn identity_scaling_preserves_coordinates() {
        let (_dir, path) = write_fixture(FIXTURE);
        let records = load_wcu_csv(&path).unwrap();
        let (scaled, trace) = scale_dataset(&records, 1.0, 1).unwrap();
        assert_eq!(scaled, records);
        assert_eq!(trace.horizon(), 2);
        assert_eq!(trace.slot_duration(), 3600.0);
    }

    #[test]
    fn scaling_shrinks_distances_and_refines_slots() {
        let (_dir, path) = write_fixture(FIXTURE);
        let records = load_wcu_csv(&path).unwrap();
        let (scaled, trace) = scale_dataset(&records, 10.0, 4).unwrap();

        let before = station_points(&records).unwrap();
        let after = station_points(&scaled).unwrap();
        let d_before = before[0].1.distance(&before[1].1);
        let d_after = after[0].1.distance(&after[1].1);
        assert!((d_before / d_after - 10.0).abs() < 1e-9);

        assert_eq!(trace.horizon(), 8); // 2 raw times x 4
        assert_eq!(trace.slot_duration(), 900.0);
        assert_eq!(trace.regions(), &["sta".to_string(), "stb".to_string()]);
        // Repeated observation within a raw interval.
        assert_eq!(trace.wind(0, 0), trace.wind(3, 0));
        assert_ne!(trace.wind(0, 0), trace.wind(4, 0));
    }
}
