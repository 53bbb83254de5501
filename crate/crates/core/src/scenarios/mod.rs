//! Scenario generation: synthetic random graphs and traces, wind-station
//! datasets, and tessellation-based delivery graphs.

mod er;
mod geometry;
mod tessellation;
mod wcu;

pub use er::{generate_er, generate_wind_trace, ErConfig};
pub use geometry::BoundingBox;
pub use tessellation::{
    build_tessellation_graph, Station, TessellationKind, DEFAULT_GEOMETRY_TOLERANCE,
};
pub use wcu::{load_wcu_csv, save_wcu_csv, scale_dataset, station_points, WcuRecord};
