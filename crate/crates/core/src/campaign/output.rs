//! Plot-ready CSV outputs: one status file and one color file per scenario.

use std::path::{Path, PathBuf};

use crate::campaign::CampaignResult;
use crate::error::{Error, Result};
use crate::mission::{Algorithm, MissionStatus, VertexColor};

const STATUS_ORDER: [MissionStatus; 4] = [
    MissionStatus::Canceled,
    MissionStatus::Success,
    MissionStatus::Delivered,
    MissionStatus::Fail,
];

const COLOR_ORDER: [VertexColor; 3] = [VertexColor::Green, VertexColor::Gray, VertexColor::Black];

/// Write `<scenario>_statuses.csv` and `<scenario>_colors.csv` for every
/// scenario in the result. Long format, stable row order, percentages at one
/// decimal. Returns the written paths.
pub fn emit_outputs(result: &CampaignResult, dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)
        .map_err(|e| Error::Config(format!("cannot create {}: {e}", dir.display())))?;
    let mut written = Vec::new();

    for (scenario, per_budget) in &result.statuses {
        let path = dir.join(format!("{scenario}_statuses.csv"));
        let mut text = String::from("budget,algorithm,status,percent\n");
        for (bi, fraction) in result.budget_fractions.iter().enumerate() {
            for algorithm in Algorithm::ALL {
                let cell = per_budget[bi]
                    .get(&algorithm.to_string())
                    .copied()
                    .unwrap_or_default();
                for status in STATUS_ORDER {
                    text.push_str(&format!(
                        "{fraction},{algorithm},{status},{:.1}\n",
                        cell.percent(status)
                    ));
                }
            }
        }
        std::fs::write(&path, text)?;
        written.push(path);
    }

    for (scenario, per_budget) in &result.colors {
        let path = dir.join(format!("{scenario}_colors.csv"));
        let mut text = String::from("budget,color,percent\n");
        for (bi, fraction) in result.budget_fractions.iter().enumerate() {
            let cell = per_budget[bi];
            for color in COLOR_ORDER {
                text.push_str(&format!("{fraction},{color},{:.1}\n", cell.percent(color)));
            }
        }
        std::fs::write(&path, text)?;
        written.push(path);
    }

    written.sort();
    Ok(written)
}
