//! Power-study configuration files: TOML with one `[[scenario]]` table per
//! entry, mirroring the scenario fields.

use std::path::Path;

use elso::{DistSpec, Scenario, TestSelection};
use serde::Deserialize;

use crate::errors::{CliError, CliResult};
use crate::orders;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    #[serde(default)]
    pub scenario: Vec<ScenarioConfig>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default)]
    pub name: Option<String>,
    pub k: usize,
    pub n: Vec<usize>,
    pub dists: Vec<String>,
    pub reps: usize,
    pub alpha: f64,
    /// `simple` (default), `tree:root=<pos>`, `umbrella:peak=<pos>` or
    /// `general:<pos><=<pos>,..` with 1-based group positions.
    #[serde(default = "default_order")]
    pub order: String,
    pub tests: Vec<String>,
    pub seed: u64,
    #[serde(default)]
    pub crit_tn: Option<f64>,
    #[serde(default)]
    pub crit_sn: Option<f64>,
}

fn default_order() -> String {
    "simple".to_string()
}

pub struct LoadedScenario {
    pub name: String,
    pub scenario: Scenario,
    pub crit_tn: Option<f64>,
    pub crit_sn: Option<f64>,
    pub dists_display: Vec<String>,
    pub order_display: String,
}

pub fn load_scenarios(path: &Path) -> CliResult<Vec<LoadedScenario>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let file: ScenarioFile =
        toml::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    if file.scenario.is_empty() {
        return Err(CliError::Input(format!(
            "{}: no [[scenario]] entries",
            path.display()
        )));
    }

    let mut loaded = Vec::with_capacity(file.scenario.len());
    for (i, sc) in file.scenario.into_iter().enumerate() {
        let name = sc
            .name
            .clone()
            .unwrap_or_else(|| format!("scenario-{}", i + 1));
        let fail = |msg: String| CliError::Input(format!("scenario '{name}': {msg}"));

        if sc.k != sc.dists.len() {
            return Err(fail(format!(
                "k={} but {} distributions",
                sc.k,
                sc.dists.len()
            )));
        }
        let dists: Vec<DistSpec> = sc
            .dists
            .iter()
            .map(|d| d.parse::<DistSpec>().map_err(|e| fail(e.to_string())))
            .collect::<CliResult<_>>()?;
        let order = orders::parse_order(&sc.order, sc.k, &orders::resolve_by_position(sc.k))
            .map_err(|e| fail(e.to_string()))?;
        let mut tests = TestSelection {
            tn: false,
            sn: false,
        };
        for t in &sc.tests {
            match t.to_ascii_lowercase().as_str() {
                "tn" => tests.tn = true,
                "sn" => tests.sn = true,
                other => return Err(fail(format!("unknown test '{other}' (expected tn or sn)"))),
            }
        }
        let order_display = orders::order_display(&order, &|i| (i + 1).to_string());
        let dists_display: Vec<String> = dists.iter().map(|d| d.to_string()).collect();
        let scenario = Scenario::new(
            sc.n.clone(),
            dists,
            sc.reps,
            sc.alpha,
            order,
            tests,
            sc.seed,
        )
        .map_err(|e| fail(e.to_string()))?;
        loaded.push(LoadedScenario {
            name,
            scenario,
            crit_tn: sc.crit_tn,
            crit_sn: sc.crit_sn,
            dists_display,
            order_display,
        });
    }
    Ok(loaded)
}
