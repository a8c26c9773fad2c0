//! Null-distribution caching in the plain-text format, keyed by
//! (method, k, weights rounded to 1e-9, reps, grid, seed).

use std::fs;
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};

use elso::NullDistribution;

use crate::errors::{CliError, CliResult};

pub fn cache_file_name(
    method: &str,
    k: usize,
    weights: &[f64],
    reps: usize,
    grid: usize,
    seed: u64,
) -> String {
    let w: Vec<String> = weights.iter().map(|w| format!("{w:.9}")).collect();
    format!(
        "nd_{method}_k{k}_w{}_r{reps}_g{grid}_s{seed}.txt",
        w.join("-")
    )
}

/// Loads the distribution from the cache or simulates and stores it.
/// Returns the distribution and whether it came from the cache.
pub fn load_or_simulate(
    cache_dir: Option<&Path>,
    file_name: &str,
    simulate: impl FnOnce() -> CliResult<NullDistribution>,
) -> CliResult<(NullDistribution, bool)> {
    let path: Option<PathBuf> = cache_dir.map(|d| d.join(file_name));
    if let Some(path) = &path {
        if path.exists() {
            let file = fs::File::open(path).map_err(|e| {
                CliError::Input(format!("cannot open cache {}: {e}", path.display()))
            })?;
            let nd = NullDistribution::read_from(BufReader::new(file)).map_err(|e| {
                CliError::Input(format!("corrupt cache file {}: {e}", path.display()))
            })?;
            return Ok((nd, true));
        }
    }
    let nd = simulate()?;
    if let Some(path) = &path {
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)
                .map_err(|e| CliError::Input(format!("cannot create cache dir: {e}")))?;
        }
        let file = fs::File::create(path)
            .map_err(|e| CliError::Input(format!("cannot write cache {}: {e}", path.display())))?;
        nd.write_to(BufWriter::new(file))
            .map_err(|e| CliError::Input(format!("cannot write cache {}: {e}", path.display())))?;
    }
    Ok((nd, false))
}
