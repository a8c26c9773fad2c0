//! CSV ingestion: `group,value` for k-sample data, `value` for one-sample.

use std::path::Path;

use elso::{GroupedSamples, Sample};

use crate::errors::{CliError, CliResult};

/// Raw groups in first-occurrence order, values unsorted.
pub struct RawGroups {
    pub labels: Vec<String>,
    pub values: Vec<Vec<f64>>,
}

fn open_reader(path: &Path) -> CliResult<csv::Reader<std::fs::File>> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

/// Reads a two-column `group,value` CSV, reporting the 1-based line number
/// of any unparseable row.
pub fn read_k_sample_csv(path: &Path) -> CliResult<RawGroups> {
    let mut reader = open_reader(path)?;
    let headers = reader
        .headers()
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
        .clone();
    if headers.len() != 2 || &headers[0] != "group" || &headers[1] != "value" {
        return Err(CliError::Input(format!(
            "{}: expected header 'group,value', got '{}'",
            path.display(),
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }

    let mut labels: Vec<String> = Vec::new();
    let mut values: Vec<Vec<f64>> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        if record.len() != 2 {
            return Err(CliError::Input(format!(
                "{}: line {line}: expected 2 fields, got {}",
                path.display(),
                record.len()
            )));
        }
        let label = record[0].to_string();
        let value: f64 = record[1].parse().map_err(|_| {
            CliError::Input(format!(
                "{}: line {line}: cannot parse '{}' as a number",
                path.display(),
                &record[1]
            ))
        })?;
        if !value.is_finite() {
            return Err(CliError::Input(format!(
                "{}: line {line}: non-finite value {value}",
                path.display()
            )));
        }
        match labels.iter().position(|l| *l == label) {
            Some(idx) => values[idx].push(value),
            None => {
                labels.push(label);
                values.push(vec![value]);
            }
        }
    }
    if labels.is_empty() {
        return Err(CliError::Input(format!("{}: no data rows", path.display())));
    }
    Ok(RawGroups { labels, values })
}

/// Applies the hypothesis order. `requested` reorders (and may subset) the
/// groups; unknown labels are input errors. Without it the first-occurrence
/// order stands and the caller should print a notice.
pub fn select_groups(
    raw: RawGroups,
    requested: Option<&[String]>,
) -> CliResult<(GroupedSamples, Vec<String>, bool)> {
    let (ordered_labels, defaulted): (Vec<String>, bool) = match requested {
        Some(req) => {
            for label in req {
                if !raw.labels.contains(label) {
                    return Err(CliError::Input(format!(
                        "unknown group '{label}' in --groups; file has: {}",
                        raw.labels.join(", ")
                    )));
                }
            }
            (req.to_vec(), false)
        }
        None => (raw.labels.clone(), true),
    };
    if ordered_labels.len() < 2 {
        return Err(CliError::Input(format!(
            "need at least 2 groups, found {}",
            ordered_labels.len()
        )));
    }

    let mut groups = Vec::with_capacity(ordered_labels.len());
    for label in &ordered_labels {
        let idx = raw.labels.iter().position(|l| l == label).unwrap();
        groups.push(Sample::new(label.clone(), raw.values[idx].clone())?);
    }
    let data = GroupedSamples::new(groups)?;
    Ok((data, ordered_labels, defaulted))
}

/// Reads a single-column `value` CSV.
pub fn read_one_sample_csv(path: &Path) -> CliResult<Sample> {
    let mut reader = open_reader(path)?;
    let headers = reader
        .headers()
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
        .clone();
    if headers.len() != 1 || &headers[0] != "value" {
        return Err(CliError::Input(format!(
            "{}: expected header 'value', got '{}'",
            path.display(),
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut values = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        let value: f64 = record[0].parse().map_err(|_| {
            CliError::Input(format!(
                "{}: line {line}: cannot parse '{}' as a number",
                path.display(),
                &record[0]
            ))
        })?;
        values.push(value);
    }
    if values.is_empty() {
        return Err(CliError::Input(format!("{}: no data rows", path.display())));
    }
    Ok(Sample::new("sample", values)?)
}
