//! Sample containers, empirical distribution functions and the pooled grid
//! shared by all statistics.

use crate::error::{invalid, Result};

/// One group of observations, stored sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    values: Vec<f64>,
    label: String,
}

impl Sample {
    /// Builds a sample from raw observations. Rejects empty input and any
    /// non-finite value; the values are sorted on construction.
    pub fn new(label: impl Into<String>, mut values: Vec<f64>) -> Result<Self> {
        let label = label.into();
        if values.is_empty() {
            return Err(invalid(format!("sample '{label}' has no observations")));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(invalid(format!(
                "sample '{label}' contains non-finite value {bad}"
            )));
        }
        values.sort_unstable_by(f64::total_cmp);
        Ok(Self { values, label })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Observations, sorted ascending.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Right-continuous empirical cdf: `#{X_i <= x} / n`.
    pub fn ecdf(&self, x: f64) -> f64 {
        self.values.partition_point(|v| *v <= x) as f64 / self.values.len() as f64
    }

    /// Left limit of the empirical cdf at `x`: `#{X_i < x} / n`.
    pub fn ecdf_left(&self, x: f64) -> f64 {
        self.values.partition_point(|v| *v < x) as f64 / self.values.len() as f64
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        *self.values.last().unwrap()
    }
}

/// `k >= 2` ordered groups; the index order is the hypothesized ordering.
#[derive(Debug, Clone)]
pub struct GroupedSamples {
    groups: Vec<Sample>,
    sizes: Vec<usize>,
    weights: Vec<f64>,
    total: usize,
}

impl GroupedSamples {
    pub fn new(groups: Vec<Sample>) -> Result<Self> {
        if groups.len() < 2 {
            return Err(invalid(format!(
                "need at least 2 groups, got {}",
                groups.len()
            )));
        }
        let sizes: Vec<usize> = groups.iter().map(Sample::len).collect();
        let total: usize = sizes.iter().sum();
        let weights: Vec<f64> = sizes.iter().map(|&n| n as f64 / total as f64).collect();
        Ok(Self {
            groups,
            sizes,
            weights,
            total,
        })
    }

    /// Number of groups.
    pub fn k(&self) -> usize {
        self.groups.len()
    }

    /// Total number of pooled observations.
    pub fn total_len(&self) -> usize {
        self.total
    }

    pub fn groups(&self) -> &[Sample] {
        &self.groups
    }

    /// Per-group sizes `n_j`.
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Sampling proportions `w_j = n_j / n`.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// Distinct pooled observation points with multiplicities, the per-group
/// empirical cdfs and the pooled empirical cdf evaluated at every point.
#[derive(Debug, Clone)]
pub struct PooledGrid {
    points: Vec<f64>,
    multiplicities: Vec<usize>,
    /// `group_ecdf[j][i]` = ecdf of group j at `points[i]`.
    group_ecdf: Vec<Vec<f64>>,
    pooled_ecdf: Vec<f64>,
    tie_count: usize,
}

impl PooledGrid {
    /// Merges the (already sorted) groups into the pooled grid. Ties across
    /// groups are merged into a single point; exact floating-point equality
    /// defines a tie.
    pub fn from_groups(data: &GroupedSamples) -> Self {
        let k = data.k();
        let n = data.total_len() as f64;
        let mut idx = vec![0usize; k];
        let mut counts = vec![0usize; k];
        let mut pooled_count = 0usize;

        let mut points = Vec::new();
        let mut multiplicities = Vec::new();
        let mut group_ecdf: Vec<Vec<f64>> = vec![Vec::new(); k];
        let mut pooled_ecdf = Vec::new();

        loop {
            let mut cur = f64::INFINITY;
            let mut found = false;
            for (j, g) in data.groups().iter().enumerate() {
                if idx[j] < g.len() {
                    let v = g.values()[idx[j]];
                    if !found || v < cur {
                        cur = v;
                        found = true;
                    }
                }
            }
            if !found {
                break;
            }
            let mut mult = 0usize;
            for (j, g) in data.groups().iter().enumerate() {
                let vals = g.values();
                while idx[j] < vals.len() && vals[idx[j]] == cur {
                    idx[j] += 1;
                    counts[j] += 1;
                    mult += 1;
                }
            }
            pooled_count += mult;
            points.push(cur);
            multiplicities.push(mult);
            for j in 0..k {
                group_ecdf[j].push(counts[j] as f64 / data.sizes()[j] as f64);
            }
            pooled_ecdf.push(pooled_count as f64 / n);
        }

        let tie_count = multiplicities.iter().filter(|&&m| m > 1).count();
        Self {
            points,
            multiplicities,
            group_ecdf,
            pooled_ecdf,
            tie_count,
        }
    }

    /// Number of distinct pooled points.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    /// Empirical cdf of group `j` along the grid.
    pub fn group_ecdf(&self, j: usize) -> &[f64] {
        &self.group_ecdf[j]
    }

    /// Pooled empirical cdf along the grid.
    pub fn pooled_ecdf(&self) -> &[f64] {
        &self.pooled_ecdf
    }

    /// Number of pooled points shared by more than one observation; a
    /// nonzero count on data assumed continuous deserves a warning.
    pub fn tie_count(&self) -> usize {
        self.tie_count
    }

    /// Copies the per-group ecdf vector at grid point `i` into `out`.
    pub fn phat_at(&self, i: usize, out: &mut Vec<f64>) {
        out.clear();
        out.extend(self.group_ecdf.iter().map(|col| col[i]));
    }
}
