//! The sequential one-sided two-sample Kolmogorov-Smirnov benchmark test:
//! stage j compares consecutive groups j and j+1, and the statistic is the
//! maximum over stages. Critical values come from the closed-form
//! asymptotic distribution.

use crate::data::GroupedSamples;
use crate::error::{domain, invalid, Result};

/// Stage statistics and their maximum.
#[derive(Debug, Clone)]
pub struct SnResult {
    /// `max_j D_j`.
    pub statistic: f64,
    /// `D_j` for stages j = 1..k-1.
    pub per_stage: Vec<f64>,
}

/// One-sided two-sample KS statistic of `next` against `base`:
/// `sup_x (F̂_next(x) - F̂_base(x))`, evaluated over the union grid.
fn one_sided_sup(base: &[f64], next: &[f64]) -> f64 {
    let na = base.len() as f64;
    let nb = next.len() as f64;
    let mut i = 0usize;
    let mut j = 0usize;
    let mut sup = f64::NEG_INFINITY;
    while i < base.len() || j < next.len() {
        let x = match (base.get(i), next.get(j)) {
            (Some(&a), Some(&b)) => a.min(b),
            (Some(&a), None) => a,
            (None, Some(&b)) => b,
            (None, None) => unreachable!(),
        };
        while i < base.len() && base[i] == x {
            i += 1;
        }
        while j < next.len() && next[j] == x {
            j += 1;
        }
        sup = sup.max(j as f64 / nb - i as f64 / na);
    }
    // Both ecdfs reach 1 at the last union point, so the sup is >= 0.
    sup
}

/// The sequential statistic: stage j compares consecutive groups with
/// `D_j = sqrt(n_j n_{j+1} / (n_j + n_{j+1})) * sup_x (F̂_{j+1}(x) - F̂_j(x))`
/// and `S_n = max_j D_j`. Positive deviations are evidence that group j+1
/// is stochastically smaller than group j, the alternative direction.
pub fn sn_statistic(data: &GroupedSamples) -> SnResult {
    let k = data.k();
    let mut per_stage = Vec::with_capacity(k - 1);
    for pair in data.groups().windows(2) {
        let base = pair[0].values();
        let next = pair[1].values();
        let (m, n2) = (base.len() as f64, next.len() as f64);
        let scale = (m * n2 / (m + n2)).sqrt();
        per_stage.push(scale * one_sided_sup(base, next));
    }
    let statistic = per_stage.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    SnResult {
        statistic,
        per_stage,
    }
}

/// Closed-form asymptotic critical value: the solution of
/// `(1 - exp(-2 s^2))^(k-1) = 1 - alpha`, combining the stages as if
/// independent with the one-sided KS limit `P(sup B <= s) = 1 - exp(-2 s^2)`.
pub fn sn_critical(alpha: f64, k: usize) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(domain(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    if k < 2 {
        return Err(invalid(format!("k must be at least 2, got {k}")));
    }
    let tail = 1.0 - (1.0 - alpha).powf(1.0 / (k - 1) as f64);
    Ok((-tail.ln() / 2.0).sqrt())
}

/// Asymptotic p-value `1 - (1 - exp(-2 s^2))^(k-1)` of an observed
/// statistic, clamped away from exact zero so it stays in (0, 1].
pub fn sn_p_value(statistic: f64, k: usize) -> Result<f64> {
    if k < 2 {
        return Err(invalid(format!("k must be at least 2, got {k}")));
    }
    if statistic <= 0.0 {
        return Ok(1.0);
    }
    let log_stage_cdf = (-(-2.0 * statistic * statistic).exp()).ln_1p();
    let p = -((k - 1) as f64 * log_stage_cdf).exp_m1();
    Ok(p.max(1e-300))
}
