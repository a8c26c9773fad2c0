//! Weighted least-squares projection onto the isotonic cone of a
//! quasi-order: pool-adjacent-violators for the simple order, the
//! minimum-lower-sets algorithm for everything else.
//!
//! Constraints are written on the projected vector: a pair `(i, j)` means
//! `z[i] <= z[j]`. For ordered cdf values this encodes "group i is
//! stochastically larger than group j".

use crate::error::{invalid, Result};

/// Tolerance used when asserting cone feasibility of fitted vectors.
pub const FEASIBILITY_TOL: f64 = 1e-12;

/// Named shapes for the constraint set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    /// `z_1 <= z_2 <= ... <= z_k`.
    Simple,
    /// `z_root <= z_i` for all `i != root`.
    Tree { root: usize },
    /// `z_1 <= ... <= z_peak` and `z_peak >= ... >= z_k`.
    Umbrella { peak: usize },
    /// Arbitrary list of pairwise constraints.
    General,
}

/// A quasi-order on `{0, .., k-1}` together with its reflexive-transitive
/// closure. Immutable once built.
#[derive(Debug, Clone)]
pub struct OrderSpec {
    k: usize,
    kind: OrderKind,
    pairs: Vec<(usize, usize)>,
    /// Row-major k*k closure: `leq[i*k + j]` iff `z_i <= z_j` is implied.
    leq: Vec<bool>,
}

impl OrderSpec {
    /// The chain `z_1 <= ... <= z_k`.
    pub fn simple(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(invalid("order dimension must be at least 1"));
        }
        let pairs = (1..k).map(|i| (i - 1, i)).collect();
        Ok(Self::build(k, OrderKind::Simple, pairs))
    }

    /// Tree ordering with the root component below every other component.
    pub fn tree(k: usize, root: usize) -> Result<Self> {
        if k == 0 {
            return Err(invalid("order dimension must be at least 1"));
        }
        if root >= k {
            return Err(invalid(format!("tree root {root} out of range for k={k}")));
        }
        let pairs = (0..k).filter(|&i| i != root).map(|i| (root, i)).collect();
        Ok(Self::build(k, OrderKind::Tree { root }, pairs))
    }

    /// Umbrella ordering rising to `peak` and falling after it.
    pub fn umbrella(k: usize, peak: usize) -> Result<Self> {
        if k == 0 {
            return Err(invalid("order dimension must be at least 1"));
        }
        if peak >= k {
            return Err(invalid(format!(
                "umbrella peak {peak} out of range for k={k}"
            )));
        }
        let mut pairs = Vec::with_capacity(k.saturating_sub(1));
        for i in 0..peak {
            pairs.push((i, i + 1));
        }
        for i in peak..k.saturating_sub(1) {
            pairs.push((i + 1, i));
        }
        Ok(Self::build(k, OrderKind::Umbrella { peak }, pairs))
    }

    /// Quasi-order generated by explicit `(i, j)` pairs meaning `z_i <= z_j`.
    pub fn general(k: usize, pairs: Vec<(usize, usize)>) -> Result<Self> {
        if k == 0 {
            return Err(invalid("order dimension must be at least 1"));
        }
        for &(i, j) in &pairs {
            if i >= k || j >= k {
                return Err(invalid(format!(
                    "constraint ({i}, {j}) out of range for k={k}"
                )));
            }
        }
        Ok(Self::build(k, OrderKind::General, pairs))
    }

    fn build(k: usize, kind: OrderKind, pairs: Vec<(usize, usize)>) -> Self {
        let mut leq = vec![false; k * k];
        for i in 0..k {
            leq[i * k + i] = true;
        }
        for &(i, j) in &pairs {
            leq[i * k + j] = true;
        }
        // Floyd-Warshall; k is small everywhere this crate is used.
        for m in 0..k {
            for i in 0..k {
                if leq[i * k + m] {
                    for j in 0..k {
                        if leq[m * k + j] {
                            leq[i * k + j] = true;
                        }
                    }
                }
            }
        }
        Self {
            k,
            kind,
            pairs,
            leq,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    /// The generating constraint pairs (not the closure).
    pub fn constraint_pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Whether `z_i <= z_j` is implied by the order (reflexive-transitive).
    pub fn implies_leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.k + j]
    }

    /// Whether `z` satisfies every generating constraint up to `tol`.
    pub fn is_feasible(&self, z: &[f64], tol: f64) -> bool {
        self.pairs.iter().all(|&(i, j)| z[i] <= z[j] + tol)
    }
}

/// Result of a cone projection: fitted values plus the level sets that
/// share a common fitted value, in the order the algorithm produced them.
#[derive(Debug, Clone)]
pub struct Projection {
    pub fitted: Vec<f64>,
    pub blocks: Vec<Vec<usize>>,
}

fn check_inputs(values: &[f64], weights: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(invalid("projection input must be nonempty"));
    }
    if values.len() != weights.len() {
        return Err(invalid(format!(
            "values ({}) and weights ({}) differ in length",
            values.len(),
            weights.len()
        )));
    }
    if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
        return Err(invalid(format!(
            "non-finite value {bad} in projection input"
        )));
    }
    if let Some(bad) = weights.iter().find(|w| **w <= 0.0 || !w.is_finite()) {
        return Err(invalid(format!(
            "weights must be positive and finite, got {bad}"
        )));
    }
    Ok(())
}

/// Pool-adjacent-violators: the unique minimizer of
/// `sum_j w_j (z_j - values_j)^2` subject to `z_1 <= ... <= z_k`.
///
/// Adjacent blocks merge only on strict violation (left block mean greater
/// than right block mean); blocks with equal means stay separate.
pub fn pava(values: &[f64], weights: &[f64]) -> Result<Projection> {
    check_inputs(values, weights)?;
    let mut means = Vec::new();
    let mut wsum = Vec::new();
    let mut ends = Vec::new();
    pava_fit(values, weights, &mut means, &mut wsum, &mut ends);

    let mut fitted = Vec::with_capacity(values.len());
    expand_blocks(&means, &ends, &mut fitted);
    let mut blocks = Vec::with_capacity(means.len());
    let mut start = 0usize;
    for &end in &ends {
        blocks.push((start..end).collect());
        start = end;
    }
    Ok(Projection { fitted, blocks })
}

/// Stack-based PAVA pass over `values`. On return, `means[b]` is the fitted
/// value of block `b` and `ends[b]` its exclusive end index.
pub(crate) fn pava_fit(
    values: &[f64],
    weights: &[f64],
    means: &mut Vec<f64>,
    wsum: &mut Vec<f64>,
    ends: &mut Vec<usize>,
) {
    means.clear();
    wsum.clear();
    ends.clear();
    for i in 0..values.len() {
        means.push(values[i]);
        wsum.push(weights[i]);
        ends.push(i + 1);
        while means.len() > 1 && means[means.len() - 2] > means[means.len() - 1] {
            let (m2, w2) = (means.pop().unwrap(), wsum.pop().unwrap());
            let e2 = ends.pop().unwrap();
            let last = means.len() - 1;
            let w1 = wsum[last];
            means[last] = (w1 * means[last] + w2 * m2) / (w1 + w2);
            wsum[last] = w1 + w2;
            ends[last] = e2;
        }
    }
}

pub(crate) fn expand_blocks(means: &[f64], ends: &[usize], fitted: &mut Vec<f64>) {
    fitted.clear();
    let mut start = 0usize;
    for (b, &end) in ends.iter().enumerate() {
        for _ in start..end {
            fitted.push(means[b]);
        }
        start = end;
    }
}

/// Projection onto the isotonic cone of an arbitrary quasi-order.
/// Delegates to [`pava`] for the simple order; otherwise runs the
/// minimum-lower-sets algorithm on the (small) index set.
pub fn project_cone(values: &[f64], weights: &[f64], order: &OrderSpec) -> Result<Projection> {
    check_inputs(values, weights)?;
    if order.k() != values.len() {
        return Err(invalid(format!(
            "order dimension {} does not match input length {}",
            order.k(),
            values.len()
        )));
    }
    match order.kind() {
        OrderKind::Simple => pava(values, weights),
        _ => lower_sets(values, weights, order),
    }
}

/// Minimum-lower-sets: repeatedly extract the largest lower set of the
/// remaining suborder with the smallest weighted average; that lower set is
/// the next level set, fitted at its average. Averages are nondecreasing
/// over extractions, which makes the result feasible.
fn lower_sets(values: &[f64], weights: &[f64], order: &OrderSpec) -> Result<Projection> {
    let k = values.len();
    if k > 20 {
        return Err(invalid(format!(
            "general cone projection enumerates lower sets and supports k <= 20, got {k}"
        )));
    }
    let mut remaining: Vec<usize> = (0..k).collect();
    let mut fitted = vec![0.0; k];
    let mut blocks = Vec::new();

    while !remaining.is_empty() {
        let r = remaining.len();
        let mut best_avg = f64::INFINITY;
        let mut best_mask: u32 = 0;
        let mut best_size = 0usize;
        for mask in 1u32..(1u32 << r) {
            if !is_lower_subset(mask, &remaining, order) {
                continue;
            }
            let mut num = 0.0;
            let mut den = 0.0;
            for (pos, &i) in remaining.iter().enumerate() {
                if mask & (1 << pos) != 0 {
                    num += weights[i] * values[i];
                    den += weights[i];
                }
            }
            let avg = num / den;
            let size = mask.count_ones() as usize;
            if avg < best_avg || (avg == best_avg && size > best_size) {
                best_avg = avg;
                best_mask = mask;
                best_size = size;
            }
        }
        let mut block = Vec::with_capacity(best_size);
        for (pos, &i) in remaining.iter().enumerate() {
            if best_mask & (1 << pos) != 0 {
                fitted[i] = best_avg;
                block.push(i);
            }
        }
        remaining = remaining
            .iter()
            .enumerate()
            .filter(|(pos, _)| best_mask & (1 << pos) == 0)
            .map(|(_, &i)| i)
            .collect();
        blocks.push(block);
    }

    Ok(Projection { fitted, blocks })
}

/// A subset (as a bitmask over `remaining`) is a lower set of the induced
/// suborder iff no member has a predecessor outside the subset.
fn is_lower_subset(mask: u32, remaining: &[usize], order: &OrderSpec) -> bool {
    for (bpos, &b) in remaining.iter().enumerate() {
        if mask & (1 << bpos) == 0 {
            continue;
        }
        for (apos, &a) in remaining.iter().enumerate() {
            if mask & (1 << apos) == 0 && order.implies_leq(a, b) {
                return false;
            }
        }
    }
    true
}
