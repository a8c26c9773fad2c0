//! The empirical-likelihood statistics: local -2 log R(x) in the one- and
//! k-sample settings and the integrated statistics T_n.
//!
//! Every formula follows the zero-power convention: a log-ratio term whose
//! coefficient is zero contributes nothing, so the statistics are NaN-free
//! on the closed parameter ranges.

use crate::data::{GroupedSamples, PooledGrid, Sample};
use crate::dist::DistSpec;
use crate::error::{domain, invalid, Result};
use crate::isotone::{self, OrderKind, OrderSpec};

/// How group distribution functions are evaluated at the pooled points of
/// the k-sample statistic.
///
/// The two conventions share the same limit distribution but differ at
/// order 1/n near the sample extremes, which is visible in tabulated
/// critical values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EcdfConvention {
    /// Empirical cdf `a_j / n_j`, the literal definition of the statistic.
    #[default]
    Raw,
    /// Rank scores `a_j / (n_j + 1)`: the expected cdf values of the order
    /// statistics. Keeps every likelihood factor away from the boundary
    /// and reproduces the classical critical-value tables.
    RankScore,
}

/// Local one-sample statistic -2 log R(x) at a point where the empirical
/// cdf equals `phat` and the hypothesized cdf equals `f0`.
///
/// Zero when `phat > f0` (the constrained and unconstrained maxima agree);
/// otherwise `2n [phat ln(phat/f0) + (1-phat) ln((1-phat)/(1-f0))]`.
pub fn local_neg2log_r_one(phat: f64, f0: f64, n: usize) -> Result<f64> {
    if !(f0 > 0.0 && f0 < 1.0) {
        return Err(domain(format!(
            "f0 must lie strictly inside (0, 1), got {f0}"
        )));
    }
    if !(0.0..=1.0).contains(&phat) {
        return Err(invalid(format!("phat must lie in [0, 1], got {phat}")));
    }
    Ok(local_one_raw(phat, f0, n as f64))
}

fn local_one_raw(phat: f64, f0: f64, n: f64) -> f64 {
    if phat > f0 {
        return 0.0;
    }
    let mut s = 0.0;
    if phat > 0.0 {
        s += phat * (phat / f0).ln();
    }
    if phat < 1.0 {
        s += (1.0 - phat) * ((1.0 - phat) / (1.0 - f0)).ln();
    }
    // The sum is a KL divergence scaled by 2n; clamp rounding residue.
    (2.0 * n * s).max(0.0)
}

/// Integral-type one-sample statistic `T_n = -2 ∫ log R(x) dF0(x)`,
/// integrated exactly over `[X_(1), X_(n)]`.
///
/// In the variable `u = F0(x)` the empirical cdf is the constant `p = i/n`
/// between consecutive order statistics, and over `u in [l, r] ∩ [p, 1]`
/// the integrand has antiderivative
/// `2n [(p ln p + (1-p) ln(1-p)) u - p A(u) - (1-p) C(u)]` with
/// `A(u) = u ln u - u` and `C(u) = -(1-u) ln(1-u) - u`.
pub fn one_sample_tn(sample: &Sample, f0: &DistSpec) -> Result<f64> {
    Ok(one_sample_tn_cdf(sample, |x| f0.cdf(x)))
}

/// Same statistic against a caller-supplied cdf evaluator, which must be
/// continuous and strictly increasing wherever it is strictly between 0
/// and 1.
pub fn one_sample_tn_cdf<F: Fn(f64) -> f64>(sample: &Sample, cdf: F) -> f64 {
    let values = sample.values();
    let n = values.len();
    if n < 2 {
        // The integration interval degenerates to a point.
        return 0.0;
    }
    let nf = n as f64;
    let u: Vec<f64> = values.iter().map(|&x| cdf(x).clamp(0.0, 1.0)).collect();

    let mut total = 0.0;
    for i in 1..n {
        let p = i as f64 / nf;
        // The indicator restricts each segment to u >= p.
        let lo = u[i - 1].max(p);
        let hi = u[i];
        if hi > lo {
            total += seg_antiderivative(p, hi, nf) - seg_antiderivative(p, lo, nf);
        }
    }
    total.max(0.0)
}

fn seg_antiderivative(p: f64, u: f64, n: f64) -> f64 {
    let c = p * p.ln() + (1.0 - p) * (1.0 - p).ln();
    2.0 * n * (c * u - p * int_ln(u) - (1.0 - p) * int_ln1m(u))
}

/// Antiderivative of ln u, continuously extended to u = 0.
fn int_ln(u: f64) -> f64 {
    if u > 0.0 {
        u * u.ln() - u
    } else {
        0.0
    }
}

/// Antiderivative of ln(1-u), continuously extended to u = 1.
fn int_ln1m(u: f64) -> f64 {
    if u < 1.0 {
        -(1.0 - u) * (1.0 - u).ln() - u
    } else {
        -1.0
    }
}

/// Which value of the empirical cdf is used at its own jump points when
/// integrating with respect to it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum JumpConvention {
    /// `F̂(X_(i)) = i/n`.
    #[default]
    RightContinuous,
    /// `F̂(X_(i)-) = (i-1)/n`.
    LeftLimit,
}

/// The dF̂-integrated alternative `T_n* = -2 ∫ log R(x) dF̂(x)`, evaluated
/// with the right-continuous ecdf at jump points.
pub fn one_sample_tn_star(sample: &Sample, f0: &DistSpec) -> Result<f64> {
    one_sample_tn_star_with(sample, f0, JumpConvention::RightContinuous)
}

/// `T_n*` with an explicit jump convention. Data points whose F0 value is
/// 0 or 1 contribute nothing, consistent with the zero-power convention.
pub fn one_sample_tn_star_with(
    sample: &Sample,
    f0: &DistSpec,
    convention: JumpConvention,
) -> Result<f64> {
    let values = sample.values();
    let nf = values.len() as f64;
    let mut total = 0.0;
    for &x in values {
        let u = f0.cdf(x).clamp(0.0, 1.0);
        if u <= 0.0 || u >= 1.0 {
            continue;
        }
        let phat = match convention {
            JumpConvention::RightContinuous => sample.ecdf(x),
            JumpConvention::LeftLimit => sample.ecdf_left(x),
        };
        total += local_one_raw(phat, u, nf);
    }
    Ok(total / nf)
}

/// Scratch buffers reused across grid points when evaluating the k-sample
/// statistic.
pub(crate) struct ConeScratch {
    fitted: Vec<f64>,
    means: Vec<f64>,
    wsum: Vec<f64>,
    ends: Vec<usize>,
}

impl ConeScratch {
    pub(crate) fn new(k: usize) -> Self {
        Self {
            fitted: Vec::with_capacity(k),
            means: Vec::with_capacity(k),
            wsum: Vec::with_capacity(k),
            ends: Vec::with_capacity(k),
        }
    }
}

/// Local k-sample statistic at one point: with pooled value
/// `F̂ = Σ w_j φ̂_j` and the cone projection `F̃ = E_w(φ̂ | I)`, returns
/// `2 Σ_j n_j [ φ̂_j ln(F̃_j/F̂) + (1-φ̂_j) ln((1-F̃_j)/(1-F̂)) ]`,
/// skipping coefficient-zero terms and returning 0 when `F̂` is 0 or 1.
pub fn local_neg2log_r_k(
    phat: &[f64],
    weights: &[f64],
    sizes: &[usize],
    order: &OrderSpec,
) -> Result<f64> {
    let k = phat.len();
    if weights.len() != k || sizes.len() != k || order.k() != k {
        return Err(invalid(format!(
            "inconsistent dimensions: phat={k}, weights={}, sizes={}, order={}",
            weights.len(),
            sizes.len(),
            order.k()
        )));
    }
    if let Some(bad) = phat.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(invalid(format!(
            "ecdf values must lie in [0, 1], got {bad}"
        )));
    }
    if weights.iter().any(|w| *w <= 0.0 || !w.is_finite()) {
        return Err(invalid("weights must be positive"));
    }
    let sizes_f: Vec<f64> = sizes.iter().map(|&n| n as f64).collect();
    let mut scratch = ConeScratch::new(k);
    local_k_raw(phat, weights, &sizes_f, order, &mut scratch)
}

fn local_k_raw(
    phat: &[f64],
    weights: &[f64],
    sizes_f: &[f64],
    order: &OrderSpec,
    scratch: &mut ConeScratch,
) -> Result<f64> {
    let pooled: f64 = phat.iter().zip(weights).map(|(p, w)| p * w).sum();
    if pooled <= 0.0 || pooled >= 1.0 {
        return Ok(0.0);
    }

    match order.kind() {
        OrderKind::Simple => {
            isotone::pava_fit(
                phat,
                weights,
                &mut scratch.means,
                &mut scratch.wsum,
                &mut scratch.ends,
            );
            isotone::expand_blocks(&scratch.means, &scratch.ends, &mut scratch.fitted);
        }
        _ => {
            let projection = isotone::project_cone(phat, weights, order)?;
            scratch.fitted.clear();
            scratch.fitted.extend_from_slice(&projection.fitted);
        }
    }

    let mut s = 0.0;
    for j in 0..phat.len() {
        let ph = phat[j];
        let ft = scratch.fitted[j];
        // ph > 0 forces ft > 0 and ph < 1 forces ft < 1: the fitted value is
        // a weighted mean of a block containing ph.
        if ph > 0.0 {
            s += sizes_f[j] * ph * (ft / pooled).ln();
        }
        if ph < 1.0 {
            s += sizes_f[j] * (1.0 - ph) * ((1.0 - ft) / (1.0 - pooled)).ln();
        }
    }
    Ok((2.0 * s).max(0.0))
}

/// The k-sample statistic `T_n = -2 ∫ log R(x) dF̂(x)`: the pooled ecdf
/// places mass `multiplicity/n` on each distinct pooled point, so the
/// integral is the multiplicity-weighted average of the local statistics.
pub fn k_sample_tn(data: &GroupedSamples, order: &OrderSpec) -> Result<f64> {
    k_sample_tn_with(data, order, EcdfConvention::Raw)
}

/// [`k_sample_tn`] with an explicit choice of ecdf convention for the
/// group distribution functions entering the local likelihood ratios.
/// The integrating measure (pooled ecdf jumps) is unaffected.
pub fn k_sample_tn_with(
    data: &GroupedSamples,
    order: &OrderSpec,
    convention: EcdfConvention,
) -> Result<f64> {
    if order.k() != data.k() {
        return Err(invalid(format!(
            "order dimension {} does not match number of groups {}",
            order.k(),
            data.k()
        )));
    }
    let grid = PooledGrid::from_groups(data);
    k_sample_tn_on_grid(&grid, data, order, convention)
}

pub(crate) fn k_sample_tn_on_grid(
    grid: &PooledGrid,
    data: &GroupedSamples,
    order: &OrderSpec,
    convention: EcdfConvention,
) -> Result<f64> {
    let k = data.k();
    let n = data.total_len() as f64;
    let sizes_f: Vec<f64> = data.sizes().iter().map(|&m| m as f64).collect();
    // a/n -> a/(n+1) is a per-group rescaling of the ecdf columns
    let scale: Vec<f64> = match convention {
        EcdfConvention::Raw => vec![1.0; k],
        EcdfConvention::RankScore => sizes_f.iter().map(|&nj| nj / (nj + 1.0)).collect(),
    };
    let mut scratch = ConeScratch::new(k);
    let mut phat = Vec::with_capacity(k);

    let mut total = 0.0;
    for i in 0..grid.len() {
        grid.phat_at(i, &mut phat);
        for (p, s) in phat.iter_mut().zip(&scale) {
            *p *= s;
        }
        let local = local_k_raw(&phat, data.weights(), &sizes_f, order, &mut scratch)?;
        total += grid.multiplicities()[i] as f64 / n * local;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use elso_testkit::adaptive_simpson;

    fn sample(vals: &[f64]) -> Sample {
        Sample::new("s", vals.to_vec()).unwrap()
    }

    fn grouped(gs: &[&[f64]]) -> GroupedSamples {
        let groups = gs
            .iter()
            .enumerate()
            .map(|(j, v)| Sample::new(format!("g{}", j + 1), v.to_vec()).unwrap())
            .collect();
        GroupedSamples::new(groups).unwrap()
    }

    #[test]
    fn local_one_zero_cases() {
        assert_eq!(local_neg2log_r_one(0.3, 0.3, 10).unwrap(), 0.0);
        assert_eq!(local_neg2log_r_one(0.7, 0.5, 20).unwrap(), 0.0);
    }

    #[test]
    fn local_one_matches_closed_form() {
        // Frozen via exact evaluation of 2n[p ln(p/f0) + (1-p) ln((1-p)/(1-f0))].
        let v = local_neg2log_r_one(0.25, 0.5, 4).unwrap();
        assert_abs_diff_eq!(v, 1.0464962875290957, epsilon = 1e-12);
    }

    #[test]
    fn local_one_matches_numeric_likelihood_maximization() {
        // Independent route: the numerator of the ratio pins phi = f0, the
        // denominator maximizes the binomial log likelihood over (0, f0],
        // here on a fine grid. -2 log R = 2n (max - loglik(f0)).
        let loglik = |phi: f64, phat: f64| phat * phi.ln() + (1.0 - phat) * (1.0 - phi).ln();
        for &(phat, f0, n) in &[(0.25, 0.5, 4usize), (0.1, 0.6, 7), (0.5, 0.9, 12)] {
            let mut best = f64::NEG_INFINITY;
            let steps = 4_000_000;
            for i in 1..=steps {
                let phi = f0 * i as f64 / steps as f64;
                best = best.max(loglik(phi, phat));
            }
            let oracle = 2.0 * n as f64 * (best - loglik(f0, phat));
            let v = local_neg2log_r_one(phat, f0, n).unwrap();
            assert_abs_diff_eq!(v, oracle, epsilon = 1e-5);
        }
    }

    #[test]
    fn local_one_rejects_degenerate_f0() {
        assert!(local_neg2log_r_one(0.5, 0.0, 5).is_err());
        assert!(local_neg2log_r_one(0.5, 1.0, 5).is_err());
    }

    #[test]
    fn local_one_boundary_phat() {
        // phat = 0: only the complementary term survives, -2n ln(1-f0).
        let v = local_neg2log_r_one(0.0, 0.4, 3).unwrap();
        assert_abs_diff_eq!(v, -6.0 * (0.6f64).ln(), epsilon = 1e-12);
        // phat = 1 always exceeds f0 < 1.
        assert_eq!(local_neg2log_r_one(1.0, 0.4, 3).unwrap(), 0.0);
    }

    #[test]
    fn one_sample_tn_single_observation_is_zero() {
        let f0 = DistSpec::uniform(0.0, 1.0).unwrap();
        assert_eq!(one_sample_tn(&sample(&[0.33]), &f0).unwrap(), 0.0);
    }

    #[test]
    fn one_sample_tn_frozen_example() {
        let f0 = DistSpec::uniform(0.0, 1.0).unwrap();
        let v = one_sample_tn(&sample(&[0.25, 0.75]), &f0).unwrap();
        assert_abs_diff_eq!(v, 0.04522874755778077, epsilon = 1e-12);
    }

    #[test]
    fn one_sample_tn_zero_when_ecdf_dominates() {
        // ecdf sits above the uniform cdf across [X_(1), X_(n)].
        let f0 = DistSpec::uniform(0.0, 1.0).unwrap();
        let v = one_sample_tn(&sample(&[0.05, 0.1, 0.2]), &f0).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn one_sample_tn_matches_quadrature() {
        // Numerical integration of the local statistic over each ecdf
        // segment, in the u = F0(x) variable.
        let quad_tn = |s: &Sample, f0: &DistSpec| {
            let n = s.len();
            let nf = n as f64;
            let u: Vec<f64> = s.values().iter().map(|&x| f0.cdf(x)).collect();
            let mut total = 0.0;
            for i in 1..n {
                let p = i as f64 / nf;
                let lo = u[i - 1].max(p);
                let hi = (u[i]).min(1.0 - 1e-13);
                if hi > lo {
                    total += adaptive_simpson(&|t| local_one_raw(p, t, nf), lo, hi, 1e-12);
                }
            }
            total
        };
        let cases: Vec<(Sample, DistSpec)> = vec![
            (sample(&[0.25, 0.75]), DistSpec::uniform(0.0, 1.0).unwrap()),
            (
                sample(&[0.9, 1.4, 2.2, 3.0]),
                DistSpec::exponential(0.8).unwrap(),
            ),
            (
                sample(&[-0.3, 0.2, 0.25, 1.4, 2.0]),
                DistSpec::normal(0.5, 2.0).unwrap(),
            ),
            (
                sample(&[0.15, 0.3, 0.7, 1.05]),
                DistSpec::uniform(0.0, 1.0).unwrap(),
            ),
        ];
        for (s, f0) in cases {
            let exact = one_sample_tn(&s, &f0).unwrap();
            let numeric = quad_tn(&s, &f0);
            assert_abs_diff_eq!(exact, numeric, epsilon = 1e-8);
        }
    }

    #[test]
    fn tn_star_zero_when_ecdf_dominates() {
        let f0 = DistSpec::uniform(0.0, 1.0).unwrap();
        let v = one_sample_tn_star(&sample(&[0.05, 0.1, 0.2]), &f0).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn tn_star_single_point() {
        // n = 1 with F0(m) = 0.5: phat = 1 > f0, the single term vanishes.
        let f0 = DistSpec::uniform(0.0, 1.0).unwrap();
        assert_eq!(one_sample_tn_star(&sample(&[0.5]), &f0).unwrap(), 0.0);
    }

    #[test]
    fn tn_star_frozen_example() {
        // phat exceeds F0 at both points, so both local terms vanish.
        let f0 = DistSpec::uniform(0.0, 1.0).unwrap();
        assert_eq!(
            one_sample_tn_star(&sample(&[0.25, 0.75]), &f0).unwrap(),
            0.0
        );
    }

    #[test]
    fn tn_star_left_limit_differs() {
        let f0 = DistSpec::uniform(0.0, 1.0).unwrap();
        let s = sample(&[0.4, 0.9]);
        let right = one_sample_tn_star(&s, &f0).unwrap();
        let left = one_sample_tn_star_with(&s, &f0, JumpConvention::LeftLimit).unwrap();
        // right-continuous: phat(0.4) = 0.5 > 0.4; left limits: phat = 0 < 0.4.
        assert_eq!(right, 0.0);
        assert!(left > 0.0);
    }

    #[test]
    fn local_k_zero_cases() {
        let order = OrderSpec::simple(2).unwrap();
        let v = local_neg2log_r_k(&[0.5, 0.5], &[0.5, 0.5], &[10, 10], &order).unwrap();
        assert_eq!(v, 0.0);
        // Antitonic pair pools to the pooled mean => every log ratio vanishes.
        let v = local_neg2log_r_k(&[0.6, 0.4], &[0.5, 0.5], &[10, 10], &order).unwrap();
        assert_abs_diff_eq!(v, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn local_k_frozen_example() {
        let order = OrderSpec::simple(2).unwrap();
        let v = local_neg2log_r_k(&[0.4, 0.6], &[0.5, 0.5], &[10, 10], &order).unwrap();
        assert_abs_diff_eq!(v, 0.805420542027555, epsilon = 1e-12);
    }

    #[test]
    fn local_k_degenerate_pooled_value() {
        let order = OrderSpec::simple(2).unwrap();
        assert_eq!(
            local_neg2log_r_k(&[0.0, 0.0], &[0.5, 0.5], &[5, 5], &order).unwrap(),
            0.0
        );
        assert_eq!(
            local_neg2log_r_k(&[1.0, 1.0], &[0.5, 0.5], &[5, 5], &order).unwrap(),
            0.0
        );
    }

    #[test]
    fn local_k_equals_twice_loglik_gap() {
        // -2 log R = 2 [l(F-tilde) - l(F-hat 1)] with the binomial log
        // likelihood l(z) = sum n_j [phat_j ln z_j + (1-phat_j) ln (1-z_j)].
        let order = OrderSpec::simple(3).unwrap();
        let loglik = |z: &[f64], phat: &[f64], sizes: &[f64]| -> f64 {
            z.iter()
                .zip(phat)
                .zip(sizes)
                .map(|((zi, pi), ni)| {
                    let mut t = 0.0;
                    if *pi > 0.0 {
                        t += ni * pi * zi.ln();
                    }
                    if *pi < 1.0 {
                        t += ni * (1.0 - pi) * (1.0 - zi).ln();
                    }
                    t
                })
                .sum()
        };
        let cases: Vec<(Vec<f64>, Vec<f64>, Vec<usize>)> = vec![
            (vec![0.2, 0.5, 0.4], vec![0.25, 0.5, 0.25], vec![10, 20, 10]),
            (
                vec![0.7, 0.2, 0.9],
                vec![1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0],
                vec![15, 15, 15],
            ),
            (vec![0.0, 0.4, 0.3], vec![0.5, 0.25, 0.25], vec![20, 10, 10]),
        ];
        for (phat, weights, sizes) in cases {
            let v = local_neg2log_r_k(&phat, &weights, &sizes, &order).unwrap();
            let sizes_f: Vec<f64> = sizes.iter().map(|&n| n as f64).collect();
            let proj = isotone::project_cone(&phat, &weights, &order).unwrap();
            let pooled: f64 = phat.iter().zip(&weights).map(|(p, w)| p * w).sum();
            let pooled_vec = vec![pooled; 3];
            let gap = 2.0
                * (loglik(&proj.fitted, &phat, &sizes_f) - loglik(&pooled_vec, &phat, &sizes_f));
            assert_abs_diff_eq!(v, gap, epsilon = 1e-10);
        }
    }

    #[test]
    fn k_sample_tn_identical_groups_is_zero() {
        let order = OrderSpec::simple(3).unwrap();
        let data = grouped(&[&[1.0, 2.0, 5.0], &[1.0, 2.0, 5.0], &[1.0, 2.0, 5.0]]);
        assert_eq!(k_sample_tn(&data, &order).unwrap(), 0.0);
    }

    #[test]
    fn k_sample_tn_antitonic_data_is_zero() {
        let order = OrderSpec::simple(2).unwrap();
        let data = grouped(&[&[1.0, 2.0], &[3.0, 4.0]]);
        assert_abs_diff_eq!(k_sample_tn(&data, &order).unwrap(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn k_sample_tn_frozen_example() {
        let order = OrderSpec::simple(2).unwrap();
        let data = grouped(&[&[3.0, 4.0], &[1.0, 2.0]]);
        let v = k_sample_tn(&data, &order).unwrap();
        assert_abs_diff_eq!(v, 2.2493405784752336, epsilon = 1e-12);
    }

    #[test]
    fn k_sample_tn_rank_score_frozen_example() {
        // Same toy data evaluated with phat_j = a_j/(n_j + 1); value frozen
        // from an independent exact evaluation of the four local terms.
        let order = OrderSpec::simple(2).unwrap();
        let data = grouped(&[&[3.0, 4.0], &[1.0, 2.0]]);
        let v = k_sample_tn_with(&data, &order, EcdfConvention::RankScore).unwrap();
        assert_abs_diff_eq!(v, 1.0143884422628744, epsilon = 1e-12);
        // The raw convention is the default.
        assert_eq!(
            k_sample_tn(&data, &order).unwrap(),
            k_sample_tn_with(&data, &order, EcdfConvention::Raw).unwrap()
        );
    }

    #[test]
    fn rank_score_is_rank_based_too() {
        let order = OrderSpec::simple(2).unwrap();
        let a = grouped(&[&[0.4, 1.9, 2.2], &[0.1, 0.8, 1.4, 2.0]]);
        let b = grouped(&[
            &[0.4f64.exp(), 1.9f64.exp(), 2.2f64.exp()],
            &[0.1f64.exp(), 0.8f64.exp(), 1.4f64.exp(), 2.0f64.exp()],
        ]);
        let va = k_sample_tn_with(&a, &order, EcdfConvention::RankScore).unwrap();
        let vb = k_sample_tn_with(&b, &order, EcdfConvention::RankScore).unwrap();
        assert_abs_diff_eq!(va, vb, epsilon = 1e-12);
    }

    #[test]
    fn k_sample_tn_dimension_mismatch() {
        let order = OrderSpec::simple(3).unwrap();
        let data = grouped(&[&[1.0], &[2.0]]);
        assert!(k_sample_tn(&data, &order).is_err());
    }

    #[test]
    fn rank_invariance_under_monotone_transforms() {
        let order = OrderSpec::simple(3).unwrap();
        let raw: Vec<Vec<f64>> = vec![
            vec![0.31, 1.2, 0.77, 2.4, 0.9],
            vec![0.11, 0.45, 1.3, 0.6],
            vec![0.05, 0.2, 0.8, 0.33, 0.47, 0.52],
        ];
        let build = |f: &dyn Fn(f64) -> f64| {
            let groups = raw
                .iter()
                .enumerate()
                .map(|(j, v)| {
                    Sample::new(format!("g{j}"), v.iter().map(|&x| f(x)).collect()).unwrap()
                })
                .collect();
            GroupedSamples::new(groups).unwrap()
        };
        let base = k_sample_tn(&build(&|x| x), &order).unwrap();
        let exp = k_sample_tn(&build(&|x| x.exp()), &order).unwrap();
        let affine = k_sample_tn(&build(&|x| 3.0 * x + 7.0), &order).unwrap();
        assert_abs_diff_eq!(base, exp, epsilon = 1e-12);
        assert_abs_diff_eq!(base, affine, epsilon = 1e-12);
    }

    #[test]
    fn one_sample_rank_invariance_through_transformed_f0() {
        // Transforming both the data and F0 by x -> exp(x) leaves T_n alone:
        // with X ~ F0 = uniform(0,1), exp(X) has cdf F0(ln y).
        let s = sample(&[0.12, 0.43, 0.55, 0.81]);
        let f0 = DistSpec::uniform(0.0, 1.0).unwrap();
        let base = one_sample_tn(&s, &f0).unwrap();
        let transformed = Sample::new("t", s.values().iter().map(|&x| x.exp()).collect()).unwrap();
        let moved = one_sample_tn_cdf(
            &transformed,
            |y: f64| {
                if y <= 0.0 {
                    0.0
                } else {
                    f0.cdf(y.ln())
                }
            },
        );
        assert_abs_diff_eq!(base, moved, epsilon = 1e-12);
    }
}
