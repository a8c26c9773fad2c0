//! Monte Carlo null distributions: the finite-sample recipe (standard
//! normal samples pushed through the test statistic) and direct simulation
//! of the Brownian-bridge limit functionals, plus quantiles, p-values and
//! a plain-text cache format.

use std::io::{BufRead, Write};

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::data::{GroupedSamples, Sample};
use crate::dist::DistSpec;
use crate::elstat::{self, EcdfConvention};
use crate::error::{domain, invalid, Error, Result};
use crate::isotone::{self, OrderKind, OrderSpec};
use crate::rng::replication_rng;

/// How a null distribution was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NullMethod {
    /// k-sample statistic (rank-score ecdfs) on independent N(0,1) samples;
    /// the recipe behind the classical critical-value table.
    FiniteSample,
    /// Same recipe evaluated with raw ecdfs `a/n`.
    FiniteSampleRaw,
    /// One-sample T_n on uniform(0,1) samples against the uniform cdf.
    FiniteOneSample,
    /// Same, for the dF̂-integrated statistic T_n*.
    FiniteOneSampleStar,
    /// Brownian-bridge functional of the one-sample limit.
    LimitOneSample,
    /// Projected multi-bridge functional of the k-sample limit.
    LimitK,
}

impl NullMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::FiniteSample => "finite-sample",
            Self::FiniteSampleRaw => "finite-sample-raw",
            Self::FiniteOneSample => "finite-one-sample",
            Self::FiniteOneSampleStar => "finite-one-sample-star",
            Self::LimitOneSample => "limit-one-sample",
            Self::LimitK => "limit-k",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "finite-sample" => Some(Self::FiniteSample),
            "finite-sample-raw" => Some(Self::FiniteSampleRaw),
            "finite-one-sample" => Some(Self::FiniteOneSample),
            "finite-one-sample-star" => Some(Self::FiniteOneSampleStar),
            "limit-one-sample" => Some(Self::LimitOneSample),
            "limit-k" => Some(Self::LimitK),
            _ => None,
        }
    }
}

/// Sorted Monte Carlo draws of a statistic under the null, with full
/// provenance.
#[derive(Debug, Clone)]
pub struct NullDistribution {
    draws: Vec<f64>,
    method: NullMethod,
    k: usize,
    weights: Vec<f64>,
    reps: usize,
    grid_size: usize,
    master_seed: u64,
}

impl NullDistribution {
    fn from_draws(
        mut draws: Vec<f64>,
        method: NullMethod,
        k: usize,
        weights: Vec<f64>,
        grid_size: usize,
        master_seed: u64,
    ) -> Self {
        draws.sort_unstable_by(f64::total_cmp);
        let reps = draws.len();
        Self {
            draws,
            method,
            k,
            weights,
            reps,
            grid_size,
            master_seed,
        }
    }

    /// Draws sorted ascending.
    pub fn draws(&self) -> &[f64] {
        &self.draws
    }

    pub fn method(&self) -> NullMethod {
        self.method
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn reps(&self) -> usize {
        self.reps
    }

    /// Grid size of the limit simulation; 0 for finite-sample methods.
    pub fn grid_size(&self) -> usize {
        self.grid_size
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    /// Empirical (1-alpha)-quantile: the order statistic at 1-based index
    /// `ceil((1-alpha) * reps)`, without interpolation.
    pub fn critical_value(&self, alpha: f64) -> Result<f64> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(domain(format!("alpha must lie in (0, 1), got {alpha}")));
        }
        let target = (1.0 - alpha) * self.reps as f64;
        // Guard against the product rounding just above an integer.
        let index = ((target - 1e-9).ceil() as usize).clamp(1, self.reps);
        Ok(self.draws[index - 1])
    }

    /// Monte Carlo p-value `(1 + #{draws >= observed}) / (reps + 1)`.
    pub fn p_value(&self, observed: f64) -> f64 {
        let below = self.draws.partition_point(|d| *d < observed);
        (1 + self.reps - below) as f64 / (self.reps + 1) as f64
    }

    /// Writes the header and one draw per line. Draw values round-trip
    /// exactly through the shortest-representation float formatting.
    pub fn write_to<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "method={}", self.method.as_str())?;
        writeln!(out, "k={}", self.k)?;
        let weights: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        writeln!(out, "weights={}", weights.join(","))?;
        writeln!(out, "reps={}", self.reps)?;
        writeln!(out, "seed={}", self.master_seed)?;
        writeln!(out, "grid={}", self.grid_size)?;
        for d in &self.draws {
            writeln!(out, "{d}")?;
        }
        Ok(())
    }

    pub fn read_from<R: BufRead>(input: R) -> Result<Self> {
        let mut lines = input.lines();
        let mut field = |name: &str| -> Result<String> {
            let line = lines
                .next()
                .ok_or_else(|| Error::Format(format!("missing header line '{name}='")))?
                .map_err(Error::Io)?;
            line.strip_prefix(&format!("{name}="))
                .map(str::to_owned)
                .ok_or_else(|| Error::Format(format!("expected '{name}=...', got '{line}'")))
        };
        let method_str = field("method")?;
        let method = NullMethod::parse(&method_str)
            .ok_or_else(|| Error::Format(format!("unknown method '{method_str}'")))?;
        let k: usize = field("k")?
            .parse()
            .map_err(|_| Error::Format("k is not an integer".into()))?;
        let weights_str = field("weights")?;
        let weights: Vec<f64> = if weights_str.is_empty() {
            Vec::new()
        } else {
            weights_str
                .split(',')
                .map(|w| {
                    w.parse::<f64>()
                        .map_err(|_| Error::Format(format!("bad weight '{w}'")))
                })
                .collect::<Result<_>>()?
        };
        let reps: usize = field("reps")?
            .parse()
            .map_err(|_| Error::Format("reps is not an integer".into()))?;
        let master_seed: u64 = field("seed")?
            .parse()
            .map_err(|_| Error::Format("seed is not an integer".into()))?;
        let grid_size: usize = field("grid")?
            .parse()
            .map_err(|_| Error::Format("grid is not an integer".into()))?;

        let mut draws = Vec::with_capacity(reps);
        for line in lines {
            let line = line.map_err(Error::Io)?;
            if line.is_empty() {
                continue;
            }
            let d: f64 = line
                .parse()
                .map_err(|_| Error::Format(format!("bad draw value '{line}'")))?;
            draws.push(d);
        }
        if draws.len() != reps {
            return Err(Error::Format(format!(
                "header says reps={reps} but found {} draws",
                draws.len()
            )));
        }
        if draws.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Format("draws are not sorted ascending".into()));
        }
        Ok(Self {
            draws,
            method,
            k,
            weights,
            reps,
            grid_size,
            master_seed,
        })
    }
}

fn check_reps(reps: usize) -> Result<()> {
    if reps == 0 {
        return Err(invalid("reps must be at least 1"));
    }
    Ok(())
}

/// Finite-sample null of the k-sample statistic: each replication draws
/// independent N(0,1) samples of the given sizes and evaluates the
/// statistic with rank-score ecdfs, which is the recipe that reproduces
/// the classical critical-value table. Deterministic in (inputs, seed)
/// regardless of scheduling.
pub fn simulate_null_finite(
    n_per_group: &[usize],
    order: &OrderSpec,
    reps: usize,
    seed: u64,
) -> Result<NullDistribution> {
    simulate_null_finite_with(n_per_group, order, reps, seed, EcdfConvention::RankScore)
}

/// [`simulate_null_finite`] with an explicit ecdf convention. Needed when
/// an observed statistic was computed with raw ecdfs: p-values are only
/// valid when both sides of the comparison share the convention.
pub fn simulate_null_finite_with(
    n_per_group: &[usize],
    order: &OrderSpec,
    reps: usize,
    seed: u64,
    convention: EcdfConvention,
) -> Result<NullDistribution> {
    check_reps(reps)?;
    let k = n_per_group.len();
    if k < 2 {
        return Err(invalid("finite-sample null needs at least 2 groups"));
    }
    if order.k() != k {
        return Err(invalid(format!(
            "order dimension {} does not match group count {k}",
            order.k()
        )));
    }
    if n_per_group.contains(&0) {
        return Err(invalid("every group size must be positive"));
    }
    let total: usize = n_per_group.iter().sum();
    let weights: Vec<f64> = n_per_group
        .iter()
        .map(|&n| n as f64 / total as f64)
        .collect();

    let draws: Vec<f64> = (0..reps as u64)
        .into_par_iter()
        .map(|rep| {
            let mut rng = replication_rng(seed, rep);
            let groups: Vec<Sample> = n_per_group
                .iter()
                .enumerate()
                .map(|(j, &n)| {
                    let values: Vec<f64> = (0..n)
                        .map(|_| rng.sample::<f64, _>(StandardNormal))
                        .collect();
                    Sample::new(format!("g{}", j + 1), values).expect("finite normal draws")
                })
                .collect();
            let data = GroupedSamples::new(groups).expect("k >= 2 checked above");
            elstat::k_sample_tn_with(&data, order, convention).expect("dimensions checked above")
        })
        .collect();

    let method = match convention {
        EcdfConvention::RankScore => NullMethod::FiniteSample,
        EcdfConvention::Raw => NullMethod::FiniteSampleRaw,
    };
    Ok(NullDistribution::from_draws(
        draws, method, k, weights, 0, seed,
    ))
}

/// Statistic choice for the one-sample finite null.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OneSampleStatistic {
    /// The dF0-integrated statistic T_n.
    #[default]
    Integral,
    /// The dF̂-integrated statistic T_n*.
    Empirical,
}

/// Finite-sample null of the one-sample statistic. Under the null the
/// statistic depends on the data only through `F0(X_i) ~ U(0,1)`, so each
/// replication draws `n` unit uniforms and tests them against the uniform
/// cdf.
pub fn simulate_null_finite_one(
    n: usize,
    statistic: OneSampleStatistic,
    reps: usize,
    seed: u64,
) -> Result<NullDistribution> {
    check_reps(reps)?;
    if n == 0 {
        return Err(invalid("sample size must be positive"));
    }
    let f0 = DistSpec::uniform(0.0, 1.0).expect("static parameters");
    let draws: Vec<f64> = (0..reps as u64)
        .into_par_iter()
        .map(|rep| {
            let mut rng = replication_rng(seed, rep);
            let values: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
            let sample = Sample::new("u", values).expect("finite uniform draws");
            match statistic {
                OneSampleStatistic::Integral => {
                    elstat::one_sample_tn(&sample, &f0).expect("valid f0")
                }
                OneSampleStatistic::Empirical => {
                    elstat::one_sample_tn_star(&sample, &f0).expect("valid f0")
                }
            }
        })
        .collect();
    let method = match statistic {
        OneSampleStatistic::Integral => NullMethod::FiniteOneSample,
        OneSampleStatistic::Empirical => NullMethod::FiniteOneSampleStar,
    };
    Ok(NullDistribution::from_draws(
        draws,
        method,
        1,
        vec![1.0],
        0,
        seed,
    ))
}

/// Fills `bridge` with a standard Brownian bridge evaluated on the interior
/// grid `t_i = i/m`, `i = 1..m-1`, built from cumulative Gaussian
/// increments: `B(t) = W(t) - t W(1)`.
fn sample_bridge<R: Rng + ?Sized>(rng: &mut R, m: usize, bridge: &mut Vec<f64>) {
    bridge.clear();
    let scale = 1.0 / (m as f64).sqrt();
    let mut w = 0.0;
    for _ in 0..m - 1 {
        w += rng.sample::<f64, _>(StandardNormal);
        bridge.push(w);
    }
    w += rng.sample::<f64, _>(StandardNormal);
    let w_total = w;
    for (i, b) in bridge.iter_mut().enumerate() {
        let t = (i + 1) as f64 / m as f64;
        *b = (*b - t * w_total) * scale;
    }
}

/// Riemann sum of `B(t)^2 I(B(t) >= 0) / (t (1 - t))` over the interior
/// grid, divided by m.
pub(crate) fn bridge_integral_one(bridge: &[f64]) -> f64 {
    let m = bridge.len() + 1;
    let mf = m as f64;
    let mut acc = 0.0;
    for (i, &b) in bridge.iter().enumerate() {
        if b >= 0.0 {
            let t = (i + 1) as f64 / mf;
            acc += b * b / (t * (1.0 - t));
        }
    }
    acc / mf
}

/// Null distribution of the one-sample limit functional
/// `∫ B(t)^2 I(B(t) >= 0) / (t(1-t)) dt` by direct bridge simulation.
pub fn simulate_limit_one(reps: usize, grid_size: usize, seed: u64) -> Result<NullDistribution> {
    check_reps(reps)?;
    if grid_size < 2 {
        return Err(invalid("grid size must be at least 2"));
    }
    let draws: Vec<f64> = (0..reps as u64)
        .into_par_iter()
        .map(|rep| {
            let mut rng = replication_rng(seed, rep);
            let mut bridge = Vec::with_capacity(grid_size - 1);
            sample_bridge(&mut rng, grid_size, &mut bridge);
            bridge_integral_one(&bridge)
        })
        .collect();
    Ok(NullDistribution::from_draws(
        draws,
        NullMethod::LimitOneSample,
        1,
        vec![1.0],
        grid_size,
        seed,
    ))
}

/// Riemann sum of the k-sample limit integrand: at every interior grid
/// point, project the scaled bridge vector `(B_j(t)/sqrt(w_j))_j` onto the
/// cone and accumulate `sum_j w_j (E_j - Bbar(t))^2 / (t(1-t))`.
pub(crate) fn bridge_integral_k(
    bridges: &[Vec<f64>],
    weights: &[f64],
    sqrt_w: &[f64],
    order: &OrderSpec,
    scaled: &mut Vec<f64>,
    scratch: &mut KLimitScratch,
) -> Result<f64> {
    let m = bridges[0].len() + 1;
    let mf = m as f64;
    let mut acc = 0.0;
    for i in 0..m - 1 {
        let t = (i + 1) as f64 / mf;
        scaled.clear();
        let mut bbar = 0.0;
        for (bridge, &sw) in bridges.iter().zip(sqrt_w) {
            let b = bridge[i];
            bbar += sw * b;
            scaled.push(b / sw);
        }
        match order.kind() {
            OrderKind::Simple => {
                isotone::pava_fit(
                    scaled,
                    weights,
                    &mut scratch.means,
                    &mut scratch.wsum,
                    &mut scratch.ends,
                );
                isotone::expand_blocks(&scratch.means, &scratch.ends, &mut scratch.fitted);
            }
            _ => {
                let projection = isotone::project_cone(scaled, weights, order)?;
                scratch.fitted.clear();
                scratch.fitted.extend_from_slice(&projection.fitted);
            }
        }
        let mut q = 0.0;
        for (&w, &f) in weights.iter().zip(&scratch.fitted) {
            let d = f - bbar;
            q += w * d * d;
        }
        acc += q / (t * (1.0 - t));
    }
    Ok(acc / mf)
}

pub(crate) struct KLimitScratch {
    fitted: Vec<f64>,
    means: Vec<f64>,
    wsum: Vec<f64>,
    ends: Vec<usize>,
}

impl KLimitScratch {
    pub(crate) fn new(k: usize) -> Self {
        Self {
            fitted: Vec::with_capacity(k),
            means: Vec::with_capacity(k),
            wsum: Vec::with_capacity(k),
            ends: Vec::with_capacity(k),
        }
    }
}

/// Null distribution of the k-sample limit functional for the given
/// weights and cone, by simulating k independent bridges per replication.
pub fn simulate_limit_k(
    weights: &[f64],
    order: &OrderSpec,
    reps: usize,
    grid_size: usize,
    seed: u64,
) -> Result<NullDistribution> {
    check_reps(reps)?;
    if grid_size < 2 {
        return Err(invalid("grid size must be at least 2"));
    }
    let k = weights.len();
    if k < 2 {
        return Err(invalid("limit-k simulation needs at least 2 components"));
    }
    if order.k() != k {
        return Err(invalid(format!(
            "order dimension {} does not match weight count {k}",
            order.k()
        )));
    }
    if weights.iter().any(|w| *w <= 0.0 || !w.is_finite()) {
        return Err(invalid("weights must be positive"));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(invalid(format!("weights must sum to 1, got {total}")));
    }
    let sqrt_w: Vec<f64> = weights.iter().map(|w| w.sqrt()).collect();

    let draws: Vec<f64> = (0..reps as u64)
        .into_par_iter()
        .map(|rep| {
            let mut rng = replication_rng(seed, rep);
            let mut bridges: Vec<Vec<f64>> = Vec::with_capacity(k);
            for _ in 0..k {
                let mut b = Vec::with_capacity(grid_size - 1);
                sample_bridge(&mut rng, grid_size, &mut b);
                bridges.push(b);
            }
            let mut scaled = Vec::with_capacity(k);
            let mut scratch = KLimitScratch::new(k);
            bridge_integral_k(&bridges, weights, &sqrt_w, order, &mut scaled, &mut scratch)
                .expect("dimensions checked above")
        })
        .collect();

    Ok(NullDistribution::from_draws(
        draws,
        NullMethod::LimitK,
        k,
        weights.to_vec(),
        grid_size,
        seed,
    ))
}
