//! Empirical-likelihood tests for stochastic ordering among k univariate
//! distributions, based on independent samples from each.
//!
//! The integrated test statistic localizes an empirical-likelihood ratio
//! at every pooled data point and averages it against the pooled empirical
//! cdf; its null distribution is tabulated by Monte Carlo, either from
//! finite samples or from the Brownian-bridge limit.
//!
//! * [`data`] — sample containers, empirical cdfs, the pooled grid.
//! * [`isotone`] — weighted least-squares projection onto isotonic cones
//!   (pool-adjacent-violators and minimum lower sets).
//! * [`elstat`] — the local and integrated empirical-likelihood statistics.
//! * [`nulldist`] — Monte Carlo null distributions, quantiles, p-values.
//! * [`seqks`] — the sequential one-sided Kolmogorov-Smirnov benchmark.
//! * [`power`] — reproducible power studies over configured scenarios.

pub mod data;
pub mod dist;
pub mod elstat;
pub mod error;
pub mod isotone;
pub mod nulldist;
pub mod power;
pub mod rng;
pub mod seqks;

pub use data::{GroupedSamples, PooledGrid, Sample};
pub use dist::DistSpec;
pub use elstat::EcdfConvention;
pub use error::{Error, Result};
pub use isotone::{OrderKind, OrderSpec, Projection};
pub use nulldist::{NullDistribution, NullMethod, OneSampleStatistic};
pub use power::{PowerResult, Scenario, TestPower, TestSelection};
pub use seqks::SnResult;
