//! The distribution families used as hypothesized cdfs and as data
//! generators in power studies.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::StandardNormal;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{invalid, Error, Result};

/// A fully specified continuous distribution. The cdf of every family is
/// continuous and strictly increasing on its support.
///
/// The exponential family is parameterized by rate: `F(x) = 1 - exp(-rate x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DistSpec {
    Uniform { a: f64, b: f64 },
    Exponential { rate: f64 },
    ShiftedExponential { shift: f64, rate: f64 },
    Normal { mean: f64, variance: f64 },
}

impl DistSpec {
    pub fn uniform(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && b > a) {
            return Err(invalid(format!(
                "uniform requires finite b > a, got a={a}, b={b}"
            )));
        }
        Ok(Self::Uniform { a, b })
    }

    pub fn exponential(rate: f64) -> Result<Self> {
        if !(rate.is_finite() && rate > 0.0) {
            return Err(invalid(format!(
                "exponential rate must be positive, got {rate}"
            )));
        }
        Ok(Self::Exponential { rate })
    }

    pub fn shifted_exponential(shift: f64, rate: f64) -> Result<Self> {
        if !(rate.is_finite() && rate > 0.0 && shift.is_finite()) {
            return Err(invalid(format!(
                "shifted-exponential requires finite shift and positive rate, got shift={shift}, rate={rate}"
            )));
        }
        Ok(Self::ShiftedExponential { shift, rate })
    }

    pub fn normal(mean: f64, variance: f64) -> Result<Self> {
        if !(mean.is_finite() && variance.is_finite() && variance > 0.0) {
            return Err(invalid(format!(
                "normal requires finite mean and positive variance, got mean={mean}, variance={variance}"
            )));
        }
        Ok(Self::Normal { mean, variance })
    }

    /// Cumulative distribution function at `x`.
    pub fn cdf(&self, x: f64) -> f64 {
        match *self {
            Self::Uniform { a, b } => ((x - a) / (b - a)).clamp(0.0, 1.0),
            Self::Exponential { rate } => {
                if x <= 0.0 {
                    0.0
                } else {
                    -(-rate * x).exp_m1()
                }
            }
            Self::ShiftedExponential { shift, rate } => {
                if x <= shift {
                    0.0
                } else {
                    -(-rate * (x - shift)).exp_m1()
                }
            }
            Self::Normal { mean, variance } => Normal::new(mean, variance.sqrt())
                .expect("validated parameters")
                .cdf(x),
        }
    }

    /// One draw. Uniform and (shifted) exponential draws go through the
    /// inverse cdf applied to a unit uniform; normal draws use the standard
    /// Gaussian sampler scaled to the requested mean and variance.
    pub fn sample_one<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            Self::Normal { mean, variance } => {
                let z: f64 = rng.sample(StandardNormal);
                mean + variance.sqrt() * z
            }
            _ => self.inv_cdf(rng.random::<f64>()),
        }
    }

    /// Inverse-cdf transform of a unit uniform `u` in `[0, 1)` for the
    /// non-normal families. Panics for the normal family.
    pub(crate) fn inv_cdf(&self, u: f64) -> f64 {
        match *self {
            Self::Uniform { a, b } => a + (b - a) * u,
            Self::Exponential { rate } => -(-u).ln_1p() / rate,
            Self::ShiftedExponential { shift, rate } => shift + (-(-u).ln_1p() / rate),
            Self::Normal { .. } => unreachable!("normal draws do not use the inverse cdf"),
        }
    }
}

impl fmt::Display for DistSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Uniform { a, b } => write!(f, "uniform:a={a},b={b}"),
            Self::Exponential { rate } => write!(f, "exponential:rate={rate}"),
            Self::ShiftedExponential { shift, rate } => {
                write!(f, "shifted-exponential:shift={shift},rate={rate}")
            }
            Self::Normal { mean, variance } => write!(f, "normal:mean={mean},var={variance}"),
        }
    }
}

impl FromStr for DistSpec {
    type Err = Error;

    /// Parses strings like `uniform:a=0,b=1`, `exponential:rate=1`,
    /// `shifted-exponential:shift=0.1,rate=1`, `normal:mean=0,var=1`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (family, params) = match s.split_once(':') {
            Some((f, p)) => (f.trim(), p.trim()),
            None => (s, ""),
        };
        let lookup = |key: &str, alias: Option<&str>| -> Result<f64> {
            for part in params.split(',') {
                let part = part.trim();
                if part.is_empty() {
                    continue;
                }
                let (name, value) = part
                    .split_once('=')
                    .ok_or_else(|| invalid(format!("expected name=value in '{part}' of '{s}'")))?;
                let name = name.trim();
                if name == key || alias == Some(name) {
                    return value.trim().parse::<f64>().map_err(|_| {
                        invalid(format!("cannot parse '{value}' as a number in '{s}'"))
                    });
                }
            }
            Err(invalid(format!(
                "missing parameter '{key}' in distribution spec '{s}'"
            )))
        };
        match family {
            "uniform" | "uni" => Self::uniform(lookup("a", None)?, lookup("b", None)?),
            "exponential" | "exp" => Self::exponential(lookup("rate", None)?),
            "shifted-exponential" | "shifted-exp" => {
                Self::shifted_exponential(lookup("shift", None)?, lookup("rate", None)?)
            }
            "normal" | "norm" => Self::normal(lookup("mean", None)?, lookup("var", Some("variance"))?),
            other => Err(invalid(format!(
                "unknown distribution family '{other}' (expected uniform, exponential, shifted-exponential or normal)"
            ))),
        }
    }
}
