//! Degree distributions for the configuration model.

use std::fs;
use std::path::Path;

use rand::Rng;
use rand_distr::{Distribution, Exp, Geometric, Poisson};

use crate::analytic::Extended;
use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::special::{ln_beta, ln_gamma};

/// Largest number of support points an explicit table may hold.
pub const MAX_EXPLICIT_SUPPORT: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
pub enum DegreeDistribution {
    Poisson {
        mean: f64,
    },
    /// `P(D = k) = rho B(k, rho + 1)` on `k >= 1`.
    YuleSimon {
        shape: f64,
    },
    Explicit(ExplicitTable),
}

/// Finite pmf on the non-negative integers, normalized at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ExplicitTable {
    degrees: Vec<u64>,
    probs: Vec<f64>,
    cumulative: Vec<f64>,
}

impl ExplicitTable {
    /// Accepts `(k, p_k)` pairs in any order. Probabilities must be
    /// non-negative and sum to 1 within 1e-12; they are then renormalized.
    pub fn new(mut entries: Vec<(u64, f64)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::param("table", "explicit distribution needs at least one entry"));
        }
        if entries.len() > MAX_EXPLICIT_SUPPORT {
            return Err(Error::param(
                "table",
                format!(
                    "{} support points exceed the limit of {MAX_EXPLICIT_SUPPORT}; \
                     use a parametric distribution (poisson or yule-simon) instead",
                    entries.len()
                ),
            ));
        }
        entries.sort_by_key(|&(k, _)| k);
        if entries.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::param("table", "duplicate degree in explicit distribution"));
        }
        if let Some(&(k, p)) = entries.iter().find(|&&(_, p)| !(p >= 0.0 && p.is_finite())) {
            return Err(Error::param("table", format!("invalid probability {p} for k = {k}")));
        }
        let total: f64 = entries.iter().map(|&(_, p)| p).sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::param(
                "table",
                format!("probabilities sum to {total}, expected 1"),
            ));
        }
        let degrees = entries.iter().map(|&(k, _)| k).collect();
        let probs: Vec<f64> = entries.iter().map(|&(_, p)| p / total).collect();
        let mut acc = 0.0;
        let mut cumulative: Vec<f64> = probs
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect();
        *cumulative.last_mut().expect("non-empty") = 1.0;
        Ok(ExplicitTable {
            degrees,
            probs,
            cumulative,
        })
    }

    /// Reads a two-column `k p_k` text file. Blank lines and lines starting
    /// with `#` are skipped.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |message: String| Error::Parse { line: i + 1, message };
            let mut cols = line.split_whitespace();
            let (Some(k), Some(p), None) = (cols.next(), cols.next(), cols.next()) else {
                return Err(bad(format!("expected two columns `k p_k`, got `{line}`")));
            };
            let k = k.parse().map_err(|_| bad(format!("invalid degree `{k}`")))?;
            let p = p.parse().map_err(|_| bad(format!("invalid probability `{p}`")))?;
            entries.push((k, p));
        }
        Self::new(entries)
    }

    pub fn entries(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        self.degrees.iter().copied().zip(self.probs.iter().copied())
    }

    fn sample(&self, rng: &mut RngStream) -> u64 {
        let u: f64 = rng.random();
        let idx = self.cumulative.partition_point(|&c| c <= u);
        self.degrees[idx.min(self.degrees.len() - 1)]
    }
}

impl DegreeDistribution {
    pub fn poisson(mean: f64) -> Result<Self> {
        if !(mean > 0.0 && mean.is_finite()) {
            return Err(Error::param("mean", format!("Poisson mean must be > 0, got {mean}")));
        }
        Ok(DegreeDistribution::Poisson { mean })
    }

    /// Yule–Simon with shape `rho`; `rho <= 1` has infinite mean and is rejected.
    pub fn yule_simon(shape: f64) -> Result<Self> {
        if !(shape > 1.0 && shape.is_finite()) {
            return Err(Error::param(
                "shape",
                format!("Yule-Simon shape must exceed 1 for a finite mean, got {shape}"),
            ));
        }
        Ok(DegreeDistribution::YuleSimon { shape })
    }

    /// Yule–Simon with the given mean (> 1).
    pub fn yule_simon_with_mean(mean: f64) -> Result<Self> {
        Self::yule_simon(yule_simon_shape_from_mean(mean)?)
    }

    pub fn explicit(entries: Vec<(u64, f64)>) -> Result<Self> {
        Ok(DegreeDistribution::Explicit(ExplicitTable::new(entries)?))
    }

    pub fn mean(&self) -> f64 {
        match self {
            DegreeDistribution::Poisson { mean } => *mean,
            DegreeDistribution::YuleSimon { shape } => shape / (shape - 1.0),
            DegreeDistribution::Explicit(t) => t.entries().map(|(k, p)| k as f64 * p).sum(),
        }
    }

    /// `nu = (E[D^2] - mu) / mu`, the mean number of further neighbours
    /// reached along a uniformly chosen half-edge.
    pub fn size_biased_mean(&self) -> Extended {
        match self {
            DegreeDistribution::Poisson { mean } => Extended::Finite(*mean),
            DegreeDistribution::YuleSimon { shape } => {
                if *shape > 2.0 {
                    Extended::Finite(2.0 / (shape - 2.0))
                } else {
                    Extended::Infinite
                }
            }
            DegreeDistribution::Explicit(t) => {
                let mu = self.mean();
                if mu == 0.0 {
                    return Extended::Finite(0.0);
                }
                let second: f64 = t.entries().map(|(k, p)| (k as f64).powi(2) * p).sum();
                Extended::Finite((second - mu) / mu)
            }
        }
    }

    pub fn pmf(&self, k: u64) -> f64 {
        match self {
            DegreeDistribution::Poisson { mean } => {
                let k = k as f64;
                (k * mean.ln() - mean - ln_gamma(k + 1.0)).exp()
            }
            DegreeDistribution::YuleSimon { shape } => yule_simon_pmf(*shape, k).unwrap_or(0.0),
            DegreeDistribution::Explicit(t) => t.degrees.binary_search(&k).map(|i| t.probs[i]).unwrap_or(0.0),
        }
    }

    /// Prepares a sampler that can be reused for many draws.
    pub fn sampler(&self) -> DegreeSampler<'_> {
        let kind = match self {
            DegreeDistribution::Poisson { mean } => {
                SamplerKind::Poisson(Poisson::new(*mean).expect("validated Poisson mean"))
            }
            DegreeDistribution::YuleSimon { shape } => {
                SamplerKind::YuleSimon(Exp::new(*shape).expect("validated Yule-Simon shape"))
            }
            DegreeDistribution::Explicit(t) => SamplerKind::Explicit(t),
        };
        DegreeSampler { kind }
    }

    /// One draw. Use [`DegreeDistribution::sampler`] for repeated draws.
    pub fn sample(&self, rng: &mut RngStream) -> u64 {
        self.sampler().sample(rng)
    }
}

pub struct DegreeSampler<'a> {
    kind: SamplerKind<'a>,
}

enum SamplerKind<'a> {
    Poisson(Poisson<f64>),
    YuleSimon(Exp<f64>),
    Explicit(&'a ExplicitTable),
}

impl DegreeSampler<'_> {
    pub fn sample(&self, rng: &mut RngStream) -> u64 {
        match &self.kind {
            SamplerKind::Poisson(d) => d.sample(rng) as u64,
            SamplerKind::YuleSimon(exp) => {
                // W ~ Exp(rho), then K ~ Geometric(e^{-W}) on {1, 2, ...}
                let w = exp.sample(rng);
                let success = (-w).exp().max(f64::MIN_POSITIVE);
                let failures = Geometric::new(success)
                    .expect("success probability in (0, 1]")
                    .sample(rng);
                failures.saturating_add(1)
            }
            SamplerKind::Explicit(t) => t.sample(rng),
        }
    }
}

/// `rho B(k, rho + 1)`, computed through log-Gamma differences.
pub fn yule_simon_pmf(shape: f64, k: u64) -> Result<f64> {
    if !(shape > 0.0 && shape.is_finite()) {
        return Err(Error::param("shape", format!("must be > 0, got {shape}")));
    }
    if k < 1 {
        return Err(Error::Domain("Yule-Simon support starts at k = 1".into()));
    }
    Ok((shape.ln() + ln_beta(k as f64, shape + 1.0)).exp())
}

/// Inverts the Yule–Simon mean `rho / (rho - 1)`.
pub fn yule_simon_shape_from_mean(mean: f64) -> Result<f64> {
    if !(mean > 1.0 && mean.is_finite()) {
        return Err(Error::Infeasible(format!(
            "a Yule-Simon distribution has mean > 1, requested {mean}"
        )));
    }
    Ok(mean / (mean - 1.0))
}
