//! Monte-Carlo sweeps over noisy initial vectors, the uniform-start baseline
//! table and the Markov-bound experiment.
//!
//! Samples are evaluated in parallel with rayon, but each sample draws from
//! its own derived seed and results are kept in sample order, and every
//! aggregate is summed in that order. The output is therefore the same for
//! any thread count.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ensembles::{sample, EnsembleSpec, Seed};
use crate::error::{Error, Result};
use crate::grover::{run, GroverConfig, IterationSchedule};
use crate::regression::{linear_fit, RegressionFit};
use crate::statevector::{
    amplitude_variance, check_dimension, empirical_exceedance, markov_bound, uniform_state,
};

/// Which success number a sweep aggregates.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    /// Squared marked amplitude.
    #[default]
    Probability,
    /// Absolute marked amplitude.
    Amplitude,
}

impl Metric {
    pub fn of(self, record: &SampleRecord) -> f64 {
        match self {
            Metric::Probability => record.success_probability,
            Metric::Amplitude => record.success_amplitude,
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::Probability => "probability",
            Metric::Amplitude => "amplitude",
        })
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "probability" => Ok(Metric::Probability),
            "amplitude" => Ok(Metric::Amplitude),
            other => Err(Error::InvalidConfig(format!(
                "unknown metric {other:?}, expected probability or amplitude"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepConfig {
    pub grover: GroverConfig,
    pub ensemble: EnsembleSpec,
    pub num_samples: usize,
    pub seed: Seed,
    pub num_bins: usize,
    pub metric: Metric,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        self.ensemble.validate()?;
        if self.ensemble.dim() != self.grover.n() {
            return Err(Error::DimensionMismatch {
                expected: self.grover.n(),
                actual: self.ensemble.dim(),
            });
        }
        if self.num_samples == 0 {
            return Err(Error::InvalidConfig(
                "num_samples must be at least 1".into(),
            ));
        }
        if self.num_bins < 2 {
            return Err(Error::InvalidConfig("num_bins must be at least 2".into()));
        }
        Ok(())
    }
}

/// One point of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub sample_index: usize,
    pub variance: f64,
    pub variance_ratio: f64,
    pub success_probability: f64,
    pub success_amplitude: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSummary {
    pub config: SweepConfig,
    pub records: Vec<SampleRecord>,
    /// Midpoints of `num_bins` equal-width bins partitioning ratio `[0, 1]`.
    pub bin_centers: Vec<f64>,
    /// Mean success per bin, `None` for empty bins.
    pub bin_means: Vec<Option<f64>>,
    /// Standard error of each bin mean, `None` below two samples.
    pub bin_std_errors: Vec<Option<f64>>,
    pub bin_counts: Vec<usize>,
    /// Success against variance ratio over every record. `None` when all
    /// records share one ratio.
    pub fit_on_records: Option<RegressionFit>,
    /// Bin means against bin centers, non-empty bins only. `None` with
    /// fewer than two non-empty bins.
    pub fit_on_bins: Option<RegressionFit>,
    pub min_success: f64,
    /// Mean success over the tenth of the records with the largest variance
    /// ratio (at least one record).
    pub mean_success_top_decile_variance: f64,
}

impl SweepSummary {
    pub fn bin_width(&self) -> f64 {
        1.0 / self.bin_centers.len() as f64
    }

    /// Success values of the records, under the configured metric.
    pub fn successes(&self) -> impl Iterator<Item = f64> + '_ {
        self.records.iter().map(move |r| self.config.metric.of(r))
    }
}

/// Evaluates one sample: draw, measure variance, run the search.
pub fn evaluate_sample(config: &SweepConfig, index: usize) -> Result<SampleRecord> {
    let v = sample(&config.ensemble, config.seed.derive(index as u64))?;
    let report = amplitude_variance(&v)?;
    let result = run(&config.grover, &v)?;
    Ok(SampleRecord {
        sample_index: index,
        variance: report.variance,
        variance_ratio: report.ratio,
        success_probability: result.success_probability,
        success_amplitude: result.success_amplitude,
    })
}

/// Runs every sample of `config` and aggregates the results.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepSummary> {
    config.validate()?;
    let records = (0..config.num_samples)
        .into_par_iter()
        .map(|i| evaluate_sample(config, i))
        .collect::<Result<Vec<_>>>()?;
    summarize(*config, records)
}

/// Bins, fits and extremal statistics for records already in sample order.
pub fn summarize(config: SweepConfig, records: Vec<SampleRecord>) -> Result<SweepSummary> {
    if records.is_empty() {
        return Err(Error::InvalidConfig("no records to summarize".into()));
    }
    let bins = config.num_bins;
    let metric = config.metric;

    let mut sums = vec![0.0; bins];
    let mut counts = vec![0usize; bins];
    let mut members: Vec<Vec<f64>> = vec![Vec::new(); bins];
    for r in &records {
        let b = bin_index(r.variance_ratio, bins);
        let y = metric.of(r);
        sums[b] += y;
        counts[b] += 1;
        members[b].push(y);
    }

    let bin_centers: Vec<f64> = (0..bins).map(|b| (b as f64 + 0.5) / bins as f64).collect();
    let bin_means: Vec<Option<f64>> = sums
        .iter()
        .zip(&counts)
        .map(|(&s, &c)| (c > 0).then(|| s / c as f64))
        .collect();
    let bin_std_errors = members
        .iter()
        .zip(&bin_means)
        .map(|(ys, mean)| match (ys.len(), mean) {
            (c, Some(m)) if c >= 2 => {
                let ss: f64 = ys.iter().map(|y| (y - m) * (y - m)).sum();
                Some((ss / (c - 1) as f64).sqrt() / (c as f64).sqrt())
            }
            _ => None,
        })
        .collect();

    let points: Vec<(f64, f64)> = records
        .iter()
        .map(|r| (r.variance_ratio, metric.of(r)))
        .collect();
    let fit_on_records = optional_fit(&points)?;
    let bin_points: Vec<(f64, f64)> = bin_centers
        .iter()
        .zip(&bin_means)
        .filter_map(|(&c, m)| m.map(|m| (c, m)))
        .collect();
    let fit_on_bins = optional_fit(&bin_points)?;

    let min_success = points.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);

    let mut by_ratio: Vec<&SampleRecord> = records.iter().collect();
    by_ratio.sort_by(|a, b| {
        b.variance_ratio
            .total_cmp(&a.variance_ratio)
            .then(a.sample_index.cmp(&b.sample_index))
    });
    let top = records.len().div_ceil(10);
    let mean_success_top_decile_variance =
        by_ratio[..top].iter().map(|r| metric.of(r)).sum::<f64>() / top as f64;

    Ok(SweepSummary {
        config,
        records,
        bin_centers,
        bin_means,
        bin_std_errors,
        bin_counts: counts,
        fit_on_records,
        fit_on_bins,
        min_success,
        mean_success_top_decile_variance,
    })
}

fn bin_index(ratio: f64, bins: usize) -> usize {
    ((ratio * bins as f64).floor() as usize).min(bins - 1)
}

/// A fit, or `None` when there is no spread in x to fit against.
fn optional_fit(points: &[(f64, f64)]) -> Result<Option<RegressionFit>> {
    match linear_fit(points) {
        Ok(f) => Ok(Some(f)),
        Err(Error::DegenerateFit(_)) if points.iter().all(|p| p.1.is_finite()) => Ok(None),
        Err(e) => Err(e),
    }
}

/// One row of the uniform-start table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BaselineRow {
    pub n: usize,
    pub iterations: usize,
    /// `100 * |a_marked|`.
    pub amplitude_pct: f64,
    /// `100 * a_marked^2`.
    pub probability_pct: f64,
}

/// Uniform-start search for each size, marked index 1.
pub fn run_baseline(sizes: &[usize], schedule: IterationSchedule) -> Result<Vec<BaselineRow>> {
    sizes
        .iter()
        .map(|&n| {
            let config = GroverConfig::new(n, GroverConfig::DEFAULT_MARKED, schedule)?;
            let result = run(&config, &uniform_state(n)?)?;
            Ok(BaselineRow {
                n,
                iterations: result.iterations,
                amplitude_pct: 100.0 * result.success_amplitude,
                probability_pct: 100.0 * result.success_probability,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MarkovRow {
    pub eps: f64,
    pub mean_exceedance: f64,
    pub bound: f64,
}

/// Mean empirical exceedance over `m` draws against the Markov bound, for
/// each threshold offset. All thresholds see the same draws.
pub fn markov_experiment(
    spec: &EnsembleSpec,
    eps_values: &[f64],
    m: usize,
    seed: Seed,
) -> Result<Vec<MarkovRow>> {
    spec.validate()?;
    if m == 0 {
        return Err(Error::InvalidConfig("need at least one sample".into()));
    }
    let n = spec.dim();
    check_dimension(n)?;
    let bounds = eps_values
        .iter()
        .map(|&eps| markov_bound(n, eps))
        .collect::<Result<Vec<_>>>()?;

    let per_sample = (0..m)
        .into_par_iter()
        .map(|i| {
            let v = sample(spec, seed.derive(i as u64))?;
            eps_values
                .iter()
                .map(|&eps| empirical_exceedance(&v, eps))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(eps_values
        .iter()
        .zip(bounds)
        .enumerate()
        .map(|(j, (&eps, bound))| MarkovRow {
            eps,
            mean_exceedance: per_sample.iter().map(|row| row[j]).sum::<f64>() / m as f64,
            bound,
        })
        .collect())
}
