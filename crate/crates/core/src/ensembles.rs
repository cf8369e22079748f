//! Seeded random initial vectors.
//!
//! Every draw is a pure function of an [`EnsembleSpec`] and a [`Seed`]. The
//! generator is ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded through
//! `SeedableRng::seed_from_u64`; Gaussian entries come from
//! `rand_distr::StandardNormal`. Golden-value tests pin the stream, so a
//! change to either shows up as a test failure.
//!
//! Sweeps never share a generator between samples. Sample `i` of a sweep
//! with master seed `s` uses [`Seed::derive`]`(i)`, a SplitMix64 mix of
//! `s` and `i`, so the sample set does not depend on how work is scheduled.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::statevector::{
    amplitude_variance, check_dimension, normalize, uniform_state, StateVector,
};

/// Redraws allowed before a generator is declared broken.
pub const MAX_DRAW_ATTEMPTS: usize = 100;

/// Raw draws with a norm below this are rejected and redrawn.
const MIN_RAW_NORM: f64 = 1e-12;

/// Master seed of a random experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seed(pub u64);

impl Seed {
    /// Seed for sample `index`: `splitmix64(master + (index + 1) * GOLDEN)`.
    pub fn derive(self, index: u64) -> Seed {
        const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;
        Seed(splitmix64(
            self.0
                .wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN)),
        ))
    }

    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }
}

impl From<u64> for Seed {
    fn from(s: u64) -> Self {
        Seed(s)
    }
}

/// SplitMix64 finalizer.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Distribution over initial vectors.
///
/// Serialized with a `kind` tag, e.g.
/// `{"kind": "controlled_variance", "n": 8, "ratio": 0.5}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum EnsembleSpec {
    /// Entries uniform on `[0, 1)`, then normalized.
    UniformPositive { n: usize },
    /// Entries uniform on `[-1, 1)`, then normalized.
    UniformSigned { n: usize },
    /// Uniform state plus N(0, epsilon^2) noise per entry, then normalized.
    PerturbedUniform { n: usize, epsilon: f64 },
    /// Mix of the uniform state and a random zero-sum unit vector with an
    /// exact variance ratio. Without `ratio`, each draw picks its own
    /// ratio uniformly from `[0, 1)`, which spreads a sweep over the whole
    /// variance axis.
    ControlledVariance {
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        ratio: Option<f64>,
    },
}

impl EnsembleSpec {
    pub fn dim(&self) -> usize {
        match *self {
            EnsembleSpec::UniformPositive { n }
            | EnsembleSpec::UniformSigned { n }
            | EnsembleSpec::PerturbedUniform { n, .. }
            | EnsembleSpec::ControlledVariance { n, .. } => n,
        }
    }

    /// Same distribution with a different dimension.
    pub fn with_dim(self, n: usize) -> Self {
        match self {
            EnsembleSpec::UniformPositive { .. } => EnsembleSpec::UniformPositive { n },
            EnsembleSpec::UniformSigned { .. } => EnsembleSpec::UniformSigned { n },
            EnsembleSpec::PerturbedUniform { epsilon, .. } => {
                EnsembleSpec::PerturbedUniform { n, epsilon }
            }
            EnsembleSpec::ControlledVariance { ratio, .. } => {
                EnsembleSpec::ControlledVariance { n, ratio }
            }
        }
    }

    /// Short stable name, matching the JSON `kind`.
    pub fn kind(&self) -> &'static str {
        match self {
            EnsembleSpec::UniformPositive { .. } => "uniform_positive",
            EnsembleSpec::UniformSigned { .. } => "uniform_signed",
            EnsembleSpec::PerturbedUniform { .. } => "perturbed_uniform",
            EnsembleSpec::ControlledVariance { .. } => "controlled_variance",
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_dimension(self.dim())?;
        match *self {
            EnsembleSpec::PerturbedUniform { epsilon, .. }
                if !(epsilon >= 0.0 && epsilon.is_finite()) =>
            {
                Err(Error::InvalidConfig(format!(
                    "epsilon must be a finite non-negative number, got {epsilon}"
                )))
            }
            EnsembleSpec::ControlledVariance { ratio: Some(r), .. }
                if !(0.0..=1.0).contains(&r) =>
            {
                Err(Error::InvalidConfig(format!(
                    "ratio must lie in [0, 1], got {r}"
                )))
            }
            _ => Ok(()),
        }
    }
}

/// Draws one normalized vector.
pub fn sample(spec: &EnsembleSpec, seed: Seed) -> Result<StateVector> {
    spec.validate()?;
    let mut rng = seed.rng();
    match *spec {
        EnsembleSpec::UniformPositive { n } => draw_normalized(&mut rng, |rng| {
            (0..n).map(|_| rng.random::<f64>()).collect()
        }),
        EnsembleSpec::UniformSigned { n } => draw_normalized(&mut rng, |rng| {
            (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()
        }),
        EnsembleSpec::PerturbedUniform { n, epsilon } => {
            if epsilon == 0.0 {
                return uniform_state(n);
            }
            let base = 1.0 / (n as f64).sqrt();
            draw_normalized(&mut rng, |rng| {
                (0..n)
                    .map(|_| base + epsilon * rng.sample::<f64, _>(StandardNormal))
                    .collect()
            })
        }
        EnsembleSpec::ControlledVariance { n, ratio } => {
            let ratio = match ratio {
                Some(r) => r,
                None => rng.random::<f64>(),
            };
            controlled_variance(&mut rng, n, ratio)
        }
    }
}

fn draw_normalized<R, F>(rng: &mut R, mut draw: F) -> Result<StateVector>
where
    R: Rng,
    F: FnMut(&mut R) -> Vec<f64>,
{
    for _ in 0..MAX_DRAW_ATTEMPTS {
        let raw = draw(rng);
        if raw.iter().map(|x| x * x).sum::<f64>().sqrt() >= MIN_RAW_NORM {
            return normalize(&raw);
        }
    }
    Err(Error::DegenerateDraw(MAX_DRAW_ATTEMPTS))
}

/// `sqrt(1 - ratio) * u + sqrt(ratio) * w` with `u` uniform and `w` a random
/// unit vector orthogonal to `u`. Then `sum v_i = sqrt((1 - ratio) * n)` and
/// the variance is exactly `ratio / n`.
fn controlled_variance<R: Rng>(rng: &mut R, n: usize, ratio: f64) -> Result<StateVector> {
    if ratio == 0.0 {
        return uniform_state(n);
    }
    let w = zero_sum_unit(rng, n)?;
    let along = (1.0 - ratio).sqrt() / (n as f64).sqrt();
    let across = ratio.sqrt();
    let v: Vec<f64> = w.iter().map(|wi| along + across * wi).collect();
    normalize(&v)
}

fn zero_sum_unit<R: Rng>(rng: &mut R, n: usize) -> Result<Vec<f64>> {
    for _ in 0..MAX_DRAW_ATTEMPTS {
        let mut g: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let mean = g.iter().sum::<f64>() / n as f64;
        g.iter_mut().for_each(|x| *x -= mean);
        let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm >= MIN_RAW_NORM {
            g.iter_mut().for_each(|x| *x /= norm);
            // Second pass removes the rounding residue left in the sum.
            let residue = g.iter().sum::<f64>() / n as f64;
            g.iter_mut().for_each(|x| *x -= residue);
            return Ok(g);
        }
    }
    Err(Error::DegenerateDraw(MAX_DRAW_ATTEMPTS))
}

/// Spread of variance ratios over `m` draws.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VarianceProfile {
    pub samples: usize,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    /// 10th, 20th, ..., 90th percentiles (linear interpolation between order statistics).
    pub deciles: [f64; 9],
}

/// Draws `m` vectors with seeds `seed.derive(0..m)` and summarizes their
/// variance ratios.
pub fn variance_profile(spec: &EnsembleSpec, seed: Seed, m: usize) -> Result<VarianceProfile> {
    if m == 0 {
        return Err(Error::InvalidConfig("need at least one sample".into()));
    }
    let mut ratios = (0..m as u64)
        .map(|i| Ok(amplitude_variance(&sample(spec, seed.derive(i))?)?.ratio))
        .collect::<Result<Vec<f64>>>()?;
    let mean = ratios.iter().sum::<f64>() / m as f64;
    ratios.sort_by(f64::total_cmp);
    let mut deciles = [0.0; 9];
    for (d, slot) in deciles.iter_mut().enumerate() {
        *slot = quantile_sorted(&ratios, (d + 1) as f64 / 10.0);
    }
    Ok(VarianceProfile {
        samples: m,
        min: ratios[0],
        max: ratios[m - 1],
        mean,
        deciles,
    })
}

/// Linear-interpolation quantile of an ascending, non-empty slice.
pub(crate) fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}
