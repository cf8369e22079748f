//! Normalized real state vectors and the amplitude-variance error model.
//!
//! A [`StateVector`] is a flat list of `N` real amplitudes whose squares sum
//! to one. Every statistic in this module assumes that normalization, so the
//! scale constant that appears in the raw variance formula is always 1 here.
//! Raw data goes through [`normalize`] first.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How far the norm of a vector may be from 1 and still count as normalized.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// Slack allowed on the `variance <= 1/N` bound before it is treated as a
/// numerical failure instead of rounding noise.
pub const VARIANCE_TOLERANCE: f64 = 1e-12;

/// A normalized register of `N >= 2` real amplitudes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct StateVector {
    amps: Vec<f64>,
}

impl StateVector {
    /// Wraps amplitudes that are already normalized.
    ///
    /// Fails with [`Error::NotNormalized`] if the norm is off by more than
    /// [`NORM_TOLERANCE`]. Use [`normalize`] for raw data.
    pub fn new(amps: Vec<f64>) -> Result<Self> {
        check_dimension(amps.len())?;
        if amps.iter().any(|a| !a.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm = l2_norm(&amps);
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { amps })
    }

    /// Skips the norm check. Operators that are orthogonal in exact
    /// arithmetic use this; callers that chain many of them track drift.
    pub(crate) fn from_raw(amps: Vec<f64>) -> Self {
        debug_assert!(amps.len() >= 2);
        Self { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<f64> {
        self.amps
    }

    pub fn amplitude(&self, index: usize) -> Result<f64> {
        self.amps.get(index).copied().ok_or(Error::IndexOutOfRange {
            index,
            n: self.dim(),
        })
    }

    pub fn norm(&self) -> f64 {
        l2_norm(&self.amps)
    }

    /// Sum of all amplitudes.
    pub fn amplitude_sum(&self) -> f64 {
        self.amps.iter().sum()
    }

    /// Every amplitude multiplied by -1.
    pub fn negated(&self) -> Self {
        Self::from_raw(self.amps.iter().map(|a| -a).collect())
    }
}

impl TryFrom<Vec<f64>> for StateVector {
    type Error = Error;

    fn try_from(amps: Vec<f64>) -> Result<Self> {
        StateVector::new(amps)
    }
}

impl From<StateVector> for Vec<f64> {
    fn from(sv: StateVector) -> Self {
        sv.amps
    }
}

impl AsRef<[f64]> for StateVector {
    fn as_ref(&self) -> &[f64] {
        &self.amps
    }
}

/// Variance of the amplitudes of a normalized vector, with its upper bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VarianceReport {
    pub variance: f64,
    /// `1/N`, the largest variance a normalized real vector can have.
    pub max_variance: f64,
    /// `variance / max_variance`, in `[0, 1]`.
    pub ratio: f64,
}

pub(crate) fn check_dimension(n: usize) -> Result<()> {
    if n < 2 {
        Err(Error::DimensionTooSmall(n))
    } else {
        Ok(())
    }
}

fn l2_norm(xs: &[f64]) -> f64 {
    xs.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Scales `raw` to unit norm.
pub fn normalize(raw: &[f64]) -> Result<StateVector> {
    check_dimension(raw.len())?;
    if raw.iter().any(|a| !a.is_finite()) {
        return Err(Error::NonFinite);
    }
    let norm = l2_norm(raw);
    if !norm.is_normal() {
        return Err(Error::ZeroVector);
    }
    let k = norm.recip();
    let amps: Vec<f64> = raw.iter().map(|a| a * k).collect();
    // A subnormal-heavy input can still lose precision after scaling.
    let rescaled = l2_norm(&amps);
    if (rescaled - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::ZeroVector);
    }
    Ok(StateVector::from_raw(amps))
}

/// The ideal starting register: every amplitude equal to `1/sqrt(N)`.
pub fn uniform_state(n: usize) -> Result<StateVector> {
    check_dimension(n)?;
    let a = 1.0 / (n as f64).sqrt();
    Ok(StateVector::from_raw(vec![a; n]))
}

/// `1/N`.
pub fn max_variance(n: usize) -> Result<f64> {
    check_dimension(n)?;
    Ok(1.0 / n as f64)
}

/// Variance straight from its definition, `(1/N) * sum (a_i - mean)^2`.
pub fn variance_by_definition(amps: &[f64]) -> f64 {
    let n = amps.len() as f64;
    let mean = amps.iter().sum::<f64>() / n;
    amps.iter().map(|a| (a - mean) * (a - mean)).sum::<f64>() / n
}

/// Variance of a unit-norm vector from the sum alone, `1/N - (sum a_i)^2 / N^2`.
pub fn variance_closed_form(amps: &[f64]) -> f64 {
    let n = amps.len() as f64;
    let s: f64 = amps.iter().sum();
    1.0 / n - s * s / (n * n)
}

/// Amplitude variance of `sv` and its ratio to the maximum.
///
/// Both formulas are evaluated. A disagreement beyond 1e-12, or a variance
/// that exceeds `1/N` by more than [`VARIANCE_TOLERANCE`], is reported as
/// [`Error::NumericalFailure`] rather than clamped away.
pub fn amplitude_variance(sv: &StateVector) -> Result<VarianceReport> {
    let amps = sv.amplitudes();
    let by_definition = variance_by_definition(amps);
    let closed = variance_closed_form(amps);
    if (by_definition - closed).abs() > 1e-12 {
        return Err(Error::NumericalFailure(format!(
            "variance forms disagree: {by_definition:e} vs {closed:e}"
        )));
    }
    let max = max_variance(sv.dim())?;
    if by_definition > max + VARIANCE_TOLERANCE {
        return Err(Error::NumericalFailure(format!(
            "variance {by_definition:e} exceeds bound {max:e}"
        )));
    }
    let variance = by_definition.max(0.0);
    Ok(VarianceReport {
        variance,
        max_variance: max,
        ratio: (variance / max).clamp(0.0, 1.0),
    })
}

/// Markov bound on the fraction of components with `a_i^2 >= 1/N + eps`.
///
/// The mean of the squared amplitudes of a unit vector is exactly `1/N`, so
/// the bound is `(1/N) / (1/N + eps)`.
pub fn markov_bound(n: usize, eps: f64) -> Result<f64> {
    check_dimension(n)?;
    check_epsilon(eps)?;
    let mean = 1.0 / n as f64;
    Ok(mean / (mean + eps))
}

/// Fraction of components of `sv` with `a_i^2 >= 1/N + eps`.
pub fn empirical_exceedance(sv: &StateVector, eps: f64) -> Result<f64> {
    check_epsilon(eps)?;
    let n = sv.dim();
    let threshold = 1.0 / n as f64 + eps;
    let count = sv
        .amplitudes()
        .iter()
        .filter(|a| *a * *a >= threshold)
        .count();
    Ok(count as f64 / n as f64)
}

fn check_epsilon(eps: f64) -> Result<()> {
    if eps > 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidEpsilon(eps))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn normalize_examples() {
        let sv = normalize(&[3.0, 4.0]).unwrap();
        assert!(close(sv.amplitudes()[0], 0.6, 1e-15));
        assert!(close(sv.amplitudes()[1], 0.8, 1e-15));

        let sv = normalize(&[1.0; 4]).unwrap();
        assert!(sv.amplitudes().iter().all(|&a| a == 0.5));

        assert_eq!(normalize(&[0.0; 3]), Err(Error::ZeroVector));
        assert_eq!(normalize(&[1.0]), Err(Error::DimensionTooSmall(1)));
        assert_eq!(normalize(&[1.0, f64::NAN]), Err(Error::NonFinite));
        assert_eq!(
            normalize(&[f64::MIN_POSITIVE / 4.0, 0.0]),
            Err(Error::ZeroVector)
        );
    }

    #[test]
    fn new_rejects_unnormalized() {
        assert!(matches!(
            StateVector::new(vec![1.0, 1.0]),
            Err(Error::NotNormalized { .. })
        ));
        assert!(StateVector::new(vec![0.6, 0.8]).is_ok());
        assert!(StateVector::new(vec![1.0 + 5e-10, 0.0]).is_ok());
    }

    #[test]
    fn uniform_state_examples() {
        assert_eq!(uniform_state(4).unwrap().amplitudes(), &[0.5; 4]);
        let sv = uniform_state(8).unwrap();
        for &a in sv.amplitudes() {
            assert!(close(a, 0.353_553_390_593_273_8, 1e-15));
        }
        for n in [2, 4, 8, 16] {
            let r = amplitude_variance(&uniform_state(n).unwrap()).unwrap();
            assert!(r.variance.abs() < 1e-15);
        }
        assert_eq!(uniform_state(1), Err(Error::DimensionTooSmall(1)));
    }

    #[test]
    fn variance_examples() {
        let r = amplitude_variance(&uniform_state(8).unwrap()).unwrap();
        assert!(r.variance < 1e-15 && r.ratio < 1e-14);

        let r = amplitude_variance(&StateVector::new(vec![1.0, 0.0]).unwrap()).unwrap();
        assert!(close(r.variance, 0.25, 1e-15));
        assert_eq!(r.max_variance, 0.5);
        assert!(close(r.ratio, 0.5, 1e-15));

        let mut basis = vec![0.0; 8];
        basis[0] = 1.0;
        let r = amplitude_variance(&StateVector::new(basis).unwrap()).unwrap();
        assert!(close(r.variance, 0.109_375, 1e-15));
        assert!(close(r.ratio, 0.875, 1e-15));
    }

    #[test]
    fn max_variance_examples() {
        assert_eq!(max_variance(8).unwrap(), 0.125);
        assert_eq!(max_variance(4).unwrap(), 0.25);
        assert_eq!(max_variance(2).unwrap(), 0.5);
        assert!(max_variance(0).is_err());
    }

    #[test]
    fn markov_bound_examples() {
        assert!(close(markov_bound(8, 0.125).unwrap(), 0.5, 1e-15));
        assert!(close(markov_bound(16, 1.0 / 16.0).unwrap(), 0.5, 1e-15));
        assert!(markov_bound(4, 1e-15).unwrap() > 1.0 - 1e-12);
        assert_eq!(markov_bound(4, 0.0), Err(Error::InvalidEpsilon(0.0)));
        assert_eq!(markov_bound(4, -1.0), Err(Error::InvalidEpsilon(-1.0)));
    }

    #[test]
    fn exceedance_examples() {
        let mut basis = vec![0.0; 8];
        basis[0] = 1.0;
        let sv = StateVector::new(basis).unwrap();
        assert_eq!(empirical_exceedance(&sv, 0.125).unwrap(), 0.125);

        let u = uniform_state(8).unwrap();
        for eps in [1e-12, 0.01, 0.5] {
            assert_eq!(empirical_exceedance(&u, eps).unwrap(), 0.0);
        }

        let sv = StateVector::new(vec![0.6, 0.8]).unwrap();
        assert_eq!(empirical_exceedance(&sv, 0.1).unwrap(), 0.5);
        assert!(empirical_exceedance(&sv, 0.0).is_err());
    }

    #[test]
    fn serde_as_flat_array() {
        let sv = StateVector::new(vec![0.6, 0.8]).unwrap();
        let json = serde_json::to_string(&sv).unwrap();
        assert_eq!(json, "[0.6,0.8]");
        let back: StateVector = serde_json::from_str(&json).unwrap();
        assert_eq!(back, sv);
        assert!(serde_json::from_str::<StateVector>("[1.0,1.0]").is_err());
    }
}
