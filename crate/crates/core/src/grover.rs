//! Grover iteration on a real register: oracle sign flip, reflection about
//! the mean, iteration schedules and traced runs.

use std::f64::consts::FRAC_PI_4;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::statevector::{check_dimension, StateVector, NORM_TOLERANCE};

/// Rule that picks the number of Grover iterations for a register of size `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "k")]
pub enum IterationSchedule {
    /// `round(sqrt(N))`, halves rounded up. For `N = 8` this is 3.
    PaperSqrtRounded,
    /// `max(1, floor(pi/4 * sqrt(N)))`, the usual optimal count.
    StandardFloorPiOver4,
    /// Exactly `k` iterations. `Fixed(0)` leaves the state untouched.
    Fixed(usize),
}

impl IterationSchedule {
    pub fn iterations(self, n: usize) -> Result<usize> {
        iteration_count(n, self)
    }
}

impl fmt::Display for IterationSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IterationSchedule::PaperSqrtRounded => f.write_str("paper"),
            IterationSchedule::StandardFloorPiOver4 => f.write_str("standard"),
            IterationSchedule::Fixed(k) => write!(f, "fixed:{k}"),
        }
    }
}

impl FromStr for IterationSchedule {
    type Err = Error;

    /// Accepts `paper`, `standard` or `fixed:<k>`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "paper" => Ok(IterationSchedule::PaperSqrtRounded),
            "standard" => Ok(IterationSchedule::StandardFloorPiOver4),
            other => other
                .strip_prefix("fixed:")
                .and_then(|k| k.parse().ok())
                .map(IterationSchedule::Fixed)
                .ok_or_else(|| {
                    Error::InvalidConfig(format!(
                        "unknown schedule {other:?}, expected paper, standard or fixed:<k>"
                    ))
                }),
        }
    }
}

/// Problem size, marked item and schedule for one search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGroverConfig")]
pub struct GroverConfig {
    n: usize,
    marked: usize,
    schedule: IterationSchedule,
}

#[derive(Deserialize)]
struct RawGroverConfig {
    n: usize,
    marked: usize,
    schedule: IterationSchedule,
}

impl TryFrom<RawGroverConfig> for GroverConfig {
    type Error = Error;

    fn try_from(raw: RawGroverConfig) -> Result<Self> {
        GroverConfig::new(raw.n, raw.marked, raw.schedule)
    }
}

impl GroverConfig {
    /// Index searched for when none is given: the second element.
    pub const DEFAULT_MARKED: usize = 1;

    pub fn new(n: usize, marked: usize, schedule: IterationSchedule) -> Result<Self> {
        check_dimension(n)?;
        if marked >= n {
            return Err(Error::IndexOutOfRange { index: marked, n });
        }
        Ok(Self {
            n,
            marked,
            schedule,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn marked(&self) -> usize {
        self.marked
    }

    pub fn schedule(&self) -> IterationSchedule {
        self.schedule
    }

    pub fn iterations(&self) -> usize {
        // n was validated in the constructor.
        resolve(self.n, self.schedule)
    }
}

/// Outcome of a full search.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunResult {
    pub final_state: StateVector,
    /// Marked amplitude before the first iteration and after each one.
    pub trace: Vec<f64>,
    /// `|a_marked|` of the final state.
    pub success_amplitude: f64,
    /// `a_marked^2` of the final state.
    pub success_probability: f64,
    pub iterations: usize,
}

/// Explicit `N x N` diffusion matrix, row-major.
///
/// Off-diagonal entries are `2/N`, diagonal entries `2/N - 1`. Needs `N^2`
/// doubles, so it's meant for checking [`apply_diffusion`], not for runs.
pub fn build_diffusion_matrix(n: usize) -> Result<Vec<Vec<f64>>> {
    check_dimension(n)?;
    let off = 2.0 / n as f64;
    let diag = -1.0 + off;
    Ok((0..n)
        .map(|i| (0..n).map(|j| if i == j { diag } else { off }).collect())
        .collect())
}

/// Flips the sign of the marked amplitude.
pub fn apply_oracle(sv: &StateVector, marked: usize) -> Result<StateVector> {
    let n = sv.dim();
    if marked >= n {
        return Err(Error::IndexOutOfRange { index: marked, n });
    }
    let mut amps = sv.amplitudes().to_vec();
    amps[marked] = -amps[marked];
    Ok(StateVector::from_raw(amps))
}

/// Reflects every amplitude about the mean: `a_i -> 2*mean - a_i`.
///
/// Same result as multiplying by [`build_diffusion_matrix`] in `O(N)`.
pub fn apply_diffusion(sv: &StateVector) -> StateVector {
    let amps = sv.amplitudes();
    let twice_mean = 2.0 * amps.iter().sum::<f64>() / amps.len() as f64;
    StateVector::from_raw(amps.iter().map(|a| twice_mean - a).collect())
}

/// One Grover step: oracle, then diffusion.
pub fn grover_iterate(sv: &StateVector, marked: usize) -> Result<StateVector> {
    Ok(apply_diffusion(&apply_oracle(sv, marked)?))
}

/// Resolves a schedule to an iteration count.
pub fn iteration_count(n: usize, schedule: IterationSchedule) -> Result<usize> {
    check_dimension(n)?;
    Ok(resolve(n, schedule))
}

fn resolve(n: usize, schedule: IterationSchedule) -> usize {
    let root = (n as f64).sqrt();
    match schedule {
        IterationSchedule::PaperSqrtRounded => (root + 0.5).floor() as usize,
        IterationSchedule::StandardFloorPiOver4 => ((FRAC_PI_4 * root).floor() as usize).max(1),
        IterationSchedule::Fixed(k) => k,
    }
}

/// Runs the configured number of Grover iterations from `initial`.
///
/// The state is never renormalized along the way. If the norm moves by more
/// than [`NORM_TOLERANCE`] the run fails with [`Error::NumericalDrift`].
pub fn run(config: &GroverConfig, initial: &StateVector) -> Result<RunResult> {
    if initial.dim() != config.n {
        return Err(Error::DimensionMismatch {
            expected: config.n,
            actual: initial.dim(),
        });
    }
    let k = config.iterations();
    let marked = config.marked;
    let start_norm = initial.norm();

    let mut state = initial.clone();
    let mut trace = Vec::with_capacity(k + 1);
    trace.push(state.amplitudes()[marked]);
    for _ in 0..k {
        state = grover_iterate(&state, marked)?;
        trace.push(state.amplitudes()[marked]);
    }

    let drift = (state.norm() - start_norm).abs();
    if drift > NORM_TOLERANCE {
        return Err(Error::NumericalDrift { drift });
    }
    let a = state.amplitudes()[marked];
    Ok(RunResult {
        final_state: state,
        trace,
        success_amplitude: a.abs(),
        success_probability: a * a,
        iterations: k,
    })
}

/// Success amplitude and probability after `k` iterations from the uniform
/// state, from the rotation picture: `sin((2k+1) * asin(1/sqrt(N)))`.
///
/// Independent of the simulator, so tests use it as a reference.
pub fn closed_form_success(n: usize, k: usize) -> Result<(f64, f64)> {
    check_dimension(n)?;
    let theta = (1.0 / (n as f64).sqrt()).asin();
    let amplitude = ((2 * k + 1) as f64 * theta).sin();
    Ok((amplitude, amplitude * amplitude))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevector::uniform_state;

    fn sv(v: &[f64]) -> StateVector {
        StateVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn diffusion_matrix_examples() {
        let m = build_diffusion_matrix(8).unwrap();
        for (i, row) in m.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                assert_eq!(x, if i == j { -0.75 } else { 0.25 });
            }
        }
        assert_eq!(
            build_diffusion_matrix(2).unwrap(),
            vec![vec![0.0, 1.0], vec![1.0, 0.0]]
        );
        let m = build_diffusion_matrix(4).unwrap();
        assert_eq!(m[0], vec![-0.5, 0.5, 0.5, 0.5]);
        assert_eq!(build_diffusion_matrix(1), Err(Error::DimensionTooSmall(1)));
    }

    #[test]
    fn oracle_examples() {
        let u = uniform_state(4).unwrap();
        let flipped = apply_oracle(&u, 1).unwrap();
        assert_eq!(flipped.amplitudes(), &[0.5, -0.5, 0.5, 0.5]);
        assert_eq!(apply_oracle(&flipped, 1).unwrap(), u);

        let e1 = sv(&[0.0, 1.0, 0.0, 0.0]);
        assert_eq!(apply_oracle(&e1, 0).unwrap().amplitudes(), e1.amplitudes());
        assert_eq!(
            apply_oracle(&e1, 4),
            Err(Error::IndexOutOfRange { index: 4, n: 4 })
        );
    }

    #[test]
    fn diffusion_examples() {
        let out = apply_diffusion(&sv(&[0.5, -0.5, 0.5, 0.5]));
        assert_eq!(out.amplitudes(), &[0.0, 1.0, 0.0, 0.0]);

        for n in [2, 3, 8, 64] {
            let u = uniform_state(n).unwrap();
            let d = apply_diffusion(&u);
            for (a, b) in d.amplitudes().iter().zip(u.amplitudes()) {
                assert!((a - b).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn iterate_examples() {
        let out = grover_iterate(&uniform_state(4).unwrap(), 1).unwrap();
        assert_eq!(out.amplitudes(), &[0.0, 1.0, 0.0, 0.0]);

        let one = grover_iterate(&uniform_state(8).unwrap(), 1).unwrap();
        assert!((one.amplitudes()[1] - 0.883_883_476_483_184_4).abs() < 1e-12);
        assert!((one.amplitudes()[0] - 0.176_776_695_296_636_9).abs() < 1e-12);

        let two = grover_iterate(&one, 1).unwrap();
        assert!((two.amplitudes()[1] - 0.972_271_824_131_502_8).abs() < 1e-12);
        assert!((two.amplitudes()[0] + 0.088_388_347_648_318_4).abs() < 1e-12);
    }

    #[test]
    fn iteration_count_examples() {
        use IterationSchedule::*;
        assert_eq!(iteration_count(8, PaperSqrtRounded).unwrap(), 3);
        assert_eq!(iteration_count(16, PaperSqrtRounded).unwrap(), 4);
        assert_eq!(iteration_count(4, PaperSqrtRounded).unwrap(), 2);
        assert_eq!(iteration_count(8, StandardFloorPiOver4).unwrap(), 2);
        assert_eq!(iteration_count(32, StandardFloorPiOver4).unwrap(), 4);
        assert_eq!(iteration_count(2, StandardFloorPiOver4).unwrap(), 1);
        assert_eq!(iteration_count(8, Fixed(0)).unwrap(), 0);
        assert!(iteration_count(1, Fixed(3)).is_err());
    }

    #[test]
    fn schedule_parsing() {
        use IterationSchedule::*;
        for s in [PaperSqrtRounded, StandardFloorPiOver4, Fixed(0), Fixed(7)] {
            assert_eq!(s.to_string().parse::<IterationSchedule>().unwrap(), s);
        }
        assert!("fixed:".parse::<IterationSchedule>().is_err());
        assert!("fixed:-1".parse::<IterationSchedule>().is_err());
        assert!("optimal".parse::<IterationSchedule>().is_err());
    }

    #[test]
    fn run_examples() {
        let cfg = GroverConfig::new(4, 1, IterationSchedule::StandardFloorPiOver4).unwrap();
        let r = run(&cfg, &uniform_state(4).unwrap()).unwrap();
        assert_eq!(r.iterations, 1);
        assert!((r.success_amplitude - 1.0).abs() < 1e-12);
        assert!((r.success_probability - 1.0).abs() < 1e-12);
        assert_eq!(r.trace.len(), 2);

        let cfg = GroverConfig::new(8, 1, IterationSchedule::Fixed(2)).unwrap();
        let r = run(&cfg, &uniform_state(8).unwrap()).unwrap();
        assert!((r.success_amplitude - 0.972_271_824_131_502_8).abs() < 1e-12);
        assert!((r.success_probability - 0.945_312_5).abs() < 1e-12);

        let cfg = GroverConfig::new(8, 1, IterationSchedule::PaperSqrtRounded).unwrap();
        let r = run(&cfg, &uniform_state(8).unwrap()).unwrap();
        assert_eq!(r.iterations, 3);
        assert!((r.success_amplitude - 0.574_524_259_714_069_8).abs() < 1e-12);
        assert!((r.success_probability - 0.330_078_125).abs() < 1e-12);
    }

    #[test]
    fn run_rejects_mismatch() {
        let cfg = GroverConfig::new(8, 1, IterationSchedule::Fixed(1)).unwrap();
        assert_eq!(
            run(&cfg, &uniform_state(4).unwrap()),
            Err(Error::DimensionMismatch {
                expected: 8,
                actual: 4
            })
        );
        assert!(GroverConfig::new(4, 4, IterationSchedule::Fixed(1)).is_err());
        assert!(GroverConfig::new(1, 0, IterationSchedule::Fixed(1)).is_err());
    }

    #[test]
    fn closed_form_examples() {
        let (a, p) = closed_form_success(4, 1).unwrap();
        assert!((a - 1.0).abs() < 1e-15 && (p - 1.0).abs() < 1e-15);
        let (a, _) = closed_form_success(8, 2).unwrap();
        assert!((a - 0.972_271_824_131_502_8).abs() < 1e-12);
        let (a, _) = closed_form_success(32, 4).unwrap();
        assert!((a - 0.999_591_074_161_476_3).abs() < 1e-12);
    }

    #[test]
    fn config_deserialize_validates() {
        let ok: GroverConfig =
            serde_json::from_str(r#"{"n":8,"marked":1,"schedule":{"kind":"fixed","k":2}}"#)
                .unwrap();
        assert_eq!(ok.iterations(), 2);
        assert!(serde_json::from_str::<GroverConfig>(
            r#"{"n":8,"marked":9,"schedule":{"kind":"standard_floor_pi_over4"}}"#
        )
        .is_err());
    }
}
