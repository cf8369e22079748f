//! Grover search on a real-amplitude register, with a model of
//! initialization error.
//!
//! The register is a flat, normalized vector of `N` real amplitudes
//! ([`StateVector`]). Its amplitude variance measures how far it is from the
//! ideal uniform start; the largest possible value is `1/N`. The crate runs
//! Grover's search from arbitrary starts and relates that variance to the
//! chance of finding the marked item.
//!
//! ```
//! use grover_init::{run, uniform_state, GroverConfig, IterationSchedule};
//!
//! let config = GroverConfig::new(8, 1, IterationSchedule::StandardFloorPiOver4)?;
//! let result = run(&config, &uniform_state(8)?)?;
//! assert_eq!(result.iterations, 2);
//! assert!((result.success_amplitude - 0.97227).abs() < 1e-5);
//! # Ok::<(), grover_init::Error>(())
//! ```
//!
//! Modules:
//!
//! - [`statevector`]: normalization, variance, Markov bound.
//! - [`grover`]: oracle, diffusion, schedules, traced runs.
//! - [`ensembles`]: seeded random initial vectors.
//! - [`experiments`]: sweeps, the baseline table, the Markov experiment.
//! - [`regression`], [`report`], [`plot`]: fits, CSV/JSON and SVG output.

pub mod ensembles;
pub mod error;
pub mod experiments;
pub mod grover;
pub mod plot;
pub mod regression;
pub mod report;
pub mod statevector;

pub use ensembles::{sample, variance_profile, EnsembleSpec, Seed, VarianceProfile};
pub use error::{Error, Result};
pub use experiments::{
    markov_experiment, run_baseline, run_sweep, BaselineRow, MarkovRow, Metric, SampleRecord,
    SweepConfig, SweepSummary,
};
pub use grover::{
    apply_diffusion, apply_oracle, build_diffusion_matrix, closed_form_success, grover_iterate,
    iteration_count, run, GroverConfig, IterationSchedule, RunResult,
};
pub use regression::{linear_fit, RegressionFit};
pub use statevector::{
    amplitude_variance, empirical_exceedance, markov_bound, max_variance, normalize, uniform_state,
    StateVector, VarianceReport,
};
