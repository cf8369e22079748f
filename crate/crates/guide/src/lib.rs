//! The guide under `book/`, compiled so that every Rust listing runs as a
//! doc-test. Read it with `mdbook serve book`.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/state-vectors.md")]
pub mod state_vectors {}

#[doc = include_str!("../../../book/src/markov.md")]
pub mod markov {}

#[doc = include_str!("../../../book/src/grover.md")]
pub mod grover {}

#[doc = include_str!("../../../book/src/baseline.md")]
pub mod baseline {}

#[doc = include_str!("../../../book/src/ensembles.md")]
pub mod ensembles {}

#[doc = include_str!("../../../book/src/sweeps.md")]
pub mod sweeps {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

#[doc = include_str!("../../../README.md")]
pub mod readme {}
