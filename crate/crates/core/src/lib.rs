//! Quantum photon statistics of light transmitted and reflected by a
//! non-absorbing multiple-scattering medium.
//!
//! The crate is organised bottom-up:
//!
//! - [`state`]: single-mode input states (coherent, thermal, Fock) described
//!   by their photon-number moments.
//! - [`scattering`]: random scattering-matrix ensembles of a quasi-1D
//!   diffusive medium with `N` modes and a prescribed `ℓ/L`.
//! - [`moments`]: exact per-realization photon-number moments of all output
//!   modes for light injected in one input mode.
//! - [`oracle`]: a brute-force Fock-space oracle for small systems, used to
//!   cross-check [`moments`].
//! - [`analytics`]: closed-form disorder-averaged predictions and the sweep
//!   tables behind the standard figures.
//! - [`montecarlo`]: the deterministic, parallel ensemble driver.

pub mod analytics;
pub mod linalg;
pub mod moments;
pub mod montecarlo;
pub mod oracle;
pub mod rng;
pub mod scattering;
pub mod state;

pub use analytics::{PredictionPoint, Quantity};
pub use linalg::{c64, CMatrix};
pub use moments::{OutputProbabilities, RealizationStatistics};

pub use montecarlo::{EnsembleResult, Estimate, RunOptions};
pub use scattering::{EnsembleKind, EnsembleSpec, ScatteringMatrix};
pub use state::{InputState, StateKind};

/// Unitarity gate applied to every realization before its moments are used.
pub const UNITARITY_GATE: f64 = 1e-8;
