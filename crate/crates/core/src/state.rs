//! Single-mode input states described by their photon-number moments.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateKind {
    Coherent,
    Thermal,
    Fock,
}

impl StateKind {
    pub const ALL: [StateKind; 3] = [StateKind::Coherent, StateKind::Thermal, StateKind::Fock];

    pub fn as_str(self) -> &'static str {
        match self {
            StateKind::Coherent => "coherent",
            StateKind::Thermal => "thermal",
            StateKind::Fock => "fock",
        }
    }
}

impl fmt::Display for StateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for StateKind {
    type Err = StateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "coherent" | "cs" => Ok(StateKind::Coherent),
            "thermal" | "ts" => Ok(StateKind::Thermal),
            "fock" | "fs" | "number" => Ok(StateKind::Fock),
            other => Err(StateError::UnknownKind(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StateError {
    #[error("mean_photons must be finite and non-negative, got {0}")]
    NegativeMean(f64),
    #[error("a Fock state needs an integer photon number, got {0}")]
    NonIntegerFock(f64),
    #[error("unknown state kind `{0}` (expected coherent, thermal or fock)")]
    UnknownKind(String),
}

/// Photon-number moments `(⟨n⟩, ⟨n²⟩)` of a single-mode state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhotonMoments {
    pub mean: f64,
    pub second_moment: f64,
}

impl PhotonMoments {
    pub fn variance(&self) -> f64 {
        self.second_moment - self.mean * self.mean
    }

    /// Second factorial moment `⟨n(n−1)⟩ = ⟨a†² a²⟩`.
    pub fn factorial2(&self) -> f64 {
        self.second_moment - self.mean
    }
}

/// Quantum state injected into one input mode of the medium.
///
/// A zero mean photon number always normalizes to the coherent vacuum, so
/// every kind shares the same vacuum representation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawInputState", into = "RawInputState")]
pub struct InputState {
    kind: StateKind,
    mean_photons: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInputState {
    kind: StateKind,
    mean_photons: f64,
}

impl TryFrom<RawInputState> for InputState {
    type Error = StateError;

    fn try_from(raw: RawInputState) -> Result<Self, Self::Error> {
        InputState::new(raw.kind, raw.mean_photons)
    }
}

impl From<InputState> for RawInputState {
    fn from(s: InputState) -> Self {
        RawInputState {
            kind: s.kind,
            mean_photons: s.mean_photons,
        }
    }
}

impl InputState {
    pub fn new(kind: StateKind, mean_photons: f64) -> Result<Self, StateError> {
        if !mean_photons.is_finite() || mean_photons < 0.0 {
            return Err(StateError::NegativeMean(mean_photons));
        }
        if kind == StateKind::Fock && mean_photons.fract() != 0.0 {
            return Err(StateError::NonIntegerFock(mean_photons));
        }
        let kind = if mean_photons == 0.0 { StateKind::Coherent } else { kind };
        Ok(InputState { kind, mean_photons })
    }

    pub fn coherent(mean_photons: f64) -> Result<Self, StateError> {
        Self::new(StateKind::Coherent, mean_photons)
    }

    pub fn thermal(mean_photons: f64) -> Result<Self, StateError> {
        Self::new(StateKind::Thermal, mean_photons)
    }

    pub fn fock(photons: u32) -> Self {
        Self::new(StateKind::Fock, f64::from(photons)).expect("integer photon numbers are valid")
    }

    pub fn vacuum() -> Self {
        InputState {
            kind: StateKind::Coherent,
            mean_photons: 0.0,
        }
    }

    pub fn kind(&self) -> StateKind {
        self.kind
    }

    pub fn mean_photons(&self) -> f64 {
        self.mean_photons
    }

    pub fn is_vacuum(&self) -> bool {
        self.mean_photons == 0.0
    }

    /// Photon number of a Fock state.
    pub fn fock_photons(&self) -> Option<u32> {
        (self.kind == StateKind::Fock).then_some(self.mean_photons as u32)
    }

    /// Fano factor `Δn²/⟨n⟩`: 1 (coherent), `1 + ⟨n⟩` (thermal), 0 (Fock).
    pub fn fano(&self) -> f64 {
        match self.kind {
            StateKind::Coherent => 1.0,
            StateKind::Thermal => 1.0 + self.mean_photons,
            StateKind::Fock => 0.0,
        }
    }

    /// `F − 1`, computed without cancellation: 0, `⟨n⟩` and −1.
    pub fn fano_excess(&self) -> f64 {
        match self.kind {
            StateKind::Coherent => 0.0,
            StateKind::Thermal => self.mean_photons,
            StateKind::Fock => -1.0,
        }
    }

    pub fn photon_moments(&self) -> PhotonMoments {
        let mean = self.mean_photons;
        PhotonMoments {
            mean,
            second_moment: mean * mean + self.fano() * mean,
        }
    }

    /// `⟨a†² a²⟩ = ⟨n²⟩ − ⟨n⟩`, the only higher moment the output statistics need.
    pub fn factorial2(&self) -> f64 {
        self.photon_moments().factorial2()
    }

    /// Short label such as `thermal(1)` used in tables.
    pub fn label(&self) -> String {
        format!("{}({})", self.kind, self.mean_photons)
    }
}

impl fmt::Display for InputState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} state with ⟨n⟩ = {}", self.kind, self.mean_photons)
    }
}
