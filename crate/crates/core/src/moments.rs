//! Exact photon-number moments of the outputs for one realization.
//!
//! With a single occupied input mode `a` (all other inputs in vacuum) the
//! normally ordered output moments reduce to the input moments times products
//! of output probabilities `p_k = |S_{ka}|²`:
//!
//! ```text
//!     ⟨n_k⟩         = μ p_k
//!     ⟨n_k n_l⟩     = ⟨a†²a²⟩ p_k p_l            (k ≠ l)
//!     Δn_k²         = μ p_k + μ (F − 1) p_k²
//!     cov(n_k, n_l) = μ (F − 1) p_k p_l          (k ≠ l)
//! ```
//!
//! and any group of outputs with total probability `P` behaves like a single
//! output with `p = P`.

use thiserror::Error;

use crate::linalg::abs2;
use crate::scattering::ScatteringMatrix;
use crate::state::InputState;
use crate::UNITARITY_GATE;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MomentError {
    #[error("mode index {index} out of range for {n_modes} modes")]
    IndexOutOfRange { index: usize, n_modes: usize },
    #[error("output modes must differ (got {0} twice); use the single-mode variance instead")]
    SameMode(usize),
    #[error("realization rejected: unitarity defect {defect:e} exceeds {gate:e}")]
    NonUnitary { defect: f64, gate: f64 },
}

/// Output probabilities of one realization for light entering in mode `a`.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputProbabilities {
    pub input_mode: usize,
    /// `T_ab` for every right-side output `b`.
    pub transmitted: Vec<f64>,
    /// `|r′_{a′a}|²` for every left-side output `a′`.
    pub reflected: Vec<f64>,
}

impl OutputProbabilities {
    /// Applies the unitarity gate, then extracts column `a`.
    pub fn from_scattering(s: &ScatteringMatrix, a: usize) -> Result<Self, MomentError> {
        check_index(s, a)?;
        let defect = s.unitarity_defect();
        if defect.is_nan() || defect > UNITARITY_GATE {
            return Err(MomentError::NonUnitary {
                defect,
                gate: UNITARITY_GATE,
            });
        }
        Ok(Self::from_scattering_unchecked(s, a))
    }

    /// Same as [`Self::from_scattering`] without the unitarity gate; the
    /// caller has already checked the realization.
    pub fn from_scattering_unchecked(s: &ScatteringMatrix, a: usize) -> Self {
        let n = s.n_modes();
        OutputProbabilities {
            input_mode: a,
            transmitted: (0..n).map(|b| abs2(s.t()[(b, a)])).collect(),
            reflected: (0..n).map(|k| abs2(s.r_prime()[(k, a)])).collect(),
        }
    }

    pub fn n_modes(&self) -> usize {
        self.transmitted.len()
    }

    /// `T_a = Σ_b T_ab`.
    pub fn transmitted_fraction(&self) -> f64 {
        self.transmitted.iter().sum()
    }

    /// `R_a`, summed directly rather than taken as `1 − T_a`.
    pub fn reflected_fraction(&self) -> f64 {
        self.reflected.iter().sum()
    }
}

/// Mean count of an output (or group of outputs) with probability `p`.
pub fn mean_for(state: &InputState, p: f64) -> f64 {
    state.mean_photons() * p
}

/// Count variance of an output (or group of outputs) with probability `p`.
pub fn variance_for(state: &InputState, p: f64) -> f64 {
    let mu = state.mean_photons();
    mu * p + mu * state.fano_excess() * p * p
}

/// Covariance of two distinct outputs with probabilities `p0`, `p1`.
pub fn covariance_for(state: &InputState, p0: f64, p1: f64) -> f64 {
    state.mean_photons() * state.fano_excess() * p0 * p1
}

/// `⟨n_{b0} n_{b1}⟩` of two distinct outputs.
pub fn joint_moment_for(state: &InputState, p0: f64, p1: f64) -> f64 {
    state.factorial2() * p0 * p1
}

fn check_index(s: &ScatteringMatrix, index: usize) -> Result<(), MomentError> {
    if index >= s.n_modes() {
        return Err(MomentError::IndexOutOfRange {
            index,
            n_modes: s.n_modes(),
        });
    }
    Ok(())
}

fn gated(s: &ScatteringMatrix, a: usize, outputs: &[usize]) -> Result<OutputProbabilities, MomentError> {
    for &b in outputs {
        check_index(s, b)?;
    }
    OutputProbabilities::from_scattering(s, a)
}

fn distinct(b0: usize, b1: usize) -> Result<(), MomentError> {
    if b0 == b1 {
        return Err(MomentError::SameMode(b0));
    }
    Ok(())
}

/// `⟨n_b⟩ = μ T_ab`.
pub fn mode_mean(s: &ScatteringMatrix, a: usize, b: usize, state: &InputState) -> Result<f64, MomentError> {
    let p = gated(s, a, &[b])?;
    Ok(mean_for(state, p.transmitted[b]))
}

/// `Δn_b² = μ T_ab + μ (F − 1) T_ab²`.
pub fn mode_variance(s: &ScatteringMatrix, a: usize, b: usize, state: &InputState) -> Result<f64, MomentError> {
    let p = gated(s, a, &[b])?;
    Ok(variance_for(state, p.transmitted[b]))
}

/// `cov(n_{b0}, n_{b1}) = μ (F − 1) T_{ab0} T_{ab1}` for `b0 ≠ b1`.
pub fn mode_cross_covariance(
    s: &ScatteringMatrix,
    a: usize,
    b0: usize,
    b1: usize,
    state: &InputState,
) -> Result<f64, MomentError> {
    distinct(b0, b1)?;
    let p = gated(s, a, &[b0, b1])?;
    Ok(covariance_for(state, p.transmitted[b0], p.transmitted[b1]))
}

/// Mean and variance of the total transmitted photon number.
pub fn total_transmission_stats(s: &ScatteringMatrix, a: usize, state: &InputState) -> Result<(f64, f64), MomentError> {
    let t_a = gated(s, a, &[])?.transmitted_fraction();
    Ok((mean_for(state, t_a), variance_for(state, t_a)))
}

/// Mean and variance of the total reflected photon number.
pub fn total_reflection_stats(s: &ScatteringMatrix, a: usize, state: &InputState) -> Result<(f64, f64), MomentError> {
    let r_a = gated(s, a, &[])?.reflected_fraction();
    Ok((mean_for(state, r_a), variance_for(state, r_a)))
}

/// `⟨n_{b0} n_{b1}⟩ = ⟨a†²a²⟩ T_{ab0} T_{ab1}`, the numerator of the
/// two-point correlation.
pub fn two_point_numerator(
    s: &ScatteringMatrix,
    a: usize,
    b0: usize,
    b1: usize,
    state: &InputState,
) -> Result<f64, MomentError> {
    distinct(b0, b1)?;
    let p = gated(s, a, &[b0, b1])?;
    Ok(joint_moment_for(state, p.transmitted[b0], p.transmitted[b1]))
}

/// All per-realization moments for one input mode and state.
#[derive(Debug, Clone, PartialEq)]
pub struct RealizationStatistics {
    pub mode_means: Vec<f64>,
    pub mode_variances: Vec<f64>,
    pub total_transmission_mean: f64,
    pub total_transmission_variance: f64,
    pub total_reflection_mean: f64,
    pub total_reflection_variance: f64,
    pub transmitted_fraction: f64,
    pub reflected_fraction: f64,
}

impl RealizationStatistics {
    pub fn compute(s: &ScatteringMatrix, a: usize, state: &InputState) -> Result<Self, MomentError> {
        Ok(Self::from_probabilities(
            &OutputProbabilities::from_scattering(s, a)?,
            state,
        ))
    }

    pub fn from_probabilities(p: &OutputProbabilities, state: &InputState) -> Self {
        let t_a = p.transmitted_fraction();
        let r_a = p.reflected_fraction();
        RealizationStatistics {
            mode_means: p.transmitted.iter().map(|&x| mean_for(state, x)).collect(),
            mode_variances: p.transmitted.iter().map(|&x| variance_for(state, x)).collect(),
            total_transmission_mean: mean_for(state, t_a),
            total_transmission_variance: variance_for(state, t_a),
            total_reflection_mean: mean_for(state, r_a),
            total_reflection_variance: variance_for(state, r_a),
            transmitted_fraction: t_a,
            reflected_fraction: r_a,
        }
    }
}
