//! Closed-form disorder-averaged predictions and the figure sweep tables.
//!
//! Conductance arguments are `f64` with `f64::INFINITY` meaning leading order
//! in `1/g`. `ℓ/L` may be anywhere in `[0, 1]`; `0` is the thick-sample limit.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::state::InputState;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalyticsError {
    #[error("g = {0} is outside the diffusive regime (must exceed 1)")]
    OutOfValidity(f64),
    #[error("invalid {name} = {value}: must lie in [0, 1]")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("two-point correlation is undefined for the vacuum")]
    UndefinedCorrelation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    MeanTotalTransmission,
    TotalTransmissionVarianceRatio,
    MeanTotalReflection,
    TotalReflectionVarianceRatio,
    TwoPointCorrelation,
    ModeVariance,
    ModeCrossCovariance,
    C2,
}

impl Quantity {
    pub fn as_str(self) -> &'static str {
        match self {
            Quantity::MeanTotalTransmission => "mean_total_transmission",
            Quantity::TotalTransmissionVarianceRatio => "total_transmission_variance_ratio",
            Quantity::MeanTotalReflection => "mean_total_reflection",
            Quantity::TotalReflectionVarianceRatio => "total_reflection_variance_ratio",
            Quantity::TwoPointCorrelation => "two_point_correlation",
            Quantity::ModeVariance => "mode_variance",
            Quantity::ModeCrossCovariance => "mode_cross_covariance",
            Quantity::C2 => "c2",
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One row of a prediction table. `None` marks a parameter the quantity does
/// not depend on; `g = Some(∞)` is leading order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PredictionPoint {
    pub quantity: Quantity,
    pub state: InputState,
    #[serde(rename = "ell_over_L")]
    pub ell_over_l: Option<f64>,
    #[serde(serialize_with = "serialize_conductance")]
    pub g: Option<f64>,
    pub value: f64,
}

fn serialize_conductance<S: serde::Serializer>(g: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match g {
        Some(x) if x.is_infinite() => s.serialize_str("inf"),
        Some(x) => s.serialize_f64(*x),
        None => s.serialize_none(),
    }
}

fn check_fraction(name: &'static str, value: f64) -> Result<(), AnalyticsError> {
    if !(0.0..=1.0).contains(&value) {
        return Err(AnalyticsError::InvalidParameter { name, value });
    }
    Ok(())
}

fn check_conductance(g: f64) -> Result<(), AnalyticsError> {
    if g.is_nan() || g <= 1.0 {
        return Err(AnalyticsError::OutOfValidity(g));
    }
    Ok(())
}

/// `Δn_T²/μ = ℓ/L + (ℓ/L)²(F − 1)[1 + (4/3 + ℓ/L)/g]`.
pub fn predict_total_transmission_variance(state: &InputState, ell_over_l: f64, g: f64) -> Result<f64, AnalyticsError> {
    check_fraction("ell_over_L", ell_over_l)?;
    check_conductance(g)?;
    let s = ell_over_l;
    let bracket = 1.0 + (4.0 / 3.0 + s) / g;
    Ok(s + s * s * state.fano_excess() * bracket)
}

/// `Δn_R²/μ = (1 − ℓ/L) + (1 − ℓ/L)²(F − 1)`, without `1/g` terms.
pub fn predict_total_reflection_variance(state: &InputState, ell_over_l: f64) -> Result<f64, AnalyticsError> {
    check_fraction("ell_over_L", ell_over_l)?;
    let r = 1.0 - ell_over_l;
    Ok(r + r * r * state.fano_excess())
}

/// `C = 1 + (F − 1)/μ`, exact at every order in `1/g`.
pub fn predict_two_point_correlation(state: &InputState) -> Result<f64, AnalyticsError> {
    if state.is_vacuum() {
        return Err(AnalyticsError::UndefinedCorrelation);
    }
    Ok(1.0 + state.fano_excess() / state.mean_photons())
}

/// Per-mode variance and cross-covariance, both divided by `μ`:
/// `(T̄ + T̄²(F − 1)(2 + 8/3g), T̄²(F − 1)(1 + 4/3g))`.
pub fn predict_mode_moments(state: &InputState, mean_t: f64, g: f64) -> Result<(f64, f64), AnalyticsError> {
    check_fraction("mean_T", mean_t)?;
    check_conductance(g)?;
    let excess = mean_t * mean_t * state.fano_excess();
    Ok((
        mean_t + excess * (2.0 + 8.0 / (3.0 * g)),
        excess * (1.0 + 4.0 / (3.0 * g)),
    ))
}

/// Long-range intensity correlation `C2 = 4/3g` at first order.
pub fn predict_c2(g: f64) -> Result<f64, AnalyticsError> {
    check_conductance(g)?;
    Ok(4.0 / (3.0 * g))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Figure {
    Fig2Reflection,
    Fig2Transmission,
    Fig3,
    Fig4,
}

impl Figure {
    pub const ALL: [Figure; 4] = [
        Figure::Fig2Reflection,
        Figure::Fig2Transmission,
        Figure::Fig3,
        Figure::Fig4,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Figure::Fig2Reflection => "fig2-reflection",
            Figure::Fig2Transmission => "fig2-transmission",
            Figure::Fig3 => "fig3",
            Figure::Fig4 => "fig4",
        }
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Figure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "fig2-reflection" | "fig2r" => Ok(Figure::Fig2Reflection),
            "fig2-transmission" | "fig2t" => Ok(Figure::Fig2Transmission),
            "fig3" => Ok(Figure::Fig3),
            "fig4" => Ok(Figure::Fig4),
            other => Err(format!(
                "unknown figure `{other}` (expected fig2-reflection, fig2-transmission, fig3 or fig4)"
            )),
        }
    }
}

/// `ℓ/L` grid of the `fig2-*` sweeps: 0.00 to 1.00 in steps of 0.01.
pub fn fig2_grid() -> Vec<f64> {
    (0..=100).map(|k| f64::from(k) / 100.0).collect()
}

/// Mean photon grid of the `fig3` sweep: 50 log-spaced points from 0.1 to 10.
pub fn fig3_mean_grid() -> Vec<f64> {
    (0..50).map(|k| 10f64.powf(-1.0 + 2.0 * f64::from(k) / 49.0)).collect()
}

/// Fock photon numbers of the `fig3` sweep.
pub fn fig3_fock_grid() -> Vec<u32> {
    (1..=10).collect()
}

/// Conductance grid of the `fig4` sweep: 2 to 50.
pub fn fig4_grid() -> Vec<f64> {
    (2..=50).map(f64::from).collect()
}

pub const FIG4_ELL_OVER_L: f64 = 1.0 / 3.0;

/// Coherent, thermal and Fock states with one photon on average.
fn unit_states() -> [InputState; 3] {
    [
        InputState::coherent(1.0).expect("valid"),
        InputState::thermal(1.0).expect("valid"),
        InputState::fock(1),
    ]
}

/// Prediction rows behind one figure, grouped by state.
pub fn figure_sweep(which: Figure) -> Vec<PredictionPoint> {
    let mut rows = Vec::new();
    match which {
        Figure::Fig2Reflection => {
            for state in unit_states() {
                for s in fig2_grid() {
                    rows.push(PredictionPoint {
                        quantity: Quantity::TotalReflectionVarianceRatio,
                        state,
                        ell_over_l: Some(s),
                        g: None,
                        value: predict_total_reflection_variance(&state, s).expect("grid in range"),
                    });
                }
            }
        }
        Figure::Fig2Transmission => {
            for state in unit_states() {
                for s in fig2_grid() {
                    rows.push(PredictionPoint {
                        quantity: Quantity::TotalTransmissionVarianceRatio,
                        state,
                        ell_over_l: Some(s),
                        g: Some(f64::INFINITY),
                        value: predict_total_transmission_variance(&state, s, f64::INFINITY).expect("grid in range"),
                    });
                }
            }
        }
        Figure::Fig3 => {
            let states = fig3_mean_grid()
                .into_iter()
                .map(|m| InputState::coherent(m).expect("valid"))
                .chain(
                    fig3_mean_grid()
                        .into_iter()
                        .map(|m| InputState::thermal(m).expect("valid")),
                )
                .chain(fig3_fock_grid().into_iter().map(InputState::fock));
            for state in states {
                rows.push(PredictionPoint {
                    quantity: Quantity::TwoPointCorrelation,
                    state,
                    ell_over_l: None,
                    g: None,
                    value: predict_two_point_correlation(&state).expect("non-vacuum"),
                });
            }
        }
        Figure::Fig4 => {
            for state in unit_states() {
                for g in fig4_grid() {
                    rows.push(PredictionPoint {
                        quantity: Quantity::TotalTransmissionVarianceRatio,
                        state,
                        ell_over_l: Some(FIG4_ELL_OVER_L),
                        g: Some(g),
                        value: predict_total_transmission_variance(&state, FIG4_ELL_OVER_L, g).expect("grid in range"),
                    });
                }
            }
        }
    }
    rows
}
