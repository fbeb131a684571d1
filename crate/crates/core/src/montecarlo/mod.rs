//! Deterministic parallel ensemble driver.
//!
//! Realization `i` is drawn from a substream that depends only on
//! `(master_seed, i)`. Each realization is reduced to a small record of
//! output probabilities; every per-state estimate is a function of those
//! records, so one set of realizations serves any number of input states.
//! Records are gathered in index order and reduced in fixed-size chunks, which
//! makes the estimates independent of the number of workers.

mod accumulator;
mod jackknife;

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use accumulator::MomentAccumulator;
pub use jackknife::jackknife;

use crate::analytics::{self, PredictionPoint, Quantity};
use crate::moments::OutputProbabilities;
use crate::scattering::{Ensemble, EnsembleKind, EnsembleSpec, ScatteringError, SliceCalibration};
use crate::state::InputState;
use crate::UNITARITY_GATE;

/// Largest tolerated fraction of realizations failing the unitarity gate.
pub const MAX_REJECTED_FRACTION: f64 = 0.01;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MonteCarloError {
    #[error(transparent)]
    Scattering(#[from] ScatteringError),
    #[error("input mode {index} out of range for {n_modes} modes")]
    InvalidInputMode { index: usize, n_modes: usize },
    #[error("probe pair ({0}, {1}) is invalid: modes must differ and lie below {2}")]
    InvalidPair(usize, usize, usize),
    #[error("no probe pairs: need at least one pair of distinct output modes")]
    NoPairs,
    #[error("ensemble quality: {rejected} of {attempted} realizations failed the unitarity gate")]
    EnsembleQuality { rejected: u64, attempted: u64 },
    #[error("result holds no realizations")]
    EmptyResult,
    #[error("could not start worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunOptions {
    /// Worker threads; `None` uses every available core.
    pub workers: Option<usize>,
    /// Realizations per reduction chunk. Part of the result's identity:
    /// changing it may change the last bits of the estimates.
    pub chunk_size: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            workers: None,
            chunk_size: 64,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub stderr: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairEstimate {
    pub b0: usize,
    pub b1: usize,
    pub value: f64,
    pub stderr: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleResult {
    pub spec_echo: EnsembleSpec,
    pub state_echo: InputState,
    pub input_mode: usize,
    pub probe_pairs: Vec<(usize, usize)>,
    pub estimates: BTreeMap<Quantity, Estimate>,
    /// Two-point correlation of each probe pair on its own.
    pub pair_correlations: Vec<PairEstimate>,
    /// `Var(T_a)/T̄_a²`.
    pub transmission_relative_variance: Estimate,
    pub analytic: Vec<PredictionPoint>,
    /// Conductance used for the analytic comparison; infinite (leading order)
    /// for the independent-eigenvalue ensemble.
    #[serde(serialize_with = "serialize_conductance")]
    pub analytic_conductance: f64,
    /// The ensemble is exact only at leading order in `1/g`, so its `c2` is
    /// reported without an analytic counterpart.
    pub leading_order_ensemble: bool,
    pub calibration: Option<SliceCalibration>,
    pub realizations: u64,
    pub rejected_realizations: u64,
    pub wall_time: f64,
}

fn serialize_conductance<S: serde::Serializer>(g: &f64, s: S) -> Result<S::Ok, S::Error> {
    if g.is_infinite() {
        s.serialize_str("inf")
    } else {
        s.serialize_f64(*g)
    }
}

impl EnsembleResult {
    pub fn estimate(&self, quantity: Quantity) -> Option<Estimate> {
        self.estimates.get(&quantity).copied()
    }

    pub fn analytic_value(&self, quantity: Quantity) -> Option<f64> {
        self.analytic.iter().find(|p| p.quantity == quantity).map(|p| p.value)
    }
}

/// One line of [`convergence_report`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReportRow {
    pub quantity: Quantity,
    pub value: f64,
    pub stderr: f64,
    pub analytic: Option<f64>,
    /// `(value − analytic)/stderr`.
    pub pull: Option<f64>,
}

/// Estimates next to their analytic counterparts, in quantity order.
pub fn convergence_report(result: &EnsembleResult) -> Result<Vec<ReportRow>, MonteCarloError> {
    if result.realizations == 0 {
        return Err(MonteCarloError::EmptyResult);
    }
    Ok(result
        .estimates
        .iter()
        .map(|(&quantity, e)| {
            let analytic = result.analytic_value(quantity);
            ReportRow {
                quantity,
                value: e.value,
                stderr: e.stderr,
                analytic,
                pull: analytic.map(|a| (e.value - a) / e.stderr),
            }
        })
        .collect())
}

/// `count` deterministic pairs of distinct output modes, none equal to
/// `input_mode`, spread over separations.
pub fn default_probe_pairs(n_modes: usize, input_mode: usize, count: usize) -> Vec<(usize, usize)> {
    let modes: Vec<usize> = (0..n_modes).filter(|&b| b != input_mode).collect();
    let m = modes.len();
    if m < 2 {
        return Vec::new();
    }
    let count = count.min(m * (m - 1) / 2);
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(count);
    let mut k = 0;
    while pairs.len() < count {
        let i = (k * m / count.max(1) + k / count.max(1)) % m;
        let sep = 1 + (k * (m - 1) / count.max(1) + k / count.max(1)) % (m - 1);
        let j = (i + sep) % m;
        let pair = (modes[i.min(j)], modes[i.max(j)]);
        if !pairs.contains(&pair) {
            pairs.push(pair);
        }
        k += 1;
    }
    pairs
}

/// Every pair of distinct output modes other than `input_mode`.
pub fn all_probe_pairs(n_modes: usize, input_mode: usize) -> Vec<(usize, usize)> {
    let modes: Vec<usize> = (0..n_modes).filter(|&b| b != input_mode).collect();
    let mut pairs = Vec::new();
    for (i, &b0) in modes.iter().enumerate() {
        for &b1 in &modes[i + 1..] {
            pairs.push((b0, b1));
        }
    }
    pairs
}

/// Per-realization reduction: `[T_a, R_a, Σ_b T_ab², (T_b0, T_b1) per pair]`.
type Record = Vec<f64>;

const FIXED_COLUMNS: usize = 3;

fn record(probabilities: &OutputProbabilities, pairs: &[(usize, usize)]) -> Record {
    let t = &probabilities.transmitted;
    let mut row = Vec::with_capacity(FIXED_COLUMNS + 2 * pairs.len());
    row.push(probabilities.transmitted_fraction());
    row.push(probabilities.reflected_fraction());
    row.push(t.iter().map(|x| x * x).sum());
    for &(b0, b1) in pairs {
        row.push(t[b0]);
        row.push(t[b1]);
    }
    row
}

/// Gated record of realization `index`, or `None` if it is rejected.
fn realize_record(ensemble: &Ensemble, index: u64, input_mode: usize, pairs: &[(usize, usize)]) -> Option<Record> {
    let s = ensemble.realize(index);
    let defect = s.unitarity_defect();
    if defect.is_nan() || defect > UNITARITY_GATE {
        return None;
    }
    Some(record(
        &OutputProbabilities::from_scattering_unchecked(&s, input_mode),
        pairs,
    ))
}

struct Sample {
    records: Vec<Record>,
    rejected: u64,
    calibration: Option<SliceCalibration>,
}

fn validate_pairs(n_modes: usize, pairs: &[(usize, usize)]) -> Result<(), MonteCarloError> {
    if pairs.is_empty() {
        return Err(MonteCarloError::NoPairs);
    }
    for &(b0, b1) in pairs {
        if b0 == b1 || b0 >= n_modes || b1 >= n_modes {
            return Err(MonteCarloError::InvalidPair(b0, b1, n_modes));
        }
    }
    Ok(())
}

fn with_pool<T: Send>(options: &RunOptions, job: impl FnOnce() -> T + Send) -> Result<T, MonteCarloError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = options.workers {
        builder = builder.num_threads(w.max(1));
    }
    let pool = builder.build().map_err(|e| MonteCarloError::Pool(e.to_string()))?;
    Ok(pool.install(job))
}

fn sample(
    spec: &EnsembleSpec,
    input_mode: usize,
    pairs: &[(usize, usize)],
    options: &RunOptions,
) -> Result<Sample, MonteCarloError> {
    spec.validate()?;
    if input_mode >= spec.n_modes {
        return Err(MonteCarloError::InvalidInputMode {
            index: input_mode,
            n_modes: spec.n_modes,
        });
    }
    validate_pairs(spec.n_modes, pairs)?;
    let ensemble = Ensemble::prepare(spec)?;
    let chunk = options.chunk_size.max(1) as u64;
    let wanted = spec.realizations;
    let budget = (MAX_REJECTED_FRACTION * wanted as f64).floor() as u64;

    let batch = |start: u64, end: u64| -> Vec<Option<Record>> {
        let starts: Vec<u64> = (start..end).step_by(chunk as usize).collect();
        let chunks: Vec<Vec<Option<Record>>> = starts
            .par_iter()
            .map(|&s| {
                (s..(s + chunk).min(end))
                    .map(|i| realize_record(&ensemble, i, input_mode, pairs))
                    .collect()
            })
            .collect();
        chunks.into_iter().flatten().collect()
    };

    with_pool(options, || {
        let mut records = Vec::with_capacity(wanted as usize);
        let mut rejected = 0u64;
        let mut next = 0u64;
        // Rejected indices are replaced by fresh ones past the nominal count.
        while (records.len() as u64) < wanted {
            let missing = wanted - records.len() as u64;
            let end = next + missing;
            for r in batch(next, end) {
                match r {
                    Some(r) => records.push(r),
                    None => rejected += 1,
                }
            }
            next = end;
            if rejected > budget {
                return Err(MonteCarloError::EnsembleQuality {
                    rejected,
                    attempted: next,
                });
            }
        }
        Ok(Sample {
            records,
            rejected,
            calibration: ensemble.calibration().copied(),
        })
    })?
}

/// Mean and standard error of `f(record)`, reduced chunk by chunk in order.
fn mean_estimate(records: &[Record], chunk: usize, f: impl Fn(&Record) -> f64) -> Estimate {
    let mut total = MomentAccumulator::new();
    for part in records.chunks(chunk.max(1)) {
        let partial: MomentAccumulator = part.iter().map(&f).collect();
        total.merge(&partial);
    }
    Estimate {
        value: total.mean(),
        stderr: total.standard_error(),
    }
}

fn jackknife_estimate(rows: &[Vec<f64>], stat: impl Fn(&[f64]) -> f64) -> Estimate {
    let (value, stderr) = jackknife(rows, stat);
    Estimate { value, stderr }
}

fn pair_slice(r: &Record) -> &[f64] {
    &r[FIXED_COLUMNS..]
}

/// `(mean_pairs T0·T1, mean_pairs (T0 + T1)/2)` of one record.
fn pair_moments(r: &Record) -> (f64, f64) {
    let p = pair_slice(r);
    let count = (p.len() / 2) as f64;
    let (mut prod, mut avg) = (0.0, 0.0);
    for t in p.chunks_exact(2) {
        prod += t[0] * t[1];
        avg += 0.5 * (t[0] + t[1]);
    }
    (prod / count, avg / count)
}

fn c2_estimate(records: &[Record]) -> Estimate {
    let rows: Vec<Vec<f64>> = records
        .iter()
        .map(|r| {
            let (prod, avg) = pair_moments(r);
            vec![prod, avg]
        })
        .collect();
    jackknife_estimate(&rows, |m| m[0] / (m[1] * m[1]) - 1.0)
}

fn relative_variance_estimate(records: &[Record]) -> Estimate {
    let n = records.len() as f64;
    let rows: Vec<Vec<f64>> = records.iter().map(|r| vec![r[0], r[0] * r[0]]).collect();
    // Sample variance from the leave-one-out means of x and x².
    jackknife_estimate(&rows, |m| {
        let var = (m[1] - m[0] * m[0]) * n / (n - 1.0);
        var / (m[0] * m[0])
    })
}

fn analytic_rows(spec: &EnsembleSpec, state: &InputState, g: f64) -> Vec<PredictionPoint> {
    let s = spec.ell_over_l;
    let point = |quantity, g: Option<f64>, value| PredictionPoint {
        quantity,
        state: *state,
        ell_over_l: Some(s),
        g,
        value,
    };
    let mut rows = vec![
        point(Quantity::MeanTotalTransmission, None, s),
        point(
            Quantity::TotalTransmissionVarianceRatio,
            Some(g),
            analytics::predict_total_transmission_variance(state, s, g).expect("validated spec"),
        ),
        point(Quantity::MeanTotalReflection, None, 1.0 - s),
        point(
            Quantity::TotalReflectionVarianceRatio,
            None,
            analytics::predict_total_reflection_variance(state, s).expect("validated spec"),
        ),
    ];
    if let Ok(c) = analytics::predict_two_point_correlation(state) {
        rows.push(PredictionPoint {
            ell_over_l: None,
            g: None,
            ..point(Quantity::TwoPointCorrelation, None, c)
        });
    }
    let (var, cross) = analytics::predict_mode_moments(state, s / spec.n_modes as f64, g).expect("validated spec");
    rows.push(point(Quantity::ModeVariance, Some(g), var));
    rows.push(point(Quantity::ModeCrossCovariance, Some(g), cross));
    if g.is_finite() {
        rows.push(point(Quantity::C2, Some(g), analytics::predict_c2(g).expect("g > 1")));
    }
    rows.sort_by_key(|p| p.quantity);
    rows
}

fn summarize(
    spec: &EnsembleSpec,
    state: &InputState,
    input_mode: usize,
    pairs: &[(usize, usize)],
    sample: &Sample,
    chunk: usize,
    wall_time: f64,
) -> EnsembleResult {
    let records = &sample.records;
    let n_modes = spec.n_modes as f64;
    let mu = state.mean_photons();
    let excess = state.fano_excess();
    let mut estimates = BTreeMap::new();

    estimates.insert(Quantity::MeanTotalTransmission, mean_estimate(records, chunk, |r| r[0]));
    estimates.insert(
        Quantity::TotalTransmissionVarianceRatio,
        mean_estimate(records, chunk, |r| r[0] + excess * r[0] * r[0]),
    );
    estimates.insert(Quantity::MeanTotalReflection, mean_estimate(records, chunk, |r| r[1]));
    estimates.insert(
        Quantity::TotalReflectionVarianceRatio,
        mean_estimate(records, chunk, |r| r[1] + excess * r[1] * r[1]),
    );
    estimates.insert(
        Quantity::ModeVariance,
        mean_estimate(records, chunk, |r| (r[0] + excess * r[2]) / n_modes),
    );
    estimates.insert(
        Quantity::ModeCrossCovariance,
        mean_estimate(records, chunk, |r| excess * pair_moments(r).0),
    );
    estimates.insert(Quantity::C2, c2_estimate(records));

    // Two-point correlation: mean numerator ⟨a†²a²⟩T0T1 over mean μ²T0T1.
    let factorial2 = state.factorial2();
    let mut pair_correlations = Vec::new();
    if mu > 0.0 {
        let pooled: Vec<Vec<f64>> = records
            .iter()
            .map(|r| {
                let prod = pair_moments(r).0;
                vec![factorial2 * prod, mu * mu * prod]
            })
            .collect();
        let pooled = jackknife_estimate(&pooled, |m| m[0] / m[1]);
        if pooled.value.is_finite() {
            estimates.insert(Quantity::TwoPointCorrelation, pooled);
        }
        for (k, &(b0, b1)) in pairs.iter().enumerate() {
            let rows: Vec<Vec<f64>> = records
                .iter()
                .map(|r| {
                    let p = pair_slice(r);
                    let prod = p[2 * k] * p[2 * k + 1];
                    vec![factorial2 * prod, mu * mu * prod]
                })
                .collect();
            let e = jackknife_estimate(&rows, |m| m[0] / m[1]);
            if e.value.is_finite() {
                pair_correlations.push(PairEstimate {
                    b0,
                    b1,
                    value: e.value,
                    stderr: e.stderr,
                });
            }
        }
    }

    let leading_order_ensemble = spec.kind == EnsembleKind::IndependentTau;
    let g = if leading_order_ensemble {
        f64::INFINITY
    } else {
        spec.conductance()
    };
    EnsembleResult {
        spec_echo: *spec,
        state_echo: *state,
        input_mode,
        probe_pairs: pairs.to_vec(),
        estimates,
        pair_correlations,
        transmission_relative_variance: relative_variance_estimate(records),
        analytic: analytic_rows(spec, state, g),
        analytic_conductance: g,
        leading_order_ensemble,
        calibration: sample.calibration,
        realizations: records.len() as u64,
        rejected_realizations: sample.rejected,
        wall_time,
    }
}

/// Runs the ensemble once and summarizes it for each of `states`.
pub fn run_ensemble_states(
    spec: &EnsembleSpec,
    states: &[InputState],
    input_mode: usize,
    probe_pairs: &[(usize, usize)],
    options: &RunOptions,
) -> Result<Vec<EnsembleResult>, MonteCarloError> {
    let started = Instant::now();
    let sample = sample(spec, input_mode, probe_pairs, options)?;
    let wall_time = started.elapsed().as_secs_f64();
    Ok(states
        .iter()
        .map(|state| {
            summarize(
                spec,
                state,
                input_mode,
                probe_pairs,
                &sample,
                options.chunk_size,
                wall_time,
            )
        })
        .collect())
}

pub fn run_ensemble(
    spec: &EnsembleSpec,
    state: &InputState,
    input_mode: usize,
    probe_pairs: &[(usize, usize)],
    options: &RunOptions,
) -> Result<EnsembleResult, MonteCarloError> {
    let mut results = run_ensemble_states(spec, std::slice::from_ref(state), input_mode, probe_pairs, options)?;
    Ok(results.remove(0))
}

/// `overline{T_ab0 T_ab1}/T̄² − 1` pooled over `probe_pairs`, with its
/// jackknife standard error. Input mode 0.
pub fn measure_c2(
    spec: &EnsembleSpec,
    probe_pairs: &[(usize, usize)],
    options: &RunOptions,
) -> Result<(f64, f64), MonteCarloError> {
    let sample = sample(spec, 0, probe_pairs, options)?;
    let e = c2_estimate(&sample.records);
    Ok((e.value, e.stderr))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: usize, s: f64, kind: EnsembleKind, count: u64) -> EnsembleSpec {
        EnsembleSpec::new(n, s, kind, count, 7)
    }

    #[test]
    fn default_pairs_are_distinct_and_avoid_the_input() {
        for (n, a) in [(32, 0), (16, 5), (64, 63), (4, 1)] {
            let pairs = default_probe_pairs(n, a, 8);
            let possible = (n - 1) * (n - 2) / 2;
            assert_eq!(pairs.len(), 8.min(possible));
            for (i, &(b0, b1)) in pairs.iter().enumerate() {
                assert!(b0 < b1 && b1 < n && b0 != a && b1 != a);
                assert!(!pairs[..i].contains(&(b0, b1)));
            }
        }
        let seps: std::collections::BTreeSet<usize> =
            default_probe_pairs(32, 0, 8).iter().map(|(x, y)| y - x).collect();
        assert!(seps.len() >= 4, "{seps:?}");
        assert!(default_probe_pairs(2, 0, 8).is_empty());
        assert_eq!(all_probe_pairs(5, 2).len(), 6);
    }

    #[test]
    fn argument_validation() {
        let o = RunOptions::default();
        let st = InputState::fock(1);
        let sp = spec(8, 0.5, EnsembleKind::IndependentTau, 10);
        assert!(matches!(
            run_ensemble(&sp, &st, 8, &[(0, 1)], &o),
            Err(MonteCarloError::InvalidInputMode { .. })
        ));
        assert!(matches!(
            run_ensemble(&sp, &st, 0, &[(1, 1)], &o),
            Err(MonteCarloError::InvalidPair(1, 1, 8))
        ));
        assert!(matches!(
            run_ensemble(&sp, &st, 0, &[], &o),
            Err(MonteCarloError::NoPairs)
        ));
        let bad = spec(8, 0.1, EnsembleKind::IndependentTau, 10);
        assert!(matches!(
            run_ensemble(&bad, &st, 0, &[(0, 1)], &o),
            Err(MonteCarloError::Scattering(_))
        ));
    }

    #[test]
    fn coherent_ratio_equals_mean_transmission() {
        let sp = spec(8, 0.5, EnsembleKind::IndependentTau, 300);
        let pairs = default_probe_pairs(8, 0, 8);
        let r = run_ensemble(
            &sp,
            &InputState::coherent(2.0).unwrap(),
            0,
            &pairs,
            &RunOptions::default(),
        )
        .unwrap();
        let mean = r.estimate(Quantity::MeanTotalTransmission).unwrap();
        let ratio = r.estimate(Quantity::TotalTransmissionVarianceRatio).unwrap();
        assert!((mean.value - ratio.value).abs() < 1e-12);
        let report = convergence_report(&r).unwrap();
        let pull = |q| report.iter().find(|row| row.quantity == q).unwrap().pull.unwrap();
        assert!((pull(Quantity::MeanTotalTransmission) - pull(Quantity::TotalTransmissionVarianceRatio)).abs() < 1e-9);
        assert_eq!(r.realizations, 300);
        assert_eq!(r.rejected_realizations, 0);
    }

    #[test]
    fn flux_is_conserved_on_average() {
        let sp = spec(6, 0.5, EnsembleKind::SliceComposition, 100);
        let r = run_ensemble(&sp, &InputState::fock(2), 1, &[(0, 2)], &RunOptions::default()).unwrap();
        let t = r.estimate(Quantity::MeanTotalTransmission).unwrap().value;
        let rf = r.estimate(Quantity::MeanTotalReflection).unwrap().value;
        assert!((t + rf - 1.0).abs() < 1e-10);
        assert!(r.calibration.is_some());
        assert!(!r.leading_order_ensemble);
        assert!(r.analytic_value(Quantity::C2).is_some());
    }

    #[test]
    fn two_point_correlation_is_exact_per_state() {
        let sp = spec(8, 0.5, EnsembleKind::IndependentTau, 200);
        let pairs = default_probe_pairs(8, 0, 8);
        let states = [
            InputState::thermal(0.5).unwrap(),
            InputState::fock(1),
            InputState::fock(3),
        ];
        let results = run_ensemble_states(&sp, &states, 0, &pairs, &RunOptions::default()).unwrap();
        for (state, r) in states.iter().zip(&results) {
            let c = r.estimate(Quantity::TwoPointCorrelation).unwrap();
            let expected = analytics::predict_two_point_correlation(state).unwrap();
            assert!((c.value - expected).abs() < 1e-12);
            assert_eq!(r.pair_correlations.len(), pairs.len());
        }
        let vac = run_ensemble(&sp, &InputState::vacuum(), 0, &pairs, &RunOptions::default()).unwrap();
        assert!(vac.estimate(Quantity::TwoPointCorrelation).is_none());
        assert!(vac.pair_correlations.is_empty());
    }

    #[test]
    fn results_do_not_depend_on_worker_count() {
        let sp = spec(6, 0.5, EnsembleKind::IndependentTau, 150);
        let pairs = default_probe_pairs(6, 0, 8);
        let st = InputState::thermal(1.0).unwrap();
        let one = RunOptions {
            workers: Some(1),
            ..RunOptions::default()
        };
        let four = RunOptions {
            workers: Some(4),
            ..RunOptions::default()
        };
        let a = run_ensemble(&sp, &st, 0, &pairs, &one).unwrap();
        let b = run_ensemble(&sp, &st, 0, &pairs, &four).unwrap();
        assert_eq!(a.estimates, b.estimates);
        assert_eq!(a.pair_correlations, b.pair_correlations);
    }

    #[test]
    fn standard_errors_scale_with_sample_size() {
        let st = InputState::thermal(1.0).unwrap();
        let pairs = default_probe_pairs(8, 0, 8);
        let se = |count| {
            let sp = spec(8, 0.5, EnsembleKind::IndependentTau, count);
            run_ensemble(&sp, &st, 0, &pairs, &RunOptions::default())
                .unwrap()
                .estimate(Quantity::TotalTransmissionVarianceRatio)
                .unwrap()
                .stderr
        };
        let ratio = se(1000) / se(4000);
        assert!((ratio - 2.0).abs() < 0.4, "ratio {ratio}");
    }

    #[test]
    fn empty_result_has_no_report() {
        let sp = spec(6, 0.5, EnsembleKind::IndependentTau, 20);
        let mut r = run_ensemble(&sp, &InputState::fock(1), 0, &[(1, 2)], &RunOptions::default()).unwrap();
        r.realizations = 0;
        assert_eq!(convergence_report(&r), Err(MonteCarloError::EmptyResult));
    }

    #[test]
    fn measure_c2_matches_the_result_field() {
        let sp = spec(8, 0.5, EnsembleKind::IndependentTau, 100);
        let pairs = all_probe_pairs(8, 0);
        let (c2, se) = measure_c2(&sp, &pairs, &RunOptions::default()).unwrap();
        let r = run_ensemble(&sp, &InputState::fock(1), 0, &pairs, &RunOptions::default()).unwrap();
        assert_eq!(r.estimate(Quantity::C2).unwrap(), Estimate { value: c2, stderr: se });
        assert!(r.analytic_value(Quantity::C2).is_none());
    }
}
