//! The four subcommands.

use qspeckle::analytics::{self, figure_sweep, PredictionPoint, Quantity};
use qspeckle::montecarlo::{self, default_probe_pairs, MonteCarloError};
use qspeckle::oracle::{oracle_moments, OracleConfig, OracleError, OracleQuery};
use qspeckle::scattering::{Ensemble, ScatteringError};
use qspeckle::{moments, InputState, RunOptions};
use thiserror::Error;

use crate::config::{ConfigError, EnsembleConfig, Format, RunConfig, SimulateConfig, Subcommand};
use crate::output::{self, OracleRow, OutputError, Row, ORACLE_HEADER, PREDICT_HEADER, SIMULATE_HEADER};

/// Probe pairs used when none are configured.
pub const DEFAULT_PAIR_COUNT: usize = 8;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Output(#[from] OutputError),
    #[error(transparent)]
    MonteCarlo(#[from] MonteCarloError),
    #[error(transparent)]
    Scattering(#[from] ScatteringError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("{0}")]
    Other(String),
}

impl CliError {
    /// Process exit code: 2 usage, 3 range, 4 I/O, 5 ensemble quality,
    /// 1 anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(ConfigError::Usage(_)) => 2,
            CliError::Config(ConfigError::Range { .. }) => 3,
            CliError::Config(ConfigError::Io { .. } | ConfigError::Parse { .. }) => 4,
            CliError::Output(OutputError::Io { .. }) => 4,
            CliError::MonteCarlo(MonteCarloError::EnsembleQuality { .. }) => 5,
            CliError::MonteCarlo(MonteCarloError::InvalidInputMode { .. } | MonteCarloError::InvalidPair(..)) => 3,
            CliError::Scattering(ScatteringError::InvalidParameter { .. }) => 3,
            _ => 1,
        }
    }
}

/// Renders the output document for `config` without writing it.
pub fn render(config: &RunConfig) -> Result<String, CliError> {
    match config.subcommand {
        Subcommand::Predict | Subcommand::Figure => {
            let rows = predictions(config)?;
            Ok(match config.format {
                Format::Csv => {
                    let rows: Vec<Row> = rows.into_iter().map(Row::Prediction).collect();
                    output::render_csv(config, &rows, PREDICT_HEADER)
                }
                Format::Json => output::render_json_predictions(config, &rows),
            })
        }
        Subcommand::Simulate => {
            let result = simulate(config)?;
            Ok(match config.format {
                Format::Csv => output::render_csv(config, &output::simulation_rows(&result)?, SIMULATE_HEADER),
                Format::Json => output::render_json_result(config, &result),
            })
        }
        Subcommand::Oracle => {
            let rows = oracle_rows(config)?;
            Ok(match config.format {
                Format::Csv => {
                    let rows: Vec<Row> = rows.into_iter().map(Row::Oracle).collect();
                    output::render_csv(config, &rows, ORACLE_HEADER)
                }
                Format::Json => output::render_json_oracle(config, &rows),
            })
        }
    }
}

/// Runs `config` and writes its output.
pub fn run(config: &RunConfig) -> Result<(), CliError> {
    let text = render(config)?;
    output::write_output(config.output_path.as_deref(), &text)?;
    Ok(())
}

/// `ℓ/L` grid used by `predict` when none is given: 0.01 to 1 in steps of 0.01.
pub fn default_ell_over_l_grid() -> Vec<f64> {
    (1..=100).map(|i| f64::from(i) / 100.0).collect()
}

/// Prediction rows. With a figure, its rows restricted to the configured
/// state's kind; otherwise a transmission, reflection and correlation sweep
/// for the configured state.
pub fn predictions(config: &RunConfig) -> Result<Vec<PredictionPoint>, CliError> {
    let sweep = config.sweep.clone().unwrap_or_default();
    if let Some(figure) = sweep.figure {
        let mut rows = figure_sweep(figure);
        if let Some(state) = &config.state {
            rows.retain(|p| p.state.kind() == state.kind());
        }
        return Ok(rows);
    }
    let state = config
        .state
        .ok_or_else(|| ConfigError::Usage("predict needs --state or --figure".into()))?;
    let grid = if sweep.ell_over_l.is_empty() {
        default_ell_over_l_grid()
    } else {
        sweep.ell_over_l.clone()
    };
    let conductances: Vec<f64> = if sweep.g.is_empty() {
        vec![f64::INFINITY]
    } else {
        sweep.g.iter().map(|g| g.0).collect()
    };
    let analytic = |e: analytics::AnalyticsError| CliError::Other(e.to_string());
    let mut rows = Vec::new();
    for &g in &conductances {
        for &s in &grid {
            rows.push(PredictionPoint {
                quantity: Quantity::TotalTransmissionVarianceRatio,
                state,
                ell_over_l: Some(s),
                g: Some(g),
                value: analytics::predict_total_transmission_variance(&state, s, g).map_err(analytic)?,
            });
        }
    }
    for &s in &grid {
        rows.push(PredictionPoint {
            quantity: Quantity::TotalReflectionVarianceRatio,
            state,
            ell_over_l: Some(s),
            g: None,
            value: analytics::predict_total_reflection_variance(&state, s).map_err(analytic)?,
        });
    }
    if !state.is_vacuum() {
        rows.push(PredictionPoint {
            quantity: Quantity::TwoPointCorrelation,
            state,
            ell_over_l: None,
            g: None,
            value: analytics::predict_two_point_correlation(&state).map_err(analytic)?,
        });
    }
    Ok(rows)
}

fn ensemble_parts(config: &RunConfig) -> Result<(InputState, EnsembleConfig, SimulateConfig), CliError> {
    let state = config
        .state
        .ok_or_else(|| ConfigError::Usage("a state is required (--state and --mean or --n)".into()))?;
    Ok((
        state,
        config.ensemble.unwrap_or_default(),
        config.simulate.clone().unwrap_or_default(),
    ))
}

pub fn simulate(config: &RunConfig) -> Result<qspeckle::EnsembleResult, CliError> {
    let (state, ensemble, sim) = ensemble_parts(config)?;
    let spec = ensemble.spec();
    let pairs: Vec<(usize, usize)> = if sim.probe_pairs.is_empty() {
        default_probe_pairs(spec.n_modes, sim.input_mode, DEFAULT_PAIR_COUNT)
    } else {
        sim.probe_pairs.iter().map(|&[b0, b1]| (b0, b1)).collect()
    };
    let options = RunOptions {
        workers: sim.workers,
        chunk_size: sim.chunk_size,
    };
    Ok(montecarlo::run_ensemble(
        &spec,
        &state,
        sim.input_mode,
        &pairs,
        &options,
    )?)
}

/// Compares the moment engine with the Fock-space oracle on realization 0 of
/// the configured ensemble.
pub fn oracle_rows(config: &RunConfig) -> Result<Vec<OracleRow>, CliError> {
    let (state, ensemble, sim) = ensemble_parts(config)?;
    let spec = ensemble.spec();
    let s = Ensemble::prepare(&spec)?.realize(0);
    let a = sim.input_mode;
    let n = s.n_modes();
    let exact = oracle_moments(&OracleQuery::from_scattering(&s, a)?, &state, &OracleConfig::default())?;
    let stats = moments::RealizationStatistics::compute(&s, a, &state).map_err(|e| CliError::Other(e.to_string()))?;
    let bound = exact.truncation_bound;
    let row = |quantity, output: String, oracle: f64, engine: f64| OracleRow {
        quantity,
        output,
        oracle,
        engine,
        abs_diff: (oracle - engine).abs(),
        truncation_bound: bound,
    };
    let mut rows = Vec::new();
    for b in 0..n {
        rows.push(row(
            "mode_mean",
            format!("t{b}"),
            exact.means[n + b],
            stats.mode_means[b],
        ));
    }
    for b in 0..n {
        rows.push(row(
            "mode_variance",
            format!("t{b}"),
            exact.covariance[n + b][n + b],
            stats.mode_variances[b],
        ));
    }
    for b0 in 0..n {
        for b1 in b0 + 1..n {
            let engine =
                moments::mode_cross_covariance(&s, a, b0, b1, &state).map_err(|e| CliError::Other(e.to_string()))?;
            rows.push(row(
                "mode_cross_covariance",
                format!("t{b0}:t{b1}"),
                exact.covariance[n + b0][n + b1],
                engine,
            ));
        }
    }
    rows.push(row(
        "total_transmission_mean",
        "transmitted".into(),
        exact.subset_means[0],
        stats.total_transmission_mean,
    ));
    rows.push(row(
        "total_transmission_variance",
        "transmitted".into(),
        exact.subset_variances[0],
        stats.total_transmission_variance,
    ));
    rows.push(row(
        "total_reflection_mean",
        "reflected".into(),
        exact.subset_means[1],
        stats.total_reflection_mean,
    ));
    rows.push(row(
        "total_reflection_variance",
        "reflected".into(),
        exact.subset_variances[1],
        stats.total_reflection_variance,
    ));
    Ok(rows)
}
