//! CSV and JSON writers. Every file starts with the effective run config.

use std::io::Write;
use std::path::{Path, PathBuf};

use qspeckle::analytics::PredictionPoint;
use qspeckle::montecarlo::{convergence_report, MonteCarloError};
use qspeckle::EnsembleResult;
use serde::Serialize;
use thiserror::Error;

use crate::config::RunConfig;

pub const TOOL: &str = "qspeckle";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const PREDICT_HEADER: &str = "quantity,state,mean_photons,ell_over_L,g,value";
pub const SIMULATE_HEADER: &str = "quantity,state,mean_photons,ell_over_L,g,value,estimate,stderr,analytic,pull";
pub const ORACLE_HEADER: &str = "quantity,output,oracle,engine,abs_diff,truncation_bound";

#[derive(Debug, Error)]
pub enum OutputError {
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Report(#[from] MonteCarloError),
}

/// Fixed twelve decimals for moderate magnitudes, otherwise scientific
/// notation with twelve significant digits.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else if x == 0.0 {
        format!("{:.12}", 0.0)
    } else if (0.1..1e4).contains(&x.abs()) {
        format!("{x:.12}")
    } else {
        format!("{x:.11e}")
    }
}

fn optional(x: Option<f64>) -> String {
    x.map(format_number).unwrap_or_default()
}

/// One CSV line per row kind; columns follow the matching header.
#[derive(Debug, Clone, PartialEq)]
pub enum Row {
    Prediction(PredictionPoint),
    Simulation {
        point: PredictionPoint,
        estimate: f64,
        stderr: f64,
        analytic: Option<f64>,
        pull: Option<f64>,
    },
    Oracle(OracleRow),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleRow {
    pub quantity: &'static str,
    pub output: String,
    pub oracle: f64,
    pub engine: f64,
    pub abs_diff: f64,
    pub truncation_bound: f64,
}

impl Row {
    fn header(&self) -> &'static str {
        match self {
            Row::Prediction(_) => PREDICT_HEADER,
            Row::Simulation { .. } => SIMULATE_HEADER,
            Row::Oracle(_) => ORACLE_HEADER,
        }
    }

    fn line(&self) -> String {
        let point = |p: &PredictionPoint| {
            format!(
                "{},{},{},{},{}",
                p.quantity,
                p.state.kind(),
                format_number(p.state.mean_photons()),
                optional(p.ell_over_l),
                optional(p.g),
            )
        };
        match self {
            Row::Prediction(p) => format!("{},{}", point(p), format_number(p.value)),
            Row::Simulation {
                point: p,
                estimate,
                stderr,
                analytic,
                pull,
            } => format!(
                "{},{},{},{},{},{}",
                point(p),
                optional(*analytic),
                format_number(*estimate),
                format_number(*stderr),
                optional(*analytic),
                optional(*pull),
            ),
            Row::Oracle(r) => format!(
                "{},{},{},{},{},{}",
                r.quantity,
                r.output,
                format_number(r.oracle),
                format_number(r.engine),
                format_number(r.abs_diff),
                format_number(r.truncation_bound),
            ),
        }
    }
}

/// Simulation rows in quantity order, tagged with the run's `ℓ/L` and the
/// conductance used for the analytic values.
pub fn simulation_rows(result: &EnsembleResult) -> Result<Vec<Row>, OutputError> {
    Ok(convergence_report(result)?
        .into_iter()
        .map(|r| Row::Simulation {
            point: PredictionPoint {
                quantity: r.quantity,
                state: result.state_echo,
                ell_over_l: Some(result.spec_echo.ell_over_l),
                g: Some(result.analytic_conductance),
                value: r.analytic.unwrap_or(f64::NAN),
            },
            estimate: r.value,
            stderr: r.stderr,
            analytic: r.analytic,
            pull: r.pull,
        })
        .collect())
}

/// `# `-prefixed TOML echo of `config`, readable back by `--config`.
pub fn config_echo(config: &RunConfig) -> String {
    let mut out = String::new();
    for line in config.to_toml().lines() {
        if line.is_empty() {
            out.push_str("#\n");
        } else {
            out.push_str("# ");
            out.push_str(line);
            out.push('\n');
        }
    }
    out
}

/// Renders the CSV document. Without rows the header is taken from the
/// subcommand.
pub fn render_csv(config: &RunConfig, rows: &[Row], empty_header: &'static str) -> String {
    let mut out = config_echo(config);
    out.push_str(rows.first().map_or(empty_header, Row::header));
    out.push('\n');
    for row in rows {
        debug_assert_eq!(row.header(), rows[0].header(), "rows must be homogeneous");
        out.push_str(&row.line());
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct Document<'a, T: Serialize> {
    tool: &'static str,
    version: &'static str,
    config: &'a RunConfig,
    #[serde(flatten)]
    body: T,
}

#[derive(Serialize)]
struct Rows<'a, T: Serialize> {
    rows: &'a [T],
}

fn render<T: Serialize>(config: &RunConfig, body: T) -> String {
    let doc = Document {
        tool: TOOL,
        version: VERSION,
        config,
        body,
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("documents serialize");
    text.push('\n');
    text
}

pub fn render_json_result(config: &RunConfig, result: &EnsembleResult) -> String {
    render(config, result)
}

pub fn render_json_predictions(config: &RunConfig, rows: &[PredictionPoint]) -> String {
    render(config, Rows { rows })
}

pub fn render_json_oracle(config: &RunConfig, rows: &[OracleRow]) -> String {
    render(config, Rows { rows })
}

/// Writes `text` to `path`, or to standard output when `path` is `None`.
pub fn write_output(path: Option<&Path>, text: &str) -> Result<(), OutputError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| OutputError::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| OutputError::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
    }
}

/// Writes prediction or ensemble rows as CSV.
pub fn emit_csv(config: &RunConfig, rows: &[Row], path: Option<&Path>) -> Result<(), OutputError> {
    write_output(path, &render_csv(config, rows, PREDICT_HEADER))
}

/// Writes one ensemble result as a JSON document.
pub fn emit_json(config: &RunConfig, result: &EnsembleResult, path: Option<&Path>) -> Result<(), OutputError> {
    write_output(path, &render_json_result(config, result))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Subcommand;
    use qspeckle::{InputState, Quantity};

    #[test]
    fn number_format() {
        assert_eq!(format_number(1.0), "1.000000000000");
        assert_eq!(format_number(0.0), "0.000000000000");
        assert_eq!(format_number(-0.0), "0.000000000000");
        assert_eq!(format_number(0.25), "0.250000000000");
        assert_eq!(format_number(-3.5), "-3.500000000000");
        assert_eq!(format_number(0.01), "1.00000000000e-2");
        assert_eq!(format_number(12345.0), "1.23450000000e4");
        assert_eq!(format_number(f64::INFINITY), "inf");
        assert_eq!(format_number(f64::NAN), "nan");
    }

    #[test]
    fn empty_rows_give_header_only() {
        let config = RunConfig::new(Subcommand::Predict);
        let text = render_csv(&config, &[], PREDICT_HEADER);
        let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(body, vec![PREDICT_HEADER]);
    }

    #[test]
    fn prediction_lines_leave_unused_parameters_empty() {
        let row = Row::Prediction(PredictionPoint {
            quantity: Quantity::TwoPointCorrelation,
            state: InputState::fock(2),
            ell_over_l: None,
            g: None,
            value: 0.5,
        });
        assert_eq!(row.line(), "two_point_correlation,fock,2.000000000000,,,0.500000000000");
        let row = Row::Prediction(PredictionPoint {
            quantity: Quantity::TotalTransmissionVarianceRatio,
            state: InputState::thermal(1.0).unwrap(),
            ell_over_l: Some(0.5),
            g: Some(f64::INFINITY),
            value: 0.75,
        });
        assert_eq!(
            row.line(),
            "total_transmission_variance_ratio,thermal,1.000000000000,0.500000000000,inf,0.750000000000"
        );
    }

    #[test]
    fn echo_parses_back() {
        let mut config = RunConfig::new(Subcommand::Figure);
        config.state = Some(InputState::thermal(2.5).unwrap());
        let text = render_csv(&config, &[], PREDICT_HEADER);
        assert_eq!(crate::config::parse_config_text(&text).unwrap(), config);
    }

    #[test]
    fn unwritable_path_is_an_io_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("missing").join("out.csv");
        let config = RunConfig::new(Subcommand::Predict);
        assert!(matches!(
            emit_csv(&config, &[], Some(&path)),
            Err(OutputError::Io { .. })
        ));
    }
}
