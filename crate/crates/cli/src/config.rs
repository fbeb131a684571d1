//! Run configuration: command-line flags layered over an optional config file.

use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand as ClapSubcommand, ValueEnum};
use qspeckle::analytics::Figure;
use qspeckle::{EnsembleKind, EnsembleSpec, InputState, StateKind};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("invalid {field} = {value}: {reason}")]
    Range {
        field: &'static str,
        value: String,
        reason: String,
    },
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot parse config {path}: {message}")]
    Parse { path: PathBuf, message: String },
}

fn range(field: &'static str, value: impl fmt::Display, reason: impl Into<String>) -> ConfigError {
    ConfigError::Range {
        field,
        value: value.to_string(),
        reason: reason.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Subcommand {
    Predict,
    Simulate,
    Oracle,
    Figure,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Conductance value; serialized as a number or the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Conductance(pub f64);

impl fmt::Display for Conductance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl std::str::FromStr for Conductance {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" => Ok(Conductance(f64::INFINITY)),
            other => other
                .parse::<f64>()
                .map(Conductance)
                .map_err(|_| format!("`{s}` is neither a number nor `inf`")),
        }
    }
}

impl Serialize for Conductance {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for Conductance {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Number(x) => Ok(Conductance(x)),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// `u64` that survives TOML, whose integers are signed: values above
/// `i64::MAX` are written as decimal strings.
mod wide_u64 {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &u64, s: S) -> Result<S::Ok, S::Error> {
        if *x <= i64::MAX as u64 {
            s.serialize_u64(*x)
        } else {
            s.serialize_str(&x.to_string())
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u64, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Number(x) => Ok(x),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleConfig {
    pub n_modes: usize,
    #[serde(rename = "ell_over_L")]
    pub ell_over_l: f64,
    pub kind: EnsembleKind,
    #[serde(with = "wide_u64")]
    pub realizations: u64,
    #[serde(with = "wide_u64")]
    pub master_seed: u64,
}

impl EnsembleConfig {
    pub fn spec(&self) -> EnsembleSpec {
        EnsembleSpec::new(
            self.n_modes,
            self.ell_over_l,
            self.kind,
            self.realizations,
            self.master_seed,
        )
    }
}

impl Default for EnsembleConfig {
    fn default() -> Self {
        EnsembleConfig {
            n_modes: 32,
            ell_over_l: 0.5,
            kind: EnsembleKind::IndependentTau,
            realizations: 10_000,
            master_seed: 0,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub figure: Option<Figure>,
    #[serde(rename = "ell_over_L", default, skip_serializing_if = "Vec::is_empty")]
    pub ell_over_l: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub g: Vec<Conductance>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateConfig {
    pub input_mode: usize,
    /// Empty means the default pairs.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub probe_pairs: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
    pub chunk_size: usize,
}

impl Default for SimulateConfig {
    fn default() -> Self {
        SimulateConfig {
            input_mode: 0,
            probe_pairs: Vec::new(),
            workers: None,
            chunk_size: 64,
        }
    }
}

/// Fully resolved settings for one invocation. Scalar fields come first so
/// the TOML form keeps them above the tables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub subcommand: Subcommand,
    #[serde(default)]
    pub format: Format,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state: Option<InputState>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ensemble: Option<EnsembleConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simulate: Option<SimulateConfig>,
}

impl RunConfig {
    pub fn new(subcommand: Subcommand) -> Self {
        RunConfig {
            subcommand,
            format: Format::Csv,
            output_path: None,
            state: None,
            ensemble: None,
            sweep: None,
            simulate: None,
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("run configs always serialize")
    }

    pub fn from_toml(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    /// Checks every range constraint, naming the offending field.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if let Some(e) = &self.ensemble {
            if e.n_modes == 0 {
                return Err(range("n_modes", e.n_modes, "must be at least 1"));
            }
            check_ell_over_l(e.ell_over_l)?;
            if e.realizations == 0 {
                return Err(range("realizations", 0, "must be at least 1"));
            }
            let g = e.n_modes as f64 * e.ell_over_l;
            if g <= 1.0 {
                return Err(range("g", g, "conductance N·ℓ/L must exceed 1"));
            }
        }
        if let Some(s) = &self.sweep {
            for &x in &s.ell_over_l {
                check_ell_over_l(x)?;
            }
            for g in &s.g {
                if g.0.is_nan() || g.0 <= 1.0 {
                    return Err(range("g", g, "must exceed 1 (or be inf)"));
                }
            }
        }
        if let (Some(sim), Some(e)) = (&self.simulate, &self.ensemble) {
            if sim.input_mode >= e.n_modes {
                return Err(range(
                    "input_mode",
                    sim.input_mode,
                    format!("must be below n_modes = {}", e.n_modes),
                ));
            }
            for &[b0, b1] in &sim.probe_pairs {
                if b0 == b1 || b0 >= e.n_modes || b1 >= e.n_modes {
                    return Err(range(
                        "probe_pairs",
                        format!("{b0}:{b1}"),
                        format!("modes must differ and lie below n_modes = {}", e.n_modes),
                    ));
                }
            }
            if sim.chunk_size == 0 {
                return Err(range("chunk_size", 0, "must be at least 1"));
            }
            if sim.workers == Some(0) {
                return Err(range("workers", 0, "must be at least 1"));
            }
        }
        match self.subcommand {
            Subcommand::Simulate | Subcommand::Oracle if self.state.is_none() => Err(ConfigError::Usage(
                "a state is required (--state and --mean or --n)".into(),
            )),
            Subcommand::Figure if self.sweep.as_ref().and_then(|s| s.figure).is_none() => {
                Err(ConfigError::Usage("figure needs --figure".into()))
            }
            Subcommand::Predict if self.state.is_none() && self.sweep.as_ref().and_then(|s| s.figure).is_none() => {
                Err(ConfigError::Usage("predict needs --state or --figure".into()))
            }
            _ => Ok(()),
        }
    }
}

fn check_ell_over_l(x: f64) -> Result<(), ConfigError> {
    if !(x > 0.0 && x <= 1.0) {
        return Err(range("ell_over_L", x, "must lie in (0, 1]"));
    }
    Ok(())
}

#[derive(Debug, Parser)]
#[command(
    name = "qspeckle",
    version,
    about = "Quantum photon statistics of multiply scattered light"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, ClapSubcommand)]
pub enum Command {
    /// Closed-form predictions for one state over an ℓ/L and g grid.
    Predict(Flags),
    /// Monte Carlo over a random-medium ensemble.
    Simulate(Flags),
    /// Compare the moment engine with the brute-force oracle on one realization.
    Oracle(Flags),
    /// Data behind one of the standard figures.
    Figure(Flags),
}

#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Config file (TOML), or a previous CSV/JSON output to re-run.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Input state: coherent, thermal or fock.
    #[arg(long)]
    pub state: Option<String>,
    /// Mean photon number.
    #[arg(long, allow_hyphen_values = true)]
    pub mean: Option<f64>,
    /// Photon number of a Fock state.
    #[arg(long = "n", alias = "photons")]
    pub photons: Option<u32>,
    #[arg(long)]
    pub figure: Option<Figure>,
    /// ℓ/L; a comma-separated list for predict.
    #[arg(long = "ell-over-l", value_delimiter = ',', allow_hyphen_values = true)]
    pub ell_over_l: Vec<f64>,
    /// Conductance values for predict (numbers or `inf`).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub g: Vec<Conductance>,
    #[arg(long)]
    pub modes: Option<usize>,
    /// independent-tau or slice-composition.
    #[arg(long)]
    pub ensemble: Option<EnsembleKind>,
    #[arg(long)]
    pub realizations: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long = "input-mode")]
    pub input_mode: Option<usize>,
    /// Probe pairs as `b0:b1`, comma separated.
    #[arg(long, value_delimiter = ',', value_parser = parse_pair)]
    pub pairs: Vec<[usize; 2]>,
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long = "chunk-size")]
    pub chunk_size: Option<usize>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file; standard output when absent.
    #[arg(long, short = 'o')]
    pub output: Option<PathBuf>,
}

fn parse_pair(s: &str) -> Result<[usize; 2], String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("`{s}` is not of the form b0:b1"))?;
    let parse = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("`{x}`: {e}"));
    Ok([parse(a)?, parse(b)?])
}

/// Reads a config from TOML, from the `#` echo lines of a CSV output, or from
/// the `config` member of a JSON output.
pub fn read_config_file(path: &Path) -> Result<RunConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config_text(&text).map_err(|message| ConfigError::Parse {
        path: path.to_path_buf(),
        message,
    })
}

pub fn parse_config_text(text: &str) -> Result<RunConfig, String> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let doc: serde_json::Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
        let config = doc.get("config").ok_or("JSON document has no `config` member")?;
        return serde_json::from_value(config.clone()).map_err(|e| e.to_string());
    }
    if trimmed.starts_with("# ") || trimmed.starts_with("#\n") {
        let echo: String = text
            .lines()
            .take_while(|l| l.starts_with('#'))
            .map(|l| l.strip_prefix("# ").unwrap_or(l.trim_start_matches('#')))
            .collect::<Vec<_>>()
            .join("\n");
        return RunConfig::from_toml(&echo).map_err(|e| e.to_string());
    }
    RunConfig::from_toml(text).map_err(|e| e.to_string())
}

fn resolve_state(base: Option<InputState>, flags: &Flags) -> Result<Option<InputState>, ConfigError> {
    if flags.state.is_none() && flags.mean.is_none() && flags.photons.is_none() {
        return Ok(base);
    }
    let kind = match &flags.state {
        Some(s) => s.parse::<StateKind>().map_err(|e| ConfigError::Usage(e.to_string()))?,
        None if flags.photons.is_some() => StateKind::Fock,
        None => base.map_or(StateKind::Coherent, |s| s.kind()),
    };
    let mean = match (flags.mean, flags.photons) {
        (Some(m), Some(n)) if m != f64::from(n) => {
            return Err(ConfigError::Usage(format!("--mean {m} and --n {n} disagree")));
        }
        (Some(m), _) => m,
        (None, Some(n)) => f64::from(n),
        (None, None) => base.filter(|s| s.kind() == kind).map_or(1.0, |s| s.mean_photons()),
    };
    if flags.photons.is_some() && kind != StateKind::Fock {
        return Err(ConfigError::Usage("--n applies to Fock states only".into()));
    }
    InputState::new(kind, mean)
        .map(Some)
        .map_err(|e| range("mean_photons", mean, e.to_string()))
}

/// Builds the effective configuration for `subcommand` from the config file
/// (if any) and the flags, which take precedence.
pub fn resolve(subcommand: Subcommand, flags: &Flags) -> Result<RunConfig, ConfigError> {
    let mut config = match &flags.config {
        Some(path) => read_config_file(path)?,
        None => RunConfig::new(subcommand),
    };
    config.subcommand = subcommand;
    if let Some(f) = flags.format {
        config.format = f;
    }
    if let Some(o) = &flags.output {
        config.output_path = Some(o.clone());
    }
    config.state = resolve_state(config.state, flags)?;

    let needs_ensemble = matches!(subcommand, Subcommand::Simulate | Subcommand::Oracle);
    let ensemble_flags = flags.modes.is_some()
        || flags.ensemble.is_some()
        || flags.realizations.is_some()
        || flags.seed.is_some()
        || (needs_ensemble && !flags.ell_over_l.is_empty());
    if needs_ensemble || ensemble_flags {
        let mut e = config.ensemble.unwrap_or_else(|| match subcommand {
            Subcommand::Oracle => EnsembleConfig {
                n_modes: 4,
                realizations: 1,
                ..EnsembleConfig::default()
            },
            _ => EnsembleConfig::default(),
        });
        if let Some(n) = flags.modes {
            e.n_modes = n;
        }
        if let Some(k) = flags.ensemble {
            e.kind = k;
        }
        if let Some(r) = flags.realizations {
            e.realizations = r;
        }
        if let Some(s) = flags.seed {
            e.master_seed = s;
        }
        if needs_ensemble {
            match flags.ell_over_l.as_slice() {
                [] => {}
                [x] => e.ell_over_l = *x,
                _ => {
                    return Err(ConfigError::Usage(format!(
                        "{subcommand:?} takes a single --ell-over-l"
                    )))
                }
            }
        }
        config.ensemble = Some(e);
    }

    let sweep_flags =
        flags.figure.is_some() || !flags.g.is_empty() || (!needs_ensemble && !flags.ell_over_l.is_empty());
    if sweep_flags {
        let mut s = config.sweep.unwrap_or_default();
        if let Some(f) = flags.figure {
            s.figure = Some(f);
        }
        if !needs_ensemble && !flags.ell_over_l.is_empty() {
            s.ell_over_l = flags.ell_over_l.clone();
        }
        if !flags.g.is_empty() {
            s.g = flags.g.clone();
        }
        config.sweep = Some(s);
    }

    let simulate_flags =
        flags.input_mode.is_some() || !flags.pairs.is_empty() || flags.workers.is_some() || flags.chunk_size.is_some();
    if needs_ensemble || simulate_flags {
        let mut sim = config.simulate.unwrap_or_default();
        if let Some(a) = flags.input_mode {
            sim.input_mode = a;
        }
        if !flags.pairs.is_empty() {
            sim.probe_pairs = flags.pairs.clone();
        }
        if flags.workers.is_some() {
            sim.workers = flags.workers;
        }
        if let Some(c) = flags.chunk_size {
            sim.chunk_size = c;
        }
        config.simulate = Some(sim);
    }

    config.validate()?;
    Ok(config)
}

/// Parses a full argument list (program name first) into a run configuration.
pub fn parse_config<I, T>(args: I) -> Result<RunConfig, ConfigError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| ConfigError::Usage(e.to_string()))?;
    let (sub, flags) = match &cli.command {
        Command::Predict(f) => (Subcommand::Predict, f),
        Command::Simulate(f) => (Subcommand::Simulate, f),
        Command::Oracle(f) => (Subcommand::Oracle, f),
        Command::Figure(f) => (Subcommand::Figure, f),
    };
    resolve(sub, flags)
}
