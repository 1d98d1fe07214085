//! Simulation configuration and its flat `key=value` text form.
//!
//! Keys mirror the command-line flags without the leading dashes
//! (`snr-start`, `max-local`, ...); underscores are accepted in place of
//! dashes. Lines starting with `#` and blank lines are ignored.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::decoder::{DecoderMode, ErrorLlrForm};
use crate::error::{Error, Result};
use crate::ldpc::{lambda_a, lambda_b, DegreeDistribution};
use crate::source::{CorrelationParams, MarkovParams};

/// Normalized key -> raw value.
pub type ConfigMap = BTreeMap<String, String>;

pub const KEYS: &[&str] = &[
    "alpha",
    "beta",
    "p",
    "n",
    "rate",
    "lambda",
    "peg-seed",
    "h1",
    "h2",
    "snr-start",
    "snr-stop",
    "snr-step",
    "mode",
    "max-local",
    "max-global",
    "min-frame-errors",
    "max-frames",
    "batch-size",
    "seed",
    "out",
    "trace",
    "gap-ber",
    "error-llr",
    "llr-threshold",
];

pub fn normalize_key(key: &str) -> String {
    key.trim().trim_start_matches("--").to_ascii_lowercase().replace('_', "-")
}

/// Parses `key=value` lines.
pub fn parse_key_values(text: &str) -> Result<ConfigMap> {
    let mut map = ConfigMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected key=value, got {line:?}", i + 1)))?;
        let key = normalize_key(key);
        if !KEYS.contains(&key.as_str()) {
            return Err(Error::Config(format!("line {}: unknown key {key:?}", i + 1)));
        }
        if map.insert(key.clone(), value.trim().to_string()).is_some() {
            return Err(Error::Config(format!("line {}: duplicate key {key:?}", i + 1)));
        }
    }
    Ok(map)
}

pub fn read_config_file(path: impl AsRef<Path>) -> Result<ConfigMap> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_key_values(&text)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaChoice {
    A,
    B,
}

impl LambdaChoice {
    pub fn distribution(self) -> DegreeDistribution {
        match self {
            Self::A => lambda_a(),
            Self::B => lambda_b(),
        }
    }
}

impl fmt::Display for LambdaChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::A => "A",
            Self::B => "B",
        })
    }
}

impl FromStr for LambdaChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Self::A),
            "B" | "b" => Ok(Self::B),
            other => Err(Error::Config(format!("lambda must be A or B, got {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CodeSpec {
    /// PEG codes built from a variable degree distribution. Channel 2 uses
    /// the next seed(s) so the two graphs differ.
    Peg {
        n: usize,
        rate: f64,
        lambda: LambdaChoice,
        seed: u64,
    },
    /// Parity-check matrices read from alist files.
    Alist { h1: PathBuf, h2: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StopRule {
    /// A point stops once this many frames had an error in either source...
    pub min_frame_errors: u64,
    /// ...or after this many frames.
    pub max_frames: u64,
}

impl Default for StopRule {
    fn default() -> Self {
        Self {
            min_frame_errors: 100,
            max_frames: 100_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub alpha: f64,
    pub beta: f64,
    pub p: f64,
    pub code: CodeSpec,
    pub snr_start: f64,
    pub snr_stop: f64,
    pub snr_step: f64,
    /// Decoded on common noise realizations when more than one is given.
    pub modes: Vec<DecoderMode>,
    pub max_local: usize,
    pub max_global: usize,
    pub stop: StopRule,
    /// Frames decoded between two evaluations of the stop rule.
    pub batch_size: u64,
    pub seed: u64,
    pub out: Option<PathBuf>,
    /// Per-iteration trace of the first frame of every point and mode.
    pub trace: Option<PathBuf>,
    /// BER level at which SNR gaps to the limit are reported.
    pub gap_ber: f64,
    pub error_llr: ErrorLlrForm,
    pub llr_threshold: Option<f64>,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            alpha: 0.1,
            beta: 0.1,
            p: 0.01,
            code: CodeSpec::Peg {
                n: 4096,
                rate: 0.5,
                lambda: LambdaChoice::A,
                seed: 1,
            },
            snr_start: -2.0,
            snr_stop: 0.0,
            snr_step: 0.5,
            modes: vec![DecoderMode::Jscd],
            max_local: 50,
            max_global: 15,
            stop: StopRule::default(),
            batch_size: 32,
            seed: 1,
            out: None,
            trace: None,
            gap_ber: 1e-4,
            error_llr: ErrorLlrForm::OddsRatio,
            llr_threshold: None,
        }
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: fmt::Display,
{
    value
        .trim()
        .parse()
        .map_err(|e| Error::Config(format!("{key}: cannot parse {value:?}: {e}")))
}

pub fn parse_modes(value: &str) -> Result<Vec<DecoderMode>> {
    let mut modes = Vec::new();
    for part in value.split(',').filter(|s| !s.trim().is_empty()) {
        let mode: DecoderMode = part.parse()?;
        if !modes.contains(&mode) {
            modes.push(mode);
        }
    }
    if modes.is_empty() {
        return Err(Error::Config("mode list is empty".into()));
    }
    Ok(modes)
}

fn error_llr_name(form: ErrorLlrForm) -> &'static str {
    match form {
        ErrorLlrForm::OddsRatio => "odds",
        ErrorLlrForm::LogOdds => "log",
        ErrorLlrForm::CrossoverPrior => "prior",
    }
}

impl SimConfig {
    /// Builds a configuration from normalized keys; missing keys keep their
    /// defaults. The result is validated.
    pub fn from_map(map: &ConfigMap) -> Result<Self> {
        let mut cfg = Self::default();
        let (mut n, mut rate, mut lambda, mut peg_seed) = match &cfg.code {
            CodeSpec::Peg { n, rate, lambda, seed } => (*n, *rate, *lambda, *seed),
            CodeSpec::Alist { .. } => unreachable!(),
        };
        let (mut h1, mut h2) = (None, None);
        for (key, value) in map {
            let k = key.as_str();
            match k {
                "alpha" => cfg.alpha = parse(k, value)?,
                "beta" => cfg.beta = parse(k, value)?,
                "p" => cfg.p = parse(k, value)?,
                "n" => n = parse(k, value)?,
                "rate" => rate = parse(k, value)?,
                "lambda" => lambda = value.parse()?,
                "peg-seed" => peg_seed = parse(k, value)?,
                "h1" => h1 = Some(PathBuf::from(value)),
                "h2" => h2 = Some(PathBuf::from(value)),
                "snr-start" => cfg.snr_start = parse(k, value)?,
                "snr-stop" => cfg.snr_stop = parse(k, value)?,
                "snr-step" => cfg.snr_step = parse(k, value)?,
                "mode" => cfg.modes = parse_modes(value)?,
                "max-local" => cfg.max_local = parse(k, value)?,
                "max-global" => cfg.max_global = parse(k, value)?,
                "min-frame-errors" => cfg.stop.min_frame_errors = parse(k, value)?,
                "max-frames" => cfg.stop.max_frames = parse(k, value)?,
                "batch-size" => cfg.batch_size = parse(k, value)?,
                "seed" => cfg.seed = parse(k, value)?,
                "out" => cfg.out = Some(PathBuf::from(value)),
                "trace" => cfg.trace = Some(PathBuf::from(value)),
                "gap-ber" => cfg.gap_ber = parse(k, value)?,
                "error-llr" => {
                    cfg.error_llr = match value.trim() {
                        "odds" => ErrorLlrForm::OddsRatio,
                        "log" => ErrorLlrForm::LogOdds,
                        "prior" => ErrorLlrForm::CrossoverPrior,
                        other => return Err(Error::Config(format!("error-llr must be odds, log or prior, got {other:?}"))),
                    }
                }
                "llr-threshold" => cfg.llr_threshold = Some(parse(k, value)?),
                _ => return Err(Error::Config(format!("unknown key {key:?}"))),
            }
        }
        cfg.code = match (h1, h2) {
            (Some(h1), Some(h2)) => CodeSpec::Alist { h1, h2 },
            (None, None) => CodeSpec::Peg {
                n,
                rate,
                lambda,
                seed: peg_seed,
            },
            _ => return Err(Error::Config("h1 and h2 must be given together".into())),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Canonical key=value form; `from_map(&cfg.to_map())` reproduces `cfg`.
    pub fn to_map(&self) -> ConfigMap {
        let mut map = ConfigMap::new();
        let mut put = |k: &str, v: String| {
            map.insert(k.to_string(), v);
        };
        put("alpha", self.alpha.to_string());
        put("beta", self.beta.to_string());
        put("p", self.p.to_string());
        match &self.code {
            CodeSpec::Peg { n, rate, lambda, seed } => {
                put("n", n.to_string());
                put("rate", rate.to_string());
                put("lambda", lambda.to_string());
                put("peg-seed", seed.to_string());
            }
            CodeSpec::Alist { h1, h2 } => {
                put("h1", h1.display().to_string());
                put("h2", h2.display().to_string());
            }
        }
        put("snr-start", self.snr_start.to_string());
        put("snr-stop", self.snr_stop.to_string());
        put("snr-step", self.snr_step.to_string());
        put(
            "mode",
            self.modes.iter().map(|m| m.as_str()).collect::<Vec<_>>().join(","),
        );
        put("max-local", self.max_local.to_string());
        put("max-global", self.max_global.to_string());
        put("min-frame-errors", self.stop.min_frame_errors.to_string());
        put("max-frames", self.stop.max_frames.to_string());
        put("batch-size", self.batch_size.to_string());
        put("seed", self.seed.to_string());
        if let Some(out) = &self.out {
            put("out", out.display().to_string());
        }
        if let Some(trace) = &self.trace {
            put("trace", trace.display().to_string());
        }
        put("gap-ber", self.gap_ber.to_string());
        put("error-llr", error_llr_name(self.error_llr).to_string());
        if let Some(t) = self.llr_threshold {
            put("llr-threshold", t.to_string());
        }
        map
    }

    pub fn to_text(&self) -> String {
        self.to_map().iter().map(|(k, v)| format!("{k}={v}\n")).collect()
    }

    pub fn markov(&self) -> Result<MarkovParams<f64>> {
        let m = MarkovParams::new(self.alpha, self.beta)?;
        if m.is_degenerate() {
            return Err(Error::DegenerateChain);
        }
        Ok(m)
    }

    pub fn correlation(&self) -> Result<CorrelationParams<f64>> {
        let c = CorrelationParams::new(self.p)?;
        c.ensure_decodable()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        self.markov()?;
        self.correlation()?;
        if let CodeSpec::Peg { n, rate, .. } = &self.code {
            if *n < 2 {
                return Err(Error::Config(format!("block length {n} is too small")));
            }
            if !(*rate > 0.0 && *rate < 1.0) {
                return Err(Error::OutOfRange {
                    name: "rate",
                    value: *rate,
                    lo: 0.0,
                    hi: 1.0,
                });
            }
        }
        if self.max_local == 0 || self.max_global == 0 {
            return Err(Error::Config("iteration caps must be positive".into()));
        }
        if self.stop.max_frames == 0 || self.batch_size == 0 {
            return Err(Error::Config("max-frames and batch-size must be positive".into()));
        }
        if self.modes.is_empty() {
            return Err(Error::Config("no decoder mode selected".into()));
        }
        if ![self.snr_start, self.snr_stop, self.snr_step].iter().all(|x| x.is_finite()) {
            return Err(Error::Config("SNR grid must be finite".into()));
        }
        if self.snr_stop < self.snr_start || (self.snr_stop > self.snr_start && self.snr_step <= 0.0) {
            return Err(Error::Config(format!(
                "empty SNR grid {}:{}:{}",
                self.snr_start, self.snr_step, self.snr_stop
            )));
        }
        if !(self.gap_ber > 0.0 && self.gap_ber < 1.0) {
            return Err(Error::OutOfRange {
                name: "gap-ber",
                value: self.gap_ber,
                lo: 0.0,
                hi: 1.0,
            });
        }
        Ok(())
    }

    /// `start, start + step, ...` up to `stop`, rounded to 1e-6 dB.
    pub fn snr_grid(&self) -> Vec<f64> {
        let round = |x: f64| (x * 1e6).round() / 1e6;
        if self.snr_step <= 0.0 || self.snr_stop <= self.snr_start {
            return vec![round(self.snr_start)];
        }
        let count = ((self.snr_stop - self.snr_start) / self.snr_step + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|i| round(self.snr_start + i as f64 * self.snr_step))
            .collect()
    }
}
