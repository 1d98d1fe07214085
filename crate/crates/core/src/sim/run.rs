//! Monte Carlo runner: frame generation, decoding and error accounting.

use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

use crate::bcjr::MarkovTrellis;
use crate::bits::BitSequence;
use crate::channel::{sigma_from_eso_n0, transmit, ChannelObservation};
use crate::decoder::{decode_frame, DecodeResult, DecoderConfig, DecoderMode, TraceRow, DEFAULT_CLAMP};
use crate::error::{Error, Result};
use crate::ldpc::{derive_check_distribution, peg_construct, SystematicCode, TannerGraph};
use crate::limits::shannon_sw_limit;
use crate::rng::{frame_stream, seeded};
use crate::source::{apply_correlation, generate_markov, joint_entropy, CorrelationParams, MarkovParams};

use super::config::{CodeSpec, SimConfig};
use super::stats::{snr_at_ber, ErrorCounts};

/// Further PEG seeds tried for channel 2 until its dimension matches channel 1.
const SECOND_CODE_ATTEMPTS: u64 = 16;

/// Builds the two channel codes described by `spec`.
pub fn build_codes(spec: &CodeSpec) -> Result<[SystematicCode; 2]> {
    match spec {
        CodeSpec::Peg { n, rate, lambda, seed } => {
            let lambda = lambda.distribution();
            let rho = derive_check_distribution(&lambda, *rate)?;
            let m = *n - (*n as f64 * rate).round() as usize;
            let build = |s: u64| -> Result<SystematicCode> {
                let graph = peg_construct(*n, m, &lambda, &rho, &mut seeded(s))?;
                Ok(SystematicCode::new(graph))
            };
            let first = build(*seed)?;
            for offset in 1..=SECOND_CODE_ATTEMPTS {
                let second = build(seed.wrapping_add(offset))?;
                if second.k() == first.k() {
                    return Ok([first, second]);
                }
            }
            Err(Error::Construction(format!(
                "no second code with k = {} within {SECOND_CODE_ATTEMPTS} seeds",
                first.k()
            )))
        }
        CodeSpec::Alist { h1, h2 } => Ok([
            SystematicCode::new(TannerGraph::read_alist(h1)?),
            SystematicCode::new(TannerGraph::read_alist(h2)?),
        ]),
    }
}

/// One simulated frame pair.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    pub sources: [BitSequence; 2],
    pub codewords: [BitSequence; 2],
    pub observations: [ChannelObservation<f64>; 2],
}

/// Counts of one decoder mode at one SNR.
#[derive(Debug, Clone, PartialEq)]
pub struct PointResult {
    pub snr_db: f64,
    pub mode: DecoderMode,
    pub sources: [ErrorCounts; 2],
    /// A frame is in error when either source has a bit error; bits of both
    /// sources are counted.
    pub either: ErrorCounts,
}

impl PointResult {
    fn new(snr_db: f64, mode: DecoderMode, k: u64) -> Self {
        Self {
            snr_db,
            mode,
            sources: [ErrorCounts::new(k), ErrorCounts::new(k)],
            either: ErrorCounts::new(2 * k),
        }
    }

    fn record(&mut self, errors: [u64; 2]) {
        self.sources[0].record(errors[0]);
        self.sources[1].record(errors[1]);
        self.either.record(errors[0] + errors[1]);
    }

    /// Counts by source label as written to the CSV.
    pub fn by_source(&self) -> [(&'static str, &ErrorCounts); 3] {
        [("1", &self.sources[0]), ("2", &self.sources[1]), ("either", &self.either)]
    }
}

/// SNR where a mode's BER reaches a target, and its distance to the limit.
#[derive(Debug, Clone, PartialEq)]
pub struct GapReport {
    pub mode: DecoderMode,
    pub source: &'static str,
    pub ber: f64,
    pub snr_db: Option<f64>,
    pub gap_db: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimResult {
    /// `key=value` metadata written as `#` lines.
    pub metadata: Vec<(String, String)>,
    /// Grouped by SNR, then by mode in configuration order.
    pub points: Vec<PointResult>,
    pub limit_db: f64,
    pub gaps: Vec<GapReport>,
    pub wall_time_s: f64,
}

impl SimResult {
    /// `(snr_db, ber)` curve of one mode and source label.
    pub fn curve(&self, mode: DecoderMode, source: &str) -> Vec<(f64, f64)> {
        self.points
            .iter()
            .filter(|p| p.mode == mode)
            .filter_map(|p| {
                p.by_source()
                    .into_iter()
                    .find(|(label, _)| *label == source)
                    .map(|(_, c)| (p.snr_db, c.ber()))
            })
            .collect()
    }

    /// SNR advantage of `better` over `worse` at `ber`, if both curves cross it.
    pub fn gain_db(&self, better: DecoderMode, worse: DecoderMode, source: &str, ber: f64) -> Option<f64> {
        let a = snr_at_ber(&self.curve(better, source), ber)?;
        let b = snr_at_ber(&self.curve(worse, source), ber)?;
        Some(b - a)
    }
}

#[derive(Debug, Clone)]
pub struct Simulation {
    config: SimConfig,
    markov: MarkovParams<f64>,
    corr: CorrelationParams<f64>,
    codes: [Arc<SystematicCode>; 2],
    trellis: MarkovTrellis<f64>,
    rate: f64,
    joint_entropy: f64,
    limit_db: f64,
}

impl Simulation {
    /// Validates `config` and builds its codes.
    pub fn new(config: SimConfig) -> Result<Self> {
        config.validate()?;
        let [a, b] = build_codes(&config.code)?;
        Self::with_codes(config, a, b)
    }

    /// Uses the given codes instead of the configured code description.
    pub fn with_codes(config: SimConfig, code1: SystematicCode, code2: SystematicCode) -> Result<Self> {
        config.validate()?;
        if code1.n() != code2.n() || code1.k() != code2.k() {
            return Err(Error::Config(format!(
                "codes differ: ({}, {}) vs ({}, {})",
                code1.n(),
                code1.k(),
                code2.n(),
                code2.k()
            )));
        }
        if code1.k() == 0 {
            return Err(Error::Config("code carries no information bits".into()));
        }
        let markov = config.markov()?;
        let corr = config.correlation()?;
        let rate = code1.rate();
        let h = joint_entropy(&markov, &corr)?;
        let limit_db = shannon_sw_limit(h, rate)?;
        let trellis = MarkovTrellis::new(&markov, code1.k())?;
        Ok(Self {
            config,
            markov,
            corr,
            codes: [Arc::new(code1), Arc::new(code2)],
            trellis,
            rate,
            joint_entropy: h,
            limit_db,
        })
    }

    pub fn config(&self) -> &SimConfig {
        &self.config
    }

    pub fn code(&self, channel: usize) -> &SystematicCode {
        &self.codes[channel]
    }

    pub fn k(&self) -> usize {
        self.codes[0].k()
    }

    /// Realized code rate `k / n`, used for the SNR calibration and the limit.
    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn joint_entropy(&self) -> f64 {
        self.joint_entropy
    }

    pub fn limit_db(&self) -> f64 {
        self.limit_db
    }

    pub fn trellis(&self) -> &MarkovTrellis<f64> {
        &self.trellis
    }

    pub fn decoder_config(&self, mode: DecoderMode) -> DecoderConfig<f64> {
        DecoderConfig {
            mode,
            max_local: self.config.max_local,
            max_global: self.config.max_global,
            clamp: DEFAULT_CLAMP,
            error_llr: self.config.error_llr,
            llr_change_threshold: self.config.llr_threshold,
            trace: false,
        }
    }

    /// Frame `frame_index` of SNR point `snr_index`. The draw depends only on
    /// the master seed and the two indices.
    pub fn frame(&self, snr_index: usize, snr_db: f64, frame_index: u64) -> Result<Frame> {
        let sigma = sigma_from_eso_n0(snr_db, self.rate)?;
        let mut rng = frame_stream(self.config.seed, snr_index, frame_index);
        let s1 = generate_markov(&self.markov, self.k(), &mut rng)?;
        let s2 = apply_correlation(&s1, &self.corr, &mut rng);
        let c1 = self.codes[0].encode(&s1)?;
        let c2 = self.codes[1].encode(&s2)?;
        let o1 = transmit(&c1, sigma, &mut rng);
        let o2 = transmit(&c2, sigma, &mut rng);
        Ok(Frame {
            sources: [s1, s2],
            codewords: [c1, c2],
            observations: [o1, o2],
        })
    }

    pub fn decode(&self, frame: &Frame, config: &DecoderConfig<f64>) -> Result<DecodeResult> {
        decode_frame(
            &frame.observations[0],
            &frame.observations[1],
            &self.codes[0],
            &self.codes[1],
            &self.trellis,
            config,
        )
    }

    /// Source bit errors of one decoded frame.
    pub fn bit_errors(frame: &Frame, result: &DecodeResult) -> [u64; 2] {
        [0, 1].map(|q| frame.sources[q].hamming_distance(&result.bits[q]) as u64)
    }

    /// Runs every configured mode at one SNR on common frames. Each mode
    /// stops on its own once its either-source frame errors reach the
    /// minimum; the frame budget is checked after every batch.
    pub fn run_point(&self, snr_index: usize, snr_db: f64) -> Result<Vec<PointResult>> {
        let modes = &self.config.modes;
        let k = self.k() as u64;
        let configs: Vec<_> = modes.iter().map(|&m| self.decoder_config(m)).collect();
        let mut results: Vec<PointResult> = modes.iter().map(|&m| PointResult::new(snr_db, m, k)).collect();
        let mut active = vec![true; modes.len()];
        let stop = self.config.stop;
        let mut next = 0u64;
        while next < stop.max_frames && active.iter().any(|&a| a) {
            let end = (next + self.config.batch_size).min(stop.max_frames);
            let running: Vec<usize> = (0..modes.len()).filter(|&i| active[i]).collect();
            let batch: Vec<Vec<[u64; 2]>> = (next..end)
                .into_par_iter()
                .map(|f| {
                    let frame = self.frame(snr_index, snr_db, f)?;
                    running
                        .iter()
                        .map(|&i| Ok(Self::bit_errors(&frame, &self.decode(&frame, &configs[i])?)))
                        .collect()
                })
                .collect::<Result<_>>()?;
            for per_frame in batch {
                for (&i, errors) in running.iter().zip(per_frame) {
                    results[i].record(errors);
                }
            }
            for &i in &running {
                if results[i].either.frame_errors >= stop.min_frame_errors {
                    active[i] = false;
                }
            }
            next = end;
        }
        Ok(results)
    }

    /// Iteration trace of frame 0 at one SNR for one mode.
    pub fn trace_frame(&self, snr_index: usize, snr_db: f64, mode: DecoderMode) -> Result<Vec<TraceRow>> {
        let frame = self.frame(snr_index, snr_db, 0)?;
        let config = DecoderConfig {
            trace: true,
            ..self.decoder_config(mode)
        };
        Ok(self.decode(&frame, &config)?.trace)
    }

    /// Runs the whole SNR grid and, if configured, writes the CSV and trace.
    pub fn run_sweep(&self) -> Result<SimResult> {
        let started = Instant::now();
        let mut points = Vec::new();
        let mut trace = Vec::new();
        for (i, snr) in self.config.snr_grid().into_iter().enumerate() {
            points.extend(self.run_point(i, snr)?);
            if self.config.trace.is_some() {
                for &mode in &self.config.modes {
                    trace.extend(self.trace_frame(i, snr, mode)?.into_iter().map(|row| (snr, mode, row)));
                }
            }
        }
        let mut result = SimResult {
            metadata: self.metadata(),
            points,
            limit_db: self.limit_db,
            gaps: Vec::new(),
            wall_time_s: 0.0,
        };
        for &mode in &self.config.modes {
            for source in ["1", "2", "either"] {
                let snr = snr_at_ber(&result.curve(mode, source), self.config.gap_ber);
                result.gaps.push(GapReport {
                    mode,
                    source,
                    ber: self.config.gap_ber,
                    snr_db: snr,
                    gap_db: snr.map(|s| s - self.limit_db),
                });
            }
        }
        result.wall_time_s = started.elapsed().as_secs_f64();
        if let Some(path) = &self.config.out {
            super::output::write_csv_file(&result, path)?;
        }
        if let Some(path) = &self.config.trace {
            super::output::write_trace_file(&trace, path)?;
        }
        Ok(result)
    }

    fn metadata(&self) -> Vec<(String, String)> {
        let mut meta = vec![(
            "version".to_string(),
            format!("{} {}", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION")),
        )];
        meta.extend(self.config.to_map());
        for (q, code) in self.codes.iter().enumerate() {
            meta.push((
                format!("code{}", q + 1),
                format!(
                    "n={} m={} k={} rank={} edges={}",
                    code.n(),
                    code.graph().m(),
                    code.k(),
                    code.rank(),
                    code.graph().num_edges()
                ),
            ));
        }
        let construction = match &self.config.code {
            CodeSpec::Peg { seed, .. } => format!("standard PEG, channel 1 seed {seed}, channel 2 next seed with equal k"),
            CodeSpec::Alist { .. } => "alist files".to_string(),
        };
        meta.push(("code_construction".into(), construction));
        meta.push(("code_rate".into(), self.rate.to_string()));
        meta.push(("joint_entropy".into(), self.joint_entropy.to_string()));
        meta.push(("limit_db".into(), self.limit_db.to_string()));
        meta
    }
}
