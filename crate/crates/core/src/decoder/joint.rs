//! Local/global iteration schedule of the joint decoder.
//!
//! Within a global iteration each channel runs up to `max_local` local
//! iterations of: all variable updates, all check updates, one Markov
//! (BCJR) activation. A local loop stops as soon as the hard decision on the
//! full posterior is a codeword. Between global iterations the systematic
//! posteriors of both channels are compared, the correlation noise is
//! estimated, and each channel receives a correlation update computed from
//! the other channel's posterior of the previous global iteration.
//!
//! All four decoder modes run this one schedule; modes only mask the Markov
//! extrinsic and the correlation update to zero. Modes without the
//! correlation exchange run a single global iteration.

use std::fmt;
use std::str::FromStr;

use crate::bcjr::MarkovTrellis;
use crate::bits::BitSequence;
use crate::channel::{channel_llr, ChannelObservation};
use crate::error::{Error, Result};
use crate::ldpc::SystematicCode;
use crate::num::Real;

use super::messages::{cross_update, error_llr, estimate_error_vector, hard_decision, ErrorLlrForm};
use super::state::ChannelState;

/// LLR saturation bound (natural log) applied to every stored message.
pub const DEFAULT_CLAMP: f64 = 30.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DecoderMode {
    /// Plain sum-product on each channel.
    Sp,
    /// Sum-product concatenated with the Markov decoder.
    SpBcjr,
    /// Sum-product with the cross-source correlation exchange.
    SpCross,
    /// Markov decoder and correlation exchange together.
    Jscd,
}

impl DecoderMode {
    pub const ALL: [DecoderMode; 4] = [Self::Sp, Self::SpBcjr, Self::SpCross, Self::Jscd];

    pub fn uses_markov(self) -> bool {
        matches!(self, Self::SpBcjr | Self::Jscd)
    }

    pub fn uses_cross(self) -> bool {
        matches!(self, Self::SpCross | Self::Jscd)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Sp => "sp",
            Self::SpBcjr => "sp-bcjr",
            Self::SpCross => "sp-cross",
            Self::Jscd => "jscd",
        }
    }
}

impl fmt::Display for DecoderMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DecoderMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.as_str() == s.trim())
            .ok_or_else(|| Error::Config(format!("unknown decoder mode {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecoderConfig<T> {
    pub mode: DecoderMode,
    pub max_local: usize,
    pub max_global: usize,
    pub clamp: T,
    pub error_llr: ErrorLlrForm,
    /// Optional extra local stopping rule: stop when no systematic posterior
    /// moved by more than this amount in one local iteration.
    pub llr_change_threshold: Option<T>,
    pub trace: bool,
}

impl<T: Real> Default for DecoderConfig<T> {
    fn default() -> Self {
        Self {
            mode: DecoderMode::Jscd,
            max_local: 50,
            max_global: 15,
            clamp: T::lit(DEFAULT_CLAMP),
            error_llr: ErrorLlrForm::OddsRatio,
            llr_change_threshold: None,
            trace: false,
        }
    }
}

impl<T: Real> DecoderConfig<T> {
    pub fn with_mode(mode: DecoderMode) -> Self {
        Self {
            mode,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_local == 0 || self.max_global == 0 {
            return Err(Error::Config("iteration caps must be positive".into()));
        }
        if !(self.clamp > T::zero()) || !self.clamp.is_finite() {
            return Err(Error::Config(format!("clamp bound {} must be positive", self.clamp)));
        }
        Ok(())
    }

    fn global_rounds(&self) -> usize {
        if self.mode.uses_cross() {
            self.max_global
        } else {
            1
        }
    }
}

/// One diagnostic row per local iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub global: usize,
    pub channel: usize,
    pub local: usize,
    pub mean_abs_llr: f64,
    pub unsatisfied_checks: usize,
}

impl TraceRow {
    pub const CSV_HEADER: &'static str = "global,channel,local,mean_abs_llr,unsatisfied_checks";

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.global, self.channel, self.local, self.mean_abs_llr, self.unsatisfied_checks
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecodeResult {
    /// Decoded source bits of each channel, source order.
    pub bits: [BitSequence; 2],
    /// Whether the final hard decision of each channel is a codeword.
    pub success: [bool; 2],
    /// Local iterations executed per channel, summed over global iterations.
    pub local_iterations: [usize; 2],
    pub global_iterations: usize,
    pub trace: Vec<TraceRow>,
}

/// Both channels' message state plus iteration counters.
#[derive(Debug, Clone)]
pub struct DecoderState<'a, T> {
    pub channels: [ChannelState<'a, T>; 2],
    pub local: usize,
    pub global: usize,
}

impl<'a, T: Real> DecoderState<'a, T> {
    pub fn new(
        obs: [&ChannelObservation<T>; 2],
        codes: [&'a SystematicCode; 2],
        clamp: T,
    ) -> Result<Self> {
        let make = |q: usize| ChannelState::new(codes[q], channel_llr(obs[q])?, clamp);
        Ok(Self {
            channels: [make(0)?, make(1)?],
            local: 0,
            global: 0,
        })
    }
}

struct LocalOutcome {
    success: bool,
    iterations: usize,
}

fn run_local<T: Real>(
    state: &mut ChannelState<'_, T>,
    trellis: &MarkovTrellis<T>,
    config: &DecoderConfig<T>,
    global: usize,
    channel: usize,
    trace: &mut Vec<TraceRow>,
) -> Result<LocalOutcome> {
    let graph = state.code().graph();
    let mut previous: Option<Vec<T>> = None;
    for j in 1..=config.max_local {
        state.update_variables();
        state.update_checks();
        if config.mode.uses_markov() {
            state.update_markov(trellis)?;
        }
        let posterior = state.full_posterior();
        let word = hard_decision(&posterior);
        let unsatisfied = graph.unsatisfied_checks(&word);
        if config.trace {
            let mean = posterior.iter().map(|x| x.abs().as_f64()).sum::<f64>() / posterior.len().max(1) as f64;
            trace.push(TraceRow {
                global,
                channel: channel + 1,
                local: j,
                mean_abs_llr: mean,
                unsatisfied_checks: unsatisfied,
            });
        }
        if unsatisfied == 0 {
            return Ok(LocalOutcome {
                success: true,
                iterations: j,
            });
        }
        if let Some(threshold) = config.llr_change_threshold {
            let current: Vec<T> = posterior.to_vec();
            if let Some(prev) = &previous {
                let moved = prev
                    .iter()
                    .zip(&current)
                    .any(|(a, b)| (*a - *b).abs() > threshold);
                if !moved {
                    return Ok(LocalOutcome {
                        success: false,
                        iterations: j,
                    });
                }
            }
            previous = Some(current);
        }
    }
    Ok(LocalOutcome {
        success: false,
        iterations: config.max_local,
    })
}

/// Decodes one pair of frames.
pub fn decode_frame<T: Real>(
    obs1: &ChannelObservation<T>,
    obs2: &ChannelObservation<T>,
    code1: &SystematicCode,
    code2: &SystematicCode,
    trellis: &MarkovTrellis<T>,
    config: &DecoderConfig<T>,
) -> Result<DecodeResult> {
    config.validate()?;
    if code1.k() != code2.k() {
        return Err(Error::Config(format!(
            "channels carry different source lengths ({} vs {})",
            code1.k(),
            code2.k()
        )));
    }
    if trellis.len() != code1.k() {
        return Err(Error::Config(format!(
            "trellis length {} does not match k = {}",
            trellis.len(),
            code1.k()
        )));
    }
    if obs1.sigma2 != obs2.sigma2 {
        return Err(Error::Config("channels must share one noise variance".into()));
    }
    let mut state = DecoderState::new([obs1, obs2], [code1, code2], config.clamp)?;
    decode_state(&mut state, trellis, config)
}

/// Runs the schedule on a prepared state.
pub fn decode_state<T: Real>(
    state: &mut DecoderState<'_, T>,
    trellis: &MarkovTrellis<T>,
    config: &DecoderConfig<T>,
) -> Result<DecodeResult> {
    let mut trace = Vec::new();
    let mut done = [false; 2];
    let mut local_iterations = [0usize; 2];
    let rounds = config.global_rounds();
    for global in 1..=rounds {
        state.global = global;
        for q in 0..2 {
            if done[q] {
                continue;
            }
            let outcome = run_local(&mut state.channels[q], trellis, config, global, q, &mut trace)?;
            local_iterations[q] += outcome.iterations;
            state.local = outcome.iterations;
            done[q] = outcome.success;
        }
        if done[0] && done[1] {
            break;
        }
        if config.mode.uses_cross() && global < rounds {
            let post = [state.channels[0].posterior_llr(), state.channels[1].posterior_llr()];
            let zhat = estimate_error_vector(&hard_decision(&post[0]), &hard_decision(&post[1]))?;
            let z_llr = error_llr::<T>(&zhat, config.error_llr);
            for q in 0..2 {
                if !done[q] {
                    let update = cross_update(&z_llr, &post[1 - q], config.clamp)?;
                    state.channels[q].set_correlation_update(&update)?;
                }
            }
        }
    }
    let words = [state.channels[0].hard_word(), state.channels[1].hard_word()];
    let bits = [
        state.channels[0].code().extract_info(&words[0])?,
        state.channels[1].code().extract_info(&words[1])?,
    ];
    let success = [
        state.channels[0].code().graph().is_codeword(&words[0]),
        state.channels[1].code().graph().is_codeword(&words[1]),
    ];
    Ok(DecodeResult {
        bits,
        success,
        local_iterations,
        global_iterations: state.global,
        trace,
    })
}
