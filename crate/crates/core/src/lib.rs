//! Joint source-channel decoding of two correlated binary Markov sources sent
//! over separate AWGN channels with systematic LDPC codes.
//!
//! The numeric core is generic over the scalar type ([`num::Real`], for
//! `f32` and `f64`). The aliases at the crate root fix it to `f64`, which is
//! what the simulation harness uses.

pub mod bcjr;
pub mod bits;
pub mod channel;
pub mod decoder;
pub mod error;
pub mod ldpc;
pub mod limits;
pub mod num;
pub mod rng;
pub mod sim;
pub mod source;

pub use bits::BitSequence;
pub use decoder::{DecodeResult, DecoderMode, ErrorLlrForm, TraceRow};
pub use error::{Error, Result};
pub use ldpc::{DegreeDistribution, SystematicCode, TannerGraph};
pub use num::Real;

pub type MarkovParams = source::MarkovParams<f64>;
pub type CorrelationParams = source::CorrelationParams<f64>;
pub type LlrVector = channel::LlrVector<f64>;
pub type ChannelObservation = channel::ChannelObservation<f64>;
pub type MarkovTrellis = bcjr::MarkovTrellis<f64>;
pub type DecoderConfig = decoder::DecoderConfig<f64>;
pub type ChannelState<'a> = decoder::ChannelState<'a, f64>;
pub type DecoderState<'a> = decoder::DecoderState<'a, f64>;
pub type RatePair = limits::RatePair<f64>;

pub type MarkovParamsF32 = source::MarkovParams<f32>;
pub type MarkovTrellisF32 = bcjr::MarkovTrellis<f32>;
pub type DecoderConfigF32 = decoder::DecoderConfig<f32>;
