//! Joint source-channel decoder for two correlated Markov sources.

pub mod joint;
pub mod messages;
pub mod state;

pub use joint::{decode_frame, decode_state, DecodeResult, DecoderConfig, DecoderMode, DecoderState, TraceRow, DEFAULT_CLAMP};
pub use messages::{
    boxplus, check_rule, cross_update, error_llr, estimate_error_vector, hard_decision, ErrorLlrForm,
};
pub use state::ChannelState;
