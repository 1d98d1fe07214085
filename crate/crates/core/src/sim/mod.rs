//! Monte Carlo experiments: configuration, sweeps over SNR, CSV output.

pub mod config;
pub mod output;
pub mod run;
pub mod stats;

pub use config::{parse_key_values, read_config_file, CodeSpec, ConfigMap, LambdaChoice, SimConfig, StopRule};
pub use output::{csv_body, to_csv_string, write_csv, CSV_COLUMNS};
pub use run::{build_codes, Frame, GapReport, PointResult, SimResult, Simulation};
pub use stats::{snr_at_ber, wilson_interval, ErrorCounts};
