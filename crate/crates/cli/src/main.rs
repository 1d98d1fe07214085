//! `jscd-sim`: Monte Carlo BER/FER sweeps for the joint Markov-source decoder.
//!
//! Settings come from an optional `key=value` file (`--config`); any flag
//! given on the command line overrides the file.

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Parser;
use markov_jscd::sim::{self, ConfigMap, SimConfig, Simulation};

#[derive(Debug, Parser)]
#[command(name = "jscd-sim", version, about)]
struct Args {
    /// key=value file with defaults for any of the flags below.
    #[arg(long)]
    config: Option<PathBuf>,
    /// P(0 -> 1) of the Markov source.
    #[arg(long)]
    alpha: Option<f64>,
    /// P(1 -> 0) of the Markov source.
    #[arg(long)]
    beta: Option<f64>,
    /// Crossover probability between the two sources.
    #[arg(long)]
    p: Option<f64>,
    /// Block length of the PEG codes.
    #[arg(long)]
    n: Option<usize>,
    /// Design rate of the PEG codes.
    #[arg(long)]
    rate: Option<f64>,
    /// Variable degree distribution of the PEG codes.
    #[arg(long, value_parser = ["A", "B"])]
    lambda: Option<String>,
    /// Seed of the PEG construction (channel 2 uses the next seed).
    #[arg(long)]
    peg_seed: Option<u64>,
    /// alist file of the channel-1 parity-check matrix.
    #[arg(long, requires = "h2")]
    h1: Option<PathBuf>,
    /// alist file of the channel-2 parity-check matrix.
    #[arg(long, requires = "h1")]
    h2: Option<PathBuf>,
    /// First Eso/N0 point in dB.
    #[arg(long, allow_hyphen_values = true)]
    snr_start: Option<f64>,
    /// Last Eso/N0 point in dB.
    #[arg(long, allow_hyphen_values = true)]
    snr_stop: Option<f64>,
    #[arg(long)]
    snr_step: Option<f64>,
    /// sp, sp-bcjr, sp-cross or jscd; a comma-separated list decodes the same
    /// frames with each mode.
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    max_local: Option<usize>,
    #[arg(long)]
    max_global: Option<usize>,
    #[arg(long)]
    min_frame_errors: Option<u64>,
    #[arg(long)]
    max_frames: Option<u64>,
    /// Frames decoded between checks of the stop rule.
    #[arg(long)]
    batch_size: Option<u64>,
    /// Master seed of all frame draws.
    #[arg(long)]
    seed: Option<u64>,
    /// Result CSV; printed to stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Writes the per-iteration trace of frame 0 of every point to this file.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// BER at which the gap to the limit is reported.
    #[arg(long)]
    gap_ber: Option<f64>,
    /// Reliability of the estimated correlation noise: odds, log or prior.
    #[arg(long, value_parser = ["odds", "log", "prior"])]
    error_llr: Option<String>,
    /// Stop local iterations once no posterior LLR moves by more than this.
    #[arg(long)]
    llr_threshold: Option<f64>,
    /// Print the merged configuration and exit.
    #[arg(long)]
    dry_run: bool,
}

impl Args {
    fn overrides(&self) -> Vec<(&'static str, Option<String>)> {
        fn s<T: ToString>(x: &Option<T>) -> Option<String> {
            x.as_ref().map(ToString::to_string)
        }
        fn path(x: &Option<PathBuf>) -> Option<String> {
            x.as_ref().map(|p| p.display().to_string())
        }
        vec![
            ("alpha", s(&self.alpha)),
            ("beta", s(&self.beta)),
            ("p", s(&self.p)),
            ("n", s(&self.n)),
            ("rate", s(&self.rate)),
            ("lambda", s(&self.lambda)),
            ("peg-seed", s(&self.peg_seed)),
            ("h1", path(&self.h1)),
            ("h2", path(&self.h2)),
            ("snr-start", s(&self.snr_start)),
            ("snr-stop", s(&self.snr_stop)),
            ("snr-step", s(&self.snr_step)),
            ("mode", s(&self.mode)),
            ("max-local", s(&self.max_local)),
            ("max-global", s(&self.max_global)),
            ("min-frame-errors", s(&self.min_frame_errors)),
            ("max-frames", s(&self.max_frames)),
            ("batch-size", s(&self.batch_size)),
            ("seed", s(&self.seed)),
            ("out", path(&self.out)),
            ("trace", path(&self.trace)),
            ("gap-ber", s(&self.gap_ber)),
            ("error-llr", s(&self.error_llr)),
            ("llr-threshold", s(&self.llr_threshold)),
        ]
    }

    fn merged(&self) -> Result<ConfigMap> {
        let mut map = match &self.config {
            Some(path) => sim::read_config_file(path)?,
            None => ConfigMap::new(),
        };
        for (key, value) in self.overrides() {
            if let Some(v) = value {
                map.insert(key.to_string(), v);
            }
        }
        // Explicit alist paths replace PEG keys from the file and vice versa.
        if self.h1.is_some() {
            for key in ["n", "rate", "lambda", "peg-seed"] {
                if self.overrides().iter().all(|(k, v)| *k != key || v.is_none()) {
                    map.remove(key);
                }
            }
        }
        Ok(map)
    }
}

fn main() -> Result<()> {
    let args = Args::parse();
    let config = SimConfig::from_map(&args.merged()?).context("invalid configuration")?;
    if args.dry_run {
        print!("{}", config.to_text());
        return Ok(());
    }
    let sim = Simulation::new(config.clone()).context("building codes")?;
    eprintln!(
        "codes: n={} k={} rate={:.4}; limit {:.4} dB; {} SNR points",
        sim.code(0).n(),
        sim.k(),
        sim.rate(),
        sim.limit_db(),
        config.snr_grid().len()
    );
    let result = sim.run_sweep()?;
    for p in &result.points {
        eprintln!(
            "{:>8} dB {:>8}: frames {:>7} fer {:.3e} ber {:.3e}",
            p.snr_db,
            p.mode.as_str(),
            p.either.frames,
            p.either.fer(),
            p.either.ber()
        );
    }
    match &config.out {
        Some(path) => eprintln!("wrote {}", path.display()),
        None => print!("{}", sim::to_csv_string(&result)),
    }
    Ok(())
}
