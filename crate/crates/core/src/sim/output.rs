//! CSV writers for sweep results and iteration traces.
//!
//! Every line that depends on timing starts with `#`, so the remaining lines
//! are a pure function of the configuration and seed.

use std::io::Write;
use std::path::Path;

use crate::decoder::{DecoderMode, TraceRow};
use crate::error::{Error, Result};

use super::run::SimResult;

pub const CSV_COLUMNS: &str = "snr_db,mode,source,frames,frame_errors,bit_errors,fer,ber,ci_low,ci_high,limit_db";

fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "none".to_string(), |v| v.to_string())
}

pub fn write_csv<W: Write>(result: &SimResult, mut w: W) -> std::io::Result<()> {
    for (k, v) in &result.metadata {
        writeln!(w, "# {k}={v}")?;
    }
    for g in &result.gaps {
        writeln!(
            w,
            "# gap mode={} source={} ber={} snr_db={} gap_db={}",
            g.mode,
            g.source,
            g.ber,
            opt(g.snr_db),
            opt(g.gap_db)
        )?;
    }
    writeln!(w, "# wall_time_s={:.3}", result.wall_time_s)?;
    writeln!(w, "{CSV_COLUMNS}")?;
    for p in &result.points {
        for (label, c) in p.by_source() {
            let (lo, hi) = c.ber_interval();
            writeln!(
                w,
                "{},{},{},{},{},{},{},{},{},{},{}",
                p.snr_db,
                p.mode,
                label,
                c.frames,
                c.frame_errors,
                c.bit_errors,
                c.fer(),
                c.ber(),
                lo,
                hi,
                result.limit_db
            )?;
        }
    }
    Ok(())
}

pub fn to_csv_string(result: &SimResult) -> String {
    let mut buf = Vec::new();
    write_csv(result, &mut buf).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("CSV output is ASCII")
}

/// Lines of a CSV text that are not `#` metadata.
pub fn csv_body(text: &str) -> String {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect()
}

pub fn write_csv_file(result: &SimResult, path: &Path) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = std::io::BufWriter::new(file);
    write_csv(result, &mut w)
        .and_then(|_| w.flush())
        .map_err(|e| Error::io(path, e))
}

pub fn write_trace_file(rows: &[(f64, DecoderMode, TraceRow)], path: &Path) -> Result<()> {
    let mut text = format!("snr_db,mode,{}\n", TraceRow::CSV_HEADER);
    for (snr, mode, row) in rows {
        text.push_str(&format!("{snr},{mode},{}\n", row.to_csv()));
    }
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}
