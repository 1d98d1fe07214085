//! Error counters, binomial confidence intervals and curve interpolation.

use std::ops::AddAssign;

/// Two-sided 95% standard normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

/// Error counts of one source (or of the pair) over a number of frames.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ErrorCounts {
    pub frames: u64,
    pub frame_errors: u64,
    pub bit_errors: u64,
    /// Bits compared per frame.
    pub bits_per_frame: u64,
}

impl ErrorCounts {
    pub fn new(bits_per_frame: u64) -> Self {
        Self {
            bits_per_frame,
            ..Self::default()
        }
    }

    pub fn record(&mut self, bit_errors: u64) {
        self.frames += 1;
        self.bit_errors += bit_errors;
        self.frame_errors += u64::from(bit_errors > 0);
    }

    pub fn bits(&self) -> u64 {
        self.frames * self.bits_per_frame
    }

    pub fn fer(&self) -> f64 {
        ratio(self.frame_errors, self.frames)
    }

    pub fn ber(&self) -> f64 {
        ratio(self.bit_errors, self.bits())
    }

    /// 95% Wilson interval of the BER.
    pub fn ber_interval(&self) -> (f64, f64) {
        wilson_interval(self.bit_errors, self.bits(), Z95)
    }
}

impl AddAssign for ErrorCounts {
    fn add_assign(&mut self, rhs: Self) {
        debug_assert!(self.frames == 0 || rhs.frames == 0 || self.bits_per_frame == rhs.bits_per_frame);
        self.bits_per_frame = self.bits_per_frame.max(rhs.bits_per_frame);
        self.frames += rhs.frames;
        self.frame_errors += rhs.frame_errors;
        self.bit_errors += rhs.bit_errors;
    }
}

fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Wilson score interval for `successes` out of `trials`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let phat = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (phat + z2 / (2.0 * n)) / denom;
    let half = z * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let lo = if successes == 0 { 0.0 } else { (centre - half).max(0.0) };
    let hi = if successes == trials { 1.0 } else { (centre + half).min(1.0) };
    (lo, hi)
}

/// SNR at which a curve first crosses `target`, interpolating linearly in
/// `log10(BER)` between the two bracketing points. `points` are
/// `(snr_db, ber)` sorted by SNR. Points with zero BER are treated as lying
/// below any positive target but are not used for interpolation.
pub fn snr_at_ber(points: &[(f64, f64)], target: f64) -> Option<f64> {
    if !(target > 0.0) {
        return None;
    }
    for pair in points.windows(2) {
        let ((s0, b0), (s1, b1)) = (pair[0], pair[1]);
        if b0 >= target && b1 < target {
            if b1 <= 0.0 || b0 <= 0.0 {
                return Some(s1);
            }
            let (l0, l1, lt) = (b0.log10(), b1.log10(), target.log10());
            if l0 == l1 {
                return Some(s0);
            }
            return Some(s0 + (s1 - s0) * (l0 - lt) / (l0 - l1));
        }
    }
    None
}
