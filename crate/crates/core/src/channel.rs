//! BPSK over AWGN.
//!
//! Bit 0 maps to +1 and bit 1 to -1, so a non-negative LLR decides 0.
//! SNR is expressed as energy per source bit over N0 in the symmetric
//! two-channel setting with unit symbol energy, which gives
//! `sigma^2 = 1 / (2 * rate * Eso/N0)` with `N0 = 2 sigma^2`.

use std::ops::Deref;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::bits::BitSequence;
use crate::error::{Error, Result};
use crate::num::Real;

/// Natural-log LLRs, positive when bit 0 is more likely.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LlrVector<T>(Vec<T>);

impl<T: Real> LlrVector<T> {
    pub fn new(values: Vec<T>) -> Self {
        Self(values)
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![T::zero(); len])
    }

    pub fn into_vec(self) -> Vec<T> {
        self.0
    }
}

impl<T> Deref for LlrVector<T> {
    type Target = [T];

    fn deref(&self) -> &[T] {
        &self.0
    }
}

impl<T> FromIterator<T> for LlrVector<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

/// Received samples and the noise variance per real dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelObservation<T> {
    pub received: Vec<T>,
    pub sigma2: T,
}

/// Noise standard deviation for a given `Eso/N0` in dB and code rate.
pub fn sigma_from_eso_n0<T: Real>(eso_n0_db: T, rate: T) -> Result<T> {
    if !(rate > T::zero() && rate <= T::one()) {
        return Err(Error::OutOfRange {
            name: "rate",
            value: rate.as_f64(),
            lo: 0.0,
            hi: 1.0,
        });
    }
    let ten = T::lit(10.0);
    let linear = ten.powf(eso_n0_db / ten);
    let sigma2 = T::one() / (T::lit(2.0) * rate * linear);
    Ok(sigma2.sqrt())
}

/// BPSK-modulates `codeword` and adds white Gaussian noise of std-dev `sigma`.
pub fn transmit<T: Real, R: Rng + ?Sized>(
    codeword: &BitSequence,
    sigma: T,
    rng: &mut R,
) -> ChannelObservation<T> {
    let received = codeword
        .iter()
        .map(|&b| {
            let symbol = if b == 0 { T::one() } else { -T::one() };
            let noise: f64 = rng.sample(StandardNormal);
            symbol + sigma * T::lit(noise)
        })
        .collect();
    ChannelObservation {
        received,
        sigma2: sigma * sigma,
    }
}

/// `2 r / sigma^2` per sample.
pub fn channel_llr<T: Real>(obs: &ChannelObservation<T>) -> Result<LlrVector<T>> {
    if !(obs.sigma2 > T::zero()) {
        return Err(Error::OutOfRange {
            name: "sigma2",
            value: obs.sigma2.as_f64(),
            lo: f64::MIN_POSITIVE,
            hi: f64::INFINITY,
        });
    }
    let scale = T::lit(2.0) / obs.sigma2;
    Ok(obs.received.iter().map(|&r| scale * r).collect())
}
