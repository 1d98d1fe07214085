//! Shannon / Slepian-Wolf limits for the symmetric two-channel setup.

use crate::error::{Error, Result};
use crate::num::Real;

/// Code rates of the two channels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatePair<T> {
    pub rc1: T,
    pub rc2: T,
}

impl<T: Real> RatePair<T> {
    pub fn new(rc1: T, rc2: T) -> Result<Self> {
        for (name, r) in [("rc1", rc1), ("rc2", rc2)] {
            if !(r > T::zero() && r <= T::one()) {
                return Err(Error::OutOfRange {
                    name,
                    value: r.as_f64(),
                    lo: 0.0,
                    hi: 1.0,
                });
            }
        }
        Ok(Self { rc1, rc2 })
    }

    pub fn symmetric(rate: T) -> Result<Self> {
        Self::new(rate, rate)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rc1 == self.rc2
    }
}

/// Source bits per channel use: `H(s1, s2) / (1/rc1 + 1/rc2)`.
pub fn total_rate<T: Real>(h_joint: T, rates: &RatePair<T>) -> T {
    h_joint / (rates.rc1.recip() + rates.rc2.recip())
}

/// Minimum `Eso/N0` in dB, `10 log10((2^(H R) - 1) / (2 R))`, for two
/// channels of equal rate `R`.
pub fn shannon_sw_limit<T: Real>(h_joint: T, rate: T) -> Result<T> {
    RatePair::symmetric(rate)?;
    let two = T::lit(2.0);
    // exp_m1 keeps precision when H R is small.
    let numerator = (h_joint * rate * T::LN_2()).exp_m1();
    Ok(T::lit(10.0) * (numerator / (two * rate)).log10())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::source::{joint_entropy, CorrelationParams, MarkovParams};
    use proptest::prelude::*;

    #[test]
    fn total_rate_examples() {
        let half = RatePair::symmetric(0.5f64).unwrap();
        assert!((total_rate(0.5498, &half) - 0.13745).abs() < 1e-15);
        assert_eq!(total_rate(2.0, &RatePair::symmetric(1.0).unwrap()), 1.0);
        let r = 0.32f64;
        assert!((total_rate(0.7, &RatePair::symmetric(r).unwrap()) - 0.7 * r / 2.0).abs() < 1e-15);
        assert!(RatePair::new(0.0, 0.5).is_err());
        assert!(!RatePair::new(0.5, 0.32).unwrap().is_symmetric());
    }

    #[test]
    fn limit_examples() {
        assert!(shannon_sw_limit(2.0f64, 0.5).unwrap().abs() < 1e-12);
        let h = joint_entropy(
            &MarkovParams::symmetric(0.1).unwrap(),
            &CorrelationParams::new(0.01).unwrap(),
        )
        .unwrap();
        let lim: f64 = shannon_sw_limit(h, 0.5).unwrap();
        // mpmath reference.
        assert!((lim - (-6.779_761_905_601_425)).abs() < 1e-9, "{lim}");
        assert!(shannon_sw_limit(1.0f64, 0.0).is_err());
    }

    #[test]
    fn small_entropy_asymptote() {
        let h = 1e-9f64;
        let ratio = 10f64.powf(shannon_sw_limit(h, 0.5).unwrap() / 10.0);
        assert!((ratio / (h * std::f64::consts::LN_2 / 2.0) - 1.0).abs() < 1e-6);
        assert!(shannon_sw_limit(1e-300f64, 0.5).unwrap() < -2000.0);
    }

    #[test]
    fn limit_increases_with_correlation_noise() {
        let m = MarkovParams::symmetric(0.1).unwrap();
        let limits: Vec<f64> = [0.01, 0.05, 0.1, 0.2]
            .iter()
            .map(|&p| shannon_sw_limit(joint_entropy(&m, &CorrelationParams::new(p).unwrap()).unwrap(), 0.5).unwrap())
            .collect();
        assert!(limits.windows(2).all(|w| w[0] < w[1]), "{limits:?}");
    }

    proptest! {
        #[test]
        fn strictly_increasing_in_entropy(h in 0.01f64..2.0, dh in 1e-6f64..1.0, rate in 0.05f64..1.0) {
            prop_assert!(shannon_sw_limit(h + dh, rate).unwrap() > shannon_sw_limit(h, rate).unwrap());
        }

        #[test]
        fn closed_form_for_fixed_product(hr in 0.01f64..1.0, rate in 0.05f64..1.0) {
            let h = hr / rate;
            let expected = 10.0 * ((2f64.powf(hr) - 1.0) / (2.0 * rate)).log10();
            prop_assert!((shannon_sw_limit(h, rate).unwrap() - expected).abs() < 1e-9);
        }
    }
}
