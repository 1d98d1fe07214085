//! Stateless message rules shared by the joint decoder.

use crate::bits::BitSequence;
use crate::channel::LlrVector;
use crate::error::{Error, Result};
use crate::num::{clamp_llr, softplus, Real};

/// How the weight of the estimated error vector is turned into a reliability.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ErrorLlrForm {
    /// `(k - W) / W`, the expression used by the original scheme.
    #[default]
    OddsRatio,
    /// `ln((k - W) / W)`, the log-likelihood ratio of a Bernoulli(W/k) error.
    LogOdds,
    /// `ln((k - W) / W)` on every position regardless of `z`: the weight only
    /// estimates the crossover probability, so the update carries the other
    /// channel's belief through a binary symmetric channel.
    CrossoverPrior,
}

/// Tanh rule: `2 atanh(prod_{i != exclude} tanh(incoming[i] / 2))`, clamped.
///
/// The product runs over `incoming` in order, skipping `exclude`.
pub fn check_rule<T: Real>(incoming: &[T], exclude: usize, clamp: T) -> T {
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    let prod = incoming
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != exclude)
        .fold(T::one(), |acc, (_, &x)| acc * (x * half).tanh());
    clamp_llr(two * prod.atanh(), clamp)
}

/// Hard decision: 0 when the LLR is non-negative, 1 otherwise.
pub fn hard_decision<T: Real>(llr: &[T]) -> BitSequence {
    BitSequence::from_vec_unchecked(llr.iter().map(|&l| u8::from(l < T::zero())).collect())
}

/// Estimated correlation noise `b1 ^ b2`.
pub fn estimate_error_vector(b1: &BitSequence, b2: &BitSequence) -> Result<BitSequence> {
    Error::check_len(b1.len(), b2.len())?;
    Ok(BitSequence::from_vec_unchecked(
        b1.iter().zip(b2.iter()).map(|(x, y)| x ^ y).collect(),
    ))
}

/// Reliability of each estimated error bit: `(1 - 2 z) * r` where `r` is
/// `(k - W) / W` (or its logarithm), and the Hamming weight `W` is saturated
/// to `[1, k - 1]`. With [`ErrorLlrForm::CrossoverPrior`] every entry is the
/// positive log-odds.
pub fn error_llr<T: Real>(zhat: &BitSequence, form: ErrorLlrForm) -> LlrVector<T> {
    let k = zhat.len();
    if k == 0 {
        return LlrVector::zeros(0);
    }
    let weight = zhat.weight().clamp(1, (k - 1).max(1));
    let odds = T::lit((k - weight) as f64) / T::lit(weight as f64);
    let magnitude = match form {
        ErrorLlrForm::OddsRatio => odds,
        ErrorLlrForm::LogOdds | ErrorLlrForm::CrossoverPrior => odds.ln(),
    };
    if form == ErrorLlrForm::CrossoverPrior {
        return LlrVector::new(vec![magnitude; k]);
    }
    zhat.iter()
        .map(|&z| if z == 0 { magnitude } else { -magnitude })
        .collect()
}

/// Box-plus `2 atanh(tanh(a/2) tanh(b/2))`, evaluated in the form
/// `sign(a) sign(b) min(|a|, |b|) + ln(1 + e^-|a+b|) - ln(1 + e^-|a-b|)`,
/// which stays accurate when the result is large.
pub fn boxplus<T: Real>(a: T, b: T) -> T {
    if a == T::zero() || b == T::zero() {
        return T::zero();
    }
    let sign = if (a < T::zero()) == (b < T::zero()) {
        T::one()
    } else {
        -T::one()
    };
    let core = sign * a.abs().min(b.abs());
    // ln(1 + e^-x) = softplus(-x)
    core + softplus(-(a + b).abs()) - softplus(-(a - b).abs())
}

/// Cross-source update: `z_llr[v] boxplus other_posterior[v]`, clamped.
pub fn cross_update<T: Real>(z_llr: &[T], other_posterior: &[T], clamp: T) -> Result<LlrVector<T>> {
    Error::check_len(z_llr.len(), other_posterior.len())?;
    Ok(z_llr
        .iter()
        .zip(other_posterior)
        .map(|(&z, &o)| clamp_llr(boxplus(z, o), clamp))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const CLAMP: f64 = 30.0;

    #[test]
    fn check_rule_examples() {
        assert_eq!(check_rule(&[3.0, 0.0, -1.0], 2, CLAMP), 0.0);
        assert_eq!(check_rule(&[f64::INFINITY, f64::INFINITY], 0, CLAMP), CLAMP);
        // 2 atanh(tanh(15)^2) = 30 - ln 2 up to e^-30 terms; the product sits
        // 4e-13 below 1, so only about three digits survive in double.
        let saturated = check_rule(&[CLAMP, CLAMP, 1.0], 2, CLAMP);
        assert!((saturated - (CLAMP - 2f64.ln())).abs() < 1e-3, "{saturated}");
        // 2 atanh(tanh(1) tanh(-0.5)), 40-digit reference.
        let v = check_rule(&[9.0, 2.0, -1.0], 0, CLAMP);
        assert!((v - (-0.735_325_664_055_519_2)).abs() < 1e-12);
        // Single-edge check: empty product is 1.
        assert_eq!(check_rule(&[1.0], 0, CLAMP), CLAMP);
    }

    #[test]
    fn hard_decision_tie_goes_to_zero() {
        assert_eq!(hard_decision(&[0.1, -0.1, 0.0]).to_string(), "010");
        assert_eq!(hard_decision(&[1.0, 2.0, 3.0]).to_string(), "000");
        assert_eq!(hard_decision(&[-0.1, 0.1, -0.0]).to_string(), "100");
    }

    #[test]
    fn error_vector_examples() {
        let a = BitSequence::parse("0101").unwrap();
        let b = BitSequence::parse("0110").unwrap();
        assert_eq!(estimate_error_vector(&a, &b).unwrap().to_string(), "0011");
        assert_eq!(estimate_error_vector(&a, &a).unwrap().weight(), 0);
        let c = BitSequence::parse("1010").unwrap();
        assert_eq!(estimate_error_vector(&a, &c).unwrap().to_string(), "1111");
        assert!(estimate_error_vector(&a, &BitSequence::parse("01").unwrap()).is_err());
    }

    #[test]
    fn error_llr_examples() {
        let z = BitSequence::parse("0001").unwrap();
        let l: LlrVector<f64> = error_llr(&z, ErrorLlrForm::OddsRatio);
        assert_eq!(&l[..], &[3.0, 3.0, 3.0, -3.0]);
        let balanced = BitSequence::parse("0110").unwrap();
        let l: LlrVector<f64> = error_llr(&balanced, ErrorLlrForm::OddsRatio);
        assert!(l.iter().all(|x| x.abs() == 1.0));
        let zeros = BitSequence::zeros(100);
        let l: LlrVector<f64> = error_llr(&zeros, ErrorLlrForm::OddsRatio);
        assert!(l.iter().all(|&x| x == 99.0));
        let ones = BitSequence::from_bits(vec![1; 100]).unwrap();
        let l: LlrVector<f64> = error_llr(&ones, ErrorLlrForm::OddsRatio);
        assert!(l.iter().all(|&x| x == -1.0 / 99.0));
        let l: LlrVector<f64> = error_llr(&z, ErrorLlrForm::LogOdds);
        assert!((l[0] - 3f64.ln()).abs() < 1e-15 && (l[3] + 3f64.ln()).abs() < 1e-15);
        let l: LlrVector<f64> = error_llr(&z, ErrorLlrForm::CrossoverPrior);
        assert!(l.iter().all(|&x| (x - 3f64.ln()).abs() < 1e-15));
    }

    proptest! {
        /// With the sign taken from z, the update always agrees with the
        /// receiving channel's own hard decision, flipped only when the
        /// magnitude itself is negative (log form with more than k/2 errors).
        #[test]
        fn signed_forms_echo_own_decision(
            own in proptest::collection::vec(-8.0f64..8.0, 2..64),
            other_seed in proptest::collection::vec(-8.0f64..8.0, 64),
        ) {
            let other = &other_seed[..own.len()];
            let own_bits = hard_decision(&own);
            let zhat = estimate_error_vector(&own_bits, &hard_decision(other)).unwrap();
            let k = own.len();
            let w = zhat.weight().clamp(1, k - 1);
            for (form, flipped) in [(ErrorLlrForm::OddsRatio, false), (ErrorLlrForm::LogOdds, 2 * w > k)] {
                let z = error_llr::<f64>(&zhat, form);
                let up = cross_update(&z, other, CLAMP).unwrap();
                for v in 0..k {
                    if up[v] != 0.0 {
                        prop_assert_eq!(up[v] < 0.0, (own_bits[v] == 1) != flipped);
                    }
                }
            }
        }
    }

    #[test]
    fn cross_update_examples() {
        let out = cross_update(&[0.0, 2.0], &[5.0, 1.0], CLAMP).unwrap();
        assert_eq!(out[0], 0.0);
        // 2 atanh(tanh(1) tanh(0.5)).
        assert!((out[1] - 0.735_325_664_055_519_2).abs() < 1e-12);
        let strong = cross_update(&[CLAMP, CLAMP], &[-4.0, 50.0], CLAMP).unwrap();
        assert!((strong[0] + 4.0).abs() < 1e-9);
        assert!((strong[1] - CLAMP).abs() < 1e-8);
        assert!(cross_update(&[1.0], &[1.0, 2.0], CLAMP).is_err());
    }

    proptest! {
        #[test]
        fn boxplus_agrees_with_tanh_form(a in -12.0f64..12.0, b in -12.0f64..12.0) {
            let direct = 2.0 * ((a / 2.0).tanh() * (b / 2.0).tanh()).atanh();
            prop_assert!((boxplus(a, b) - direct).abs() < 1e-9);
            prop_assert_eq!(boxplus(a, b), boxplus(b, a));
            prop_assert!((boxplus(-a, b) + boxplus(a, b)).abs() < 1e-12);
            prop_assert!(boxplus(a, b).abs() <= a.abs().min(b.abs()) + 1e-12);
        }

        #[test]
        fn hard_decision_antisymmetry(llr in proptest::collection::vec(-5.0f64..5.0, 0..64)) {
            let pos = hard_decision(&llr);
            let neg: Vec<f64> = llr.iter().map(|x| -x).collect();
            let flipped = hard_decision(&neg);
            for (i, &l) in llr.iter().enumerate() {
                if l != 0.0 {
                    prop_assert_eq!(pos[i] ^ 1, flipped[i]);
                }
            }
        }
    }
}
