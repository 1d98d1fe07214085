//! Correlated binary Markov sources.
//!
//! The first source is a stationary two-state Markov chain whose emitted bit
//! is the current state. The second source is the first one observed through
//! a binary symmetric "correlation channel": `b2[i] = b1[i] ^ z[i]` with
//! `z[i] ~ Bernoulli(p)`.
//!
//! Entropies are in bits (log base 2).

use rand::Rng;

use crate::bits::BitSequence;
use crate::error::{Error, Result};
use crate::num::Real;

fn check_probability<T: Real>(name: &'static str, value: T, hi: f64) -> Result<()> {
    let v = value.as_f64();
    if v.is_nan() || !(0.0..=hi).contains(&v) {
        return Err(Error::OutOfRange {
            name,
            value: v,
            lo: 0.0,
            hi,
        });
    }
    Ok(())
}

/// Transition probabilities of the two-state chain.
///
/// `alpha = P(S_t = 1 | S_{t-1} = 0)` and `beta = P(S_t = 0 | S_{t-1} = 1)`.
/// A chain with `alpha + beta = 0` can be represented (it is useful for
/// generating constant sequences) but has no unique stationary distribution;
/// every operation that needs one returns [`Error::DegenerateChain`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarkovParams<T> {
    alpha: T,
    beta: T,
}

impl<T: Real> MarkovParams<T> {
    pub fn new(alpha: T, beta: T) -> Result<Self> {
        check_probability("alpha", alpha, 1.0)?;
        check_probability("beta", beta, 1.0)?;
        Ok(Self { alpha, beta })
    }

    /// Symmetric chain with `alpha = beta`.
    pub fn symmetric(flip: T) -> Result<Self> {
        Self::new(flip, flip)
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    pub fn is_degenerate(&self) -> bool {
        self.alpha + self.beta <= T::zero()
    }

    /// Row-stochastic transition matrix `[[1-a, a], [b, 1-b]]`.
    pub fn transition_matrix(&self) -> [[T; 2]; 2] {
        let one = T::one();
        [[one - self.alpha, self.alpha], [self.beta, one - self.beta]]
    }

    /// The chain with states relabelled `0 <-> 1`.
    pub fn relabeled(&self) -> Self {
        Self {
            alpha: self.beta,
            beta: self.alpha,
        }
    }
}

/// Bit-flip probability `p` between the two sources.
///
/// Any `p` in `[0, 1]` can be used to generate data; the decoders only model
/// `p <= 0.5` and reject larger values through [`CorrelationParams::ensure_decodable`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationParams<T> {
    p: T,
}

impl<T: Real> CorrelationParams<T> {
    pub fn new(p: T) -> Result<Self> {
        check_probability("p", p, 1.0)?;
        Ok(Self { p })
    }

    pub fn p(&self) -> T {
        self.p
    }

    pub fn ensure_decodable(&self) -> Result<()> {
        check_probability("p", self.p, 0.5)
    }
}

/// `h(p) = -p log2 p - (1-p) log2 (1-p)` with `0 log 0 = 0`.
pub fn binary_entropy<T: Real>(p: T) -> Result<T> {
    check_probability("p", p, 1.0)?;
    let term = |x: T| {
        if x <= T::zero() {
            T::zero()
        } else {
            -x * x.log2()
        }
    };
    Ok(term(p) + term(T::one() - p))
}

/// `(mu0, mu1) = (beta, alpha) / (alpha + beta)`.
pub fn stationary_distribution<T: Real>(params: &MarkovParams<T>) -> Result<(T, T)> {
    if params.is_degenerate() {
        return Err(Error::DegenerateChain);
    }
    let total = params.alpha + params.beta;
    Ok((params.beta / total, params.alpha / total))
}

/// Entropy rate `mu0 h(alpha) + mu1 h(beta)` of the stationary chain.
pub fn entropy_rate<T: Real>(params: &MarkovParams<T>) -> Result<T> {
    let (mu0, mu1) = stationary_distribution(params)?;
    Ok(mu0 * binary_entropy(params.alpha)? + mu1 * binary_entropy(params.beta)?)
}

/// Joint entropy rate of the source pair: `H(s1) + h(p)`.
pub fn joint_entropy<T: Real>(params: &MarkovParams<T>, corr: &CorrelationParams<T>) -> Result<T> {
    Ok(entropy_rate(params)? + binary_entropy(corr.p)?)
}

fn bernoulli<T: Real, R: Rng + ?Sized>(prob: T, rng: &mut R) -> bool {
    rng.random::<f64>() < prob.as_f64()
}

/// Draws `length` bits of the chain, starting from the stationary distribution.
pub fn generate_markov<T: Real, R: Rng + ?Sized>(
    params: &MarkovParams<T>,
    length: usize,
    rng: &mut R,
) -> Result<BitSequence> {
    let (_, mu1) = stationary_distribution(params)?;
    let initial = u8::from(bernoulli(mu1, rng));
    Ok(generate_markov_from(params, initial, length, rng))
}

/// Draws `length` bits of the chain with a fixed first state.
pub fn generate_markov_from<T: Real, R: Rng + ?Sized>(
    params: &MarkovParams<T>,
    initial: u8,
    length: usize,
    rng: &mut R,
) -> BitSequence {
    let mut bits = Vec::with_capacity(length);
    let mut state = initial & 1;
    for t in 0..length {
        if t > 0 {
            let flip = if state == 0 { params.alpha } else { params.beta };
            if bernoulli(flip, rng) {
                state ^= 1;
            }
        }
        bits.push(state);
    }
    BitSequence::from_vec_unchecked(bits)
}

/// `src[i] ^ z[i]` with independent `z[i] ~ Bernoulli(p)`.
pub fn apply_correlation<T: Real, R: Rng + ?Sized>(
    src: &BitSequence,
    corr: &CorrelationParams<T>,
    rng: &mut R,
) -> BitSequence {
    let bits = src
        .iter()
        .map(|&b| b ^ u8::from(bernoulli(corr.p, rng)))
        .collect();
    BitSequence::from_vec_unchecked(bits)
}
