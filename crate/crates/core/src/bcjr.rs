//! Forward-backward decoding on the two-state trellis of the Markov source.
//!
//! The emitted bit equals the state, so the a-priori LLR of bit `t` is the
//! only per-step observation. The recursions run in the log domain with an
//! exact log-sum-exp. The trellis starts from the stationary distribution and
//! is left unterminated.

use crate::channel::LlrVector;
use crate::error::{Error, Result};
use crate::num::{clamp_llr, log_add, softplus, Real};
use crate::source::{stationary_distribution, MarkovParams};

#[derive(Debug, Clone, PartialEq)]
pub struct MarkovTrellis<T> {
    /// `log_transition[i][j] = ln P(S_t = j | S_{t-1} = i)`.
    log_transition: [[T; 2]; 2],
    log_initial: [T; 2],
    len: usize,
}

impl<T: Real> MarkovTrellis<T> {
    pub fn new(params: &MarkovParams<T>, len: usize) -> Result<Self> {
        let (mu0, mu1) = stationary_distribution(params)?;
        let pi = params.transition_matrix();
        Ok(Self {
            log_transition: [[pi[0][0].ln(), pi[0][1].ln()], [pi[1][0].ln(), pi[1][1].ln()]],
            log_initial: [mu0.ln(), mu1.ln()],
            len,
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn log_transition(&self) -> &[[T; 2]; 2] {
        &self.log_transition
    }

    pub fn log_initial(&self) -> &[T; 2] {
        &self.log_initial
    }

    /// Extrinsic LLRs: posterior LLR of each bit minus its own a-priori LLR,
    /// saturated at `clamp`.
    pub fn extrinsic(&self, apriori: &[T], clamp: T) -> Result<LlrVector<T>> {
        let mut out = vec![T::zero(); apriori.len()];
        self.extrinsic_into(apriori, clamp, &mut out)?;
        Ok(LlrVector::new(out))
    }

    /// As [`extrinsic`](Self::extrinsic), writing into `out`.
    pub fn extrinsic_into(&self, apriori: &[T], clamp: T, out: &mut [T]) -> Result<()> {
        Error::check_len(self.len, apriori.len())?;
        Error::check_len(self.len, out.len())?;
        let k = self.len;
        if k == 0 {
            return Ok(());
        }
        let lt = &self.log_transition;
        // ln P(bit = s) implied by an LLR, for s = 0 and s = 1.
        let branch = |l: T| [-softplus(-l), -softplus(l)];

        // forward[t][s]: log-probability of the path into state s at t,
        // excluding the a-priori term of step t itself.
        let mut forward = vec![[T::zero(); 2]; k];
        forward[0] = self.log_initial;
        for t in 1..k {
            let g = branch(apriori[t - 1]);
            let prev = [forward[t - 1][0] + g[0], forward[t - 1][1] + g[1]];
            for s in 0..2 {
                forward[t][s] = log_add(prev[0] + lt[0][s], prev[1] + lt[1][s]);
            }
            normalize(&mut forward[t]);
        }
        // backward[s]: log-likelihood of steps t+1.. given state s at t.
        let mut backward = [T::zero(); 2];
        for t in (0..k).rev() {
            let ext = (forward[t][0] + backward[0]) - (forward[t][1] + backward[1]);
            out[t] = clamp_llr(ext, clamp);
            let g = branch(apriori[t]);
            let next = [g[0] + backward[0], g[1] + backward[1]];
            let mut b = [T::zero(); 2];
            for (s, slot) in b.iter_mut().enumerate() {
                *slot = log_add(lt[s][0] + next[0], lt[s][1] + next[1]);
            }
            normalize(&mut b);
            backward = b;
        }
        Ok(())
    }
}

fn normalize<T: Real>(pair: &mut [T; 2]) {
    let top = pair[0].max(pair[1]);
    if top.is_finite() {
        pair[0] = pair[0] - top;
        pair[1] = pair[1] - top;
    }
}

/// Convenience wrapper: build the trellis for `params` and return the
/// extrinsic LLRs for `apriori`.
pub fn bcjr_extrinsic<T: Real>(params: &MarkovParams<T>, apriori: &[T], clamp: T) -> Result<LlrVector<T>> {
    MarkovTrellis::new(params, apriori.len())?.extrinsic(apriori, clamp)
}
