//! Reference implementations used as test oracles. They share no code with
//! the library beyond plain data.

#![allow(dead_code)]

/// Joint entropy and limit at alpha = beta = 0.1, rate 1/2, computed with
/// mpmath at 40 significant digits: `(p, H(s1, s2), limit in dB)`.
pub const LIMIT_REFERENCE: [(f64, f64, f64); 4] = [
    (0.01, 0.549_788_729_485_192_395_458_467_731_223_8, -6.779_761_905_601_425_279_392_271_061_9),
    (0.05, 0.755_392_550_705_237_361_810_432_639_020_6, -5.239_433_399_804_945_783_217_922_299_3),
    (0.1, 0.937_991_187_178_562_460_103_797_275_447_6, -4.155_042_629_514_850_926_183_056_678_8),
    (0.2, 1.190_923_688_476_643_591_328_369_252_375_8, -2.916_163_228_237_125_782_934_796_905_4),
];

/// Posterior LLRs of a two-state Markov chain (emitted bit = state, started
/// in the stationary distribution) given per-bit a-priori LLRs, by summing
/// over all 2^k state sequences.
pub fn brute_force_posterior(alpha: f64, beta: f64, apriori: &[f64]) -> Vec<f64> {
    let k = apriori.len();
    let pi = [[1.0 - alpha, alpha], [beta, 1.0 - beta]];
    let mu = [beta / (alpha + beta), alpha / (alpha + beta)];
    let p_bit = |l: f64, b: usize| {
        if b == 0 {
            1.0 / (1.0 + (-l).exp())
        } else {
            1.0 / (1.0 + l.exp())
        }
    };
    let mut mass = vec![[0.0f64; 2]; k];
    for seq in 0..(1usize << k) {
        let bit = |t: usize| (seq >> t) & 1;
        let mut w = mu[bit(0)];
        for t in 1..k {
            w *= pi[bit(t - 1)][bit(t)];
        }
        for (t, &l) in apriori.iter().enumerate() {
            w *= p_bit(l, bit(t));
        }
        for (t, m) in mass.iter_mut().enumerate() {
            m[bit(t)] += w;
        }
    }
    mass.iter().map(|m| (m[0] / m[1]).ln()).collect()
}

fn clamp(x: f64, bound: f64) -> f64 {
    x.max(-bound).min(bound)
}

/// LLR of `x = a xor b` from LLRs of independent `a` and `b`, evaluated on
/// probabilities and clamped.
pub fn xor_llr_probability_domain(la: f64, lb: f64, bound: f64) -> f64 {
    let p0 = |l: f64| 1.0 / (1.0 + (-l).exp());
    let p1 = |l: f64| 1.0 / (1.0 + l.exp());
    let zero = p0(la) * p0(lb) + p1(la) * p1(lb);
    let one = p0(la) * p1(lb) + p1(la) * p0(lb);
    clamp(zero.ln() - one.ln(), bound)
}

/// Messages of one flooding iteration, `[check][var]`, zero off the support.
#[derive(Debug, Clone)]
pub struct IterationMessages {
    pub var_to_check: Vec<Vec<f64>>,
    pub check_to_var: Vec<Vec<f64>>,
}

#[derive(Debug, Clone)]
pub struct PlainSpOutcome {
    pub word: Vec<u8>,
    pub iterations: usize,
    pub success: bool,
    pub history: Vec<IterationMessages>,
}

/// Textbook flooding sum-product on a dense parity-check matrix.
pub fn plain_sum_product(h: &[Vec<u8>], llr: &[f64], max_iter: usize, bound: f64) -> PlainSpOutcome {
    let m = h.len();
    let n = llr.len();
    let mut vc = vec![vec![0.0; n]; m];
    let mut cv = vec![vec![0.0; n]; m];
    let mut history = Vec::new();
    let mut word = vec![0u8; n];
    for it in 1..=max_iter {
        for v in 0..n {
            for c in 0..m {
                if h[c][v] == 0 {
                    continue;
                }
                let mut s = llr[v];
                for c2 in 0..m {
                    if c2 != c && h[c2][v] == 1 {
                        s += cv[c2][v];
                    }
                }
                vc[c][v] = clamp(s, bound);
            }
        }
        for c in 0..m {
            for v in 0..n {
                if h[c][v] == 0 {
                    continue;
                }
                let mut prod = 1.0;
                for v2 in 0..n {
                    if v2 != v && h[c][v2] == 1 {
                        prod *= (vc[c][v2] * 0.5).tanh();
                    }
                }
                cv[c][v] = clamp(2.0 * prod.atanh(), bound);
            }
        }
        history.push(IterationMessages {
            var_to_check: vc.clone(),
            check_to_var: cv.clone(),
        });
        for v in 0..n {
            let mut s = llr[v];
            for c in 0..m {
                if h[c][v] == 1 {
                    s += cv[c][v];
                }
            }
            word[v] = u8::from(s < 0.0);
        }
        let satisfied = h
            .iter()
            .all(|row| row.iter().zip(&word).filter(|(&a, &b)| a == 1 && b == 1).count() % 2 == 0);
        if satisfied {
            return PlainSpOutcome {
                word,
                iterations: it,
                success: true,
                history,
            };
        }
    }
    PlainSpOutcome {
        word,
        iterations: max_iter,
        success: false,
        history,
    }
}
