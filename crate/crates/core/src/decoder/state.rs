//! Message arrays of one channel's concatenated SP/BCJR decoder.
//!
//! Edge-indexed arrays follow the edge numbering of [`TannerGraph`].
//! Source-indexed arrays (`markov`, `update`) have length `k` and follow the
//! source order, i.e. entry `i` belongs to column `info_positions()[i]`.

use crate::bcjr::MarkovTrellis;
use crate::bits::BitSequence;
use crate::channel::LlrVector;
use crate::error::{Error, Result};
use crate::ldpc::{SystematicCode, TannerGraph};
use crate::num::{clamp_llr, Real};

use super::messages::check_rule;

#[derive(Debug, Clone)]
pub struct ChannelState<'a, T> {
    code: &'a SystematicCode,
    clamp: T,
    channel: Vec<T>,
    var_to_check: Vec<T>,
    check_to_var: Vec<T>,
    markov: Vec<T>,
    update: Vec<T>,
    scratch: Vec<T>,
}

impl<'a, T: Real> ChannelState<'a, T> {
    /// Fresh state: every message zero, channel LLRs as given.
    pub fn new(code: &'a SystematicCode, channel: LlrVector<T>, clamp: T) -> Result<Self> {
        Error::check_len(code.n(), channel.len())?;
        let edges = code.graph().num_edges();
        let k = code.k();
        Ok(Self {
            code,
            clamp,
            channel: channel.into_vec(),
            var_to_check: vec![T::zero(); edges],
            check_to_var: vec![T::zero(); edges],
            markov: vec![T::zero(); k],
            update: vec![T::zero(); k],
            scratch: Vec::new(),
        })
    }

    pub fn code(&self) -> &'a SystematicCode {
        self.code
    }

    fn graph(&self) -> &'a TannerGraph {
        self.code.graph()
    }

    pub fn clamp(&self) -> T {
        self.clamp
    }

    pub fn channel_llr(&self) -> &[T] {
        &self.channel
    }

    pub fn var_to_check(&self) -> &[T] {
        &self.var_to_check
    }

    pub fn check_to_var(&self) -> &[T] {
        &self.check_to_var
    }

    pub fn check_to_var_mut(&mut self) -> &mut [T] {
        &mut self.check_to_var
    }

    pub fn var_to_check_mut(&mut self) -> &mut [T] {
        &mut self.var_to_check
    }

    /// Markov-decoder extrinsic LLRs, source order.
    pub fn markov_extrinsic(&self) -> &[T] {
        &self.markov
    }

    pub fn markov_extrinsic_mut(&mut self) -> &mut [T] {
        &mut self.markov
    }

    /// Cross-source update LLRs, source order.
    pub fn correlation_update(&self) -> &[T] {
        &self.update
    }

    pub fn correlation_update_mut(&mut self) -> &mut [T] {
        &mut self.update
    }

    pub fn set_correlation_update(&mut self, values: &[T]) -> Result<()> {
        Error::check_len(self.update.len(), values.len())?;
        self.update.copy_from_slice(values);
        Ok(())
    }

    fn edge(&self, c: usize, v: usize) -> usize {
        self.graph()
            .edge(c, v)
            .unwrap_or_else(|| panic!("no edge between check {c} and variable {v}"))
    }

    /// `start` plus the check messages into `v` in edge order, skipping edge `skip`.
    fn accumulate(&self, start: T, v: usize, skip: Option<usize>) -> T {
        self.graph()
            .var_edges(v)
            .iter()
            .filter(|&&e| Some(e) != skip)
            .fold(start, |acc, &e| acc + self.check_to_var[e])
    }

    /// Message from systematic variable `v` to check `c`:
    /// channel + other checks + Markov extrinsic + correlation update.
    pub fn vc_update_systematic(&self, v: usize, c: usize) -> T {
        let i = self
            .code
            .source_index(v)
            .unwrap_or_else(|| panic!("variable {v} is not systematic"));
        let e = self.edge(c, v);
        let msg = self.accumulate(self.channel[v], v, Some(e)) + self.markov[i] + self.update[i];
        clamp_llr(msg, self.clamp)
    }

    /// Message from parity variable `v` to check `c`: channel + other checks.
    pub fn vc_update_parity(&self, v: usize, c: usize) -> T {
        assert!(self.code.source_index(v).is_none(), "variable {v} is systematic");
        let e = self.edge(c, v);
        clamp_llr(self.accumulate(self.channel[v], v, Some(e)), self.clamp)
    }

    /// Message from check `c` to variable `v` by the tanh rule.
    pub fn cv_update(&self, c: usize, v: usize) -> T {
        let range = self.graph().check_edges(c);
        let e = self.edge(c, v);
        check_rule(&self.var_to_check[range.clone()], e - range.start, self.clamp)
    }

    /// Recomputes every variable-to-check message from the stored check
    /// messages, Markov extrinsics and correlation updates.
    pub fn update_variables(&mut self) {
        let graph = self.graph();
        for v in 0..graph.n() {
            let edges = graph.var_edges(v);
            let side = self.code.source_index(v).map(|i| (self.markov[i], self.update[i]));
            for &e in edges {
                let mut msg = self.channel[v];
                for &other in edges {
                    if other != e {
                        msg = msg + self.check_to_var[other];
                    }
                }
                if let Some((markov, update)) = side {
                    msg = msg + markov + update;
                }
                self.var_to_check[e] = clamp_llr(msg, self.clamp);
            }
        }
    }

    /// Recomputes every check-to-variable message.
    pub fn update_checks(&mut self) {
        let graph = self.graph();
        let half = T::lit(0.5);
        let two = T::lit(2.0);
        self.scratch.clear();
        self.scratch
            .extend(self.var_to_check.iter().map(|&x| (x * half).tanh()));
        for c in 0..graph.m() {
            let range = graph.check_edges(c);
            let tanhs = &self.scratch[range.clone()];
            for (j, e) in range.clone().enumerate() {
                let mut prod = T::one();
                for (i, &t) in tanhs.iter().enumerate() {
                    if i != j {
                        prod = prod * t;
                    }
                }
                self.check_to_var[e] = clamp_llr(two * prod.atanh(), self.clamp);
            }
        }
    }

    /// LLRs sent to the Markov decoder, source order: channel + all check
    /// messages + correlation update. The Markov extrinsic is excluded.
    pub fn to_markov_llr(&self) -> LlrVector<T> {
        self.code
            .info_positions()
            .iter()
            .zip(&self.update)
            .map(|(&v, &up)| self.accumulate(self.channel[v], v, None) + up)
            .collect()
    }

    /// Runs the Markov decoder on [`to_markov_llr`](Self::to_markov_llr) and
    /// stores its extrinsic output.
    pub fn update_markov(&mut self, trellis: &MarkovTrellis<T>) -> Result<()> {
        let apriori = self.to_markov_llr();
        trellis.extrinsic_into(&apriori, self.clamp, &mut self.markov)
    }

    /// A-posteriori LLRs of the systematic bits, source order:
    /// channel + Markov extrinsic + correlation update + all check messages.
    pub fn posterior_llr(&self) -> LlrVector<T> {
        self.code
            .info_positions()
            .iter()
            .enumerate()
            .map(|(i, &v)| self.accumulate(self.channel[v] + self.markov[i] + self.update[i], v, None))
            .collect()
    }

    /// A-posteriori LLRs of all `n` code bits (systematic bits as in
    /// [`posterior_llr`](Self::posterior_llr)).
    pub fn full_posterior(&self) -> LlrVector<T> {
        (0..self.code.n())
            .map(|v| {
                let base = self.channel[v];
                match self.code.source_index(v) {
                    Some(i) => self.accumulate(base + self.markov[i] + self.update[i], v, None),
                    None => self.accumulate(base, v, None),
                }
            })
            .collect()
    }

    /// Hard decisions on all code bits.
    pub fn hard_word(&self) -> BitSequence {
        super::messages::hard_decision(&self.full_posterior())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ldpc::TannerGraph;

    const CLAMP: f64 = 30.0;

    /// Variable 0 touches three checks; columns 0..2 are systematic.
    fn code() -> SystematicCode {
        let g = TannerGraph::from_dense(&[
            vec![1, 1, 0, 1, 0, 0],
            vec![1, 0, 1, 0, 1, 0],
            vec![1, 1, 1, 0, 0, 1],
        ])
        .unwrap();
        SystematicCode::new(g)
    }

    fn state(code: &SystematicCode, channel: Vec<f64>) -> ChannelState<'_, f64> {
        ChannelState::new(code, LlrVector::new(channel), CLAMP).unwrap()
    }

    #[test]
    fn layout_of_fixture() {
        let c = code();
        assert_eq!(c.info_positions(), &[0, 1, 2]);
        assert_eq!(c.source_index(0), Some(0));
        assert_eq!(c.source_index(4), None);
    }

    #[test]
    fn first_iteration_messages_are_channel_llrs() {
        let c = code();
        let s = state(&c, vec![1.0, -2.0, 0.5, 0.25, -0.75, 3.0]);
        assert_eq!(s.vc_update_systematic(0, 1), 1.0);
        assert_eq!(s.vc_update_parity(4, 1), -0.75);
        assert_eq!(&s.to_markov_llr()[..], &[1.0, -2.0, 0.5]);
        assert_eq!(&s.posterior_llr()[..], &[1.0, -2.0, 0.5]);
    }

    fn set_cv(s: &mut ChannelState<'_, f64>, c: usize, v: usize, value: f64) {
        let e = s.code().graph().edge(c, v).unwrap();
        s.check_to_var_mut()[e] = value;
    }

    #[test]
    fn systematic_message_excludes_target_check() {
        let c = code();
        let mut s = state(&c, vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        set_cv(&mut s, 0, 0, 0.5);
        set_cv(&mut s, 1, 0, 0.3);
        set_cv(&mut s, 2, 0, -0.2);
        s.markov_extrinsic_mut()[0] = 0.4;
        s.correlation_update_mut()[0] = -0.1;
        assert!((s.vc_update_systematic(0, 0) - 1.4).abs() < 1e-15);
        // Perturbing the target check's own message leaves the output unchanged.
        let before = s.vc_update_systematic(0, 0);
        set_cv(&mut s, 0, 0, -7.0);
        assert_eq!(s.vc_update_systematic(0, 0), before);
    }

    #[test]
    fn degree_one_systematic_node() {
        let g = TannerGraph::from_dense(&[vec![1, 1, 1]]).unwrap();
        let c = SystematicCode::new(g);
        let mut s = state(&c, vec![0.7, 0.2, -0.1]);
        let v = c.info_positions()[0];
        s.markov_extrinsic_mut()[0] = 0.5;
        s.correlation_update_mut()[0] = 0.25;
        set_cv(&mut s, 0, v, 9.0);
        assert!((s.vc_update_systematic(v, 0) - (0.7 + 0.5 + 0.25)).abs() < 1e-15);
    }

    #[test]
    fn parity_message_rule() {
        let g = TannerGraph::from_dense(&[vec![1, 0, 1], vec![1, 1, 1], vec![0, 1, 1]]).unwrap();
        let c = SystematicCode::new(g);
        assert_eq!(c.parity_positions().len(), 3);
        let parity: usize = 2;
        let mut s = state(&c, vec![0.0, 0.0, -2.0]);
        set_cv(&mut s, 0, parity, 5.0);
        set_cv(&mut s, 1, parity, 1.0);
        set_cv(&mut s, 2, parity, 1.0);
        assert_eq!(s.vc_update_parity(parity, 0), 0.0);
    }

    #[test]
    fn systematic_equals_parity_rule_without_side_information() {
        let c = code();
        let mut s = state(&c, vec![1.5, 0.0, 0.0, 0.0, 0.0, 0.0]);
        set_cv(&mut s, 1, 0, 0.8);
        set_cv(&mut s, 2, 0, -0.3);
        let sys = s.vc_update_systematic(0, 0);
        // Same inputs evaluated by the parity rule on a copy with no side info.
        let expected = clamp_llr(1.5 + 0.8 + -0.3, CLAMP);
        assert_eq!(sys, expected);
    }

    #[test]
    fn check_update_examples() {
        let c = code();
        let mut s = state(&c, vec![0.0; 6]);
        // Check 0 connects variables 0, 1, 3.
        let e = |s: &ChannelState<'_, f64>, v| s.code().graph().edge(0, v).unwrap();
        let (e0, e1, e3) = (e(&s, 0), e(&s, 1), e(&s, 3));
        s.var_to_check_mut()[e0] = 9.0;
        s.var_to_check_mut()[e1] = 2.0;
        s.var_to_check_mut()[e3] = -1.0;
        assert!((s.cv_update(0, 0) - (-0.735_325_664_055_519_2)).abs() < 1e-12);
        s.var_to_check_mut()[e1] = 0.0;
        assert_eq!(s.cv_update(0, 0), 0.0);
        s.var_to_check_mut()[e1] = f64::INFINITY;
        s.var_to_check_mut()[e3] = f64::INFINITY;
        assert_eq!(s.cv_update(0, 0), CLAMP);
    }

    #[test]
    fn markov_llr_sums_all_checks_and_ignores_markov() {
        let c = code();
        let mut s = state(&c, vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        set_cv(&mut s, 0, 0, 0.5);
        set_cv(&mut s, 1, 0, -0.25);
        set_cv(&mut s, 2, 0, 0.0);
        s.correlation_update_mut()[0] = 0.75;
        assert!((s.to_markov_llr()[0] - 2.0).abs() < 1e-15);
        s.markov_extrinsic_mut()[0] = 123.0;
        assert!((s.to_markov_llr()[0] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn posterior_four_term_sum() {
        let c = code();
        let mut s = state(&c, vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(s.posterior_llr()[1], 0.0);
        s.markov_extrinsic_mut()[0] = 0.4;
        s.correlation_update_mut()[0] = -0.1;
        set_cv(&mut s, 0, 0, 0.25);
        set_cv(&mut s, 2, 0, -0.15);
        assert!((s.posterior_llr()[0] - 1.4).abs() < 1e-15);
        assert!((s.full_posterior()[0] - 1.4).abs() < 1e-15);
    }

    #[test]
    fn bulk_updates_match_single_message_rules() {
        let c = code();
        let mut s = state(&c, vec![0.9, -1.1, 0.3, 2.0, -0.4, 0.6]);
        s.markov_extrinsic_mut().copy_from_slice(&[0.2, -0.3, 0.1]);
        s.correlation_update_mut().copy_from_slice(&[0.05, 0.4, -0.2]);
        for round in 0..3 {
            s.update_variables();
            s.update_checks();
            let g = c.graph();
            let mut fresh = s.clone();
            fresh.update_variables();
            for e in 0..g.num_edges() {
                let (cc, v) = (g.edge_check(e), g.edge_var(e));
                let expected = if c.source_index(v).is_some() {
                    s.vc_update_systematic(v, cc)
                } else {
                    s.vc_update_parity(v, cc)
                };
                assert_eq!(fresh.var_to_check()[e], expected, "round {round} edge {e}");
                assert_eq!(s.check_to_var()[e], s.cv_update(cc, v), "round {round} edge {e}");
            }
        }
    }
}
