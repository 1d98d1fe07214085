//! Systematic encoding on top of a sparse parity-check matrix.
//!
//! Gaussian elimination of H (pivots searched from the last column) selects
//! `rank(H)` parity columns; the remaining `k = n - rank(H)` columns carry the
//! information bits in ascending column order. The eliminated form is dense
//! and is only used for encoding: decoders always run on the original graph.

use std::sync::Arc;

use super::gf2::{dot, pack, BitMatrix};
use super::graph::TannerGraph;
use crate::bits::BitSequence;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct SystematicCode {
    graph: Arc<TannerGraph>,
    info_positions: Vec<usize>,
    parity_positions: Vec<usize>,
    /// Row `i` gives parity bit `parity_positions[i]` as a GF(2) combination
    /// of the information bits (bit-packed over `0..k`).
    parity_rows: Vec<Vec<u64>>,
    /// `Some(i)` when column `v` carries information bit `i`.
    source_index: Vec<Option<usize>>,
}

impl SystematicCode {
    pub fn new(graph: TannerGraph) -> Self {
        Self::from_shared(Arc::new(graph))
    }

    pub fn from_shared(graph: Arc<TannerGraph>) -> Self {
        let (n, m) = (graph.n(), graph.m());
        let mut h = BitMatrix::zeros(m, n);
        for c in 0..m {
            for &v in graph.check_vars(c) {
                h.set(c, v, true);
            }
        }
        let parity_positions = h.reduce_from_right();
        let mut is_parity = vec![false; n];
        for &p in &parity_positions {
            is_parity[p] = true;
        }
        let info_positions: Vec<usize> = (0..n).filter(|&v| !is_parity[v]).collect();
        let parity_rows = (0..parity_positions.len())
            .map(|r| {
                let bits: Vec<u8> = info_positions
                    .iter()
                    .map(|&col| u8::from(h.get(r, col)))
                    .collect();
                pack(&bits)
            })
            .collect();
        let mut source_index = vec![None; n];
        for (i, &v) in info_positions.iter().enumerate() {
            source_index[v] = Some(i);
        }
        Self {
            graph,
            info_positions,
            parity_positions,
            parity_rows,
            source_index,
        }
    }

    pub fn graph(&self) -> &TannerGraph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Number of information bits, `n - rank(H)`.
    pub fn k(&self) -> usize {
        self.info_positions.len()
    }

    pub fn rank(&self) -> usize {
        self.parity_positions.len()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.graph.m()
    }

    pub fn rate(&self) -> f64 {
        self.k() as f64 / self.n() as f64
    }

    /// Columns carrying information bits, ascending. Source bit `i` sits in
    /// column `info_positions()[i]`.
    pub fn info_positions(&self) -> &[usize] {
        &self.info_positions
    }

    pub fn parity_positions(&self) -> &[usize] {
        &self.parity_positions
    }

    /// Column permutation placing the information columns first.
    pub fn permutation(&self) -> Vec<usize> {
        self.info_positions
            .iter()
            .chain(&self.parity_positions)
            .copied()
            .collect()
    }

    pub fn source_index(&self, v: usize) -> Option<usize> {
        self.source_index[v]
    }

    pub fn encode(&self, info: &[u8]) -> Result<BitSequence> {
        Error::check_len(self.k(), info.len())?;
        let mut word = vec![0u8; self.n()];
        for (&pos, &b) in self.info_positions.iter().zip(info) {
            word[pos] = b & 1;
        }
        let packed = pack(info);
        for (&pos, row) in self.parity_positions.iter().zip(&self.parity_rows) {
            word[pos] = dot(row, &packed);
        }
        Ok(BitSequence::from_vec_unchecked(word))
    }

    /// Information bits of a length-`n` word, in source order.
    pub fn extract_info(&self, word: &[u8]) -> Result<BitSequence> {
        Error::check_len(self.n(), word.len())?;
        Ok(BitSequence::from_vec_unchecked(
            self.info_positions.iter().map(|&v| word[v]).collect(),
        ))
    }
}

/// `1 - rank(H) / n` over GF(2).
pub fn code_rate(graph: &TannerGraph) -> f64 {
    if graph.n() == 0 {
        return 1.0;
    }
    let mut h = BitMatrix::zeros(graph.m(), graph.n());
    for c in 0..graph.m() {
        for &v in graph.check_vars(c) {
            h.set(c, v, true);
        }
    }
    1.0 - h.rank() as f64 / graph.n() as f64
}
