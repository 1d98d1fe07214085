//! Progressive edge growth.
//!
//! Variable degrees are quantized from the node-perspective distribution.
//! Columns are laid out by non-increasing degree, so the highest-degree
//! columns come first and end up carrying information bits after
//! right-to-left elimination. Edges are placed one at a time, lowest-degree
//! variables first, each to a check that is unreachable from the variable in
//! the current graph or, when every check is reachable, in the deepest level
//! of its BFS tree. Among candidates, checks below their target degree are
//! preferred, then lower current degree, then a seeded random priority that
//! stands in for the check index.

use rand::seq::SliceRandom;
use rand::Rng;

use super::degree::DegreeDistribution;
use super::graph::TannerGraph;
use crate::error::{Error, Result};

/// Variable degree per column, non-increasing, quantized for `n` columns.
pub fn quantize_variable_degrees(lambda: &DegreeDistribution, n: usize) -> Vec<usize> {
    let mut degrees = Vec::with_capacity(n);
    for &(d, count) in lambda.node_counts(n).iter().rev() {
        degrees.extend(std::iter::repeat_n(d, count));
    }
    degrees
}

/// Target check degrees summing to exactly `edges`.
fn check_targets(rho: &DegreeDistribution, m: usize, edges: usize) -> Vec<usize> {
    let mut targets: Vec<usize> = Vec::with_capacity(m);
    for &(d, count) in rho.node_counts(m).iter() {
        targets.extend(std::iter::repeat_n(d, count));
    }
    let mut total: usize = targets.iter().sum();
    // Absorb the edge-rounding mismatch one unit at a time, spreading it evenly.
    while total < edges {
        let i = (0..m).min_by_key(|&i| targets[i]).expect("m > 0");
        targets[i] += 1;
        total += 1;
    }
    while total > edges {
        let i = (0..m).max_by_key(|&i| targets[i]).expect("m > 0");
        targets[i] -= 1;
        total -= 1;
    }
    targets
}

struct Builder {
    var_adj: Vec<Vec<usize>>,
    check_adj: Vec<Vec<usize>>,
    target: Vec<usize>,
    priority: Vec<usize>,
    check_mark: Vec<u32>,
    var_mark: Vec<u32>,
    stamp: u32,
}

impl Builder {
    /// Candidate checks for a new edge at `v`.
    fn candidates(&mut self, v: usize) -> Vec<usize> {
        self.stamp += 1;
        let stamp = self.stamp;
        let m = self.check_adj.len();
        self.var_mark[v] = stamp;
        let mut frontier = vec![v];
        let mut reached = 0usize;
        let mut deepest: Vec<usize> = Vec::new();
        loop {
            let mut level = Vec::new();
            for &u in &frontier {
                for &c in &self.var_adj[u] {
                    if self.check_mark[c] != stamp {
                        self.check_mark[c] = stamp;
                        level.push(c);
                    }
                }
            }
            if level.is_empty() {
                break;
            }
            reached += level.len();
            if reached == m {
                deepest = level;
                break;
            }
            deepest = level;
            frontier.clear();
            for &c in &deepest {
                for &u in &self.check_adj[c] {
                    if self.var_mark[u] != stamp {
                        self.var_mark[u] = stamp;
                        frontier.push(u);
                    }
                }
            }
        }
        if reached < m {
            (0..m).filter(|&c| self.check_mark[c] != stamp).collect()
        } else {
            deepest.retain(|c| !self.var_adj[v].contains(c));
            deepest
        }
    }

    fn pick(&self, candidates: &[usize]) -> Option<usize> {
        let open = candidates
            .iter()
            .copied()
            .filter(|&c| self.check_adj[c].len() < self.target[c]);
        let key = |&c: &usize| (self.check_adj[c].len(), self.priority[c]);
        open.min_by_key(key)
            .or_else(|| candidates.iter().copied().min_by_key(key))
    }
}

/// Builds an `m x n` Tanner graph with variable degrees drawn from `lambda`
/// and check degrees targeted from `rho`.
pub fn peg_construct<R: Rng + ?Sized>(
    n: usize,
    m: usize,
    lambda: &DegreeDistribution,
    rho: &DegreeDistribution,
    rng: &mut R,
) -> Result<TannerGraph> {
    if n == 0 || m == 0 {
        return Err(Error::Construction(format!("empty dimensions n = {n}, m = {m}")));
    }
    let var_degrees = quantize_variable_degrees(lambda, n);
    if let Some(&d) = var_degrees.iter().find(|&&d| d > m) {
        return Err(Error::Construction(format!("variable degree {d} exceeds m = {m}")));
    }
    let edges: usize = var_degrees.iter().sum();
    let mut target = check_targets(rho, m, edges);
    target.shuffle(rng);
    let mut priority: Vec<usize> = (0..m).collect();
    priority.shuffle(rng);

    let mut b = Builder {
        var_adj: vec![Vec::new(); n],
        check_adj: vec![Vec::new(); m],
        target,
        priority,
        check_mark: vec![0; m],
        var_mark: vec![0; n],
        stamp: 0,
    };
    // Lowest degrees first: columns are stored in non-increasing degree order.
    for v in (0..n).rev() {
        for _ in 0..var_degrees[v] {
            let candidates = b.candidates(v);
            let c = b.pick(&candidates).ok_or_else(|| {
                Error::Construction(format!(
                    "variable {v} cannot reach degree {} without parallel edges",
                    var_degrees[v]
                ))
            })?;
            b.var_adj[v].push(c);
            b.check_adj[c].push(v);
        }
    }
    TannerGraph::from_var_lists(m, &b.var_adj)
}
