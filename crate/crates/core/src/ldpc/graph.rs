//! Sparse parity-check structure.
//!
//! Edges are numbered in check-major order: the edges of check `c` occupy
//! `check_ptr[c]..check_ptr[c + 1]`, sorted by variable index. Each variable
//! keeps the list of its edge ids sorted by check index. Message arrays in
//! the decoder are indexed by these edge ids.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::io::Write as _;
use std::ops::Range;
use std::path::Path;

use crate::bits::BitSequence;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TannerGraph {
    n: usize,
    m: usize,
    check_ptr: Vec<usize>,
    edge_var: Vec<usize>,
    edge_check: Vec<usize>,
    var_ptr: Vec<usize>,
    var_edge: Vec<usize>,
}

impl TannerGraph {
    /// Builds a graph from per-check neighbour lists.
    pub fn from_check_lists(n: usize, check_lists: &[Vec<usize>]) -> Result<Self> {
        let m = check_lists.len();
        let mut check_ptr = Vec::with_capacity(m + 1);
        let mut edge_var = Vec::new();
        let mut edge_check = Vec::new();
        check_ptr.push(0);
        for (c, list) in check_lists.iter().enumerate() {
            let mut sorted = list.clone();
            sorted.sort_unstable();
            for w in sorted.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::InvalidGraph(format!(
                        "parallel edge between check {c} and variable {}",
                        w[0]
                    )));
                }
            }
            if let Some(&v) = sorted.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidGraph(format!("variable {v} out of range (n = {n})")));
            }
            edge_check.extend(std::iter::repeat_n(c, sorted.len()));
            edge_var.extend(sorted);
            check_ptr.push(edge_var.len());
        }

        let mut degree = vec![0usize; n];
        for &v in &edge_var {
            degree[v] += 1;
        }
        let mut var_ptr = Vec::with_capacity(n + 1);
        var_ptr.push(0);
        for d in &degree {
            var_ptr.push(var_ptr.last().unwrap() + d);
        }
        let mut fill = var_ptr[..n].to_vec();
        let mut var_edge = vec![0; edge_var.len()];
        // Check-major edge order makes each variable's list ascending in check index.
        for (e, &v) in edge_var.iter().enumerate() {
            var_edge[fill[v]] = e;
            fill[v] += 1;
        }
        Ok(Self {
            n,
            m,
            check_ptr,
            edge_var,
            edge_check,
            var_ptr,
            var_edge,
        })
    }

    /// Builds a graph from per-variable neighbour lists.
    pub fn from_var_lists(m: usize, var_lists: &[Vec<usize>]) -> Result<Self> {
        let mut checks = vec![Vec::new(); m];
        for (v, list) in var_lists.iter().enumerate() {
            for &c in list {
                if c >= m {
                    return Err(Error::InvalidGraph(format!("check {c} out of range (m = {m})")));
                }
                checks[c].push(v);
            }
        }
        Self::from_check_lists(var_lists.len(), &checks)
    }

    /// Builds a graph from a dense 0/1 matrix given row by row.
    pub fn from_dense(rows: &[Vec<u8>]) -> Result<Self> {
        let n = rows.first().map_or(0, Vec::len);
        let lists: Vec<Vec<usize>> = rows
            .iter()
            .map(|row| {
                Error::check_len(n, row.len())?;
                Ok(row
                    .iter()
                    .enumerate()
                    .filter(|(_, &b)| b != 0)
                    .map(|(j, _)| j)
                    .collect())
            })
            .collect::<Result<_>>()?;
        Self::from_check_lists(n, &lists)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn num_edges(&self) -> usize {
        self.edge_var.len()
    }

    /// Edge ids of check `c`.
    pub fn check_edges(&self, c: usize) -> Range<usize> {
        self.check_ptr[c]..self.check_ptr[c + 1]
    }

    /// Variables adjacent to check `c`, ascending.
    pub fn check_vars(&self, c: usize) -> &[usize] {
        &self.edge_var[self.check_edges(c)]
    }

    /// Edge ids of variable `v`, ascending in check index.
    pub fn var_edges(&self, v: usize) -> &[usize] {
        &self.var_edge[self.var_ptr[v]..self.var_ptr[v + 1]]
    }

    pub fn var_checks(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.var_edges(v).iter().map(|&e| self.edge_check[e])
    }

    pub fn edge_var(&self, e: usize) -> usize {
        self.edge_var[e]
    }

    pub fn edge_check(&self, e: usize) -> usize {
        self.edge_check[e]
    }

    /// Edge id joining `c` and `v`, if any.
    pub fn edge(&self, c: usize, v: usize) -> Option<usize> {
        let range = self.check_edges(c);
        self.check_vars(c)
            .binary_search(&v)
            .ok()
            .map(|i| range.start + i)
    }

    pub fn var_degree(&self, v: usize) -> usize {
        self.var_ptr[v + 1] - self.var_ptr[v]
    }

    pub fn check_degree(&self, c: usize) -> usize {
        self.check_ptr[c + 1] - self.check_ptr[c]
    }

    pub fn var_degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.var_degree(v)).collect()
    }

    pub fn check_degrees(&self) -> Vec<usize> {
        (0..self.m).map(|c| self.check_degree(c)).collect()
    }

    /// Number of variable nodes per degree, ascending by degree.
    pub fn var_degree_spectrum(&self) -> Vec<(usize, usize)> {
        let mut counts = std::collections::BTreeMap::new();
        for d in self.var_degrees() {
            *counts.entry(d).or_insert(0) += 1;
        }
        counts.into_iter().collect()
    }

    /// Checks the LDPC degree constraints: variables of degree at least 2 and
    /// no empty checks.
    pub fn validate_degrees(&self) -> Result<()> {
        if let Some(v) = (0..self.n).find(|&v| self.var_degree(v) < 2) {
            return Err(Error::InvalidGraph(format!(
                "variable {v} has degree {}",
                self.var_degree(v)
            )));
        }
        if let Some(c) = (0..self.m).find(|&c| self.check_degree(c) == 0) {
            return Err(Error::InvalidGraph(format!("check {c} is empty")));
        }
        Ok(())
    }

    /// Dense row-major copy of H.
    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        (0..self.m)
            .map(|c| {
                let mut row = vec![0u8; self.n];
                for &v in self.check_vars(c) {
                    row[v] = 1;
                }
                row
            })
            .collect()
    }

    /// Length of the shortest cycle, or `None` for a forest.
    pub fn girth(&self) -> Option<usize> {
        // Nodes 0..n are variables, n..n+m are checks.
        let total = self.n + self.m;
        let neighbours = |x: usize| -> Vec<usize> {
            if x < self.n {
                self.var_checks(x).map(|c| c + self.n).collect()
            } else {
                self.check_vars(x - self.n).to_vec()
            }
        };
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; total];
        let mut parent = vec![usize::MAX; total];
        for root in 0..total {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(x) = queue.pop_front() {
                if best.is_some_and(|g| 2 * dist[x] + 1 >= g) {
                    break;
                }
                for y in neighbours(x) {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        queue.push_back(y);
                    } else if parent[x] != y {
                        let len = dist[x] + dist[y] + 1;
                        best = Some(best.map_or(len, |g| g.min(len)));
                    }
                }
            }
        }
        best
    }

    /// `H * word^T` over GF(2).
    pub fn syndrome(&self, word: &[u8]) -> Result<BitSequence> {
        Error::check_len(self.n, word.len())?;
        let bits = (0..self.m)
            .map(|c| self.check_vars(c).iter().fold(0u8, |acc, &v| acc ^ (word[v] & 1)))
            .collect();
        Ok(BitSequence::from_vec_unchecked(bits))
    }

    /// Number of unsatisfied checks; panics if `word.len() != n`.
    pub fn unsatisfied_checks(&self, word: &[u8]) -> usize {
        assert_eq!(word.len(), self.n);
        (0..self.m)
            .filter(|&c| self.check_vars(c).iter().fold(0u8, |acc, &v| acc ^ word[v]) != 0)
            .count()
    }

    pub fn is_codeword(&self, word: &[u8]) -> bool {
        word.len() == self.n && self.unsatisfied_checks(word) == 0
    }

    /// Serializes to alist text (1-indexed, zero-padded neighbour lists).
    pub fn to_alist(&self) -> String {
        let var_deg = self.var_degrees();
        let check_deg = self.check_degrees();
        let max_v = var_deg.iter().copied().max().unwrap_or(0);
        let max_c = check_deg.iter().copied().max().unwrap_or(0);
        let mut out = String::new();
        let join = |xs: &mut dyn Iterator<Item = usize>| {
            xs.map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
        };
        writeln!(out, "{} {}", self.n, self.m).unwrap();
        writeln!(out, "{max_v} {max_c}").unwrap();
        writeln!(out, "{}", join(&mut var_deg.iter().copied())).unwrap();
        writeln!(out, "{}", join(&mut check_deg.iter().copied())).unwrap();
        for v in 0..self.n {
            let mut row: Vec<usize> = self.var_checks(v).map(|c| c + 1).collect();
            row.resize(max_v, 0);
            writeln!(out, "{}", join(&mut row.into_iter())).unwrap();
        }
        for c in 0..self.m {
            let mut row: Vec<usize> = self.check_vars(c).iter().map(|v| v + 1).collect();
            row.resize(max_c, 0);
            writeln!(out, "{}", join(&mut row.into_iter())).unwrap();
        }
        out
    }

    /// Parses alist text. Zero entries are padding and ignored. Variable and
    /// check lists must describe the same edge set.
    pub fn from_alist(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let mut next_numbers = |what: &str| -> Result<(usize, Vec<usize>)> {
            let (line, content) = lines.next().ok_or_else(|| Error::Alist {
                line: 0,
                msg: format!("unexpected end of input, expected {what}"),
            })?;
            let nums = content
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>().map_err(|_| Error::Alist {
                        line,
                        msg: format!("invalid integer {t:?} in {what}"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((line, nums))
        };
        let expect_len = |line: usize, nums: &[usize], len: usize, what: &str| -> Result<()> {
            if nums.len() < len {
                return Err(Error::Alist {
                    line,
                    msg: format!("{what}: expected {len} values, found {}", nums.len()),
                });
            }
            Ok(())
        };

        let (line, dims) = next_numbers("dimensions")?;
        expect_len(line, &dims, 2, "dimensions")?;
        let (n, m) = (dims[0], dims[1]);
        let (line, maxima) = next_numbers("maximum degrees")?;
        expect_len(line, &maxima, 2, "maximum degrees")?;
        let (line, var_deg) = next_numbers("variable degrees")?;
        expect_len(line, &var_deg, n, "variable degrees")?;
        let (line, check_deg) = next_numbers("check degrees")?;
        expect_len(line, &check_deg, m, "check degrees")?;

        let mut var_lists = Vec::with_capacity(n);
        for v in 0..n {
            let (line, nums) = next_numbers("variable neighbour list")?;
            let list: Vec<usize> = nums.into_iter().filter(|&x| x != 0).map(|x| x - 1).collect();
            if list.len() != var_deg[v] {
                return Err(Error::Alist {
                    line,
                    msg: format!("variable {} lists {} checks, degree says {}", v + 1, list.len(), var_deg[v]),
                });
            }
            var_lists.push(list);
        }
        let graph = Self::from_var_lists(m, &var_lists).map_err(|e| Error::Alist {
            line: 0,
            msg: e.to_string(),
        })?;
        for c in 0..m {
            let (line, nums) = next_numbers("check neighbour list")?;
            let mut list: Vec<usize> = nums.into_iter().filter(|&x| x != 0).map(|x| x - 1).collect();
            list.sort_unstable();
            if list.len() != check_deg[c] || list != graph.check_vars(c) {
                return Err(Error::Alist {
                    line,
                    msg: format!("check {} list disagrees with variable lists", c + 1),
                });
            }
        }
        Ok(graph)
    }

    pub fn read_alist(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_alist(&text)
    }

    pub fn write_alist(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        file.write_all(self.to_alist().as_bytes())
            .map_err(|e| Error::io(path, e))
    }
}
