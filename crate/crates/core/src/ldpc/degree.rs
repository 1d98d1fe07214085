//! Edge-perspective degree distributions and their quantization to node counts.

use crate::error::{Error, Result};

const SUM_TOLERANCE: f64 = 1e-9;

/// Edge-perspective degree distribution: `fraction` is the share of edges
/// attached to nodes of `degree`. Entries are sorted by degree.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeDistribution {
    pairs: Vec<(usize, f64)>,
}

impl DegreeDistribution {
    pub fn new(mut pairs: Vec<(usize, f64)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::InvalidDistribution("no degrees".into()));
        }
        pairs.sort_by_key(|&(d, _)| d);
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidDistribution(format!("degree {} repeated", w[0].0)));
            }
        }
        for &(d, f) in &pairs {
            if d == 0 {
                return Err(Error::InvalidDistribution("degree 0".into()));
            }
            if !(f > 0.0 && f <= 1.0) {
                return Err(Error::InvalidDistribution(format!(
                    "fraction {f} for degree {d} not in (0, 1]"
                )));
            }
        }
        let sum: f64 = pairs.iter().map(|p| p.1).sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::InvalidDistribution(format!("fractions sum to {sum}")));
        }
        Ok(Self { pairs })
    }

    /// Single-degree (regular) distribution.
    pub fn regular(degree: usize) -> Result<Self> {
        Self::new(vec![(degree, 1.0)])
    }

    pub fn pairs(&self) -> &[(usize, f64)] {
        &self.pairs
    }

    pub fn max_degree(&self) -> usize {
        self.pairs.last().map_or(0, |p| p.0)
    }

    pub fn fraction_sum(&self) -> f64 {
        self.pairs.iter().map(|p| p.1).sum()
    }

    /// `sum_i lambda_i / i`, the reciprocal of the average node degree.
    pub fn inverse_mean_degree(&self) -> f64 {
        self.pairs.iter().map(|&(d, f)| f / d as f64).sum()
    }

    /// Average node degree.
    pub fn mean_node_degree(&self) -> f64 {
        1.0 / self.inverse_mean_degree()
    }

    /// Node-perspective fractions `(lambda_i / i) / sum_j (lambda_j / j)`.
    pub fn node_fractions(&self) -> Vec<(usize, f64)> {
        let total = self.inverse_mean_degree();
        self.pairs
            .iter()
            .map(|&(d, f)| (d, f / d as f64 / total))
            .collect()
    }

    /// Node counts per degree for `nodes` nodes, rounded with the
    /// largest-remainder rule so the counts sum to `nodes` exactly.
    pub fn node_counts(&self, nodes: usize) -> Vec<(usize, usize)> {
        let fractions = self.node_fractions();
        let exact: Vec<f64> = fractions.iter().map(|&(_, f)| f * nodes as f64).collect();
        let mut counts: Vec<usize> = exact.iter().map(|x| x.floor() as usize).collect();
        let assigned: usize = counts.iter().sum();
        let mut order: Vec<usize> = (0..counts.len()).collect();
        // Stable sort keeps lower degrees first among equal remainders.
        order.sort_by(|&a, &b| {
            let ra = exact[a] - exact[a].floor();
            let rb = exact[b] - exact[b].floor();
            rb.total_cmp(&ra)
        });
        for &i in order.iter().take(nodes.saturating_sub(assigned)) {
            counts[i] += 1;
        }
        fractions.iter().map(|p| p.0).zip(counts).collect()
    }
}

/// Variable-node distribution of the rate-1/2 ensemble:
/// `0.25105x + 0.30938x^2 + 0.00104x^3 + 0.43853x^9`.
pub fn lambda_a() -> DegreeDistribution {
    DegreeDistribution::new(vec![(2, 0.25105), (3, 0.30938), (4, 0.00104), (10, 0.43853)])
        .expect("constant distribution is valid")
}

/// Variable-node distribution of the rate-0.32 ensemble:
/// `0.3127x + 0.3582x^2 + 0.04x^6 + 0.2891x^9`.
pub fn lambda_b() -> DegreeDistribution {
    DegreeDistribution::new(vec![(2, 0.3127), (3, 0.3582), (7, 0.04), (10, 0.2891)])
        .expect("constant distribution is valid")
}

/// Check-node distribution concentrated on two consecutive degrees `{d, d+1}`
/// whose design rate `1 - sum(rho_i/i) / sum(lambda_i/i)` equals `rate`.
pub fn derive_check_distribution(lambda: &DegreeDistribution, rate: f64) -> Result<DegreeDistribution> {
    if !(rate > 0.0 && rate < 1.0) {
        return Err(Error::OutOfRange {
            name: "rate",
            value: rate,
            lo: 0.0,
            hi: 1.0,
        });
    }
    let avg = 1.0 / ((1.0 - rate) * lambda.inverse_mean_degree());
    if avg < 2.0 {
        return Err(Error::InfeasibleRate {
            rate,
            avg_check_degree: avg,
        });
    }
    let d = avg.floor();
    // rho_d / d + (1 - rho_d) / (d + 1) = 1 / avg
    let rho_d = (d * (d + 1.0) / avg - d).clamp(0.0, 1.0);
    let d = d as usize;
    let mut pairs = Vec::with_capacity(2);
    if rho_d > SUM_TOLERANCE {
        pairs.push((d, rho_d));
    }
    if 1.0 - rho_d > SUM_TOLERANCE {
        pairs.push((d + 1, 1.0 - rho_d));
    }
    // Renormalize after dropping a negligible component.
    let total: f64 = pairs.iter().map(|p| p.1).sum();
    pairs.iter_mut().for_each(|p| p.1 /= total);
    DegreeDistribution::new(pairs)
}
