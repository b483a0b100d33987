//! Exhaustive solvers over set partitions, used as ground truth.

use crate::critical::{critical_cliques, weighted_cost_of_assignment, CriticalCliquePartition};
use crate::error::{Error, Result};
use crate::graph::{Clustering, Graph};

/// Default number of partitions an oracle call may enumerate.
pub const DEFAULT_BUDGET: u128 = 1_000_000;

/// Restricted growth strings of length `n` with at most `max_blocks` distinct
/// values, in lexicographic order. `a[0] = 0` and `a[i] <= 1 + max(a[..i])`.
#[derive(Debug, Clone)]
pub struct RestrictedGrowth {
    a: Vec<usize>,
    /// `prefix_max[i] = max(a[..=i])`.
    prefix_max: Vec<usize>,
    max_blocks: usize,
    started: bool,
}

impl RestrictedGrowth {
    pub fn new(n: usize, max_blocks: usize) -> Self {
        RestrictedGrowth {
            a: vec![0; n],
            prefix_max: vec![0; n],
            max_blocks,
            started: false,
        }
    }

    /// Advances to the next string; false once exhausted.
    pub fn advance(&mut self) -> bool {
        let n = self.a.len();
        if !self.started {
            self.started = true;
            return n == 0 || self.max_blocks > 0;
        }
        for i in (1..n).rev() {
            let limit = (self.prefix_max[i - 1] + 1).min(self.max_blocks - 1);
            if self.a[i] < limit {
                self.a[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.a[i]);
                for j in i + 1..n {
                    self.a[j] = 0;
                    self.prefix_max[j] = self.prefix_max[i];
                }
                return true;
            }
        }
        false
    }

    pub fn current(&self) -> &[usize] {
        &self.a
    }

    pub fn blocks(&self) -> usize {
        self.prefix_max.last().map_or(0, |m| m + 1)
    }
}

/// Number of partitions of an `n`-set into at most `max_blocks` blocks.
pub fn partitions_up_to(n: usize, max_blocks: usize) -> u128 {
    // Stirling numbers of the second kind, row by row.
    let mut row = vec![0u128; max_blocks + 1];
    row[0] = 1;
    for _ in 0..n {
        for j in (1..=max_blocks).rev() {
            row[j] = (j as u128).saturating_mul(row[j]).saturating_add(row[j - 1]);
        }
        row[0] = 0;
    }
    row.iter().fold(0u128, |acc, &x| acc.saturating_add(x))
}

pub fn bell(n: usize) -> u128 {
    partitions_up_to(n, n)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleSolution {
    pub cost: u64,
    pub clustering: Clustering,
}

fn check_budget(items: usize, max_blocks: usize, budget: u128) -> Result<()> {
    let count = partitions_up_to(items, max_blocks);
    if count > budget {
        return Err(Error::BudgetExceeded { items, count, budget });
    }
    Ok(())
}

/// Enumerates block assignments of a weighted graph with at most `max_blocks`
/// blocks, calling `visit` with each assignment, its block count and cost.
fn scan(g: &Graph, weights: &[u64], max_blocks: usize, mut visit: impl FnMut(&[usize], usize, u64)) {
    let mut rgs = RestrictedGrowth::new(g.n(), max_blocks);
    while rgs.advance() {
        let cost = weighted_cost_of_assignment(g, weights, rgs.current());
        visit(rgs.current(), rgs.blocks(), cost);
    }
}

fn first_minimum(
    g: &Graph,
    weights: &[u64],
    max_blocks: usize,
    keep: impl Fn(usize) -> bool,
) -> Option<(u64, Vec<usize>)> {
    let mut best: Option<(u64, Vec<usize>)> = None;
    scan(g, weights, max_blocks, |a, blocks, cost| {
        if keep(blocks) && best.as_ref().is_none_or(|(b, _)| cost < *b) {
            best = Some((cost, a.to_vec()));
        }
    });
    best
}

/// Exact optimum, searching partitions of the critical-clique quotient.
pub fn brute_force_optimal(g: &Graph, budget: u128) -> Result<OracleSolution> {
    let q = critical_cliques(g);
    check_budget(q.len(), q.len(), budget)?;
    let (cost, a) = first_minimum(&q.quotient, &q.weights, q.len().max(1), |_| true).expect("at least one partition");
    let clustering = q.expand(&Clustering::from_assignment(&a))?;
    Ok(OracleSolution { cost, clustering })
}

/// Exact optimum over all partitions of the vertices, without contraction.
pub fn brute_force_optimal_uncontracted(g: &Graph, budget: u128) -> Result<OracleSolution> {
    check_budget(g.n(), g.n(), budget)?;
    let ones = vec![1; g.n()];
    let (cost, a) = first_minimum(g, &ones, g.n().max(1), |_| true).expect("at least one partition");
    Ok(OracleSolution {
        cost,
        clustering: Clustering::from_assignment(&a),
    })
}

/// Exact optimum with exactly (`exact_p`) or at most `p` clusters.
///
/// Runs on the full vertex set: a fixed cluster count can force a critical
/// clique to be split, so the quotient is not used here.
pub fn brute_force_p(g: &Graph, p: usize, exact_p: bool, budget: u128) -> Result<OracleSolution> {
    let n = g.n();
    if p == 0 || (exact_p && p > n) {
        return Err(Error::Infeasible { p, n });
    }
    let max_blocks = p.min(n);
    check_budget(n, max_blocks, budget)?;
    let ones = vec![1; n];
    let (cost, a) = first_minimum(g, &ones, max_blocks.max(1), |blocks| !exact_p || blocks == p)
        .ok_or(Error::Infeasible { p, n })?;
    Ok(OracleSolution {
        cost,
        clustering: Clustering::from_assignment(&a),
    })
}

/// Every minimum-cost clustering, in canonical order.
pub fn enumerate_all_optimal(g: &Graph, budget: u128) -> Result<(u64, Vec<Clustering>)> {
    check_budget(g.n(), g.n(), budget)?;
    let ones = vec![1; g.n()];
    Ok(all_minima(g, &ones))
}

/// Every minimum-cost clustering of the quotient's parts, with its cost
/// measured on the source graph.
pub fn weighted_all_optimal(q: &CriticalCliquePartition, budget: u128) -> Result<(u64, Vec<Clustering>)> {
    check_budget(q.len(), q.len(), budget)?;
    Ok(all_minima(&q.quotient, &q.weights))
}

fn all_minima(g: &Graph, weights: &[u64]) -> (u64, Vec<Clustering>) {
    let mut best = u64::MAX;
    let mut all = Vec::new();
    scan(g, weights, g.n().max(1), |a, _, cost| {
        if cost < best {
            best = cost;
            all.clear();
        }
        if cost == best {
            all.push(Clustering::from_assignment(a));
        }
    });
    all.sort();
    (best, all)
}
