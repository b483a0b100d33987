//! p-Cluster Editing over an NLC expression.
//!
//! A state at expression node `u` is a k×p count matrix `M` where `M[i][j]`
//! is the number of label-`i` vertices of `G^u` placed in cluster `j`. The
//! table maps each reachable `M` to the cheapest edit cost of `G^u` realizing
//! those counts. Joins combine every pair of child states, relabels merge
//! rows, and the root keeps the best matrix (with no empty column when an
//! exact cluster count is required).

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{cost_of_clustering, Clustering};
use crate::nlc::expr::{Expression, LabelPairs, Node};

/// Row-major k×p matrix of vertex counts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CountMatrix {
    k: usize,
    p: usize,
    data: Vec<u32>,
}

impl CountMatrix {
    pub fn zeros(k: usize, p: usize) -> Self {
        CountMatrix {
            k,
            p,
            data: vec![0; k * p],
        }
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Self {
        let k = rows.len();
        let p = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == p), "ragged matrix");
        CountMatrix {
            k,
            p,
            data: rows.concat(),
        }
    }

    pub fn rows(&self) -> usize {
        self.k
    }

    pub fn cols(&self) -> usize {
        self.p
    }

    /// Entry for 1-based label `label` and 0-based cluster `col`.
    #[inline]
    pub fn get(&self, label: usize, col: usize) -> u32 {
        self.data[(label - 1) * self.p + col]
    }

    #[inline]
    fn at_mut(&mut self, label: usize, col: usize) -> &mut u32 {
        &mut self.data[(label - 1) * self.p + col]
    }

    pub fn row_sum(&self, label: usize) -> u64 {
        self.data[(label - 1) * self.p..label * self.p]
            .iter()
            .map(|&x| u64::from(x))
            .sum()
    }

    pub fn col_sum(&self, col: usize) -> u64 {
        (0..self.k).map(|i| u64::from(self.data[i * self.p + col])).sum()
    }

    pub fn total(&self) -> u64 {
        self.data.iter().map(|&x| u64::from(x)).sum()
    }

    pub fn has_zero_column(&self) -> bool {
        (0..self.p).any(|j| self.col_sum(j) == 0)
    }

    fn add(&self, other: &CountMatrix) -> CountMatrix {
        CountMatrix {
            k: self.k,
            p: self.p,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl fmt::Debug for CountMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.data.chunks(self.p.max(1)).take(self.k))
            .finish()
    }
}

/// Cross cost of merging the two sides of a join column by column:
/// insertions between same-cluster non-adjacent pairs plus deletions between
/// adjacent pairs in different clusters.
pub fn h_cost(mv: &CountMatrix, mw: &CountMatrix, pairs: &LabelPairs) -> u64 {
    assert_eq!((mv.k, mv.p), (mw.k, mw.p), "matrix shapes differ");
    let same_cluster: u64 = (0..mv.p).map(|j| mv.col_sum(j) * mw.col_sum(j)).sum();
    let adjacent: u64 = pairs.pairs().iter().map(|&(i, t)| mv.row_sum(i) * mw.row_sum(t)).sum();
    let adjacent_same: u64 = pairs
        .pairs()
        .iter()
        .map(|&(i, t)| {
            (0..mv.p)
                .map(|j| u64::from(mv.get(i, j)) * u64::from(mw.get(t, j)))
                .sum::<u64>()
        })
        .sum();
    same_cluster + adjacent - 2 * adjacent_same
}

/// All matrices whose row `i` sums to `label_counts[i]`, rows enumerated as
/// compositions with the first entry decreasing, first row varying slowest.
pub fn enumerate_well_defined(label_counts: &[usize], p: usize) -> impl Iterator<Item = CountMatrix> {
    let k = label_counts.len();
    let rows: Vec<Vec<Vec<u32>>> = label_counts.iter().map(|&c| compositions(c as u32, p)).collect();
    let mut idx = vec![0usize; k];
    let mut done = rows.iter().any(Vec::is_empty);
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let m = CountMatrix {
            k,
            p,
            data: idx
                .iter()
                .enumerate()
                .flat_map(|(i, &r)| rows[i][r].iter().copied())
                .collect(),
        };
        done = true;
        for i in (0..k).rev() {
            idx[i] += 1;
            if idx[i] < rows[i].len() {
                done = false;
                break;
            }
            idx[i] = 0;
        }
        Some(m)
    })
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Back {
    Leaf { col: usize },
    Join { left: usize, right: usize },
    Relabel { child: usize },
}

#[derive(Debug, Clone)]
struct State {
    matrix: CountMatrix,
    cost: u64,
    back: Back,
}

/// States of one expression node, in first-reached order.
#[derive(Debug, Clone, Default)]
struct NodeTable {
    states: Vec<State>,
    index: HashMap<CountMatrix, usize>,
}

impl NodeTable {
    /// Keeps the first minimizer on ties.
    fn offer(&mut self, matrix: CountMatrix, cost: u64, back: Back) {
        match self.index.get(&matrix) {
            Some(&i) => {
                if cost < self.states[i].cost {
                    self.states[i].cost = cost;
                    self.states[i].back = back;
                }
            }
            None => {
                self.index.insert(matrix.clone(), self.states.len());
                self.states.push(State { matrix, cost, back });
            }
        }
    }
}

/// Filled DP table for a fixed expression and cluster budget `p`.
#[derive(Debug, Clone)]
pub struct NlcDpTable {
    p: usize,
    tables: Vec<NodeTable>,
}

impl NlcDpTable {
    pub fn build(e: &Expression, p: usize) -> NlcDpTable {
        assert!(p >= 1, "p must be positive");
        let k = e.k();
        let mut tables: Vec<NodeTable> = Vec::with_capacity(e.nodes().len());
        for node in e.nodes() {
            let mut t = NodeTable::default();
            match node {
                Node::Leaf(label) => {
                    for col in 0..p {
                        let mut m = CountMatrix::zeros(k, p);
                        *m.at_mut(*label, col) = 1;
                        t.offer(m, 0, Back::Leaf { col });
                    }
                }
                Node::Join { pairs, left, right } => {
                    let (l, r) = (&tables[*left], &tables[*right]);
                    for (i, sv) in l.states.iter().enumerate() {
                        for (j, sw) in r.states.iter().enumerate() {
                            let cost = sv.cost + sw.cost + h_cost(&sv.matrix, &sw.matrix, pairs);
                            t.offer(sv.matrix.add(&sw.matrix), cost, Back::Join { left: i, right: j });
                        }
                    }
                }
                Node::Relabel { map, child } => {
                    for (i, sv) in tables[*child].states.iter().enumerate() {
                        let mut m = CountMatrix::zeros(k, p);
                        for label in 1..=k {
                            let target = map.apply(label);
                            for col in 0..p {
                                *m.at_mut(target, col) += sv.matrix.get(label, col);
                            }
                        }
                        t.offer(m, sv.cost, Back::Relabel { child: i });
                    }
                }
            }
            tables.push(t);
        }
        NlcDpTable { p, tables }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// Number of matrices stored at expression node `u`.
    pub fn state_count(&self, u: usize) -> usize {
        self.tables[u].states.len()
    }

    /// Optimal cost for matrix `m` at node `u`, if reachable.
    pub fn cost(&self, u: usize, m: &CountMatrix) -> Option<u64> {
        self.tables[u].index.get(m).map(|&i| self.tables[u].states[i].cost)
    }

    /// Stored `(matrix, cost)` pairs at node `u`.
    pub fn entries(&self, u: usize) -> impl Iterator<Item = (&CountMatrix, u64)> {
        self.tables[u].states.iter().map(|s| (&s.matrix, s.cost))
    }

    /// Best root state: first minimum, skipping matrices with an empty column when `exact_p`.
    fn best_root(&self, root: usize, exact_p: bool) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (i, s) in self.tables[root].states.iter().enumerate() {
            if exact_p && s.matrix.has_zero_column() {
                continue;
            }
            if best.is_none_or(|b| s.cost < self.tables[root].states[b].cost) {
                best = Some(i);
            }
        }
        best
    }

    /// Cluster column of every vertex for state `state` at node `u`.
    fn trace(&self, e: &Expression, u: usize, state: usize) -> Vec<usize> {
        let mut cols = vec![0; e.leaves_below(u)];
        let mut stack = vec![(u, state, 0usize)];
        while let Some((node, s, offset)) = stack.pop() {
            match self.tables[node].states[s].back {
                Back::Leaf { col } => cols[offset] = col,
                Back::Join { left, right } => {
                    let Node::Join { left: l, right: r, .. } = e.nodes()[node] else {
                        unreachable!("join back-pointer on non-join node")
                    };
                    stack.push((l, left, offset));
                    stack.push((r, right, offset + e.leaves_below(l)));
                }
                Back::Relabel { child } => {
                    let Node::Relabel { child: c, .. } = e.nodes()[node] else {
                        unreachable!("relabel back-pointer on non-relabel node")
                    };
                    stack.push((c, child, offset));
                }
            }
        }
        cols
    }
}

/// Result of a p-Cluster Editing solve. The clustering is over the evaluated
/// expression's vertices (left-to-right leaf order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PClusterSolution {
    pub cost: u64,
    pub clustering: Clustering,
}

/// Minimum edit cost over clusterings with exactly `p` clusters
/// (`exact_p`) or at most `p` clusters.
pub fn solve_p_cluster(e: &Expression, p: usize, exact_p: bool) -> Result<PClusterSolution> {
    let n = e.leaf_count();
    if p == 0 {
        return Err(Error::Infeasible { p, n });
    }
    if exact_p && p > n {
        return Err(Error::Infeasible { p, n });
    }
    let Some(root) = e.root() else {
        return Ok(PClusterSolution {
            cost: 0,
            clustering: Clustering::singletons(0),
        });
    };
    let table = NlcDpTable::build(e, p);
    let best = table.best_root(root, exact_p).ok_or(Error::Infeasible { p, n })?;
    let cost = table.tables[root].states[best].cost;
    let clustering = Clustering::from_assignment(&table.trace(e, root, best));
    let graph = e.eval().graph;
    let recomputed = cost_of_clustering(&graph, &clustering)?;
    assert_eq!(recomputed, cost, "traceback witness disagrees with table cost");
    Ok(PClusterSolution { cost, clustering })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[u32]]) -> CountMatrix {
        CountMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    fn pairs(ps: &[(usize, usize)]) -> LabelPairs {
        LabelPairs::from(ps.to_vec())
    }

    #[test]
    fn h_cost_small_cases() {
        assert_eq!(h_cost(&m(&[&[1]]), &m(&[&[1]]), &pairs(&[(1, 1)])), 0);
        assert_eq!(h_cost(&m(&[&[1]]), &m(&[&[1]]), &pairs(&[])), 1);
        assert_eq!(h_cost(&m(&[&[1, 0]]), &m(&[&[0, 1]]), &pairs(&[(1, 1)])), 1);
    }

    #[test]
    fn enumeration_examples() {
        let all: Vec<_> = enumerate_well_defined(&[1], 1).collect();
        assert_eq!(all, vec![m(&[&[1]])]);
        let all: Vec<_> = enumerate_well_defined(&[2], 2).collect();
        assert_eq!(all, vec![m(&[&[2, 0]]), m(&[&[1, 1]]), m(&[&[0, 2]])]);
        assert_eq!(enumerate_well_defined(&[1, 1], 2).count(), 4);
        assert_eq!(enumerate_well_defined(&[3, 2, 0], 3).count(), 10 * 6);
    }

    fn expr(text: &str) -> Expression {
        Expression::parse(text).unwrap()
    }

    #[test]
    fn k3_single_cluster() {
        let e = expr("k 1\n(x ((1 1)) (v 1) (x ((1 1)) (v 1) (v 1)))");
        let s = solve_p_cluster(&e, 1, true).unwrap();
        assert_eq!(s.cost, 0);
        assert_eq!(s.clustering.clusters(), &[vec![0, 1, 2]]);
    }

    #[test]
    fn c4_two_and_one_clusters() {
        let e = expr("k 1\n(x ((1 1)) (x () (v 1) (v 1)) (x () (v 1) (v 1)))");
        let two = solve_p_cluster(&e, 2, true).unwrap();
        assert_eq!(two.cost, 2);
        assert_eq!(two.clustering.len(), 2);
        assert_eq!(solve_p_cluster(&e, 1, true).unwrap().cost, 2);
        assert_eq!(solve_p_cluster(&e, 4, true).unwrap().cost, 4);
        assert!(matches!(
            solve_p_cluster(&e, 5, true),
            Err(Error::Infeasible { p: 5, n: 4 })
        ));
        assert_eq!(solve_p_cluster(&e, 5, false).unwrap().cost, 2);
    }

    #[test]
    fn relabel_states_merge_rows() {
        // Two label-1 vertices relabeled to 2, then joined with a label-1 vertex on (1, 2).
        let e = expr("k 2\n(x ((1 2)) (v 1) (r ((1 2)) (x () (v 1) (v 1))))");
        let g = e.eval().graph;
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2)]);
        assert_eq!(solve_p_cluster(&e, 2, true).unwrap().cost, 1);
        let table = NlcDpTable::build(&e, 2);
        let relabel = 4;
        assert_eq!(table.state_count(relabel), 3);
        assert_eq!(table.cost(relabel, &m(&[&[0, 0], &[1, 1]])), Some(0));
        assert_eq!(table.cost(relabel, &m(&[&[1, 1], &[0, 0]])), None);
    }

    #[test]
    fn empty_expression() {
        let e = expr("k 1\n");
        assert_eq!(solve_p_cluster(&e, 1, false).unwrap().cost, 0);
        assert!(solve_p_cluster(&e, 1, true).is_err());
    }
}
