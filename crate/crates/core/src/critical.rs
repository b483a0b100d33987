//! Critical cliques: maximal sets of vertices sharing a closed neighborhood.
//!
//! Every optimal clustering keeps each critical clique inside a single
//! cluster, so exact search can run on the weighted quotient graph instead of
//! the original one.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{Clustering, Graph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalCliquePartition {
    /// Vertex sets of the critical cliques, each ascending, ordered by minimum vertex.
    pub parts: Vec<Vec<usize>>,
    pub weights: Vec<u64>,
    /// Two parts are adjacent iff every cross pair is an edge of the source graph.
    pub quotient: Graph,
    part_of: Vec<usize>,
}

impl CriticalCliquePartition {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Index of the part containing vertex `v`.
    pub fn part_of(&self, v: usize) -> usize {
        self.part_of[v]
    }

    /// Expands a clustering of the parts into a clustering of the source vertices.
    pub fn expand(&self, c: &Clustering) -> Result<Clustering> {
        self.check(c)?;
        let clusters = c
            .clusters()
            .iter()
            .map(|block| block.iter().flat_map(|&p| self.parts[p].iter().copied()).collect())
            .collect();
        Clustering::new(self.part_of.len(), clusters)
    }

    fn check(&self, c: &Clustering) -> Result<()> {
        if c.vertex_count() != self.len() {
            return Err(Error::InvalidPartition(format!(
                "clustering covers {} parts, quotient has {}",
                c.vertex_count(),
                self.len()
            )));
        }
        Ok(())
    }
}

/// Groups vertices by closed neighborhood.
pub fn critical_cliques(g: &Graph) -> CriticalCliquePartition {
    let mut groups: HashMap<Vec<u64>, usize> = HashMap::new();
    let mut parts: Vec<Vec<usize>> = Vec::new();
    let mut part_of = vec![0; g.n()];
    for (v, part) in part_of.iter_mut().enumerate() {
        let idx = *groups.entry(g.closed_neighborhood(v)).or_insert_with(|| {
            parts.push(Vec::new());
            parts.len() - 1
        });
        parts[idx].push(v);
        *part = idx;
    }
    // Parts are created in order of their minimum vertex, so they are already canonical.
    let weights = parts.iter().map(|p| p.len() as u64).collect();
    let mut quotient = Graph::new(parts.len());
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            if g.has_edge(parts[i][0], parts[j][0]) {
                quotient.add_edge(i, j);
            }
        }
    }
    CriticalCliquePartition {
        parts,
        weights,
        quotient,
        part_of,
    }
}

/// Cost of a clustering of the quotient's parts, measured on the source graph.
pub fn weighted_cost(q: &CriticalCliquePartition, c: &Clustering) -> Result<u64> {
    q.check(c)?;
    Ok(weighted_cost_of_assignment(&q.quotient, &q.weights, &c.assignment()))
}

/// Weighted edit cost of a block assignment over a weighted graph.
pub(crate) fn weighted_cost_of_assignment(g: &Graph, weights: &[u64], block: &[usize]) -> u64 {
    let mut cost = 0;
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if g.has_edge(u, v) != (block[u] == block[v]) {
                cost += weights[u] * weights[v];
            }
        }
    }
    cost
}
