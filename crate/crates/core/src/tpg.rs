//! Cluster Editing on trivially perfect graphs in cubic time.
//!
//! Works bottom-up over a binary cotree. `D[u][k]` bounds the cost of a
//! clustering of `G[L(u)]` whose largest cluster has exactly `k` vertices.
//! At an internal node the largest cluster is either inherited from one
//! child (the other child's clusters stay separate) or formed by merging the
//! largest clusters of both children.

use std::fmt::Write as _;

use crate::cotree::{binarize, build_tpg_cotree, Cotree, NodeId, NodeKind};
use crate::error::Result;
use crate::graph::{cost_of_clustering, Clustering, Graph};

/// Unreachable entry. Larger than any clustering cost (at most n²/2).
pub const INF: u64 = u64::MAX;

/// How an entry of the table was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Choice {
    Unreachable,
    Leaf,
    /// Largest cluster from the first child; second child's largest has size `j <= k`.
    FromFirst {
        j: usize,
    },
    /// Largest cluster from the second child; first child's largest has size `j <= k`.
    FromSecond {
        j: usize,
    },
    /// Largest clusters of sizes `j` and `k - j` merged.
    Merge {
        j: usize,
    },
}

impl Choice {
    fn case(self) -> (&'static str, usize) {
        match self {
            Choice::Unreachable => ("-", 0),
            Choice::Leaf => ("leaf", 0),
            Choice::FromFirst { j } => ("first", j),
            Choice::FromSecond { j } => ("second", j),
            Choice::Merge { j } => ("merge", j),
        }
    }
}

#[derive(Debug, Clone)]
pub struct TpgDpTable {
    tree: Cotree,
    n: usize,
    /// `values[u][k]` for `k` in `0..=n`; column 0 is unused and always [`INF`].
    values: Vec<Vec<u64>>,
    choices: Vec<Vec<Choice>>,
}

impl TpgDpTable {
    /// The binary cotree the table is indexed by.
    pub fn tree(&self) -> &Cotree {
        &self.tree
    }

    pub fn value(&self, u: NodeId, k: usize) -> u64 {
        self.values[u][k]
    }

    pub fn choice(&self, u: NodeId, k: usize) -> Choice {
        self.choices[u][k]
    }

    /// Smallest root entry and the first `k` attaining it.
    pub fn optimum(&self) -> (u64, usize) {
        match self.tree.root() {
            None => (0, 0),
            Some(r) => (1..=self.n)
                .map(|k| (self.values[r][k], k))
                .min_by_key(|&(v, _)| v)
                .expect("nonempty graph"),
        }
    }

    /// Clustering of `G[L(u)]` realizing `D[u][k]`, largest cluster first.
    pub fn traceback(&self, u: NodeId, k: usize) -> Vec<Vec<usize>> {
        assert!(self.values[u][k] != INF, "traceback of an unreachable entry");
        // Top-down: every node below `u` is asked for exactly one k.
        let mut wanted: Vec<Option<usize>> = vec![None; self.tree.node_count()];
        wanted[u] = Some(k);
        let mut order = Vec::new();
        let mut stack = vec![u];
        while let Some(x) = stack.pop() {
            order.push(x);
            let kx = wanted[x].expect("requested");
            let ch = &self.tree.node(x).children;
            let (k1, k2) = match self.choices[x][kx] {
                Choice::Leaf => continue,
                Choice::Unreachable => unreachable!("finite entry without a choice"),
                Choice::FromFirst { j } => (kx, j),
                Choice::FromSecond { j } => (j, kx),
                Choice::Merge { j } => (j, kx - j),
            };
            wanted[ch[0]] = Some(k1);
            wanted[ch[1]] = Some(k2);
            stack.push(ch[0]);
            stack.push(ch[1]);
        }
        // Bottom-up in reverse discovery order.
        let mut built: Vec<Option<Vec<Vec<usize>>>> = vec![None; self.tree.node_count()];
        for &x in order.iter().rev() {
            let kx = wanted[x].expect("requested");
            let node = self.tree.node(x);
            let clusters = match (node.kind, self.choices[x][kx]) {
                (NodeKind::Leaf(v), _) => vec![vec![v]],
                (_, choice) => {
                    let mut first = built[node.children[0]].take().expect("child built");
                    let mut second = built[node.children[1]].take().expect("child built");
                    match choice {
                        Choice::FromFirst { .. } => {
                            first.append(&mut second);
                            first
                        }
                        Choice::FromSecond { .. } => {
                            second.append(&mut first);
                            second
                        }
                        Choice::Merge { .. } => {
                            let tail = second.split_off(1);
                            first[0].append(&mut second[0]);
                            first.extend(tail);
                            first
                        }
                        Choice::Leaf | Choice::Unreachable => unreachable!(),
                    }
                }
            };
            built[x] = Some(clusters);
        }
        built[u].take().expect("root built")
    }

    /// Tab-separated `node k value case j` lines for every `k <= |L(u)|`.
    pub fn to_tsv(&self) -> String {
        let mut s = String::from("node\tk\tvalue\tcase\tj\n");
        for u in self.tree.postorder() {
            for k in 1..=self.tree.clade_size(u) {
                let v = self.values[u][k];
                let (case, j) = self.choices[u][k].case();
                let value = if v == INF { "inf".to_string() } else { v.to_string() };
                let _ = writeln!(s, "{u}\t{k}\t{value}\t{case}\t{j}");
            }
        }
        s
    }
}

/// Fills the table for a trivially perfect graph.
pub fn dp_table(g: &Graph) -> Result<TpgDpTable> {
    let tree = binarize(&build_tpg_cotree(g)?);
    Ok(fill(tree, g.n()))
}

fn fill(tree: Cotree, n: usize) -> TpgDpTable {
    let mut values = vec![vec![INF; n + 1]; tree.node_count()];
    let mut choices = vec![vec![Choice::Unreachable; n + 1]; tree.node_count()];
    let mut prefix1 = vec![(INF, 0); n + 1];
    let mut prefix2 = vec![(INF, 0); n + 1];
    for u in tree.postorder() {
        let node = tree.node(u);
        if let NodeKind::Leaf(_) = node.kind {
            values[u][1] = 0;
            choices[u][1] = Choice::Leaf;
            continue;
        }
        let (c1, c2) = (node.children[0], node.children[1]);
        let (s1, s2) = (tree.clade_size(c1) as u64, tree.clade_size(c2) as u64);
        let join = node.kind == NodeKind::One;
        let cross = if join { s1 * s2 } else { 0 };
        // Running minima of the children's rows: min over j <= k, first argmin.
        prefix_min(&values[c1], &mut prefix1);
        prefix_min(&values[c2], &mut prefix2);
        let (d1, d2) = (&values[c1], &values[c2]);
        let mut row = vec![INF; n + 1];
        let mut row_choice = vec![Choice::Unreachable; n + 1];
        for k in 1..=n {
            let mut best = INF;
            let mut choice = Choice::Unreachable;
            let first = d1[k].saturating_add(prefix2[k].0).saturating_add(cross);
            if first < best {
                best = first;
                choice = Choice::FromFirst { j: prefix2[k].1 };
            }
            let second = d2[k].saturating_add(prefix1[k].0).saturating_add(cross);
            if second < best {
                best = second;
                choice = Choice::FromSecond { j: prefix1[k].1 };
            }
            for j in 1..k {
                let (a, b) = (d1[j], d2[k - j]);
                if a == INF || b == INF {
                    continue;
                }
                let merged = (j * (k - j)) as u64;
                let alpha = if join { s1 * s2 - merged } else { merged };
                let total = a + b + alpha;
                if total < best {
                    best = total;
                    choice = Choice::Merge { j };
                }
            }
            row[k] = best;
            row_choice[k] = choice;
        }
        values[u] = row;
        choices[u] = row_choice;
    }
    TpgDpTable {
        tree,
        n,
        values,
        choices,
    }
}

fn prefix_min(row: &[u64], out: &mut [(u64, usize)]) {
    let mut best = (INF, 0);
    for k in 1..row.len() {
        if row[k] < best.0 {
            best = (row[k], k);
        }
        out[k] = best;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TpgSolution {
    pub cost: u64,
    pub clustering: Clustering,
}

/// Optimal Cluster Editing on a trivially perfect graph.
pub fn solve_tpg(g: &Graph) -> Result<TpgSolution> {
    let table = dp_table(g)?;
    solution_from_table(g, &table)
}

pub(crate) fn solution_from_table(g: &Graph, table: &TpgDpTable) -> Result<TpgSolution> {
    let Some(root) = table.tree.root() else {
        return Ok(TpgSolution {
            cost: 0,
            clustering: Clustering::singletons(0),
        });
    };
    let (cost, k) = table.optimum();
    let clustering = Clustering::new(g.n(), table.traceback(root, k))?;
    let recomputed = cost_of_clustering(g, &clustering)?;
    assert_eq!(recomputed, cost, "traceback witness disagrees with table cost");
    Ok(TpgSolution { cost, clustering })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
    }

    #[test]
    fn complete_and_edgeless() {
        let s = solve_tpg(&Graph::complete(5)).unwrap();
        assert_eq!(s.cost, 0);
        assert_eq!(s.clustering.len(), 1);
        let s = solve_tpg(&Graph::new(4)).unwrap();
        assert_eq!(s.cost, 0);
        assert_eq!(s.clustering, Clustering::singletons(4));
        let s = solve_tpg(&Graph::new(0)).unwrap();
        assert_eq!(s.cost, 0);
    }

    #[test]
    fn star_k13() {
        let s = solve_tpg(&star(3)).unwrap();
        assert_eq!(s.cost, 2);
        assert_eq!(s.clustering.len(), 3);
        assert_eq!(s.clustering.largest(), 2);
        assert!(s.clustering.clusters().iter().any(|c| c.contains(&0) && c.len() == 2));
        let t = dp_table(&star(3)).unwrap();
        assert_eq!(t.optimum().0, 2);
    }

    #[test]
    fn leaf_rows() {
        let t = dp_table(&star(3)).unwrap();
        for u in t.tree().postorder().filter(|&u| t.tree().is_leaf(u)) {
            assert_eq!(t.value(u, 1), 0);
            assert!((2..=4).all(|k| t.value(u, k) == INF));
        }
    }

    #[test]
    fn full_merge_counts_non_edges() {
        let g = star(4);
        let t = dp_table(&g).unwrap();
        for u in t.tree().postorder() {
            let clade = t.tree().clade(u);
            let sub = g.induced(clade);
            let s = clade.len();
            let non_edges = (s * (s - 1) / 2 - sub.edge_count()) as u64;
            assert_eq!(t.value(u, s), non_edges);
        }
    }

    #[test]
    fn rejects_c4_and_p4() {
        let c4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert!(matches!(
            solve_tpg(&c4),
            Err(Error::NotTriviallyPerfect { is_cycle: true, .. })
        ));
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(matches!(
            solve_tpg(&p4),
            Err(Error::NotTriviallyPerfect { is_cycle: false, .. })
        ));
    }

    #[test]
    fn tsv_dump() {
        let t = dp_table(&star(2)).unwrap();
        let tsv = t.to_tsv();
        assert!(tsv.starts_with("node\tk\tvalue\tcase\tj\n"));
        // 3 leaves with one row each, then two binary nodes with 2 and 3 rows.
        assert_eq!(tsv.lines().count(), 1 + 3 + 2 + 3);
    }
}
