//! Simple undirected graphs over dense vertex ids, vertex clusterings and the
//! edit sets they induce.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const WORD: usize = 64;

/// Undirected simple graph on vertices `0..n`, stored as a symmetric bit matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(WORD);
        Graph {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Builds a graph from an edge list, rejecting self-loops and ids `>= n`.
    /// Duplicate edges are collapsed.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidInput(format!(
                    "edge {u}-{v} out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidInput(format!("self-loop on vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / WORD] >> (v % WORD) & 1 == 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loop on vertex {u}");
        self.bits[u * self.words + v / WORD] |= 1 << (v % WORD);
        self.bits[v * self.words + u / WORD] |= 1 << (u % WORD);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / WORD] &= !(1 << (v % WORD));
        self.bits[v * self.words + u / WORD] &= !(1 << (u % WORD));
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(u).iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * WORD + b)
                }
            })
        })
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    /// Closed neighborhood N[u] as a bit row.
    pub fn closed_neighborhood(&self, u: usize) -> Vec<u64> {
        let mut row = self.row(u).to_vec();
        row[u / WORD] |= 1 << (u % WORD);
        row
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::new(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Connected components of the subgraph induced by `vertices` (or of the
    /// complement of that subgraph when `complement` is set). Each component is
    /// sorted, components are ordered by their smallest vertex.
    pub fn components_within(&self, vertices: &[usize], complement: bool) -> Vec<Vec<usize>> {
        let mut seen = vec![false; vertices.len()];
        let mut out = Vec::new();
        for start in 0..vertices.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![vertices[start]];
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                let u = vertices[i];
                for j in 0..vertices.len() {
                    if !seen[j] && self.has_edge(u, vertices[j]) != complement {
                        seen[j] = true;
                        comp.push(vertices[j]);
                        stack.push(j);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out.sort_by_key(|c| c[0]);
        out
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let all: Vec<usize> = (0..self.n).collect();
        self.components_within(&all, false)
    }

    /// Graph obtained by applying `edits` (inserting and deleting the listed pairs).
    pub fn apply(&self, edits: &EditSet) -> Graph {
        let mut g = self.clone();
        for &(u, v) in &edits.insertions {
            g.add_edge(u, v);
        }
        for &(u, v) in &edits.deletions {
            g.remove_edge(u, v);
        }
        g
    }

    /// Parses the `n m` / `u v` edge-list format. Lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hl, header) = lines.next().ok_or_else(|| Error::Parse {
            line: 1,
            column: 1,
            message: "missing `n m` header".into(),
        })?;
        let nums = parse_ints(hl, header)?;
        if nums.len() != 2 {
            return Err(Error::Parse {
                line: hl,
                column: 1,
                message: "header must be `n m`".into(),
            });
        }
        let (n, m) = (nums[0], nums[1]);
        let mut g = Graph::new(n);
        let mut seen = 0;
        for (ln, line) in lines {
            let nums = parse_ints(ln, line)?;
            if nums.len() != 2 {
                return Err(Error::Parse {
                    line: ln,
                    column: 1,
                    message: "edge line must be `u v`".into(),
                });
            }
            let (u, v) = (nums[0], nums[1]);
            if u >= v || v >= n {
                return Err(Error::Parse {
                    line: ln,
                    column: 1,
                    message: format!("edge `{u} {v}` must satisfy 0 <= u < v < {n}"),
                });
            }
            if g.has_edge(u, v) {
                return Err(Error::Parse {
                    line: ln,
                    column: 1,
                    message: format!("duplicate edge `{u} {v}`"),
                });
            }
            g.add_edge(u, v);
            seen += 1;
        }
        if seen != m {
            return Err(Error::Parse {
                line: hl,
                column: 1,
                message: format!("header declares {m} edges, found {seen}"),
            });
        }
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.edge_count());
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

fn parse_ints(line: usize, text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    let mut col = 1;
    for tok in text.split_whitespace() {
        let offset = text[col - 1..].find(tok).unwrap_or(0) + col - 1;
        col = offset + tok.len() + 1;
        out.push(tok.parse().map_err(|_| Error::Parse {
            line,
            column: offset + 1,
            message: format!("expected a nonnegative integer, found `{tok}`"),
        })?);
    }
    Ok(out)
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// A partition of `0..n` into nonempty clusters, kept in canonical form:
/// each cluster ascending, clusters ordered by their minimum element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clustering {
    clusters: Vec<Vec<usize>>,
}

impl Clustering {
    /// Validates that `clusters` partitions `0..n` into nonempty sets.
    pub fn new(n: usize, clusters: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for c in &clusters {
            if c.is_empty() {
                return Err(Error::InvalidPartition("empty cluster".into()));
            }
            for &v in c {
                if v >= n {
                    return Err(Error::InvalidPartition(format!(
                        "vertex {v} out of range for {n} vertices"
                    )));
                }
                if seen[v] {
                    return Err(Error::InvalidPartition(format!("vertex {v} appears twice")));
                }
                seen[v] = true;
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!("vertex {v} is not covered")));
        }
        Ok(Self::canonical(clusters))
    }

    fn canonical(mut clusters: Vec<Vec<usize>>) -> Self {
        for c in &mut clusters {
            c.sort_unstable();
        }
        clusters.sort_by_key(|c| c[0]);
        Clustering { clusters }
    }

    /// Clustering from a per-vertex block id; ids need not be contiguous.
    pub fn from_assignment(assignment: &[usize]) -> Self {
        let mut blocks: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for (v, &b) in assignment.iter().enumerate() {
            blocks.entry(b).or_default().push(v);
        }
        Self::canonical(blocks.into_values().collect())
    }

    pub fn singletons(n: usize) -> Self {
        Clustering {
            clusters: (0..n).map(|v| vec![v]).collect(),
        }
    }

    pub fn clusters(&self) -> &[Vec<usize>] {
        &self.clusters
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.clusters.iter().map(Vec::len).sum()
    }

    pub fn largest(&self) -> usize {
        self.clusters.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Cluster index of each vertex.
    pub fn assignment(&self) -> Vec<usize> {
        let mut a = vec![0; self.vertex_count()];
        for (i, c) in self.clusters.iter().enumerate() {
            for &v in c {
                a[v] = i;
            }
        }
        a
    }

    fn check_for(&self, g: &Graph) -> Result<()> {
        if self.vertex_count() != g.n() || self.clusters.iter().flatten().any(|&v| v >= g.n()) {
            return Err(Error::InvalidPartition(format!(
                "clustering covers {} vertices, graph has {}",
                self.vertex_count(),
                g.n()
            )));
        }
        Ok(())
    }
}

/// Edge insertions and deletions that turn a graph into a cluster graph.
/// Pairs are stored as `(u, v)` with `u < v`, sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EditSet {
    pub insertions: Vec<(usize, usize)>,
    pub deletions: Vec<(usize, usize)>,
}

impl EditSet {
    pub fn len(&self) -> usize {
        self.insertions.len() + self.deletions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// True iff every connected component is a clique.
pub fn is_cluster_graph(g: &Graph) -> bool {
    g.components().iter().all(|comp| {
        comp.iter()
            .enumerate()
            .all(|(i, &u)| comp[i + 1..].iter().all(|&v| g.has_edge(u, v)))
    })
}

/// Cross-cluster edges become deletions, within-cluster non-edges become insertions.
pub fn edit_set(g: &Graph, c: &Clustering) -> Result<EditSet> {
    c.check_for(g)?;
    let a = c.assignment();
    let mut edits = EditSet::default();
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            match (g.has_edge(u, v), a[u] == a[v]) {
                (true, false) => edits.deletions.push((u, v)),
                (false, true) => edits.insertions.push((u, v)),
                _ => {}
            }
        }
    }
    Ok(edits)
}

pub fn cost_of_clustering(g: &Graph, c: &Clustering) -> Result<u64> {
    c.check_for(g)?;
    let a = c.assignment();
    let mut cost = 0;
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if g.has_edge(u, v) != (a[u] == a[v]) {
                cost += 1;
            }
        }
    }
    Ok(cost)
}

/// Canonical JSON form of a solved clustering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusteringJson {
    pub cost: u64,
    pub clusters: Vec<Vec<usize>>,
}

impl ClusteringJson {
    pub fn new(cost: u64, c: &Clustering) -> Self {
        ClusteringJson {
            cost,
            clusters: c.clusters().to_vec(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap()
    }

    fn c4() -> Graph {
        Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    #[test]
    fn cluster_graph_recognition() {
        assert!(is_cluster_graph(&Graph::new(0)));
        let k3k1 = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(is_cluster_graph(&k3k1));
        assert!(!is_cluster_graph(&p3()));
    }

    #[test]
    fn edit_sets_from_definition() {
        let c = Clustering::new(3, vec![vec![0, 1], vec![2]]).unwrap();
        let e = edit_set(&p3(), &c).unwrap();
        assert_eq!(e.deletions, vec![(1, 2)]);
        assert!(e.insertions.is_empty());

        let one = Clustering::new(4, vec![vec![0, 1, 2, 3]]).unwrap();
        let e = edit_set(&c4(), &one).unwrap();
        assert_eq!(e.insertions, vec![(0, 2), (1, 3)]);
        assert!(e.deletions.is_empty());

        let k3 = Graph::complete(3);
        let e = edit_set(&k3, &Clustering::singletons(3)).unwrap();
        assert_eq!(e.deletions, vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn costs() {
        let c = Clustering::new(3, vec![vec![0, 1], vec![2]]).unwrap();
        assert_eq!(cost_of_clustering(&p3(), &c).unwrap(), 1);
        let c = Clustering::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(cost_of_clustering(&c4(), &c).unwrap(), 2);
        let g = c4();
        assert_eq!(
            cost_of_clustering(&g, &Clustering::singletons(4)).unwrap(),
            g.edge_count() as u64
        );
    }

    #[test]
    fn invalid_partitions_rejected() {
        assert!(Clustering::new(3, vec![vec![0, 1]]).is_err());
        assert!(Clustering::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(Clustering::new(3, vec![vec![0, 1, 2], vec![]]).is_err());
        assert!(Clustering::new(2, vec![vec![0, 1, 2]]).is_err());
        let c = Clustering::singletons(2);
        assert!(matches!(edit_set(&p3(), &c), Err(Error::InvalidPartition(_))));
        assert!(cost_of_clustering(&p3(), &c).is_err());
    }

    #[test]
    fn canonical_order() {
        let c = Clustering::new(4, vec![vec![3, 1], vec![2, 0]]).unwrap();
        assert_eq!(c.clusters(), &[vec![0, 2], vec![1, 3]]);
        assert_eq!(Clustering::from_assignment(&[5, 2, 5, 2]), c);
    }

    #[test]
    fn text_format() {
        let text = "# a comment\n4 4\n0 1\n1 2\n2 3\n0 3\n";
        let g = Graph::parse(text).unwrap();
        assert_eq!(g, c4());
        assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
        assert!(matches!(Graph::parse("3 1\n2 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(Graph::parse("3 2\n0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(
            Graph::parse("3 1\n0 x\n"),
            Err(Error::Parse { column: 3, .. })
        ));
    }

    #[test]
    fn wide_graphs_use_multiple_words() {
        let mut g = Graph::new(130);
        g.add_edge(0, 129);
        g.add_edge(64, 65);
        assert!(g.has_edge(129, 0));
        assert_eq!(g.neighbors(0).collect::<Vec<_>>(), vec![129]);
        assert_eq!(g.edge_count(), 2);
        g.remove_edge(0, 129);
        assert_eq!(g.edge_count(), 1);
    }
}
