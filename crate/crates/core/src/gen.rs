//! Seeded random cographs and trivially perfect graphs, grown as cotrees.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cotree::{Builder, Cotree, NodeId, NodeKind};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphClass {
    Cograph,
    TriviallyPerfect,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenConfig {
    pub n: usize,
    pub class: GraphClass,
    /// Largest number of children of an internal node (at least 2).
    pub max_arity: usize,
    /// Probability that the root is a join node. Kinds alternate below it.
    pub join_probability: f64,
}

impl GenConfig {
    pub fn new(n: usize, class: GraphClass) -> Self {
        GenConfig {
            n,
            class,
            max_arity: 4,
            join_probability: 0.5,
        }
    }
}

/// Random cotree on vertices `0..n`, with vertex ids shuffled over the leaves.
///
/// Internal nodes alternate between union and join so the tree is reduced.
/// In trivially perfect mode a join node gets one non-leaf child at most.
pub fn random_cotree<R: Rng + ?Sized>(cfg: &GenConfig, rng: &mut R) -> Cotree {
    let mut vertices: Vec<usize> = (0..cfg.n).collect();
    vertices.shuffle(rng);
    let mut b = Builder::default();
    let root = if cfg.n == 0 {
        None
    } else {
        let kind = if rng.gen_bool(cfg.join_probability.clamp(0.0, 1.0)) {
            NodeKind::One
        } else {
            NodeKind::Zero
        };
        Some(grow(&mut b, &vertices, kind, cfg, rng))
    };
    b.finish(root)
}

fn grow<R: Rng + ?Sized>(b: &mut Builder, set: &[usize], kind: NodeKind, cfg: &GenConfig, rng: &mut R) -> NodeId {
    if set.len() == 1 {
        return b.leaf(set[0]);
    }
    let below = if kind == NodeKind::One {
        NodeKind::Zero
    } else {
        NodeKind::One
    };
    let max_arity = cfg.max_arity.max(2);
    let children = if kind == NodeKind::One && cfg.class == GraphClass::TriviallyPerfect {
        // Some leaves plus one remaining child, which may itself be a leaf.
        let leaves = rng.gen_range(1..set.len()).min(max_arity - 1);
        let mut children: Vec<NodeId> = set[..leaves].iter().map(|&v| b.leaf(v)).collect();
        children.push(grow(b, &set[leaves..], below, cfg, rng));
        children
    } else {
        let arity = rng.gen_range(2..=max_arity.min(set.len()));
        split(set.len(), arity, rng)
            .windows(2)
            .map(|w| grow(b, &set[w[0]..w[1]], below, cfg, rng))
            .collect()
    };
    b.internal(kind, children)
}

/// Cut points `0 = c_0 < c_1 < ... < c_parts = len` chosen uniformly.
fn split<R: Rng + ?Sized>(len: usize, parts: usize, rng: &mut R) -> Vec<usize> {
    let mut inner: Vec<usize> = (1..len).collect();
    inner.shuffle(rng);
    let mut cuts: Vec<usize> = inner[..parts - 1].to_vec();
    cuts.push(0);
    cuts.push(len);
    cuts.sort_unstable();
    cuts
}

pub fn random_graph<R: Rng + ?Sized>(cfg: &GenConfig, rng: &mut R) -> Graph {
    random_cotree(cfg, rng).to_graph()
}

/// Graph from a fixed seed; identical seeds give identical graphs.
pub fn seeded_graph(cfg: &GenConfig, seed: u64) -> Graph {
    random_graph(cfg, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Uniform random graph with edge probability `density`.
pub fn erdos_renyi<R: Rng + ?Sized>(n: usize, density: f64, rng: &mut R) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                g.add_edge(u, v);
            }
        }
    }
    g
}
