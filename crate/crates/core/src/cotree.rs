//! Cotrees: recognition of cographs and trivially perfect graphs.
//!
//! A cotree is a rooted tree whose leaves are the vertices of a graph and
//! whose internal nodes are unions (`Zero`) or joins (`One`). Two vertices are
//! adjacent iff their lowest common ancestor is a `One` node.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::nlc::{Expression, LabelPairs, Node as ExprNode};

pub type NodeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Leaf(usize),
    /// Disjoint union of the children.
    Zero,
    /// Join of the children.
    One,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CotreeNode {
    pub kind: NodeKind,
    pub children: Vec<NodeId>,
    pub parent: Option<NodeId>,
    start: usize,
    size: usize,
}

/// Arena-allocated cotree. Children always have smaller ids than their
/// parent, so iterating ids in increasing order is a post-order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cotree {
    nodes: Vec<CotreeNode>,
    root: Option<NodeId>,
    /// Leaves in depth-first left-to-right order; every clade is a contiguous range.
    leaf_order: Vec<usize>,
}

impl Cotree {
    pub fn root(&self) -> Option<NodeId> {
        self.root
    }

    pub fn node(&self, id: NodeId) -> &CotreeNode {
        &self.nodes[id]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn leaf_count(&self) -> usize {
        self.leaf_order.len()
    }

    /// Node ids, children before parents.
    pub fn postorder(&self) -> impl Iterator<Item = NodeId> {
        0..self.nodes.len()
    }

    /// The clade L(u): leaves descending from `u`.
    pub fn clade(&self, u: NodeId) -> &[usize] {
        let n = &self.nodes[u];
        &self.leaf_order[n.start..n.start + n.size]
    }

    pub fn clade_size(&self, u: NodeId) -> usize {
        self.nodes[u].size
    }

    /// Vertex ids in left-to-right leaf order.
    pub fn leaf_order(&self) -> &[usize] {
        &self.leaf_order
    }

    pub fn is_leaf(&self, u: NodeId) -> bool {
        matches!(self.nodes[u].kind, NodeKind::Leaf(_))
    }

    /// Every internal node has at least two children and none shares its parent's kind.
    pub fn is_canonical(&self) -> bool {
        self.nodes.iter().all(|n| match n.kind {
            NodeKind::Leaf(_) => n.children.is_empty(),
            kind => n.children.len() >= 2 && n.children.iter().all(|&c| self.nodes[c].kind != kind),
        })
    }

    pub fn is_binary(&self) -> bool {
        self.nodes.iter().all(|n| match n.kind {
            NodeKind::Leaf(_) => n.children.is_empty(),
            _ => n.children.len() == 2,
        })
    }

    /// Rebuilds the graph with the lowest-common-ancestor rule: a `One` node
    /// joins every pair of leaves taken from two of its distinct children.
    pub fn to_graph(&self) -> Graph {
        let n = self.leaf_order.iter().map(|&v| v + 1).max().unwrap_or(0);
        let mut g = Graph::new(n);
        for node in self.nodes.iter().filter(|n| n.kind == NodeKind::One) {
            for (i, &a) in node.children.iter().enumerate() {
                for &b in &node.children[i + 1..] {
                    for &u in self.clade(a) {
                        for &v in self.clade(b) {
                            g.add_edge(u, v);
                        }
                    }
                }
            }
        }
        g
    }

    /// Parses the S-expression form written by [`fmt::Display`].
    pub fn parse(text: &str) -> Result<Cotree> {
        let tokens = crate::sexpr::parse(text)?;
        let mut b = Builder::default();
        let root = match tokens {
            None => None,
            Some(crate::sexpr::SExpr::List { items, .. }) if items.is_empty() => None,
            Some(t) => Some(cotree_from_sexpr(&mut b, &t)?),
        };
        Ok(b.finish(root))
    }
}

fn cotree_from_sexpr(b: &mut Builder, s: &crate::sexpr::SExpr) -> Result<NodeId> {
    use crate::sexpr::SExpr;
    match s {
        SExpr::Atom { text, pos } => {
            let id = text
                .strip_prefix('v')
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| pos.error(format!("expected leaf `v<id>`, found `{text}`")))?;
            Ok(b.leaf(id))
        }
        SExpr::List { items, pos } => {
            let kind = match items.first() {
                Some(SExpr::Atom { text, .. }) if text == "0" => NodeKind::Zero,
                Some(SExpr::Atom { text, .. }) if text == "1" => NodeKind::One,
                _ => return Err(pos.error("internal node must start with `0` or `1`".into())),
            };
            if items.len() < 3 {
                return Err(pos.error("internal node needs at least two children".into()));
            }
            let children = items[1..]
                .iter()
                .map(|c| cotree_from_sexpr(b, c))
                .collect::<Result<Vec<_>>>()?;
            Ok(b.internal(kind, children))
        }
    }
}

impl fmt::Display for Cotree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(t: &Cotree, u: NodeId, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            let node = &t.nodes[u];
            match node.kind {
                NodeKind::Leaf(v) => write!(f, "v{v}"),
                kind => {
                    write!(f, "({}", if kind == NodeKind::One { 1 } else { 0 })?;
                    for &c in &node.children {
                        write!(f, " ")?;
                        go(t, c, f)?;
                    }
                    write!(f, ")")
                }
            }
        }
        match self.root {
            Some(r) => go(self, r, f),
            None => write!(f, "()"),
        }
    }
}

#[derive(Default)]
pub(crate) struct Builder {
    nodes: Vec<CotreeNode>,
}

impl Builder {
    pub(crate) fn leaf(&mut self, v: usize) -> NodeId {
        self.push(NodeKind::Leaf(v), Vec::new(), 1)
    }

    pub(crate) fn internal(&mut self, kind: NodeKind, children: Vec<NodeId>) -> NodeId {
        let size = children.iter().map(|&c| self.nodes[c].size).sum();
        self.push(kind, children, size)
    }

    fn push(&mut self, kind: NodeKind, children: Vec<NodeId>, size: usize) -> NodeId {
        self.nodes.push(CotreeNode {
            kind,
            children,
            parent: None,
            start: 0,
            size,
        });
        self.nodes.len() - 1
    }

    pub(crate) fn finish(mut self, root: Option<NodeId>) -> Cotree {
        let mut leaf_order = Vec::new();
        if let Some(r) = root {
            let mut stack = vec![r];
            while let Some(u) = stack.pop() {
                self.nodes[u].start = leaf_order.len();
                if let NodeKind::Leaf(v) = self.nodes[u].kind {
                    leaf_order.push(v);
                }
                let children = self.nodes[u].children.clone();
                for &c in children.iter().rev() {
                    self.nodes[c].parent = Some(u);
                    stack.push(c);
                }
            }
        }
        Cotree {
            nodes: self.nodes,
            root,
            leaf_order,
        }
    }
}

/// Canonical cotree of `g`, or an induced P4 if `g` is not a cograph.
///
/// Disconnected vertex sets become `Zero` nodes over their components,
/// co-disconnected ones become `One` nodes over their co-components.
pub fn build_cotree(g: &Graph) -> Result<Cotree> {
    let mut b = Builder::default();
    let root = if g.n() == 0 {
        None
    } else {
        let all: Vec<usize> = (0..g.n()).collect();
        Some(build_rec(g, &mut b, &all)?)
    };
    let t = b.finish(root);
    if g.n() <= 32 {
        debug_assert_eq!(t.to_graph(), *g);
    }
    Ok(t)
}

fn build_rec(g: &Graph, b: &mut Builder, set: &[usize]) -> Result<NodeId> {
    if set.len() == 1 {
        return Ok(b.leaf(set[0]));
    }
    let (kind, parts) = {
        let comps = g.components_within(set, false);
        if comps.len() > 1 {
            (NodeKind::Zero, comps)
        } else {
            let cocomps = g.components_within(set, true);
            if cocomps.len() > 1 {
                (NodeKind::One, cocomps)
            } else {
                let witness = find_induced_p4(g, set).expect("prime vertex set contains an induced P4");
                return Err(Error::NotCograph { witness });
            }
        }
    };
    let mut children = parts
        .iter()
        .map(|p| Ok((p.len(), p[0], build_rec(g, b, p)?)))
        .collect::<Result<Vec<_>>>()?;
    children.sort_unstable();
    Ok(b.internal(kind, children.into_iter().map(|(_, _, id)| id).collect()))
}

/// Searches `set` for an induced path `a-b-c-d`; returns it in path order.
pub fn find_induced_p4(g: &Graph, set: &[usize]) -> Option<[usize; 4]> {
    for &b in set {
        for &c in set {
            if b == c || !g.has_edge(b, c) {
                continue;
            }
            for &a in set {
                if a == b || a == c || !g.has_edge(a, b) || g.has_edge(a, c) {
                    continue;
                }
                for &d in set {
                    if d == a || d == b || d == c {
                        continue;
                    }
                    if g.has_edge(c, d) && !g.has_edge(b, d) && !g.has_edge(a, d) {
                        return Some([a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

/// Searches for an induced 4-cycle `a-b-c-d-a`.
pub fn find_induced_c4(g: &Graph) -> Option<[usize; 4]> {
    let n = g.n();
    for a in 0..n {
        for c in a + 1..n {
            if g.has_edge(a, c) {
                continue;
            }
            let common: Vec<usize> = (0..n).filter(|&x| g.has_edge(a, x) && g.has_edge(c, x)).collect();
            for (i, &b) in common.iter().enumerate() {
                if let Some(&d) = common[i + 1..].iter().find(|&&d| !g.has_edge(b, d)) {
                    return Some([a, b, c, d]);
                }
            }
        }
    }
    None
}

/// On a canonical cotree: every `One` node has at most one non-leaf child.
pub fn is_trivially_perfect(t: &Cotree) -> bool {
    one_node_with_two_internal_children(t).is_none()
}

fn one_node_with_two_internal_children(t: &Cotree) -> Option<(NodeId, NodeId, NodeId)> {
    t.postorder().find_map(|u| {
        let node = t.node(u);
        if node.kind != NodeKind::One {
            return None;
        }
        let mut internal = node.children.iter().copied().filter(|&c| !t.is_leaf(c));
        match (internal.next(), internal.next()) {
            (Some(x), Some(y)) => Some((u, x, y)),
            _ => None,
        }
    })
}

/// Canonical cotree for a trivially perfect graph, or an induced P4 / C4 witness.
pub fn build_tpg_cotree(g: &Graph) -> Result<Cotree> {
    let t = match build_cotree(g) {
        Ok(t) => t,
        Err(Error::NotCograph { witness }) => {
            return Err(Error::NotTriviallyPerfect {
                witness,
                is_cycle: false,
            })
        }
        Err(e) => return Err(e),
    };
    match one_node_with_two_internal_children(&t) {
        None => Ok(t),
        Some((_, x, y)) => {
            // In a canonical cotree both children are Zero nodes, so each holds a
            // non-adjacent pair; the two pairs are fully joined and form a C4.
            let pair = |z: NodeId| {
                let ch = &t.node(z).children;
                (t.clade(ch[0])[0], t.clade(ch[1])[0])
            };
            let (a, c) = pair(x);
            let (b, d) = pair(y);
            Err(Error::NotTriviallyPerfect {
                witness: [a, b, c, d],
                is_cycle: true,
            })
        }
    }
}

/// Expands multi-way nodes into chains of binary nodes of the same kind.
/// Under a `One` node leaf children are peeled first, so a unique non-leaf
/// child ends up deepest in the chain.
pub fn binarize(t: &Cotree) -> Cotree {
    let mut b = Builder::default();
    let root = t.root.map(|r| binarize_rec(t, &mut b, r));
    b.finish(root)
}

fn binarize_rec(t: &Cotree, b: &mut Builder, u: NodeId) -> NodeId {
    let node = t.node(u);
    if let NodeKind::Leaf(v) = node.kind {
        return b.leaf(v);
    }
    let mut order = node.children.clone();
    if node.kind == NodeKind::One {
        order.sort_by_key(|&c| !t.is_leaf(c));
    }
    let mut ids: Vec<NodeId> = order.iter().map(|&c| binarize_rec(t, b, c)).collect();
    let mut acc = ids.pop().expect("internal node has children");
    while let Some(prev) = ids.pop() {
        acc = b.internal(node.kind, vec![prev, acc]);
    }
    acc
}

/// One-label NLC expression for the cotree: leaves are label 1, `Zero` nodes
/// become joins with no label pairs and `One` nodes joins on `(1, 1)`.
/// Vertex `i` of the evaluated graph is `t.leaf_order()[i]`.
pub fn cotree_to_expression(t: &Cotree) -> Expression {
    fn go(t: &Cotree, u: NodeId, nodes: &mut Vec<ExprNode>) -> usize {
        let node = t.node(u);
        match node.kind {
            NodeKind::Leaf(_) => {
                nodes.push(ExprNode::Leaf(1));
                nodes.len() - 1
            }
            kind => {
                let pairs = if kind == NodeKind::One {
                    LabelPairs::from(vec![(1, 1)])
                } else {
                    LabelPairs::default()
                };
                let mut ids: Vec<usize> = node.children.iter().map(|&c| go(t, c, nodes)).collect();
                let mut acc = ids.pop().expect("internal node has children");
                while let Some(prev) = ids.pop() {
                    nodes.push(ExprNode::Join {
                        pairs: pairs.clone(),
                        left: prev,
                        right: acc,
                    });
                    acc = nodes.len() - 1;
                }
                acc
            }
        }
    }
    let mut nodes = Vec::new();
    let root = t.root.map(|r| go(t, r, &mut nodes));
    Expression::from_parts(1, nodes, root).expect("cotree expressions use label 1 only")
}
