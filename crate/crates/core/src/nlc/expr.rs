use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sexpr::{self, SExpr};

/// Set of ordered `(left label, right label)` pairs of a join.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LabelPairs(Vec<(usize, usize)>);

impl LabelPairs {
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<(usize, usize)>> for LabelPairs {
    fn from(mut pairs: Vec<(usize, usize)>) -> Self {
        pairs.sort_unstable();
        pairs.dedup();
        LabelPairs(pairs)
    }
}

/// Relabeling map given as `(from, to)` pairs; unlisted labels are fixed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Relabeling(Vec<(usize, usize)>);

impl Relabeling {
    pub fn new(mut map: Vec<(usize, usize)>) -> Result<Self> {
        map.sort_unstable();
        map.dedup();
        if let Some(w) = map.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::Parse {
                line: 0,
                column: 0,
                message: format!("label {} is mapped twice", w[0].0),
            });
        }
        Ok(Relabeling(map))
    }

    pub fn apply(&self, label: usize) -> usize {
        match self.0.binary_search_by_key(&label, |&(from, _)| from) {
            Ok(i) => self.0[i].1,
            Err(_) => label,
        }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Node {
    /// A single vertex with the given label.
    Leaf(usize),
    /// Disjoint union plus every edge `uv` with `u` on the left, `v` on the
    /// right and `(lab(u), lab(v))` in `pairs`.
    Join {
        pairs: LabelPairs,
        left: usize,
        right: usize,
    },
    Relabel {
        map: Relabeling,
        child: usize,
    },
}

/// An NLC k-expression stored as an arena where children precede their parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expression {
    k: usize,
    nodes: Vec<Node>,
    root: Option<usize>,
    leaves: Vec<usize>,
}

/// Graph with a label in `1..=k` on every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub labels: Vec<usize>,
}

impl Expression {
    /// Validates labels and the arena's tree shape.
    pub fn from_parts(k: usize, nodes: Vec<Node>, root: Option<usize>) -> Result<Self> {
        let check = |label: usize| {
            if label == 0 || label > k {
                Err(Error::LabelOutOfRange { label, k })
            } else {
                Ok(())
            }
        };
        let mut used = vec![false; nodes.len()];
        let mut leaves = Vec::with_capacity(nodes.len());
        let child_of = |c: usize, parent: usize, used: &mut Vec<bool>| {
            if c >= parent || used[c] {
                Err(Error::InvalidInput(format!(
                    "expression node {parent} has invalid child {c}"
                )))
            } else {
                used[c] = true;
                Ok(())
            }
        };
        for (i, node) in nodes.iter().enumerate() {
            match node {
                Node::Leaf(t) => {
                    check(*t)?;
                    leaves.push(1);
                }
                Node::Join { pairs, left, right } => {
                    for &(a, b) in pairs.pairs() {
                        check(a)?;
                        check(b)?;
                    }
                    child_of(*left, i, &mut used)?;
                    child_of(*right, i, &mut used)?;
                    leaves.push(leaves[*left] + leaves[*right]);
                }
                Node::Relabel { map, child } => {
                    for &(a, b) in map.pairs() {
                        check(a)?;
                        check(b)?;
                    }
                    child_of(*child, i, &mut used)?;
                    leaves.push(leaves[*child]);
                }
            }
        }
        let unused = used.iter().filter(|u| !**u).count();
        let ok = match root {
            None => nodes.is_empty(),
            Some(r) => r + 1 == nodes.len() && unused == 1,
        };
        if !ok {
            return Err(Error::InvalidInput("expression nodes do not form a single tree".into()));
        }
        Ok(Expression { k, nodes, root, leaves })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn root(&self) -> Option<usize> {
        self.root
    }

    /// Number of leaves below node `u`.
    pub fn leaves_below(&self, u: usize) -> usize {
        self.leaves[u]
    }

    pub fn leaf_count(&self) -> usize {
        self.root.map_or(0, |r| self.leaves[r])
    }

    /// Parses a `k <INT>` header line followed by one expression.
    pub fn parse(text: &str) -> Result<Expression> {
        let mut offset = 0;
        let mut header = None;
        for (i, line) in text.lines().enumerate() {
            let trimmed = line.trim();
            offset += line.len() + 1;
            if trimmed.is_empty() {
                continue;
            }
            header = Some((i + 1, trimmed));
            break;
        }
        let (hl, header) = header.ok_or_else(|| Error::Parse {
            line: 1,
            column: 1,
            message: "missing `k <INT>` header".into(),
        })?;
        let k = header
            .strip_prefix('k')
            .and_then(|rest| rest.trim().parse::<usize>().ok())
            .filter(|&k| k >= 1)
            .ok_or_else(|| Error::Parse {
                line: hl,
                column: 1,
                message: format!("expected header `k <INT>` with k >= 1, found `{header}`"),
            })?;
        let body = text.get(offset.min(text.len())..).unwrap_or("");
        Self::parse_body(k, body, hl + 1)
    }

    /// Parses an expression body without header, with labels checked against `k`.
    pub fn parse_body(k: usize, body: &str, first_line: usize) -> Result<Expression> {
        let mut nodes = Vec::new();
        let root = match sexpr::parse_at(body, first_line)? {
            None => None,
            Some(e) => Some(read_node(&e, k, &mut nodes)?),
        };
        Self::from_parts(k, nodes, root)
    }

    /// Header plus expression, the on-disk format.
    pub fn to_file_string(&self) -> String {
        format!("k {}\n{}\n", self.k, self)
    }

    /// Evaluates the expression; vertex `i` is the `i`-th leaf from the left.
    pub fn eval(&self) -> LabeledGraph {
        let n = self.leaf_count();
        let mut graph = Graph::new(n);
        let Some(root) = self.root else {
            return LabeledGraph {
                graph,
                labels: Vec::new(),
            };
        };
        let starts = self.leaf_offsets(root);
        let mut labels = vec![0; n];
        let mut adj = vec![false; (self.k + 1) * (self.k + 1)];
        for (u, node) in self.nodes.iter().enumerate() {
            match node {
                Node::Leaf(t) => labels[starts[u]] = *t,
                Node::Join { pairs, left, right } => {
                    adj.iter_mut().for_each(|a| *a = false);
                    for &(a, b) in pairs.pairs() {
                        adj[a * (self.k + 1) + b] = true;
                    }
                    let l = starts[*left]..starts[*left] + self.leaves[*left];
                    let r = starts[*right]..starts[*right] + self.leaves[*right];
                    for x in l {
                        for y in r.clone() {
                            if adj[labels[x] * (self.k + 1) + labels[y]] {
                                graph.add_edge(x, y);
                            }
                        }
                    }
                }
                Node::Relabel { map, child } => {
                    let range = starts[*child]..starts[*child] + self.leaves[*child];
                    for x in range {
                        labels[x] = map.apply(labels[x]);
                    }
                }
            }
        }
        LabeledGraph { graph, labels }
    }

    /// First vertex index of every node's leaf range.
    pub(crate) fn leaf_offsets(&self, root: usize) -> Vec<usize> {
        let mut starts = vec![0; self.nodes.len()];
        for u in (0..=root).rev() {
            match &self.nodes[u] {
                Node::Leaf(_) => {}
                Node::Join { left, right, .. } => {
                    starts[*left] = starts[u];
                    starts[*right] = starts[u] + self.leaves[*left];
                }
                Node::Relabel { child, .. } => starts[*child] = starts[u],
            }
        }
        starts
    }
}

fn read_int(e: &SExpr) -> Result<usize> {
    match e {
        SExpr::Atom { text, pos } => text
            .parse()
            .map_err(|_| pos.error(format!("expected an integer, found `{text}`"))),
        SExpr::List { pos, .. } => Err(pos.error("expected an integer, found a list".into())),
    }
}

fn read_pairs(e: &SExpr, k: usize) -> Result<Vec<(usize, usize)>> {
    let SExpr::List { items, .. } = e else {
        return Err(e.pos().error("expected a list of pairs".into()));
    };
    items
        .iter()
        .map(|item| match item {
            SExpr::List { items, .. } if items.len() == 2 => {
                let a = read_int(&items[0])?;
                let b = read_int(&items[1])?;
                for l in [a, b] {
                    if l == 0 || l > k {
                        return Err(Error::LabelOutOfRange { label: l, k });
                    }
                }
                Ok((a, b))
            }
            other => Err(other.pos().error("expected a pair `(INT INT)`".into())),
        })
        .collect()
}

fn read_node(e: &SExpr, k: usize, nodes: &mut Vec<Node>) -> Result<usize> {
    let SExpr::List { items, pos } = e else {
        return Err(e.pos().error("expected `(v ..)`, `(x ..)` or `(r ..)`".into()));
    };
    let head = match items.first() {
        Some(SExpr::Atom { text, .. }) => text.as_str(),
        _ => return Err(pos.error("expected an operator `v`, `x` or `r`".into())),
    };
    let node = match (head, items.len()) {
        ("v", 2) => {
            let t = read_int(&items[1])?;
            if t == 0 || t > k {
                return Err(Error::LabelOutOfRange { label: t, k });
            }
            Node::Leaf(t)
        }
        ("x", 4) => {
            let pairs = LabelPairs::from(read_pairs(&items[1], k)?);
            let left = read_node(&items[2], k, nodes)?;
            let right = read_node(&items[3], k, nodes)?;
            Node::Join { pairs, left, right }
        }
        ("r", 3) => {
            let map = Relabeling::new(read_pairs(&items[1], k)?).map_err(|e| match e {
                Error::Parse { message, .. } => items[1].pos().error(message),
                other => other,
            })?;
            let child = read_node(&items[2], k, nodes)?;
            Node::Relabel { map, child }
        }
        ("v", _) => return Err(pos.error("leaf takes one label: `(v INT)`".into())),
        ("x", _) => return Err(pos.error("join takes pairs and two children: `(x pairs e e)`".into())),
        ("r", _) => return Err(pos.error("relabel takes a map and one child: `(r maps e)`".into())),
        (other, _) => return Err(pos.error(format!("unknown operator `{other}`"))),
    };
    nodes.push(node);
    Ok(nodes.len() - 1)
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn pairs(f: &mut fmt::Formatter<'_>, ps: &[(usize, usize)]) -> fmt::Result {
            write!(f, "(")?;
            for (i, (a, b)) in ps.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "({a} {b})")?;
            }
            write!(f, ")")
        }
        fn go(e: &Expression, u: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match &e.nodes[u] {
                Node::Leaf(t) => write!(f, "(v {t})"),
                Node::Join { pairs: ps, left, right } => {
                    write!(f, "(x ")?;
                    pairs(f, ps.pairs())?;
                    write!(f, " ")?;
                    go(e, *left, f)?;
                    write!(f, " ")?;
                    go(e, *right, f)?;
                    write!(f, ")")
                }
                Node::Relabel { map, child } => {
                    write!(f, "(r ")?;
                    pairs(f, map.pairs())?;
                    write!(f, " ")?;
                    go(e, *child, f)?;
                    write!(f, ")")
                }
            }
        }
        match self.root {
            Some(r) => go(self, r, f),
            None => Ok(()),
        }
    }
}
