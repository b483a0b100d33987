//! Bin packing instances and the cograph gadget that encodes perfect packing
//! as a Cluster Editing cost threshold.
//!
//! The gadget joins `k` disjoint cliques of size `h` (one per bin) to `n`
//! disjoint cliques of sizes `a_1..a_n` (one per item). With `h` large
//! enough, every optimal clustering has exactly one bin clique per cluster,
//! and its cost reaches the target `t` exactly when the items can be split
//! into `k` groups of equal size `b`.

use std::collections::HashSet;

use serde::Serialize;

use crate::critical::critical_cliques;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::weighted_all_optimal;

/// Items, bin capacity `b` and bin count `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PackingInstance {
    pub items: Vec<u64>,
    pub capacity: u64,
    pub bins: u64,
}

impl PackingInstance {
    pub fn new(items: Vec<u64>, capacity: u64, bins: u64) -> Self {
        PackingInstance { items, capacity, bins }
    }

    pub fn total(&self) -> u64 {
        self.items.iter().sum()
    }

    pub fn square_sum(&self) -> u64 {
        self.items.iter().map(|a| a * a).sum()
    }

    pub fn is_perfect(&self) -> bool {
        self.total() == self.bins * self.capacity
    }

    /// Parses `k b` on the first line and item sizes on the second.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.starts_with('#'));
        let mut header = None;
        for (ln, l) in lines.by_ref() {
            if !l.is_empty() {
                header = Some((ln, l));
                break;
            }
        }
        let (hl, header) = header.ok_or_else(|| Error::Parse {
            line: 1,
            column: 1,
            message: "missing `k b` header".into(),
        })?;
        let nums = parse_u64s(hl, header)?;
        let [k, b] = nums[..] else {
            return Err(Error::Parse {
                line: hl,
                column: 1,
                message: "header must be `k b`".into(),
            });
        };
        let mut items = Vec::new();
        for (ln, l) in lines {
            items.extend(parse_u64s(ln, l)?);
        }
        if let Some(pos) = items.iter().position(|&a| a == 0) {
            return Err(Error::InvalidInput(format!("item {pos} has size 0")));
        }
        Ok(PackingInstance::new(items, b, k))
    }

    pub fn to_text(&self) -> String {
        let items: Vec<String> = self.items.iter().map(u64::to_string).collect();
        format!("{} {}\n{}\n", self.bins, self.capacity, items.join(" "))
    }
}

fn parse_u64s(line: usize, text: &str) -> Result<Vec<u64>> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse().map_err(|_| Error::Parse {
                line,
                column: text.find(tok).unwrap_or(0) + 1,
                message: format!("expected a nonnegative integer, found `{tok}`"),
            })
        })
        .collect()
}

/// Result of reducing a packing instance to the perfect variant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PerfectReduction {
    /// The total size is at most a tenth of the capacity: always packable.
    AlwaysPackable,
    Perfect(PackingInstance),
}

/// Pads a packing instance into an equivalent perfect one.
///
/// An odd bin count gets one extra bin together with an item filling it.
/// Instances whose items fill at most a tenth of the capacity are packable
/// outright; otherwise unit items are added until the bins are exactly full.
pub fn to_perfect(inst: &PackingInstance) -> Result<PerfectReduction> {
    let (b, k) = (inst.capacity, inst.bins);
    if let Some(&big) = inst.items.iter().find(|&&a| a > b) {
        return Err(Error::TriviallyNo(format!("item {big} exceeds capacity {b}")));
    }
    if inst.total() > k * b {
        return Err(Error::TriviallyNo(format!(
            "items sum to {} but {k} bins hold only {}",
            inst.total(),
            k * b
        )));
    }
    let mut out = inst.clone();
    if k % 2 == 1 {
        out.bins += 1;
        out.items.push(b);
    }
    let total = out.total();
    let room = out.bins * b;
    if 10 * total <= room {
        return Ok(PerfectReduction::AlwaysPackable);
    }
    out.items.extend(std::iter::repeat_n(1, (room - total) as usize));
    Ok(PerfectReduction::Perfect(out))
}

/// Outcome of an exact packing search; `bins` lists item indices per bin.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PackingDecision {
    pub feasible: bool,
    pub bins: Option<Vec<Vec<usize>>>,
}

/// Largest total item size [`decide_packing`] accepts for instances with more than 12 items.
pub const PACKING_SIZE_BUDGET: u64 = 64;

/// Exact decision: do the items fit into `k` bins of capacity `b` (or, with
/// `perfect`, exactly fill all `k` bins)?
pub fn decide_packing(inst: &PackingInstance, perfect: bool) -> Result<PackingDecision> {
    let n = inst.items.len();
    if inst.total() > PACKING_SIZE_BUDGET && n > 12 {
        return Err(Error::BudgetExceeded {
            items: n,
            count: u128::from(inst.total()),
            budget: u128::from(PACKING_SIZE_BUDGET),
        });
    }
    let no = PackingDecision {
        feasible: false,
        bins: None,
    };
    let (b, k) = (inst.capacity, inst.bins as usize);
    if perfect && !inst.is_perfect() {
        return Ok(no);
    }
    if inst.items.iter().any(|&a| a > b) || inst.total() > b * k as u64 {
        return Ok(no);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(inst.items[i]));
    let mut search = PackingSearch {
        items: &inst.items,
        order: &order,
        residual: vec![b; k],
        assigned: vec![0; n],
        failed: HashSet::new(),
    };
    if !search.place(0) {
        return Ok(no);
    }
    let mut bins = vec![Vec::new(); k];
    for (i, &bin) in search.assigned.iter().enumerate() {
        bins[bin].push(i);
    }
    Ok(PackingDecision {
        feasible: true,
        bins: Some(bins),
    })
}

struct PackingSearch<'a> {
    items: &'a [u64],
    order: &'a [usize],
    residual: Vec<u64>,
    assigned: Vec<usize>,
    /// Dead ends keyed by (next item position, sorted residual capacities).
    failed: HashSet<(usize, Vec<u64>)>,
}

impl PackingSearch<'_> {
    fn place(&mut self, pos: usize) -> bool {
        if pos == self.order.len() {
            return true;
        }
        let mut key = self.residual.clone();
        key.sort_unstable();
        let key = (pos, key);
        if self.failed.contains(&key) {
            return false;
        }
        let item = self.order[pos];
        let size = self.items[item];
        let mut tried: Vec<u64> = Vec::new();
        for bin in 0..self.residual.len() {
            let r = self.residual[bin];
            // Bins with equal residual capacity are interchangeable.
            if r < size || tried.contains(&r) {
                continue;
            }
            tried.push(r);
            self.residual[bin] -= size;
            self.assigned[item] = bin;
            if self.place(pos + 1) {
                return true;
            }
            self.residual[bin] += size;
        }
        self.failed.insert(key);
        false
    }
}

/// The gadget graph with its cost target and vertex blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetOutput {
    pub graph: Graph,
    pub t: u64,
    pub h: u64,
    /// Vertex ids of each bin clique `B_i` (size `h`).
    pub bin_cliques: Vec<Vec<usize>>,
    /// Vertex ids of each item clique `A_j` (size `a_j`).
    pub item_cliques: Vec<Vec<usize>>,
}

/// JSON sidecar written next to a gadget graph file.
#[derive(Debug, Clone, Serialize)]
pub struct GadgetSidecar {
    pub t: u64,
    pub h: u64,
    pub parts: GadgetParts,
}

#[derive(Debug, Clone, Serialize)]
pub struct GadgetParts {
    pub bins: Vec<Vec<usize>>,
    pub items: Vec<Vec<usize>>,
}

impl GadgetOutput {
    pub fn sidecar(&self) -> GadgetSidecar {
        GadgetSidecar {
            t: self.t,
            h: self.h,
            parts: GadgetParts {
                bins: self.bin_cliques.clone(),
                items: self.item_cliques.clone(),
            },
        }
    }
}

/// Default clique size for verification runs: `a^2 + 1` with `a` the item total.
pub fn default_h(inst: &PackingInstance) -> u64 {
    let a = inst.total();
    a * a + 1
}

/// The paper's clique size `(n*k*a)^10`, or `None` when it overflows `u128`.
pub fn paper_h(inst: &PackingInstance) -> Option<u128> {
    let base = u128::from(inst.items.len() as u64)
        .checked_mul(u128::from(inst.bins))?
        .checked_mul(u128::from(inst.total()))?;
    base.checked_pow(10)
}

/// Cost target and vertex count of the gadget for clique size `h`, computed
/// without building the graph. `None` on `u128` overflow.
pub fn symbolic_target(inst: &PackingInstance, h: u128) -> Result<Option<(u128, u128)>> {
    let (b, k) = (u128::from(inst.capacity), u128::from(inst.bins));
    if !inst.is_perfect() {
        return Err(Error::NotPerfect {
            sum: inst.total(),
            expected: inst.bins * inst.capacity,
        });
    }
    let a = u128::from(inst.total());
    let s = u128::from(inst.square_sum());
    let t = k
        .saturating_sub(1)
        .checked_mul(a)
        .and_then(|x| x.checked_mul(h))
        .and_then(|x| x.checked_add((k * b * b).checked_sub(s)? / 2));
    let vertices = k.checked_mul(h).and_then(|x| x.checked_add(a));
    Ok(t.zip(vertices))
}

/// Builds the gadget for a perfect packing instance. Bin cliques take the
/// first `k*h` vertex ids, item cliques follow in item order.
pub fn build_gadget(inst: &PackingInstance, h: u64) -> Result<GadgetOutput> {
    let (b, k) = (inst.capacity, inst.bins);
    if !inst.is_perfect() {
        return Err(Error::NotPerfect {
            sum: inst.total(),
            expected: k * b,
        });
    }
    if h == 0 {
        return Err(Error::InvalidInput("h must be positive".into()));
    }
    if let Some(&big) = inst.items.iter().find(|&&a| a > b) {
        return Err(Error::TriviallyNo(format!("item {big} exceeds capacity {b}")));
    }
    let a = inst.total();
    let s = inst.square_sum();
    // With every item at most b, s <= b * a = k * b^2, and both have the parity of a.
    let slack = k * b * b - s;
    debug_assert_eq!(slack % 2, 0);
    let t = k.saturating_sub(1) * a * h + slack / 2;

    let n = (k * h + a) as usize;
    let mut graph = Graph::new(n);
    let mut next = 0usize;
    let mut block = |len: u64, graph: &mut Graph| {
        let ids: Vec<usize> = (next..next + len as usize).collect();
        next += len as usize;
        for (i, &u) in ids.iter().enumerate() {
            for &v in &ids[i + 1..] {
                graph.add_edge(u, v);
            }
        }
        ids
    };
    let bin_cliques: Vec<Vec<usize>> = (0..k).map(|_| block(h, &mut graph)).collect();
    let item_cliques: Vec<Vec<usize>> = inst.items.iter().map(|&size| block(size, &mut graph)).collect();
    let bin_side = (k * h) as usize;
    for u in 0..bin_side {
        for v in bin_side..n {
            graph.add_edge(u, v);
        }
    }
    Ok(GadgetOutput {
        graph,
        t,
        h,
        bin_cliques,
        item_cliques,
    })
}

/// Outcome of checking the gadget's guarantees against exhaustive search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub vertices: usize,
    pub t: u64,
    pub h: u64,
    pub optimal_cost: u64,
    /// Number of distinct optimal clusterings found.
    pub optimal_clusterings: usize,
    /// Cluster counts over all optimal clusterings, ascending and deduplicated.
    pub optimal_cluster_counts: Vec<usize>,
    pub packable: bool,
    pub packing: Option<Vec<Vec<usize>>>,
    pub checks: VerificationChecks,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationChecks {
    /// Every optimal clustering has exactly `k` clusters.
    pub cluster_count_is_k: bool,
    /// Every optimal cluster contains exactly one bin clique.
    pub one_bin_clique_per_cluster: bool,
    pub cost_at_least_t: bool,
    /// Optimal cost equals `t` iff the instance has a perfect packing.
    pub tight_iff_packable: bool,
    /// When the optimum equals `t`: all optimal clusters have `h + b` vertices.
    pub equal_cluster_sizes: Option<bool>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        let c = &self.checks;
        c.cluster_count_is_k
            && c.one_bin_clique_per_cluster
            && c.cost_at_least_t
            && c.tight_iff_packable
            && c.equal_cluster_sizes != Some(false)
    }
}

/// Builds the gadget and checks its guarantees with an exact search over
/// its critical-clique quotient.
pub fn verify_gadget(inst: &PackingInstance, h: u64, budget: u128) -> Result<VerificationReport> {
    let gadget = build_gadget(inst, h)?;
    let q = critical_cliques(&gadget.graph);
    let (optimal_cost, optima) = weighted_all_optimal(&q, budget)?;
    let decision = decide_packing(inst, true)?;
    let k = inst.bins as usize;

    let bin_part: Vec<Option<usize>> = (0..gadget.graph.n())
        .map(|v| gadget.bin_cliques.iter().position(|c| c.contains(&v)))
        .collect();
    let mut counts: Vec<usize> = optima.iter().map(|c| c.len()).collect();
    counts.sort_unstable();
    counts.dedup();

    let mut one_bin_each = true;
    let mut equal_sizes = true;
    for c in &optima {
        let expanded = q.expand(c)?;
        for cluster in expanded.clusters() {
            let bins: HashSet<usize> = cluster.iter().filter_map(|&v| bin_part[v]).collect();
            // A bin clique is a critical clique, so it is never split.
            one_bin_each &= bins.len() == 1;
            equal_sizes &= cluster.len() as u64 == h + inst.capacity;
        }
    }
    let tight = optimal_cost == gadget.t;
    Ok(VerificationReport {
        vertices: gadget.graph.n(),
        t: gadget.t,
        h,
        optimal_cost,
        optimal_clusterings: optima.len(),
        optimal_cluster_counts: counts.clone(),
        packable: decision.feasible,
        packing: decision.bins,
        checks: VerificationChecks {
            cluster_count_is_k: counts == [k],
            one_bin_clique_per_cluster: one_bin_each,
            cost_at_least_t: optimal_cost >= gadget.t,
            tight_iff_packable: tight == decision.feasible,
            equal_cluster_sizes: tight.then_some(equal_sizes),
        },
    })
}

/// Smallest `h` in `1..=max_h` from which every larger `h` up to `max_h`
/// passes all checks, or `None` if `max_h` itself fails.
pub fn smallest_passing_h(inst: &PackingInstance, max_h: u64, budget: u128) -> Result<Option<u64>> {
    let mut smallest = None;
    for h in (1..=max_h).rev() {
        if verify_gadget(inst, h, budget)?.all_passed() {
            smallest = Some(h);
        } else {
            break;
        }
    }
    Ok(smallest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cotree::build_cotree;
    use crate::oracle::DEFAULT_BUDGET;

    fn inst(items: &[u64], b: u64, k: u64) -> PackingInstance {
        PackingInstance::new(items.to_vec(), b, k)
    }

    #[test]
    fn perfect_reduction_examples() {
        assert_eq!(
            to_perfect(&inst(&[2, 2], 2, 2)).unwrap(),
            PerfectReduction::Perfect(inst(&[2, 2], 2, 2))
        );
        assert_eq!(
            to_perfect(&inst(&[1, 2], 2, 2)).unwrap(),
            PerfectReduction::Perfect(inst(&[1, 2, 1], 2, 2))
        );
        assert_eq!(
            to_perfect(&inst(&[1], 10, 10)).unwrap(),
            PerfectReduction::AlwaysPackable
        );
        assert_eq!(
            to_perfect(&inst(&[2, 3], 3, 3)).unwrap(),
            PerfectReduction::Perfect(inst(&[2, 3, 3, 1, 1, 1, 1], 3, 4))
        );
        assert!(matches!(to_perfect(&inst(&[3], 2, 2)), Err(Error::TriviallyNo(_))));
        assert!(matches!(
            to_perfect(&inst(&[2, 2, 2], 2, 2)),
            Err(Error::TriviallyNo(_))
        ));
    }

    #[test]
    fn packing_examples() {
        let d = decide_packing(&inst(&[1, 1, 2], 2, 2), true).unwrap();
        assert!(d.feasible);
        let bins = d.bins.unwrap();
        let mut sizes: Vec<Vec<usize>> = bins.clone();
        sizes.sort();
        assert_eq!(sizes, vec![vec![0, 1], vec![2]]);
        assert!(!decide_packing(&inst(&[2, 2, 2], 3, 2), true).unwrap().feasible);
        assert!(decide_packing(&inst(&[], 1, 0), true).unwrap().feasible);
        assert!(decide_packing(&inst(&[2, 2, 2], 3, 3), false).unwrap().feasible);
        assert!(!decide_packing(&inst(&[2, 2, 2], 3, 3), true).unwrap().feasible);
        let big = PackingInstance::new(vec![5; 13], 65, 1);
        assert!(matches!(decide_packing(&big, false), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn gadget_shape_and_target() {
        let g = build_gadget(&inst(&[1, 1, 2], 2, 2), 10).unwrap();
        assert_eq!(g.graph.n(), 24);
        assert_eq!(g.t, 41);
        let g = build_gadget(&inst(&[2, 2], 2, 2), 1).unwrap();
        assert_eq!(g.t, 4);
        assert_eq!(g.graph.n(), 6);
        assert!(matches!(
            build_gadget(&inst(&[1, 2], 2, 2), 3),
            Err(Error::NotPerfect { sum: 3, expected: 4 })
        ));
    }

    #[test]
    fn gadget_is_a_cograph_with_expected_critical_cliques() {
        let g = build_gadget(&inst(&[1, 1, 2], 2, 2), 5).unwrap();
        assert!(build_cotree(&g.graph).is_ok());
        let q = critical_cliques(&g.graph);
        let mut expected: Vec<Vec<usize>> = g.bin_cliques.iter().chain(&g.item_cliques).cloned().collect();
        expected.sort();
        assert_eq!(q.parts, expected);
    }

    #[test]
    fn verification_examples() {
        let r = verify_gadget(&inst(&[1, 1, 2], 2, 2), 17, DEFAULT_BUDGET).unwrap();
        assert!(r.packable);
        assert_eq!(r.optimal_cost, r.t);
        assert!(r.all_passed(), "{r:?}");
        let r = verify_gadget(&inst(&[2, 2, 2], 3, 2), 37, DEFAULT_BUDGET).unwrap();
        assert!(!r.packable);
        assert!(r.optimal_cost > r.t);
        assert!(r.all_passed(), "{r:?}");
    }

    #[test]
    fn symbolic_target_matches_built_gadget() {
        let i = inst(&[1, 1, 2], 2, 2);
        assert_eq!(symbolic_target(&i, 10).unwrap(), Some((41, 24)));
        assert_eq!(paper_h(&i), Some(24u128.pow(10)));
        let h = paper_h(&i).unwrap();
        assert_eq!(symbolic_target(&i, h).unwrap(), Some((4 * h + 1, 2 * h + 4)));
        assert_eq!(paper_h(&inst(&[1000; 4], 1000, 4)), None);
    }

    #[test]
    fn h_sweep_finds_a_threshold_at_or_below_the_safe_choice() {
        let i = inst(&[1, 1, 2], 2, 2);
        let smallest = smallest_passing_h(&i, 17, DEFAULT_BUDGET).unwrap().unwrap();
        assert!(smallest <= 17);
        for h in smallest..=17 {
            assert!(verify_gadget(&i, h, DEFAULT_BUDGET).unwrap().all_passed());
        }
        if smallest > 1 {
            assert!(!verify_gadget(&i, smallest - 1, DEFAULT_BUDGET).unwrap().all_passed());
        }
    }

    #[test]
    fn instance_text_format() {
        let i = PackingInstance::parse("2 2\n1 1 2\n").unwrap();
        assert_eq!(i, inst(&[1, 1, 2], 2, 2));
        assert_eq!(PackingInstance::parse(&i.to_text()).unwrap(), i);
        assert_eq!(PackingInstance::parse("0 1\n").unwrap(), inst(&[], 1, 0));
        assert!(PackingInstance::parse("2\n1 1\n").is_err());
        assert!(PackingInstance::parse("2 2\n1 x\n").is_err());
    }
}
