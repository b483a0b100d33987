//! NLC k-expressions and the count-matrix dynamic program for p-Cluster Editing.

mod dp;
mod expr;

pub use dp::{enumerate_well_defined, h_cost, solve_p_cluster, CountMatrix, NlcDpTable, PClusterSolution};
pub use expr::{Expression, LabelPairs, LabeledGraph, Node, Relabeling};

use crate::cotree::{build_cotree, cotree_to_expression};
use crate::error::Result;
use crate::graph::{Clustering, Graph};

/// p-Cluster Editing on a cograph via its one-label expression, with the
/// clustering mapped back to the graph's vertex ids.
pub fn solve_cograph_p(g: &Graph, p: usize, exact_p: bool) -> Result<PClusterSolution> {
    let tree = build_cotree(g)?;
    let solution = solve_p_cluster(&cotree_to_expression(&tree), p, exact_p)?;
    let order = tree.leaf_order();
    let clusters = solution
        .clustering
        .clusters()
        .iter()
        .map(|c| c.iter().map(|&i| order[i]).collect())
        .collect();
    Ok(PClusterSolution {
        cost: solution.cost,
        clustering: Clustering::new(g.n(), clusters)?,
    })
}
