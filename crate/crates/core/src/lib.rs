//! Exact Cluster Editing on structured graph classes.
//!
//! - [`tpg`]: cubic-time solver for trivially perfect graphs.
//! - [`nlc`]: p-Cluster Editing over NLC-width expressions, polynomial for
//!   fixed width and fixed `p`.
//! - [`oracle`]: exhaustive search over set partitions for small graphs.
//! - [`gadget`]: the cograph gadget that encodes perfect bin packing.
//!
//! ```
//! use clusteredit::{solve_tpg, Graph};
//! use clusteredit::nlc::solve_cograph_p;
//!
//! let g = Graph::parse("4 3\n0 1\n0 2\n0 3\n")?;
//! assert_eq!(solve_tpg(&g)?.cost, 2);
//! assert_eq!(solve_cograph_p(&g, 2, true)?.clustering.len(), 2);
//! # Ok::<(), clusteredit::Error>(())
//! ```

pub mod cli;
pub mod cotree;
pub mod critical;
pub mod error;
pub mod gadget;
pub mod gen;
pub mod graph;
pub mod nlc;
pub mod oracle;
mod sexpr;
pub mod tpg;

pub use cotree::{binarize, build_cotree, build_tpg_cotree, cotree_to_expression, is_trivially_perfect, Cotree};
pub use error::{Error, Result};
pub use graph::{cost_of_clustering, edit_set, is_cluster_graph, Clustering, ClusteringJson, EditSet, Graph};
pub use nlc::{solve_p_cluster, Expression};
pub use tpg::solve_tpg;
