//! Sparse navigable graphs over finite metrics.
//!
//! A directed graph on a point set is `alpha`-navigable when every source `s`
//! and target `t != s` have an out-edge `(s, u)` with `d(u, t) < d(s, t) / alpha`.
//! This crate builds such graphs with several algorithms, verifies them
//! directly or with batched Boolean matrix products, and generates the
//! instances that separate the algorithms.

pub mod bench;
pub mod error;
pub mod graph;
pub mod instances;
pub mod io;
pub mod metric;
pub mod navbuild;
pub mod setcover;

pub use error::{Error, Result};
pub use graph::{is_navigable, uncovered_from, verify_naive, NavGraph, Violation};
pub use metric::{CountingMetric, DiscretizedMetric, Metric, PointSet, WeightedGraph};
pub use navbuild::{build, Algorithm, BuildReport};
pub use setcover::SetCoverSpec;
