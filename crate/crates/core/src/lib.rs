//! Multi-objective evolutionary community detection.
//!
//! A partition is scored by two objectives to be minimized together: the
//! share of edges that run between communities, and the sum of squared
//! community degree shares. [`evolve`] searches for the set of partitions
//! that trade these off optimally and [`select_best`] picks the one with the
//! highest `1 - intra - inter`, which equals its modularity.
//!
//! ```
//! use paracomm::{evolve, from_labeled_edges, select_best, EvolutionConfig};
//!
//! let loaded = from_labeled_edges([("a", "b"), ("b", "c"), ("c", "a"), ("c", "d"), ("d", "e"), ("e", "f"), ("f", "d")])?;
//! let cfg = EvolutionConfig { population: 20, generations: 30, seed: 1, workers: 1, ..Default::default() };
//! let front = evolve(&loaded.graph, &cfg)?;
//! let best = select_best(&front);
//! assert_eq!(best.communities, 2);
//! # Ok::<(), paracomm::Error>(())
//! ```

pub mod benchmark;
pub mod engine;
pub mod error;
pub mod graph;
pub mod io;
pub mod metrics;
pub mod objectives;
pub mod operators;
pub mod partition;
pub mod rng;

pub use benchmark::{exact_pareto, ga_effort, generate_planted, BenchmarkSpec, GroundTruthGraph};
pub use engine::{
    default_workers, dominates, evolve, fast_nondominated_sort, run, select_best, EvolutionConfig, Individual,
    ParetoFront, Run, RunReport,
};
pub use error::{Error, Result};
pub use graph::{from_labeled_edges, load_edge_list, EdgeListFormat, Graph, LoadReport, LoadedGraph, NodeLabelTable};
pub use metrics::{ami, harmonic_quality, nmi};
pub use objectives::{evaluate_objectives, modularity, scalarized_quality, ObjectiveVector};
pub use operators::OperatorParams;
pub use partition::Partition;
