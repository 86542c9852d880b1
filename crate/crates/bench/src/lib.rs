//! Shared inputs for the criterion benches.

use paracomm::operators::initialize_population;
use paracomm::{generate_planted, BenchmarkSpec, GroundTruthGraph, Partition};

/// Planted graph with mean degree 20 and mixing 0.3.
pub fn planted(n: usize) -> GroundTruthGraph {
    generate_planted(&BenchmarkSpec::new(n, 0.3, 42)).expect("feasible benchmark spec")
}

/// Starting population of the given size.
pub fn population(g: &GroundTruthGraph, size: usize) -> Vec<Partition> {
    initialize_population(&g.graph, size, 42).expect("population of at least 2")
}
