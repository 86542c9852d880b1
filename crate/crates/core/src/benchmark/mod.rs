//! Planted-community graphs, an exhaustive Pareto oracle for tiny graphs,
//! and the experiment harness.

mod experiment;
mod generator;
mod oracle;

pub use experiment::{
    run_experiment, thread_scaling, Estimate, ExperimentCell, ExperimentReport, PlotPanel, RunFailure, RunRecord,
    ScalingPoint, Series, SummaryRow, ThreadScalingReport,
};
pub use generator::{generate_planted, BenchmarkSpec, GroundTruthGraph};
pub use oracle::{exact_pareto, ExactFront, ExactPoint, DEFAULT_MAX_NODES};

/// Candidate evaluations of a run: population size times generations.
pub fn ga_effort(population: usize, generations: usize) -> u64 {
    population as u64 * generations as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn effort_examples() {
        assert_eq!(ga_effort(100, 100), 10_000);
        assert_eq!(ga_effort(1, 1), 1);
        assert_eq!(ga_effort(50, 200), 10_000);
    }
}
