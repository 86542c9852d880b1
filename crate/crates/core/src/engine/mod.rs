//! The evolutionary loop: initialize, then per generation rank the parents,
//! pick a mating pool by binary tournament, breed and score offspring, and
//! keep the best half of parents plus offspring.
//!
//! Scoring and breeding run on a dedicated worker pool. Every random draw
//! comes from a stream derived from the configured seed, so a run is a pure
//! function of `(graph, config)` whatever the worker count.

mod report;
mod selection;
mod sort;

use std::collections::HashSet;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::objectives::evaluate;
use crate::operators::{create_offspring, initialize_population, OperatorParams};
use crate::partition::Partition;
use crate::rng::{stream, Purpose};

pub use report::{FrontEntry, GraphSummary, RunReport, TimingReport};
pub use selection::{crowded_cmp, environmental_selection, tournament_select, Individual, Population};
pub use sort::{crowding_distance, dominates, fast_nondominated_sort};

/// Run parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvolutionConfig {
    pub population: usize,
    pub generations: usize,
    #[serde(flatten)]
    pub params: OperatorParams,
    pub seed: u64,
    pub workers: usize,
}

impl Default for EvolutionConfig {
    fn default() -> Self {
        EvolutionConfig {
            population: 100,
            generations: 100,
            params: OperatorParams::default(),
            seed: 0,
            workers: default_workers(),
        }
    }
}

/// Available hardware parallelism, at least 1.
pub fn default_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

impl EvolutionConfig {
    pub fn validate(&self) -> Result<()> {
        if self.population < 4 || !self.population.is_multiple_of(2) {
            return Err(Error::Config(format!("population must be even and at least 4, got {}", self.population)));
        }
        if self.generations < 1 {
            return Err(Error::Config("generations must be at least 1".into()));
        }
        if self.workers < 1 {
            return Err(Error::Config("workers must be at least 1".into()));
        }
        self.params.validate()?;
        if self.params.parents > self.population {
            return Err(Error::Config(format!(
                "{} parents per crossover exceeds population {}",
                self.params.parents, self.population
            )));
        }
        Ok(())
    }

    /// Total candidate evaluations, population × generations.
    pub fn effort(&self) -> u64 {
        crate::benchmark::ga_effort(self.population, self.generations)
    }
}

/// Rank-1 individuals of a population, one per distinct partition, ordered
/// by increasing `intra`.
#[derive(Debug, Clone)]
pub struct ParetoFront {
    members: Vec<Individual>,
}

impl ParetoFront {
    /// Checks that `members` is nonempty and mutually non-dominated.
    pub fn new(members: Vec<Individual>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::Contract("a Pareto front cannot be empty".into()));
        }
        for a in &members {
            if members.iter().any(|b| dominates(&b.objectives, &a.objectives)) {
                return Err(Error::Contract("front members must be mutually non-dominated".into()));
            }
        }
        Ok(ParetoFront { members })
    }

    fn from_population(pop: &Population) -> Self {
        let mut seen = HashSet::new();
        let mut members: Vec<Individual> = pop
            .members()
            .iter()
            .filter(|m| m.rank == 1)
            .map(|m| {
                let mut m = m.clone();
                m.partition = m.partition.canonical();
                m
            })
            .filter(|m| seen.insert(m.partition.clone()))
            .collect();
        members.sort_by(|a, b| {
            a.objectives
                .intra
                .total_cmp(&b.objectives.intra)
                .then(a.objectives.inter.total_cmp(&b.objectives.inter))
                .then_with(|| a.partition.labels().cmp(b.partition.labels()))
        });
        ParetoFront { members }
    }

    pub fn members(&self) -> &[Individual] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Individual> {
        self.members.iter()
    }

    /// Index of the member [`select_best`] returns.
    pub fn best_index(&self) -> usize {
        const TIE: f64 = 1e-12;
        let mut best = 0;
        for (i, m) in self.members.iter().enumerate().skip(1) {
            let (q, b) = (m.quality(), &self.members[best]);
            if q > b.quality() + TIE || ((q - b.quality()).abs() <= TIE && m.communities < b.communities) {
                best = i;
            }
        }
        best
    }
}

/// Member with the highest `1 - intra - inter`; near-equal scores (within
/// 1e-12) prefer fewer communities, then the earlier member.
pub fn select_best(front: &ParetoFront) -> &Individual {
    &front.members[front.best_index()]
}

/// Statistics recorded after each generation's survivor selection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GenerationStats {
    pub generation: usize,
    /// Highest scalarized quality among the survivors.
    pub best_quality: f64,
    /// Rank-1 members of parents plus offspring before truncation.
    pub combined_front_size: usize,
    #[serde(skip)]
    pub wall: Duration,
}

/// Accumulated wall time per phase.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PhaseTiming {
    pub initialization: Duration,
    pub evaluation: Duration,
    pub ranking: Duration,
    pub variation: Duration,
    pub selection: Duration,
    pub total: Duration,
}

/// Everything a run produces.
#[derive(Debug, Clone)]
pub struct Run {
    pub front: ParetoFront,
    pub history: Vec<GenerationStats>,
    pub timing: PhaseTiming,
}

impl Run {
    pub fn best(&self) -> &Individual {
        select_best(&self.front)
    }
}

/// Runs the configured number of generations and returns the final
/// non-dominated set.
pub fn evolve(g: &Graph, cfg: &EvolutionConfig) -> Result<ParetoFront> {
    Ok(run(g, cfg)?.front)
}

/// [`evolve`] with per-generation history and phase timings.
pub fn run(g: &Graph, cfg: &EvolutionConfig) -> Result<Run> {
    cfg.validate()?;
    if g.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::Config(format!("cannot start {} workers: {e}", cfg.workers)))?;
    pool.install(|| run_on_current_pool(g, cfg))
}

fn score(g: &Graph, partitions: Vec<Partition>) -> Vec<Individual> {
    partitions
        .into_par_iter()
        .map(|p| {
            // Lengths and edge count were checked up front.
            let eval = evaluate(g, &p).expect("partition matches graph");
            Individual::new(p, eval)
        })
        .collect()
}

fn run_on_current_pool(g: &Graph, cfg: &EvolutionConfig) -> Result<Run> {
    let start = Instant::now();
    let mut timing = PhaseTiming::default();

    let t = Instant::now();
    let initial = initialize_population(g, cfg.population, cfg.seed)?;
    timing.initialization = t.elapsed();

    let t = Instant::now();
    let mut parents = Population::new(score(g, initial));
    timing.evaluation += t.elapsed();

    let mut history = Vec::with_capacity(cfg.generations);
    for generation in 0..cfg.generations {
        let gen_start = Instant::now();
        let gen = generation as u64;

        let t = Instant::now();
        parents.rank();
        let picks = tournament_select(&parents, cfg.population, &mut stream(cfg.seed, Purpose::Tournament, gen, 0))?;
        let mating_pool: Vec<Partition> = picks.iter().map(|&i| parents.members()[i].partition.clone()).collect();
        timing.ranking += t.elapsed();

        let t = Instant::now();
        let children = create_offspring(&mating_pool, g, &cfg.params, cfg.seed, gen)?;
        timing.variation += t.elapsed();

        let t = Instant::now();
        let offspring = score(g, children);
        timing.evaluation += t.elapsed();

        let t = Instant::now();
        let mut combined = parents.into_members();
        combined.extend(offspring);
        let (survivors, combined_front_size) = selection::select_survivors(combined, cfg.population)?;
        timing.selection += t.elapsed();

        let best_quality = survivors.iter().map(Individual::quality).fold(f64::NEG_INFINITY, f64::max);
        parents = Population::new(survivors);
        history.push(GenerationStats { generation, best_quality, combined_front_size, wall: gen_start.elapsed() });
    }

    let t = Instant::now();
    parents.rank();
    let front = ParetoFront::from_population(&parents);
    timing.ranking += t.elapsed();
    timing.total = start.elapsed();
    Ok(Run { front, history, timing })
}
