//! Population initialization and the topology-aware variation operators.
//!
//! Labels are never invented by variation: crossover only copies a label some
//! parent held at the same node, and mutation only copies a label some
//! neighbor held. Initial labels are node ids, so every individual in a run
//! shares one label namespace and majority votes across parents are
//! meaningful.

use rand::seq::index::sample;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::Partition;
use crate::rng::{stream, Purpose};

/// Variation parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OperatorParams {
    /// Probability that a child is produced by crossover rather than copied.
    pub crossover_prob: f64,
    /// Per-node probability of a mutation attempt.
    pub mutation_prob: f64,
    /// Parents voting in each crossover.
    pub parents: usize,
}

impl Default for OperatorParams {
    fn default() -> Self {
        OperatorParams { crossover_prob: 0.8, mutation_prob: 0.2, parents: 4 }
    }
}

impl OperatorParams {
    pub fn validate(&self) -> Result<()> {
        for (name, p) in [("crossover probability", self.crossover_prob), ("mutation probability", self.mutation_prob)]
        {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Config(format!("{name} must be in [0, 1], got {p}")));
            }
        }
        if self.parents < 2 {
            return Err(Error::Config(format!("crossover needs at least 2 parents, got {}", self.parents)));
        }
        Ok(())
    }
}

/// One random starting partition: every node starts in its own community and
/// then, with probability 1/2, adopts the id of a uniformly chosen neighbor.
/// Isolated nodes keep their own id.
pub fn random_partition<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Partition {
    let labels = (0..g.node_count())
        .map(|v| {
            let adj = g.adjacent(v);
            if !adj.is_empty() && rng.gen_bool(0.5) {
                adj[rng.gen_range(0..adj.len())]
            } else {
                v as u32
            }
        })
        .collect();
    Partition::new(labels)
}

/// `count` starting partitions, individual `i` drawn from its own stream.
pub fn initialize_population(g: &Graph, count: usize, seed: u64) -> Result<Vec<Partition>> {
    if count < 2 {
        return Err(Error::Config(format!("population size must be at least 2, got {count}")));
    }
    Ok((0..count).into_par_iter().map(|i| random_partition(g, &mut stream(seed, Purpose::Init, 0, i as u64))).collect())
}

fn check_parents(parents: &[&Partition]) -> Result<()> {
    if parents.len() < 2 {
        return Err(Error::Config(format!("crossover needs at least 2 parents, got {}", parents.len())));
    }
    let n = parents[0].len();
    if let Some(bad) = parents.iter().find(|p| p.len() != n) {
        return Err(Error::Contract(format!("parent partitions differ in length: {} vs {}", n, bad.len())));
    }
    Ok(())
}

/// Per-node plurality vote over the parents' labels; ties are broken
/// uniformly at random.
pub fn crossover<R: Rng + ?Sized>(parents: &[&Partition], rng: &mut R) -> Result<Partition> {
    check_parents(parents)?;
    Ok(crossover_unchecked(parents, rng))
}

fn crossover_unchecked<R: Rng + ?Sized>(parents: &[&Partition], rng: &mut R) -> Partition {
    let n = parents[0].len();
    let mut votes: Vec<(u32, u32)> = Vec::with_capacity(parents.len());
    let mut tied: Vec<u32> = Vec::with_capacity(parents.len());
    let labels = (0..n)
        .map(|v| {
            votes.clear();
            for p in parents {
                let l = p.label(v);
                match votes.iter_mut().find(|(label, _)| *label == l) {
                    Some((_, c)) => *c += 1,
                    None => votes.push((l, 1)),
                }
            }
            if votes.len() == 1 {
                return votes[0].0;
            }
            let best = votes.iter().map(|&(_, c)| c).max().unwrap();
            tied.clear();
            tied.extend(votes.iter().filter(|&&(_, c)| c == best).map(|&(l, _)| l));
            pick(&tied, rng)
        })
        .collect();
    Partition::new(labels)
}

#[inline]
fn pick<R: Rng + ?Sized>(tied: &[u32], rng: &mut R) -> u32 {
    if tied.len() == 1 {
        tied[0]
    } else {
        tied[rng.gen_range(0..tied.len())]
    }
}

/// Moves each node, with probability `rate`, to the most frequent label among
/// its neighbors. Neighbor labels are read from the partition as it was
/// before this call (all moves apply at once). Ties are uniform; isolated
/// nodes never move.
pub fn mutate<R: Rng + ?Sized>(p: &Partition, g: &Graph, rate: f64, rng: &mut R) -> Result<Partition> {
    if p.len() != g.node_count() {
        return Err(Error::Contract(format!(
            "partition has {} labels but graph has {} nodes",
            p.len(),
            g.node_count()
        )));
    }
    let mut out = p.clone();
    mutate_in_place(&mut out, g, rate, rng);
    Ok(out)
}

pub(crate) fn mutate_in_place<R: Rng + ?Sized>(p: &mut Partition, g: &Graph, rate: f64, rng: &mut R) {
    let mut moves: Vec<(usize, u32)> = Vec::new();
    let mut scratch: Vec<u32> = Vec::new();
    let mut tied: Vec<u32> = Vec::new();
    for v in 0..g.node_count() {
        if rng.gen::<f64>() >= rate {
            continue;
        }
        let adj = g.adjacent(v);
        if adj.is_empty() {
            continue;
        }
        scratch.clear();
        scratch.extend(adj.iter().map(|&u| p.label(u as usize)));
        scratch.sort_unstable();
        tied.clear();
        let mut best = 0usize;
        let mut i = 0;
        while i < scratch.len() {
            let l = scratch[i];
            let mut j = i + 1;
            while j < scratch.len() && scratch[j] == l {
                j += 1;
            }
            let run = j - i;
            if run > best {
                best = run;
                tied.clear();
                tied.push(l);
            } else if run == best {
                tied.push(l);
            }
            i = j;
        }
        moves.push((v, pick(&tied, rng)));
    }
    let labels = p.labels_mut();
    for (v, l) in moves {
        labels[v] = l;
    }
}

/// How a child was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    Crossover,
    Copy,
}

/// One child: crossover of `parents` pool members drawn without replacement
/// with probability `crossover_prob`, otherwise a copy of a random member;
/// mutation is applied either way.
pub fn breed<R: Rng + ?Sized>(
    pool: &[Partition],
    g: &Graph,
    params: &OperatorParams,
    rng: &mut R,
) -> (Partition, Origin) {
    let (mut child, origin) = if rng.gen::<f64>() < params.crossover_prob {
        let picked = sample(rng, pool.len(), params.parents);
        let parents: Vec<&Partition> = picked.iter().map(|i| &pool[i]).collect();
        (crossover_unchecked(&parents, rng), Origin::Crossover)
    } else {
        (pool[rng.gen_range(0..pool.len())].clone(), Origin::Copy)
    };
    mutate_in_place(&mut child, g, params.mutation_prob, rng);
    (child, origin)
}

/// Produces `pool.len()` children in parallel. Child `i` of generation
/// `generation` uses its own derived stream.
pub fn create_offspring(
    pool: &[Partition],
    g: &Graph,
    params: &OperatorParams,
    seed: u64,
    generation: u64,
) -> Result<Vec<Partition>> {
    params.validate()?;
    if pool.len() < params.parents {
        return Err(Error::Config(format!(
            "mating pool of {} is smaller than the {} parents per crossover",
            pool.len(),
            params.parents
        )));
    }
    if let Some(bad) = pool.iter().find(|p| p.len() != g.node_count()) {
        return Err(Error::Contract(format!(
            "pool partition has {} labels but graph has {} nodes",
            bad.len(),
            g.node_count()
        )));
    }
    Ok((0..pool.len())
        .into_par_iter()
        .map(|i| breed(pool, g, params, &mut stream(seed, Purpose::Offspring, generation, i as u64)).0)
        .collect())
}
