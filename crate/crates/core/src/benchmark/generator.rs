use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::Partition;
use crate::rng::{stream, Purpose, RngStream};

const MAX_ATTEMPTS: usize = 100;

/// Parameters of a planted-partition graph.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkSpec {
    pub n: usize,
    /// Expected fraction of each node's edges that leave its community.
    pub mu: f64,
    pub avg_degree: f64,
    pub min_comm: usize,
    pub max_comm: usize,
    pub seed: u64,
}

impl BenchmarkSpec {
    /// Desk-scale defaults: mean degree 20, communities of 20 to 100 nodes.
    pub fn new(n: usize, mu: f64, seed: u64) -> Self {
        BenchmarkSpec { n, mu, avg_degree: 20.0, min_comm: 20, max_comm: 100, seed }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::Config(m));
        if self.n < 2 {
            return fail(format!("need at least 2 nodes, got {}", self.n));
        }
        if !(0.0..1.0).contains(&self.mu) {
            return fail(format!("mu must lie in [0, 1), got {}", self.mu));
        }
        if !(self.avg_degree > 0.0 && self.avg_degree < self.n as f64) {
            return fail(format!("average degree {} must lie in (0, n)", self.avg_degree));
        }
        if self.min_comm < 1 || self.min_comm > self.max_comm || self.max_comm > self.n {
            return fail(format!(
                "community sizes need 1 <= min ({}) <= max ({}) <= n ({})",
                self.min_comm, self.max_comm, self.n
            ));
        }
        let intra = (1.0 - self.mu) * self.avg_degree;
        if intra >= self.min_comm as f64 {
            return fail(format!(
                "expected intra-community degree {intra} does not fit in communities of {} nodes",
                self.min_comm
            ));
        }
        Ok(())
    }
}

/// A generated graph with its planted communities.
#[derive(Debug, Clone)]
pub struct GroundTruthGraph {
    pub graph: Graph,
    pub truth: Partition,
    /// Inter-community edges over all edges.
    pub realized_mu: f64,
    /// Edge requests abandoned after repeated collisions.
    pub dropped_edges: usize,
}

fn community_sizes(spec: &BenchmarkSpec, rng: &mut RngStream) -> Vec<usize> {
    let mut sizes = Vec::new();
    let mut total = 0;
    while total < spec.n {
        let s = rng.gen_range(spec.min_comm..=spec.max_comm).min(spec.n - total);
        sizes.push(s);
        total += s;
    }
    // A trimmed tail below the minimum is spread over the other communities
    // while they have room.
    if sizes.len() > 1 && *sizes.last().unwrap() < spec.min_comm {
        let mut spare = sizes.pop().unwrap();
        let mut i = 0;
        let mut stalled = 0;
        while spare > 0 && stalled < sizes.len() {
            if sizes[i] < spec.max_comm {
                sizes[i] += 1;
                spare -= 1;
                stalled = 0;
            } else {
                stalled += 1;
            }
            i = (i + 1) % sizes.len();
        }
        if spare > 0 {
            sizes.push(spare);
        }
    }
    sizes
}

/// Planted-partition graph: every node starts about `avg_degree / 2` edges,
/// each leaving its community with probability `mu`. Endpoints are uniform
/// within (or outside) the community. A request that hits an existing edge
/// or a self-loop is redrawn, up to 100 times.
pub fn generate_planted(spec: &BenchmarkSpec) -> Result<GroundTruthGraph> {
    spec.validate()?;
    let mut rng = stream(spec.seed, Purpose::Generator, 0, 0);
    let sizes = community_sizes(spec, &mut rng);

    let mut order: Vec<u32> = (0..spec.n as u32).collect();
    order.shuffle(&mut rng);
    let mut labels = vec![0u32; spec.n];
    let mut members: Vec<Vec<u32>> = Vec::with_capacity(sizes.len());
    let mut next = 0;
    for (c, &s) in sizes.iter().enumerate() {
        let block = order[next..next + s].to_vec();
        for &v in &block {
            labels[v as usize] = c as u32;
        }
        members.push(block);
        next += s;
    }

    let half = spec.avg_degree / 2.0;
    let mut seen: HashSet<(u32, u32)> = HashSet::new();
    let mut edges = Vec::new();
    let mut inter = 0usize;
    let mut dropped = 0usize;
    for v in 0..spec.n as u32 {
        let own = &members[labels[v as usize] as usize];
        let mut stubs = half.floor() as usize;
        if rng.gen_bool(half.fract()) {
            stubs += 1;
        }
        for _ in 0..stubs {
            let leave = spec.mu > 0.0 && rng.gen_bool(spec.mu);
            let mut placed = false;
            for _ in 0..MAX_ATTEMPTS {
                let u = if leave { rng.gen_range(0..spec.n as u32) } else { own[rng.gen_range(0..own.len())] };
                if u == v || (leave && labels[u as usize] == labels[v as usize]) {
                    continue;
                }
                if seen.insert((u.min(v), u.max(v))) {
                    edges.push((v as usize, u as usize));
                    inter += leave as usize;
                    placed = true;
                    break;
                }
            }
            dropped += !placed as usize;
        }
    }

    let (graph, _) = Graph::from_edges(spec.n, edges)?;
    let realized_mu = if graph.edge_count() == 0 { 0.0 } else { inter as f64 / graph.edge_count() as f64 };
    Ok(GroundTruthGraph { graph, truth: Partition::new(labels), realized_mu, dropped_edges: dropped })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_respect_bounds() {
        for seed in 0..50 {
            let spec = BenchmarkSpec::new(1000, 0.1, seed);
            let sizes = community_sizes(&spec, &mut stream(seed, Purpose::Test, 0, 0));
            assert_eq!(sizes.iter().sum::<usize>(), 1000);
            assert!(sizes.iter().all(|&s| (20..=100).contains(&s)), "{sizes:?}");
        }
    }

    #[test]
    fn infeasible_spec_rejected() {
        let spec = BenchmarkSpec { min_comm: 10, max_comm: 20, ..BenchmarkSpec::new(100, 0.0, 1) };
        assert!(matches!(generate_planted(&spec), Err(Error::Config(_))));
        assert!(generate_planted(&BenchmarkSpec::new(1000, 1.0, 1)).is_err());
        assert!(generate_planted(&BenchmarkSpec { max_comm: 10, ..BenchmarkSpec::new(1000, 0.5, 1) }).is_err());
    }

    #[test]
    fn same_seed_same_graph() {
        let spec = BenchmarkSpec::new(500, 0.3, 7);
        let a = generate_planted(&spec).unwrap();
        let b = generate_planted(&spec).unwrap();
        assert_eq!(a.graph, b.graph);
        assert_eq!(a.truth, b.truth);
    }
}
