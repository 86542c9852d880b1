use serde::Serialize;

use crate::engine::dominates;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::objectives::ObjectiveVector;
use crate::partition::Partition;

/// Largest graph [`exact_pareto`] enumerates by default (Bell(12) partitions).
pub const DEFAULT_MAX_NODES: usize = 12;

/// One non-dominated objective vector and the first partition found with it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExactPoint {
    pub objectives: ObjectiveVector,
    pub witness: Partition,
    pub intra_edges: u64,
    /// Σ_c (degree sum of c)², the integer form of `inter`.
    pub degree_sq: u64,
}

/// The exact Pareto front of a tiny graph, by increasing `intra`.
#[derive(Debug, Clone, Serialize)]
pub struct ExactFront {
    pub points: Vec<ExactPoint>,
    /// Number of set partitions enumerated.
    pub enumerated: u64,
}

impl ExactFront {
    /// Whether `v` matches a front vector within `tol` in both coordinates.
    pub fn contains(&self, v: &ObjectiveVector, tol: f64) -> bool {
        self.points
            .iter()
            .any(|p| (p.objectives.intra - v.intra).abs() <= tol && (p.objectives.inter - v.inter).abs() <= tol)
    }

    /// Whether some front vector dominates `v` by more than `tol`.
    pub fn dominates(&self, v: &ObjectiveVector, tol: f64) -> bool {
        let shifted = ObjectiveVector::new(v.intra - tol, v.inter - tol);
        self.points.iter().any(|p| dominates(&p.objectives, &shifted))
    }

    /// Highest `1 - intra - inter` on the front.
    pub fn best_quality(&self) -> f64 {
        self.points.iter().map(|p| p.objectives.quality()).fold(f64::NEG_INFINITY, f64::max)
    }
}

struct Search<'a> {
    g: &'a Graph,
    labels: Vec<u32>,
    degree_sums: Vec<u64>,
    /// Per intra-edge count: the smallest squared-degree sum seen and its
    /// witness.
    best: Vec<Option<(u64, Vec<u32>)>>,
    enumerated: u64,
}

impl Search<'_> {
    /// Restricted-growth strings: node `v` joins one of the `k` open
    /// communities or opens a new one.
    fn visit(&mut self, v: usize, k: u32, intra: u64) {
        let n = self.g.node_count();
        if v == n {
            self.enumerated += 1;
            let sq: u64 = self.degree_sums[..k as usize].iter().map(|&d| d * d).sum();
            let slot = &mut self.best[intra as usize];
            if slot.as_ref().is_none_or(|(s, _)| sq < *s) {
                *slot = Some((sq, self.labels.clone()));
            }
            return;
        }
        let d = self.g.degree(v) as u64;
        for c in 0..=k {
            let gained =
                self.g.adjacent(v).iter().filter(|&&u| (u as usize) < v && self.labels[u as usize] == c).count();
            self.labels[v] = c;
            self.degree_sums[c as usize] += d;
            self.visit(v + 1, k.max(c + 1), intra + gained as u64);
            self.degree_sums[c as usize] -= d;
        }
    }
}

/// Enumerates every partition of a graph with at most `max_n` nodes and
/// returns the non-dominated objective vectors. Dominance is decided on the
/// exact integer counts.
pub fn exact_pareto(g: &Graph, max_n: usize) -> Result<ExactFront> {
    let n = g.node_count();
    if n > max_n {
        return Err(Error::OracleTooLarge { nodes: n, max: max_n });
    }
    if g.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let m = g.edge_count();
    let mut search =
        Search { g, labels: vec![0; n], degree_sums: vec![0; n.max(1)], best: vec![None; m + 1], enumerated: 0 };
    search.visit(0, 0, 0);

    // Sweep from most intra edges down; keep strict improvements in f2.
    let two_m = 2.0 * m as f64;
    let mut points = Vec::new();
    let mut floor = u64::MAX;
    for (intra, slot) in search.best.into_iter().enumerate().rev() {
        if let Some((sq, witness)) = slot {
            if sq < floor {
                floor = sq;
                points.push(ExactPoint {
                    objectives: ObjectiveVector::new(1.0 - intra as f64 / m as f64, sq as f64 / (two_m * two_m)),
                    witness: Partition::new(witness),
                    intra_edges: intra as u64,
                    degree_sq: sq,
                });
            }
        }
    }
    Ok(ExactFront { points, enumerated: search.enumerated })
}
