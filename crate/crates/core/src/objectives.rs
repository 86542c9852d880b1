//! Partition scoring: the intra/inter objective pair, modularity, and the
//! scalarized quality used to pick one partition from a front.
//!
//! All three are computed from two aggregates: the number of edges whose
//! endpoints share a label, and the degree sum of each community.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::Partition;

/// Objective pair, both minimized.
///
/// `intra` is one minus the fraction of edges inside communities; `inter` is
/// the sum over communities of the squared share of total degree.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveVector {
    pub intra: f64,
    pub inter: f64,
}

impl ObjectiveVector {
    pub fn new(intra: f64, inter: f64) -> Self {
        ObjectiveVector { intra, inter }
    }

    /// `1 - intra - inter`; higher is better.
    pub fn quality(&self) -> f64 {
        scalarized_quality(self)
    }
}

/// `1 - intra - inter`.
pub fn scalarized_quality(v: &ObjectiveVector) -> f64 {
    1.0 - v.intra - v.inter
}

/// Raw counts behind the objectives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Tally {
    pub intra_edges: u64,
    /// Σ_c (Σ_{v∈c} d(v))²
    pub degree_share_sq: u128,
    pub communities: usize,
}

/// Objectives plus the community count, as stored on each individual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub objectives: ObjectiveVector,
    pub communities: usize,
}

fn check(g: &Graph, p: &Partition) -> Result<()> {
    if p.len() != g.node_count() {
        return Err(Error::Contract(format!(
            "partition has {} labels but graph has {} nodes",
            p.len(),
            g.node_count()
        )));
    }
    if g.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(())
}

/// One pass over the edges and one over the nodes.
pub(crate) fn tally(g: &Graph, p: &Partition) -> Tally {
    let labels = p.labels();
    let intra_edges = g.edges().iter().filter(|&&(u, v)| labels[u as usize] == labels[v as usize]).count() as u64;

    let n = g.node_count();
    let max_label = labels.iter().copied().max().unwrap_or(0) as usize;
    let mut owned = None;
    let labels = if max_label < 4 * n + 16 { labels } else { owned.insert(p.canonical()).labels() };
    let width = labels.iter().copied().max().map_or(0, |l| l as usize + 1);
    let mut degree_sum = vec![0u64; width];
    let mut present = vec![false; width];
    for (v, &l) in labels.iter().enumerate() {
        degree_sum[l as usize] += g.degree(v) as u64;
        present[l as usize] = true;
    }
    let degree_share_sq = degree_sum.iter().map(|&d| (d as u128) * (d as u128)).sum();
    let communities = present.iter().filter(|&&x| x).count();
    Tally { intra_edges, degree_share_sq, communities }
}

impl Tally {
    pub fn objectives(&self, m: usize) -> ObjectiveVector {
        let m_f = m as f64;
        let intra = (m as u64 - self.intra_edges) as f64 / m_f;
        let inter = self.degree_share_sq as f64 / (4.0 * m_f * m_f);
        ObjectiveVector { intra, inter }
    }

    pub fn modularity(&self, m: usize) -> f64 {
        let m_f = m as f64;
        self.intra_edges as f64 / m_f - self.degree_share_sq as f64 / (4.0 * m_f * m_f)
    }
}

/// Scores `p` on `g` in O(m + n).
pub fn evaluate_objectives(g: &Graph, p: &Partition) -> Result<ObjectiveVector> {
    check(g, p)?;
    Ok(tally(g, p).objectives(g.edge_count()))
}

/// Objectives together with the number of communities.
pub fn evaluate(g: &Graph, p: &Partition) -> Result<Evaluation> {
    check(g, p)?;
    let t = tally(g, p);
    Ok(Evaluation { objectives: t.objectives(g.edge_count()), communities: t.communities })
}

/// Newman modularity in its community-aggregated form,
/// `Σ_c [ |E(c)|/m − (D_c / 2m)² ]`.
pub fn modularity(g: &Graph, p: &Partition) -> Result<f64> {
    check(g, p)?;
    Ok(tally(g, p).modularity(g.edge_count()))
}
