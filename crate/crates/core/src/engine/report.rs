use serde::{Deserialize, Serialize};

use super::{EvolutionConfig, Individual, Run};
use crate::graph::{Graph, NodeLabelTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub nodes: usize,
    pub edges: usize,
}

/// One front member. `labels_ref` indexes [`RunReport::partitions`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrontEntry {
    pub labels_ref: usize,
    pub f1: f64,
    pub f2: f64,
    #[serde(rename = "Q")]
    pub q: f64,
    pub k: usize,
}

impl FrontEntry {
    fn new(labels_ref: usize, m: &Individual) -> Self {
        FrontEntry { labels_ref, f1: m.objectives.intra, f2: m.objectives.inter, q: m.quality(), k: m.communities }
    }
}

/// Wall-clock figures; the only part of a report that varies between
/// identical runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimingReport {
    pub initialization_ms: f64,
    pub evaluation_ms: f64,
    pub ranking_ms: f64,
    pub variation_ms: f64,
    pub selection_ms: f64,
    pub total_ms: f64,
    pub per_generation_ms: Vec<f64>,
}

/// Machine-readable summary of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub config: EvolutionConfig,
    pub graph: GraphSummary,
    pub generations: usize,
    pub best_quality_per_generation: Vec<f64>,
    pub front: Vec<FrontEntry>,
    pub best: FrontEntry,
    /// External node identifiers in dense-id order.
    pub nodes: Vec<String>,
    /// Canonical label vectors of the front members, in dense-id order.
    pub partitions: Vec<Vec<u32>>,
    pub timing: TimingReport,
}

fn ms(d: std::time::Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

impl RunReport {
    pub fn new(run: &Run, cfg: &EvolutionConfig, g: &Graph, labels: &NodeLabelTable) -> Self {
        let front: Vec<FrontEntry> = run.front.iter().enumerate().map(|(i, m)| FrontEntry::new(i, m)).collect();
        let best = front[run.front.best_index()];
        RunReport {
            config: *cfg,
            graph: GraphSummary { nodes: g.node_count(), edges: g.edge_count() },
            generations: run.history.len(),
            best_quality_per_generation: run.history.iter().map(|h| h.best_quality).collect(),
            front,
            best,
            nodes: labels.labels().to_vec(),
            partitions: run.front.iter().map(|m| m.partition.labels().to_vec()).collect(),
            timing: TimingReport {
                initialization_ms: ms(run.timing.initialization),
                evaluation_ms: ms(run.timing.evaluation),
                ranking_ms: ms(run.timing.ranking),
                variation_ms: ms(run.timing.variation),
                selection_ms: ms(run.timing.selection),
                total_ms: ms(run.timing.total),
                per_generation_ms: run.history.iter().map(|h| ms(h.wall)).collect(),
            },
        }
    }

    /// `(external id, community)` pairs of the selected partition.
    pub fn best_assignment(&self) -> Vec<(&str, u32)> {
        self.nodes.iter().map(String::as_str).zip(self.partitions[self.best.labels_ref].iter().copied()).collect()
    }
}
