use std::collections::HashMap;

use serde::{Deserialize, Serialize};

/// Crisp clustering: every node carries exactly one community label.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    labels: Vec<u32>,
}

impl Partition {
    pub fn new(labels: Vec<u32>) -> Self {
        Partition { labels }
    }

    /// Every node in its own community, labeled by its id.
    pub fn singletons(n: usize) -> Self {
        Partition { labels: (0..n as u32).collect() }
    }

    pub fn single_community(n: usize) -> Self {
        Partition { labels: vec![0; n] }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn labels_mut(&mut self) -> &mut [u32] {
        &mut self.labels
    }

    pub fn into_labels(self) -> Vec<u32> {
        self.labels
    }

    #[inline]
    pub fn label(&self, v: usize) -> u32 {
        self.labels[v]
    }

    /// Number of distinct labels, `k`.
    pub fn community_count(&self) -> usize {
        let mut seen = self.labels.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// Relabels communities to `0..k` in order of first appearance.
    pub fn canonical(&self) -> Partition {
        let mut map: HashMap<u32, u32> = HashMap::new();
        let labels = self
            .labels
            .iter()
            .map(|&l| {
                let next = map.len() as u32;
                *map.entry(l).or_insert(next)
            })
            .collect();
        Partition { labels }
    }

    pub fn is_canonical(&self) -> bool {
        let mut next = 0u32;
        for &l in &self.labels {
            if l == next {
                next += 1;
            } else if l > next {
                return false;
            }
        }
        true
    }

    /// Members of each community, indexed by canonical label.
    pub fn communities(&self) -> Vec<Vec<usize>> {
        let canon = self.canonical();
        let mut out: Vec<Vec<usize>> = Vec::new();
        for (v, &l) in canon.labels.iter().enumerate() {
            if l as usize == out.len() {
                out.push(Vec::new());
            }
            out[l as usize].push(v);
        }
        out
    }
}

impl From<Vec<u32>> for Partition {
    fn from(labels: Vec<u32>) -> Self {
        Partition::new(labels)
    }
}

/// Interns arbitrary symbols into a canonical partition.
pub fn partition_from_symbols<T: Eq + std::hash::Hash>(symbols: &[T]) -> Partition {
    let mut map: HashMap<&T, u32> = HashMap::new();
    let labels = symbols
        .iter()
        .map(|s| {
            let next = map.len() as u32;
            *map.entry(s).or_insert(next)
        })
        .collect();
    Partition { labels }
}
