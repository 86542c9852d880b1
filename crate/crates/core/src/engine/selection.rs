use std::cmp::Ordering;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use rand::Rng;

use super::sort::{crowding_distance, fast_nondominated_sort};
use crate::error::{Error, Result};
use crate::objectives::{Evaluation, ObjectiveVector};
use crate::partition::Partition;

static EPOCH: AtomicU64 = AtomicU64::new(1);

fn next_epoch() -> u64 {
    EPOCH.fetch_add(1, AtomicOrdering::Relaxed)
}

/// A scored partition with its position in the last ranking it took part in.
#[derive(Debug, Clone)]
pub struct Individual {
    pub partition: Partition,
    pub objectives: ObjectiveVector,
    pub communities: usize,
    /// Front index, 1 = non-dominated.
    pub rank: usize,
    pub crowding: f64,
    epoch: u64,
}

impl Individual {
    pub fn new(partition: Partition, eval: Evaluation) -> Self {
        Individual {
            partition,
            objectives: eval.objectives,
            communities: eval.communities,
            rank: 0,
            crowding: 0.0,
            epoch: 0,
        }
    }

    pub fn quality(&self) -> f64 {
        self.objectives.quality()
    }
}

/// Crowded-comparison order: lower rank first, then larger crowding.
pub fn crowded_cmp(a: &Individual, b: &Individual) -> Ordering {
    a.rank.cmp(&b.rank).then(b.crowding.total_cmp(&a.crowding))
}

/// Assigns rank and crowding to every member in place.
fn assign(members: &mut [Individual], epoch: u64) -> Vec<Vec<usize>> {
    let points: Vec<ObjectiveVector> = members.iter().map(|m| m.objectives).collect();
    let fronts = fast_nondominated_sort(&points);
    for (r, front) in fronts.iter().enumerate() {
        let vectors: Vec<ObjectiveVector> = front.iter().map(|&i| points[i]).collect();
        for (&i, d) in front.iter().zip(crowding_distance(&vectors)) {
            members[i].rank = r + 1;
            members[i].crowding = d;
            members[i].epoch = epoch;
        }
    }
    fronts
}

/// A set of individuals together with the ranking epoch their rank and
/// crowding values belong to.
#[derive(Debug, Clone)]
pub struct Population {
    members: Vec<Individual>,
    epoch: u64,
}

impl Population {
    /// Wraps members without ranking them; call [`Population::rank`] before
    /// selection.
    pub fn new(members: Vec<Individual>) -> Self {
        Population { members, epoch: next_epoch() }
    }

    pub fn ranked(members: Vec<Individual>) -> Self {
        let mut p = Population::new(members);
        p.rank();
        p
    }

    /// Recomputes fronts and crowding over the current members.
    pub fn rank(&mut self) {
        self.epoch = next_epoch();
        assign(&mut self.members, self.epoch);
    }

    pub fn is_ranked(&self) -> bool {
        self.members.iter().all(|m| m.epoch == self.epoch)
    }

    pub fn members(&self) -> &[Individual] {
        &self.members
    }

    pub fn into_members(self) -> Vec<Individual> {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Indices of `count` winners of independent binary tournaments under the
/// crowded-comparison order; full ties are decided by a fair coin.
pub fn tournament_select<R: Rng + ?Sized>(pop: &Population, count: usize, rng: &mut R) -> Result<Vec<usize>> {
    if pop.is_empty() {
        return Err(Error::Contract("tournament over an empty population".into()));
    }
    if !pop.is_ranked() {
        return Err(Error::Contract("tournament on a population with stale rank/crowding".into()));
    }
    let n = pop.len();
    Ok((0..count)
        .map(|_| {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            match crowded_cmp(&pop.members[a], &pop.members[b]) {
                Ordering::Less => a,
                Ordering::Greater => b,
                Ordering::Equal => {
                    if rng.gen_bool(0.5) {
                        a
                    } else {
                        b
                    }
                }
            }
        })
        .collect())
}

/// Keeps the best `target` of `combined` (which must hold exactly
/// `2 * target`): whole fronts in rank order, then the overflowing front by
/// descending crowding, input order breaking ties.
pub fn environmental_selection(combined: Vec<Individual>, target: usize) -> Result<Vec<Individual>> {
    select_survivors(combined, target).map(|(kept, _)| kept)
}

/// Survivors plus the size of the combined pool's first front.
pub(crate) fn select_survivors(mut combined: Vec<Individual>, target: usize) -> Result<(Vec<Individual>, usize)> {
    if combined.len() != 2 * target {
        return Err(Error::Contract(format!(
            "environmental selection expects {} individuals, got {}",
            2 * target,
            combined.len()
        )));
    }
    let fronts = assign(&mut combined, next_epoch());
    let first_front = fronts[0].len();
    let mut keep: Vec<usize> = Vec::with_capacity(target);
    for front in fronts {
        if keep.len() + front.len() <= target {
            keep.extend(front);
            continue;
        }
        let mut front = front;
        front.sort_by(|&a, &b| combined[b].crowding.total_cmp(&combined[a].crowding).then(a.cmp(&b)));
        keep.extend(front.into_iter().take(target - keep.len()));
        break;
    }
    keep.sort_unstable();
    let mut slots: Vec<Option<Individual>> = combined.into_iter().map(Some).collect();
    Ok((keep.into_iter().map(|i| slots[i].take().unwrap()).collect(), first_front))
}
