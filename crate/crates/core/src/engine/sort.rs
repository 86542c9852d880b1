//! Pareto ranking for two minimized objectives.

use std::cmp::Ordering;

use crate::objectives::ObjectiveVector;

/// `a` is no worse than `b` in both objectives and strictly better in one.
#[inline]
pub fn dominates(a: &ObjectiveVector, b: &ObjectiveVector) -> bool {
    a.intra <= b.intra && a.inter <= b.inter && (a.intra < b.intra || a.inter < b.inter)
}

fn lexicographic(a: &ObjectiveVector, b: &ObjectiveVector) -> Ordering {
    a.intra.total_cmp(&b.intra).then(a.inter.total_cmp(&b.inter))
}

/// Splits `points` into non-domination fronts (indices into `points`),
/// best front first. Equal vectors share a front.
///
/// Sweep in lexicographic order. Each front's most recently added member has
/// the smallest `inter` in that front, so whether a front dominates a new
/// point is an O(1) check, and that check is monotone over the front list,
/// which allows a binary search. O(N log N) overall.
pub fn fast_nondominated_sort(points: &[ObjectiveVector]) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| lexicographic(&points[a], &points[b]).then(a.cmp(&b)));

    let mut fronts: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        let p = &points[i];
        let dominated_by = |front: &Vec<usize>| {
            let last = &points[*front.last().unwrap()];
            last.inter < p.inter || (last.inter == p.inter && last.intra < p.intra)
        };
        let k = fronts.partition_point(dominated_by);
        if k == fronts.len() {
            fronts.push(vec![i]);
        } else {
            fronts[k].push(i);
        }
    }
    for front in &mut fronts {
        front.sort_unstable();
    }
    fronts
}

/// Crowding distance of each member of one front. Per objective, the two
/// extreme members get infinity; the others add the normalized gap between
/// their sorted neighbors. An objective with zero range contributes nothing
/// to interior members.
pub fn crowding_distance(front: &[ObjectiveVector]) -> Vec<f64> {
    let n = front.len();
    let mut distance = vec![0.0; n];
    if n <= 2 {
        return vec![f64::INFINITY; n];
    }
    let objectives: [fn(&ObjectiveVector) -> f64; 2] = [|v| v.intra, |v| v.inter];
    let mut order: Vec<usize> = (0..n).collect();
    for value in objectives {
        order.sort_by(|&a, &b| value(&front[a]).total_cmp(&value(&front[b])).then(a.cmp(&b)));
        let lo = value(&front[order[0]]);
        let hi = value(&front[order[n - 1]]);
        distance[order[0]] = f64::INFINITY;
        distance[order[n - 1]] = f64::INFINITY;
        let range = hi - lo;
        if range <= 0.0 {
            continue;
        }
        for w in 1..n - 1 {
            let gap = value(&front[order[w + 1]]) - value(&front[order[w - 1]]);
            distance[order[w]] += gap / range;
        }
    }
    distance
}


#[cfg(test)]
mod tests {
    use super::oracle::pairwise_fronts;
    use super::*;
    use crate::rng::{stream, Purpose};
    use proptest::prelude::*;
    use rand::Rng;

    fn v(a: f64, b: f64) -> ObjectiveVector {
        ObjectiveVector::new(a, b)
    }

    #[test]
    fn dominance_cases() {
        assert!(dominates(&v(0.1, 0.2), &v(0.2, 0.3)));
        assert!(!dominates(&v(0.1, 0.3), &v(0.3, 0.1)));
        assert!(!dominates(&v(0.3, 0.1), &v(0.1, 0.3)));
        assert!(!dominates(&v(0.1, 0.2), &v(0.1, 0.2)));
    }

    #[test]
    fn small_example() {
        let pts = [v(1.0, 2.0), v(2.0, 1.0), v(2.0, 2.0), v(3.0, 3.0)];
        assert_eq!(fast_nondominated_sort(&pts), vec![vec![0, 1], vec![2], vec![3]]);
        assert_eq!(pairwise_fronts(&pts), vec![vec![0, 1], vec![2], vec![3]]);
    }

    #[test]
    fn identical_points_share_front() {
        let pts = vec![v(0.5, 0.5); 7];
        assert_eq!(fast_nondominated_sort(&pts), vec![(0..7).collect::<Vec<_>>()]);
    }

    #[test]
    fn ties_in_one_coordinate() {
        let pts = [v(1.0, 1.0), v(1.0, 2.0), v(0.0, 2.0), v(1.0, 1.0)];
        assert_eq!(fast_nondominated_sort(&pts), pairwise_fronts(&pts));
    }

    #[test]
    fn random_thousand_matches_oracle() {
        let mut rng = stream(1, Purpose::Test, 0, 0);
        let pts: Vec<_> = (0..1000).map(|_| v(rng.gen(), rng.gen())).collect();
        assert_eq!(fast_nondominated_sort(&pts), pairwise_fronts(&pts));
    }

    #[test]
    fn crowding_examples() {
        let d = crowding_distance(&[v(0.1, 0.9), v(0.5, 0.5), v(0.9, 0.1)]);
        assert!(d[0].is_infinite() && d[2].is_infinite());
        assert!((d[1] - 2.0).abs() < 1e-12);
        assert_eq!(crowding_distance(&[v(0.3, 0.3)]), vec![f64::INFINITY]);
        assert_eq!(crowding_distance(&[v(0.3, 0.3), v(0.1, 0.5)]), vec![f64::INFINITY; 2]);
    }

    #[test]
    fn crowding_zero_range_objective() {
        let d = crowding_distance(&[v(0.1, 0.5), v(0.2, 0.5), v(0.4, 0.5)]);
        assert!((d[1] - 1.0).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn sweep_matches_pairwise(pts in prop::collection::vec((0u8..12, 0u8..12), 1..120)) {
            // Coarse grid forces many ties and duplicates.
            let pts: Vec<_> = pts.into_iter().map(|(a, b)| v(a as f64, b as f64)).collect();
            prop_assert_eq!(fast_nondominated_sort(&pts), pairwise_fronts(&pts));
        }
    }
}
