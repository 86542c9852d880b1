use paracomm::rng::{stream, Purpose};
use paracomm::{evolve, exact_pareto, select_best, EvolutionConfig, Graph};
use rand::Rng;

const EPS: f64 = 1e-12;

fn cliques(sizes: &[usize], bridges: &[(usize, usize)]) -> Graph {
    let mut edges = Vec::new();
    let mut base = 0;
    for &s in sizes {
        for a in base..base + s {
            for b in a + 1..base + s {
                edges.push((a, b));
            }
        }
        base += s;
    }
    edges.extend_from_slice(bridges);
    Graph::from_edges(base, edges).unwrap().0
}

fn random_graph(seed: u64, n: usize, p: f64) -> Graph {
    let mut rng = stream(seed, Purpose::Test, 0, 0);
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap().0
}

fn suite() -> Vec<(&'static str, Graph)> {
    vec![
        ("two 4-cliques", cliques(&[4, 4], &[(3, 4)])),
        ("cliques 3-3-4", cliques(&[3, 3, 4], &[(0, 3), (5, 6), (2, 9)])),
        ("5-ring of pairs", cliques(&[2, 2, 2, 2, 2], &[(1, 2), (3, 4), (5, 6), (7, 8), (9, 0)])),
        ("random 9", random_graph(1, 9, 0.3)),
        ("random 10", random_graph(2, 10, 0.25)),
    ]
}

#[test]
fn evolved_fronts_are_not_beaten_by_exact_fronts() {
    for (name, g) in suite() {
        let exact = exact_pareto(&g, 10).unwrap();
        let cfg = EvolutionConfig { seed: 4, workers: 2, ..Default::default() };
        let front = evolve(&g, &cfg).unwrap();
        for m in front.iter() {
            let v = m.objectives;
            assert!(
                exact.contains(&v, EPS) || !exact.dominates(&v, EPS),
                "{name}: evolved vector ({}, {}) is dominated by the exact front",
                v.intra,
                v.inter
            );
        }
    }
}

#[test]
fn best_pick_reaches_exact_optimum() {
    for (name, g) in suite() {
        let target = exact_pareto(&g, 10).unwrap().best_quality();
        let hits = (0..20)
            .filter(|&seed| {
                let cfg = EvolutionConfig { seed, workers: 1, ..Default::default() };
                let front = evolve(&g, &cfg).unwrap();
                (select_best(&front).quality() - target).abs() <= EPS
            })
            .count();
        assert!(hits >= 18, "{name}: optimum reached in {hits} of 20 seeds");
    }
}
