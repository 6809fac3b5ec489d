//! Randomized invariants, each checked against a direct recomputation.

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

use rainbow_forge::colorings::EdgeColoring;
use rainbow_forge::graphs::SimpleGraph;
use rainbow_forge::oracle::{self, Decision, OracleConfig};
use rainbow_forge::rainbow;
use rainbow_forge::sampling::{random_coloring, sample_rng};

fn random_graph(n: usize, seed: u64) -> SimpleGraph {
    let mut rng = sample_rng(seed, 0);
    let p: f64 = rng.gen_range(0.1..0.95);
    let mut g = SimpleGraph::empty(n).unwrap();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

fn random_perm(n: usize, seed: u64) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut sample_rng(seed, 1));
    perm
}

fn coloring(n: usize, seed: u64) -> EdgeColoring {
    let mut rng = sample_rng(seed, 2);
    let palette = rng.gen_range(1..=n * (n - 1) / 2);
    random_coloring(&mut rng, n, palette).unwrap()
}

/// Largest number of disjoint triangles, by plain recursion.
fn max_disjoint_triangles(g: &SimpleGraph) -> usize {
    fn go(g: &SimpleGraph, used: &mut Vec<bool>, start: usize) -> usize {
        let n = g.n();
        let mut best = 0;
        for a in start..n {
            if used[a] {
                continue;
            }
            for b in a + 1..n {
                for c in b + 1..n {
                    if !used[b] && !used[c] && g.has_edge(a, b) && g.has_edge(a, c) && g.has_edge(b, c) {
                        used[a] = true;
                        used[b] = true;
                        used[c] = true;
                        best = best.max(1 + go(g, used, a + 1));
                        used[a] = false;
                        used[b] = false;
                        used[c] = false;
                    }
                }
            }
        }
        best
    }
    go(g, &mut vec![false; g.n()], 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn complement_is_an_involution(n in 1usize..=16, seed in any::<u64>()) {
        let g = random_graph(n, seed);
        let c = g.complement();
        prop_assert_eq!(c.edge_count() + g.edge_count(), n * (n - 1) / 2);
        prop_assert_eq!(c.complement(), g);
    }

    #[test]
    fn packing_search_matches_plain_count(n in 3usize..=10, seed in any::<u64>()) {
        let g = random_graph(n, seed);
        let best = max_disjoint_triangles(&g);
        for k in 1..=n / 3 {
            let found = g.find_triangle_packing(k);
            prop_assert_eq!(found.is_some(), k <= best);
            if let Some(p) = found {
                prop_assert!(p.validate_in(&g).is_ok());
                prop_assert_eq!(p.len(), k);
            }
        }
    }

    #[test]
    fn packing_existence_is_isomorphism_invariant(n in 3usize..=12, seed in any::<u64>()) {
        let g = random_graph(n, seed);
        let h = g.relabel(&random_perm(n, seed)).unwrap();
        prop_assert_eq!(h.edge_count(), g.edge_count());
        for k in 1..=n / 3 {
            prop_assert_eq!(g.has_triangle_packing(k), h.has_triangle_packing(k));
        }
    }

    #[test]
    fn cross_edges_sum_neighbourhoods(n in 2usize..=14, seed in any::<u64>(), split in any::<u16>()) {
        let g = random_graph(n, seed);
        let a: Vec<usize> = (0..n).filter(|&v| split >> v & 1 == 1).collect();
        let b: Vec<usize> = (0..n).filter(|&v| split >> v & 1 == 0).collect();
        let direct = a.iter().map(|&x| b.iter().filter(|&&y| g.has_edge(x, y)).count()).sum::<usize>();
        prop_assert_eq!(g.cross_edge_count(&a, &b).unwrap(), direct);
    }

    #[test]
    fn saturated_degree_counts_lost_colors(n in 2usize..=10, seed in any::<u64>()) {
        let col = coloring(n, seed);
        let c = col.color_count();
        for v in 0..n {
            let lost = c - col.delete_vertex(v).unwrap().color_count();
            prop_assert_eq!(col.saturated_degree(v).unwrap(), lost);
        }
    }

    #[test]
    fn doubly_saturated_color_is_one_edge(n in 2usize..=10, seed in any::<u64>()) {
        let col = coloring(n, seed);
        for (ci, class) in col.classes().iter().enumerate() {
            let holders: Vec<usize> = (0..n).filter(|&v| class.iter().all(|&(a, b)| a == v || b == v)).collect();
            if holders.len() >= 2 {
                prop_assert_eq!(class.len(), 1, "color {}", ci);
                prop_assert_eq!(class[0], (holders[0], holders[1]));
            }
        }
    }

    #[test]
    fn coloring_json_round_trips(n in 1usize..=12, seed in any::<u64>()) {
        let col = coloring(n.max(2), seed);
        prop_assert_eq!(EdgeColoring::from_json(&col.to_json()).unwrap(), col);
        let g = random_graph(n, seed);
        prop_assert_eq!(SimpleGraph::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn rainbow_existence_is_isomorphism_invariant(n in 6usize..=9, seed in any::<u64>()) {
        let col = coloring(n, seed);
        let moved = col.relabel(&random_perm(n, seed)).unwrap();
        prop_assert_eq!(moved.color_count(), col.color_count());
        for k in 2..=n / 3 {
            prop_assert_eq!(col.find_rainbow_triangle_packing(k).is_some(), moved.find_rainbow_triangle_packing(k).is_some());
        }
    }

    #[test]
    fn finder_agrees_with_exhaustive_search(n in 6usize..=10, seed in any::<u64>()) {
        let col = coloring(n, seed);
        for k in 2..=n / 3 {
            let trace = rainbow::find_rainbow_kc3(&col, k).unwrap();
            let exhaustive = col.find_rainbow_triangle_packing(k);
            prop_assert_eq!(trace.result.is_some(), exhaustive.is_some());
            if let Some(p) = trace.result {
                prop_assert!(col.is_rainbow_packing(&p).unwrap());
            }
        }
    }
}

/// Merges the class of the largest color into the class of color 1.
fn merge_last(col: &EdgeColoring) -> EdgeColoring {
    let last = col.color_count() as u64;
    EdgeColoring::from_labels(col.n(), |u, v| {
        let c = col.color(u, v) as u64;
        if c == last { 1 } else { c }
    })
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn oracle_witnesses_are_valid_and_monotone(n in 5usize..=6, c in 1usize..=15) {
        let cfg = OracleConfig::default();
        let c = c.min(n * (n - 1) / 2);
        let rep = oracle::exists_coloring_without_rainbow(n, 2, c, &cfg).unwrap();
        match rep.decision {
            Decision::Yes(w) => {
                prop_assert_eq!(w.color_count(), c);
                prop_assert!(w.find_rainbow_triangle_packing(2).is_none());
                let mut cur = w;
                while cur.color_count() > 1 {
                    cur = merge_last(&cur);
                    prop_assert!(cur.find_rainbow_triangle_packing(2).is_none());
                    let below = oracle::exists_coloring_without_rainbow(n, 2, cur.color_count(), &cfg).unwrap();
                    prop_assert!(matches!(below.decision, Decision::Yes(_)));
                }
            }
            Decision::No => prop_assert!(n == 6 && c >= 12),
            Decision::Unknown => prop_assert!(false, "unbounded search returned unknown"),
        }
    }
}
