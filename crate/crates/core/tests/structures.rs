//! Case-analysis fixtures for the base case `n = 3k` and the degree lemmas
//! on concrete join graphs.

use rainbow_forge::colorings::EdgeColoring;
use rainbow_forge::graphs::{SimpleGraph, TrianglePacking};
use rainbow_forge::structure::{self, fixtures, StructureCertificate};
use rainbow_forge::{rainbow, Error};

/// Colors the edges of `g` with distinct colors and every non-edge with the
/// color of `g`'s edge number `reuse`.
fn rainbow_on_graph(g: &SimpleGraph, reuse: usize) -> EdgeColoring {
    let edges = g.edges();
    EdgeColoring::from_labels(g.n(), |u, v| match edges.iter().position(|&e| e == (u, v)) {
        Some(i) => i as u64,
        None => reuse as u64,
    })
    .unwrap()
}

fn packing(triples: &[[usize; 3]]) -> TrianglePacking {
    TrianglePacking::new(triples.to_vec()).unwrap()
}

fn check_case(g: &SimpleGraph, missing: (usize, usize), candidates: &[TrianglePacking], k: usize) {
    let edges = g.edges();
    assert!(!g.has_edge(missing.0, missing.1));
    for p in candidates {
        // Every candidate uses the missing pair and otherwise only edges of g.
        assert!(p.edges().any(|e| e == missing), "{p:?}");
        assert!(p.edges().all(|(u, v)| (u, v) == missing || g.has_edge(u, v)), "{p:?}");
    }
    for reuse in 0..edges.len() {
        let col = rainbow_on_graph(g, reuse);
        assert_eq!(col.color_count(), edges.len());
        let hit = candidates.iter().filter(|p| col.is_rainbow_packing(p).unwrap()).count();
        assert!(hit >= 1, "no candidate is rainbow when the missing pair repeats edge {:?}", edges[reuse]);
        let trace = rainbow::find_rainbow_kc3(&col, k).unwrap();
        let found = trace.result.expect("a rainbow packing exists");
        assert!(col.is_rainbow_packing(&found).unwrap());
    }
}

#[test]
fn k2_base_case_three_candidates_cover_every_repeat() {
    // x1, x2, x3 = 0, 1, 2 and y1, y2, y3 = 3, 4, 5; the y-triangle is absent.
    let g = fixtures::base_k2();
    assert_eq!((g.n(), g.edge_count()), (6, 12));
    assert!([(3, 4), (3, 5), (4, 5)].iter().all(|&(u, v)| !g.has_edge(u, v)));
    let candidates = [
        packing(&[[0, 3, 4], [5, 1, 2]]),
        packing(&[[1, 3, 4], [5, 0, 2]]),
        packing(&[[2, 3, 4], [5, 0, 1]]),
    ];
    check_case(&g, (3, 4), &candidates, 2);
}

#[test]
fn k3_base_case_three_candidates_cover_every_repeat() {
    // u, u', u'', v, v', v'', w, w', w'' = 0 to 8; the complement is K4 on {u, v, v', w}.
    let g = fixtures::base_k3();
    assert_eq!((g.n(), g.edge_count()), (9, 30));
    let complement = g.complement();
    assert_eq!(complement.edges(), vec![(0, 3), (0, 4), (0, 6), (3, 4), (3, 6), (4, 6)]);
    let (u, u1, u2, v, v1, v2, w, w1, w2) = (0, 1, 2, 3, 4, 5, 6, 7, 8);
    let candidates = [
        packing(&[[u1, u, v], [v1, u2, v2], [w, w1, w2]]),
        packing(&[[u2, u, v], [v1, u1, w2], [w, v2, w1]]),
        packing(&[[w1, u, v], [v1, v2, w2], [w, u1, u2]]),
    ];
    check_case(&g, (u, v), &candidates, 3);
}

fn join(apex: usize, left: usize, right: usize) -> SimpleGraph {
    let n = apex + left + right;
    let mut g = SimpleGraph::empty(n).unwrap();
    for x in 0..n {
        for y in x + 1..n {
            let side = |z: usize| if z < apex { 0 } else if z < apex + left { 1 } else { 2 };
            if side(x) == 0 || side(x) != side(y) {
                g.add_edge(x, y).unwrap();
            }
        }
    }
    g
}

#[test]
fn apex_over_k33_gives_both_shapes() {
    let g = join(1, 3, 3);
    let r = structure::lemma9_structure(&g, 2).unwrap();
    match &r.certificate {
        StructureCertificate::Tripartition(t) => {
            t.validate(&g).unwrap();
            assert_eq!(t.v1, vec![0]);
        }
        other => panic!("{other:?}"),
    }
    match structure::lemma10_structure(&g, 2).unwrap() {
        StructureCertificate::PackingWithRemainder(c) => {
            c.validate(&g).unwrap();
            assert!(c.core.contains(&0));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn extremal_join_for_ten_three_misses_the_degree_condition() {
    // K1 joined to K_{4,5}: minimum degree 5, while the lemma needs 2 * 5 >= 11.
    let g = join(1, 4, 5);
    assert_eq!(g.min_degree(), 5);
    assert!(matches!(structure::lemma10_structure(&g, 3), Err(Error::Domain(_))));
    // Every triangle uses the apex, so the (k-1)-packing premise fails too.
    assert!(g.has_triangle_packing(1));
    assert!(!g.has_triangle_packing(2));
}
