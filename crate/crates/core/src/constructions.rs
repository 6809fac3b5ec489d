//! The two extremal colorings with no rainbow `kC3`.

use crate::colorings::EdgeColoring;
use crate::error::{Error, Result};

fn check(n: usize, k: usize) -> Result<()> {
    if k < 2 || n < 3 * k {
        return Err(Error::domain(format!("constructions need k >= 2 and n >= 3k (got n={n}, k={k})")));
    }
    Ok(())
}

/// Rainbow `K_{3k-1}` on vertices `0..3k-1`; each later vertex `i` joins all
/// earlier vertices in one fresh color.
///
/// Any `k` disjoint triangles must use a later vertex `i` as the largest
/// vertex of some triangle, and that triangle repeats the color of `i`.
pub fn clique_plus_pendant_coloring(n: usize, k: usize) -> Result<EdgeColoring> {
    check(n, k)?;
    let clique = 3 * k - 1;
    EdgeColoring::from_labels(n, |u, v| {
        // u < v
        if v < clique {
            (u * n + v) as u64
        } else {
            (n * n + v) as u64
        }
    })
}

/// Vertex layout of [`bipartite_join_coloring`]: apexes, then side `S`, then side `T`.
pub fn join_layout(n: usize, k: usize) -> (std::ops::Range<usize>, std::ops::Range<usize>, std::ops::Range<usize>) {
    let apex = k - 2;
    let s = (n + 2 - k) / 2;
    (0..apex, apex..apex + s, apex + s..n)
}

/// Rainbow `K_{k-2} v K_{s,t}` with `s = floor((n-k+2)/2)`, and one extra
/// color on every edge inside `S` or inside `T`.
///
/// Triangles avoiding the extra color need an apex, so a rainbow packing has
/// at most `k - 2` of them plus one triangle through an extra edge.
pub fn bipartite_join_coloring(n: usize, k: usize) -> Result<EdgeColoring> {
    check(n, k)?;
    let (_, side_s, side_t) = join_layout(n, k);
    let extra = (n * n) as u64;
    EdgeColoring::from_labels(n, |u, v| {
        let inside = (side_s.contains(&u) && side_s.contains(&v)) || (side_t.contains(&u) && side_t.contains(&v));
        if inside {
            extra
        } else {
            (u * n + v) as u64
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{clique_construction_count, join_construction_count};

    #[test]
    fn clique_counts() {
        assert_eq!(clique_plus_pendant_coloring(6, 2).unwrap().color_count(), 11);
        assert_eq!(clique_plus_pendant_coloring(7, 2).unwrap().color_count(), 12);
        // C(8,2) + 9 - 9 + 1.
        assert_eq!(clique_plus_pendant_coloring(9, 3).unwrap().color_count(), 29);
    }

    #[test]
    fn join_counts() {
        assert_eq!(bipartite_join_coloring(8, 2).unwrap().color_count(), 17);
        assert_eq!(bipartite_join_coloring(9, 3).unwrap().color_count(), 25);
        // n-k+2 = 10: 25 + 2*10 + 1 + 1.
        assert_eq!(bipartite_join_coloring(12, 4).unwrap().color_count(), 47);
        assert!(bipartite_join_coloring(5, 2).is_err());
    }

    #[test]
    fn counts_match_formulas() {
        for k in 2..=5usize {
            for n in 3 * k..=18 {
                assert_eq!(
                    clique_plus_pendant_coloring(n, k).unwrap().color_count() as u64,
                    clique_construction_count(n as u64, k as u64)
                );
                assert_eq!(
                    bipartite_join_coloring(n, k).unwrap().color_count() as u64,
                    join_construction_count(n as u64, k as u64)
                );
            }
        }
    }

    #[test]
    fn no_rainbow_packing_small() {
        for k in 2..=3usize {
            for n in 3 * k..=10 {
                for col in [clique_plus_pendant_coloring(n, k).unwrap(), bipartite_join_coloring(n, k).unwrap()] {
                    assert!(col.find_rainbow_triangle_packing(k).is_none(), "n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn k2_join_is_rainbow_bipartite_plus_one_color() {
        for n in 6..=12 {
            let col = bipartite_join_coloring(n, 2).unwrap();
            let (_, s, t) = join_layout(n, 2);
            let classes = col.classes();
            let extra = classes.iter().find(|c| c.len() > 1).unwrap();
            let inside = s.len() * (s.len() - 1) / 2 + t.len() * (t.len() - 1) / 2;
            assert_eq!(extra.len(), inside);
            assert_eq!(classes.iter().filter(|c| c.len() == 1).count(), s.len() * t.len());
            for &(u, v) in extra {
                assert_eq!(s.contains(&u), s.contains(&v));
            }
        }
    }

    #[test]
    fn extra_color_is_last() {
        let col = bipartite_join_coloring(9, 3).unwrap();
        let (_, s, _) = join_layout(9, 3);
        assert_eq!(col.color(s.start, s.start + 1) as usize, col.color_count());
    }
}
