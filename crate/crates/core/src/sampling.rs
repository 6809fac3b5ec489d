//! Seeded random graphs and colorings for the property suites.
//!
//! Every sample is drawn from its own ChaCha8 stream: the run seed selects
//! the key, the sample index selects the stream. A sample therefore does not
//! depend on how many samples precede it or on which thread draws it.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::colorings::{Color, EdgeColoring};
use crate::error::{Error, Result};
use crate::graphs::SimpleGraph;

/// Generator for sample `index` of a run seeded with `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// Random graph with maximum degree at most `max_degree`: pairs are visited
/// in random order and kept with a per-sample density while both ends have room.
pub fn random_bounded_degree_graph<R: Rng>(rng: &mut R, n: usize, max_degree: usize) -> Result<SimpleGraph> {
    let mut g = SimpleGraph::empty(n)?;
    let mut pairs = all_pairs(n);
    pairs.shuffle(rng);
    let density: f64 = rng.gen_range(0.2..=1.0);
    for (u, v) in pairs {
        if g.degree(u) < max_degree && g.degree(v) < max_degree && rng.gen_bool(density) {
            g.add_edge(u, v)?;
        }
    }
    Ok(g)
}

/// Random graph with a uniformly chosen number of edges in `0..=max_edges`.
pub fn random_sparse_graph<R: Rng>(rng: &mut R, n: usize, max_edges: usize) -> Result<SimpleGraph> {
    let mut pairs = all_pairs(n);
    let e = rng.gen_range(0..=max_edges.min(pairs.len()));
    let (chosen, _) = pairs.partial_shuffle(rng, e);
    SimpleGraph::from_edges(n, chosen)
}

/// Coloring with each pair colored uniformly from a palette of `palette`
/// colors (the unused ones are compressed away).
pub fn random_coloring<R: Rng>(rng: &mut R, n: usize, palette: usize) -> Result<EdgeColoring> {
    if palette == 0 {
        return Err(Error::domain("palette must be non-empty"));
    }
    let colors: Vec<Color> = (0..n * n.saturating_sub(1) / 2).map(|_| rng.gen_range(1..=palette as Color)).collect();
    compress(n, &colors)
}

/// Coloring with exactly `c` colors: `c` random pairs open the colors, the
/// remaining pairs reuse uniformly chosen ones.
pub fn random_coloring_exact<R: Rng>(rng: &mut R, n: usize, c: usize) -> Result<EdgeColoring> {
    let pairs = n * n.saturating_sub(1) / 2;
    if c == 0 || c > pairs {
        return Err(Error::domain(format!("need 1 <= c <= {pairs} (got {c})")));
    }
    let mut idx: Vec<usize> = (0..pairs).collect();
    idx.shuffle(rng);
    let mut colors = vec![0 as Color; pairs];
    for (rank, &i) in idx.iter().enumerate() {
        colors[i] = if rank < c { rank as Color + 1 } else { rng.gen_range(1..=c as Color) };
    }
    compress(n, &colors)
}

/// Randomly relabeled copy of `base`, refined to exactly `target` colors by
/// moving random edges of non-singleton classes into fresh classes.
pub fn random_refinement<R: Rng>(rng: &mut R, base: &EdgeColoring, target: usize) -> Result<EdgeColoring> {
    let n = base.n();
    let pairs = n * n.saturating_sub(1) / 2;
    if target < base.color_count() || target > pairs {
        return Err(Error::domain(format!("target {target} outside {}..={pairs}", base.color_count())));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut colors = base.relabel(&perm)?.pair_colors();
    let mut sizes = vec![0usize; base.color_count() + 1];
    for &c in &colors {
        sizes[c as usize] += 1;
    }
    let mut next = base.color_count() as Color;
    while (next as usize) < target {
        let shared: Vec<usize> = (0..pairs).filter(|&i| sizes[colors[i] as usize] > 1).collect();
        let i = *shared.choose(rng).expect("fewer colors than pairs");
        sizes[colors[i] as usize] -= 1;
        next += 1;
        colors[i] = next;
        sizes.push(1);
    }
    EdgeColoring::from_pair_colors(n, &colors)
}

fn compress(n: usize, colors: &[Color]) -> Result<EdgeColoring> {
    let mut it = colors.iter();
    EdgeColoring::from_labels(n, |_, _| *it.next().expect("one label per pair") as u64)
}
