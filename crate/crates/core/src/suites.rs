//! Property suites: exhaustive pattern sweeps and seeded random samples,
//! each reported as a count of cases and failures.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bounds::binom2;
use crate::colorings::EdgeColoring;
use crate::constructions;
use crate::exec::{self, Execution};
use crate::graphs::{SimpleGraph, MAX_VERTICES};
use crate::rainbow;
use crate::sampling::{self, sample_rng};
use crate::structure::{self, fixtures, PathTriangleMerge};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
    /// Named counters, such as how often each finder branch fired.
    pub tally: BTreeMap<String, u64>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }

    fn from_outcomes(suite: &str, outcomes: Vec<Outcome>) -> Self {
        let mut tally = BTreeMap::new();
        let mut failures = 0;
        let mut first_failure = None;
        for o in &outcomes {
            for label in &o.labels {
                *tally.entry(label.clone()).or_insert(0) += 1;
            }
            if let Some(msg) = &o.failure {
                failures += 1;
                first_failure.get_or_insert_with(|| msg.clone());
            }
        }
        SuiteReport { suite: suite.to_string(), cases: outcomes.len() as u64, failures, first_failure, tally }
    }

    fn merge(suite: &str, parts: Vec<SuiteReport>) -> Self {
        let mut out = SuiteReport { suite: suite.to_string(), cases: 0, failures: 0, first_failure: None, tally: BTreeMap::new() };
        for p in parts {
            out.cases += p.cases;
            out.failures += p.failures;
            if out.first_failure.is_none() {
                out.first_failure = p.first_failure.map(|m| format!("{}: {m}", p.suite));
            }
            for (key, v) in p.tally {
                *out.tally.entry(format!("{}/{key}", p.suite)).or_insert(0) += v;
            }
        }
        out
    }
}

#[derive(Default)]
struct Outcome {
    failure: Option<String>,
    labels: Vec<String>,
}

impl Outcome {
    fn pass() -> Self {
        Self::default()
    }

    fn fail(msg: impl Into<String>) -> Self {
        Outcome { failure: Some(msg.into()), labels: Vec::new() }
    }

    fn check(ok: bool, msg: impl FnOnce() -> String) -> Self {
        if ok {
            Self::pass()
        } else {
            Self::fail(msg())
        }
    }

    fn label(mut self, l: impl Into<String>) -> Self {
        self.labels.push(l.into());
        self
    }
}

// ===========================================================================
// Exhaustive pattern sweeps
// ===========================================================================

/// All 512 cross patterns between the path `0-1-2` (no chord) and the
/// triangle `3,4,5`, and the 512 with the chord `0-2`.
pub fn path_triangle_sweep(exec: Execution) -> SuiteReport {
    let outcomes = exec::map_indexed(exec, 1024, |i| {
        let (cross, closed) = ((i % 512) as u16, i >= 512);
        let g = structure::path_triangle_graph(cross, closed);
        let merged = match structure::merge_path_triangle(&g, [0, 1, 2], [3, 4, 5]) {
            Ok(m) => m,
            Err(e) => return Outcome::fail(format!("pattern {cross:#x}: {e}")),
        };
        let e = |x: usize| (cross >> (3 * x) & 0b111).count_ones();
        let (eu, ev, ew) = (e(0), e(1), e(2));
        let two = matches!(merged, PathTriangleMerge::TwoTriangles { .. });
        let label = match &merged {
            PathTriangleMerge::TwoTriangles { .. } => "two-triangles",
            PathTriangleMerge::Exception { .. } => "exception",
            PathTriangleMerge::None => "none",
        };
        if eu + ew >= 5 && ev >= 1 && !two {
            return Outcome::fail(format!("pattern {cross:#x} closed={closed}: two triangles expected"));
        }
        if eu + ev + ew >= 7 && !two && !matches!(merged, PathTriangleMerge::Exception { .. }) {
            return Outcome::fail(format!("pattern {cross:#x} closed={closed}: neither packing nor exception"));
        }
        Outcome::pass().label(label)
    });
    SuiteReport::from_outcomes("w1", outcomes)
}

/// All 4096 cross patterns between the matching `0-1`, `2-3` and the
/// triangle `4,5,6`; at least 9 cross edges must give two triangles.
pub fn matching_triangle_sweep(exec: Execution) -> SuiteReport {
    let outcomes = exec::map_indexed(exec, 4096, |i| {
        let cross = i as u16;
        let g = structure::matching_triangle_graph(cross);
        match structure::merge_matching_triangle(&g, [(0, 1), (2, 3)], [4, 5, 6]) {
            Err(e) => Outcome::fail(format!("pattern {cross:#x}: {e}")),
            Ok(found) => {
                let label = if found.is_some() { "found" } else { "none" };
                Outcome::check(cross.count_ones() < 9 || found.is_some(), || format!("pattern {cross:#x}: no packing"))
                    .label(label)
            }
        }
    });
    SuiteReport::from_outcomes("l4", outcomes)
}

// ===========================================================================
// Partition lemmas
// ===========================================================================

fn partition_case(g: &SimpleGraph, k: usize, sparse: bool) -> Outcome {
    let found = if sparse { structure::check_sparse_partition_lemma(g, k) } else { structure::check_hajnal_szemeredi(g, k) };
    match found.and_then(|p| p.validate(g)) {
        Ok(()) => Outcome::pass(),
        Err(e) => Outcome::fail(format!("{}: {e}", g.to_json())),
    }
}

/// Every graph on 6 vertices with maximum degree at most 1.
pub fn hs_exhaustive(exec: Execution) -> SuiteReport {
    let pairs: Vec<(usize, usize)> = (0..6).flat_map(|u| (u + 1..6).map(move |v| (u, v))).collect();
    let graphs: Vec<SimpleGraph> = (0u32..1 << 15)
        .filter_map(|mask| {
            let edges: Vec<_> = (0..15).filter(|b| mask >> b & 1 == 1).map(|b| pairs[b]).collect();
            let g = SimpleGraph::from_edges(6, &edges).ok()?;
            (g.max_degree() <= 1).then_some(g)
        })
        .collect();
    let outcomes = exec::map_indexed(exec, graphs.len() as u64, |i| partition_case(&graphs[i as usize], 2, false));
    SuiteReport::from_outcomes("hs-6", outcomes)
}

/// Seeded graphs on `3k` vertices with maximum degree at most `k - 1`.
pub fn hs_random(seed: u64, samples: u64, k: usize, exec: Execution) -> SuiteReport {
    let outcomes = exec::map_indexed(exec, samples, |i| {
        let mut rng = sample_rng(seed ^ (k as u64) << 32, i);
        match sampling::random_bounded_degree_graph(&mut rng, 3 * k, k - 1) {
            Ok(g) => partition_case(&g, k, false),
            Err(e) => Outcome::fail(e.to_string()),
        }
    });
    SuiteReport::from_outcomes(&format!("hs-{}", 3 * k), outcomes)
}

/// Seeded graphs on `3k` vertices with at most `3k - 3` edges.
pub fn sparse_random(seed: u64, samples: u64, k: usize, exec: Execution) -> SuiteReport {
    let outcomes = exec::map_indexed(exec, samples, |i| {
        let mut rng = sample_rng(seed ^ (k as u64) << 40, i);
        match sampling::random_sparse_graph(&mut rng, 3 * k, 3 * k - 3) {
            Ok(g) => partition_case(&g, k, true),
            Err(e) => Outcome::fail(e.to_string()),
        }
    });
    SuiteReport::from_outcomes(&format!("sparse-{}", 3 * k), outcomes)
}

pub fn hs_suite(seed: u64, samples: u64, exec: Execution) -> SuiteReport {
    SuiteReport::merge("hs", vec![hs_exhaustive(exec), hs_random(seed, samples, 3, exec), hs_random(seed, samples, 4, exec)])
}

pub fn sparse_suite(seed: u64, samples: u64, exec: Execution) -> SuiteReport {
    SuiteReport::merge("sparse", vec![sparse_random(seed, samples, 4, exec), sparse_random(seed, samples, 5, exec)])
}

// ===========================================================================
// Fixtures
// ===========================================================================

/// The six pinned properties of the exceptional graph.
pub fn gprime_suite() -> SuiteReport {
    let g = fixtures::gprime();
    let stats = g.degree_stats().ok();
    let checks: Vec<(&str, bool)> = vec![
        ("order-10", g.n() == 10),
        ("6-regular", stats.as_ref().is_some_and(|s| s.min == 6 && s.max == 6)),
        ("30-edges", g.edge_count() == 30),
        ("has-2-packing", g.has_triangle_packing(2)),
        ("no-3-packing", !g.has_triangle_packing(3)),
        ("no-tripartition", structure::find_tripartition(&g, 3).is_none()),
    ];
    let outcomes = checks.into_iter().map(|(name, ok)| Outcome::check(ok, || name.to_string()).label(name)).collect();
    SuiteReport::from_outcomes("gprime", outcomes)
}

/// The three 8-edge matching/triangle patterns have no two disjoint triangles.
pub fn claim_fixture_suite() -> SuiteReport {
    let outcomes = fixtures::claim_patterns()
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let cross = g.cross_edge_count(&[0, 1, 2, 3], &[4, 5, 6]).unwrap_or(0);
            let merged = structure::merge_matching_triangle(g, [(0, 1), (2, 3)], [4, 5, 6]);
            Outcome::check(cross == 8 && matches!(merged, Ok(None)), || format!("pattern G{}", i + 1))
        })
        .collect();
    SuiteReport::from_outcomes("claims", outcomes)
}

// ===========================================================================
// Colorings
// ===========================================================================

fn identity_case(col: &EdgeColoring) -> Outcome {
    let c = col.color_count();
    let ds = col.saturated_degrees();
    for (v, &d) in ds.iter().enumerate() {
        let rest = col.delete_vertex(v).map(|r| r.color_count()).unwrap_or(usize::MAX);
        if c != rest + d {
            return Outcome::fail(format!("vertex {v}: c={c}, c(G-v)={rest}, saturated degree {d}: {}", col.to_json()));
        }
    }
    let rep = col.representing_subgraph();
    if rep.edge_count() != c || !col.is_rainbow_subgraph(&rep) {
        return Outcome::fail(format!("representing subgraph has {} edges for {c} colors", rep.edge_count()));
    }
    let h = col.saturated_spanning_subgraph();
    if !col.is_rainbow_subgraph(&h) {
        return Outcome::fail(format!("saturated spanning subgraph is not rainbow: {}", col.to_json()));
    }
    if (0..col.n()).any(|v| h.degree(v) < ds[v]) {
        return Outcome::fail("saturated spanning subgraph misses a saturated color".to_string());
    }
    Outcome::pass()
}

/// Seeded colorings on at most 10 vertices with arbitrary color counts.
pub fn identity_suite(seed: u64, samples: u64, exec: Execution) -> SuiteReport {
    let outcomes = exec::map_indexed(exec, samples, |i| {
        let mut rng = sample_rng(seed, i);
        use rand::Rng;
        let n = rng.gen_range(3..=10usize);
        let palette = rng.gen_range(1..=binom2(n as u64) as usize);
        match sampling::random_coloring(&mut rng, n, palette) {
            Ok(col) => identity_case(&col),
            Err(e) => Outcome::fail(e.to_string()),
        }
    });
    SuiteReport::from_outcomes("identities", outcomes)
}

fn finder_case(col: &EdgeColoring, k: usize, require: bool) -> Outcome {
    match rainbow::find_rainbow_kc3(col, k) {
        Err(e) => Outcome::fail(format!("{e}")),
        Ok(trace) => {
            let valid = trace.result.as_ref().is_none_or(|p| col.is_rainbow_packing(p).unwrap_or(false) && p.len() == k);
            let exhaustive = col.find_rainbow_triangle_packing(k).is_some();
            let agrees = exhaustive == trace.result.is_some();
            let mut o = Outcome::check(valid && agrees && (!require || trace.result.is_some()), || {
                format!("finder result {:?} vs exhaustive {exhaustive}: {}", trace.result, col.to_json())
            });
            for s in &trace.steps {
                let label = match s {
                    rainbow::FinderStep::Peel { .. } => "peel".to_string(),
                    rainbow::FinderStep::BaseCase { method } => format!("base-{}", serde_json::to_value(method).unwrap().as_str().unwrap_or("")),
                    rainbow::FinderStep::Structure { variant } => format!("structure-{variant}"),
                    rainbow::FinderStep::Augment { .. } => "augment".to_string(),
                };
                if !o.labels.contains(&label) {
                    o = o.label(label);
                }
            }
            o
        }
    }
}

/// Colorings with exactly the threshold number of colors: the finder must
/// return a packing. Even indices are uniform; odd indices refine a randomly
/// relabeled extremal coloring.
pub fn finder_threshold(seed: u64, samples: u64, n: usize, k: usize, exec: Execution) -> SuiteReport {
    let name = format!("finder-{n}-{k}");
    let Ok(t) = rainbow::guarantee_threshold(n as u64, k as u64) else {
        return SuiteReport::from_outcomes(&name, vec![Outcome::fail("no threshold")]);
    };
    let t = t as usize;
    let bases: Vec<EdgeColoring> = [constructions::clique_plus_pendant_coloring(n, k), constructions::bipartite_join_coloring(n, k)]
        .into_iter()
        .flatten()
        .collect();
    let outcomes = exec::map_indexed(exec, samples, |i| {
        let mut rng = sample_rng(seed ^ ((n as u64) << 48 | (k as u64) << 40), i);
        let col = if i % 2 == 0 || bases.is_empty() || t > binom2(n as u64) as usize {
            sampling::random_coloring_exact(&mut rng, n, t)
        } else {
            sampling::random_refinement(&mut rng, &bases[(i / 2) as usize % bases.len()], t)
        };
        match col {
            Ok(col) => finder_case(&col, k, true),
            Err(e) => Outcome::fail(e.to_string()),
        }
    });
    SuiteReport::from_outcomes(&name, outcomes)
}

/// Seeded colorings with arbitrary color counts: returned packings must be
/// rainbow and agree with the exhaustive search.
pub fn finder_soundness(seed: u64, samples: u64, exec: Execution) -> SuiteReport {
    let outcomes = exec::map_indexed(exec, samples, |i| {
        use rand::Rng;
        let mut rng = sample_rng(seed, i);
        let k = rng.gen_range(2..=3usize);
        let n = rng.gen_range(3 * k..=10usize);
        let palette = rng.gen_range(1..=binom2(n as u64) as usize);
        match sampling::random_coloring(&mut rng, n, palette) {
            Ok(col) => finder_case(&col, k, false),
            Err(e) => Outcome::fail(e.to_string()),
        }
    });
    SuiteReport::from_outcomes("soundness", outcomes)
}

/// The extremal colorings have no rainbow packing, by finder and by search.
pub fn construction_suite(instances: &[(usize, usize)], exec: Execution) -> SuiteReport {
    let cases: Vec<(usize, usize, bool)> = instances.iter().flat_map(|&(n, k)| [(n, k, false), (n, k, true)]).collect();
    let outcomes = exec::map_indexed(exec, cases.len() as u64, |i| {
        let (n, k, join) = cases[i as usize];
        let built = if join { constructions::bipartite_join_coloring(n, k) } else { constructions::clique_plus_pendant_coloring(n, k) };
        let expected = if join { crate::bounds::join_construction_count(n as u64, k as u64) } else { crate::bounds::clique_construction_count(n as u64, k as u64) };
        match built {
            Err(e) => Outcome::fail(e.to_string()),
            Ok(col) if col.color_count() as u64 != expected => {
                Outcome::fail(format!("({n},{k}) join={join}: {} colors, expected {expected}", col.color_count()))
            }
            Ok(col) if n <= 10 => Outcome::check(col.find_rainbow_triangle_packing(k).is_none(), || {
                format!("({n},{k}) join={join}: rainbow packing found")
            })
            .label("searched"),
            Ok(_) => Outcome::pass().label("counted"),
        }
    });
    SuiteReport::from_outcomes("constructions", outcomes)
}

/// Default finder instances.
pub const FINDER_INSTANCES: [(usize, usize); 5] = [(6, 2), (7, 2), (8, 2), (9, 3), (10, 3)];

pub fn finder_suite(seed: u64, samples: u64, exec: Execution) -> SuiteReport {
    let parts = FINDER_INSTANCES.iter().map(|&(n, k)| finder_threshold(seed, samples, n, k, exec)).collect();
    SuiteReport::merge("finder", parts)
}

const _: () = assert!(MAX_VERTICES >= 15);
