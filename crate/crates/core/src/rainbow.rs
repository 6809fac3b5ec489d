//! Constructive search for a rainbow `kC3` in an edge-colored `K_n`.
//!
//! The finder peels vertices of small saturated degree while the color count
//! stays above the guarantee threshold, solves `n = 3k` from the representing
//! subgraph, and otherwise reads the structure of the saturated spanning
//! subgraph `H` (which is rainbow) to assemble a packing locally. Every
//! decision is recorded in a [`FinderTrace`].

use std::fmt::Write as _;

use serde::Serialize;

use crate::bounds::{self, Region};
use crate::colorings::{ColorSet, EdgeColoring};
use crate::error::{Error, Result};
use crate::graphs::{full_mask, mask_of, SimpleGraph, TrianglePacking};
use crate::structure::{self, PackingWithRemainder, StructureCertificate, Tripartition};

/// Colorings up to this order are re-solved exhaustively and compared.
pub const DEFAULT_CROSS_CHECK_CUTOFF: usize = 12;

/// Least color count at which a rainbow `kC3` is guaranteed.
pub fn guarantee_threshold(n: u64, k: u64) -> Result<u64> {
    if k < 2 {
        return Err(Error::domain("the finder needs k >= 2"));
    }
    Ok(bounds::upper_bound(n, k)? + 1)
}

#[derive(Clone, Copy, Debug)]
pub struct FinderConfig {
    pub cross_check_up_to: usize,
}

impl Default for FinderConfig {
    fn default() -> Self {
        Self { cross_check_up_to: DEFAULT_CROSS_CHECK_CUTOFF }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BaseMethod {
    SparsePartition,
    Exhaustive,
}

/// Vertices are reported in the labels of the input coloring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "step", rename_all = "kebab-case")]
pub enum FinderStep {
    Peel {
        vertex: usize,
        saturated_degree: usize,
        bound: usize,
        region: Region,
        colors_before: usize,
        colors_after: usize,
    },
    BaseCase {
        method: BaseMethod,
    },
    Structure {
        variant: &'static str,
    },
    Augment {
        description: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FinderTrace {
    pub n: usize,
    pub k: usize,
    pub colors: usize,
    pub threshold: Option<u64>,
    pub steps: Vec<FinderStep>,
    /// Agreement with the exhaustive search was checked.
    pub cross_checked: bool,
    pub result: Option<TrianglePacking>,
}

impl FinderTrace {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("trace serializes")
    }

    /// One line per step, for humans.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let threshold = self.threshold.map_or("n/a".to_string(), |t| t.to_string());
        let _ = writeln!(out, "K_{} with {} colors, k = {}, threshold {}", self.n, self.colors, self.k, threshold);
        for step in &self.steps {
            let _ = match step {
                FinderStep::Peel { vertex, saturated_degree, bound, colors_before, colors_after, .. } => writeln!(
                    out,
                    "  peel {vertex}: saturated degree {saturated_degree} <= {bound}, colors {colors_before} -> {colors_after}"
                ),
                FinderStep::BaseCase { method } => writeln!(out, "  base case by {method:?}"),
                FinderStep::Structure { variant } => writeln!(out, "  saturated subgraph yields {variant}"),
                FinderStep::Augment { description } => writeln!(out, "  {description}"),
            };
        }
        let _ = match &self.result {
            Some(p) => writeln!(out, "  rainbow packing {:?}", p.triples()),
            None => writeln!(out, "  no rainbow packing"),
        };
        out
    }
}

/// Runs the finder with the default cross-check cutoff.
pub fn find_rainbow_kc3(col: &EdgeColoring, k: usize) -> Result<FinderTrace> {
    find_rainbow_kc3_with(col, k, &FinderConfig::default())
}

pub fn find_rainbow_kc3_with(col: &EdgeColoring, k: usize, cfg: &FinderConfig) -> Result<FinderTrace> {
    if k < 2 {
        return Err(Error::domain("the finder needs k >= 2"));
    }
    let n = col.n();
    let threshold = if n >= 3 * k { Some(guarantee_threshold(n as u64, k as u64)?) } else { None };
    let mut steps = Vec::new();
    let result = if n < 3 * k {
        steps.push(FinderStep::Augment { description: format!("{n} vertices cannot hold {k} disjoint triangles") });
        None
    } else {
        run(col, k, &mut steps)?
    };
    if let Some(p) = &result {
        if !col.is_rainbow_packing(p)? || p.len() != k {
            return Err(Error::LemmaViolation(format!("finder returned a non-rainbow packing {:?}", p.triples())));
        }
    }
    let guaranteed = threshold.is_some_and(|t| col.color_count() as u64 >= t);
    if guaranteed && result.is_none() {
        return Err(Error::LemmaViolation(format!("no rainbow packing at or above the threshold: {}", col.to_json())));
    }
    let cross_checked = n <= cfg.cross_check_up_to;
    if cross_checked && col.find_rainbow_triangle_packing(k).is_some() != result.is_some() {
        return Err(Error::LemmaViolation(format!("finder and exhaustive search disagree on {}", col.to_json())));
    }
    Ok(FinderTrace { n, k, colors: col.color_count(), threshold, steps, cross_checked, result })
}

fn relabel(p: &TrianglePacking, labels: &[usize]) -> TrianglePacking {
    TrianglePacking::from_triples_unchecked(p.triples().iter().map(|t| t.map(|x| labels[x])).collect())
}

fn run(input: &EdgeColoring, k: usize, steps: &mut Vec<FinderStep>) -> Result<Option<TrianglePacking>> {
    let mut col = input.clone();
    let mut labels: Vec<usize> = (0..col.n()).collect();
    loop {
        let n = col.n();
        let c = col.color_count();
        let t = guarantee_threshold(n as u64, k as u64)? as usize;
        if c < t {
            steps.push(FinderStep::Augment { description: format!("{c} colors is below the threshold {t}; exhaustive search") });
            return Ok(col.find_rainbow_triangle_packing(k).map(|p| relabel(&p, &labels)));
        }
        if n == 3 * k {
            return base_case(&col, k, steps).map(|p| p.map(|p| relabel(&p, &labels)));
        }
        let region = bounds::region(n as u64, k as u64);
        let bound = if region == Region::Stable { (n + k - 2) / 2 } else { (n + k - 3) / 2 };
        let ds = col.saturated_degrees();
        let (u, d) = ds.iter().copied().enumerate().min_by_key(|&(v, d)| (d, v)).expect("n >= 3k > 0");
        if d > bound {
            return structured(&col, k, bound, steps).map(|p| relabel(&p, &labels)).map(Some);
        }
        let next_t = guarantee_threshold(n as u64 - 1, k as u64)? as usize;
        if c - d < next_t {
            steps.push(FinderStep::Augment {
                description: format!(
                    "peeling {} would leave {} < {next_t} colors; exhaustive search",
                    labels[u],
                    c - d
                ),
            });
            return Ok(col.find_rainbow_triangle_packing(k).map(|p| relabel(&p, &labels)));
        }
        let next = col.delete_vertex(u)?;
        if next.color_count() != c - d {
            return Err(Error::LemmaViolation(format!("deleting {u} removed {} colors, saturated degree is {d}", c - next.color_count())));
        }
        steps.push(FinderStep::Peel {
            vertex: labels[u],
            saturated_degree: d,
            bound,
            region,
            colors_before: c,
            colors_after: next.color_count(),
        });
        labels.remove(u);
        col = next;
    }
}

fn base_case(col: &EdgeColoring, k: usize, steps: &mut Vec<FinderStep>) -> Result<Option<TrianglePacking>> {
    if k >= 4 {
        let rep = col.representing_subgraph();
        let missing = rep.complement();
        if missing.edge_count() <= 3 * k - 3 {
            steps.push(FinderStep::BaseCase { method: BaseMethod::SparsePartition });
            let parts = structure::check_sparse_partition_lemma(&missing, k)?;
            // Independent in the complement means a triangle of the rainbow subgraph.
            return Ok(Some(TrianglePacking::new(parts.parts)?));
        }
    }
    steps.push(FinderStep::BaseCase { method: BaseMethod::Exhaustive });
    Ok(col.find_rainbow_triangle_packing(k))
}

/// Minimum saturated degree exceeds `bound`, so `H` has large minimum degree.
fn structured(col: &EdgeColoring, k: usize, bound: usize, steps: &mut Vec<FinderStep>) -> Result<TrianglePacking> {
    let h = col.saturated_spanning_subgraph();
    debug_assert!(h.min_degree() > bound);
    if let Some(p) = h.find_triangle_packing(k) {
        steps.push(FinderStep::Structure { variant: "packing" });
        return Ok(p);
    }
    if h.has_triangle_packing(k - 1) {
        let cert = structure::lemma10_structure(&h, k)?;
        steps.push(FinderStep::Structure { variant: cert.variant_name() });
        return match cert {
            StructureCertificate::PackingWithRemainder(rem) => complete_remainder(col, &rem),
            other => Err(Error::LemmaViolation(format!("unexpected {} for H without a k-packing", other.variant_name()))),
        };
    }
    let report = structure::lemma9_structure(&h, k - 1)?;
    steps.push(FinderStep::Structure { variant: report.certificate.variant_name() });
    match report.certificate {
        StructureCertificate::Tripartition(tri) => two_new_triangles(col, &h, k, &tri),
        other => Err(Error::LemmaViolation(format!("unexpected {} for H without a (k-1)-packing", other.variant_name()))),
    }
}

fn packing_colors(col: &EdgeColoring, p: &TrianglePacking) -> ColorSet {
    let mut s = ColorSet::new(col.color_count());
    for (u, v) in p.edges() {
        s.insert(col.color(u, v));
    }
    s
}

fn triangle_colors(col: &EdgeColoring, [x, y, z]: [usize; 3]) -> Option<[u32; 3]> {
    let cs = [col.color(x, y), col.color(x, z), col.color(y, z)];
    (cs[0] != cs[1] && cs[0] != cs[2] && cs[1] != cs[2]).then_some(cs)
}

/// One more triangle: an edge inside one side of the remainder plus a vertex
/// of the other side, avoiding the core colors.
fn complete_remainder(col: &EdgeColoring, rem: &PackingWithRemainder) -> Result<TrianglePacking> {
    let used = packing_colors(col, &rem.packing);
    for (side, other) in [(&rem.side_a, &rem.side_b), (&rem.side_b, &rem.side_a)] {
        for (i, &x) in side.iter().enumerate() {
            for &y in &side[i + 1..] {
                for &z in other {
                    let Some(cs) = triangle_colors(col, [x, y, z]) else { continue };
                    if cs.iter().all(|&c| !used.contains(c)) {
                        let mut triples = rem.packing.triples().to_vec();
                        triples.push([x, y, z]);
                        return TrianglePacking::new(triples);
                    }
                }
            }
        }
    }
    Err(Error::LemmaViolation("complete bipartite remainder admits no rainbow completion".into()))
}

/// Two triangles through edges inside the outer parts, plus a rainbow
/// `(k-2)`-packing of `H` on the remaining vertices.
fn two_new_triangles(col: &EdgeColoring, h: &SimpleGraph, k: usize, tri: &Tripartition) -> Result<TrianglePacking> {
    let mut cands: Vec<([usize; 3], [u32; 3])> = Vec::new();
    for (part, other) in [(&tri.v2, &tri.v3), (&tri.v3, &tri.v2)] {
        for (i, &x) in part.iter().enumerate() {
            for &y in &part[i + 1..] {
                for &z in other.iter() {
                    if let Some(cs) = triangle_colors(col, [x, y, z]) {
                        cands.push(([x, y, z], cs));
                    }
                }
            }
        }
    }
    let all = full_mask(col.n());
    for (i, &(t1, c1)) in cands.iter().enumerate() {
        for &(t2, c2) in &cands[i + 1..] {
            if mask_of(&t1) & mask_of(&t2) != 0 || c1.iter().any(|c| c2.contains(c)) {
                continue;
            }
            let mut forbidden = ColorSet::new(col.color_count());
            for &c in c1.iter().chain(&c2) {
                forbidden.insert(c);
            }
            let avail = all & !mask_of(&t1) & !mask_of(&t2);
            let adj: Vec<u64> = (0..col.n()).map(|v| h.neighbors(v)).collect();
            if let Some(rest) = col.rainbow_packing_in(&adj, avail, k - 2, &forbidden) {
                let mut triples = rest.triples().to_vec();
                triples.push(t1);
                triples.push(t2);
                return TrianglePacking::new(triples);
            }
        }
    }
    Err(Error::LemmaViolation("tripartition admits no two new-color triangles".into()))
}
