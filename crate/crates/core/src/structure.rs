//! Structural lemmas on triangle packings, made executable by exact search.
//!
//! Each extractor returns a checkable certificate. Where a lemma guarantees
//! an outcome, failing to find one is reported as
//! [`Error::LemmaViolation`]; it is never expected.

use std::ops::ControlFlow;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::{find_isomorphism, full_mask, mask_iter, mask_of, SimpleGraph, TrianglePacking, VertexMask};

// ===========================================================================
// Certificates
// ===========================================================================

/// `k` independent triples covering `0..3k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquitablePartition {
    pub parts: Vec<[usize; 3]>,
}

impl EquitablePartition {
    pub fn validate(&self, g: &SimpleGraph) -> Result<()> {
        let mut seen: VertexMask = 0;
        for part in &self.parts {
            let m = mask_of(part);
            if m.count_ones() != 3 || seen & m != 0 || !g.is_independent(m) {
                return Err(Error::LemmaViolation(format!("bad part {part:?}")));
            }
            seen |= m;
        }
        if seen != g.vertex_mask() {
            return Err(Error::LemmaViolation("parts do not cover the vertex set".into()));
        }
        Ok(())
    }
}

/// `V1` joined completely to the independent sets `V2`, `V3`, which are
/// joined completely to each other.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tripartition {
    pub v1: Vec<usize>,
    pub v2: Vec<usize>,
    pub v3: Vec<usize>,
}

impl Tripartition {
    pub fn validate(&self, g: &SimpleGraph) -> Result<()> {
        let (m1, m2, m3) = (mask_of(&self.v1), mask_of(&self.v2), mask_of(&self.v3));
        let disjoint = m1 & m2 == 0 && m1 & m3 == 0 && m2 & m3 == 0;
        if !disjoint || m1 | m2 | m3 != g.vertex_mask() {
            return Err(Error::LemmaViolation("parts do not partition the vertex set".into()));
        }
        if self.v2.len() != self.v3.len() || !g.is_independent(m2) || !g.is_independent(m3) {
            return Err(Error::LemmaViolation("outer parts must be equal independent sets".into()));
        }
        let joined = |a: VertexMask, b: VertexMask| mask_iter(a).all(|x| g.neighbors(x) & b == b);
        if !(joined(m1, m2) && joined(m1, m3) && joined(m2, m3)) {
            return Err(Error::LemmaViolation("a cross-part pair is missing".into()));
        }
        Ok(())
    }
}

/// A `(k-1)`-packing on `3k-3` core vertices; the rest induces a complete
/// bipartite graph with parts `side_a`, `side_b` of size at least 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PackingWithRemainder {
    pub core: Vec<usize>,
    pub packing: TrianglePacking,
    pub side_a: Vec<usize>,
    pub side_b: Vec<usize>,
}

impl PackingWithRemainder {
    pub fn validate(&self, g: &SimpleGraph) -> Result<()> {
        self.packing.validate_in(g)?;
        if self.packing.vertex_mask() != mask_of(&self.core) {
            return Err(Error::LemmaViolation("packing does not cover the core".into()));
        }
        let rest = g.vertex_mask() & !mask_of(&self.core);
        match complete_bipartition(g, rest) {
            Some((a, b)) if self.side_a.len() >= 2 && self.side_b.len() >= 2 && a == self.side_a && b == self.side_b => {
                Ok(())
            }
            _ => Err(Error::LemmaViolation("remainder is not the stated complete bipartite graph".into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "variant", rename_all = "kebab-case")]
pub enum StructureCertificate {
    Packing { packing: TrianglePacking },
    Tripartition(Tripartition),
    PackingWithRemainder(PackingWithRemainder),
    /// `mapping[i]` is the vertex of the subject graph playing vertex `i`
    /// of the exceptional fixture.
    ExceptionalGPrime { mapping: Vec<usize> },
}

impl StructureCertificate {
    pub fn variant_name(&self) -> &'static str {
        match self {
            StructureCertificate::Packing { .. } => "packing",
            StructureCertificate::Tripartition(_) => "tripartition",
            StructureCertificate::PackingWithRemainder(_) => "packing-with-remainder",
            StructureCertificate::ExceptionalGPrime { .. } => "exceptional-gprime",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

/// Outcome of [`lemma9_structure`], with the parity of `n - k`. Only odd
/// parity admits a tripartition with equal outer parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma9Report {
    pub parity: Parity,
    #[serde(flatten)]
    pub certificate: StructureCertificate,
}

// ===========================================================================
// Helpers
// ===========================================================================

/// Bipartition of `g[mask]` if it is a complete bipartite graph with both
/// parts non-empty; the part holding the least vertex comes first.
pub fn complete_bipartition(g: &SimpleGraph, mask: VertexMask) -> Option<(Vec<usize>, Vec<usize>)> {
    let start = mask_iter(mask).next()?;
    let (mut side, mut other) = (1u64 << start, 0u64);
    let mut frontier = side;
    let mut reached = side;
    let mut flip = false;
    while frontier != 0 {
        let mut next = 0;
        for x in mask_iter(frontier) {
            next |= g.neighbors(x) & mask & !reached;
        }
        reached |= next;
        flip = !flip;
        if flip {
            other |= next;
        } else {
            side |= next;
        }
        frontier = next;
    }
    if reached != mask || other == 0 || !g.is_independent(side) || !g.is_independent(other) {
        return None;
    }
    if !mask_iter(side).all(|x| g.neighbors(x) & other == other) {
        return None;
    }
    Some((mask_iter(side).collect(), mask_iter(other).collect()))
}

/// Calls `visit` on each `r`-subset of `0..n` in lexicographic order.
fn for_each_subset<F: FnMut(&[usize]) -> ControlFlow<()>>(n: usize, r: usize, visit: &mut F) -> ControlFlow<()> {
    fn rec<F: FnMut(&[usize]) -> ControlFlow<()>>(n: usize, r: usize, from: usize, cur: &mut Vec<usize>, visit: &mut F) -> ControlFlow<()> {
        if cur.len() == r {
            return visit(cur);
        }
        for x in from..=n - (r - cur.len()) {
            cur.push(x);
            rec(n, r, x + 1, cur, visit)?;
            cur.pop();
        }
        ControlFlow::Continue(())
    }
    if r > n {
        return ControlFlow::Continue(());
    }
    rec(n, r, 0, &mut Vec::with_capacity(r), visit)
}

fn require_order(g: &SimpleGraph, k: usize) -> Result<()> {
    if g.n() != 3 * k {
        return Err(Error::domain(format!("graph must have 3k = {} vertices (has {})", 3 * k, g.n())));
    }
    Ok(())
}

// ===========================================================================
// Partitions into independent triples
// ===========================================================================

/// Partition of `0..3k` into independent triples, or `None` if there is none
/// (certified by exhaustive search).
pub fn equitable_independent_partition(g: &SimpleGraph, k: usize) -> Result<Option<EquitablePartition>> {
    require_order(g, k)?;
    let parts = g.complement().find_triangle_packing(k);
    Ok(parts.map(|p| EquitablePartition { parts: p.triples().to_vec() }))
}

fn guaranteed_partition(g: &SimpleGraph, k: usize, why: &str) -> Result<EquitablePartition> {
    match equitable_independent_partition(g, k)? {
        Some(p) => Ok(p),
        None => Err(Error::LemmaViolation(format!("{why}: no independent triples partition {}", g.to_json()))),
    }
}

/// Sparse graphs on `3k` vertices (`k >= 4`, at most `3k - 3` edges) split
/// into independent triples.
pub fn check_sparse_partition_lemma(g: &SimpleGraph, k: usize) -> Result<EquitablePartition> {
    if k < 4 {
        return Err(Error::domain(format!("sparse partition needs k >= 4 (got {k})")));
    }
    require_order(g, k)?;
    if g.edge_count() > 3 * k - 3 {
        return Err(Error::domain(format!("graph has {} > 3k-3 = {} edges", g.edge_count(), 3 * k - 3)));
    }
    guaranteed_partition(g, k, "sparse partition")
}

/// Graphs on `3k` vertices with maximum degree below `k` split into
/// independent triples.
pub fn check_hajnal_szemeredi(g: &SimpleGraph, k: usize) -> Result<EquitablePartition> {
    if k == 0 {
        return Err(Error::domain("k must be positive"));
    }
    require_order(g, k)?;
    if g.max_degree() >= k {
        return Err(Error::domain(format!("maximum degree {} exceeds k-1 = {}", g.max_degree(), k - 1)));
    }
    guaranteed_partition(g, k, "bounded degree")
}

// ===========================================================================
// Merging small configurations
// ===========================================================================

/// Neighborhoods in the triangle of the three path vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathTrianglePattern {
    pub u: Vec<usize>,
    pub v: Vec<usize>,
    pub w: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum PathTriangleMerge {
    TwoTriangles { packing: TrianglePacking },
    /// Two ends see the same two triangle vertices and the middle sees all three.
    Exception { pattern: PathTrianglePattern },
    None,
}

fn check_distinct(vs: &[usize], g: &SimpleGraph) -> Result<VertexMask> {
    let m = mask_of(vs);
    if m.count_ones() as usize != vs.len() || vs.iter().any(|&x| x >= g.n()) {
        return Err(Error::domain(format!("vertices {vs:?} must be distinct and below {}", g.n())));
    }
    Ok(m)
}

fn require_edges(g: &SimpleGraph, edges: &[(usize, usize)], what: &str) -> Result<()> {
    match edges.iter().find(|&&(a, b)| !g.has_edge(a, b)) {
        Some((a, b)) => Err(Error::domain(format!("{what}: edge {a}-{b} missing"))),
        None => Ok(()),
    }
}

/// Two disjoint triangles inside a path `u-v-w` plus a disjoint triangle,
/// or the exceptional neighborhood shape, or neither.
pub fn merge_path_triangle(g: &SimpleGraph, path: [usize; 3], triangle: [usize; 3]) -> Result<PathTriangleMerge> {
    let [u, v, w] = path;
    let [x, y, z] = triangle;
    let mask = check_distinct(&[u, v, w, x, y, z], g)?;
    require_edges(g, &[(u, v), (v, w)], "path")?;
    require_edges(g, &[(x, y), (x, z), (y, z)], "triangle")?;
    if let Some(p) = g.find_triangle_packing_within(mask, 2) {
        return Ok(PathTriangleMerge::TwoTriangles { packing: p });
    }
    let cm = mask_of(&triangle);
    let (nu, nv, nw) = (g.neighbors(u) & cm, g.neighbors(v) & cm, g.neighbors(w) & cm);
    if nu.count_ones() == 2 && nu == nw && nv == cm {
        let pattern = PathTrianglePattern { u: mask_iter(nu).collect(), v: mask_iter(nv).collect(), w: mask_iter(nw).collect() };
        return Ok(PathTriangleMerge::Exception { pattern });
    }
    Ok(PathTriangleMerge::None)
}

/// Two disjoint triangles inside a 2-matching `{ab, cd}` plus a disjoint triangle.
pub fn merge_matching_triangle(
    g: &SimpleGraph,
    matching: [(usize, usize); 2],
    triangle: [usize; 3],
) -> Result<Option<TrianglePacking>> {
    let [(a, b), (c, d)] = matching;
    let [x, y, z] = triangle;
    let mask = check_distinct(&[a, b, c, d, x, y, z], g)?;
    require_edges(g, &[(a, b), (c, d)], "matching")?;
    require_edges(g, &[(x, y), (x, z), (y, z)], "triangle")?;
    Ok(g.find_triangle_packing_within(mask, 2))
}

/// Path `0-1-2` and triangle `3,4,5`; bit `3i + j` of `cross` joins path
/// vertex `i` to triangle vertex `3 + j`. `closed` adds the chord `0-2`.
pub fn path_triangle_graph(cross: u16, closed: bool) -> SimpleGraph {
    let mut edges = vec![(0, 1), (1, 2), (3, 4), (3, 5), (4, 5)];
    if closed {
        edges.push((0, 2));
    }
    edges.extend((0..9).filter(|b| cross >> b & 1 == 1).map(|b| (b / 3, 3 + b % 3)));
    SimpleGraph::from_edges(6, &edges).expect("fixed layout")
}

/// Matching `0-1`, `2-3` and triangle `4,5,6`; bit `3i + j` of `cross`
/// joins matching vertex `i` to triangle vertex `4 + j`.
pub fn matching_triangle_graph(cross: u16) -> SimpleGraph {
    let mut edges = vec![(0, 1), (2, 3), (4, 5), (4, 6), (5, 6)];
    edges.extend((0..12).filter(|b| cross >> b & 1 == 1).map(|b| (b / 3, 4 + b % 3)));
    SimpleGraph::from_edges(7, &edges).expect("fixed layout")
}

// ===========================================================================
// Minimum-degree structure
// ===========================================================================

fn require_min_degree(g: &SimpleGraph, k: usize, min_n: usize, slack: usize) -> Result<()> {
    let n = g.n();
    if n < min_n {
        return Err(Error::domain(format!("need n >= {min_n} (got {n})")));
    }
    // 2 * delta >= n + k - slack, in doubled units.
    let delta = if n == 0 { 0 } else { g.min_degree() };
    if 2 * delta + slack < n + k {
        return Err(Error::domain(format!(
            "minimum degree {delta} is below (n+k-{slack})/2 = {}/2",
            (n + k).saturating_sub(slack)
        )));
    }
    Ok(())
}

/// A `k`-packing in a graph with `2 delta >= n + k`.
pub fn dirac_packing(g: &SimpleGraph, k: usize) -> Result<TrianglePacking> {
    require_min_degree(g, k, 3 * k, 0)?;
    g.find_triangle_packing(k)
        .ok_or_else(|| Error::LemmaViolation(format!("no {k}-packing despite the degree condition: {}", g.to_json())))
}

/// First tripartition with `|V1| = k - 1` and equal outer parts, scanning
/// `V1` candidates in lexicographic order.
pub fn find_tripartition(g: &SimpleGraph, k: usize) -> Option<Tripartition> {
    let n = g.n();
    if k == 0 || n < k - 1 || !(n + 1 - k).is_multiple_of(2) {
        return None;
    }
    let half = (n + 1 - k) / 2;
    let all = full_mask(n);
    let mut found = None;
    let _ = for_each_subset(n, k - 1, &mut |v1| {
        let m1 = mask_of(v1);
        let rest = all & !m1;
        if v1.iter().any(|&x| g.neighbors(x) & rest != rest) {
            return ControlFlow::Continue(());
        }
        match complete_bipartition(g, rest) {
            Some((v2, v3)) if v2.len() == half && v3.len() == half => {
                found = Some(Tripartition { v1: v1.to_vec(), v2, v3 });
                ControlFlow::Break(())
            }
            _ => ControlFlow::Continue(()),
        }
    });
    found
}

/// Packing, tripartition or the exceptional graph, for `2 delta >= n + k - 1`.
pub fn lemma9_structure(g: &SimpleGraph, k: usize) -> Result<Lemma9Report> {
    if k == 0 {
        return Err(Error::domain("k must be positive"));
    }
    require_min_degree(g, k, 3 * k, 1)?;
    let parity = if (g.n() - k) % 2 == 1 { Parity::Odd } else { Parity::Even };
    let certificate = if let Some(p) = g.find_triangle_packing(k) {
        StructureCertificate::Packing { packing: p }
    } else if let Some(t) = find_tripartition(g, k) {
        StructureCertificate::Tripartition(t)
    } else if let Some(mapping) = (g.n() == 10).then(|| find_isomorphism(&fixtures::gprime(), g)).flatten() {
        StructureCertificate::ExceptionalGPrime { mapping }
    } else {
        return Err(Error::LemmaViolation(format!("no packing, tripartition or exception for {}", g.to_json())));
    };
    Ok(Lemma9Report { parity, certificate })
}

/// Packing, or a `(k-1)`-packing whose complement is complete bipartite with
/// both parts of size at least 2, for `n >= 3k + 1` and `2 delta >= n + k - 2`.
pub fn lemma10_structure(g: &SimpleGraph, k: usize) -> Result<StructureCertificate> {
    if k < 2 {
        return Err(Error::domain("k must be at least 2"));
    }
    require_min_degree(g, k, 3 * k + 1, 2)?;
    if let Some(p) = g.find_triangle_packing(k) {
        return Ok(StructureCertificate::Packing { packing: p });
    }
    let all = g.vertex_mask();
    let mut seen_any = false;
    let mut found = None;
    let _ = g.for_each_triangle_packing(all, k - 1, &mut |tris| {
        seen_any = true;
        let packing = TrianglePacking::from_triples_unchecked(tris.to_vec());
        let core = packing.vertex_mask();
        match complete_bipartition(g, all & !core) {
            Some((a, b)) if a.len() >= 2 && b.len() >= 2 => {
                found = Some(PackingWithRemainder { core: mask_iter(core).collect(), packing, side_a: a, side_b: b });
                ControlFlow::Break(())
            }
            _ => ControlFlow::Continue(()),
        }
    });
    match found {
        Some(cert) => Ok(StructureCertificate::PackingWithRemainder(cert)),
        None if !seen_any => Err(Error::domain(format!("graph has no {}-packing", k - 1))),
        None => Err(Error::LemmaViolation(format!("no (k-1)-packing leaves a complete bipartite remainder: {}", g.to_json()))),
    }
}

// ===========================================================================
// Fixtures
// ===========================================================================

pub mod fixtures {
    //! Small graphs with pinned properties.

    use crate::graphs::SimpleGraph;

    fn load(text: &str) -> SimpleGraph {
        SimpleGraph::from_json(text).expect("bundled fixture parses")
    }

    /// The 6-regular graph on 10 vertices with a 2-packing, no 3-packing and
    /// no tripartition.
    pub fn gprime() -> SimpleGraph {
        load(include_str!("../fixtures/gprime.json"))
    }

    /// Matching `0-1`, `2-3`, triangle `4,5,6` and 8 cross edges, with no
    /// two disjoint triangles.
    pub fn claim_patterns() -> [SimpleGraph; 3] {
        [
            load(include_str!("../fixtures/claim_g1.json")),
            load(include_str!("../fixtures/claim_g2.json")),
            load(include_str!("../fixtures/claim_g3.json")),
        ]
    }

    /// `K_6` minus the triangle `3,4,5`.
    pub fn base_k2() -> SimpleGraph {
        load(include_str!("../fixtures/base_k2.json"))
    }

    /// `K_9` minus a `K_4` on `0, 3, 4, 6`.
    pub fn base_k3() -> SimpleGraph {
        load(include_str!("../fixtures/base_k3.json"))
    }
}
