//! Simple graphs on at most [`MAX_VERTICES`] labeled vertices, stored as
//! per-vertex neighbor bitsets, plus exact triangle-packing search.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, FormatError, Result};

/// Vertex cap imposed by the `u64` adjacency rows.
pub const MAX_VERTICES: usize = 64;

/// A set of vertices encoded as a bitmask (bit `v` set iff `v` is a member).
pub type VertexMask = u64;

#[inline]
pub(crate) const fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Mask with the lowest `n` bits set.
#[inline]
pub const fn full_mask(n: usize) -> VertexMask {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the members of a mask in increasing order.
pub fn mask_iter(mut mask: VertexMask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

pub fn mask_of(vertices: &[usize]) -> VertexMask {
    vertices.iter().fold(0, |m, &v| m | bit(v))
}

/// Undirected simple graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<VertexMask>,
}

/// Minimum degree, maximum degree and the full degree sequence.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DegreeStats {
    pub min: usize,
    pub max: usize,
    pub degrees: Vec<usize>,
}

impl SimpleGraph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::domain(format!(
                "{n} vertices exceeds the cap of {MAX_VERTICES}"
            )));
        }
        Ok(SimpleGraph { n, adj: vec![0; n] })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        let all = full_mask(n);
        for v in 0..n {
            g.adj[v] = all & !bit(v);
        }
        Ok(g)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph directly from adjacency rows. Rows must be symmetric and loop-free.
    pub fn from_adjacency(adj: Vec<VertexMask>) -> Result<Self> {
        let n = adj.len();
        let g = Self::empty(n).map(|_| SimpleGraph { n, adj })?;
        for u in 0..n {
            if g.adj[u] & bit(u) != 0 || g.adj[u] & !full_mask(n) != 0 {
                return Err(Error::domain(format!("row {u} has a loop or an out-of-range bit")));
            }
            for v in mask_iter(g.adj[u]) {
                if g.adj[v] & bit(u) == 0 {
                    return Err(Error::domain(format!("adjacency not symmetric at ({u}, {v})")));
                }
            }
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v || u >= self.n || v >= self.n {
            return Err(Error::domain(format!(
                "invalid edge ({u}, {v}) for a graph on {} vertices",
                self.n
            )));
        }
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if u < self.n && v < self.n {
            self.adj[u] &= !bit(v);
            self.adj[v] &= !bit(u);
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & bit(v) != 0
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexMask {
        self.adj[v]
    }

    pub fn adjacency(&self) -> &[VertexMask] {
        &self.adj
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn vertex_mask(&self) -> VertexMask {
        full_mask(self.n)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in mask_iter(self.adj[u] & !full_mask(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn degree_stats(&self) -> Result<DegreeStats> {
        if self.n == 0 {
            return Err(Error::domain("degree statistics of the null graph"));
        }
        let degrees: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        Ok(DegreeStats {
            min: *degrees.iter().min().unwrap(),
            max: *degrees.iter().max().unwrap(),
            degrees,
        })
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Number of edges with one end in `a` and the other in `b`.
    pub fn cross_edge_count(&self, a: &[usize], b: &[usize]) -> Result<usize> {
        let ma = self.checked_mask(a)?;
        let mb = self.checked_mask(b)?;
        if ma & mb != 0 {
            return Err(Error::domain("vertex sets overlap"));
        }
        Ok(self.cross_edges_masked(ma, mb))
    }

    pub(crate) fn cross_edges_masked(&self, a: VertexMask, b: VertexMask) -> usize {
        mask_iter(a)
            .map(|v| (self.adj[v] & b).count_ones() as usize)
            .sum()
    }

    fn checked_mask(&self, vs: &[usize]) -> Result<VertexMask> {
        let mut m = 0;
        for &v in vs {
            if v >= self.n {
                return Err(Error::domain(format!("vertex {v} out of range")));
            }
            m |= bit(v);
        }
        Ok(m)
    }

    pub fn complement(&self) -> SimpleGraph {
        let all = full_mask(self.n);
        let adj = (0..self.n).map(|v| !self.adj[v] & all & !bit(v)).collect();
        SimpleGraph { n: self.n, adj }
    }

    /// Subgraph induced by `keep`, relabeled to `0..|keep|` in increasing order.
    pub fn induced(&self, keep: VertexMask) -> SimpleGraph {
        let verts: Vec<usize> = mask_iter(keep & self.vertex_mask()).collect();
        let mut pos = [usize::MAX; MAX_VERTICES];
        for (i, &v) in verts.iter().enumerate() {
            pos[v] = i;
        }
        let adj = verts
            .iter()
            .map(|&v| mask_iter(self.adj[v] & keep).fold(0, |m, w| m | bit(pos[w])))
            .collect();
        SimpleGraph { n: verts.len(), adj }
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<SimpleGraph> {
        if perm.len() != self.n || mask_of(perm) != self.vertex_mask() {
            return Err(Error::domain("relabeling is not a permutation"));
        }
        let mut adj = vec![0; self.n];
        for u in 0..self.n {
            adj[perm[u]] = mask_iter(self.adj[u]).fold(0, |m, w| m | bit(perm[w]));
        }
        Ok(SimpleGraph { n: self.n, adj })
    }

    /// Whether the vertices of `mask` are pairwise non-adjacent.
    pub fn is_independent(&self, mask: VertexMask) -> bool {
        mask_iter(mask).all(|v| self.adj[v] & mask == 0)
    }

    pub fn is_triangle(&self, t: [usize; 3]) -> bool {
        self.has_edge(t[0], t[1]) && self.has_edge(t[0], t[2]) && self.has_edge(t[1], t[2])
    }

    /// All triangles `[a, b, c]` with `a < b < c`, lexicographic.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for a in 0..self.n {
            let up = self.adj[a] & !full_mask(a + 1);
            for b in mask_iter(up) {
                for c in mask_iter(up & self.adj[b] & !full_mask(b + 1)) {
                    out.push([a, b, c]);
                }
            }
        }
        out
    }

    /// Exhaustive search for `k` vertex-disjoint triangles.
    ///
    /// Branches on the least vertex not yet decided: either it starts a
    /// triangle with two larger free vertices (tried lexicographically) or it
    /// is left uncovered. `None` certifies that no such packing exists.
    pub fn find_triangle_packing(&self, k: usize) -> Option<TrianglePacking> {
        self.find_triangle_packing_within(self.vertex_mask(), k)
    }

    pub fn has_triangle_packing(&self, k: usize) -> bool {
        self.find_triangle_packing(k).is_some()
    }

    /// As [`find_triangle_packing`](Self::find_triangle_packing), using only vertices in `avail`.
    pub fn find_triangle_packing_within(&self, avail: VertexMask, k: usize) -> Option<TrianglePacking> {
        let mut found = None;
        let _ = self.for_each_triangle_packing(avail, k, &mut |tri| {
            found = Some(TrianglePacking::from_triples_unchecked(tri.to_vec()));
            ControlFlow::Break(())
        });
        found
    }

    /// Visits every `k`-packing inside `avail` exactly once (as an unordered
    /// set of triangles) in deterministic order, until `visit` breaks.
    pub fn for_each_triangle_packing<F>(&self, avail: VertexMask, k: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[[usize; 3]]) -> ControlFlow<()>,
    {
        let mut stack = Vec::with_capacity(k);
        packing_rec(&self.adj, avail & self.vertex_mask(), k, &mut stack, visit)
    }

    pub fn to_json(&self) -> String {
        let doc = GraphDoc {
            n: self.n,
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        };
        serde_json::to_string(&doc).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, FormatError> {
        let doc: GraphDoc = serde_json::from_str(text).map_err(|e| FormatError::Syntax(e.to_string()))?;
        if doc.n > MAX_VERTICES {
            return Err(FormatError::TooLarge(doc.n));
        }
        let mut g = SimpleGraph { n: doc.n, adj: vec![0; doc.n] };
        for [u, v] in doc.edges {
            if u >= v || v >= doc.n {
                return Err(FormatError::BadPair(u, v, doc.n));
            }
            if g.has_edge(u, v) {
                return Err(FormatError::DuplicatePair(u, v));
            }
            g.adj[u] |= bit(v);
            g.adj[v] |= bit(u);
        }
        Ok(g)
    }
}

fn packing_rec<F>(
    adj: &[VertexMask],
    avail: VertexMask,
    need: usize,
    stack: &mut Vec<[usize; 3]>,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[[usize; 3]]) -> ControlFlow<()>,
{
    if need == 0 {
        return visit(stack);
    }
    if (avail.count_ones() as usize) < 3 * need {
        return ControlFlow::Continue(());
    }
    let v = avail.trailing_zeros() as usize;
    let rest = avail & !bit(v);
    let nb = adj[v] & rest;
    for a in mask_iter(nb) {
        for b in mask_iter(nb & adj[a] & !full_mask(a + 1)) {
            stack.push([v, a, b]);
            let flow = packing_rec(adj, rest & !bit(a) & !bit(b), need - 1, stack, visit);
            stack.pop();
            flow?;
        }
    }
    packing_rec(adj, rest, need, stack, visit)
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    n: usize,
    edges: Vec<[usize; 2]>,
}

/// Pairwise vertex-disjoint triangles, each stored with sorted vertices.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct TrianglePacking {
    triples: Vec<[usize; 3]>,
}

impl TrianglePacking {
    /// Validates disjointness (not host adjacency; see [`validate_in`](Self::validate_in)).
    pub fn new(triples: Vec<[usize; 3]>) -> Result<Self> {
        let mut seen: VertexMask = 0;
        let mut sorted = Vec::with_capacity(triples.len());
        for mut t in triples {
            t.sort_unstable();
            if t[0] == t[1] || t[1] == t[2] {
                return Err(Error::domain(format!("triple {t:?} repeats a vertex")));
            }
            if t[2] >= MAX_VERTICES {
                return Err(Error::domain(format!("triple {t:?} exceeds the vertex cap")));
            }
            let m = mask_of(&t);
            if seen & m != 0 {
                return Err(Error::domain(format!("triple {t:?} overlaps an earlier triple")));
            }
            seen |= m;
            sorted.push(t);
        }
        Ok(TrianglePacking { triples: sorted })
    }

    pub(crate) fn from_triples_unchecked(mut triples: Vec<[usize; 3]>) -> Self {
        for t in &mut triples {
            t.sort_unstable();
        }
        TrianglePacking { triples }
    }

    pub fn empty() -> Self {
        TrianglePacking { triples: Vec::new() }
    }

    pub fn triples(&self) -> &[[usize; 3]] {
        &self.triples
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn vertex_mask(&self) -> VertexMask {
        self.triples.iter().fold(0, |m, t| m | mask_of(t))
    }

    /// Edges spanned by the packing, three per triangle.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.triples
            .iter()
            .flat_map(|t| [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])])
    }

    /// Checks that every triple is a triangle of `host` (disjointness holds by construction).
    pub fn validate_in(&self, host: &SimpleGraph) -> Result<()> {
        for t in &self.triples {
            if !host.is_triangle(*t) {
                return Err(Error::domain(format!("triple {t:?} is not a triangle of the host")));
            }
        }
        Ok(())
    }

    pub fn merged(&self, other: &TrianglePacking) -> Result<TrianglePacking> {
        let mut all = self.triples.clone();
        all.extend_from_slice(&other.triples);
        TrianglePacking::new(all)
    }
}

/// Searches for an isomorphism `g -> h`, returned as `map[v_g] = v_h`.
///
/// Vertices are refined by degree and by the multiset of neighbor degrees,
/// then matched by backtracking with adjacency checks against all earlier
/// assignments.
pub fn find_isomorphism(g: &SimpleGraph, h: &SimpleGraph) -> Option<Vec<usize>> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return None;
    }
    let sig = |x: &SimpleGraph, v: usize| {
        let mut nd: Vec<usize> = mask_iter(x.neighbors(v)).map(|w| x.degree(w)).collect();
        nd.sort_unstable();
        (x.degree(v), nd)
    };
    let gs: Vec<_> = (0..g.n()).map(|v| sig(g, v)).collect();
    let hs: Vec<_> = (0..h.n()).map(|v| sig(h, v)).collect();
    let mut gsorted = gs.clone();
    let mut hsorted = hs.clone();
    gsorted.sort();
    hsorted.sort();
    if gsorted != hsorted {
        return None;
    }
    // Candidates per vertex of g; order g's vertices most-constrained first.
    let cand: Vec<VertexMask> = (0..g.n())
        .map(|v| (0..h.n()).filter(|&w| gs[v] == hs[w]).fold(0, |m, w| m | bit(w)))
        .collect();
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (cand[v].count_ones(), std::cmp::Reverse(g.degree(v))));
    let mut map = vec![usize::MAX; g.n()];
    if iso_rec(g, h, &order, 0, &cand, 0, &mut map) {
        Some(map)
    } else {
        None
    }
}

fn iso_rec(
    g: &SimpleGraph,
    h: &SimpleGraph,
    order: &[usize],
    depth: usize,
    cand: &[VertexMask],
    used: VertexMask,
    map: &mut [usize],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    'outer: for w in mask_iter(cand[v] & !used) {
        for &u in &order[..depth] {
            if g.has_edge(u, v) != h.has_edge(map[u], w) {
                continue 'outer;
            }
        }
        map[v] = w;
        if iso_rec(g, h, order, depth + 1, cand, used | bit(w), map) {
            return true;
        }
    }
    map[v] = usize::MAX;
    false
}
