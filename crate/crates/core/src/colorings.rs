//! Edge-colorings of complete graphs: color classes, rainbow tests,
//! saturated colors and the two spanning subgraphs built from them.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, FormatError, Result};
use crate::graphs::{bit, full_mask, mask_iter, SimpleGraph, TrianglePacking, VertexMask, MAX_VERTICES};

/// A color id. Valid colorings use exactly the ids `1..=color_count`.
pub type Color = u32;

/// Total coloring of the edges of `K_n` with contiguous, surjective color ids.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct EdgeColoring {
    n: usize,
    /// Row-major `n * n` color matrix, zero on the diagonal.
    mat: Vec<Color>,
    count: usize,
}

impl EdgeColoring {
    /// Builds a coloring from arbitrary labels, renumbering the distinct labels
    /// to `1..=c` in increasing label order.
    pub fn from_labels<F>(n: usize, mut label: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> u64,
    {
        if n > MAX_VERTICES {
            return Err(Error::domain(format!("{n} vertices exceeds the cap of {MAX_VERTICES}")));
        }
        let mut raw = vec![0u64; n * n];
        let mut ids = BTreeMap::new();
        for u in 0..n {
            for v in u + 1..n {
                let l = label(u, v);
                raw[u * n + v] = l;
                ids.insert(l, 0);
            }
        }
        for (i, id) in ids.values_mut().enumerate() {
            *id = i as Color + 1;
        }
        let mut mat = vec![0; n * n];
        for u in 0..n {
            for v in u + 1..n {
                let c = ids[&raw[u * n + v]];
                mat[u * n + v] = c;
                mat[v * n + u] = c;
            }
        }
        Ok(EdgeColoring { n, mat, count: ids.len() })
    }

    /// Every edge gets its own color, numbered in lexicographic edge order.
    pub fn rainbow(n: usize) -> Result<Self> {
        Self::from_labels(n, |u, v| (u * n + v) as u64)
    }

    pub fn monochromatic(n: usize) -> Result<Self> {
        Self::from_labels(n, |_, _| 0)
    }

    /// Builds from explicit ids in lexicographic edge order, validating
    /// contiguity and surjectivity.
    pub fn from_pair_colors(n: usize, colors: &[Color]) -> Result<Self> {
        let pairs = n * n.saturating_sub(1) / 2;
        if colors.len() != pairs {
            return Err(Error::domain(format!("expected {pairs} colors, got {}", colors.len())));
        }
        check_contiguous(colors.iter().copied())?;
        let mut it = colors.iter();
        Self::from_labels(n, |_, _| *it.next().unwrap() as u64)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Color of edge `{u, v}`. Panics if `u == v` or either is out of range.
    #[inline]
    pub fn color(&self, u: usize, v: usize) -> Color {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.mat[u * self.n + v]
    }

    #[inline]
    pub fn color_count(&self) -> usize {
        self.count
    }

    /// Colors in lexicographic edge order.
    pub fn pair_colors(&self) -> Vec<Color> {
        let mut out = Vec::with_capacity(self.n * self.n.saturating_sub(1) / 2);
        for u in 0..self.n {
            for v in u + 1..self.n {
                out.push(self.color(u, v));
            }
        }
        out
    }

    /// Color classes indexed by `color - 1`, each sorted lexicographically.
    pub fn classes(&self) -> Vec<Vec<(usize, usize)>> {
        let mut out = vec![Vec::new(); self.count];
        for u in 0..self.n {
            for v in u + 1..self.n {
                out[self.color(u, v) as usize - 1].push((u, v));
            }
        }
        out
    }

    /// For each color, the set of vertices incident to every edge of its class.
    /// A color is saturated by `v` iff `v` lies in its mask.
    pub fn saturating_vertices(&self) -> Vec<VertexMask> {
        let mut cover = vec![full_mask(self.n); self.count];
        for u in 0..self.n {
            for v in u + 1..self.n {
                cover[self.color(u, v) as usize - 1] &= bit(u) | bit(v);
            }
        }
        cover
    }

    /// Colors saturated by `v`, ascending.
    pub fn saturated_colors(&self, v: usize) -> Vec<Color> {
        self.saturating_vertices()
            .iter()
            .enumerate()
            .filter(|(_, m)| *m & bit(v) != 0)
            .map(|(i, _)| i as Color + 1)
            .collect()
    }

    pub fn saturated_degree(&self, v: usize) -> Result<usize> {
        if v >= self.n {
            return Err(Error::domain(format!("vertex {v} out of range")));
        }
        Ok(self.saturating_vertices().iter().filter(|m| *m & bit(v) != 0).count())
    }

    /// Saturated degrees of all vertices.
    pub fn saturated_degrees(&self) -> Vec<usize> {
        let cover = self.saturating_vertices();
        (0..self.n)
            .map(|v| cover.iter().filter(|m| *m & bit(v) != 0).count())
            .collect()
    }

    /// The coloring of `K_n - v`, vertices above `v` shifted down by one and
    /// surviving classes renumbered by rank.
    pub fn delete_vertex(&self, v: usize) -> Result<EdgeColoring> {
        if v >= self.n {
            return Err(Error::domain(format!("vertex {v} out of range")));
        }
        Ok(self.restrict(full_mask(self.n) & !bit(v)).0)
    }

    /// The coloring induced on `keep`, relabeled to `0..|keep|`; also returns
    /// the new-to-old vertex map.
    pub fn restrict(&self, keep: VertexMask) -> (EdgeColoring, Vec<usize>) {
        let verts: Vec<usize> = mask_iter(keep & full_mask(self.n)).collect();
        let sub = Self::from_labels(verts.len(), |a, b| self.color(verts[a], verts[b]) as u64)
            .expect("restriction stays under the cap");
        (sub, verts)
    }

    /// The same coloring with vertex `u` renamed `perm[u]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<EdgeColoring> {
        if perm.len() != self.n || crate::graphs::mask_of(perm) != full_mask(self.n) {
            return Err(Error::domain("relabeling is not a permutation"));
        }
        let mut inv = vec![0; self.n];
        for (u, &p) in perm.iter().enumerate() {
            inv[p] = u;
        }
        Self::from_labels(self.n, |a, b| self.color(inv[a], inv[b]) as u64)
    }

    /// Refinement with exactly `target` colors: edges of the largest class
    /// (least color on ties), lexicographically last first, get fresh colors.
    pub fn split_classes(&self, target: usize) -> Result<EdgeColoring> {
        let pairs = self.n * self.n.saturating_sub(1) / 2;
        if target < self.count || target > pairs {
            return Err(Error::domain(format!("target {target} outside {}..={pairs}", self.count)));
        }
        let mut colors = self.pair_colors();
        let mut sizes = vec![0usize; self.count + 1];
        for &c in &colors {
            sizes[c as usize] += 1;
        }
        let mut next = self.count as Color;
        while (next as usize) < target {
            let big = (1..sizes.len()).max_by_key(|&c| (sizes[c], std::cmp::Reverse(c))).expect("non-empty");
            let i = colors.iter().rposition(|&c| c as usize == big).expect("class is non-empty");
            next += 1;
            colors[i] = next;
            sizes[big] -= 1;
            sizes.push(1);
        }
        Self::from_pair_colors(self.n, &colors)
    }

    pub fn is_rainbow_packing(&self, p: &TrianglePacking) -> Result<bool> {
        if p.triples().iter().any(|t| t[2] >= self.n) {
            return Err(Error::domain("packing vertex out of range"));
        }
        let mut used = ColorSet::new(self.count);
        for (u, v) in p.edges() {
            if !used.insert(self.color(u, v)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Exhaustive search for a rainbow `k`-packing in `K_n`. `None` certifies
    /// that every `k`-packing repeats a color.
    pub fn find_rainbow_triangle_packing(&self, k: usize) -> Option<TrianglePacking> {
        let all = full_mask(self.n);
        let adj: Vec<VertexMask> = (0..self.n).map(|v| all & !bit(v)).collect();
        self.rainbow_packing_in(&adj, all, k, &ColorSet::new(self.count))
    }

    /// Rainbow `k`-packing using only edges of the host adjacency `adj`,
    /// vertices in `avail`, and colors outside `forbidden`.
    pub fn rainbow_packing_in(
        &self,
        adj: &[VertexMask],
        avail: VertexMask,
        k: usize,
        forbidden: &ColorSet,
    ) -> Option<TrianglePacking> {
        let mut used = forbidden.clone();
        let mut stack = Vec::with_capacity(k);
        if rainbow_rec(self, adj, avail & full_mask(self.n), k, &mut used, &mut stack) {
            Some(TrianglePacking::from_triples_unchecked(stack))
        } else {
            None
        }
    }

    /// One edge per color class: the lexicographically least.
    pub fn representing_subgraph(&self) -> SimpleGraph {
        let mut g = SimpleGraph::empty(self.n).expect("within cap");
        for class in self.classes() {
            let (u, v) = class[0];
            g.add_edge(u, v).expect("valid edge");
        }
        g
    }

    /// Spanning subgraph in which every vertex keeps, for each color it
    /// saturates, the least edge of that color (necessarily incident to it).
    pub fn saturated_spanning_subgraph(&self) -> SimpleGraph {
        let classes = self.classes();
        let cover = self.saturating_vertices();
        let mut g = SimpleGraph::empty(self.n).expect("within cap");
        for (i, m) in cover.iter().enumerate() {
            if *m != 0 {
                let (u, v) = classes[i][0];
                g.add_edge(u, v).expect("valid edge");
            }
        }
        g
    }

    /// Whether the edges of `g` carry pairwise distinct colors.
    pub fn is_rainbow_subgraph(&self, g: &SimpleGraph) -> bool {
        let mut used = ColorSet::new(self.count);
        g.edges().into_iter().all(|(u, v)| used.insert(self.color(u, v)))
    }

    /// The set of colors appearing on edges of `g`.
    pub fn colors_of(&self, g: &SimpleGraph) -> ColorSet {
        let mut s = ColorSet::new(self.count);
        for (u, v) in g.edges() {
            s.insert(self.color(u, v));
        }
        s
    }

    pub fn to_json(&self) -> String {
        let mut colors = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                colors.push([u as u64, v as u64, self.color(u, v) as u64]);
            }
        }
        serde_json::to_string(&ColoringDoc { n: self.n, colors }).expect("coloring serializes")
    }

    /// Parses the coloring JSON format, rejecting out-of-range, duplicate or
    /// missing pairs and gapped color ids.
    pub fn from_json(text: &str) -> Result<Self, FormatError> {
        let doc: ColoringDoc = serde_json::from_str(text).map_err(|e| FormatError::Syntax(e.to_string()))?;
        let n = doc.n;
        if n > MAX_VERTICES {
            return Err(FormatError::TooLarge(n));
        }
        let mut mat = vec![0 as Color; n * n];
        for [u, v, c] in doc.colors {
            let (u, v) = (u as usize, v as usize);
            if u >= v || v >= n {
                return Err(FormatError::BadPair(u, v, n));
            }
            if c == 0 || c > u32::MAX as u64 {
                return Err(FormatError::GappedColors { max: 0, missing: 0 });
            }
            if mat[u * n + v] != 0 {
                return Err(FormatError::DuplicatePair(u, v));
            }
            mat[u * n + v] = c as Color;
            mat[v * n + u] = c as Color;
        }
        for u in 0..n {
            for v in u + 1..n {
                if mat[u * n + v] == 0 {
                    return Err(FormatError::MissingPair(u, v));
                }
            }
        }
        let count = check_contiguous((0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).map(|(u, v)| mat[u * n + v]))?;
        Ok(EdgeColoring { n, mat, count })
    }
}

/// Verifies that the ids are exactly `1..=max`; returns `max`.
fn check_contiguous(ids: impl Iterator<Item = Color>) -> Result<usize, FormatError> {
    let ids: Vec<Color> = ids.collect();
    let Some(&max) = ids.iter().max() else {
        return Ok(0);
    };
    let mut seen = vec![false; max as usize + 1];
    for &c in &ids {
        if c == 0 {
            return Err(FormatError::GappedColors { max, missing: 0 });
        }
        seen[c as usize] = true;
    }
    if let Some(missing) = (1..=max).find(|&c| !seen[c as usize]) {
        return Err(FormatError::GappedColors { max, missing });
    }
    Ok(max as usize)
}

fn rainbow_rec(
    col: &EdgeColoring,
    adj: &[VertexMask],
    avail: VertexMask,
    need: usize,
    used: &mut ColorSet,
    stack: &mut Vec<[usize; 3]>,
) -> bool {
    if need == 0 {
        return true;
    }
    if (avail.count_ones() as usize) < 3 * need {
        return false;
    }
    let v = avail.trailing_zeros() as usize;
    let rest = avail & !bit(v);
    let nb = adj[v] & rest;
    for a in mask_iter(nb) {
        let ca = col.color(v, a);
        if used.contains(ca) {
            continue;
        }
        for b in mask_iter(nb & adj[a] & !full_mask(a + 1)) {
            let cb = col.color(v, b);
            let cab = col.color(a, b);
            if cb == ca || cab == ca || cab == cb || used.contains(cb) || used.contains(cab) {
                continue;
            }
            used.insert(ca);
            used.insert(cb);
            used.insert(cab);
            stack.push([v, a, b]);
            if rainbow_rec(col, adj, rest & !bit(a) & !bit(b), need - 1, used, stack) {
                return true;
            }
            stack.pop();
            used.remove(ca);
            used.remove(cb);
            used.remove(cab);
        }
    }
    rainbow_rec(col, adj, rest, need, used, stack)
}

/// Bitset over color ids `1..=capacity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorSet {
    words: Vec<u64>,
}

impl ColorSet {
    pub fn new(capacity: usize) -> Self {
        ColorSet { words: vec![0; capacity / 64 + 1] }
    }

    #[inline]
    pub fn contains(&self, c: Color) -> bool {
        let c = c as usize;
        self.words.get(c / 64).is_some_and(|w| w & (1 << (c % 64)) != 0)
    }

    /// Returns `false` if the color was already present.
    #[inline]
    pub fn insert(&mut self, c: Color) -> bool {
        let c = c as usize;
        if c / 64 >= self.words.len() {
            self.words.resize(c / 64 + 1, 0);
        }
        let w = &mut self.words[c / 64];
        let fresh = *w & (1 << (c % 64)) == 0;
        *w |= 1 << (c % 64);
        fresh
    }

    #[inline]
    pub fn remove(&mut self, c: Color) {
        let c = c as usize;
        if let Some(w) = self.words.get_mut(c / 64) {
            *w &= !(1 << (c % 64));
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Serialize, Deserialize)]
struct ColoringDoc {
    n: usize,
    colors: Vec<[u64; 3]>,
}
