//! Exhaustive search over edge-colorings of `K_n`, up to renaming of colors.
//!
//! Colorings are enumerated as restricted-growth strings over the edges in
//! colex order `(0,1), (0,2), (1,2), (0,3), ...`: assigning edge `(u, v)`
//! completes exactly the triangles `{w, u, v}` with `w < u`. A prefix is cut
//! as soon as it contains a rainbow `kC3` among completed triangles, or when
//! the remaining edges cannot open enough new colors.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::bounds::{self, binom2};
use crate::colorings::EdgeColoring;
use crate::constructions;
use crate::error::{Error, Result};
use crate::exec::{self, Execution};

/// Largest `n` handled: color sets must fit a `u64` mask.
pub const MAX_ORACLE_VERTICES: usize = 11;

/// Largest vertex prefix whose permutations are tried by symmetry pruning.
const MAX_SYMMETRY_PREFIX: usize = 6;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchBudget {
    pub node_limit: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        Self::default()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BudgetOutcome {
    Certified,
    ExhaustedBudget,
}

#[derive(Clone, Copy, Debug)]
pub struct OracleConfig {
    pub budget: SearchBudget,
    pub exec: Execution,
    /// Number of leading edge decisions that define one parallel shard.
    pub shard_depth: usize,
    /// Prune prefixes that a permutation of an initial vertex block maps to a
    /// smaller string.
    pub vertex_symmetry: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { budget: SearchBudget::default(), exec: Execution::Parallel, shard_depth: 7, vertex_symmetry: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Yes(EdgeColoring),
    No,
    Unknown,
}

#[derive(Clone, Debug)]
pub struct DecisionReport {
    pub decision: Decision,
    pub nodes: u64,
    pub outcome: BudgetOutcome,
}

// ===========================================================================
// Search engine
// ===========================================================================

struct Limits {
    nodes: AtomicU64,
    abort: AtomicBool,
    node_limit: Option<u64>,
    deadline: Option<Instant>,
}

impl Limits {
    fn new(budget: SearchBudget, start: Instant) -> Self {
        Self {
            nodes: AtomicU64::new(0),
            abort: AtomicBool::new(false),
            node_limit: budget.node_limit,
            deadline: budget.time_limit.map(|d| start + d),
        }
    }

    /// Adds `delta` nodes; returns false once the budget is gone.
    fn charge(&self, delta: u64) -> bool {
        let total = self.nodes.fetch_add(delta, Ordering::Relaxed) + delta;
        let over = self.node_limit.is_some_and(|l| total > l) || self.deadline.is_some_and(|d| Instant::now() >= d);
        if over {
            self.abort.store(true, Ordering::Relaxed);
        }
        !self.abort.load(Ordering::Relaxed)
    }
}

/// Edge order plus the permutation tables for symmetry pruning.
struct Layout {
    n: usize,
    order: Vec<(usize, usize)>,
    pos: Vec<usize>,
    /// `sym[j]`: for each non-identity permutation of `0..j`, the image
    /// position of each of the first `C(j,2)` edges.
    sym: Vec<Vec<Vec<usize>>>,
}

impl Layout {
    fn new(n: usize, vertex_symmetry: bool) -> Self {
        let mut order = Vec::with_capacity(binom2(n as u64) as usize);
        let mut pos = vec![usize::MAX; n * n];
        for v in 1..n {
            for u in 0..v {
                pos[u * n + v] = order.len();
                pos[v * n + u] = order.len();
                order.push((u, v));
            }
        }
        let mut sym = vec![Vec::new(); n + 1];
        if vertex_symmetry {
            for (j, tables) in sym.iter_mut().enumerate().take(n.min(MAX_SYMMETRY_PREFIX) + 1).skip(3) {
                let m = j * (j - 1) / 2;
                for perm in permutations(j).into_iter().skip(1) {
                    tables.push(order[..m].iter().map(|&(a, b)| pos[perm[a] * n + perm[b]]).collect());
                }
            }
        }
        Self { n, order, pos, sym }
    }
}

/// All permutations of `0..j` in lexicographic order (identity first).
fn permutations(j: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..j).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..j).rev().find(|&i| p[i - 1] < p[i]) else { break };
        let t = (i..j).rev().find(|&t| p[t] > p[i - 1]).unwrap();
        p.swap(i - 1, t);
        p[i..].reverse();
    }
    out
}

enum Flow {
    Found,
    Done,
    Abort,
}

enum Mode {
    Search,
    Collect(usize),
    Count,
}

struct Engine<'a> {
    layout: &'a Layout,
    limits: &'a Limits,
    k: usize,
    target: usize,
    mode: Mode,
    /// Color of each edge position, 0 while unassigned.
    colors: Vec<u8>,
    /// Completed rainbow triangles as (vertex mask, color mask).
    tris: Vec<(u64, u64)>,
    /// Length of `tris` before each position was assigned.
    marks: Vec<usize>,
    max: usize,
    pending_nodes: u64,
    prefixes: Vec<Vec<u8>>,
    leaves: u64,
}

impl<'a> Engine<'a> {
    fn new(layout: &'a Layout, limits: &'a Limits, k: usize, target: usize, mode: Mode) -> Self {
        Self {
            layout,
            limits,
            k,
            target,
            mode,
            colors: vec![0; layout.order.len()],
            tris: Vec::new(),
            marks: vec![0; layout.order.len()],
            max: 0,
            pending_nodes: 0,
            prefixes: Vec::new(),
            leaves: 0,
        }
    }

    #[inline]
    fn color_at(&self, u: usize, v: usize) -> u8 {
        self.colors[self.layout.pos[u * self.layout.n + v]]
    }

    /// Assigns `col` at `pos` and records new rainbow triangles. Returns
    /// false (with the triangle list restored) if a rainbow `kC3` appears.
    fn assign(&mut self, pos: usize, col: u8) -> bool {
        let (u, v) = self.layout.order[pos];
        self.colors[pos] = col;
        self.marks[pos] = self.tris.len();
        if matches!(self.mode, Mode::Count) {
            return true;
        }
        let mark = self.tris.len();
        for w in 0..u {
            let (a, b) = (self.color_at(w, u), self.color_at(w, v));
            if a == b || a == col || b == col {
                continue;
            }
            let vm = (1u64 << w) | (1u64 << u) | (1u64 << v);
            let cm = (1u64 << (a - 1)) | (1u64 << (b - 1)) | (1u64 << (col - 1));
            if extends(&self.tris, 0, self.k - 1, vm, cm) {
                self.tris.truncate(mark);
                self.colors[pos] = 0;
                return false;
            }
            self.tris.push((vm, cm));
        }
        true
    }

    /// True when some vertex permutation of a leading block maps the prefix
    /// ending at `pos` to a smaller restricted-growth string.
    fn non_canonical(&self, pos: usize) -> bool {
        let m = pos + 1;
        let Some(j) = (3..self.layout.sym.len()).find(|&j| j * (j - 1) / 2 == m) else { return false };
        let mut image = vec![0u8; m];
        for table in &self.layout.sym[j] {
            for (i, &t) in table.iter().enumerate() {
                image[t] = self.colors[i];
            }
            let mut relabel = [0u8; 65];
            let mut next = 0u8;
            for p in 0..m {
                let c = &mut relabel[image[p] as usize];
                if *c == 0 {
                    next += 1;
                    *c = next;
                }
                match (*c).cmp(&self.colors[p]) {
                    std::cmp::Ordering::Less => return true,
                    std::cmp::Ordering::Greater => break,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        false
    }

    fn dfs(&mut self, pos: usize) -> Flow {
        self.pending_nodes += 1;
        if self.pending_nodes == 1024 {
            self.pending_nodes = 0;
            if !self.limits.charge(1024) {
                return Flow::Abort;
            }
        }
        let total = self.colors.len();
        match self.mode {
            Mode::Collect(depth) if pos == depth.min(total) => {
                self.prefixes.push(self.colors[..pos].to_vec());
                return Flow::Done;
            }
            Mode::Count if pos == total => {
                self.leaves += (self.max == self.target) as u64;
                return Flow::Done;
            }
            _ if pos == total => return Flow::Found,
            _ => {}
        }
        let remaining = total - pos - 1;
        let saved_max = self.max;
        let top = (saved_max + 1).min(self.target);
        for col in 1..=top {
            let new_max = saved_max.max(col);
            if new_max + remaining < self.target {
                continue;
            }
            if !self.assign(pos, col as u8) {
                continue;
            }
            self.max = new_max;
            if !self.non_canonical(pos) {
                match self.dfs(pos + 1) {
                    Flow::Found => return Flow::Found,
                    Flow::Abort => {
                        self.max = saved_max;
                        return Flow::Abort;
                    }
                    Flow::Done => {}
                }
            }
            self.unassign(pos);
            self.max = saved_max;
        }
        Flow::Done
    }

    fn unassign(&mut self, pos: usize) {
        self.tris.truncate(self.marks[pos]);
        self.colors[pos] = 0;
    }

    /// Replays a shard prefix produced by a collecting engine.
    fn load(&mut self, prefix: &[u8]) {
        for (pos, &c) in prefix.iter().enumerate() {
            let ok = self.assign(pos, c);
            debug_assert!(ok);
            self.max = self.max.max(c as usize);
        }
    }

    fn flush(&mut self) {
        self.limits.nodes.fetch_add(self.pending_nodes, Ordering::Relaxed);
        self.pending_nodes = 0;
    }

    fn witness(&self) -> EdgeColoring {
        let n = self.layout.n;
        EdgeColoring::from_labels(n, |u, v| self.color_at(u, v) as u64).expect("complete assignment")
    }
}

/// Whether `need` more pairwise disjoint triangles from `tris[start..]` fit
/// beside the masks `vm`, `cm`.
fn extends(tris: &[(u64, u64)], start: usize, need: usize, vm: u64, cm: u64) -> bool {
    if need == 0 {
        return true;
    }
    tris[start..]
        .iter()
        .enumerate()
        .any(|(i, &(a, b))| a & vm == 0 && b & cm == 0 && extends(tris, start + i + 1, need - 1, vm | a, cm | b))
}

fn check_instance(n: usize, k: usize, c: usize) -> Result<()> {
    if !(3..=MAX_ORACLE_VERTICES).contains(&n) {
        return Err(Error::domain(format!("oracle needs 3 <= n <= {MAX_ORACLE_VERTICES} (got {n})")));
    }
    if k < 2 {
        return Err(Error::domain("oracle needs k >= 2"));
    }
    let pairs = binom2(n as u64) as usize;
    if c == 0 || c > pairs {
        return Err(Error::domain(format!("color count must be in 1..={pairs} (got {c})")));
    }
    Ok(())
}

fn decide(k: usize, c: usize, cfg: &OracleConfig, layout: &Layout, limits: &Limits) -> DecisionReport {
    let mut collector = Engine::new(layout, limits, k, c, Mode::Collect(cfg.shard_depth));
    let collected = collector.dfs(0);
    collector.flush();
    if let Flow::Found = collected {
        // Depth covers every edge: the collector already holds a witness.
        let w = collector.witness();
        return DecisionReport { decision: Decision::Yes(w), nodes: limits.nodes.load(Ordering::Relaxed), outcome: BudgetOutcome::Certified };
    }
    let aborted_early = matches!(collected, Flow::Abort);
    let prefixes = std::mem::take(&mut collector.prefixes);
    let found = if aborted_early {
        None
    } else {
        exec::find_map_first(cfg.exec, &prefixes, |prefix| {
            if limits.abort.load(Ordering::Relaxed) {
                return None;
            }
            let mut eng = Engine::new(layout, limits, k, c, Mode::Search);
            eng.load(prefix);
            let flow = eng.dfs(prefix.len());
            eng.flush();
            match flow {
                Flow::Found => Some(eng.witness()),
                _ => None,
            }
        })
    };
    let nodes = limits.nodes.load(Ordering::Relaxed);
    match found {
        Some(w) => DecisionReport { decision: Decision::Yes(w), nodes, outcome: BudgetOutcome::Certified },
        None if aborted_early || limits.abort.load(Ordering::Relaxed) => {
            DecisionReport { decision: Decision::Unknown, nodes, outcome: BudgetOutcome::ExhaustedBudget }
        }
        None => DecisionReport { decision: Decision::No, nodes, outcome: BudgetOutcome::Certified },
    }
}

/// Is there a coloring of `K_n` with exactly `c` colors and no rainbow `kC3`?
pub fn exists_coloring_without_rainbow(n: usize, k: usize, c: usize, cfg: &OracleConfig) -> Result<DecisionReport> {
    check_instance(n, k, c)?;
    let layout = Layout::new(n, cfg.vertex_symmetry);
    let limits = Limits::new(cfg.budget, Instant::now());
    Ok(decide(k, c, cfg, &layout, &limits))
}

/// Number of restricted-growth strings over the `C(n,2)` edges using exactly
/// `c` colors, i.e. the Stirling number `S(C(n,2), c)`.
pub fn count_colorings(n: usize, c: usize) -> Result<u64> {
    check_instance(n, 2, c)?;
    let layout = Layout::new(n, false);
    let limits = Limits::new(SearchBudget::default(), Instant::now());
    let mut eng = Engine::new(&layout, &limits, 2, c, Mode::Count);
    eng.dfs(0);
    Ok(eng.leaves)
}

// ===========================================================================
// Exact values and the equality conjecture
// ===========================================================================

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LowerSource {
    /// A searched witness.
    Search,
    /// An extremal coloring, itself checked exhaustively for rainbow packings.
    Construction,
    /// Single color class.
    Trivial,
}

#[derive(Clone, Debug, Serialize)]
pub struct StepRecord {
    pub colors: usize,
    pub verdict: &'static str,
    pub nodes: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactReport {
    pub n: usize,
    pub k: usize,
    /// `Some` only when certified.
    pub value: Option<usize>,
    pub lower: usize,
    pub upper: usize,
    pub lower_source: LowerSource,
    pub certified: bool,
    pub nodes: u64,
    #[serde(skip)]
    pub elapsed: Duration,
    pub steps: Vec<StepRecord>,
    #[serde(skip)]
    pub witness: Option<EdgeColoring>,
}

/// Best certified lower bound available without search.
fn fallback_lower(n: usize, k: usize) -> (usize, LowerSource, Option<EdgeColoring>) {
    if n >= 3 * k {
        let best = [constructions::clique_plus_pendant_coloring(n, k), constructions::bipartite_join_coloring(n, k)]
            .into_iter()
            .flatten()
            .filter(|col| col.find_rainbow_triangle_packing(k).is_none())
            .max_by_key(|col| col.color_count());
        if let Some(col) = best {
            return (col.color_count(), LowerSource::Construction, Some(col));
        }
    }
    (1, LowerSource::Trivial, EdgeColoring::monochromatic(n).ok())
}

/// `ar(n, kC3)` by descending search from `C(n,2)`; a budget overrun yields
/// the tightest certified interval instead.
pub fn exact_anti_ramsey(n: usize, k: usize, cfg: &OracleConfig) -> Result<ExactReport> {
    check_instance(n, k, 1)?;
    let start = Instant::now();
    let layout = Layout::new(n, cfg.vertex_symmetry);
    let limits = Limits::new(cfg.budget, start);
    let pairs = binom2(n as u64) as usize;
    let mut steps = Vec::new();
    let mut upper = pairs;
    for c in (1..=pairs).rev() {
        let before = limits.nodes.load(Ordering::Relaxed);
        let rep = decide(k, c, cfg, &layout, &limits);
        let spent = rep.nodes - before;
        match rep.decision {
            Decision::No => {
                steps.push(StepRecord { colors: c, verdict: "no", nodes: spent });
                upper = c - 1;
            }
            Decision::Yes(w) => {
                steps.push(StepRecord { colors: c, verdict: "yes", nodes: spent });
                return Ok(ExactReport {
                    n,
                    k,
                    value: Some(c),
                    lower: c,
                    upper: c,
                    lower_source: LowerSource::Search,
                    certified: true,
                    nodes: rep.nodes,
                    elapsed: start.elapsed(),
                    steps,
                    witness: Some(w),
                });
            }
            Decision::Unknown => {
                steps.push(StepRecord { colors: c, verdict: "unknown", nodes: spent });
                break;
            }
        }
    }
    let (lower, source, witness) = fallback_lower(n, k);
    let lower = lower.min(upper);
    let certified = lower == upper;
    Ok(ExactReport {
        n,
        k,
        value: certified.then_some(lower),
        lower,
        upper,
        lower_source: source,
        certified,
        nodes: limits.nodes.load(Ordering::Relaxed),
        elapsed: start.elapsed(),
        steps,
        witness,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConjectureVerdict {
    Consistent,
    Inconsistent,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureReport {
    pub n: usize,
    pub k: usize,
    /// The lower-bound formula, conjectured to be exact.
    pub conjectured: u64,
    pub oracle_lower: usize,
    pub oracle_upper: usize,
    pub oracle_certified: bool,
    pub proven_lower: u64,
    pub proven_upper: u64,
    /// Oracle interval intersected with the proven bounds.
    pub lower: u64,
    pub upper: u64,
    pub verdict: ConjectureVerdict,
    pub nodes: u64,
}

/// Confronts the conjectured value with the oracle's certified interval,
/// tightened by the proven bounds.
pub fn test_conjecture(n: usize, k: usize, cfg: &OracleConfig) -> Result<ConjectureReport> {
    if n < 3 * k {
        return Err(Error::domain(format!("conjecture test needs n >= 3k (got n={n}, k={k})")));
    }
    let exact = exact_anti_ramsey(n, k, cfg)?;
    let (n64, k64) = (n as u64, k as u64);
    let conjectured = bounds::lower_bound(n64, k64)?;
    let proven_lower = conjectured;
    let proven_upper = bounds::upper_bound(n64, k64)?;
    let lower = (exact.lower as u64).max(proven_lower);
    let upper = (exact.upper as u64).min(proven_upper);
    let verdict = if conjectured < lower || conjectured > upper {
        ConjectureVerdict::Inconsistent
    } else if lower == upper {
        ConjectureVerdict::Consistent
    } else {
        ConjectureVerdict::Inconclusive
    };
    Ok(ConjectureReport {
        n,
        k,
        conjectured,
        oracle_lower: exact.lower,
        oracle_upper: exact.upper,
        oracle_certified: exact.certified,
        proven_lower,
        proven_upper,
        lower,
        upper,
        verdict,
        nodes: exact.nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq() -> OracleConfig {
        OracleConfig { exec: Execution::Sequential, ..OracleConfig::default() }
    }

    #[test]
    fn stirling_self_test() {
        // S(6,c) computed from the recurrence S(m,c) = c S(m-1,c) + S(m-1,c-1).
        let mut s = vec![vec![0u64; 7]; 7];
        s[0][0] = 1;
        for m in 1..=6 {
            for c in 1..=m {
                s[m][c] = c as u64 * s[m - 1][c] + s[m - 1][c - 1];
            }
        }
        assert_eq!((s[6][3], s[6][6]), (90, 1));
        for (c, &expected) in s[6].iter().enumerate().skip(1) {
            assert_eq!(count_colorings(4, c).unwrap(), expected, "c={c}");
        }
    }

    #[test]
    fn permutations_are_complete() {
        let p = permutations(4);
        assert_eq!(p.len(), 24);
        assert_eq!(p[0], vec![0, 1, 2, 3]);
        let mut sorted = p.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 24);
    }

    #[test]
    fn six_two_decisions() {
        for cfg in [seq(), OracleConfig::default(), OracleConfig { vertex_symmetry: true, ..seq() }] {
            let yes = exists_coloring_without_rainbow(6, 2, 11, &cfg).unwrap();
            let Decision::Yes(w) = yes.decision else { panic!("expected witness") };
            assert_eq!(w.color_count(), 11);
            assert!(w.find_rainbow_triangle_packing(2).is_none());
            let no = exists_coloring_without_rainbow(6, 2, 12, &cfg).unwrap();
            assert_eq!(no.decision, Decision::No);
            assert_eq!(no.outcome, BudgetOutcome::Certified);
        }
    }

    #[test]
    fn too_few_vertices_always_yes() {
        for c in 1..=10 {
            let r = exists_coloring_without_rainbow(5, 2, c, &seq()).unwrap();
            assert!(matches!(r.decision, Decision::Yes(_)), "c={c}");
        }
    }

    #[test]
    fn exact_small_values() {
        assert_eq!(exact_anti_ramsey(4, 2, &seq()).unwrap().value, Some(6));
        assert_eq!(exact_anti_ramsey(5, 2, &seq()).unwrap().value, Some(10));
        assert_eq!(exact_anti_ramsey(6, 2, &OracleConfig::default()).unwrap().value, Some(11));
    }

    #[test]
    fn tiny_budget_gives_interval() {
        let cfg = OracleConfig { budget: SearchBudget { node_limit: Some(1), time_limit: None }, ..seq() };
        let r = exact_anti_ramsey(7, 2, &cfg).unwrap();
        assert!(r.lower <= 13 && 13 <= r.upper);
        assert!(!r.certified || r.value == Some(13));
    }

    #[test]
    fn bad_instances_rejected() {
        assert!(exists_coloring_without_rainbow(2, 2, 1, &seq()).is_err());
        assert!(exists_coloring_without_rainbow(6, 2, 16, &seq()).is_err());
        assert!(exists_coloring_without_rainbow(6, 1, 3, &seq()).is_err());
        assert!(exists_coloring_without_rainbow(12, 2, 3, &seq()).is_err());
    }
}
