//! Exact computation of edge `k`-general position numbers by branch and
//! bound over the conflict hypergraph.
//!
//! Edges are decided include/exclude in a fixed order (descending conflict
//! degree, ties by edge id). Three devices keep the tree small:
//!
//! - *Blocking*: once `k - 1` members of a conflict tuple are chosen, its
//!   last undecided member can never be included.
//! - *Capacity bound*: the edge set is partitioned along an isometric path
//!   edge cover; each part lies on a single geodesic, so at most `k - 1` of
//!   its edges can ever join a witness. Summing residual capacities bounds
//!   every completion of the current node.
//! - *Construction seeds*: recognized families (trees, partial cubes,
//!   canonical grids and hypercubes) contribute certified witnesses as
//!   lower bounds and cover certificates as upper bounds before any search;
//!   when the two meet, the value is settled at the root.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::time::Duration;

use crate::constructions::{
    greedy_ipe_upper, grid_cover, grid_witness, hypercube_cover, pendant_edge_witness,
    two_theta_class_witness, CoverCertificate,
};
use crate::generators::{recognize_grid, recognize_hypercube};
use crate::geodesy::{self, collinear_unchecked, MAX_TUPLE, MIN_TUPLE};
use crate::graph::{DistanceMatrix, EdgeId, EdgeSet, Graph};
use crate::theta::theta_classes;

/// Stored-tuple ceiling; beyond it the search checks conflicts lazily.
const PRECOMPUTE_TUPLE_LIMIT: usize = 10_000_000;
/// Memory guard for optimum enumeration.
pub const MAX_STORED_OPTIMA: usize = 100_000;

/// Search limits: a node cap plus an optional caller-supplied stop signal
/// (typically a wall-clock deadline; this crate has no clock of its own).
#[derive(Clone, Copy)]
pub struct Budget<'a> {
    pub max_nodes: u64,
    pub out_of_time: Option<&'a dyn Fn() -> bool>,
}

impl Default for Budget<'_> {
    fn default() -> Self {
        Budget {
            max_nodes: 10_000_000,
            out_of_time: None,
        }
    }
}

impl<'a> Budget<'a> {
    pub fn nodes(max_nodes: u64) -> Self {
        Budget {
            max_nodes,
            out_of_time: None,
        }
    }

    pub fn with_stop(max_nodes: u64, out_of_time: &'a dyn Fn() -> bool) -> Self {
        Budget {
            max_nodes,
            out_of_time: Some(out_of_time),
        }
    }
}

impl fmt::Debug for Budget<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Budget")
            .field("max_nodes", &self.max_nodes)
            .field("has_stop", &self.out_of_time.is_some())
            .finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    /// The budget ran out; the reported value is only a lower bound.
    LowerBoundOnly,
}

/// Result of an exact solve.
#[derive(Clone, Debug)]
pub struct SolveReport {
    pub k: usize,
    pub value: usize,
    pub witness: EdgeSet,
    pub status: SolveStatus,
    pub lower_bound: usize,
    pub upper_bound: usize,
    pub nodes_explored: u64,
    /// Wall time, filled in by callers that have a clock; zero otherwise.
    pub elapsed: Duration,
}

/// Result of optimum enumeration.
#[derive(Clone, Debug)]
pub struct OptimaReport {
    pub k: usize,
    pub value: usize,
    /// All maximum edge `k`-general position sets, lexicographically
    /// sorted; exhaustive exactly when `complete` is set.
    pub optima: Vec<EdgeSet>,
    pub complete: bool,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolverError {
    UnsupportedK(usize),
    /// Conflict enumeration would exceed the combination guard.
    InstanceTooLarge {
        m: usize,
        k: usize,
    },
}

impl fmt::Display for SolverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolverError::UnsupportedK(k) => {
                write!(
                    f,
                    "k = {k} outside supported range {MIN_TUPLE}..={MAX_TUPLE}"
                )
            }
            SolverError::InstanceTooLarge { m, k } => {
                write!(f, "conflict enumeration infeasible for m = {m}, k = {k}")
            }
        }
    }
}

impl core::error::Error for SolverError {}

/// Maximal (not necessarily maximum) edge `k`-general position set, built
/// by scanning edge ids in ascending order and keeping each edge that
/// preserves the property. Panics unless `2 <= k <= 5`.
pub fn greedy_witness(g: &Graph, d: &DistanceMatrix, k: usize) -> EdgeSet {
    let order: Vec<EdgeId> = (0..g.m()).collect();
    greedy_in_order(g, d, k, &order)
}

/// Greedy witness with a caller-chosen scan prefix: edges in `seed` are
/// offered first, in the given order, then the rest ascending. Seeding a
/// tree with its pendant edges reproduces the pendant witness.
pub fn greedy_witness_seeded(g: &Graph, d: &DistanceMatrix, k: usize, seed: &[EdgeId]) -> EdgeSet {
    let mut order = Vec::with_capacity(g.m());
    let mut queued = vec![false; g.m()];
    for &e in seed {
        if e < g.m() && !queued[e] {
            queued[e] = true;
            order.push(e);
        }
    }
    for (e, &q) in queued.iter().enumerate() {
        if !q {
            order.push(e);
        }
    }
    greedy_in_order(g, d, k, &order)
}

fn greedy_in_order(g: &Graph, d: &DistanceMatrix, k: usize, order: &[EdgeId]) -> EdgeSet {
    assert!(
        (MIN_TUPLE..=MAX_TUPLE).contains(&k),
        "k outside supported range"
    );
    let mut chosen: Vec<EdgeId> = Vec::new();
    let mut tuple = vec![0usize; k];
    for &e in order {
        if chosen.len() + 1 < k || !completes_conflict(g, d, &chosen, e, k, &mut tuple) {
            chosen.push(e);
        }
    }
    EdgeSet::from_ids(chosen)
}

/// True when some `k - 1` chosen edges together with `e` are collinear.
fn completes_conflict(
    g: &Graph,
    d: &DistanceMatrix,
    chosen: &[EdgeId],
    e: EdgeId,
    k: usize,
    tuple: &mut [usize],
) -> bool {
    let mut found = false;
    for_each_subset(chosen.len(), k - 1, &mut |subset| {
        for (slot, &i) in tuple.iter_mut().zip(subset) {
            *slot = chosen[i];
        }
        tuple[k - 1] = e;
        if collinear_unchecked(g, d, &tuple[..k]) {
            found = true;
            return false;
        }
        true
    });
    found
}

/// Lexicographic visit of `r`-subsets of `0..n`; the visitor returns
/// `false` to stop.
fn for_each_subset(n: usize, r: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    if r > n {
        return;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        if !f(&idx) {
            return;
        }
        let mut i = r;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - r {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i + 1) as u128;
    }
    acc
}

/// Exact edge `k`-general position number with witness and bounds.
pub fn gpe_exact(
    g: &Graph,
    d: &DistanceMatrix,
    k: usize,
    budget: &Budget,
) -> Result<SolveReport, SolverError> {
    Prepared::new(g, d, k)?.solve(budget)
}

/// All maximum edge `k`-general position sets, lexicographically sorted.
/// Runs the exact solve first; the node budget covers both phases.
pub fn enumerate_optima(
    g: &Graph,
    d: &DistanceMatrix,
    k: usize,
    budget: &Budget,
) -> Result<OptimaReport, SolverError> {
    let prepared = Prepared::new(g, d, k)?;
    let exact = prepared.solve(budget)?;
    if exact.status != SolveStatus::Optimal {
        return Ok(OptimaReport {
            k,
            value: exact.value,
            optima: vec![exact.witness],
            complete: false,
            nodes_explored: exact.nodes_explored,
            elapsed: Duration::ZERO,
        });
    }
    if prepared.trivial {
        // Geodesics shorter than k: the full edge set is the one optimum.
        return Ok(OptimaReport {
            k,
            value: exact.value,
            optima: vec![EdgeSet::full(g)],
            complete: true,
            nodes_explored: exact.nodes_explored,
            elapsed: Duration::ZERO,
        });
    }
    let remaining = Budget {
        max_nodes: budget.max_nodes.saturating_sub(exact.nodes_explored),
        out_of_time: budget.out_of_time,
    };
    let engine = Engine::build(&prepared)?;
    let (optima, complete, nodes) = engine.run_enum(exact.value, &remaining);
    Ok(OptimaReport {
        k,
        value: exact.value,
        optima,
        complete,
        nodes_explored: exact.nodes_explored + nodes,
        elapsed: Duration::ZERO,
    })
}

// ---------------------------------------------------------------------------
// Preparation: bounds before search
// ---------------------------------------------------------------------------

struct Prepared<'a> {
    g: &'a Graph,
    d: &'a DistanceMatrix,
    k: usize,
    /// Every geodesic has fewer than k edges: the full edge set wins.
    trivial: bool,
    lb_witness: EdgeSet,
    upper: usize,
    cover: Option<CoverCertificate>,
}

impl<'a> Prepared<'a> {
    fn new(g: &'a Graph, d: &'a DistanceMatrix, k: usize) -> Result<Prepared<'a>, SolverError> {
        if !(MIN_TUPLE..=MAX_TUPLE).contains(&k) {
            return Err(SolverError::UnsupportedK(k));
        }
        let m = g.m();
        // For k = 3 the conflict table is mandatory, so the guard can fire
        // before any bound work; larger k can fall back to lazy checks.
        if k == 3 && binomial(m, k) > geodesy::MAX_COMBINATIONS {
            return Err(SolverError::InstanceTooLarge { m, k });
        }
        if m < k || d.diameter() < k {
            return Ok(Prepared {
                g,
                d,
                k,
                trivial: true,
                lb_witness: EdgeSet::full(g),
                upper: m,
                cover: None,
            });
        }

        // Certified lower bounds. Each candidate is re-validated, so a bad
        // recognition can never corrupt the solve.
        let mut lb_witness = EdgeSet::new();
        let offer = |cand: EdgeSet, lb_witness: &mut EdgeSet| {
            if cand.len() > lb_witness.len() && geodesy::is_edge_gp(g, d, &cand, k).unwrap_or(false)
            {
                *lb_witness = cand;
            }
        };
        let grid_dims = recognize_grid(g);
        if k >= 3 {
            if g.is_tree() {
                offer(pendant_edge_witness(g).expect("tree"), &mut lb_witness);
            }
            if let Some((r, s)) = grid_dims {
                if let Ok(w) = grid_witness(r, s) {
                    offer(w, &mut lb_witness);
                }
            }
            let partition = theta_classes(g, d);
            if partition.is_partial_cube && partition.classes.len() >= 2 {
                let mut by_size: Vec<usize> = (0..partition.classes.len()).collect();
                by_size.sort_by(|&a, &b| {
                    partition.classes[b]
                        .len()
                        .cmp(&partition.classes[a].len())
                        .then(a.cmp(&b))
                });
                if let Ok(w) = two_theta_class_witness(&partition, by_size[0], by_size[1]) {
                    offer(w, &mut lb_witness);
                }
            }
        }

        // Cover certificate: exact constructions for recognized families,
        // greedy set cover otherwise. Feeds both the upper bound and the
        // capacity-bound partition.
        let cover = match (recognize_hypercube(g), grid_dims) {
            (Some(r), _) if r >= 2 => hypercube_cover(r).expect("r >= 2"),
            (_, Some((r, s))) if r.min(s) >= 6 => grid_cover(r, s).expect("r, s >= 6"),
            _ => greedy_ipe_upper(g, d),
        };
        let upper = m.min((k - 1) * cover.path_count());

        if lb_witness.len() < upper {
            offer(greedy_witness(g, d, k), &mut lb_witness);
        }

        Ok(Prepared {
            g,
            d,
            k,
            trivial: false,
            lb_witness,
            upper,
            cover: Some(cover),
        })
    }

    fn solve(&self, budget: &Budget) -> Result<SolveReport, SolverError> {
        if self.trivial || self.lb_witness.len() == self.upper {
            return Ok(SolveReport {
                k: self.k,
                value: self.upper,
                witness: self.lb_witness.clone(),
                status: SolveStatus::Optimal,
                lower_bound: self.upper,
                upper_bound: self.upper,
                nodes_explored: 0,
                elapsed: Duration::ZERO,
            });
        }
        let engine = Engine::build(self)?;
        Ok(engine.run_exact(&self.lb_witness, self.upper, budget))
    }
}

// ---------------------------------------------------------------------------
// The branch-and-bound engine
// ---------------------------------------------------------------------------

struct ConflictTable {
    k: usize,
    /// Flattened members, `k` per tuple.
    members: Vec<u32>,
    /// Tuple indices per edge.
    of_edge: Vec<Vec<u32>>,
    chosen_count: Vec<u8>,
}

/// Capacity bound over a partition of the edges along cover paths.
struct Groups {
    of_edge: Vec<usize>,
    cap: usize,
    chosen_in: Vec<usize>,
    free_in: Vec<usize>,
    /// Current `sum over groups of min(cap - chosen, free)`.
    extra: usize,
}

impl Groups {
    fn build(g: &Graph, cover: &CoverCertificate, cap: usize) -> Groups {
        let m = g.m();
        let mut of_edge = vec![usize::MAX; m];
        let mut count = 0;
        for (gi, p) in cover.paths.iter().enumerate() {
            count = gi + 1;
            for e in p.edge_ids(g).expect("cover paths are walks in g") {
                if of_edge[e] == usize::MAX {
                    of_edge[e] = gi;
                }
            }
        }
        debug_assert!(of_edge.iter().all(|&gi| gi != usize::MAX));
        let mut free_in = vec![0usize; count];
        for &gi in &of_edge {
            free_in[gi] += 1;
        }
        let extra = free_in.iter().map(|&f| f.min(cap)).sum();
        Groups {
            of_edge,
            cap,
            chosen_in: vec![0; count],
            free_in,
            extra,
        }
    }

    #[inline]
    fn contrib(&self, gi: usize) -> usize {
        (self.cap - self.chosen_in[gi]).min(self.free_in[gi])
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Cell {
    Undecided,
    In,
    Out,
}

struct Engine<'a> {
    g: &'a Graph,
    d: &'a DistanceMatrix,
    k: usize,
    m: usize,
    order: Vec<EdgeId>,
    table: Option<ConflictTable>,
    groups: Groups,

    state: Vec<Cell>,
    blocked: Vec<u32>,
    block_stack: Vec<EdgeId>,
    chosen: Vec<EdgeId>,

    nodes: u64,
    max_nodes: u64,
    out_of_time: Option<&'a dyn Fn() -> bool>,
    exhausted: bool,

    best: usize,
    best_witness: EdgeSet,
    target: usize,
    optima: Vec<EdgeSet>,
    overflow: bool,
    scratch: Vec<EdgeId>,
}

impl<'a> Engine<'a> {
    fn build(p: &Prepared<'a>) -> Result<Engine<'a>, SolverError> {
        let (g, d, k) = (p.g, p.d, p.k);
        let m = g.m();
        if binomial(m, k) > geodesy::MAX_COMBINATIONS && k == 3 {
            return Err(SolverError::InstanceTooLarge { m, k });
        }
        let table = build_table(g, d, k, m);
        let mut order: Vec<EdgeId> = (0..m).collect();
        if let Some(table) = &table {
            order.sort_by(|&a, &b| {
                table.of_edge[b]
                    .len()
                    .cmp(&table.of_edge[a].len())
                    .then(a.cmp(&b))
            });
        }
        let groups = Groups::build(g, p.cover.as_ref().expect("non-trivial"), k - 1);
        Ok(Engine {
            g,
            d,
            k,
            m,
            order,
            table,
            groups,
            state: vec![Cell::Undecided; m],
            blocked: vec![0; m],
            block_stack: Vec::new(),
            chosen: Vec::with_capacity(m),
            nodes: 0,
            max_nodes: 0,
            out_of_time: None,
            exhausted: false,
            best: 0,
            best_witness: EdgeSet::new(),
            target: usize::MAX,
            optima: Vec::new(),
            overflow: false,
            scratch: vec![0; k],
        })
    }

    fn run_exact(mut self, lb_witness: &EdgeSet, upper: usize, budget: &Budget<'a>) -> SolveReport {
        self.max_nodes = budget.max_nodes;
        self.out_of_time = budget.out_of_time;
        self.best = lb_witness.len();
        self.best_witness = lb_witness.clone();
        self.dfs_exact(0);
        let status = if self.exhausted {
            SolveStatus::LowerBoundOnly
        } else {
            SolveStatus::Optimal
        };
        SolveReport {
            k: self.k,
            value: self.best,
            witness: self.best_witness,
            status,
            lower_bound: self.best,
            upper_bound: if self.exhausted { upper } else { self.best },
            nodes_explored: self.nodes,
            elapsed: Duration::ZERO,
        }
    }

    fn run_enum(mut self, target: usize, budget: &Budget<'a>) -> (Vec<EdgeSet>, bool, u64) {
        self.max_nodes = budget.max_nodes;
        self.out_of_time = budget.out_of_time;
        self.target = target;
        self.dfs_enum(0);
        let complete = !self.exhausted && !self.overflow;
        let mut optima = self.optima;
        optima.sort();
        optima.dedup();
        (optima, complete, self.nodes)
    }

    #[inline]
    fn stopped(&mut self) -> bool {
        if self.exhausted {
            return true;
        }
        if self.nodes >= self.max_nodes {
            self.exhausted = true;
            return true;
        }
        if self.nodes.is_multiple_of(4096) {
            if let Some(cb) = self.out_of_time {
                if cb() {
                    self.exhausted = true;
                    return true;
                }
            }
        }
        false
    }

    #[inline]
    fn unfree(&mut self, e: EdgeId) {
        let gi = self.groups.of_edge[e];
        let old = self.groups.contrib(gi);
        self.groups.free_in[gi] -= 1;
        self.groups.extra -= old - self.groups.contrib(gi);
    }

    #[inline]
    fn refree(&mut self, e: EdgeId) {
        let gi = self.groups.of_edge[e];
        let old = self.groups.contrib(gi);
        self.groups.free_in[gi] += 1;
        self.groups.extra += self.groups.contrib(gi) - old;
    }

    /// Includes `e`; returns how many blocks were applied, for the undo.
    fn include(&mut self, e: EdgeId) -> usize {
        self.state[e] = Cell::In;
        self.chosen.push(e);
        let gi = self.groups.of_edge[e];
        let old = self.groups.contrib(gi);
        self.groups.free_in[gi] -= 1;
        self.groups.chosen_in[gi] += 1;
        let new = self.groups.contrib(gi);
        self.groups.extra -= old - new;

        let mut blocks = 0;
        if let Some(mut table) = self.table.take() {
            let ConflictTable {
                k,
                members,
                of_edge,
                chosen_count,
            } = &mut table;
            for &t in &of_edge[e] {
                let t = t as usize;
                chosen_count[t] += 1;
                if chosen_count[t] as usize == *k - 1 {
                    for &f in &members[t * *k..(t + 1) * *k] {
                        let f = f as usize;
                        if self.state[f] == Cell::Undecided {
                            self.blocked[f] += 1;
                            if self.blocked[f] == 1 {
                                let gi = self.groups.of_edge[f];
                                let old = self.groups.contrib(gi);
                                self.groups.free_in[gi] -= 1;
                                self.groups.extra -= old - self.groups.contrib(gi);
                            }
                            self.block_stack.push(f);
                            blocks += 1;
                        }
                    }
                }
            }
            self.table = Some(table);
        }
        blocks
    }

    fn undo_include(&mut self, e: EdgeId, blocks: usize) {
        for _ in 0..blocks {
            let f = self.block_stack.pop().expect("block stack underflow");
            self.blocked[f] -= 1;
            if self.blocked[f] == 0 {
                self.refree(f);
            }
        }
        if let Some(table) = &mut self.table {
            for &t in &table.of_edge[e] {
                table.chosen_count[t as usize] -= 1;
            }
        }
        self.state[e] = Cell::Undecided;
        self.chosen.pop();
        let gi = self.groups.of_edge[e];
        let old = self.groups.contrib(gi);
        self.groups.free_in[gi] += 1;
        self.groups.chosen_in[gi] -= 1;
        self.groups.extra += self.groups.contrib(gi) - old;
    }

    fn exclude(&mut self, e: EdgeId) {
        self.state[e] = Cell::Out;
        if self.blocked[e] == 0 {
            self.unfree(e);
        }
    }

    fn undo_exclude(&mut self, e: EdgeId) {
        if self.blocked[e] == 0 {
            self.refree(e);
        }
        self.state[e] = Cell::Undecided;
    }

    /// Can `e` legally join the chosen set right now?
    fn includable(&mut self, e: EdgeId) -> bool {
        if self.blocked[e] > 0 {
            return false;
        }
        if self.table.is_some() {
            return true;
        }
        // Lazy mode: test every (k-1)-subset of the chosen set with e.
        if self.chosen.len() + 1 < self.k {
            return true;
        }
        let mut tuple = core::mem::take(&mut self.scratch);
        let (g, d, k) = (self.g, self.d, self.k);
        let chosen = &self.chosen;
        let mut ok = true;
        for_each_subset(chosen.len(), k - 1, &mut |subset| {
            for (slot, &i) in tuple.iter_mut().zip(subset) {
                *slot = chosen[i];
            }
            tuple[k - 1] = e;
            if collinear_unchecked(g, d, &tuple[..k]) {
                ok = false;
                return false;
            }
            true
        });
        self.scratch = tuple;
        ok
    }

    fn dfs_exact(&mut self, pos: usize) {
        if self.stopped() {
            return;
        }
        self.nodes += 1;
        if self.chosen.len() > self.best {
            self.best = self.chosen.len();
            self.best_witness = EdgeSet::from_ids(self.chosen.iter().copied());
        }
        if self.chosen.len() + self.groups.extra <= self.best || pos == self.m {
            return;
        }
        let e = self.order[pos];
        if self.includable(e) {
            let blocks = self.include(e);
            self.dfs_exact(pos + 1);
            self.undo_include(e, blocks);
            if self.exhausted {
                return;
            }
        }
        self.exclude(e);
        self.dfs_exact(pos + 1);
        self.undo_exclude(e);
    }

    fn dfs_enum(&mut self, pos: usize) {
        if self.stopped() {
            return;
        }
        self.nodes += 1;
        if self.chosen.len() == self.target {
            // A strictly larger valid set would contradict optimality, so
            // the only completion from here excludes everything undecided.
            if self.optima.len() >= MAX_STORED_OPTIMA {
                self.overflow = true;
                self.exhausted = true;
            } else {
                self.optima
                    .push(EdgeSet::from_ids(self.chosen.iter().copied()));
            }
            return;
        }
        if self.chosen.len() + self.groups.extra < self.target || pos == self.m {
            return;
        }
        let e = self.order[pos];
        if self.includable(e) {
            let blocks = self.include(e);
            self.dfs_enum(pos + 1);
            self.undo_include(e, blocks);
            if self.exhausted {
                return;
            }
        }
        self.exclude(e);
        self.dfs_enum(pos + 1);
        self.undo_exclude(e);
    }
}

fn build_table(g: &Graph, d: &DistanceMatrix, k: usize, m: usize) -> Option<ConflictTable> {
    if binomial(m, k) > geodesy::MAX_COMBINATIONS {
        return None;
    }
    let pair_ok = geodesy::pair_collinearity(g, d);
    let mut members: Vec<u32> = Vec::new();
    let mut count = 0usize;
    let mut fits = true;
    for_each_subset(m, k, &mut |tuple| {
        let pairs_fine = (0..k).all(|i| (i + 1..k).all(|j| pair_ok[tuple[i] * m + tuple[j]]));
        if pairs_fine && collinear_unchecked(g, d, tuple) {
            if count == PRECOMPUTE_TUPLE_LIMIT {
                fits = false;
                return false;
            }
            members.extend(tuple.iter().map(|&e| e as u32));
            count += 1;
        }
        true
    });
    if !fits {
        return None;
    }
    let mut of_edge = vec![Vec::new(); m];
    for t in 0..count {
        for &e in &members[t * k..(t + 1) * k] {
            of_edge[e as usize].push(t as u32);
        }
    }
    Some(ConflictTable {
        k,
        members,
        of_edge,
        chosen_count: vec![0; count],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{fig1_graph, generate, FamilyDescriptor, TreeSpec};
    use crate::graph::all_pairs_distances;

    fn solve(f: &FamilyDescriptor, k: usize) -> SolveReport {
        let g = generate(f).unwrap();
        let d = all_pairs_distances(&g);
        gpe_exact(&g, &d, k, &Budget::default()).unwrap()
    }

    #[test]
    fn greedy_on_k4_takes_everything() {
        let g = generate(&FamilyDescriptor::Complete(4)).unwrap();
        let d = all_pairs_distances(&g);
        assert_eq!(greedy_witness(&g, &d, 3).len(), 6);
    }

    #[test]
    fn greedy_on_p4_takes_first_two() {
        let g = generate(&FamilyDescriptor::Path(4)).unwrap();
        let d = all_pairs_distances(&g);
        let w = greedy_witness(&g, &d, 3);
        assert_eq!(w.ids(), &[0, 1]);
    }

    #[test]
    fn greedy_seeded_with_pendants_keeps_exactly_them() {
        for seq in [alloc::vec![0, 2, 2, 4], alloc::vec![5, 5, 1, 1, 3, 3]] {
            let t = generate(&FamilyDescriptor::Tree(TreeSpec::Pruefer(seq))).unwrap();
            let d = all_pairs_distances(&t);
            let pendants = pendant_edge_witness(&t).unwrap();
            let seeded = greedy_witness_seeded(&t, &d, 3, pendants.ids());
            assert_eq!(seeded, pendants);
        }
    }

    #[test]
    fn cycle_values() {
        assert_eq!(solve(&FamilyDescriptor::Cycle(6), 3).value, 4);
        assert_eq!(solve(&FamilyDescriptor::Cycle(5), 3).value, 5);
        assert_eq!(solve(&FamilyDescriptor::Cycle(10), 3).value, 4);
    }

    #[test]
    fn q3_solves_to_eight() {
        let r = solve(&FamilyDescriptor::Hypercube(3), 3);
        assert_eq!(r.value, 8);
        assert_eq!(r.status, SolveStatus::Optimal);
    }

    #[test]
    fn larger_hypercubes_close_at_the_root() {
        // Theta-union lower bound meets the cover upper bound, so no
        // search nodes are spent.
        for r in 4..=6usize {
            let report = solve(&FamilyDescriptor::Hypercube(r), 3);
            assert_eq!(report.value, 1 << r);
            assert_eq!(report.status, SolveStatus::Optimal);
            assert_eq!(report.nodes_explored, 0);
        }
    }

    #[test]
    fn relabeled_graphs_solve_without_family_recognition() {
        // Swapping two adjacent labels defeats the canonical-labeling
        // recognizers (it is not an automorphism of these families); the
        // generic search must still find the isomorphism-invariant value.
        for (f, expect) in [
            (FamilyDescriptor::Grid(4, 4), 8),
            (FamilyDescriptor::Hypercube(3), 8),
            (FamilyDescriptor::Grid(4, 3), 8),
        ] {
            let g = generate(&f).unwrap();
            let swap = |v: usize| match v {
                0 => 1,
                1 => 0,
                v => v,
            };
            let edges: alloc::vec::Vec<(usize, usize)> =
                g.edges().iter().map(|&(u, v)| (swap(u), swap(v))).collect();
            let h = crate::graph::build_graph(g.n(), &edges).unwrap();
            assert_ne!(h.edges(), g.edges(), "{f}: swap must change the labeling");
            assert!(crate::generators::recognize_grid(&h).is_none());
            assert!(crate::generators::recognize_hypercube(&h).is_none());
            let d = all_pairs_distances(&h);
            let r = gpe_exact(&h, &d, 3, &Budget::default()).unwrap();
            assert_eq!(r.value, expect, "{f} relabeled");
            assert_eq!(r.status, SolveStatus::Optimal);
        }
    }

    #[test]
    fn fig1_solves_to_eight() {
        let g = fig1_graph();
        let d = all_pairs_distances(&g);
        let r = gpe_exact(&g, &d, 3, &Budget::default()).unwrap();
        assert_eq!(r.value, 8);
        assert_eq!(r.status, SolveStatus::Optimal);
    }

    #[test]
    fn grid_3x3_solves_to_six() {
        let r = solve(&FamilyDescriptor::Grid(3, 3), 3);
        assert_eq!(r.value, 6);
    }

    #[test]
    fn c7_with_k4_is_all_edges() {
        let r = solve(&FamilyDescriptor::Cycle(7), 4);
        assert_eq!(r.value, 7);
        assert_eq!(r.status, SolveStatus::Optimal);
    }

    #[test]
    fn witness_is_valid_and_unextendable() {
        for f in [
            FamilyDescriptor::Cycle(8),
            FamilyDescriptor::Grid(4, 3),
            FamilyDescriptor::Star(4),
            FamilyDescriptor::Tree(TreeSpec::Pruefer(alloc::vec![2, 4, 4, 1])),
        ] {
            let g = generate(&f).unwrap();
            let d = all_pairs_distances(&g);
            let r = gpe_exact(&g, &d, 3, &Budget::default()).unwrap();
            assert_eq!(r.status, SolveStatus::Optimal);
            assert!(geodesy::is_edge_gp(&g, &d, &r.witness, 3).unwrap());
            // No single edge extends the witness.
            for e in 0..g.m() {
                if r.witness.contains(e) {
                    continue;
                }
                let mut ext = r.witness.clone();
                ext.insert(e);
                assert!(!geodesy::is_edge_gp(&g, &d, &ext, 3).unwrap());
            }
        }
    }

    #[test]
    fn deterministic_reports() {
        let g = generate(&FamilyDescriptor::Grid(4, 4)).unwrap();
        let d = all_pairs_distances(&g);
        let a = gpe_exact(&g, &d, 3, &Budget::default()).unwrap();
        let b = gpe_exact(&g, &d, 3, &Budget::default()).unwrap();
        assert_eq!(a.value, b.value);
        assert_eq!(a.witness, b.witness);
        assert_eq!(a.nodes_explored, b.nodes_explored);
    }

    #[test]
    fn budget_exhaustion_reports_lower_bound_only() {
        // A spider with three legs of length two: the pendant bound 3 is
        // odd, so bounds cannot close at the root and the search must run.
        let t = generate(&FamilyDescriptor::Tree(TreeSpec::Edges(alloc::vec![
            (0, 1),
            (1, 2),
            (0, 3),
            (3, 4),
            (0, 5),
            (5, 6)
        ])))
        .unwrap();
        let d = all_pairs_distances(&t);
        let r = gpe_exact(&t, &d, 3, &Budget::nodes(2)).unwrap();
        assert_eq!(r.status, SolveStatus::LowerBoundOnly);
        assert!(r.lower_bound <= r.upper_bound);
        assert!(geodesy::is_edge_gp(&t, &d, &r.witness, 3).unwrap());
    }

    #[test]
    fn p3_has_one_optimum() {
        let g = generate(&FamilyDescriptor::Path(3)).unwrap();
        let d = all_pairs_distances(&g);
        let r = enumerate_optima(&g, &d, 3, &Budget::default()).unwrap();
        assert_eq!(r.value, 2);
        assert!(r.complete);
        assert_eq!(r.optima, alloc::vec![EdgeSet::from_ids([0, 1])]);
    }

    #[test]
    fn c6_optima_are_exactly_the_three_antipodal_complements() {
        // Around the cycle the edge ids read 0, 2, 3, 4, 5, 1. A 4-set is
        // conflict-free exactly when the two left-out edges are antipodal,
        // which leaves two runs of two consecutive edges.
        let g = generate(&FamilyDescriptor::Cycle(6)).unwrap();
        let d = all_pairs_distances(&g);
        let r = enumerate_optima(&g, &d, 3, &Budget::default()).unwrap();
        assert!(r.complete);
        assert_eq!(r.value, 4);
        let expect = alloc::vec![
            EdgeSet::from_ids([0, 1, 3, 4]),
            EdgeSet::from_ids([0, 2, 4, 5]),
            EdgeSet::from_ids([1, 2, 3, 5]),
        ];
        assert_eq!(r.optima, expect);
        for s in &r.optima {
            assert!(geodesy::is_edge_gp(&g, &d, s, 3).unwrap());
        }
    }

    /// The lazy per-branch conflict check (normally reached only past the
    /// precompute guard) must agree with table-driven search.
    #[test]
    fn lazy_mode_matches_table_mode() {
        for (f, k) in [
            (FamilyDescriptor::Cycle(6), 3),
            (FamilyDescriptor::Cycle(7), 4),
            (FamilyDescriptor::Grid(3, 3), 3),
            (FamilyDescriptor::Grid(4, 3), 4),
            (FamilyDescriptor::Star(4), 3),
        ] {
            let g = generate(&f).unwrap();
            let d = all_pairs_distances(&g);
            let prepared = Prepared::new(&g, &d, k).unwrap();
            if prepared.trivial || prepared.lb_witness.len() == prepared.upper {
                continue;
            }
            let mut lazy = Engine::build(&prepared).unwrap();
            lazy.table = None;
            let lazy_report =
                lazy.run_exact(&prepared.lb_witness, prepared.upper, &Budget::default());
            let normal = gpe_exact(&g, &d, k, &Budget::default()).unwrap();
            assert_eq!(lazy_report.value, normal.value, "{f} k={k}");
            assert_eq!(lazy_report.status, SolveStatus::Optimal);
            assert!(geodesy::is_edge_gp(&g, &d, &lazy_report.witness, k).unwrap());
        }
    }

    #[test]
    fn unsupported_k_rejected() {
        let g = generate(&FamilyDescriptor::Path(3)).unwrap();
        let d = all_pairs_distances(&g);
        assert!(matches!(
            gpe_exact(&g, &d, 7, &Budget::default()),
            Err(SolverError::UnsupportedK(7))
        ));
    }
}
