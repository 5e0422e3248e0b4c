//! Geodesic collinearity of edge tuples and edge general position checks.
//!
//! A tuple of edges is *collinear* when some geodesic of the host graph
//! contains all of them. The decision procedure never enumerates paths:
//! over all orderings and orientations `(u_i, v_i)` of the tuple it tests
//! the chain condition
//!
//! ```text
//! dist(u_1, v_k) = k + sum_{i=1..k-1} dist(v_i, u_{i+1})
//! ```
//!
//! If the condition holds, splicing geodesic segments between consecutive
//! edges yields a walk from `u_1` to `v_k` of length equal to their
//! distance, hence a geodesic through all `k` edges. Conversely, a geodesic
//! through all `k` edges realizes the condition for the order and
//! orientations in which it traverses them. The exhaustive path oracle
//! [`enumerate_geodesics`] exists to cross-validate this at small scale.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{DistanceMatrix, EdgeId, EdgeSet, Graph};

/// Smallest supported tuple size for [`collinear`].
pub const MIN_TUPLE: usize = 2;
/// Largest supported tuple size; the orderings blow up factorially beyond.
pub const MAX_TUPLE: usize = 5;

/// Guard for [`conflict_tuples`]: `C(m, k)` may not exceed this.
pub const MAX_COMBINATIONS: u128 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeodesyError {
    UnsupportedTupleSize(usize),
    DuplicateEdges,
    /// `C(m, k)` exceeds [`MAX_COMBINATIONS`].
    InstanceTooLarge {
        m: usize,
        k: usize,
    },
    GeodesicCapExceeded {
        cap: usize,
    },
}

impl fmt::Display for GeodesyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeodesyError::UnsupportedTupleSize(k) => {
                write!(
                    f,
                    "tuple size {k} outside supported range {MIN_TUPLE}..={MAX_TUPLE}"
                )
            }
            GeodesyError::DuplicateEdges => write!(f, "tuple contains a duplicate edge"),
            GeodesyError::InstanceTooLarge { m, k } => {
                write!(f, "C({m}, {k}) exceeds the enumeration guard")
            }
            GeodesyError::GeodesicCapExceeded { cap } => {
                write!(f, "geodesic count exceeds cap {cap}")
            }
        }
    }
}

impl core::error::Error for GeodesyError {}

/// A shortest path, stored as its vertex sequence. The vertex order is the
/// path's orientation where one matters.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GeodesicPath {
    pub vertices: Vec<usize>,
}

impl GeodesicPath {
    pub fn new(vertices: Vec<usize>) -> Self {
        GeodesicPath { vertices }
    }

    /// Number of edges on the path.
    pub fn edge_count(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn first(&self) -> usize {
        self.vertices[0]
    }

    pub fn last(&self) -> usize {
        *self.vertices.last().unwrap()
    }

    /// Consecutive vertices adjacent and length equal to endpoint distance.
    pub fn is_geodesic(&self, g: &Graph, d: &DistanceMatrix) -> bool {
        if self.vertices.is_empty() || self.vertices.iter().any(|&v| v >= g.n()) {
            return false;
        }
        if self
            .vertices
            .windows(2)
            .any(|w| g.edge_id(w[0], w[1]).is_none())
        {
            return false;
        }
        d.get(self.first(), self.last()) == self.edge_count()
    }

    /// Edge ids along the path; `None` if some step is not an edge of `g`.
    pub fn edge_ids(&self, g: &Graph) -> Option<Vec<EdgeId>> {
        self.vertices
            .windows(2)
            .map(|w| g.edge_id(w[0], w[1]))
            .collect()
    }
}

/// True when some geodesic of `g` contains all the given edges.
///
/// Accepts between [`MIN_TUPLE`] and [`MAX_TUPLE`] distinct edges.
pub fn collinear(g: &Graph, d: &DistanceMatrix, edges: &[EdgeId]) -> Result<bool, GeodesyError> {
    let k = edges.len();
    if !(MIN_TUPLE..=MAX_TUPLE).contains(&k) {
        return Err(GeodesyError::UnsupportedTupleSize(k));
    }
    let mut sorted = [0usize; MAX_TUPLE];
    sorted[..k].copy_from_slice(edges);
    sorted[..k].sort_unstable();
    if sorted[..k].windows(2).any(|w| w[0] == w[1]) {
        return Err(GeodesyError::DuplicateEdges);
    }
    Ok(collinear_unchecked(g, d, edges))
}

/// Chain-condition test without argument validation; edges must be distinct
/// valid ids and `2 <= k <= 5`.
pub(crate) fn collinear_unchecked(g: &Graph, d: &DistanceMatrix, edges: &[EdgeId]) -> bool {
    let k = edges.len();
    let mut ends = [(0usize, 0usize); MAX_TUPLE];
    for (slot, &e) in ends.iter_mut().zip(edges) {
        *slot = g.edge(e);
    }

    let mut perm = [0usize; MAX_TUPLE];
    for (i, p) in perm.iter_mut().enumerate() {
        *p = i;
    }
    any_permutation(&mut perm, k, 0, &mut |perm: &[usize]| {
        // Reversing a chain maps it onto the reversed permutation with all
        // orientations flipped, so half the permutations suffice.
        if edges[perm[0]] > edges[perm[k - 1]] {
            return false;
        }
        for mask in 0u32..(1 << k) {
            let orient = |i: usize| -> (usize, usize) {
                let (a, b) = ends[perm[i]];
                if mask & (1 << i) == 0 {
                    (a, b)
                } else {
                    (b, a)
                }
            };
            let mut length = k;
            for i in 0..k - 1 {
                length += d.get(orient(i).1, orient(i + 1).0);
            }
            if d.get(orient(0).0, orient(k - 1).1) == length {
                return true;
            }
        }
        false
    })
}

/// Tries `f` on every permutation of `perm[..k]`; true at the first hit.
fn any_permutation<F: FnMut(&[usize]) -> bool>(
    perm: &mut [usize; MAX_TUPLE],
    k: usize,
    depth: usize,
    f: &mut F,
) -> bool {
    if depth == k {
        return f(&perm[..k]);
    }
    for i in depth..k {
        perm.swap(depth, i);
        if any_permutation(perm, k, depth + 1, f) {
            return true;
        }
        perm.swap(depth, i);
    }
    false
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

/// Lexicographic scan over `k`-subsets of `0..n`, driven by a visitor that
/// returns `false` to stop early.
fn scan_combinations<F: FnMut(&[usize]) -> bool>(n: usize, k: usize, mut f: F) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return;
        }
        // Advance to the next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// All collinear `k`-subsets of the edge set, sorted lexicographically.
///
/// Guarded by [`MAX_COMBINATIONS`]; a pairwise pre-filter skips tuples
/// containing a pair that no geodesic carries.
pub fn conflict_tuples(
    g: &Graph,
    d: &DistanceMatrix,
    k: usize,
) -> Result<Vec<Vec<EdgeId>>, GeodesyError> {
    if !(MIN_TUPLE..=MAX_TUPLE).contains(&k) {
        return Err(GeodesyError::UnsupportedTupleSize(k));
    }
    let m = g.m();
    if binomial(m, k) > MAX_COMBINATIONS {
        return Err(GeodesyError::InstanceTooLarge { m, k });
    }

    let pair_ok = pair_collinearity(g, d);
    let mut out = Vec::new();
    scan_combinations(m, k, |tuple| {
        let pairs_fine = (0..k).all(|i| (i + 1..k).all(|j| pair_ok[tuple[i] * m + tuple[j]]));
        if pairs_fine && (k == 2 || collinear_unchecked(g, d, tuple)) {
            out.push(tuple.to_vec());
        }
        true
    });
    Ok(out)
}

/// Dense matrix of pairwise collinearity over edge ids.
pub(crate) fn pair_collinearity(g: &Graph, d: &DistanceMatrix) -> Vec<bool> {
    let m = g.m();
    let mut pair_ok = vec![false; m * m];
    for e in 0..m {
        pair_ok[e * m + e] = true;
        for f in (e + 1)..m {
            let ok = collinear_unchecked(g, d, &[e, f]);
            pair_ok[e * m + f] = ok;
            pair_ok[f * m + e] = ok;
        }
    }
    pair_ok
}

/// True when no `k` edges of `s` are collinear.
pub fn is_edge_gp(
    g: &Graph,
    d: &DistanceMatrix,
    s: &EdgeSet,
    k: usize,
) -> Result<bool, GeodesyError> {
    Ok(first_violation(g, d, s, k)?.is_none())
}

/// The lexicographically first collinear `k`-subset of `s`, if any.
pub fn first_violation(
    g: &Graph,
    d: &DistanceMatrix,
    s: &EdgeSet,
    k: usize,
) -> Result<Option<Vec<EdgeId>>, GeodesyError> {
    if !(MIN_TUPLE..=MAX_TUPLE).contains(&k) {
        return Err(GeodesyError::UnsupportedTupleSize(k));
    }
    let ids = s.ids();
    let mut hit = None;
    scan_combinations(ids.len(), k, |tuple| {
        let edges: Vec<EdgeId> = tuple.iter().map(|&i| ids[i]).collect();
        if collinear_unchecked(g, d, &edges) {
            hit = Some(edges);
            false
        } else {
            true
        }
    });
    Ok(hit)
}

/// Every geodesic between every vertex pair `u < v`, found by descending
/// the shortest-path DAG. Paths are listed from the smaller endpoint, in
/// lexicographic vertex order. Fails once more than `cap` paths exist.
pub fn enumerate_geodesics(
    g: &Graph,
    d: &DistanceMatrix,
    cap: usize,
) -> Result<Vec<GeodesicPath>, GeodesyError> {
    let n = g.n();
    let mut out: Vec<GeodesicPath> = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            stack.clear();
            stack.push(u);
            if !descend(g, d, v, &mut stack, &mut out, cap) {
                return Err(GeodesyError::GeodesicCapExceeded { cap });
            }
        }
    }
    Ok(out)
}

fn descend(
    g: &Graph,
    d: &DistanceMatrix,
    target: usize,
    stack: &mut Vec<usize>,
    out: &mut Vec<GeodesicPath>,
    cap: usize,
) -> bool {
    let x = *stack.last().unwrap();
    if x == target {
        if out.len() == cap {
            return false;
        }
        out.push(GeodesicPath::new(stack.clone()));
        return true;
    }
    let remaining = d.get(x, target);
    for &y in g.neighbors(x) {
        if d.get(y, target) + 1 == remaining {
            stack.push(y);
            if !descend(g, d, target, stack, out, cap) {
                return false;
            }
            stack.pop();
        }
    }
    true
}
