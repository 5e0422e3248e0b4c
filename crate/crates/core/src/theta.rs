//! The Djokovic-Winkler relation on edges and its transitive closure.
//!
//! Edges `xy` and `uv` are related when
//! `d(x,u) + d(y,v) != d(x,v) + d(y,u)`. The relation is reflexive and
//! symmetric; its transitive closure partitions the edge set into classes.
//! A connected graph is a partial cube exactly when it is bipartite and the
//! relation is already transitive (Winkler's criterion), which is what the
//! `is_partial_cube` flag certifies.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{all_pairs_distances, bipartition, DistanceMatrix, EdgeId, EdgeSet, Graph};

/// True when edges `e` and `f` are in the relation.
///
/// The test is orientation-independent: swapping the endpoints of either
/// edge flips both sides of the defining inequality together.
pub fn theta_related(g: &Graph, d: &DistanceMatrix, e: EdgeId, f: EdgeId) -> bool {
    let (x, y) = g.edge(e);
    let (u, v) = g.edge(f);
    d.get(x, u) + d.get(y, v) != d.get(x, v) + d.get(y, u)
}

/// Partition of the edge set into transitive-closure classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaPartition {
    /// Class index of each edge, indexed by `EdgeId`.
    pub class_of: Vec<usize>,
    /// Classes ordered by their smallest contained edge id.
    pub classes: Vec<EdgeSet>,
    /// Bipartite and every within-class pair directly related.
    pub is_partial_cube: bool,
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let mut a = self.find(a);
        let mut b = self.find(b);
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            core::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
    }
}

/// Classes of the transitive closure, computed by a union-find over the
/// all-pairs scan. Quadratic in `m`, which is fine at analysis scale.
pub fn theta_classes(g: &Graph, d: &DistanceMatrix) -> ThetaPartition {
    let m = g.m();
    let mut uf = UnionFind::new(m);
    for e in 0..m {
        for f in (e + 1)..m {
            if uf.find(e) != uf.find(f) && theta_related(g, d, e, f) {
                uf.union(e, f);
            }
        }
    }

    // Order classes by smallest contained edge id.
    let mut class_of = vec![usize::MAX; m];
    let mut members: Vec<Vec<EdgeId>> = Vec::new();
    let mut root_class = vec![usize::MAX; m];
    for (e, slot) in class_of.iter_mut().enumerate() {
        let root = uf.find(e);
        if root_class[root] == usize::MAX {
            root_class[root] = members.len();
            members.push(Vec::new());
        }
        let c = root_class[root];
        *slot = c;
        members[c].push(e);
    }

    // Winkler's criterion, with transitivity verified per class by a pairwise
    // re-check; this doubles as the partial-cube certificate.
    let bipartite = bipartition(g).is_some();
    let transitive = bipartite
        && members.iter().all(|class| {
            class
                .iter()
                .enumerate()
                .all(|(i, &e)| class[i + 1..].iter().all(|&f| theta_related(g, d, e, f)))
        });

    ThetaPartition {
        class_of,
        classes: members.into_iter().map(EdgeSet::from_ids).collect(),
        is_partial_cube: transitive,
    }
}

/// Convenience wrapper: bipartite with transitive relation.
pub fn is_partial_cube(g: &Graph) -> bool {
    let d = all_pairs_distances(g);
    theta_classes(g, &d).is_partial_cube
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{fig1_graph, generate, FamilyDescriptor, TreeSpec};

    fn classes_of(f: &FamilyDescriptor) -> (Graph, ThetaPartition) {
        let g = generate(f).unwrap();
        let d = all_pairs_distances(&g);
        let p = theta_classes(&g, &d);
        (g, p)
    }

    #[test]
    fn c4_opposite_edges_related_adjacent_not() {
        let g = generate(&FamilyDescriptor::Cycle(4)).unwrap();
        let d = all_pairs_distances(&g);
        let e01 = g.edge_id(0, 1).unwrap();
        let e23 = g.edge_id(2, 3).unwrap();
        let e12 = g.edge_id(1, 2).unwrap();
        assert!(theta_related(&g, &d, e01, e23));
        assert!(!theta_related(&g, &d, e01, e12));
        // Symmetry.
        assert!(theta_related(&g, &d, e23, e01));
    }

    #[test]
    fn q3_same_coordinate_edges_related() {
        let g = generate(&FamilyDescriptor::Hypercube(3)).unwrap();
        let d = all_pairs_distances(&g);
        // Both flip bit 0.
        let a = g.edge_id(0, 1).unwrap();
        let b = g.edge_id(2, 3).unwrap();
        // Flips bit 1.
        let c = g.edge_id(0, 2).unwrap();
        assert!(theta_related(&g, &d, a, b));
        assert!(!theta_related(&g, &d, a, c));
    }

    #[test]
    fn q3_has_three_classes_of_four() {
        let (_, p) = classes_of(&FamilyDescriptor::Hypercube(3));
        assert_eq!(p.classes.len(), 3);
        assert!(p.classes.iter().all(|c| c.len() == 4));
        assert!(p.is_partial_cube);
    }

    #[test]
    fn fig1_marked_classes_recovered() {
        let g = fig1_graph();
        let d = all_pairs_distances(&g);
        let p = theta_classes(&g, &d);
        assert!(p.is_partial_cube);

        let marked_a: EdgeSet = [(0, 4), (1, 5), (2, 6), (3, 7)]
            .iter()
            .map(|&(u, v)| g.edge_id(u, v).unwrap())
            .collect();
        let marked_b: EdgeSet = [(0, 1), (4, 5), (8, 9), (10, 11)]
            .iter()
            .map(|&(u, v)| g.edge_id(u, v).unwrap())
            .collect();
        assert!(p.classes.contains(&marked_a));
        assert!(p.classes.contains(&marked_b));

        let mut sizes: Vec<usize> = p.classes.iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![2, 2, 2, 2, 4, 4]);
    }

    #[test]
    fn tree_edges_are_singleton_classes() {
        let (g, p) = classes_of(&FamilyDescriptor::Tree(TreeSpec::Pruefer(alloc::vec![
            0, 2, 2, 4
        ])));
        assert_eq!(p.classes.len(), g.m());
        assert!(p.classes.iter().all(|c| c.len() == 1));
        assert!(p.is_partial_cube);
    }

    #[test]
    fn partial_cube_flag() {
        assert!(!is_partial_cube(
            &generate(&FamilyDescriptor::Complete(3)).unwrap()
        ));
        assert!(is_partial_cube(
            &generate(&FamilyDescriptor::Cycle(6)).unwrap()
        ));
        assert!(is_partial_cube(
            &generate(&FamilyDescriptor::Grid(5, 4)).unwrap()
        ));
        // Odd cycles are not bipartite; K_{2,3} is bipartite but not a
        // partial cube.
        let k23 = crate::graph::build_graph(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])
            .unwrap();
        assert!(!is_partial_cube(&k23));
    }

    #[test]
    fn grid_class_structure() {
        for (r, s) in [(4, 3), (5, 5), (6, 2)] {
            let (_, p) = classes_of(&FamilyDescriptor::Grid(r, s));
            assert!(p.is_partial_cube);
            assert_eq!(p.classes.len(), (r - 1) + (s - 1));
            let mut sizes: Vec<usize> = p.classes.iter().map(|c| c.len()).collect();
            sizes.sort_unstable();
            let mut expect: Vec<usize> = core::iter::repeat_n(s, r - 1)
                .chain(core::iter::repeat_n(r, s - 1))
                .collect();
            expect.sort_unstable();
            assert_eq!(sizes, expect);
        }
    }

    #[test]
    fn class_indices_ordered_by_smallest_edge_id() {
        let (_, p) = classes_of(&FamilyDescriptor::Grid(3, 3));
        let mins: Vec<EdgeId> = p.classes.iter().map(|c| c.ids()[0]).collect();
        assert!(mins.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(mins[0], 0);
    }
}
