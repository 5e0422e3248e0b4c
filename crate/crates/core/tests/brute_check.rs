// Exhaustive cross-check of enumerate_optima on grid(4,4): every 8-subset
// of its 24 edges is tested directly, independent of the search machinery.
use gpe_core::generators::{generate, FamilyDescriptor};
use gpe_core::graph::{all_pairs_distances, EdgeSet};
use gpe_core::solver::{enumerate_optima, Budget};

#[test]
fn grid44_optima_match_exhaustive_scan() {
    let g = generate(&FamilyDescriptor::Grid(4, 4)).unwrap();
    let d = all_pairs_distances(&g);
    let en = enumerate_optima(&g, &d, 3, &Budget::default()).unwrap();
    assert!(en.complete);
    assert_eq!(en.value, 8);

    let m = g.m();
    let mut brute: Vec<EdgeSet> = Vec::new();
    for mask in 0u32..(1 << m) {
        if mask.count_ones() != 8 {
            continue;
        }
        let s: EdgeSet = (0..m).filter(|&e| mask & (1 << e) != 0).collect();
        if gpe_core::geodesy::is_edge_gp(&g, &d, &s, 3).unwrap() {
            brute.push(s);
        }
    }
    brute.sort();
    assert_eq!(en.optima, brute);
    println!(
        "grid(4,4): {} optima confirmed by exhaustive scan",
        brute.len()
    );
}
