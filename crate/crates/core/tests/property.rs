//! Property-based invariants: randomized inputs rather than fixed fixtures.

use proptest::prelude::*;

use sepindex::complex::Complex;
use sepindex::graph::Graph;
use sepindex::io::{parse_complex, write_complex};
use sepindex::moves::{apply_record, parse_move_log, random_sphere, valid_one_moves};
use sepindex::separation::{separation_profile, separation_profile_brute};

/// Arbitrary graph on `n` vertices from an upper-triangular adjacency bitmask.
fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut g = Graph::new(n).unwrap();
    let mut bit = 0;
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if mask >> (bit % 64) & 1 == 1 {
                g.add_edge(u, v).unwrap();
            }
            bit += 1;
        }
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fast_engine_matches_brute_force(n in 1usize..=10, mask: u64) {
        let g = graph_from_mask(n, mask);
        prop_assert_eq!(separation_profile(&g), separation_profile_brute(&g));
    }

    #[test]
    fn one_moves_preserve_sphereness(n in 5usize..=9, flips in 0usize..20, seed: u64, pick: usize) {
        let x = random_sphere(n, flips, seed).unwrap();
        prop_assert!(x.is_triangulated_2sphere());
        let moves = valid_one_moves(&x);
        if !moves.is_empty() {
            let (rm, ad, _) = moves[pick % moves.len()];
            let (y, record) = sepindex::moves::edge_flip(&x, rm, ad).unwrap();
            prop_assert!(y.is_triangulated_2sphere());
            prop_assert_eq!(y.vertex_count(), x.vertex_count());
            // The recorded move replays to the same complex.
            prop_assert_eq!(&apply_record(&x, &record).unwrap(), &y);
            // ... and survives a trip through the textual log format.
            let parsed = parse_move_log(&record.log_line()).unwrap();
            prop_assert_eq!(parsed.len(), 1);
            prop_assert_eq!(&apply_record(&x, &parsed[0]).unwrap(), &y);
        }
    }

    #[test]
    fn complex_text_roundtrip(n in 4usize..=10, flips in 0usize..20, seed: u64) {
        let x = random_sphere(n, flips, seed).unwrap();
        let text = write_complex(&x);
        let back = parse_complex(&text, true).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn move_logs_roundtrip(n in 4usize..=12, seed: u64) {
        let (x, seq) = sepindex::moves::build_stacked(n, seed).unwrap();
        let log = seq.to_log();
        let records = parse_move_log(&log).unwrap();
        prop_assert_eq!(&records, &seq.records);
        let mut y = seq.start.clone();
        for r in &records {
            y = apply_record(&y, r).unwrap();
        }
        prop_assert_eq!(y, x);
    }

    #[test]
    fn zero_moves_never_change_the_recurrence(n in 4usize..=9, flips in 0usize..12, seed: u64, pick: usize) {
        let y = random_sphere(n, flips, seed).unwrap();
        let f = &y.facets()[pick % y.facets().len()];
        let (lhs, rhs) = sepindex::separation::zero_move_recurrence(&y, &[f[0], f[1], f[2]]).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn empty_and_tiny_graphs_are_consistent() {
    for n in 1..=3usize {
        let g = Graph::edgeless(n).unwrap();
        assert_eq!(separation_profile(&g), separation_profile_brute(&g));
    }
    // A single vertex: only the empty set (contributing -1) and the one
    // singleton (contributing 0).
    let one = Graph::new(1).unwrap();
    assert_eq!(
        sepindex::separation::separation_index(&one),
        sepindex::rational::rat_int(-1)
    );
}

#[test]
fn complexes_compare_by_content_not_construction_order() {
    let a = Complex::from_facets(
        4,
        &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        true,
    )
    .unwrap();
    let b = Complex::from_facets(
        4,
        &[vec![3, 2, 1], vec![3, 0, 1], vec![2, 0, 3], vec![2, 1, 0]],
        true,
    )
    .unwrap();
    assert_eq!(a, b);
}
