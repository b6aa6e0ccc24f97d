//! Property tests: serialization round trips, Smith-form invariances,
//! relabelling invariance, and homology lower bounds over the census.

use num_bigint::BigInt;
use proptest::prelude::*;

use stratifold::enumerate::{enumerate_graphs, EnumBounds};
use stratifold::graph::{GraphBuilder, LabelledGraph};
use stratifold::homology::{h1, snf_divisors, IntMatrix};
use stratifold::io::{canonical_key, parse, serialize};

fn small_census() -> &'static [LabelledGraph] {
    static CENSUS: std::sync::OnceLock<Vec<LabelledGraph>> = std::sync::OnceLock::new();
    CENSUS.get_or_init(|| {
        let mut out = Vec::new();
        enumerate_graphs(&EnumBounds::new(2, 3), |g| out.push(g.clone())).unwrap();
        out
    })
}

#[test]
fn parse_serialize_roundtrip_over_census() {
    for g in small_census() {
        let text = serialize(g);
        let back = parse(&text).expect("canonical text parses");
        assert_eq!(&back, g);
        assert_eq!(serialize(&back), text);
    }
}

#[test]
fn h1_free_rank_at_least_betti1() {
    for g in small_census() {
        assert!(h1(g).free_rank >= g.betti1(), "{}", serialize(g));
    }
}

/// Rename every vertex by an index-shuffling scheme and rebuild.
fn relabel(g: &LabelledGraph, seed: u64) -> LabelledGraph {
    let mut names: Vec<String> = (0..g.white_count() + g.black_count())
        .map(|i| format!("n{}", (i as u64 * 2654435761 + seed) % 100_000))
        .collect();
    names.sort();
    names.dedup();
    // In the (unlikely) collision case just suffix by position.
    while names.len() < g.white_count() + g.black_count() {
        names.push(format!("x{}", names.len()));
    }
    let mut b = GraphBuilder::new();
    for w in g.whites() {
        b.white(&names[w.0], g.genus(w));
    }
    for bl in g.blacks() {
        b.black(&names[g.white_count() + bl.0], );
    }
    for e in g.edge_ids() {
        let edge = g.edge(e);
        b.edge_signed(
            &names[edge.white.0],
            &names[g.white_count() + edge.black.0],
            edge.label,
            edge.sign,
        );
    }
    b.build().expect("relabelling preserves validity")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn trivalence_and_homology_are_relabelling_invariant(index in 0usize..3363, seed in 0u64..1_000_000) {
        let census = small_census();
        let g = &census[index % census.len()];
        let renamed = relabel(g, seed);
        prop_assert_eq!(g.is_trivalent(), renamed.is_trivalent());
        prop_assert_eq!(h1(g), h1(&renamed));
        prop_assert_eq!(canonical_key(g), canonical_key(&renamed));
    }

    #[test]
    fn snf_divisors_invariant_under_permutations(
        rows in 1usize..5,
        cols in 1usize..5,
        entries in prop::collection::vec(-9i64..=9, 16),
        row_swap in (0usize..4, 0usize..4),
        col_swap in (0usize..4, 0usize..4),
    ) {
        let mut m = IntMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, BigInt::from(entries[i * 4 + j]));
            }
        }
        let mut permuted = m.clone();
        let (r1, r2) = (row_swap.0 % rows, row_swap.1 % rows);
        let (c1, c2) = (col_swap.0 % cols, col_swap.1 % cols);
        for j in 0..cols {
            let a = permuted.get(r1, j).clone();
            let b = permuted.get(r2, j).clone();
            permuted.set(r1, j, b);
            permuted.set(r2, j, a);
        }
        for i in 0..rows {
            let a = permuted.get(i, c1).clone();
            let b = permuted.get(i, c2).clone();
            permuted.set(i, c1, b);
            permuted.set(i, c2, a);
        }
        prop_assert_eq!(snf_divisors(&m), snf_divisors(&permuted));
    }

    #[test]
    fn parse_rejects_mangled_directives(line in "[a-z]{2,8} [a-z0-9]{1,5}") {
        // Anything that is not white/black/edge must be a syntax error.
        let first = line.split_whitespace().next().unwrap_or("");
        prop_assume!(!["white", "black", "edge"].contains(&first));
        prop_assert!(parse(&line).is_err());
    }
}
