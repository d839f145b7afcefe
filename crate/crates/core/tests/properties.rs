//! Cross-checks against definition-based oracles and structural
//! properties that must hold on whole graph families.

mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use common::{all_cycles, bounded_gnp, def_is_nac, graphs_on};
use nac_core::bitset::Bitset;
use nac_core::check::{collect_small_cycles, cycle_mask_ok, ClassColoring};
use nac_core::fixtures;
use nac_core::graph::{connected_components, Graph};
use nac_core::graph6::{encode_graph6, parse_graph6};
use nac_core::mono::{monochromatic_classes, triangle_components};
use nac_core::search::{enumerate_brute_force_with_limit, SearchConfig};

fn full_check(g: &Graph, red: &Bitset) -> bool {
    let blue = red.complement_within(&Bitset::full(g.edge_count()));
    if red.is_empty() || blue.is_empty() {
        return false;
    }
    nac_core::check::is_nac_coloring(g, red, &blue)
}

/// The implemented check agrees with the definition on every coloring of
/// every graph with up to 5 vertices, and on sampled colorings of every
/// connected 6-vertex graph.
#[test]
fn is_nac_matches_definition_exhaustively() {
    for n in 2..=5 {
        for g in graphs_on(n, false) {
            let m = g.edge_count();
            let cycles = all_cycles(&g);
            for mask in 0..1u64 << m {
                let red = Bitset::from_indices(m, (0..m as u32).filter(|&e| mask >> e & 1 == 1));
                assert_eq!(
                    full_check(&g, &red),
                    def_is_nac(&g, &cycles, &red),
                    "graph {g:?} red {red:?}"
                );
            }
        }
    }
}

#[test]
fn is_nac_matches_definition_on_six_vertices_sampled() {
    let mut rng_state = 0x1234_5678_u64;
    let mut next = move || {
        rng_state ^= rng_state << 13;
        rng_state ^= rng_state >> 7;
        rng_state ^= rng_state << 17;
        rng_state
    };
    for g in graphs_on(6, true) {
        let m = g.edge_count();
        let cycles = all_cycles(&g);
        let total = 1u64 << m;
        for _ in 0..256 {
            let mask = next() % total;
            let red = Bitset::from_indices(m, (0..m as u32).filter(|&e| mask >> e & 1 == 1));
            assert_eq!(
                full_check(&g, &red),
                def_is_nac(&g, &cycles, &red),
                "graph {g:?} red {red:?}"
            );
        }
    }
}

/// Monochromatic classes are monochromatic in every NAC-coloring
/// (exhaustive up to 6 vertices, sampled random graphs on 7).
#[test]
fn classes_are_nac_valid() {
    let mut targets: Vec<Graph> = Vec::new();
    for n in 2..=5 {
        targets.extend(graphs_on(n, true));
    }
    for seed in 0..30 {
        targets.push(bounded_gnp(7, 0.5, 18, seed));
    }
    for g in targets {
        let p = monochromatic_classes(&g);
        let nac = enumerate_brute_force_with_limit(&g, 21).unwrap();
        for coloring in &nac {
            for c in 0..p.len() as u32 {
                let edges = p.class_edges(c);
                let reds = edges.and_count(&coloring.red);
                assert!(
                    reds == 0 || reds == edges.count(),
                    "class {c} bichromatic in {g:?}"
                );
            }
        }
    }
}

/// One more pass of the merge rule changes nothing.
#[test]
fn classes_are_a_fixpoint() {
    let mut targets: Vec<Graph> = vec![fixtures::prism_chain(3), fixtures::grid_ladder(5)];
    for seed in 0..20 {
        targets.push(bounded_gnp(8, 0.45, 20, seed));
    }
    for g in targets {
        let p = monochromatic_classes(&g);
        for v in 0..g.vertex_count() as u32 {
            let nbrs = g.neighbors(v);
            for i in 0..nbrs.len() {
                for j in i + 1..nbrs.len() {
                    let (u, eu) = nbrs[i];
                    let (w, ew) = nbrs[j];
                    let common = (0..p.len() as u32).any(|c| {
                        p.class_vertices(c).contains(u) && p.class_vertices(c).contains(w)
                    });
                    if common {
                        assert_eq!(
                            p.class_of(eu),
                            p.class_of(ew),
                            "rule still fires at vertex {v} in {g:?}"
                        );
                    }
                }
            }
        }
    }
}

/// Rejection by a cached cycle mask always implies the full check fails.
#[test]
fn cycle_precheck_is_sound() {
    let mut targets: Vec<Graph> = Vec::new();
    for n in 3..=5 {
        targets.extend(graphs_on(n, true));
    }
    for seed in 0..20 {
        targets.push(bounded_gnp(7, 0.5, 18, seed));
    }
    for g in targets {
        let p = monochromatic_classes(&g);
        let records = collect_small_cycles(&g, &p, 4, 2);
        if records.is_empty() {
            continue;
        }
        let m = p.len();
        if m > 16 {
            continue;
        }
        for mask in 0..1u64 << m {
            let class_red = Bitset::from_indices(m, (0..m as u32).filter(|&c| mask >> c & 1 == 1));
            let coloring = ClassColoring {
                red_mask: class_red.clone(),
            };
            if records.iter().all(|r| cycle_mask_ok(r, &coloring)) {
                continue;
            }
            let mut red = Bitset::new(g.edge_count());
            for c in class_red.ones() {
                red.or_assign(p.class_edges(c));
            }
            assert!(!full_check(&g, &red), "unsound rejection on {g:?}");
        }
    }
}

/// The cached record list never stores two records with the same mask and
/// all stored classes are pairwise distinct.
#[test]
fn cycle_records_are_deduplicated() {
    for seed in 0..20 {
        let g = bounded_gnp(8, 0.4, 20, seed);
        let p = monochromatic_classes(&g);
        let records = collect_small_cycles(&g, &p, 4, 2);
        let masks: BTreeSet<Bitset> = records.iter().map(|r| r.class_mask.clone()).collect();
        assert_eq!(masks.len(), records.len());
        for r in &records {
            assert_eq!(r.class_mask.count() as usize, r.class_list.len());
            assert!(r.class_list.len() >= 3);
        }
    }
}

/// Union of block edge sets is the edge set; blocks are pairwise disjoint.
#[test]
fn blocks_partition_edges() {
    for seed in 0..40 {
        let g = bounded_gnp(9, 0.35, 25, seed);
        let blocks = nac_core::graph::blocks(&g);
        let mut seen = Bitset::new(g.edge_count());
        let mut total = 0;
        for b in &blocks {
            assert!(!seen.intersects(b));
            seen.or_assign(b);
            total += b.count();
        }
        assert_eq!(total, g.edge_count() as u32);
    }
}

/// A brute-force block oracle: two edges share a block iff some simple
/// cycle contains both; acyclic edges are bridges.
#[test]
fn blocks_match_cycle_oracle() {
    let prism = Graph::from_edges(
        6,
        &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)],
    )
    .unwrap();
    let mut targets = vec![prism];
    for seed in 0..20 {
        targets.push(bounded_gnp(7, 0.4, 16, seed));
    }
    for g in targets {
        if connected_components(&g).len() != 1 {
            continue;
        }
        let cycles = all_cycles(&g);
        let m = g.edge_count();
        let mut uf = nac_core::mono::UnionFind::new(m);
        for cyc in &cycles {
            let first = cyc.min_index().unwrap();
            for e in cyc.ones() {
                uf.union(first, e);
            }
        }
        let mut roots: Vec<u32> = (0..m as u32).map(|e| uf.find(e)).collect();
        let blocks = nac_core::graph::blocks(&g);
        for b in &blocks {
            let first = b.min_index().unwrap();
            for e in b.ones() {
                assert_eq!(roots[e as usize], roots[first as usize], "{g:?}");
            }
        }
        // number of blocks matches the number of oracle groups
        roots.sort_unstable();
        roots.dedup();
        assert_eq!(blocks.len(), roots.len(), "{g:?}");
    }
    // the 3-prism is a single block of nine edges
    let prism = Graph::from_edges(
        6,
        &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)],
    )
    .unwrap();
    let blocks = nac_core::graph::blocks(&prism);
    assert_eq!(blocks.len(), 1);
    assert_eq!(blocks[0].count(), 9);
}

fn arbitrary_graph() -> impl Strategy<Value = Graph> {
    (2usize..=24).prop_flat_map(|n| {
        let pairs: Vec<(u32, u32)> = (0..n as u32)
            .flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)))
            .collect();
        let len = pairs.len();
        proptest::collection::vec(any::<bool>(), len).prop_map(move |picks| {
            let edges: Vec<(u32, u32)> = pairs
                .iter()
                .zip(&picks)
                .filter(|&(_, &keep)| keep)
                .map(|(&e, _)| e)
                .collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph6_round_trip(g in arbitrary_graph()) {
        let encoded = encode_graph6(&g);
        let back = parse_graph6(&encoded).unwrap();
        prop_assert_eq!(back.vertex_count(), g.vertex_count());
        let mut a = back.edges().to_vec();
        let mut b = g.edges().to_vec();
        a.sort_unstable();
        b.sort_unstable();
        prop_assert_eq!(a, b);
        // parsing fixes the edge order, so a second round is bit-exact
        prop_assert_eq!(encode_graph6(&back), encoded);
        prop_assert_eq!(parse_graph6(&encode_graph6(&back)).unwrap(), back);
    }

    #[test]
    fn partition_ignores_edge_order(g in arbitrary_graph(), seed in any::<u64>()) {
        let mut edges = g.edges().to_vec();
        // deterministic shuffle from the seed
        let mut s = seed | 1;
        for i in (1..edges.len()).rev() {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            edges.swap(i, (s % (i as u64 + 1)) as usize);
        }
        let h = Graph::from_edges(g.vertex_count(), &edges).unwrap();
        let pg = monochromatic_classes(&g);
        let ph = monochromatic_classes(&h);
        let to_pairs = |g: &Graph, p: &nac_core::mono::MonochromaticPartition| -> BTreeSet<Vec<(u32, u32)>> {
            p.classes()
                .iter()
                .map(|cl| {
                    let mut v: Vec<(u32, u32)> = cl.ones().map(|e| g.edge(e)).collect();
                    v.sort_unstable();
                    v
                })
                .collect()
        };
        prop_assert_eq!(to_pairs(&g, &pg), to_pairs(&h, &ph));
    }

    #[test]
    fn triangle_components_never_coarser(g in arbitrary_graph()) {
        let tri = triangle_components(&g);
        let mono = monochromatic_classes(&g);
        for tc in tri.classes() {
            let first = tc.min_index().unwrap();
            let target = mono.class_of(first);
            for e in tc.ones() {
                prop_assert_eq!(mono.class_of(e), target);
            }
        }
    }

    #[test]
    fn mask_check_swap_invariant(len in 3usize..=8, reds in any::<u16>()) {
        let m = 16usize;
        let rec = nac_core::check::CycleRecord {
            class_list: (0..len as u32).collect(),
            class_mask: Bitset::from_indices(m, 0..len as u32),
        };
        let red = Bitset::from_indices(m, (0..m as u32).filter(|&c| reds >> c & 1 == 1));
        let swapped = red.complement_within(&Bitset::full(m));
        let a = cycle_mask_ok(&rec, &ClassColoring { red_mask: red });
        let b = cycle_mask_ok(&rec, &ClassColoring { red_mask: swapped });
        prop_assert_eq!(a, b);
    }

    #[test]
    fn components_commute_with_relabeling(g in arbitrary_graph(), rot in any::<u32>()) {
        let n = g.vertex_count() as u32;
        let shift = rot % n;
        let relabel = |v: u32| (v + shift) % n;
        let edges: Vec<(u32, u32)> = g.edges().iter().map(|&(u, v)| (relabel(u), relabel(v))).collect();
        let h = Graph::from_edges(n as usize, &edges).unwrap();
        let mut expect: Vec<Vec<u32>> = connected_components(&g)
            .into_iter()
            .map(|comp| {
                let mut c: Vec<u32> = comp.into_iter().map(relabel).collect();
                c.sort_unstable();
                c
            })
            .collect();
        expect.sort();
        let mut got = connected_components(&h);
        got.sort();
        prop_assert_eq!(expect, got);
    }
}

/// Enumeration agrees with brute force across every strategy/merge pair on
/// a modest mixed family (the acceptance suite runs the full sweep).
#[test]
fn enumerate_agrees_with_oracle_smoke() {
    let mut targets: Vec<Graph> = vec![
        fixtures::cycle(6),
        fixtures::prism_chain(2),
        fixtures::grid_ladder(4),
    ];
    for seed in 0..10 {
        targets.push(bounded_gnp(8, 0.4, 20, seed));
    }
    for g in &targets {
        let oracle: BTreeSet<Bitset> = enumerate_brute_force_with_limit(g, 21)
            .unwrap()
            .into_iter()
            .map(|c| c.red)
            .collect();
        for strategy in [
            nac_core::search::SplitStrategy::None,
            nac_core::search::SplitStrategy::Neighbors,
            nac_core::search::SplitStrategy::NeighborsDegree,
        ] {
            for merge in [
                nac_core::search::MergeStrategy::Linear,
                nac_core::search::MergeStrategy::SharedVertices,
            ] {
                let cfg = SearchConfig {
                    strategy,
                    merge,
                    ..SearchConfig::default()
                };
                let got: BTreeSet<Bitset> =
                    nac_core::search::enumerate(g, &cfg).map(|c| c.red).collect();
                assert_eq!(got, oracle, "{strategy:?}/{merge:?} on {g:?}");
            }
        }
    }
}
