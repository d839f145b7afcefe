//! Deterministic graph families for tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

/// Same graph, edges presented in a seeded random order. Downstream class
/// and bag orders depend on edge order, so benchmark fixtures shuffle it.
pub fn shuffle_edge_order(g: &Graph, seed: u64) -> Graph {
    let mut edges = g.edges().to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    edges.shuffle(&mut rng);
    Graph::from_edges(g.vertex_count(), &edges).unwrap()
}

/// `C_n`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    let edges: Vec<(u32, u32)> = (0..n as u32)
        .map(|i| {
            let j = (i + 1) % n as u32;
            (i.min(j), i.max(j))
        })
        .collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// `t` triangular prisms chained by identifying a rung of one prism with a
/// rung of the next, so all prisms live in a single block and the class
/// count grows linearly (4t + 1 monochromatic classes).
pub fn prism_chain(t: usize) -> Graph {
    assert!(t >= 1);
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut next = 0u32;
    // first prism on vertices a,b,c / d,e,f with rungs a-d, b-e, c-f
    let mut shared = {
        let (a, b, c, d, e, f) = (next, next + 1, next + 2, next + 3, next + 4, next + 5);
        next += 6;
        edges.extend([(a, b), (b, c), (a, c), (d, e), (e, f), (d, f), (a, d), (b, e), (c, f)]);
        (c, f)
    };
    for _ in 1..t {
        // reuse the previous prism's rung c-f as this prism's rung a-d
        let (a, d) = shared;
        let (b, c, e, f) = (next, next + 1, next + 2, next + 3);
        next += 4;
        edges.extend([(a, b), (b, c), (a, c), (d, e), (e, f), (d, f), (b, e), (c, f)]);
        shared = (c, f);
    }
    Graph::from_edges(next as usize, &edges).unwrap()
}

/// Erdős–Rényi `G(n, p)`, deterministic per seed.
pub fn random_gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Plain ladder `P_2 x P_n` (no diagonals): n rungs, 2(n-1) rails.
pub fn grid_ladder(n: usize) -> Graph {
    assert!(n >= 2);
    let mut edges = Vec::new();
    for i in 0..n as u32 {
        edges.push((2 * i, 2 * i + 1));
        if i + 1 < n as u32 {
            edges.push((2 * i, 2 * i + 2));
            edges.push((2 * i + 1, 2 * i + 3));
        }
    }
    Graph::from_edges(2 * n, &edges).unwrap()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixtureKind {
    Cycles,
    PrismChains,
    RandomGnp,
    GridLadders,
}

#[derive(Clone, Debug)]
pub struct FixtureParams {
    /// Range of `n` for cycles and grid ladders, prism count for chains.
    pub range: std::ops::RangeInclusive<usize>,
    /// Edge probability for random graphs.
    pub p: f64,
    /// Number of random graphs to generate.
    pub count: usize,
}

impl Default for FixtureParams {
    fn default() -> Self {
        FixtureParams {
            range: 4..=8,
            p: 0.4,
            count: 5,
        }
    }
}

/// Named, seeded graph families.
pub fn generate_fixtures(
    kind: FixtureKind,
    params: &FixtureParams,
    seed: u64,
) -> Vec<(String, Graph)> {
    match kind {
        FixtureKind::Cycles => params
            .range
            .clone()
            .filter(|&n| n >= 3)
            .map(|n| (format!("cycle-{n}"), cycle(n)))
            .collect(),
        FixtureKind::PrismChains => params
            .range
            .clone()
            .filter(|&t| t >= 1)
            .map(|t| {
                (
                    format!("prism-chain-{t}"),
                    shuffle_edge_order(&prism_chain(t), seed.wrapping_add(t as u64)),
                )
            })
            .collect(),
        FixtureKind::GridLadders => params
            .range
            .clone()
            .filter(|&n| n >= 2)
            .map(|n| (format!("grid-ladder-{n}"), grid_ladder(n)))
            .collect(),
        FixtureKind::RandomGnp => (0..params.count)
            .map(|i| {
                let n = *params.range.end();
                (
                    format!("gnp-{n}-{i}"),
                    random_gnp(n, params.p, seed.wrapping_add(i as u64)),
                )
            })
            .collect(),
    }
}
