//! Shared test oracles, independent of the library's check implementation.
#![allow(dead_code)] // each test binary uses its own subset

use nac_core::bitset::Bitset;
use nac_core::graph::Graph;

/// All simple cycles of `g` as edge masks. Each cycle is found once: the
/// start is its smallest vertex and the walk direction is fixed by
/// comparing the second and last vertices.
pub fn all_cycles(g: &Graph) -> Vec<Bitset> {
    let mut out = Vec::new();
    let n = g.vertex_count() as u32;
    let mut path: Vec<u32> = Vec::new();
    let mut on_path = vec![false; n as usize];

    fn dfs(
        g: &Graph,
        start: u32,
        path: &mut Vec<u32>,
        on_path: &mut [bool],
        out: &mut Vec<Bitset>,
    ) {
        let last = *path.last().unwrap();
        for &(next, _) in g.neighbors(last) {
            if next == start {
                if path.len() >= 3 && path[1] < last {
                    let mut mask = Bitset::new(g.edge_count());
                    for w in path.windows(2) {
                        mask.insert(g.edge_index(w[0], w[1]).unwrap());
                    }
                    mask.insert(g.edge_index(last, start).unwrap());
                    out.push(mask);
                }
                continue;
            }
            if next < start || on_path[next as usize] {
                continue;
            }
            on_path[next as usize] = true;
            path.push(next);
            dfs(g, start, path, on_path, out);
            path.pop();
            on_path[next as usize] = false;
        }
    }

    for start in 0..n {
        path.clear();
        path.push(start);
        on_path[start as usize] = true;
        dfs(g, start, &mut path, &mut on_path, &mut out);
        on_path[start as usize] = false;
    }
    out
}

/// Definition-based NAC check: surjective and no cycle with exactly one
/// off-color edge.
pub fn def_is_nac(g: &Graph, cycles: &[Bitset], red: &Bitset) -> bool {
    let m = g.edge_count() as u32;
    let reds = red.count();
    if reds == 0 || reds == m {
        return false;
    }
    for cyc in cycles {
        let len = cyc.count();
        let r = cyc.and_count(red);
        if r == 1 || r == len - 1 {
            return false;
        }
    }
    true
}

/// Every graph on `n` labelled vertices as an edge subset of `K_n`,
/// optionally restricted to connected ones.
pub fn graphs_on(n: usize, connected_only: bool) -> Vec<Graph> {
    let pairs: Vec<(u32, u32)> = (0..n as u32)
        .flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)))
        .collect();
    let mut out = Vec::new();
    for mask in 0..1u64 << pairs.len() {
        let edges: Vec<(u32, u32)> = pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        if connected_only && nac_core::graph::connected_components(&g).len() != 1 {
            continue;
        }
        out.push(g);
    }
    out
}

/// Random graph with at most `max_edges` edges, deterministic per seed.
pub fn bounded_gnp(n: usize, p: f64, max_edges: usize, seed: u64) -> Graph {
    let mut s = seed;
    loop {
        let g = nac_core::fixtures::random_gnp(n, p, s);
        if g.edge_count() <= max_edges {
            return g;
        }
        s = s.wrapping_add(0x9e37_79b9_7f4a_7c15);
    }
}
