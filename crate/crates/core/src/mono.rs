//! Monochromatic classes: edge partitions that every NAC-coloring must
//! respect.
//!
//! The starting point is the triangle relation (two edges are related when
//! some 3-cycle contains both); its closure gives the triangle-connected
//! components. On top of that we iterate one merge rule to a fixpoint: if a
//! vertex `v` has neighbors `u, w` that are both vertices of one class, the
//! classes of `vu` and `vw` are merged. Each resulting class induces a
//! connected subgraph and is monochromatic in every NAC-coloring.

use crate::bitset::Bitset;
use crate::graph::Graph;

#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<u32>,
    rank: Vec<u8>,
    merges: u64,
}

impl UnionFind {
    pub fn new(len: usize) -> UnionFind {
        UnionFind {
            parent: (0..len as u32).collect(),
            rank: vec![0; len],
            merges: 0,
        }
    }

    pub fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    pub fn union(&mut self, a: u32, b: u32) -> bool {
        let mut ra = self.find(a);
        let mut rb = self.find(b);
        if ra == rb {
            return false;
        }
        if self.rank[ra as usize] < self.rank[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        if self.rank[ra as usize] == self.rank[rb as usize] {
            self.rank[ra as usize] += 1;
        }
        self.merges += 1;
        true
    }

    /// Number of successful unions so far; cheap fixpoint detection.
    pub fn merges(&self) -> u64 {
        self.merges
    }
}

/// A partition of the edge set into classes, each inducing a connected
/// subgraph. Classes are ordered by their smallest edge index, so class 0
/// always contains edge 0 (when the graph has edges).
#[derive(Clone, Debug)]
pub struct MonochromaticPartition {
    classes: Vec<Bitset>,
    class_of_edge: Vec<u32>,
    class_vertices: Vec<Bitset>,
}

impl MonochromaticPartition {
    fn from_union_find(g: &Graph, uf: &mut UnionFind) -> MonochromaticPartition {
        let m = g.edge_count();
        let mut root_to_class: Vec<u32> = vec![u32::MAX; m];
        let mut classes: Vec<Bitset> = Vec::new();
        let mut class_of_edge = vec![0u32; m];
        for e in 0..m as u32 {
            let r = uf.find(e) as usize;
            let c = if root_to_class[r] == u32::MAX {
                let c = classes.len() as u32;
                root_to_class[r] = c;
                classes.push(Bitset::new(m));
                c
            } else {
                root_to_class[r]
            };
            classes[c as usize].insert(e);
            class_of_edge[e as usize] = c;
        }
        let class_vertices = classes
            .iter()
            .map(|edges| {
                let mut vs = Bitset::new(g.vertex_count());
                for e in edges.ones() {
                    let (u, v) = g.edge(e);
                    vs.insert(u);
                    vs.insert(v);
                }
                vs
            })
            .collect();
        MonochromaticPartition {
            classes,
            class_of_edge,
            class_vertices,
        }
    }

    /// Number of classes.
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_edges(&self, c: u32) -> &Bitset {
        &self.classes[c as usize]
    }

    pub fn class_of(&self, e: u32) -> u32 {
        self.class_of_edge[e as usize]
    }

    /// Endvertices of the edges in class `c`.
    pub fn class_vertices(&self, c: u32) -> &Bitset {
        &self.class_vertices[c as usize]
    }

    pub fn classes(&self) -> &[Bitset] {
        &self.classes
    }
}

fn triangle_union_find(g: &Graph) -> UnionFind {
    let mut uf = UnionFind::new(g.edge_count());
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        // intersect the sorted neighbor lists of u and v
        let (mut i, mut j) = (0, 0);
        let (nu, nv) = (g.neighbors(u), g.neighbors(v));
        while i < nu.len() && j < nv.len() {
            match nu[i].0.cmp(&nv[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    uf.union(e as u32, nu[i].1);
                    uf.union(e as u32, nv[j].1);
                    i += 1;
                    j += 1;
                }
            }
        }
    }
    uf
}

/// Triangle-connected components: the closure of "shares a 3-cycle".
pub fn triangle_components(g: &Graph) -> MonochromaticPartition {
    let mut uf = triangle_union_find(g);
    MonochromaticPartition::from_union_find(g, &mut uf)
}

/// The strengthened partition: triangle components closed under the
/// vertex-neighbor merge rule. The result never splits a triangle
/// component, and one more pass of the rule produces no change.
pub fn monochromatic_classes(g: &Graph) -> MonochromaticPartition {
    let mut uf = triangle_union_find(g);
    let n = g.vertex_count();
    loop {
        let before = uf.merges();
        // classes each vertex is a member of, as sorted root lists
        let mut member: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let r = uf.find(e as u32);
            member[u as usize].push(r);
            member[v as usize].push(r);
        }
        for lst in &mut member {
            lst.sort_unstable();
            lst.dedup();
        }
        for v in 0..n as u32 {
            let nbrs = g.neighbors(v);
            for i in 0..nbrs.len() {
                for j in i + 1..nbrs.len() {
                    let (u, eu) = nbrs[i];
                    let (w, ew) = nbrs[j];
                    if uf.find(eu) == uf.find(ew) {
                        continue;
                    }
                    if sorted_intersects(&member[u as usize], &member[w as usize]) {
                        uf.union(eu, ew);
                    }
                }
            }
        }
        if uf.merges() == before {
            break;
        }
    }
    MonochromaticPartition::from_union_find(g, &mut uf)
}

fn sorted_intersects(a: &[u32], b: &[u32]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}
