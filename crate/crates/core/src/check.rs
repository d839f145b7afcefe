//! The NAC-coloring validity check and the small-cycle pre-check cache.
//!
//! A surjective red/blue edge coloring is a NAC-coloring exactly when no
//! blue edge joins two vertices of one red edge-component and vice versa.
//! That full check is linear but runs once per candidate, so we also cache a
//! few short cycles per monochromatic class: a cycle whose edges lie in
//! pairwise-distinct classes rejects a candidate with a single bitmask test
//! whenever exactly one of its classes carries the off color.

use crate::bitset::Bitset;
use crate::graph::Graph;
use crate::mono::MonochromaticPartition;

/// A cached cycle, stored as the classes of its edges in cyclic order.
/// The classes are pairwise distinct, so "exactly one off-color edge" is
/// equivalent to "exactly one off-color class".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleRecord {
    /// Classes in cyclic order, starting with the class the cycle was
    /// collected for.
    pub class_list: Vec<u32>,
    /// The same classes as a mask over class indices.
    pub class_mask: Bitset,
}

/// A red/blue assignment to classes; a set bit means red.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassColoring {
    pub red_mask: Bitset,
}

impl ClassColoring {
    pub fn new(red_mask: Bitset) -> Self {
        ClassColoring { red_mask }
    }

    /// Surjective iff at least one class is red and at least one is blue.
    pub fn is_surjective(&self, class_count: usize) -> bool {
        let ones = self.red_mask.count() as usize;
        ones > 0 && ones < class_count
    }
}

/// Full NAC check for a red/blue partition of the whole edge set.
///
/// Panics if `red` and `blue` do not partition the edges of `g`.
pub fn is_nac_coloring(g: &Graph, red: &Bitset, blue: &Bitset) -> bool {
    assert!(
        !red.intersects(blue) && red.count() + blue.count() == g.edge_count() as u32,
        "red and blue must partition the edge set"
    );
    is_nac_within(g, red, blue)
}

/// The same check restricted to the subgraph spanned by `red | blue`;
/// other edges of `g` are ignored.
pub(crate) fn is_nac_within(g: &Graph, red: &Bitset, blue: &Bitset) -> bool {
    if red.is_empty() || blue.is_empty() {
        return false;
    }
    !one_color_violates(g, red, blue) && !one_color_violates(g, blue, red)
}

/// True when some `other` edge joins two vertices of one `base` component.
fn one_color_violates(g: &Graph, base: &Bitset, other: &Bitset) -> bool {
    let n = g.vertex_count();
    let mut parent: Vec<u32> = (0..n as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            let p = parent[x as usize];
            parent[x as usize] = parent[p as usize];
            x = p;
        }
        x
    }
    for e in base.ones() {
        let (u, v) = g.edge(e);
        let ru = find(&mut parent, u);
        let rv = find(&mut parent, v);
        if ru != rv {
            parent[ru as usize] = rv;
        }
    }
    for e in other.ones() {
        let (u, v) = g.edge(e);
        if find(&mut parent, u) == find(&mut parent, v) {
            return true;
        }
    }
    false
}

/// Mask-only pre-check: false iff the cycle has exactly one red or exactly
/// one blue class, i.e. the candidate would make it an almost cycle.
pub fn cycle_mask_ok(record: &CycleRecord, coloring: &ClassColoring) -> bool {
    let reds = record.class_mask.and_count(&coloring.red_mask);
    let len = record.class_list.len() as u32;
    reds != 1 && reds != len - 1
}

/// Collects up to `per_class` cycles for every monochromatic class over the
/// whole graph.
pub fn collect_small_cycles(
    g: &Graph,
    p: &MonochromaticPartition,
    max_classes: usize,
    per_class: usize,
) -> Vec<CycleRecord> {
    let all_edges = Bitset::full(g.edge_count());
    let all_classes: Vec<u32> = (0..p.len() as u32).collect();
    collect_small_cycles_in(g, p, &all_edges, &all_classes, max_classes, per_class)
}

/// Restricted collection: only edges in `edge_scope` are traversed and only
/// `class_scope` classes are sourced. For each class `M` and each edge
/// `uv` of `M`, simple `u`-`v` paths avoiding `M` are explored breadth
/// first; every step must enter a class not yet on the path, so a path of
/// `d` edges spans `d` distinct classes and the search is bounded by
/// `max_classes`. Cycles are deduplicated by class mask, preferring fewer
/// classes, then discovery order (neighbor lists ascending).
pub(crate) fn collect_small_cycles_in(
    g: &Graph,
    p: &MonochromaticPartition,
    edge_scope: &Bitset,
    class_scope: &[u32],
    max_classes: usize,
    per_class: usize,
) -> Vec<CycleRecord> {
    let mut out: Vec<CycleRecord> = Vec::new();
    let mut seen_masks: Vec<Bitset> = Vec::new();
    for &class in class_scope {
        let mut candidates: Vec<(usize, usize, Vec<u32>)> = Vec::new();
        let mut seq = 0usize;
        for e in p.class_edges(class).ones() {
            if !edge_scope.contains(e) {
                continue;
            }
            let (u, v) = g.edge(e);
            // BFS over simple paths from u towards v in scope minus the class
            let mut queue: std::collections::VecDeque<(Vec<u32>, Vec<u32>)> =
                std::collections::VecDeque::new();
            queue.push_back((vec![u], vec![class]));
            while let Some((path_verts, path_classes)) = queue.pop_front() {
                let last = *path_verts.last().unwrap();
                for &(nbr, eidx) in g.neighbors(last) {
                    if !edge_scope.contains(eidx) {
                        continue;
                    }
                    let c = p.class_of(eidx);
                    if path_classes.contains(&c) {
                        continue;
                    }
                    if nbr == v {
                        if path_verts.len() >= 2 {
                            let mut cyc = path_classes.clone();
                            cyc.push(c);
                            candidates.push((cyc.len(), seq, cyc));
                            seq += 1;
                        }
                        continue;
                    }
                    if nbr == u || path_verts.contains(&nbr) {
                        continue;
                    }
                    // the path may grow only while a closing edge could
                    // still fit within the class budget
                    if path_classes.len() < max_classes {
                        let mut pv = path_verts.clone();
                        pv.push(nbr);
                        let mut pc = path_classes.clone();
                        pc.push(c);
                        queue.push_back((pv, pc));
                    }
                }
            }
        }
        candidates.sort_by_key(|c| (c.0, c.1));
        let mut taken = 0usize;
        for (_, _, classes) in candidates {
            if taken >= per_class {
                break;
            }
            let mask = Bitset::from_indices(p.len(), classes.iter().copied());
            if seen_masks.contains(&mask) {
                continue;
            }
            seen_masks.push(mask.clone());
            out.push(CycleRecord {
                class_list: classes,
                class_mask: mask,
            });
            taken += 1;
        }
    }
    out
}
