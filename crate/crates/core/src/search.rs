//! NAC-coloring search: brute-force oracle, class-mask enumeration,
//! subgraph decomposition and product merging, all behind one lazy
//! enumeration entry point.
//!
//! The pipeline splits the graph into components, components into blocks,
//! and a block's classes into bags. Each bag is searched by mask
//! enumeration over its classes; bag results are combined pairwise through
//! product nodes that filter candidates with the small-cycle masks and the
//! full check. Every stage is an iterator, so asking for the first coloring
//! does only the work needed to produce it.

use std::cell::RefCell;
use std::error::Error;
use std::fmt;
use std::rc::Rc;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bitset::Bitset;
use crate::check::{
    collect_small_cycles_in, is_nac_within, ClassColoring, CycleRecord,
};
use crate::graph::{blocks, connected_components, Graph};
use crate::mono::{monochromatic_classes, MonochromaticPartition};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitStrategy {
    /// Chunks of consecutive classes in list order.
    None,
    /// Grow bags around shared vertices, scoring by used-neighbor count.
    Neighbors,
    /// Like `Neighbors`, but ties prefer the lower-degree vertex.
    NeighborsDegree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MergeStrategy {
    /// Fold the part list left to right.
    Linear,
    /// Repeatedly merge the pair sharing the most vertices.
    SharedVertices,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub strategy: SplitStrategy,
    pub merge: MergeStrategy,
    /// Target number of classes per bag.
    pub bag_size: usize,
    /// Maximum distinct classes on a cached cycle's path.
    pub cycle_depth: usize,
    /// Cached cycles kept per class.
    pub cycles_per_class: usize,
    pub use_cycles: bool,
    pub use_blocks: bool,
    pub rng_seed: u64,
    /// Cooperative cutoff; streams stop yielding once it passes.
    pub deadline: Option<Instant>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            strategy: SplitStrategy::NeighborsDegree,
            merge: MergeStrategy::Linear,
            bag_size: 4,
            cycle_depth: 4,
            cycles_per_class: 2,
            use_cycles: true,
            use_blocks: true,
            rng_seed: 0,
            deadline: None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CheckStats {
    /// Candidate colorings looked at (masks and product pairs).
    pub mask_candidates: u64,
    /// Candidates rejected by a cached cycle mask.
    pub cycle_rejections: u64,
    /// Full NAC checks performed.
    pub full_checks: u64,
    /// Full checks that passed.
    pub found: u64,
}

/// A NAC-coloring of a fixed graph, as an edge partition.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NacColoring {
    pub red: Bitset,
    pub blue: Bitset,
}

impl NacColoring {
    pub fn red_edges(&self, g: &Graph) -> Vec<(u32, u32)> {
        self.red.ones().map(|e| g.edge(e)).collect()
    }

    pub fn blue_edges(&self, g: &Graph) -> Vec<(u32, u32)> {
        self.blue.ones().map(|e| g.edge(e)).collect()
    }
}

/// A set of classes assigned to one subgraph by a decomposition heuristic.
#[derive(Clone, Debug)]
pub struct Bag {
    pub class_indices: Vec<u32>,
    pub edges: Bitset,
    pub vertices: Bitset,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleLimitError {
    pub edges: usize,
    pub limit: usize,
}

impl fmt::Display for OracleLimitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "brute-force oracle refuses {} edges (limit {})",
            self.edges, self.limit
        )
    }
}

impl Error for OracleLimitError {}

pub const DEFAULT_ORACLE_EDGE_LIMIT: usize = 22;

/// Exact NAC set by testing every coloring with edge 0 fixed red.
pub fn enumerate_brute_force(g: &Graph) -> Result<Vec<NacColoring>, OracleLimitError> {
    enumerate_brute_force_with_limit(g, DEFAULT_ORACLE_EDGE_LIMIT)
}

pub fn enumerate_brute_force_with_limit(
    g: &Graph,
    limit: usize,
) -> Result<Vec<NacColoring>, OracleLimitError> {
    let m = g.edge_count();
    if m > limit {
        return Err(OracleLimitError { edges: m, limit });
    }
    let mut out = Vec::new();
    if m < 2 {
        return Ok(out);
    }
    let all = Bitset::full(m);
    for mask in 0..1u64 << (m - 1) {
        let mut red = Bitset::new(m);
        red.insert(0);
        for bit in 0..m - 1 {
            if mask >> bit & 1 == 1 {
                red.insert(bit as u32 + 1);
            }
        }
        let blue = red.complement_within(&all);
        if blue.is_empty() {
            continue;
        }
        if is_nac_within(g, &red, &blue) {
            out.push(NacColoring { red, blue });
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// shared pipeline state
// ---------------------------------------------------------------------------

struct Shared {
    stats: CheckStats,
    timed_out: bool,
    deadline: Option<Instant>,
    tick: u32,
}

impl Shared {
    fn expired(&mut self) -> bool {
        if self.timed_out {
            return true;
        }
        let Some(deadline) = self.deadline else {
            return false;
        };
        self.tick = self.tick.wrapping_add(1);
        if self.tick.is_multiple_of(1024) && Instant::now() >= deadline {
            self.timed_out = true;
        }
        self.timed_out
    }
}

struct Ctx<'g> {
    g: &'g Graph,
    part: Rc<MonochromaticPartition>,
    class_edges: Rc<Vec<Bitset>>,
    cfg: SearchConfig,
    shared: Rc<RefCell<Shared>>,
}

impl<'g> Ctx<'g> {
    fn expand_classes(&self, classes: &Bitset) -> Bitset {
        let mut red = Bitset::new(self.g.edge_count());
        for c in classes.ones() {
            red.or_assign(&self.class_edges[c as usize]);
        }
        red
    }
}

#[derive(Clone)]
struct NodeMeta {
    support: Bitset,
    edges: Bitset,
    vertices: Bitset,
    cycles: Rc<Vec<CycleRecord>>,
}

/// One candidate test: surjectivity, cycle masks, then the full check.
fn test_candidate(ctx: &Ctx<'_>, meta: &NodeMeta, red_classes: &Bitset) -> bool {
    let mut shared = ctx.shared.borrow_mut();
    if shared.expired() {
        return false;
    }
    shared.stats.mask_candidates += 1;
    if red_classes.is_empty() || *red_classes == meta.support {
        return false;
    }
    if ctx.cfg.use_cycles {
        let coloring = ClassColoring {
            red_mask: red_classes.clone(),
        };
        for rec in meta.cycles.iter() {
            if !crate::check::cycle_mask_ok(rec, &coloring) {
                shared.stats.cycle_rejections += 1;
                return false;
            }
        }
    }
    shared.stats.full_checks += 1;
    drop(shared);
    let red = ctx.expand_classes(red_classes);
    let mut blue = meta.edges.clone();
    blue.andnot_assign(&red);
    let ok = is_nac_within(ctx.g, &red, &blue);
    if ok {
        ctx.shared.borrow_mut().stats.found += 1;
    }
    ok
}

// ---------------------------------------------------------------------------
// streams
// ---------------------------------------------------------------------------

enum Stream<'g> {
    Empty,
    Leaf(LeafIter<'g>),
    Merge(Box<MergeIter<'g>>),
}

impl<'g> Iterator for Stream<'g> {
    type Item = Bitset;

    fn next(&mut self) -> Option<Bitset> {
        match self {
            Stream::Empty => None,
            Stream::Leaf(it) => it.next(),
            Stream::Merge(it) => it.next(),
        }
    }
}

/// Mask enumeration over one bag's classes; the first class is fixed red.
struct LeafIter<'g> {
    ctx: Rc<Ctx<'g>>,
    meta: NodeMeta,
    class_list: Vec<u32>,
    counter: u64,
    end: u64,
    pending: Option<Bitset>,
    swap_expand: bool,
}

impl<'g> LeafIter<'g> {
    fn new(ctx: Rc<Ctx<'g>>, meta: NodeMeta, class_list: Vec<u32>, swap_expand: bool) -> Self {
        assert!(
            class_list.len() <= 63,
            "mask enumeration over more than 63 classes; lower the bag size"
        );
        let end = if class_list.len() < 2 {
            0
        } else {
            1u64 << (class_list.len() - 1)
        };
        LeafIter {
            ctx,
            meta,
            class_list,
            counter: 0,
            end,
            pending: None,
            swap_expand,
        }
    }
}

impl<'g> Iterator for LeafIter<'g> {
    type Item = Bitset;

    fn next(&mut self) -> Option<Bitset> {
        if let Some(p) = self.pending.take() {
            return Some(p);
        }
        while self.counter < self.end {
            if self.ctx.shared.borrow().timed_out {
                return None;
            }
            let v = self.counter;
            self.counter += 1;
            let mut red = Bitset::new(self.ctx.part.len());
            red.insert(self.class_list[0]);
            for (bit, &c) in self.class_list[1..].iter().enumerate() {
                if v >> bit & 1 == 1 {
                    red.insert(c);
                }
            }
            if test_candidate(&self.ctx, &self.meta, &red) {
                if self.swap_expand {
                    self.pending = Some(red.complement_within(&self.meta.support));
                }
                return Some(red);
            }
        }
        None
    }
}

/// Filtered product of a streamed left side and a progressively cached
/// right side, each extended with its two monochromatic colorings.
struct MergeIter<'g> {
    ctx: Rc<Ctx<'g>>,
    meta: NodeMeta,
    left: Stream<'g>,
    left_support: Bitset,
    left_monos_left: u8,
    cur_left: Option<Bitset>,
    right: Stream<'g>,
    right_support: Bitset,
    right_cache: Vec<Bitset>,
    right_done: bool,
    right_pos: usize,
}

impl<'g> MergeIter<'g> {
    fn pull_left(&mut self) -> Option<Bitset> {
        if let Some(m) = self.left.next() {
            return Some(m);
        }
        match self.left_monos_left {
            2 => {
                self.left_monos_left = 1;
                Some(self.left_support.clone())
            }
            1 => {
                self.left_monos_left = 0;
                Some(Bitset::new(self.ctx.part.len()))
            }
            _ => None,
        }
    }

    fn right_at(&mut self, pos: usize) -> Option<Bitset> {
        while pos >= self.right_cache.len() {
            if self.right_done {
                return None;
            }
            match self.right.next() {
                Some(m) => self.right_cache.push(m),
                None => {
                    self.right_done = true;
                    self.right_cache.push(self.right_support.clone());
                    self.right_cache.push(Bitset::new(self.ctx.part.len()));
                }
            }
        }
        Some(self.right_cache[pos].clone())
    }
}

impl<'g> Iterator for MergeIter<'g> {
    type Item = Bitset;

    fn next(&mut self) -> Option<Bitset> {
        loop {
            if self.ctx.shared.borrow().timed_out {
                return None;
            }
            if self.cur_left.is_none() {
                self.cur_left = self.pull_left();
                self.right_pos = 0;
                self.cur_left.as_ref()?;
            }
            let a = self.cur_left.clone().unwrap();
            while let Some(b) = self.right_at(self.right_pos) {
                self.right_pos += 1;
                let red = Bitset::or(&a, &b);
                if test_candidate(&self.ctx, &self.meta, &red) {
                    return Some(red);
                }
            }
            self.cur_left = None;
        }
    }
}

struct PlannedNode<'g> {
    meta: NodeMeta,
    stream: Stream<'g>,
}

fn node_cycles(ctx: &Ctx<'_>, edges: &Bitset, class_scope: &[u32]) -> Rc<Vec<CycleRecord>> {
    if !ctx.cfg.use_cycles {
        return Rc::new(Vec::new());
    }
    Rc::new(collect_small_cycles_in(
        ctx.g,
        &ctx.part,
        edges,
        class_scope,
        ctx.cfg.cycle_depth,
        ctx.cfg.cycles_per_class,
    ))
}

fn vertices_of_edges(g: &Graph, edges: &Bitset) -> Bitset {
    let mut vs = Bitset::new(g.vertex_count());
    for e in edges.ones() {
        let (u, v) = g.edge(e);
        vs.insert(u);
        vs.insert(v);
    }
    vs
}

fn leaf_node<'g>(ctx: &Rc<Ctx<'g>>, class_list: Vec<u32>, swap_expand: bool) -> PlannedNode<'g> {
    let support = Bitset::from_indices(ctx.part.len(), class_list.iter().copied());
    let mut edges = Bitset::new(ctx.g.edge_count());
    for &c in &class_list {
        edges.or_assign(&ctx.class_edges[c as usize]);
    }
    let vertices = vertices_of_edges(ctx.g, &edges);
    // a single class has no surjective coloring; such a leaf contributes
    // only through the monochromatic entries its parent adds
    if class_list.len() < 2 {
        let meta = NodeMeta {
            support,
            edges,
            vertices,
            cycles: Rc::new(Vec::new()),
        };
        return PlannedNode { meta, stream: Stream::Empty };
    }
    let cycles = node_cycles(ctx, &edges, &class_list);
    let meta = NodeMeta {
        support,
        edges,
        vertices,
        cycles,
    };
    let stream = Stream::Leaf(LeafIter::new(ctx.clone(), meta.clone(), class_list, swap_expand));
    PlannedNode { meta, stream }
}

fn merge_pair<'g>(ctx: &Rc<Ctx<'g>>, a: PlannedNode<'g>, b: PlannedNode<'g>) -> PlannedNode<'g> {
    let support = Bitset::or(&a.meta.support, &b.meta.support);
    let edges = Bitset::or(&a.meta.edges, &b.meta.edges);
    let vertices = Bitset::or(&a.meta.vertices, &b.meta.vertices);
    let scope: Vec<u32> = support.ones().collect();
    let cycles = node_cycles(ctx, &edges, &scope);
    let meta = NodeMeta {
        support,
        edges,
        vertices,
        cycles,
    };
    // stream the side with more classes, cache the smaller one
    let (streamed, cached) = if a.meta.support.count() >= b.meta.support.count() {
        (a, b)
    } else {
        (b, a)
    };
    let it = MergeIter {
        ctx: ctx.clone(),
        meta: meta.clone(),
        left: streamed.stream,
        left_support: streamed.meta.support,
        left_monos_left: 2,
        cur_left: None,
        right: cached.stream,
        right_support: cached.meta.support,
        right_cache: Vec::new(),
        right_done: false,
        right_pos: 0,
    };
    PlannedNode {
        meta,
        stream: Stream::Merge(Box::new(it)),
    }
}

fn merge_list<'g>(
    ctx: &Rc<Ctx<'g>>,
    mut nodes: Vec<PlannedNode<'g>>,
    strategy: MergeStrategy,
) -> PlannedNode<'g> {
    assert!(!nodes.is_empty());
    match strategy {
        MergeStrategy::Linear => {
            let mut it = nodes.into_iter();
            let mut acc = it.next().unwrap();
            for next in it {
                acc = merge_pair(ctx, acc, next);
            }
            acc
        }
        MergeStrategy::SharedVertices => {
            while nodes.len() > 1 {
                let mut best = (0usize, 1usize);
                let mut best_key = (i64::MIN, i64::MIN);
                for i in 0..nodes.len() {
                    for j in i + 1..nodes.len() {
                        let shared =
                            nodes[i].meta.vertices.and_count(&nodes[j].meta.vertices) as i64;
                        let combined =
                            (nodes[i].meta.edges.count() + nodes[j].meta.edges.count()) as i64;
                        // more shared vertices, then fewer combined edges
                        let key = (shared, -combined);
                        if key > best_key {
                            best_key = key;
                            best = (i, j);
                        }
                    }
                }
                let (i, j) = best;
                let b = nodes.remove(j);
                let a = nodes.remove(i);
                let merged = merge_pair(ctx, a, b);
                nodes.insert(i, merged);
            }
            nodes.pop().unwrap()
        }
    }
}

// ---------------------------------------------------------------------------
// decomposition
// ---------------------------------------------------------------------------

/// Splits all classes of `p` into bags per the configured strategy.
pub fn decompose(g: &Graph, p: &MonochromaticPartition, cfg: &SearchConfig) -> Vec<Bag> {
    let scope: Vec<u32> = (0..p.len() as u32).collect();
    let edge_scope = Bitset::full(g.edge_count());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    decompose_scope(g, p, &scope, &edge_scope, cfg, &mut rng)
        .into_iter()
        .map(|class_indices| {
            let mut edges = Bitset::new(g.edge_count());
            for &c in &class_indices {
                edges.or_assign(p.class_edges(c));
            }
            let vertices = vertices_of_edges(g, &edges);
            Bag {
                class_indices,
                edges,
                vertices,
            }
        })
        .collect()
}

fn decompose_scope(
    g: &Graph,
    p: &MonochromaticPartition,
    classes: &[u32],
    edge_scope: &Bitset,
    cfg: &SearchConfig,
    rng: &mut ChaCha8Rng,
) -> Vec<Vec<u32>> {
    let k = cfg.bag_size.clamp(1, 63);
    match cfg.strategy {
        SplitStrategy::None => classes.chunks(k).map(|c| c.to_vec()).collect(),
        SplitStrategy::Neighbors | SplitStrategy::NeighborsDegree => {
            neighbors_bags(g, p, classes, edge_scope, k, cfg.strategy, rng)
        }
    }
}

fn neighbors_bags(
    g: &Graph,
    p: &MonochromaticPartition,
    classes: &[u32],
    edge_scope: &Bitset,
    k: usize,
    strategy: SplitStrategy,
    rng: &mut ChaCha8Rng,
) -> Vec<Vec<u32>> {
    let m = classes.len();
    let mut bags: Vec<Vec<u32>> = vec![Vec::new(); m.div_ceil(k)];
    // a bag whose frontier ran dry is sealed: reseeding it could pull in
    // classes from an unrelated part of the graph
    let mut sealed: Vec<bool> = vec![false; bags.len()];
    let mut order = classes.to_vec();
    order.shuffle(rng);
    let mut assigned = vec![false; p.len()];
    let in_scope = {
        let mut s = vec![false; p.len()];
        for &c in classes {
            s[c as usize] = true;
        }
        s
    };
    // scoped degree per vertex
    let degree: Vec<u32> = (0..g.vertex_count() as u32)
        .map(|v| {
            g.neighbors(v)
                .iter()
                .filter(|&&(_, e)| edge_scope.contains(e))
                .count() as u32
        })
        .collect();

    let mut next_seed = 0usize;
    loop {
        // next unassigned class in shuffled order
        while next_seed < order.len() && assigned[order[next_seed] as usize] {
            next_seed += 1;
        }
        if next_seed >= order.len() {
            break;
        }
        let seed = order[next_seed];
        let bag_idx = match (0..bags.len())
            .filter(|&i| !sealed[i] && bags[i].len() < k)
            .min_by_key(|&i| (bags[i].len(), i))
        {
            Some(i) => i,
            None => {
                bags.push(Vec::new());
                sealed.push(false);
                bags.len() - 1
            }
        };
        assigned[seed as usize] = true;
        bags[bag_idx].push(seed);

        let mut used = p.class_vertices(seed).clone();
        for &c in &bags[bag_idx] {
            used.or_assign(p.class_vertices(c));
        }
        let mut stuck = Bitset::new(g.vertex_count());
        while bags[bag_idx].len() < k {
            // open frontier: scoped neighbors of used, not used, not stuck
            let mut best: Option<(u32, u32, u32)> = None; // (vertex, score, degree)
            for v in used.ones() {
                for &(w, e) in g.neighbors(v) {
                    if !edge_scope.contains(e) || used.contains(w) || stuck.contains(w) {
                        continue;
                    }
                    let score = g
                        .neighbors(w)
                        .iter()
                        .filter(|&&(x, e2)| edge_scope.contains(e2) && used.contains(x))
                        .count() as u32;
                    let better = match best {
                        None => true,
                        Some((bv, bs, bd)) => {
                            if score != bs {
                                score > bs
                            } else if strategy == SplitStrategy::NeighborsDegree
                                && degree[w as usize] != bd
                            {
                                degree[w as usize] < bd
                            } else {
                                w < bv
                            }
                        }
                    };
                    if better {
                        best = Some((w, score, degree[w as usize]));
                    }
                }
            }
            let Some((bv, _, _)) = best else {
                sealed[bag_idx] = true;
                break;
            };
            let mut absorbed = false;
            for &(_, e) in g.neighbors(bv) {
                if bags[bag_idx].len() >= k {
                    break;
                }
                if !edge_scope.contains(e) {
                    continue;
                }
                let c = p.class_of(e);
                if !in_scope[c as usize] || assigned[c as usize] {
                    continue;
                }
                assigned[c as usize] = true;
                bags[bag_idx].push(c);
                used.or_assign(p.class_vertices(c));
                absorbed = true;
            }
            if !absorbed {
                stuck.insert(bv);
            }
        }
    }
    bags.retain(|b| !b.is_empty());
    bags
}

// ---------------------------------------------------------------------------
// top-level enumeration
// ---------------------------------------------------------------------------

/// Lazy stream of canonical NAC-colorings plus its check counters.
pub struct NacStream<'g> {
    g: &'g Graph,
    root: Stream<'g>,
    top_filter: bool,
    all_edges: Bitset,
    shared: Rc<RefCell<Shared>>,
    part: Rc<MonochromaticPartition>,
    class_edges: Rc<Vec<Bitset>>,
}

impl<'g> NacStream<'g> {
    pub fn stats(&self) -> CheckStats {
        self.shared.borrow().stats
    }

    pub fn timed_out(&self) -> bool {
        self.shared.borrow().timed_out
    }

    pub fn partition(&self) -> &MonochromaticPartition {
        &self.part
    }
}

impl<'g> Iterator for NacStream<'g> {
    type Item = NacColoring;

    fn next(&mut self) -> Option<NacColoring> {
        loop {
            let mask = self.root.next()?;
            if self.top_filter && !mask.contains(0) {
                continue;
            }
            let mut red = Bitset::new(self.g.edge_count());
            for c in mask.ones() {
                red.or_assign(&self.class_edges[c as usize]);
            }
            let blue = red.complement_within(&self.all_edges);
            return Some(NacColoring { red, blue });
        }
    }
}

/// Enumerates all NAC-colorings of `g` lazily, one per color-swap pair,
/// canonicalized so the class containing edge 0 is red.
pub fn enumerate<'g>(g: &'g Graph, cfg: &SearchConfig) -> NacStream<'g> {
    let part = Rc::new(monochromatic_classes(g));
    let class_edges: Rc<Vec<Bitset>> =
        Rc::new(part.classes().to_vec());
    let shared = Rc::new(RefCell::new(Shared {
        stats: CheckStats::default(),
        timed_out: false,
        deadline: cfg.deadline,
        tick: 0,
    }));
    let ctx = Rc::new(Ctx {
        g,
        part: part.clone(),
        class_edges: class_edges.clone(),
        cfg: cfg.clone(),
        shared: shared.clone(),
    });
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);

    // components with at least one edge, in vertex order
    let comps: Vec<Vec<u32>> = connected_components(g)
        .into_iter()
        .filter(|c| c.iter().any(|&v| g.degree(v) > 0))
        .collect();

    let block_sets: Vec<Bitset> = if cfg.use_blocks {
        blocks(g)
    } else {
        Vec::new()
    };

    let mut comp_nodes: Vec<PlannedNode<'g>> = Vec::new();
    for comp in &comps {
        let mut comp_edges = Bitset::new(g.edge_count());
        for &v in comp {
            for &(w, e) in g.neighbors(v) {
                if v < w {
                    comp_edges.insert(e);
                }
            }
        }
        let parts: Vec<Bitset> = if cfg.use_blocks {
            block_sets
                .iter()
                .filter(|b| b.min_index().is_some_and(|e| comp_edges.contains(e)))
                .cloned()
                .collect()
        } else {
            vec![comp_edges]
        };
        let mut part_nodes: Vec<PlannedNode<'g>> = Vec::new();
        for edge_set in parts {
            let mut class_ids: Vec<u32> = edge_set.ones().map(|e| part.class_of(e)).collect();
            class_ids.sort_unstable();
            class_ids.dedup();
            let node = if class_ids.len() <= cfg.bag_size.min(63) {
                leaf_node(&ctx, class_ids, true)
            } else {
                let bags = decompose_scope(g, &part, &class_ids, &edge_set, cfg, &mut rng);
                let leaves: Vec<PlannedNode<'g>> = bags
                    .into_iter()
                    .map(|bag| leaf_node(&ctx, bag, true))
                    .collect();
                merge_list(&ctx, leaves, cfg.merge)
            };
            part_nodes.push(node);
        }
        comp_nodes.push(merge_list(&ctx, part_nodes, cfg.merge));
    }

    let (root, top_filter) = if comp_nodes.is_empty() {
        (Stream::Empty, false)
    } else {
        let root_node = merge_list(&ctx, comp_nodes, cfg.merge);
        match root_node.stream {
            Stream::Leaf(mut leaf) => {
                // single bag: enumerate canonically, no swap expansion
                leaf.swap_expand = false;
                (Stream::Leaf(leaf), false)
            }
            other => (other, true),
        }
    };

    NacStream {
        g,
        root,
        top_filter,
        all_edges: Bitset::full(g.edge_count()),
        shared,
        part,
        class_edges,
    }
}

/// True iff `g` has a NAC-coloring; stops at the first one.
pub fn exists(g: &Graph, cfg: &SearchConfig) -> bool {
    enumerate(g, cfg).next().is_some()
}

/// Number of canonical NAC-colorings.
pub fn count(g: &Graph, cfg: &SearchConfig) -> u64 {
    enumerate(g, cfg).count() as u64
}

// ---------------------------------------------------------------------------
// naive enumeration over a precomputed partition (public operation)
// ---------------------------------------------------------------------------

/// Mask enumeration over all classes of `p` with class 0 fixed red, using
/// the supplied cycle records as pre-checks. Yields canonical colorings.
/// Panics above 63 classes; the pipeline in [`enumerate`] decomposes
/// instead of enumerating directly at that size.
pub struct NaiveStream<'g> {
    g: &'g Graph,
    leaf: LeafIter<'g>,
    shared: Rc<RefCell<Shared>>,
    all_edges: Bitset,
    class_edges: Rc<Vec<Bitset>>,
}

impl<'g> NaiveStream<'g> {
    pub fn stats(&self) -> CheckStats {
        self.shared.borrow().stats
    }
}

impl<'g> Iterator for NaiveStream<'g> {
    type Item = NacColoring;

    fn next(&mut self) -> Option<NacColoring> {
        let mask = self.leaf.next()?;
        let mut red = Bitset::new(self.g.edge_count());
        for c in mask.ones() {
            red.or_assign(&self.class_edges[c as usize]);
        }
        let blue = red.complement_within(&self.all_edges);
        Some(NacColoring { red, blue })
    }
}

pub fn enumerate_naive<'g>(
    g: &'g Graph,
    p: &MonochromaticPartition,
    cycles: &[CycleRecord],
) -> NaiveStream<'g> {
    let part = Rc::new(p.clone());
    let class_edges: Rc<Vec<Bitset>> = Rc::new(part.classes().to_vec());
    let shared = Rc::new(RefCell::new(Shared {
        stats: CheckStats::default(),
        timed_out: false,
        deadline: None,
        tick: 0,
    }));
    let ctx = Rc::new(Ctx {
        g,
        part: part.clone(),
        class_edges: class_edges.clone(),
        cfg: SearchConfig::default(),
        shared: shared.clone(),
    });
    let class_list: Vec<u32> = (0..part.len() as u32).collect();
    let meta = NodeMeta {
        support: Bitset::full(part.len()),
        edges: Bitset::full(g.edge_count()),
        vertices: Bitset::full(g.vertex_count()),
        cycles: Rc::new(cycles.to_vec()),
    };
    let leaf = LeafIter::new(ctx, meta, class_list, false);
    NaiveStream {
        g,
        leaf,
        shared,
        all_edges: Bitset::full(g.edge_count()),
        class_edges,
    }
}

// ---------------------------------------------------------------------------
// explicit product merging (public operations)
// ---------------------------------------------------------------------------

/// Builds the union of two edge-disjoint graphs and filters the product of
/// their swap-inclusive NAC sets (each extended by the two monochromatic
/// colorings) down to the union's exact NAC set.
///
/// The union graph reindexes edges as `g1`'s edges followed by `g2`'s.
/// Panics if the graphs share an edge.
pub fn nac_product_merge(
    g1: &Graph,
    n1: &[NacColoring],
    g2: &Graph,
    n2: &[NacColoring],
) -> (Graph, Vec<NacColoring>, CheckStats) {
    let n = g1.vertex_count().max(g2.vertex_count());
    let mut edges: Vec<(u32, u32)> = g1.edges().to_vec();
    edges.extend_from_slice(g2.edges());
    let g = Graph::from_edges(n, &edges).expect("merge inputs must be edge-disjoint");
    let m = g.edge_count();
    let off = g1.edge_count() as u32;

    let p = monochromatic_classes(&g);
    let cfg = SearchConfig::default();
    let cycles = collect_small_cycles_in(
        &g,
        &p,
        &Bitset::full(m),
        &(0..p.len() as u32).collect::<Vec<_>>(),
        cfg.cycle_depth,
        cfg.cycles_per_class,
    );

    let lift1 = |c: &NacColoring| Bitset::from_indices(m, c.red.ones());
    let lift2 = |c: &NacColoring| Bitset::from_indices(m, c.red.ones().map(|e| e + off));
    let mut left: Vec<Bitset> = n1.iter().map(lift1).collect();
    left.push(Bitset::from_indices(m, 0..off));
    left.push(Bitset::new(m));
    let mut right: Vec<Bitset> = n2.iter().map(lift2).collect();
    right.push(Bitset::from_indices(m, off..m as u32));
    right.push(Bitset::new(m));

    let all = Bitset::full(m);
    let mut stats = CheckStats::default();
    let mut out = Vec::new();
    for a in &left {
        for b in &right {
            let red = Bitset::or(a, b);
            stats.mask_candidates += 1;
            if red.is_empty() || red == all {
                continue;
            }
            // candidates must respect the union's classes
            let mut class_mask = Bitset::new(p.len());
            let mut respects = true;
            for (c, ce) in p.classes().iter().enumerate() {
                let hit = red.and_count(ce);
                if hit == ce.count() {
                    class_mask.insert(c as u32);
                } else if hit != 0 {
                    respects = false;
                    break;
                }
            }
            if !respects {
                stats.cycle_rejections += 1;
                continue;
            }
            let coloring = ClassColoring {
                red_mask: class_mask,
            };
            if cycles.iter().any(|rec| !crate::check::cycle_mask_ok(rec, &coloring)) {
                stats.cycle_rejections += 1;
                continue;
            }
            stats.full_checks += 1;
            let blue = red.complement_within(&all);
            if is_nac_within(&g, &red, &blue) {
                stats.found += 1;
                out.push(NacColoring { red, blue });
            }
        }
    }
    (g, out, stats)
}

/// Keeps the orientation of each swap pair whose red side contains edge 0.
pub fn canonicalize_colorings(colorings: Vec<NacColoring>) -> Vec<NacColoring> {
    colorings
        .into_iter()
        .filter(|c| c.red.contains(0))
        .collect()
}

/// Merges a list of per-subgraph results into the NAC set of their union,
/// canonicalized. Part sets must be swap-inclusive.
pub fn merge_all(
    parts: Vec<(Graph, Vec<NacColoring>)>,
    strategy: MergeStrategy,
) -> (Graph, Vec<NacColoring>) {
    assert!(!parts.is_empty());
    let mut items = parts;
    match strategy {
        MergeStrategy::Linear => {
            let mut it = items.into_iter();
            let (mut g, mut set) = it.next().unwrap();
            for (g2, set2) in it {
                let (gm, sm, _) = nac_product_merge(&g, &set, &g2, &set2);
                g = gm;
                set = sm;
            }
            (g, canonicalize_colorings(set))
        }
        MergeStrategy::SharedVertices => {
            while items.len() > 1 {
                let mut best = (0usize, 1usize);
                let mut best_key = (i64::MIN, i64::MIN);
                for i in 0..items.len() {
                    for j in i + 1..items.len() {
                        let vi = items[i].0.non_isolated();
                        let vj = items[j].0.non_isolated();
                        let shared = if vi.capacity() == vj.capacity() {
                            vi.and_count(&vj) as i64
                        } else {
                            let cap = vi.capacity().max(vj.capacity());
                            let a = Bitset::from_indices(cap, vi.ones());
                            let b = Bitset::from_indices(cap, vj.ones());
                            a.and_count(&b) as i64
                        };
                        let combined =
                            (items[i].0.edge_count() + items[j].0.edge_count()) as i64;
                        let key = (shared, -combined);
                        if key > best_key {
                            best_key = key;
                            best = (i, j);
                        }
                    }
                }
                let (i, j) = best;
                let (g2, s2) = items.remove(j);
                let (g1, s1) = items.remove(i);
                let (gm, sm, _) = nac_product_merge(&g1, &s1, &g2, &s2);
                items.insert(i, (gm, sm));
            }
            let (g, set) = items.pop().unwrap();
            (g, canonicalize_colorings(set))
        }
    }
}
