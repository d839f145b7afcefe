//! Immutable simple graphs with stable, dense edge indices.
//!
//! Vertices are `0..vertex_count`. Edges are stored as `(u, v)` pairs with
//! `u < v`; an edge's index is its position in the edge list, which is the
//! parser's (or builder's) encounter order. All downstream tie-breaks on
//! "smallest edge index" refer to this order.

use std::error::Error;
use std::fmt;

use crate::bitset::Bitset;

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(u32, u32)>,
    // (neighbor, edge index), sorted by neighbor
    adj: Vec<Vec<(u32, u32)>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    SelfLoop { u: u32 },
    DuplicateEdge { u: u32, v: u32 },
    VertexOutOfRange { v: u32 },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::SelfLoop { u } => write!(f, "self-loop at vertex {u}"),
            GraphError::DuplicateEdge { u, v } => write!(f, "duplicate edge {u}-{v}"),
            GraphError::VertexOutOfRange { v } => write!(f, "vertex {v} out of range"),
        }
    }
}

impl Error for GraphError {}

impl Graph {
    pub fn from_edges(vertex_count: usize, edges: &[(u32, u32)]) -> Result<Graph, GraphError> {
        let mut norm = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a == b {
                return Err(GraphError::SelfLoop { u: a });
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if v as usize >= vertex_count {
                return Err(GraphError::VertexOutOfRange { v });
            }
            norm.push((u, v));
        }
        let mut adj: Vec<Vec<(u32, u32)>> = vec![Vec::new(); vertex_count];
        for (i, &(u, v)) in norm.iter().enumerate() {
            adj[u as usize].push((v, i as u32));
            adj[v as usize].push((u, i as u32));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        for list in &adj {
            for w in list.windows(2) {
                if w[0].0 == w[1].0 {
                    let e = norm[w[0].1 as usize];
                    return Err(GraphError::DuplicateEdge { u: e.0, v: e.1 });
                }
            }
        }
        Ok(Graph {
            vertex_count,
            edges: norm,
            adj,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn edge(&self, i: u32) -> (u32, u32) {
        self.edges[i as usize]
    }

    /// Neighbors of `v` as `(neighbor, edge index)`, ascending by neighbor.
    pub fn neighbors(&self, v: u32) -> &[(u32, u32)] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    pub fn edge_index(&self, u: u32, v: u32) -> Option<u32> {
        self.adj[u as usize]
            .binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| self.adj[u as usize][i].1)
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.edge_index(u, v).is_some()
    }

    /// Vertices incident to at least one edge.
    pub fn non_isolated(&self) -> Bitset {
        let mut s = Bitset::new(self.vertex_count);
        for &(u, v) in &self.edges {
            s.insert(u);
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.vertex_count, self.edges)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EdgeListError {
    BadToken { line: usize, token: String },
    BadPair { line: usize },
    SelfLoop { line: usize },
    DuplicateEdge { line: usize },
}

impl fmt::Display for EdgeListError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeListError::BadToken { line, token } => {
                write!(f, "line {line}: not a non-negative integer: {token:?}")
            }
            EdgeListError::BadPair { line } => {
                write!(f, "line {line}: expected exactly two vertex ids")
            }
            EdgeListError::SelfLoop { line } => write!(f, "line {line}: self-loop"),
            EdgeListError::DuplicateEdge { line } => write!(f, "line {line}: duplicate edge"),
        }
    }
}

impl Error for EdgeListError {}

/// Parses a plain edge list, one `u v` pair per line (LF or CRLF, blank
/// lines skipped). The result is a graph on vertices `0..=max_id`.
pub fn parse_edge_list(text: &str) -> Result<Graph, EdgeListError> {
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut max_id: i64 = -1;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut it = trimmed.split_whitespace();
        let next_id = |it: &mut std::str::SplitWhitespace<'_>| -> Result<Option<u32>, EdgeListError> {
            match it.next() {
                None => Ok(None),
                Some(tok) => tok
                    .parse::<u32>()
                    .map(Some)
                    .map_err(|_| EdgeListError::BadToken {
                        line,
                        token: tok.to_string(),
                    }),
            }
        };
        let a = next_id(&mut it)?.ok_or(EdgeListError::BadPair { line })?;
        let b = next_id(&mut it)?.ok_or(EdgeListError::BadPair { line })?;
        if next_id(&mut it)?.is_some() {
            return Err(EdgeListError::BadPair { line });
        }
        if a == b {
            return Err(EdgeListError::SelfLoop { line });
        }
        let (u, v) = if a < b { (a, b) } else { (b, a) };
        if edges.contains(&(u, v)) {
            return Err(EdgeListError::DuplicateEdge { line });
        }
        max_id = max_id.max(v as i64);
        edges.push((u, v));
    }
    let n = (max_id + 1) as usize;
    Ok(Graph::from_edges(n, &edges).expect("edge list already validated"))
}

/// Connected components as vertex sets, sorted by smallest member.
/// Isolated vertices form singleton components.
pub fn connected_components(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start as u32];
        seen[start] = true;
        let mut head = 0;
        while head < comp.len() {
            let v = comp[head];
            head += 1;
            for &(w, _) in g.neighbors(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Blocks (bridges and maximal 2-connected subgraphs) as edge sets.
/// Every edge belongs to exactly one block. Blocks are sorted by their
/// smallest edge index.
pub fn blocks(g: &Graph) -> Vec<Bitset> {
    const NONE: u32 = u32::MAX;
    let n = g.vertex_count();
    let m = g.edge_count();
    let mut disc = vec![NONE; n];
    let mut low = vec![0u32; n];
    let mut timer = 0u32;
    let mut estack: Vec<u32> = Vec::new();
    let mut out: Vec<Bitset> = Vec::new();

    // frames: (vertex, edge to parent, adjacency cursor)
    let mut frames: Vec<(u32, u32, usize)> = Vec::new();
    for root in 0..n as u32 {
        if disc[root as usize] != NONE {
            continue;
        }
        disc[root as usize] = timer;
        low[root as usize] = timer;
        timer += 1;
        frames.push((root, NONE, 0));
        while let Some(frame) = frames.last_mut() {
            let (v, pe, cursor) = (frame.0, frame.1, frame.2);
            if cursor < g.neighbors(v).len() {
                frame.2 += 1;
                let (w, e) = g.neighbors(v)[cursor];
                if e == pe {
                    continue;
                }
                if disc[w as usize] == NONE {
                    estack.push(e);
                    disc[w as usize] = timer;
                    low[w as usize] = timer;
                    timer += 1;
                    frames.push((w, e, 0));
                } else if disc[w as usize] < disc[v as usize] {
                    // back edge to an ancestor
                    estack.push(e);
                    low[v as usize] = low[v as usize].min(disc[w as usize]);
                }
            } else {
                frames.pop();
                if let Some(parent) = frames.last() {
                    let p = parent.0;
                    low[p as usize] = low[p as usize].min(low[v as usize]);
                    if low[v as usize] >= disc[p as usize] {
                        let mut blk = Bitset::new(m);
                        while let Some(e) = estack.pop() {
                            blk.insert(e);
                            if e == pe {
                                break;
                            }
                        }
                        out.push(blk);
                    }
                }
            }
        }
    }
    out.sort_by_key(|b| b.min_index());
    out
}
