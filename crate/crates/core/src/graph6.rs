//! graph6 parsing and encoding.
//!
//! The format packs the upper triangle of the adjacency matrix into 6-bit
//! groups offset by 63, with bit order (0,1), (0,2), (1,2), (0,3), ... and a
//! length prefix: `chr(63+n)` for n <= 62, `126` followed by three 6-bit
//! bytes for n <= 258047, and `126 126` followed by six 6-bit bytes above
//! that. An optional `>>graph6<<` header is accepted.

use std::error::Error;
use std::fmt;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    Empty,
    BadLengthPrefix { offset: usize },
    InvalidChar { offset: usize, byte: u8 },
    UnexpectedEnd { offset: usize },
    TrailingData { offset: usize },
    TooLarge { vertices: u64 },
}

impl fmt::Display for Graph6Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Graph6Error::Empty => write!(f, "empty graph6 input"),
            Graph6Error::BadLengthPrefix { offset } => {
                write!(f, "malformed length prefix at byte {offset}")
            }
            Graph6Error::InvalidChar { offset, byte } => {
                write!(f, "byte {offset}: invalid graph6 character 0x{byte:02x}")
            }
            Graph6Error::UnexpectedEnd { offset } => {
                write!(f, "input ends early at byte {offset}")
            }
            Graph6Error::TrailingData { offset } => {
                write!(f, "trailing data starting at byte {offset}")
            }
            Graph6Error::TooLarge { vertices } => {
                write!(f, "graph with {vertices} vertices is not supported")
            }
        }
    }
}

impl Error for Graph6Error {}

const HEADER: &str = ">>graph6<<";

fn sextet(bytes: &[u8], offset: usize) -> Result<u64, Graph6Error> {
    match bytes.get(offset) {
        None => Err(Graph6Error::UnexpectedEnd { offset }),
        Some(&b) if (63..=126).contains(&b) => Ok((b - 63) as u64),
        Some(&b) => Err(Graph6Error::InvalidChar { offset, byte: b }),
    }
}

pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let mut s = text.trim();
    if let Some(rest) = s.strip_prefix(HEADER) {
        s = rest;
    }
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }

    let mut pos;
    let n: u64 = if bytes[0] == 126 {
        if bytes.get(1) == Some(&126) {
            pos = 2;
            let mut v = 0u64;
            for _ in 0..6 {
                v = v << 6 | sextet(bytes, pos)?;
                pos += 1;
            }
            v
        } else {
            pos = 1;
            let mut v = 0u64;
            for _ in 0..3 {
                v = v << 6 | sextet(bytes, pos)?;
                pos += 1;
            }
            v
        }
    } else {
        let v = sextet(bytes, 0).map_err(|_| Graph6Error::BadLengthPrefix { offset: 0 })?;
        pos = 1;
        v
    };
    if n > 100_000 {
        return Err(Graph6Error::TooLarge { vertices: n });
    }
    let n = n as usize;

    let pair_bits = n * n.saturating_sub(1) / 2;
    let body_bytes = pair_bits.div_ceil(6);
    let mut edges = Vec::new();
    let mut cur = 0u64;
    let mut cur_left = 0usize;
    for col in 1..n {
        for row in 0..col {
            if cur_left == 0 {
                cur = sextet(bytes, pos)?;
                pos += 1;
                cur_left = 6;
            }
            let bit = cur >> (cur_left - 1) & 1;
            cur_left -= 1;
            if bit == 1 {
                edges.push((row as u32, col as u32));
            }
        }
    }
    let expected_end = match () {
        _ if bytes[0] == 126 && bytes.get(1) == Some(&126) => 8 + body_bytes,
        _ if bytes[0] == 126 => 4 + body_bytes,
        _ => 1 + body_bytes,
    };
    if bytes.len() > expected_end {
        return Err(Graph6Error::TrailingData { offset: expected_end });
    }
    if bytes.len() < expected_end {
        return Err(Graph6Error::UnexpectedEnd { offset: bytes.len() });
    }
    Ok(Graph::from_edges(n, &edges).expect("graph6 bits describe a simple graph"))
}

pub fn encode_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(63 + n as u8);
    } else if n <= 258_047 {
        out.push(126);
        let v = n as u64;
        for shift in [12, 6, 0] {
            out.push(63 + (v >> shift & 63) as u8);
        }
    } else {
        out.push(126);
        out.push(126);
        let v = n as u64;
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(63 + (v >> shift & 63) as u8);
        }
    }
    let mut cur = 0u8;
    let mut used = 0usize;
    for col in 1..n as u32 {
        for row in 0..col {
            cur <<= 1;
            if g.has_edge(row, col) {
                cur |= 1;
            }
            used += 1;
            if used == 6 {
                out.push(63 + cur);
                cur = 0;
                used = 0;
            }
        }
    }
    if used > 0 {
        cur <<= 6 - used;
        out.push(63 + cur);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_encodings_decode() {
        let k2 = parse_graph6("A_").unwrap();
        assert_eq!(k2.vertex_count(), 2);
        assert_eq!(k2.edges(), &[(0, 1)]);

        let k3 = parse_graph6("Bw").unwrap();
        assert_eq!(k3.vertex_count(), 3);
        assert_eq!(k3.edges(), &[(0, 1), (0, 2), (1, 2)]);

        let k4 = parse_graph6("C~").unwrap();
        assert_eq!(k4.vertex_count(), 4);
        assert_eq!(k4.edge_count(), 6);

        // 5 vertices, edges 0-2, 0-4, 1-3, 3-4
        let g = parse_graph6("DQc").unwrap();
        assert_eq!(g.vertex_count(), 5);
        let mut e = g.edges().to_vec();
        e.sort_unstable();
        assert_eq!(e, vec![(0, 2), (0, 4), (1, 3), (3, 4)]);
    }

    #[test]
    fn reference_encodings_encode() {
        let k3 = Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(encode_graph6(&k3), "Bw");
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode_graph6(&g), "DQc");
    }

    #[test]
    fn header_is_accepted() {
        let g = parse_graph6(">>graph6<<A_").unwrap();
        assert_eq!(g.edges(), &[(0, 1)]);
    }

    #[test]
    fn errors_name_offsets() {
        assert_eq!(parse_graph6(""), Err(Graph6Error::Empty));
        assert_eq!(
            parse_graph6("A_X"),
            Err(Graph6Error::TrailingData { offset: 2 })
        );
        assert_eq!(parse_graph6("B"), Err(Graph6Error::UnexpectedEnd { offset: 1 }));
        assert!(matches!(
            parse_graph6("C\tq"),
            Err(Graph6Error::InvalidChar { offset: 1, .. })
        ));
        assert!(matches!(
            parse_graph6("\u{1}_"),
            Err(Graph6Error::BadLengthPrefix { offset: 0 })
        ));
    }

    #[test]
    fn long_form_round_trip() {
        // 63 vertices forces the three-byte length prefix
        let edges: Vec<(u32, u32)> = (0..62).map(|i| (i, i + 1)).collect();
        let g = Graph::from_edges(63, &edges).unwrap();
        let s = encode_graph6(&g);
        assert_eq!(s.as_bytes()[0], 126);
        let back = parse_graph6(&s).unwrap();
        assert_eq!(back, g);
    }
}
