//! graph6 encoding and decoding.
//!
//! The format packs the upper triangle of the adjacency matrix column by
//! column (x(0,1), x(0,2), x(1,2), x(0,3), ...) into 6-bit groups offset by
//! 63 into printable ASCII, after a size header. Decoding is strict: stray
//! bytes, short input, and nonzero padding are all rejected.

use crate::graph::{Graph, GraphError};

const OFFSET: u8 = 63;
const MAX_SHORT_N: usize = 62;
const MAX_LONG_N: usize = 258_047; // 18-bit size header

fn malformed(msg: impl Into<String>) -> GraphError {
    GraphError::MalformedGraph6(msg.into())
}

/// Decode one graph6 line. A leading `>>graph6<<` header is tolerated.
pub fn parse_graph6(line: &str) -> Result<Graph, GraphError> {
    let line = line
        .strip_prefix(">>graph6<<")
        .unwrap_or(line)
        .trim_end_matches(['\r', '\n']);
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(malformed("empty line"));
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(OFFSET..=126).contains(&b)) {
        return Err(malformed(format!("byte {b:#04x} outside graph6 range")));
    }
    let (n, mut pos) = if bytes[0] != b'~' {
        ((bytes[0] - OFFSET) as usize, 1)
    } else if bytes.len() >= 2 && bytes[1] != b'~' {
        if bytes.len() < 4 {
            return Err(malformed("truncated size header"));
        }
        let mut n = 0usize;
        for &b in &bytes[1..4] {
            n = (n << 6) | (b - OFFSET) as usize;
        }
        (n, 4)
    } else {
        // The 8-byte (36-bit) header exists in the format but graphs that
        // large are far outside this crate's working range.
        return Err(malformed(
            "graphs beyond the 18-bit size header are not supported",
        ));
    };
    if n > MAX_LONG_N {
        return Err(malformed(format!("vertex count {n} out of range")));
    }

    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    if bytes.len() - pos != nbytes {
        return Err(malformed(format!(
            "expected {} data bytes for n = {n}, found {}",
            nbytes,
            bytes.len() - pos
        )));
    }

    let mut edges = Vec::new();
    let mut bit = 0usize;
    let mut cur = 0u8;
    let mut remaining = 0u8;
    for col in 1..n {
        for row in 0..col {
            if remaining == 0 {
                cur = bytes[pos] - OFFSET;
                pos += 1;
                remaining = 6;
            }
            if cur & 0b10_0000 != 0 {
                edges.push((row, col));
            }
            cur <<= 1;
            cur &= 0b11_1111;
            remaining -= 1;
            bit += 1;
        }
    }
    debug_assert_eq!(bit, nbits);
    if remaining > 0 && cur != 0 {
        return Err(malformed("nonzero padding bits"));
    }
    Graph::new(n, &edges)
}

/// Encode a graph as a graph6 line (no trailing newline).
pub fn emit_graph6(g: &Graph) -> Result<String, GraphError> {
    let n = g.n();
    if n > MAX_LONG_N {
        return Err(GraphError::BadParams(format!(
            "graph6 emission supports at most {MAX_LONG_N} vertices, got {n}"
        )));
    }
    let mut out = Vec::new();
    if n <= MAX_SHORT_N {
        out.push(n as u8 + OFFSET);
    } else {
        out.push(b'~');
        out.push(((n >> 12) & 0x3f) as u8 + OFFSET);
        out.push(((n >> 6) & 0x3f) as u8 + OFFSET);
        out.push((n & 0x3f) as u8 + OFFSET);
    }
    let mut cur = 0u8;
    let mut filled = 0u8;
    for col in 1..n {
        for row in 0..col {
            cur <<= 1;
            if g.has_edge(row, col) {
                cur |= 1;
            }
            filled += 1;
            if filled == 6 {
                out.push(cur + OFFSET);
                cur = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((cur << (6 - filled)) + OFFSET);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are printable ASCII"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, hypercube, path};

    #[test]
    fn k2_emits_as_a_underscore() {
        assert_eq!(emit_graph6(&path(2)).unwrap(), "A_");
    }

    #[test]
    fn star_example_decodes() {
        // 'D' = 5 vertices; "?{" unpacks to the star with center 4.
        let g = parse_graph6("D?{").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edges(), &[(0, 4), (1, 4), (2, 4), (3, 4)]);
    }

    #[test]
    fn header_prefix_and_line_endings_tolerated() {
        assert_eq!(parse_graph6(">>graph6<<A_").unwrap(), path(2));
        assert_eq!(parse_graph6("A_\n").unwrap(), path(2));
    }

    #[test]
    fn empty_and_trash_rejected() {
        assert!(matches!(
            parse_graph6(""),
            Err(GraphError::MalformedGraph6(_))
        ));
        assert!(matches!(
            parse_graph6("A_ "),
            Err(GraphError::MalformedGraph6(_))
        ));
        assert!(matches!(
            parse_graph6("A"),
            Err(GraphError::MalformedGraph6(_))
        ));
        assert!(matches!(
            parse_graph6("A__"),
            Err(GraphError::MalformedGraph6(_))
        ));
        // 'B' is 3 vertices with nonzero padding in the low bits.
        assert!(matches!(
            parse_graph6("B\x7f"),
            Err(GraphError::MalformedGraph6(_))
        ));
    }

    #[test]
    fn round_trip_families() {
        for g in [
            path(1),
            path(2),
            cycle(5),
            complete(4),
            hypercube(3),
            complete(1),
        ] {
            let enc = emit_graph6(&g).unwrap();
            assert_eq!(parse_graph6(&enc).unwrap(), g, "{enc}");
        }
    }

    #[test]
    fn round_trip_large_header() {
        let g = path(80);
        let enc = emit_graph6(&g).unwrap();
        assert!(enc.starts_with('~'));
        assert_eq!(parse_graph6(&enc).unwrap(), g);
    }

    #[test]
    fn zero_vertex_graph() {
        let g = Graph::new(0, &[]).unwrap();
        let enc = emit_graph6(&g).unwrap();
        assert_eq!(enc, "?");
        assert_eq!(parse_graph6(&enc).unwrap(), g);
    }
}
