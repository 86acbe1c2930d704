//! graph6 encoding and decoding.
//!
//! A record is a size header followed by the upper triangle of the adjacency
//! matrix in column order (`x01, x02, x12, x03, ...`), packed six bits per
//! byte, most significant bit first, each group offset by 63.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest vertex count representable with the one- or four-byte size header.
pub const MAX_GRAPH6_VERTICES: usize = 258_047;

const HEADER: &str = ">>graph6<<";

fn err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 { offset, reason: reason.into() }
}

fn sextet(bytes: &[u8], offset: usize) -> Result<u32> {
    match bytes.get(offset) {
        Some(&b) if (63..=126).contains(&b) => Ok(u32::from(b - 63)),
        Some(&b) => Err(err(offset, format!("byte {b:#04x} outside the printable range 63..=126"))),
        None => Err(err(offset, "unexpected end of record")),
    }
}

/// Decodes one graph6 record. A trailing line terminator and the optional
/// `>>graph6<<` header are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let line = text.strip_suffix('\n').unwrap_or(text);
    let line = line.strip_suffix('\r').unwrap_or(line);
    let skip = if line.starts_with(HEADER) { HEADER.len() } else { 0 };
    let bytes = line.as_bytes();

    let mut pos = skip;
    let first = *bytes.get(pos).ok_or_else(|| err(pos, "empty record"))?;
    let n = if first == b'~' {
        if bytes.get(pos + 1) == Some(&b'~') {
            return Err(err(pos, "eight-byte size form exceeds the supported vertex range"));
        }
        let mut n = 0usize;
        for i in 1..=3 {
            n = (n << 6) | sextet(bytes, pos + i)? as usize;
        }
        if n < 63 {
            return Err(err(pos, format!("four-byte size form used for n = {n} < 63")));
        }
        pos += 4;
        n
    } else {
        let n = sextet(bytes, pos)? as usize;
        pos += 1;
        n
    };

    let bits = n * n.saturating_sub(1) / 2;
    let payload = bits.div_ceil(6);
    if bytes.len() < pos + payload {
        return Err(err(bytes.len(), format!("truncated payload: expected {payload} bytes for n = {n}")));
    }
    if bytes.len() > pos + payload {
        return Err(err(pos + payload, "trailing bytes after payload"));
    }

    let mut g = Graph::empty(n)?;
    let mut bit = 0usize;
    for v in 1..n {
        for u in 0..v {
            let byte = sextet(bytes, pos + bit / 6)?;
            if (byte >> (5 - bit % 6)) & 1 == 1 {
                g.set_edge(u, v, true);
            }
            bit += 1;
        }
    }
    // padding bits must be zero
    if bits % 6 != 0 {
        let last = pos + payload - 1;
        let byte = sextet(bytes, last)?;
        if byte & ((1 << (6 - bits % 6)) - 1) != 0 {
            return Err(err(last, "nonzero padding bits"));
        }
    } else if payload > 0 {
        sextet(bytes, pos + payload - 1)?;
    }
    Ok(g)
}

/// Encodes a graph as a canonical graph6 record (no header, no newline).
pub fn write_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > MAX_GRAPH6_VERTICES {
        return Err(Error::TooManyVertices { n, max: MAX_GRAPH6_VERTICES });
    }
    let bits = n * n.saturating_sub(1) / 2;
    let mut out = Vec::with_capacity(4 + bits.div_ceil(6));
    if n < 63 {
        out.push(63 + n as u8);
    } else {
        out.push(b'~');
        for shift in [12, 6, 0] {
            out.push(63 + ((n >> shift) & 0x3f) as u8);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | u8::from(g.has_edge(u, v));
            filled += 1;
            if filled == 6 {
                out.push(63 + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (acc << (6 - filled)));
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_is_c_tilde() {
        let k4 = parse_graph6("C~").unwrap();
        assert_eq!(k4.n(), 4);
        assert_eq!(k4.edge_count(), 6);
        assert_eq!(write_graph6(&k4).unwrap(), "C~");
    }

    #[test]
    fn empty_graph_on_zero_vertices() {
        let g = parse_graph6("?").unwrap();
        assert_eq!(g.n(), 0);
        assert_eq!(write_graph6(&g).unwrap(), "?");
    }

    #[test]
    fn known_five_vertex_record() {
        // edges 0-2, 0-4, 1-3, 3-4
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(write_graph6(&g).unwrap(), "DQc");
        assert_eq!(parse_graph6("DQc\n").unwrap(), g);
        assert_eq!(parse_graph6(">>graph6<<DQc").unwrap(), g);
    }

    #[test]
    fn trailing_garbage_is_rejected() {
        assert!(parse_graph6("D??").is_ok());
        match parse_graph6("D???") {
            Err(Error::Graph6 { offset, .. }) => assert_eq!(offset, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn truncated_and_out_of_range() {
        assert!(matches!(parse_graph6("D?"), Err(Error::Graph6 { offset: 2, .. })));
        assert!(matches!(parse_graph6("C "), Err(Error::Graph6 { offset: 1, .. })));
        assert!(matches!(parse_graph6(""), Err(Error::Graph6 { offset: 0, .. })));
        // n = 3 has three bits; the low three bits of the byte are padding
        assert!(matches!(parse_graph6("B@"), Err(Error::Graph6 { .. })));
        assert!(parse_graph6("Bw").is_ok());
    }

    #[test]
    fn four_byte_size_header() {
        let g = Graph::path(100).unwrap();
        let s = write_graph6(&g).unwrap();
        assert_eq!(&s[..4], "~?@c");
        assert_eq!(parse_graph6(&s).unwrap(), g);
        let small = format!("~??{}", (63 + 10) as u8 as char);
        assert!(parse_graph6(&small).is_err());
    }
}
