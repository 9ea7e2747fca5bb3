//! graph6 encoding (B. McKay): size prefix N(n) followed by the upper
//! triangle of the adjacency matrix in column-major order, six bits per
//! byte, each byte offset by 63.

use thiserror::Error;

use super::{Edge, Graph};

const HEADER: &str = ">>graph6<<";
const MAX_ORDER: u64 = 68_719_476_735;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty input")]
    Empty,
    #[error("malformed length prefix at byte {offset}")]
    BadLength { offset: usize },
    #[error("byte {byte:#04x} at offset {offset} is outside 63..=126")]
    ByteOutOfRange { offset: usize, byte: u8 },
    #[error("payload truncated at byte {offset}: expected {expected} payload bytes")]
    Truncated { offset: usize, expected: usize },
    #[error("trailing garbage at byte {offset}")]
    TrailingGarbage { offset: usize },
    #[error("order {0} exceeds the graph6 limit")]
    TooLarge(usize),
}

fn sixbits(bytes: &[u8], offset: usize) -> Result<u8, Graph6Error> {
    match bytes.get(offset) {
        Some(&b) if (63..=126).contains(&b) => Ok(b - 63),
        Some(&b) => Err(Graph6Error::ByteOutOfRange { offset, byte: b }),
        None => Err(Graph6Error::BadLength { offset }),
    }
}

/// Parses one graph6 line. A trailing newline is tolerated.
pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let line = text.strip_suffix('\n').unwrap_or(text);
    let line = line.strip_suffix('\r').unwrap_or(line);
    let start = if line.starts_with(HEADER) { HEADER.len() } else { 0 };
    let bytes = line.as_bytes();
    if bytes.len() == start {
        return Err(Graph6Error::Empty);
    }

    let mut pos = start;
    let first = sixbits(bytes, pos)?;
    let n: u64 = if first < 63 {
        pos += 1;
        first as u64
    } else if sixbits(bytes, pos + 1).map_err(|_| Graph6Error::BadLength { offset: pos + 1 })? < 63 {
        let mut value = 0u64;
        for i in 1..=3 {
            value = (value << 6) | sixbits(bytes, pos + i)? as u64;
        }
        pos += 4;
        value
    } else {
        let mut value = 0u64;
        for i in 2..=7 {
            value = (value << 6) | sixbits(bytes, pos + i)? as u64;
        }
        pos += 8;
        value
    };
    let n = usize::try_from(n).map_err(|_| Graph6Error::TooLarge(usize::MAX))?;

    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    let payload = &bytes[pos..];
    if payload.len() < expected {
        return Err(Graph6Error::Truncated {
            offset: bytes.len(),
            expected,
        });
    }
    if payload.len() > expected {
        return Err(Graph6Error::TrailingGarbage { offset: pos + expected });
    }

    let mut edges = Vec::new();
    let mut k = 0;
    'outer: for j in 1..n {
        for i in 0..j {
            let byte = sixbits(bytes, pos + k / 6)?;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push(Edge::new(i, j));
            }
            k += 1;
            if k == bits {
                break 'outer;
            }
        }
    }
    // validate padding bytes are in range even when no bit is read from them
    for offset in pos..pos + expected {
        sixbits(bytes, offset)?;
    }
    Ok(Graph::from_edge_set(n, edges))
}

/// Encodes `g` without header or newline.
pub fn write_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.order();
    if n as u64 > MAX_ORDER {
        return Err(Graph6Error::TooLarge(n));
    }
    let mut out = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}
