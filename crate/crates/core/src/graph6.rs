//! graph6 encoding, short-form header only (`n <= 62`).
//!
//! The header is the byte `n + 63`. The upper triangle of the adjacency
//! matrix follows in column order `x(0,1), x(0,2), x(1,2), x(0,3), ..`,
//! packed big-endian into 6-bit groups, each group offset by 63. Unused
//! trailing bits are zero.

use thiserror::Error;

use crate::graph::Graph;

/// Largest order representable with a one-byte header.
pub const MAX_ORDER: usize = 62;

/// Optional header some catalogs put in front of each line.
pub const HEADER_PREFIX: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {offset}: {byte:#04x} is outside the graph6 range 63..=126")]
    OutOfRange { offset: usize, byte: u8 },
    #[error("byte 0: order {0} needs a long-form header, only n <= 62 is supported")]
    UnsupportedOrder(usize),
    #[error("byte {offset}: expected {expected} data bytes, found {found}")]
    Length {
        offset: usize,
        expected: usize,
        found: usize,
    },
    #[error("byte {offset}: padding bits are not zero")]
    NonzeroPadding { offset: usize },
    #[error("graph of order {0} exceeds the short-form limit of 62")]
    TooLarge(usize),
}

fn data_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

/// Parses one graph6 line. A leading `>>graph6<<` and trailing line break
/// are stripped; vertex labels are preserved as encoded.
pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let text = text.strip_suffix('\n').unwrap_or(text);
    let text = text.strip_suffix('\r').unwrap_or(text);
    let (skip, body) = match text.strip_prefix(HEADER_PREFIX) {
        Some(rest) => (HEADER_PREFIX.len(), rest),
        None => (0, text),
    };
    let bytes = body.as_bytes();
    let &header = bytes.first().ok_or(Graph6Error::Empty)?;
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::OutOfRange {
                offset: skip + i,
                byte: b,
            });
        }
    }
    let n = (header - 63) as usize;
    if n > MAX_ORDER {
        return Err(Graph6Error::UnsupportedOrder(n));
    }
    let data = &bytes[1..];
    let expected = data_len(n);
    if data.len() != expected {
        return Err(Graph6Error::Length {
            offset: skip + 1 + data.len().min(expected),
            expected,
            found: data.len(),
        });
    }

    let bits = n * n.saturating_sub(1) / 2;
    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            let group = data[k / 6] - 63;
            if (group >> (5 - k % 6)) & 1 == 1 {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    if !bits.is_multiple_of(6) {
        let last = data[expected - 1] - 63;
        let pad = 6 - bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Graph6Error::NonzeroPadding {
                offset: skip + expected,
            });
        }
    }
    edges.sort_unstable();
    Ok(Graph::from_sorted_unchecked(n, edges))
}

pub fn write_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.n();
    if n > MAX_ORDER {
        return Err(Graph6Error::TooLarge(n));
    }
    let mut data = vec![0u8; data_len(n)];
    for &(u, v) in g.edges() {
        // column-major position of (u, v), u < v
        let k = v * (v - 1) / 2 + u;
        data[k / 6] |= 1 << (5 - k % 6);
    }
    let mut out = String::with_capacity(1 + data.len());
    out.push((n as u8 + 63) as char);
    out.extend(data.into_iter().map(|b| (b + 63) as char));
    Ok(out)
}
