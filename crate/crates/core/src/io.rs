//! graph6 and DIMACS `col` readers and writers.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

const G6_HEADER: &str = ">>graph6<<";

/// Decode one graph6 line. Surrounding whitespace and the optional
/// `>>graph6<<` header are accepted; anything else malformed is reported with
/// the byte offset where decoding failed.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let lead = text.len() - text.trim_start().len();
    let mut body = text.trim();
    let mut base = lead;
    if let Some(rest) = body.strip_prefix(G6_HEADER) {
        body = rest;
        base += G6_HEADER.len();
    }
    let bytes = body.as_bytes();
    if bytes.is_empty() {
        return Err(Error::parse(base, "empty graph6 string"));
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::parse(base + i, format!("byte {b} outside 63..=126")));
        }
    }

    let (n, mut pos) = if bytes[0] < 126 {
        ((bytes[0] - 63) as usize, 1)
    } else {
        if bytes.len() < 4 {
            return Err(Error::parse(base + bytes.len(), "truncated size header"));
        }
        if bytes[1] == 126 {
            return Err(Error::parse(base + 1, "36-bit sizes are not supported"));
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
        if n <= 62 {
            return Err(Error::parse(base, "non-canonical size header"));
        }
        (n, 4)
    };
    if n > MAX_VERTICES {
        return Err(Error::Capacity {
            what: "graph6 input",
            requested: n,
            limit: MAX_VERTICES,
        });
    }

    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    if bytes.len() - pos < nbytes {
        return Err(Error::parse(
            base + bytes.len(),
            format!("truncated payload: expected {nbytes} bytes, found {}", bytes.len() - pos),
        ));
    }
    if bytes.len() - pos > nbytes {
        return Err(Error::parse(base + pos + nbytes, "trailing bytes after payload"));
    }

    let mut g = Graph::empty(n)?;
    let mut k = 0;
    'outer: for j in 1..n {
        for i in 0..j {
            let byte = bytes[pos + k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
            if k == nbits {
                break 'outer;
            }
        }
    }
    if nbits % 6 != 0 {
        let last = bytes[pos + nbytes - 1] - 63;
        let pad = 6 - nbits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Error::parse(base + pos + nbytes - 1, "nonzero padding bits"));
        }
    }
    pos += nbytes;
    debug_assert_eq!(pos, bytes.len());
    Ok(g)
}

/// Canonical graph6 encoding, without header or newline.
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push((n >> shift & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            k += 1;
            if k == 6 {
                out.push(acc + 63);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Parse DIMACS `col` text (`p edge n m`, `e u v` with 1-based vertices,
/// `c` comment lines). Duplicate edges are merged.
pub fn parse_dimacs_col(text: &str) -> Result<Graph> {
    let mut g: Option<Graph> = None;
    let mut declared = 0usize;
    let mut seen = 0usize;
    let mut offset = 0usize;
    for line in text.split_inclusive('\n') {
        let here = offset;
        offset += line.len();
        let mut tok = line.split_whitespace();
        match tok.next() {
            None | Some("c") => {}
            Some("p") => {
                if g.is_some() {
                    return Err(Error::parse(here, "duplicate problem line"));
                }
                if !matches!(tok.next(), Some("edge" | "col")) {
                    return Err(Error::parse(here, "expected `p edge n m`"));
                }
                let n = parse_num(tok.next(), here)?;
                declared = parse_num(tok.next(), here)?;
                g = Some(Graph::empty(n).map_err(|e| match e {
                    Error::Capacity { .. } => e,
                    _ => Error::parse(here, "bad vertex count"),
                })?);
            }
            Some("e") => {
                let graph = g
                    .as_mut()
                    .ok_or_else(|| Error::parse(here, "edge before problem line"))?;
                let u = parse_num(tok.next(), here)?;
                let v = parse_num(tok.next(), here)?;
                if u == 0 || v == 0 || u > graph.n() || v > graph.n() {
                    return Err(Error::parse(here, format!("vertex out of range in edge {u} {v}")));
                }
                if u == v {
                    return Err(Error::parse(here, format!("self-loop at {u}")));
                }
                graph.add_edge(u - 1, v - 1);
                seen += 1;
            }
            Some(other) => {
                return Err(Error::parse(here, format!("unknown line type `{other}`")));
            }
        }
    }
    let g = g.ok_or_else(|| Error::parse(offset, "missing problem line"))?;
    if seen != declared {
        return Err(Error::parse(
            offset,
            format!("problem line declares {declared} edges, found {seen}"),
        ));
    }
    Ok(g)
}

fn parse_num(tok: Option<&str>, offset: usize) -> Result<usize> {
    tok.and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::parse(offset, "expected a non-negative integer"))
}

pub fn emit_dimacs_col(g: &Graph) -> String {
    let mut s = String::new();
    writeln!(s, "p edge {} {}", g.n(), g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(s, "e {} {}", u + 1, v + 1).unwrap();
    }
    s
}
