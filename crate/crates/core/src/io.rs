//! graph6 (short form) and plain edge-list text formats.
//!
//! graph6 stores `n + 63` in one byte, then the upper triangle of the
//! adjacency matrix column by column (`x(0,1), x(0,2), x(1,2), x(0,3), ...`)
//! packed six bits per byte, high bit first, each byte offset by 63.

use std::io::BufRead;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest vertex count expressible in the one-byte header.
pub const GRAPH6_SHORT_MAX: usize = 62;

fn g6_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        message: message.into(),
    }
}

/// Decodes one graph6 line. A single trailing `\n` or `\r\n` is tolerated.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let line = text
        .strip_suffix('\n')
        .map(|s| s.strip_suffix('\r').unwrap_or(s))
        .unwrap_or(text);
    let bytes = line.as_bytes();
    let header = *bytes.first().ok_or_else(|| g6_err(0, "empty input"))?;
    if header == b'~' {
        return Err(g6_err(0, "long-form header is not supported"));
    }
    if !(63..=126).contains(&header) {
        return Err(g6_err(0, format!("invalid header byte 0x{header:02x}")));
    }
    let n = (header - 63) as usize;
    let bits = n * n.saturating_sub(1) / 2;
    let body_len = bits.div_ceil(6);
    for (i, &b) in bytes.iter().enumerate().skip(1) {
        if !(63..=126).contains(&b) {
            return Err(g6_err(i, format!("invalid data byte 0x{b:02x}")));
        }
    }
    if bytes.len() < 1 + body_len {
        return Err(g6_err(bytes.len(), format!("truncated: expected {body_len} data bytes for n={n}")));
    }
    if bytes.len() > 1 + body_len {
        return Err(g6_err(1 + body_len, "trailing bytes after graph data"));
    }

    let mut g = Graph::new(n);
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            let byte = bytes[1 + k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(u, v)?;
            }
            k += 1;
        }
    }
    if !bits.is_multiple_of(6) {
        let last = bytes[body_len] - 63;
        let pad = 6 - bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(g6_err(body_len, "nonzero padding bits"));
        }
    }
    Ok(g)
}

/// Encodes the labeled graph (no canonical relabeling).
pub fn to_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > GRAPH6_SHORT_MAX {
        return Err(Error::UnsupportedSize(n));
    }
    let bits = n * n.saturating_sub(1) / 2;
    let mut body = vec![0u8; bits.div_ceil(6)];
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if g.has_edge(u, v) {
                body[k / 6] |= 1 << (5 - k % 6);
            }
            k += 1;
        }
    }
    let mut out = String::with_capacity(1 + body.len());
    out.push((n as u8 + 63) as char);
    out.extend(body.into_iter().map(|b| (b + 63) as char));
    Ok(out)
}

/// Reads every non-blank line of a graph6 stream. An optional `>>graph6<<`
/// prefix on a line is skipped.
pub fn read_graph6_stream(reader: impl BufRead) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for line in reader.lines() {
        let line = line?;
        let line = line.trim_end();
        let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
        if !line.is_empty() {
            out.push(parse_graph6(line)?);
        }
    }
    Ok(out)
}

fn el_err(line: usize, message: impl Into<String>) -> Error {
    Error::EdgeList {
        line,
        message: message.into(),
    }
}

/// Parses `"n m"` followed by `m` lines `"u v"`. Blank lines are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let parse_pair = |line: usize, l: &str| -> Result<(usize, usize)> {
        let mut it = l.split_whitespace();
        let mut next = || -> Result<usize> {
            it.next()
                .ok_or_else(|| el_err(line, "expected two integers"))?
                .parse()
                .map_err(|_| el_err(line, format!("not a non-negative integer: {l:?}")))
        };
        let pair = (next()?, next()?);
        if it.next().is_some() {
            return Err(el_err(line, "expected exactly two integers"));
        }
        Ok(pair)
    };

    let (hline, header) = lines.next().ok_or_else(|| el_err(1, "missing header line"))?;
    let (n, m) = parse_pair(hline, header)?;
    let mut g = Graph::new(n);
    let mut seen = 0;
    for (line, l) in lines {
        let (u, v) = parse_pair(line, l)?;
        if u >= n || v >= n {
            return Err(el_err(line, format!("vertex out of range for n={n}")));
        }
        if u == v {
            return Err(el_err(line, format!("loop at vertex {u}")));
        }
        if g.has_edge(u, v) {
            return Err(el_err(line, format!("duplicate edge {u} {v}")));
        }
        g.add_edge(u, v)?;
        seen += 1;
    }
    if seen != m {
        return Err(el_err(hline, format!("header declares {m} edges, found {seen}")));
    }
    Ok(g)
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
