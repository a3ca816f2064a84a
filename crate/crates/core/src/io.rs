//! Text formats: a plain edge list and the graph6 short form.
//!
//! Edge list: `#` comment lines may appear anywhere, the first other line is
//! `n m`, followed by exactly `m` lines `u v`. Blank lines are ignored.
//!
//! graph6 (orders 1..=62 only): one byte `n + 63`, then the upper triangle
//! in column order `(0,1), (0,2), (1,2), (0,3), ...` packed six bits per
//! byte, most significant first, each byte offset by 63, zero padded.

use crate::error::{Error, Position, Result};
use crate::graph::Graph;

/// Largest order representable in the graph6 short form.
pub const GRAPH6_MAX_ORDER: usize = 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Graph6,
}

impl Format {
    /// Edge lists start with a digit or `#` (after leading whitespace);
    /// anything else is taken as graph6.
    pub fn detect(text: &str) -> Format {
        match text.trim_start().bytes().next() {
            Some(b) if b.is_ascii_digit() || b == b'#' => Format::EdgeList,
            Some(_) => Format::Graph6,
            None => Format::EdgeList,
        }
    }
}

pub fn parse_graph(text: &str, format: Option<Format>) -> Result<Graph> {
    match format.unwrap_or_else(|| Format::detect(text)) {
        Format::EdgeList => parse_edge_list(text),
        Format::Graph6 => parse_graph6(text.trim()),
    }
}

pub fn serialize_graph(g: &Graph, format: Format) -> Result<String> {
    match format {
        Format::EdgeList => Ok(to_edge_list(g)),
        Format::Graph6 => to_graph6(g),
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse_at(Position::Line(1), "missing `n m` header"))?;
    let (n, m) = two_ints(hline, header)?;
    if n == 0 || n > crate::graph::MAX_ORDER {
        return Err(Error::parse_at(
            Position::Line(hline),
            format!("order {n} outside 1..={}", crate::graph::MAX_ORDER),
        ));
    }

    let mut adj = vec![0u64; n];
    let mut seen = 0;
    for (lno, line) in lines {
        if seen == m {
            return Err(Error::parse_at(
                Position::Line(lno),
                format!("more than the declared {m} edges"),
            ));
        }
        let (u, v) = two_ints(lno, line)?;
        if u >= n || v >= n {
            return Err(Error::parse_at(
                Position::Line(lno),
                format!("vertex index out of range for order {n}"),
            ));
        }
        if u == v {
            return Err(Error::parse_at(Position::Line(lno), format!("loop at {u}")));
        }
        if adj[u] >> v & 1 == 1 {
            return Err(Error::parse_at(
                Position::Line(lno),
                format!("duplicate edge {} {}", u.min(v), u.max(v)),
            ));
        }
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
        seen += 1;
    }
    if seen != m {
        return Err(Error::parse_at(
            Position::Line(text.lines().count().max(1)),
            format!("header declares {m} edges but {seen} were given"),
        ));
    }
    Graph::from_adjacency(adj)
}

fn two_ints(lno: usize, line: &str) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let mut next = || -> Result<usize> {
        it.next()
            .ok_or_else(|| Error::parse_at(Position::Line(lno), "expected two integers"))?
            .parse::<usize>()
            .map_err(|e| Error::parse_at(Position::Line(lno), e.to_string()))
    };
    let pair = (next()?, next()?);
    if it.next().is_some() {
        return Err(Error::parse_at(Position::Line(lno), "trailing tokens"));
    }
    Ok(pair)
}

pub fn to_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.order(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let bytes = text.as_bytes();
    let first = *bytes
        .first()
        .ok_or_else(|| Error::parse_at(Position::Byte(0), "empty graph6 string"))?;
    if !(63..=126).contains(&first) {
        return Err(Error::parse_at(Position::Byte(0), "byte outside graph6 range 63..=126"));
    }
    if first == 126 {
        return Err(Error::parse_at(
            Position::Byte(0),
            format!("long graph6 form (order > {GRAPH6_MAX_ORDER}) is not supported"),
        ));
    }
    let n = (first - 63) as usize;
    if n == 0 {
        return Err(Error::parse_at(Position::Byte(0), "order 0 is not representable"));
    }
    let nbits = n * (n - 1) / 2;
    let expect = 1 + nbits.div_ceil(6);
    if bytes.len() != expect {
        return Err(Error::parse_at(
            Position::Byte(bytes.len().min(expect)),
            format!("expected {expect} bytes for order {n}, found {}", bytes.len()),
        ));
    }
    for (i, &b) in bytes.iter().enumerate().skip(1) {
        if !(63..=126).contains(&b) {
            return Err(Error::parse_at(Position::Byte(i), "byte outside graph6 range 63..=126"));
        }
    }
    let bit = |k: usize| (bytes[1 + k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    // Padding bits must be zero.
    if (nbits..(expect - 1) * 6).any(bit) {
        return Err(Error::parse_at(Position::Byte(expect - 1), "nonzero padding bits"));
    }
    let mut adj = vec![0u64; n];
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if bit(k) {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
            k += 1;
        }
    }
    Graph::from_adjacency(adj)
}

pub fn to_graph6(g: &Graph) -> Result<String> {
    let n = g.order();
    if n > GRAPH6_MAX_ORDER {
        return Err(Error::invalid(format!(
            "order {n} needs the long graph6 form, which is not supported"
        )));
    }
    let nbits = n * (n - 1) / 2;
    let mut groups = vec![0u8; nbits.div_ceil(6)];
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if g.has_edge(u, v) {
                groups[k / 6] |= 1 << (5 - k % 6);
            }
            k += 1;
        }
    }
    let mut out = String::with_capacity(1 + groups.len());
    out.push((n as u8 + 63) as char);
    out.extend(groups.into_iter().map(|b| (b + 63) as char));
    Ok(out)
}
