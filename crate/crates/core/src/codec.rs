//! Interchange formats: digraph6 and graph6 (bit-exact, as used by the
//! usual graph tooling) plus a plain edge-list text format.
//!
//! digraph6 is '&', the size encoding, then ceil(n^2/6) payload bytes
//! holding the adjacency matrix bits in row-major order, six bits per
//! byte offset by 63. graph6 is the size encoding followed by the upper
//! triangle in column order. Padding bits must be zero.

use crate::error::{Error, Result};
use crate::graph::{OrientedGraph, SimpleGraph};

const OFFSET: u8 = 63;

fn encode_size(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + OFFSET);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + OFFSET);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + OFFSET);
        }
    }
}

/// Returns (n, bytes consumed).
fn decode_size(bytes: &[u8]) -> Result<(usize, usize)> {
    let err = || Error::MalformedHeader("truncated or invalid size encoding".into());
    let b0 = *bytes.first().ok_or_else(err)?;
    if b0 != 126 {
        if !(OFFSET..=125).contains(&b0) {
            return Err(err());
        }
        return Ok(((b0 - OFFSET) as usize, 1));
    }
    let b1 = *bytes.get(1).ok_or_else(err)?;
    let (count, skip) = if b1 != 126 { (3, 1) } else { (6, 2) };
    let mut n = 0usize;
    for i in 0..count {
        let b = *bytes.get(skip + i).ok_or_else(err)?;
        if !(OFFSET..=126).contains(&b) {
            return Err(err());
        }
        n = (n << 6) | (b - OFFSET) as usize;
    }
    Ok((n, skip + count))
}

fn pack_bits(bits: &[bool], out: &mut Vec<u8>) {
    for chunk in bits.chunks(6) {
        let mut value = 0u8;
        for (i, &bit) in chunk.iter().enumerate() {
            if bit {
                value |= 1 << (5 - i);
            }
        }
        out.push(value + OFFSET);
    }
}

fn unpack_bits(payload: &[u8], nbits: usize) -> Result<Vec<bool>> {
    let expected = nbits.div_ceil(6);
    if payload.len() != expected {
        return Err(Error::BadLength {
            expected,
            got: payload.len(),
        });
    }
    let mut bits = Vec::with_capacity(payload.len() * 6);
    for &b in payload {
        if !(OFFSET..=126).contains(&b) {
            return Err(Error::BadLength {
                expected,
                got: payload.len(),
            });
        }
        let v = b - OFFSET;
        for i in 0..6 {
            bits.push(v & (1 << (5 - i)) != 0);
        }
    }
    if bits[nbits..].iter().any(|&b| b) {
        return Err(Error::MalformedInput("non-zero padding bits".into()));
    }
    bits.truncate(nbits);
    Ok(bits)
}

pub fn emit_digraph6(g: &OrientedGraph) -> String {
    let n = g.vertex_count();
    let mut bits = vec![false; n * n];
    for &(u, v) in g.arcs() {
        bits[u * n + v] = true;
    }
    let mut out = vec![b'&'];
    encode_size(n, &mut out);
    pack_bits(&bits, &mut out);
    String::from_utf8(out).expect("digraph6 output is ASCII")
}

pub fn parse_digraph6(text: &str) -> Result<OrientedGraph> {
    let bytes = text.trim_end().as_bytes();
    if bytes.first() != Some(&b'&') {
        return Err(Error::MalformedHeader(
            "digraph6 must start with '&'".into(),
        ));
    }
    let (n, used) = decode_size(&bytes[1..])?;
    let bits = unpack_bits(&bytes[1 + used..], n * n)?;
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if bits[u * n + v] {
                arcs.push((u, v));
            }
        }
    }
    // Loops and digons in the bit matrix surface as LoopArc / DigonArc.
    OrientedGraph::new(n, &arcs)
}

pub fn emit_graph6(g: &SimpleGraph) -> String {
    let n = g.vertex_count();
    let mut bits = Vec::with_capacity(n * (n - 1) / 2);
    for j in 1..n {
        for i in 0..j {
            bits.push(g.has_edge(i, j));
        }
    }
    let mut out = Vec::new();
    encode_size(n, &mut out);
    pack_bits(&bits, &mut out);
    String::from_utf8(out).expect("graph6 output is ASCII")
}

pub fn parse_graph6(text: &str) -> Result<SimpleGraph> {
    let bytes = text.trim_end().as_bytes();
    if bytes.first() == Some(&b'&') {
        return Err(Error::MalformedHeader(
            "found digraph6 header where graph6 was expected".into(),
        ));
    }
    let (n, used) = decode_size(bytes)?;
    let bits = unpack_bits(&bytes[used..], n * (n - 1) / 2)?;
    let mut edges = Vec::new();
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[idx] {
                edges.push((i, j));
            }
            idx += 1;
        }
    }
    SimpleGraph::new(n, &edges)
}

/// Parses "u v" arc lines (tail first). Blank lines and '#' comments are
/// skipped; the order is max endpoint + 1, so isolated trailing vertices
/// cannot be expressed in this format.
pub fn parse_edge_list(text: &str) -> Result<OrientedGraph> {
    let mut arcs = Vec::new();
    let mut max = None::<usize>;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let parse = |tok: Option<&str>| -> Result<usize> {
            tok.ok_or_else(|| {
                Error::MalformedInput(format!("line {}: expected 'u v'", lineno + 1))
            })?
            .parse()
            .map_err(|_| Error::MalformedInput(format!("line {}: expected 'u v'", lineno + 1)))
        };
        let u = parse(parts.next())?;
        let v = parse(parts.next())?;
        if parts.next().is_some() {
            return Err(Error::MalformedInput(format!(
                "line {}: trailing tokens",
                lineno + 1
            )));
        }
        max = Some(max.map_or(u.max(v), |m: usize| m.max(u).max(v)));
        arcs.push((u, v));
    }
    let n = max.map_or(0, |m| m + 1);
    OrientedGraph::new(n, &arcs)
}

pub fn emit_edge_list(g: &OrientedGraph) -> String {
    let mut out = String::new();
    for &(u, v) in g.arcs() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digraph6_single_arc() {
        let g = parse_digraph6("&AO").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.arcs(), &[(0, 1)]);
        assert_eq!(emit_digraph6(&g), "&AO");
    }

    #[test]
    fn digraph6_empty_two_vertices() {
        let g = parse_digraph6("&A?").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert!(g.arcs().is_empty());
    }

    #[test]
    fn digraph6_rejects_missing_header() {
        assert!(matches!(
            parse_digraph6("AO"),
            Err(Error::MalformedHeader(_))
        ));
    }

    #[test]
    fn digraph6_rejects_bad_length() {
        assert!(matches!(parse_digraph6("&A"), Err(Error::BadLength { .. })));
        assert!(matches!(
            parse_digraph6("&AOO"),
            Err(Error::BadLength { .. })
        ));
    }

    #[test]
    fn digraph6_rejects_loops_and_digons() {
        // n=2, bits 1000: loop at 0.
        assert!(matches!(parse_digraph6("&Aw"), Err(Error::LoopArc(_))));
        // n=2, bits 0110: both (0,1) and (1,0).
        assert!(matches!(parse_digraph6("&AW"), Err(Error::DigonArc(..))));
    }

    #[test]
    fn graph6_k4() {
        let g = parse_graph6("C~").unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 6);
        assert_eq!(emit_graph6(&g), "C~");
    }

    #[test]
    fn graph6_length_check() {
        assert!(matches!(parse_graph6("D?"), Err(Error::BadLength { .. })));
        let empty5 = parse_graph6("D??").unwrap();
        assert_eq!(empty5.vertex_count(), 5);
        assert_eq!(empty5.edge_count(), 0);
    }

    #[test]
    fn size_encoding_round_trips_large_orders() {
        for n in [0usize, 1, 62, 63, 64, 1000, 258_047, 258_048] {
            let mut buf = Vec::new();
            encode_size(n, &mut buf);
            let (back, used) = decode_size(&buf).unwrap();
            assert_eq!((back, used), (n, buf.len()));
        }
    }

    #[test]
    fn edge_list_round_trip() {
        let g = OrientedGraph::new(4, &[(0, 1), (1, 2), (3, 1)]).unwrap();
        let text = emit_edge_list(&g);
        let back = parse_edge_list(&text).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn edge_list_rejects_garbage() {
        assert!(parse_edge_list("0 1\n2").is_err());
        assert!(parse_edge_list("a b").is_err());
    }
}
