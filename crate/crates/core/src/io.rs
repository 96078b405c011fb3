//! graph6 (short form, at most 62 vertices) and plain edge-list text.
//!
//! The edge-list format is a header line `n m` followed by `m` lines `u v`.
//! Vertices may be written as indices or as single lowercase letters
//! (`a` = 0, `b` = 1, ...). Blank lines and lines starting with `#` are skipped.

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const GRAPH6_MAX_VERTICES: usize = 62;

const HEADER: &str = ">>graph6<<";

fn g6_err<T>(offset: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Graph6 {
        offset,
        msg: msg.into(),
    })
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let line = text.trim_end_matches(['\n', '\r']);
    let (skip, body) = match line.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest.as_bytes()),
        None => (0, line.as_bytes()),
    };
    let Some(&first) = body.first() else {
        return g6_err(skip, "empty input");
    };
    if first == 126 {
        return g6_err(skip, "long-form size header (more than 62 vertices) is not supported");
    }
    if !(63..126).contains(&first) {
        return g6_err(skip, format!("invalid size byte {first:#04x}"));
    }
    let n = (first - 63) as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    let data = &body[1..];
    if data.len() < nbytes {
        return g6_err(
            skip + 1 + data.len(),
            format!("truncated bit vector: expected {nbytes} bytes, found {}", data.len()),
        );
    }
    if data.len() > nbytes {
        return g6_err(skip + 1 + nbytes, "trailing bytes after bit vector");
    }
    let mut g = Graph::new(n)?;
    let mut idx = 0usize;
    for (i, &b) in data.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return g6_err(skip + 1 + i, format!("invalid data byte {b:#04x}"));
        }
        let six = b - 63;
        for shift in (0..6).rev() {
            let set = six >> shift & 1 == 1;
            if idx >= nbits {
                if set {
                    return g6_err(skip + 1 + i, "nonzero padding bits");
                }
            } else if set {
                let (u, v) = pair_of_bit(idx);
                g.add_edge(u, v)?;
            }
            idx += 1;
        }
    }
    Ok(g)
}

/// Inverse of the column-major upper-triangle bit order: bit index → `(i, j)`
/// with `i < j`.
fn pair_of_bit(idx: usize) -> (usize, usize) {
    let mut j = 1;
    let mut start = 0;
    while start + j <= idx {
        start += j;
        j += 1;
    }
    (idx - start, j)
}

pub fn to_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > GRAPH6_MAX_VERTICES {
        return Err(Error::CapExceeded {
            what: "vertex count for short-form graph6",
            value: n,
            cap: GRAPH6_MAX_VERTICES,
        });
    }
    let mut out = String::with_capacity(1 + n * n / 12 + 1);
    out.push((n as u8 + 63) as char);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + 63) as char);
    }
    Ok(out)
}

/// Parses a vertex token: a decimal index or a single lowercase letter.
pub fn parse_vertex(token: &str) -> Option<usize> {
    if let Ok(v) = token.parse::<usize>() {
        return Some(v);
    }
    match token.as_bytes() {
        [c @ b'a'..=b'z'] => Some((c - b'a') as usize),
        _ => None,
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let err = |line: usize, msg: String| Error::EdgeList { line, msg };
    let (hline, header) = lines.next().ok_or_else(|| err(1, "missing header".into()))?;
    let nums: Vec<&str> = header.split_whitespace().collect();
    let [n, m] = nums[..] else {
        return Err(err(hline, format!("expected `n m`, found `{header}`")));
    };
    let n: usize = n.parse().map_err(|_| err(hline, format!("bad vertex count `{n}`")))?;
    let m: usize = m.parse().map_err(|_| err(hline, format!("bad edge count `{m}`")))?;
    let mut g = Graph::new(n).map_err(|e| err(hline, e.to_string()))?;
    let mut seen = 0;
    for (lno, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        let [a, b] = toks[..] else {
            return Err(err(lno, format!("expected `u v`, found `{l}`")));
        };
        let u = parse_vertex(a).ok_or_else(|| err(lno, format!("bad vertex `{a}`")))?;
        let v = parse_vertex(b).ok_or_else(|| err(lno, format!("bad vertex `{b}`")))?;
        if !g.add_edge(u, v).map_err(|e| err(lno, e.to_string()))? {
            return Err(err(lno, format!("duplicate edge {u} {v}")));
        }
        seen += 1;
    }
    if seen != m {
        return Err(err(hline, format!("header announces {m} edges, found {seen}")));
    }
    Ok(g)
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent encoder: builds the full bit string first, then packs it.
    fn reference_encode(g: &Graph) -> String {
        let n = g.n();
        let mut bits = Vec::new();
        for j in 0..n {
            for i in 0..j {
                bits.push(g.has_edge(i, j));
            }
        }
        while bits.len() % 6 != 0 {
            bits.push(false);
        }
        let mut s = String::new();
        s.push(char::from(63 + n as u8));
        for chunk in bits.chunks(6) {
            let v = chunk.iter().fold(0u8, |a, &b| a * 2 + b as u8);
            s.push(char::from(63 + v));
        }
        s
    }

    #[test]
    fn star_string_round_trips() {
        let g = parse_graph6("D?{").unwrap();
        assert_eq!(g, Graph::star(4).relabel_center_last());
        assert_eq!(to_graph6(&g).unwrap(), "D?{");
    }

    #[test]
    fn single_vertex() {
        let g = parse_graph6("@").unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(to_graph6(&g).unwrap(), "@");
    }

    #[test]
    fn c5_against_reference_encoder() {
        let c5 = Graph::cycle(5);
        let s = reference_encode(&c5);
        assert_eq!(parse_graph6(&s).unwrap(), c5);
        assert_eq!(to_graph6(&c5).unwrap(), s);
    }

    #[test]
    fn k4_is_c_tilde() {
        assert_eq!(parse_graph6("C~").unwrap(), Graph::complete(4));
    }

    #[test]
    fn errors_name_offsets() {
        assert!(matches!(parse_graph6(""), Err(Error::Graph6 { offset: 0, .. })));
        assert!(matches!(parse_graph6("D?"), Err(Error::Graph6 { offset: 2, .. })));
        assert!(matches!(parse_graph6("D {"), Err(Error::Graph6 { offset: 1, .. })));
        assert!(matches!(parse_graph6("D?{?"), Err(Error::Graph6 { offset: 3, .. })));
        assert!(matches!(parse_graph6("~"), Err(Error::Graph6 { offset: 0, .. })));
        // n = 2 has one real bit; the low five bits must be zero
        assert!(matches!(parse_graph6("A@"), Err(Error::Graph6 { offset: 1, .. })));
        assert_eq!(parse_graph6("A_").unwrap(), Graph::complete(2));
        assert_eq!(parse_graph6(">>graph6<<A_\n").unwrap(), Graph::complete(2));
    }

    #[test]
    fn edge_list_parsing() {
        let g = parse_edge_list("3 2\na b\nb c\n").unwrap();
        assert_eq!(g, Graph::path(3));
        let g = parse_edge_list("# comment\n4 1\n\n0 3\n").unwrap();
        assert!(g.has_edge(0, 3));
        assert!(matches!(
            parse_edge_list("3 2\n0 1\n"),
            Err(Error::EdgeList { line: 1, .. })
        ));
        assert!(matches!(
            parse_edge_list("3 1\n0 5\n"),
            Err(Error::EdgeList { line: 2, .. })
        ));
        assert!(parse_edge_list("").is_err());
    }

    proptest! {
        #[test]
        fn graph6_round_trip(n in 0usize..=20, seed in any::<u64>()) {
            let mut g = Graph::empty(n);
            let mut x = seed | 1;
            for u in 0..n {
                for v in u + 1..n {
                    x ^= x << 13; x ^= x >> 7; x ^= x << 17;
                    if x & 1 == 1 { g.add_edge(u, v).unwrap(); }
                }
            }
            let s = to_graph6(&g).unwrap();
            prop_assert_eq!(&s, &reference_encode(&g));
            prop_assert_eq!(parse_graph6(&s).unwrap(), g.clone());
            prop_assert_eq!(parse_edge_list(&to_edge_list(&g)).unwrap(), g);
        }
    }

    impl Graph {
        /// `K_{1,4}` with the center moved from 0 to the last index.
        fn relabel_center_last(&self) -> Graph {
            let n = self.n();
            let edges: Vec<_> = self
                .edges()
                .into_iter()
                .map(|(u, v)| ((u + n - 1) % n, (v + n - 1) % n))
                .collect();
            Graph::from_edges(n, &edges).unwrap()
        }
    }
}
