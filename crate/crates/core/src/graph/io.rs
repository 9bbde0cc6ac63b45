//! Text formats: graph6, whitespace edge lists, and pair bit strings for colorings.

use super::{Color, Graph, GraphError, TwoColoring};

const HEADER: &str = ">>graph6<<";

fn parse_err(line: usize, msg: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        msg: msg.into(),
    }
}

/// Encodes `n` and the upper triangle column by column, six bits per byte.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | u8::from(g.has_edge(i, j));
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
    String::from_utf8(out).expect("printable ascii")
}

pub fn from_graph6(text: &str) -> Result<Graph, GraphError> {
    let s = text.trim();
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(parse_err(1, "empty graph6 string"));
    }
    if let Some(pos) = bytes.iter().position(|&b| !(63..=126).contains(&b)) {
        return Err(parse_err(1, format!("invalid graph6 byte at offset {pos}")));
    }
    let six = |b: u8| (b - 63) as usize;
    let (n, body) = if bytes[0] != 126 {
        (six(bytes[0]), &bytes[1..])
    } else if bytes.len() >= 2 && bytes[1] == 126 {
        if bytes.len() < 8 {
            return Err(parse_err(1, "truncated graph6 size"));
        }
        let n = bytes[2..8].iter().fold(0usize, |a, &b| a << 6 | six(b));
        (n, &bytes[8..])
    } else {
        if bytes.len() < 4 {
            return Err(parse_err(1, "truncated graph6 size"));
        }
        let n = bytes[1..4].iter().fold(0usize, |a, &b| a << 6 | six(b));
        (n, &bytes[4..])
    };
    let pairs = n * n.saturating_sub(1) / 2;
    let need = pairs.div_ceil(6);
    if body.len() != need {
        return Err(parse_err(
            1,
            format!("graph6 body has {} bytes, expected {need} for n = {n}", body.len()),
        ));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let b = six(body[k / 6]);
            if b >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    if pairs % 6 != 0 && six(body[need - 1]) & ((1 << (6 - pairs % 6)) - 1) != 0 {
        return Err(parse_err(1, "nonzero graph6 padding bits"));
    }
    Ok(g)
}

/// Parses `u v` lines (0-based). `#` starts a comment. A first data line with a
/// single integer fixes `n`; otherwise `n` is one more than the largest label.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut declared: Option<usize> = None;
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    let mut seen_data = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        let num = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| parse_err(line, format!("expected a vertex index, found {s:?}")))
        };
        match fields.as_slice() {
            [a] if !seen_data => declared = Some(num(a)?),
            [a, b] => {
                let (u, v) = (num(a)?, num(b)?);
                if u == v {
                    return Err(parse_err(line, format!("self-loop at vertex {u}")));
                }
                edges.push((line, u, v));
            }
            _ => return Err(parse_err(line, format!("expected \"u v\", found {body:?}"))),
        }
        seen_data = true;
    }
    let max = edges.iter().map(|&(_, u, v)| u.max(v) + 1).max().unwrap_or(0);
    let n = declared.unwrap_or(max);
    let mut g = Graph::empty(n);
    for (line, u, v) in edges {
        if u >= n || v >= n {
            return Err(parse_err(line, format!("vertex {} out of range for n = {n}", u.max(v))));
        }
        g.add_edge(u, v)?;
    }
    Ok(g)
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut s = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

/// `n` on the first line, then the row-major pair bits (`1` = blue). Whitespace
/// inside the bit string is ignored.
pub fn parse_coloring(text: &str) -> Result<TwoColoring, GraphError> {
    let mut data = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (line, first) = data.next().ok_or_else(|| parse_err(1, "missing vertex count"))?;
    let n: usize = first
        .parse()
        .map_err(|_| parse_err(line, format!("expected a vertex count, found {first:?}")))?;
    let mut bits = Vec::new();
    for (line, l) in data {
        for ch in l.chars().filter(|c| !c.is_whitespace()) {
            match ch {
                '0' => bits.push(Color::Red),
                '1' => bits.push(Color::Blue),
                other => return Err(parse_err(line, format!("invalid color bit {other:?}"))),
            }
        }
    }
    let pairs = n * n.saturating_sub(1) / 2;
    if bits.len() != pairs {
        return Err(parse_err(
            line,
            format!("expected {pairs} color bits for n = {n}, found {}", bits.len()),
        ));
    }
    let mut it = bits.into_iter();
    Ok(TwoColoring::from_fn(n, |_, _| it.next().expect("counted")))
}

pub fn to_coloring_text(c: &TwoColoring) -> String {
    format!("{}\n{}\n", c.n(), c.to_bits())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph6_known_strings() {
        // Standard encodings: K_4 = "C~", P_3 path 0-1-2 = "Bg", C_5 = "Dhc".
        assert_eq!(to_graph6(&Graph::complete(4)), "C~");
        assert_eq!(to_graph6(&Graph::path(3)), "Bg");
        assert_eq!(to_graph6(&Graph::cycle(5)), "Dhc");
        assert_eq!(to_graph6(&Graph::empty(0)), "?");
        assert_eq!(from_graph6(">>graph6<<C~").unwrap(), Graph::complete(4));
    }

    #[test]
    fn graph6_round_trip_large_n() {
        let g = Graph::cycle(100);
        let s = to_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(from_graph6(&s).unwrap(), g);
    }

    #[test]
    fn graph6_rejects_garbage() {
        assert!(from_graph6("C~~").is_err());
        assert!(from_graph6("C").is_err());
        assert!(from_graph6("C\u{7f}").is_err());
        assert!(from_graph6("").is_err());
        // K_2 = "A_"; "A`" sets a padding bit.
        assert_eq!(from_graph6("A_").unwrap(), Graph::complete(2));
        assert!(from_graph6("A`").is_err());
    }

    #[test]
    fn edge_list_parsing() {
        let g = parse_edge_list("# triangle\n3\n0 1\n1 2 # tail\n\n2 0\n0 1\n").unwrap();
        assert_eq!(g, Graph::complete(3));
        let g = parse_edge_list("0 1\n1 4\n").unwrap();
        assert_eq!(g.n(), 5);
        match parse_edge_list("0 1\n2 2\n") {
            Err(GraphError::Parse { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_edge_list("2\n0 1\n1 x\n") {
            Err(GraphError::Parse { line: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_edge_list("2\n0 5\n"), Err(GraphError::Parse { line: 2, .. })));
        assert_eq!(parse_edge_list(&to_edge_list(&Graph::cycle(7))).unwrap(), Graph::cycle(7));
    }

    #[test]
    fn coloring_text_round_trip() {
        let p = TwoColoring::pentagon();
        let t = to_coloring_text(&p);
        assert_eq!(t, "5\n0110011010\n");
        assert_eq!(parse_coloring(&t).unwrap(), p);
        assert!(parse_coloring("3\n01").is_err());
        assert!(parse_coloring("3\n012").is_err());
        assert_eq!(parse_coloring("1\n").unwrap().n(), 1);
    }
}
