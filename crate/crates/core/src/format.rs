//! Text formats for colorings: the native `.2col` format and graph6.
//!
//! `.2col`: the first line is `p 2col N`; the rest of the file holds exactly
//! `N(N-1)/2` letters `B`/`W` separated by whitespace, in row-major
//! upper-triangle order `(0,1), (0,2), ..., (0,N-1), (1,2), ...`. The writer
//! puts each row `u` on its own line with single spaces between letters.
//!
//! graph6 describes the black graph; every non-edge is white.

use thiserror::Error;

use crate::coloring::{pair_count, Color, Coloring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("expected {expected} pair colors, found {found}")]
    PairCount { expected: usize, found: usize },
    #[error("graph6: {0}")]
    Graph6(String),
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

pub fn write_2col(c: &Coloring) -> String {
    let n = c.order();
    let mut out = format!("p 2col {n}\n");
    for u in 0..n.saturating_sub(1) {
        let row: Vec<String> = (u + 1..n).map(|v| c.color(u, v).letter().to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_2col(text: &str) -> Result<Coloring, FormatError> {
    let mut lines = text.lines().enumerate();
    let (hline, header) = loop {
        match lines.next() {
            Some((_, l)) if l.trim().is_empty() => continue,
            Some((i, l)) => break (i + 1, l),
            None => return Err(syntax(1, 1, "empty input, expected `p 2col N`")),
        }
    };
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 || fields[0] != "p" || fields[1] != "2col" {
        return Err(syntax(hline, 1, "expected header `p 2col N`"));
    }
    let order: usize = fields[2]
        .parse()
        .map_err(|_| syntax(hline, header.find(fields[2]).unwrap_or(0) + 1, "bad vertex count"))?;
    if order == 0 {
        return Err(syntax(hline, 1, "vertex count must be at least 1"));
    }
    let expected = pair_count(order);
    let mut bits = Vec::with_capacity(expected);
    for (i, line) in lines {
        for (col, ch) in line.char_indices() {
            if ch.is_whitespace() {
                continue;
            }
            let color = Color::from_letter(ch)
                .ok_or_else(|| syntax(i + 1, col + 1, format!("unexpected character {ch:?}")))?;
            if bits.len() == expected {
                return Err(syntax(i + 1, col + 1, format!("more than {expected} pair colors")));
            }
            bits.push(color);
        }
    }
    if bits.len() != expected {
        return Err(FormatError::PairCount {
            expected,
            found: bits.len(),
        });
    }
    Ok(Coloring::from_triangle(order, &bits).expect("length checked"))
}

/// graph6 string of the black graph.
pub fn write_graph6(c: &Coloring) -> String {
    let n = c.order();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        panic!("graph6 writer supports at most 258047 vertices");
    }
    let mut acc = 0u8;
    let mut nbits = 0;
    for v in 1..n {
        for u in 0..v {
            acc = acc << 1 | (c.color(u, v) == Color::Black) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + 63);
    }
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

pub fn parse_graph6(text: &str) -> Result<Coloring, FormatError> {
    let s = text.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(FormatError::Graph6("empty input".into()));
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(FormatError::Graph6(format!("byte {b} outside 63..=126")));
    }
    let (order, body) = if bytes[0] != 126 {
        (bytes[0] as usize - 63, &bytes[1..])
    } else if bytes.len() >= 4 && bytes[1] != 126 {
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
        (n, &bytes[4..])
    } else {
        return Err(FormatError::Graph6("orders above 258047 are not supported".into()));
    };
    if order == 0 {
        return Err(FormatError::Graph6("order must be at least 1".into()));
    }
    let need = pair_count(order).div_ceil(6);
    if body.len() != need {
        return Err(FormatError::Graph6(format!(
            "expected {need} data bytes for order {order}, found {}",
            body.len()
        )));
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    // column-major: k(u, v) for u < v is v(v-1)/2 + u
    Ok(Coloring::from_fn(order, |u, v| {
        if bit(v * (v - 1) / 2 + u) {
            Color::Black
        } else {
            Color::White
        }
    }))
}

/// Parses either format, choosing `.2col` when the first non-blank line starts with `p`.
pub fn parse_any(text: &str) -> Result<Coloring, FormatError> {
    let first = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
    if first.trim_start().starts_with('p') {
        parse_2col(text)
    } else {
        parse_graph6(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::random_coloring;
    use proptest::prelude::*;

    #[test]
    fn two_col_layout_is_exact() {
        let c = Coloring::from_fn(3, |u, v| if u == 0 && v == 2 { Color::Black } else { Color::White });
        assert_eq!(write_2col(&c), "p 2col 3\nW B\nW\n");
        assert_eq!(write_2col(&Coloring::monochromatic(1, Color::Black)), "p 2col 1\n");
    }

    #[test]
    fn two_col_accepts_free_layout() {
        let c = parse_2col("p 2col 3\nWB W\n").unwrap();
        assert_eq!(c.color(0, 2), Color::Black);
        assert_eq!(c.color(1, 2), Color::White);
    }

    #[test]
    fn two_col_errors_carry_position() {
        match parse_2col("p 2col 3\nW B\nX\n") {
            Err(FormatError::Syntax { line, column, .. }) => assert_eq!((line, column), (3, 1)),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            parse_2col("p 2col 4\nW B\n"),
            Err(FormatError::PairCount { expected: 6, found: 2 })
        );
        assert!(matches!(parse_2col("q 2col 4\n"), Err(FormatError::Syntax { line: 1, .. })));
        assert!(parse_2col("p 2col 2\nB B\n").is_err());
    }

    #[test]
    fn graph6_known_strings() {
        // C5 0-1-2-3-4-0 is "Dhc" in graph6
        let c5 = Coloring::from_fn(5, |u, v| {
            if (v - u) % 5 == 1 || (v - u) % 5 == 4 {
                Color::Black
            } else {
                Color::White
            }
        });
        assert_eq!(write_graph6(&c5), "Dhc");
        assert_eq!(write_graph6(&Coloring::monochromatic(4, Color::Black)), "C~");
        assert_eq!(parse_graph6("Dhc").unwrap(), c5);
        assert!(parse_graph6("D").is_err());
    }

    #[test]
    fn graph6_large_order() {
        let c = random_coloring(70, 3, 0.5);
        let s = write_graph6(&c);
        assert_eq!(s.as_bytes()[0], 126);
        assert_eq!(parse_graph6(&s).unwrap(), c);
    }

    proptest! {
        #[test]
        fn formats_round_trip(seed in any::<u64>(), order in 1usize..40, p in 0.0f64..1.0) {
            let c = random_coloring(order, seed, p);
            prop_assert_eq!(parse_2col(&write_2col(&c)).unwrap(), c.clone());
            prop_assert_eq!(parse_any(&write_graph6(&c)).unwrap(), c);
        }
    }
}
