//! Text digraph format.
//!
//! Line 1 holds `n m l` (vertex, edge and loop counts), followed by `m`
//! lines `u v` (edge u→v, 0-indexed) and `l` lines `u` (loop at u).
//! Lines starting with `#` are comments. The writer is canonical (edges
//! ascending, loops ascending), so write → read → write round-trips
//! bit-exactly.

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use std::fmt::Write as _;

pub fn to_text(g: &Digraph) -> String {
    let edges = g.edges();
    let loops = g.loops().to_vec();
    let mut s = String::new();
    let _ = writeln!(s, "{} {} {}", g.order(), edges.len(), loops.len());
    for (u, v) in edges {
        let _ = writeln!(s, "{u} {v}");
    }
    for v in loops {
        let _ = writeln!(s, "{v}");
    }
    s
}

pub fn from_text(text: &str) -> Result<Digraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line_no, header) = lines
        .next()
        .ok_or_else(|| Error::Parse { line: 0, msg: "empty input".into() })?;
    let fields = parse_fields(line_no, header, 3)?;
    let (n, m, l) = (fields[0], fields[1], fields[2]);

    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (line_no, line) = lines.next().ok_or_else(|| Error::Parse {
            line: usize::MAX,
            msg: "unexpected end of input while reading edges".into(),
        })?;
        let f = parse_fields(line_no, line, 2)?;
        edges.push((f[0], f[1]));
    }
    let mut loops = Vec::with_capacity(l);
    for _ in 0..l {
        let (line_no, line) = lines.next().ok_or_else(|| Error::Parse {
            line: usize::MAX,
            msg: "unexpected end of input while reading loops".into(),
        })?;
        let f = parse_fields(line_no, line, 1)?;
        loops.push(f[0]);
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(Error::Parse {
            line: line_no,
            msg: "trailing data after declared edges and loops".into(),
        });
    }
    Digraph::build(n, &edges, &loops)
}

fn parse_fields(line_no: usize, line: &str, expect: usize) -> Result<Vec<usize>> {
    let fields: Vec<usize> = line
        .split_whitespace()
        .map(|t| {
            t.parse::<usize>().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("expected integer, got {t:?}"),
            })
        })
        .collect::<Result<_>>()?;
    if fields.len() != expect {
        return Err(Error::Parse {
            line: line_no,
            msg: format!("expected {expect} fields, got {}", fields.len()),
        });
    }
    Ok(fields)
}

pub fn read_file(path: &std::path::Path) -> Result<Digraph> {
    from_text(&std::fs::read_to_string(path)?)
}

pub fn write_file(path: &std::path::Path, g: &Digraph) -> Result<()> {
    std::fs::write(path, to_text(g))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_bit_exact() {
        let g = Digraph::build(5, &[(3, 1), (0, 4), (1, 3), (0, 1)], &[2, 0]).unwrap();
        let text = to_text(&g);
        let back = from_text(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(to_text(&back), text);
    }

    #[test]
    fn comments_and_blanks_are_skipped() {
        let text = "# a triangle\n3 3 0\n0 1\n# middle comment\n1 2\n\n2 0\n";
        let g = from_text(text).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert!(g.has_edge(2, 0));
    }

    #[test]
    fn parse_errors() {
        assert!(from_text("").is_err());
        assert!(from_text("2 1 0\n0 x\n").is_err());
        assert!(from_text("2 2 0\n0 1\n").is_err());
        assert!(from_text("2 1 0\n0 1\n1 0\n").is_err());
        assert!(from_text("2 1 0\n0 3\n").is_err());
    }
}
