//! The `ftmv-graph 1` text format.
//!
//! ```text
//! ftmv-graph 1
//! n 3
//! e 0 1
//! e 1 2
//! ```
//!
//! Edges are written as `e u v` with `u < v`, in strictly increasing
//! lexicographic order. Lines end with LF; nothing else may follow the
//! last edge line.

use super::{Graph, GraphBuilder};
use crate::error::{Error, Result};

pub const FORMAT_HEADER: &str = "ftmv-graph 1";

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

// Canonical decimal only: no sign, no leading zeros.
fn parse_number(tok: &str, line: usize) -> Result<usize> {
    let canonical = !tok.is_empty() && tok.bytes().all(|b| b.is_ascii_digit()) && (tok == "0" || !tok.starts_with('0'));
    if !canonical {
        return Err(parse_err(line, format!("expected a non-negative integer, found `{tok}`")));
    }
    tok.parse().map_err(|_| parse_err(line, format!("integer `{tok}` out of range")))
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    let mut lines = body.split('\n').enumerate().map(|(i, l)| (i + 1, l));

    match lines.next() {
        Some((_, FORMAT_HEADER)) => {}
        Some((ln, other)) => return Err(parse_err(ln, format!("expected header `{FORMAT_HEADER}`, found `{other}`"))),
        None => return Err(parse_err(1, "empty input")),
    }

    let n = match lines.next() {
        Some((ln, l)) => match l.strip_prefix("n ") {
            Some(rest) => parse_number(rest, ln)?,
            None => return Err(parse_err(ln, format!("expected `n <N>`, found `{l}`"))),
        },
        None => return Err(parse_err(2, "missing vertex count line")),
    };

    let mut b = GraphBuilder::new(n);
    let mut last: Option<(usize, usize)> = None;
    for (ln, l) in lines {
        let mut toks = l.split(' ');
        if toks.next() != Some("e") {
            return Err(parse_err(ln, format!("expected an edge line `e <u> <v>`, found `{l}`")));
        }
        let (Some(a), Some(c), None) = (toks.next(), toks.next(), toks.next()) else {
            return Err(parse_err(ln, format!("malformed edge line `{l}`")));
        };
        let (u, v) = (parse_number(a, ln)?, parse_number(c, ln)?);
        if u >= v {
            return Err(parse_err(ln, format!("edge endpoints must satisfy u < v, found {u} {v}")));
        }
        if v >= n {
            return Err(parse_err(ln, format!("vertex {v} out of range for n = {n}")));
        }
        if let Some(prev) = last {
            if (u, v) == prev {
                return Err(parse_err(ln, format!("duplicate edge {u} {v}")));
            }
            if (u, v) < prev {
                return Err(parse_err(ln, format!("edge {u} {v} out of lexicographic order")));
            }
        }
        last = Some((u, v));
        b.add_edge(u, v)?;
    }
    Ok(b.build())
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{FORMAT_HEADER}\nn {}\n", g.order());
    for (u, v) in g.edges() {
        out.push_str(&format!("e {u} {v}\n"));
    }
    out
}
